"""Multiplicative n-ary Hom-Lie color algebras given by structure constants.

An algebra is a graded basis, a sparse table of bracket values on
non-decreasing index tuples, a twist endomorphism alpha, and a bicharacter
supplying the Koszul signs.  Arbitrary bracket arguments are reduced to the
stored tuples by sign-normalizing adjacent swaps.
"""

from fractions import Fraction
from itertools import combinations_with_replacement, product

from .errors import ArityError, InvertibilityError, ShapeError
from .linalg import F0, F1, Matrix
from .report import ValidationReport


def normalize_tuple(indices, degrees, eps):
    """Sort a bracket index tuple, accumulating the color sign.

    Each adjacent swap contributes -eps(|left|, |right|).  Returns
    (sorted_tuple, sign), or None when the bracket is forced to vanish by a
    repeated index whose degree has eps(g, g) = 1.
    """
    idx = list(indices)
    sign = F1
    n = len(idx)
    for a in range(1, n):
        b = a
        while b > 0 and idx[b - 1] > idx[b]:
            sign *= -eps.value(degrees[idx[b - 1]], degrees[idx[b]])
            idx[b - 1], idx[b] = idx[b], idx[b - 1]
            b -= 1
    for a in range(n - 1):
        if idx[a] == idx[a + 1]:
            g = degrees[idx[a]]
            if eps.value(g, g) == 1:
                return None
    return tuple(idx), sign


class ColorAlgebra:
    """Finite-dimensional multiplicative n-Hom-Lie color algebra.

    constants maps non-decreasing basis index tuples to sparse coefficient
    dicts {target_index: rational}; unstored tuples bracket to zero.
    Instances are immutable after construction; the caches below are pure
    memos keyed on immutable data.
    """

    def __init__(self, name, arity, group, eps, basis, alpha, constants):
        if arity < 2:
            raise ArityError("arity must be at least 2")
        self.name = str(name)
        self.arity = int(arity)
        self.group = group
        self.eps = eps
        self.basis = tuple((str(nm), deg) for nm, deg in basis)
        self.dim = len(self.basis)
        self.degrees = tuple(deg for _, deg in self.basis)
        self.names = tuple(nm for nm, _ in self.basis)
        for deg in self.degrees:
            group._check(deg)
        if not isinstance(alpha, Matrix):
            alpha = Matrix(alpha)
        if alpha.rows != self.dim or alpha.cols != self.dim:
            raise ShapeError("alpha must be a dim x dim matrix")
        self.alpha = alpha
        self.constants = {}
        for t, value in constants.items():
            t = tuple(int(i) for i in t)
            if len(t) != self.arity:
                raise ShapeError(f"tuple {t} has wrong length")
            if any(i < 0 or i >= self.dim for i in t):
                raise ShapeError(f"tuple {t} has out-of-range indices")
            if any(t[a] > t[a + 1] for a in range(len(t) - 1)):
                raise ShapeError(f"tuple {t} is not non-decreasing")
            vec = {int(j): Fraction(c) for j, c in value.items() if Fraction(c) != 0}
            if any(j < 0 or j >= self.dim for j in vec):
                raise ShapeError(f"value of {t} has out-of-range indices")
            if vec:
                self.constants[t] = vec
        self._bracket_memo = {}
        self._basis_vecs = {}
        self._alpha_powers = {0: Matrix.identity(self.dim), 1: self.alpha}
        self._space_cache = {}

    # -- basic helpers ----------------------------------------------------
    def degree_sum(self, degs):
        return self.group.sum(degs)

    def zero_vector(self):
        return [F0] * self.dim

    def basis_vector(self, i):
        got = self._basis_vecs.get(i)
        if got is None:
            v = [F0] * self.dim
            v[i] = F1
            got = self._basis_vecs[i] = tuple(v)
        return got

    def alpha_power(self, k):
        """alpha^k; negative k requires an invertible twist."""
        got = self._alpha_powers.get(k)
        if got is not None:
            return got
        if k >= 0:
            out = self.alpha_power(k - 1) * self.alpha
        else:
            inv = self._alpha_powers.get(-1)
            if inv is None:
                inv = self.alpha.inverse()
                if inv is None:
                    raise InvertibilityError(
                        f"twist of {self.name} is singular; negative powers undefined")
                self._alpha_powers[-1] = inv
            out = self.alpha_power(k + 1) * inv
        self._alpha_powers[k] = out
        return out

    def bracket_basis(self, indices):
        """Bracket of basis elements in any order, as a coordinate tuple."""
        got = self._bracket_memo.get(indices)
        if got is not None:
            return got
        norm = normalize_tuple(indices, self.degrees, self.eps)
        out = [F0] * self.dim
        if norm is not None:
            t, sign = norm
            for j, c in self.constants.get(t, {}).items():
                out[j] = sign * c
        out = tuple(out)
        self._bracket_memo[indices] = out
        return out

    def bracket(self, args):
        """Multilinear bracket of arity-many coordinate vectors."""
        if len(args) != self.arity:
            raise ShapeError(f"bracket takes {self.arity} arguments")
        dim = self.dim
        supports = []
        for v in args:
            if len(v) != dim:
                raise ShapeError("argument length does not match dimension")
            supports.append([(i, c) for i, c in enumerate(v) if c])
        out = [F0] * dim
        for combo in product(*supports):
            term = self.bracket_basis(tuple(i for i, _ in combo))
            coeff = None
            for _, c in combo:
                if c is not F1:
                    coeff = c if coeff is None else coeff * c
            if coeff is None or coeff == 1:
                for r in range(dim):
                    if term[r]:
                        out[r] += term[r]
            else:
                for r in range(dim):
                    if term[r]:
                        out[r] += coeff * term[r]
        return out

    def stored_tuples(self):
        return sorted(self.constants)

    def all_tuples(self):
        return combinations_with_replacement(range(self.dim), self.arity)

    def __repr__(self):
        return f"ColorAlgebra({self.name!r}, arity={self.arity}, dim={self.dim})"


class HomMap:
    """Homogeneous linear endomorphism tagged with its degree."""

    __slots__ = ("degree", "matrix")

    def __init__(self, degree, matrix):
        if not isinstance(matrix, Matrix):
            matrix = Matrix(matrix)
        self.degree = degree
        self.matrix = matrix

    def apply(self, vec):
        return self.matrix.apply(vec)

    def respects_blocks(self, algebra):
        """Entry (j, i) may be nonzero only when deg(b_j) = deg(b_i) + degree."""
        degs = algebra.degrees
        g = algebra.group
        for j in range(algebra.dim):
            for i in range(algebra.dim):
                if self.matrix[j][i] != 0 and degs[j] != g.add(degs[i], self.degree):
                    return False
        return True

    def __eq__(self, other):
        return isinstance(other, HomMap) and self.degree == other.degree \
            and self.matrix == other.matrix

    def __repr__(self):
        return f"HomMap(degree={self.degree}, dim={self.matrix.rows})"


def validate_algebra(algebra):
    """Check every defining axiom; failures become report entries.

    Covers grading compatibility of the stored constants, the repeated-index
    sign rule, evenness and multiplicativity of the twist, and the full
    twisted n-ary Jacobi identity over all basis argument tuples.
    """
    A = algebra
    report = ValidationReport()
    g = A.group

    for t in A.stored_tuples():
        total = A.degree_sum(A.degrees[i] for i in t)
        for j, c in A.constants[t].items():
            if A.degrees[j] != total:
                report.add("grading", witness=(t, j), expected=total,
                           actual=A.degrees[j])
        for a in range(len(t) - 1):
            if t[a] == t[a + 1]:
                d = A.degrees[t[a]]
                if A.eps.value(d, d) == 1:
                    report.add("repeated-argument", witness=t,
                               expected="zero value", actual=A.constants[t])
                    break

    for i in range(A.dim):
        for j in range(A.dim):
            if A.alpha[j][i] != 0 and A.degrees[j] != A.degrees[i]:
                report.add("twist-even", witness=(j, i), expected=A.degrees[i],
                           actual=A.degrees[j])
    if not report.ok:
        # signs below would be meaningless with a broken grading layer
        return report

    acols = [A.alpha.column(i) for i in range(A.dim)]
    for t in A.all_tuples():
        lhs = A.alpha.apply(A.bracket_basis(t))
        rhs = A.bracket([acols[i] for i in t])
        if lhs != rhs:
            report.add("twist-multiplicative", witness=t, expected=lhs, actual=rhs)

    n = A.arity
    dim = A.dim
    ydata = []
    for ys in product(range(dim), repeat=n):
        prefixes = []
        p = g.zero()
        for i in range(n):
            prefixes.append(p)
            p = g.add(p, A.degrees[ys[i]])
        ydata.append((ys, A.bracket_basis(ys), prefixes))
    for xs in product(range(dim), repeat=n - 1):
        xdeg = A.degree_sum(A.degrees[i] for i in xs)
        xac = [acols[i] for i in xs]
        for ys, inner, prefixes in ydata:
            lhs = A.bracket(xac + [inner])
            rhs = [F0] * dim
            for i in range(n):
                sign = A.eps.value(xdeg, prefixes[i])
                inner_i = A.bracket_basis(xs + (ys[i],))
                args = [acols[ys[u]] for u in range(i)] + [inner_i] + \
                       [acols[ys[u]] for u in range(i + 1, n)]
                term = A.bracket(args)
                if sign == 1:
                    for r in range(dim):
                        if term[r]:
                            rhs[r] += term[r]
                else:
                    for r in range(dim):
                        if term[r]:
                            rhs[r] += sign * term[r]
            if lhs != rhs:
                report.add("jacobi", witness=(xs, ys), expected=rhs, actual=lhs)
    return report
