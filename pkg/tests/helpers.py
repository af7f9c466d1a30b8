"""Independent brute-force route used to cross-check the solvers.

Nothing here shares constraint-assembly or elimination code with the
package: identities are turned into residual vectors by pointwise
evaluation at elementary matrices, and the resulting systems are reduced by
plain rational Gauss elimination pivoting on the RIGHTMOST column first.
"""

from fractions import Fraction
from itertools import combinations_with_replacement

from nhlc.algebra import ColorAlgebra, HomMap
from nhlc.linalg import Matrix

F0 = Fraction(0)
F1 = Fraction(1)


def gauss_nullity_rightmost(rows, ncols):
    """cols - rank by textbook elimination, rightmost pivot columns first."""
    work = [list(r) for r in rows if any(x != 0 for x in r)]
    rank = 0
    for col in range(ncols - 1, -1, -1):
        piv = None
        for i in range(rank, len(work)):
            if work[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        pv = work[rank][col]
        for i in range(len(work)):
            if i != rank and work[i][col] != 0:
                f = work[i][col] / pv
                work[i] = [a - f * b for a, b in zip(work[i], work[rank])]
        rank += 1
    return ncols - rank


def _unit(dim, i):
    v = [F0] * dim
    v[i] = F1
    return v


def derivation_residual(A, E, k, d):
    """Residual of the twisted Leibniz rule for the map E of degree d."""
    out = []
    C1 = E.matrix * A.alpha
    C2 = A.alpha * E.matrix
    out.extend((C1 - C2).flatten())
    ak = A.alpha_power(k)
    acols = [ak.column(i) for i in range(A.dim)]
    ecols = [E.matrix.column(i) for i in range(A.dim)]
    for t in combinations_with_replacement(range(A.dim), A.arity):
        lhs = E.apply(A.bracket_basis(t))
        rhs = [F0] * A.dim
        prefix = A.group.zero()
        for s in range(A.arity):
            sign = A.eps.value(d, prefix)
            args = [acols[t[u]] for u in range(s)] + [ecols[t[s]]] + \
                   [acols[t[u]] for u in range(s + 1, A.arity)]
            term = A.bracket(args)
            for r in range(A.dim):
                rhs[r] += sign * term[r]
            prefix = A.group.add(prefix, A.degrees[t[s]])
        out.extend(l - r for l, r in zip(lhs, rhs))
    return out


def double_derivation_residual(A, E, k, d):
    out = []
    C1 = E.matrix * A.alpha
    C2 = A.alpha * E.matrix
    out.extend((C1 - C2).flatten())
    n = A.arity
    ak = A.alpha_power(k)
    acols = [ak.column(i) for i in range(A.dim)]
    ecols = [E.matrix.column(i) for i in range(A.dim)]
    ytuples = list(combinations_with_replacement(range(A.dim), n))
    for xs in combinations_with_replacement(range(A.dim), n - 1):
        xdeg = A.degree_sum(A.degrees[i] for i in xs)
        for ys in ytuples:
            inner = A.bracket_basis(ys)
            lhs = E.apply(A.bracket([_unit(A.dim, i) for i in xs] + [list(inner)]))
            rhs = [F0] * A.dim
            inner_k = A.bracket([acols[i] for i in ys])
            prefix = A.group.zero()
            for s in range(n - 1):
                sign = A.eps.value(d, prefix)
                args = [acols[xs[u]] for u in range(s)] + [ecols[xs[s]]] + \
                       [acols[xs[u]] for u in range(s + 1, n - 1)] + [inner_k]
                term = A.bracket(args)
                for r in range(A.dim):
                    rhs[r] += sign * term[r]
                prefix = A.group.add(prefix, A.degrees[xs[s]])
            yprefix = A.group.zero()
            for j in range(n):
                sign = A.eps.value(d, A.group.add(xdeg, yprefix))
                inner_j = A.bracket([acols[ys[u]] for u in range(j)] + [ecols[ys[j]]] +
                                    [acols[ys[u]] for u in range(j + 1, n)])
                term = A.bracket([acols[i] for i in xs] + [inner_j])
                for r in range(A.dim):
                    rhs[r] += sign * term[r]
                yprefix = A.group.add(yprefix, A.degrees[ys[j]])
            out.extend(l - r for l, r in zip(lhs, rhs))
    return out


def triple_derivation_residual(A, E, k, d):
    out = []
    C1 = E.matrix * A.alpha
    C2 = A.alpha * E.matrix
    out.extend((C1 - C2).flatten())
    ak = A.alpha_power(k)
    acols = [ak.column(i) for i in range(A.dim)]
    ecols = [E.matrix.column(i) for i in range(A.dim)]
    for x in range(A.dim):
        for y in range(A.dim):
            for z in range(A.dim):
                lhs = E.apply(A.bracket([_unit(A.dim, x),
                                         list(A.bracket_basis((y, z)))]))
                t1 = A.bracket([ecols[x], A.bracket([acols[y], acols[z]])])
                t2 = A.bracket([acols[x], A.bracket([ecols[y], acols[z]])])
                t3 = A.bracket([acols[x], A.bracket([acols[y], ecols[z]])])
                sx = A.eps.value(d, A.degrees[x])
                sxy = A.eps.value(d, A.group.add(A.degrees[x], A.degrees[y]))
                rhs = [t1[r] + sx * t2[r] + sxy * t3[r] for r in range(A.dim)]
                out.extend(l - r for l, r in zip(lhs, rhs))
    return out


RESIDUALS = {
    "der": derivation_residual,
    "dder": double_derivation_residual,
    "tder": triple_derivation_residual,
}


def naive_space_dimension(A, kind, k):
    """Total graded dimension of a map space via the independent route."""
    residual = RESIDUALS[kind]
    degs = {A.group.zero()}
    for j in range(A.dim):
        for i in range(A.dim):
            degs.add(A.group.sub(A.degrees[j], A.degrees[i]))
    total = 0
    for d in sorted(degs):
        positions = [(j, i) for j in range(A.dim) for i in range(A.dim)
                     if A.degrees[j] == A.group.add(A.degrees[i], d)]
        if not positions:
            continue
        rows_t = []
        for (j, i) in positions:
            data = [[F0] * A.dim for _ in range(A.dim)]
            data[j][i] = F1
            rows_t.append(residual(A, HomMap(d, Matrix(data)), k, d))
        nres = len(rows_t[0])
        rows = [[rows_t[v][r] for v in range(len(positions))] for r in range(nres)]
        total += gauss_nullity_rightmost(rows, len(positions))
    return total


def direct_sum(A, B, name):
    """Componentwise direct sum of two trivially graded algebras."""
    assert A.arity == B.arity
    dim = A.dim + B.dim
    constants = {}
    for t, v in A.constants.items():
        constants[t] = dict(v)
    for t, v in B.constants.items():
        constants[tuple(i + A.dim for i in t)] = {j + A.dim: c
                                                  for j, c in v.items()}
    basis = [(f"a_{nm}", deg) for nm, deg in A.basis] + \
            [(f"b_{nm}", deg) for nm, deg in B.basis]
    return ColorAlgebra(name, A.arity, A.group, A.eps, basis,
                        Matrix.identity(dim), constants)


def conjugate_algebra(A, P, name):
    """Transport the structure constants through the invertible map P.

    Only for trivially graded algebras with identity twist; the result is
    isomorphic to A, so it validates, but its bracket table is dense.
    """
    Pinv = P.inverse()
    assert Pinv is not None
    pcols = [P.column(i) for i in range(A.dim)]
    constants = {}
    for t in A.all_tuples():
        w = A.bracket([pcols[i] for i in t])
        v = Pinv.apply(w)
        entry = {j: c for j, c in enumerate(v) if c != 0}
        if entry:
            constants[t] = entry
    return ColorAlgebra(name, A.arity, A.group, A.eps, list(A.basis),
                        Matrix.identity(A.dim), constants)


def random_hom_map(A, degree, rng):
    """Random block-structured map with small rational entries."""
    data = [[F0] * A.dim for _ in range(A.dim)]
    for j in range(A.dim):
        for i in range(A.dim):
            if A.degrees[j] == A.group.add(A.degrees[i], degree):
                data[j][i] = Fraction(rng.randint(-4, 4), rng.choice((1, 1, 2, 3)))
    return HomMap(degree, Matrix(data))


def project_onto_maps(basis_maps, target):
    """Exact orthogonal projection of a map onto the span of basis maps."""
    from nhlc.linalg import solve_particular
    if not basis_maps:
        return HomMap(target.degree,
                      Matrix.zeros(target.matrix.rows, target.matrix.cols))
    rows = [m.matrix.flatten() for m in basis_maps]
    v = target.matrix.flatten()
    gram = [[sum((a * b for a, b in zip(r1, r2)), F0) for r2 in rows] for r1 in rows]
    rhs = [sum((a * b for a, b in zip(r, v)), F0) for r in rows]
    y = solve_particular(Matrix(gram), rhs)
    assert y is not None
    flat = [F0] * len(v)
    for c, r in zip(y, rows):
        if c:
            flat = [a + c * b for a, b in zip(flat, r)]
    dim = basis_maps[0].matrix.rows
    return HomMap(target.degree,
                  Matrix([flat[r * dim:(r + 1) * dim] for r in range(dim)]))


def in_map_span(basis_maps, target):
    from nhlc.linalg import span_basis, subspace_contains
    rows = span_basis([m.matrix.flatten() for m in basis_maps
                       if m.degree == target.degree])
    return subspace_contains(rows, target.matrix.flatten())
