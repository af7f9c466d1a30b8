"""Pointwise checkers for the defining identities of map spaces.

These evaluate both sides of each identity by direct bracket evaluation on
explicit vectors.  They deliberately share no constraint-assembly code with
the nullspace solvers in spaces/triple, so the two routes cross-check each
other; agreement on bases and on random maps is part of the test contract.
"""

from itertools import combinations_with_replacement

from .errors import ArityError
from .linalg import F0


def _commutes_with_twist(algebra, D):
    return D.matrix * algebra.alpha == algebra.alpha * D.matrix


def is_derivation(algebra, D, k):
    """Twisted Leibniz rule on every non-decreasing basis tuple.

    Returns (ok, witness); witness names the failing check or tuple.
    """
    A = algebra
    if not _commutes_with_twist(A, D):
        return False, ("twist-commute",)
    n = A.arity
    d = D.degree
    ak = A.alpha_power(k)
    acols = [ak.column(i) for i in range(A.dim)]
    dcols = [D.matrix.column(i) for i in range(A.dim)]
    for t in combinations_with_replacement(range(A.dim), n):
        lhs = D.apply(A.bracket_basis(t))
        rhs = [F0] * A.dim
        prefix = A.group.zero()
        for s in range(n):
            sign = A.eps.value(d, prefix)
            args = [acols[t[u]] for u in range(s)] + [dcols[t[s]]] + \
                   [acols[t[u]] for u in range(s + 1, n)]
            term = A.bracket(args)
            for r in range(A.dim):
                if term[r]:
                    rhs[r] += sign * term[r]
            prefix = A.group.add(prefix, A.degrees[t[s]])
        if lhs != rhs:
            return False, ("tuple", t)
    return True, None


def is_double_derivation(algebra, D, k):
    """Leibniz-type rule on nested brackets, over all sorted tuple pairs."""
    A = algebra
    n = A.arity
    if n < 3:
        raise ArityError("double derivations need arity >= 3")
    if not _commutes_with_twist(A, D):
        return False, ("twist-commute",)
    d = D.degree
    g = A.group
    ak = A.alpha_power(k)
    acols = [ak.column(i) for i in range(A.dim)]
    dcols = [D.matrix.column(i) for i in range(A.dim)]
    ydata = []
    for ys in combinations_with_replacement(range(A.dim), n):
        prefixes = []
        p = g.zero()
        for j in range(n):
            prefixes.append(p)
            p = g.add(p, A.degrees[ys[j]])
        ydata.append((ys, A.bracket_basis(ys),
                      A.bracket([acols[i] for i in ys]), prefixes))
    for xs in combinations_with_replacement(range(A.dim), n - 1):
        xdeg = A.degree_sum(A.degrees[i] for i in xs)
        xargs = [acols[i] for i in xs]
        xunits = [A.basis_vector(i) for i in xs]
        xprefixes = []
        p = g.zero()
        for s in range(n - 1):
            xprefixes.append(p)
            p = g.add(p, A.degrees[xs[s]])
        for ys, inner, inner_k, yprefixes in ydata:
            lhs = D.apply(A.bracket(xunits + [inner]))
            rhs = [F0] * A.dim
            for s in range(n - 1):
                sign = A.eps.value(d, xprefixes[s])
                args = [acols[xs[u]] for u in range(s)] + [dcols[xs[s]]] + \
                       [acols[xs[u]] for u in range(s + 1, n - 1)] + [inner_k]
                term = A.bracket(args)
                for r in range(A.dim):
                    if term[r]:
                        rhs[r] += sign * term[r]
            for j in range(n):
                sign = A.eps.value(d, g.add(xdeg, yprefixes[j]))
                inner_j = A.bracket([acols[ys[u]] for u in range(j)] + [dcols[ys[j]]] +
                                    [acols[ys[u]] for u in range(j + 1, n)])
                term = A.bracket(xargs + [inner_j])
                for r in range(A.dim):
                    if term[r]:
                        rhs[r] += sign * term[r]
            if lhs != rhs:
                return False, ("tuple-pair", xs, ys)
    return True, None


def is_triple_derivation(algebra, D, k):
    """Nested-bracket rule for binary algebras, over all basis triples."""
    A = algebra
    if A.arity != 2:
        raise ArityError("triple derivations are defined for arity 2")
    if not _commutes_with_twist(A, D):
        return False, ("twist-commute",)
    d = D.degree
    ak = A.alpha_power(k)
    acols = [ak.column(i) for i in range(A.dim)]
    dcols = [D.matrix.column(i) for i in range(A.dim)]
    for x in range(A.dim):
        sx = A.eps.value(d, A.degrees[x])
        for y in range(A.dim):
            sxy = A.eps.value(d, A.group.add(A.degrees[x], A.degrees[y]))
            for z in range(A.dim):
                lhs = D.apply(A.bracket([A.basis_vector(x), A.bracket_basis((y, z))]))
                t1 = A.bracket([dcols[x], A.bracket([acols[y], acols[z]])])
                t2 = A.bracket([acols[x], A.bracket([dcols[y], acols[z]])])
                t3 = A.bracket([acols[x], A.bracket([acols[y], dcols[z]])])
                rhs = [t1[r] + sx * t2[r] + sxy * t3[r] for r in range(A.dim)]
                if lhs != rhs:
                    return False, ("triple", (x, y, z))
    return True, None
