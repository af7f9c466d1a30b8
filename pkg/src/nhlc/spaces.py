"""Derived linear-algebraic objects of a color algebra.

Twisted-derivation-type spaces are computed as exact nullspaces: for each
candidate map degree the defining identity is imposed on every sorted basis
tuple, together with commutation with the twist, and the kernel of the
resulting rational system is returned as a homogeneous map basis.

Spaces depend on the twist power only through the matrix alpha^k, so results
are memoized per (kind, alpha^k); for twists of finite order the blocks
repeat and the cache collapses them.
"""

from dataclasses import dataclass
from itertools import combinations_with_replacement

from . import oracle
from .algebra import ColorAlgebra, HomMap, validate_algebra
from .errors import (AlgebraValidationError, ArityError, HypothesisError,
                     ShapeError, TruncationError)
from .linalg import (F0, F1, Matrix, RowReducer, coords_in_basis,
                     nullspace_of_rows, span_basis, subspace_contains)
from .report import ValidationReport

KIND_LABELS = {"der": "Der", "dder": "DDer", "inner": "Inn", "tder": "TDer",
               "centralizer": "Cent"}


@dataclass
class MapBlock:
    k: int
    degree: object
    basis: list


@dataclass
class GradedMapSpace:
    algebra: ColorAlgebra
    kind: str
    blocks: list

    def dimension(self):
        return sum(len(b.basis) for b in self.blocks)

    def maps(self):
        return [m for b in self.blocks for m in b.basis]

    def basis_for_degree(self, degree):
        for b in self.blocks:
            if b.degree == degree:
                return b.basis
        return []

    def dims_by_degree(self):
        return [(b.degree, len(b.basis)) for b in self.blocks]


def candidate_degrees(algebra):
    """All degrees a nonzero homogeneous endomorphism can have."""
    A = algebra
    degs = {A.group.zero()}
    for j in range(A.dim):
        for i in range(A.dim):
            degs.add(A.group.sub(A.degrees[j], A.degrees[i]))
    return sorted(degs)


def _allowed_positions(A, d):
    return [(j, i) for j in range(A.dim) for i in range(A.dim)
            if A.degrees[j] == A.group.add(A.degrees[i], d)]


def _alpha_commute_rows(A, var_index, nvars):
    al = A.alpha
    rows = []
    for p in range(A.dim):
        for q in range(A.dim):
            row = [F0] * nvars
            nz = False
            for (j, i), vx in var_index.items():
                c = F0
                if j == p:
                    c += al[i][q]
                if i == q:
                    c -= al[p][j]
                if c:
                    row[vx] = c
                    nz = True
            if nz:
                rows.append(row)
    return rows


def _unflatten(dim, flat):
    return Matrix([flat[r * dim:(r + 1) * dim] for r in range(dim)])


def _cached_blocks(A, kind, k, builder):
    key = (kind, A.alpha_power(k).data)
    got = A._space_cache.get(key)
    if got is None:
        got = builder()
        A._space_cache[key] = got
    return got


def _solve_blocks(A, k, rows_fn):
    """Kernel blocks [(degree, [Matrix...])] of an identity's linear system."""
    out = []
    for d in candidate_degrees(A):
        vars_ = _allowed_positions(A, d)
        if not vars_:
            continue
        var_index = {v: x for x, v in enumerate(vars_)}
        nvars = len(vars_)
        red = RowReducer(nvars)
        for row in _alpha_commute_rows(A, var_index, nvars):
            red.add(row)
            if red.rank == nvars:
                break
        if red.rank < nvars:
            for row in rows_fn(A, k, d, var_index, nvars):
                red.add(row)
                if red.rank == nvars:
                    break
        mats = []
        for v in red.nullspace():
            data = [[F0] * A.dim for _ in range(A.dim)]
            for (j, i), vx in var_index.items():
                if v[vx]:
                    data[j][i] = v[vx]
            mats.append(Matrix(data))
        if mats:
            out.append((d, mats))
    return out


def _blocks_to_space(A, kind, k, blocks):
    return GradedMapSpace(A, kind, [
        MapBlock(k, d, [HomMap(d, M) for M in mats]) for d, mats in blocks])


def _derivation_rows(A, k, d, var_index, nvars):
    n = A.arity
    ak = A.alpha_power(k)
    acols = [ak.column(i) for i in range(A.dim)]
    for t in combinations_with_replacement(range(A.dim), n):
        rows = [[F0] * nvars for _ in range(A.dim)]
        w = A.bracket_basis(t)
        for i in range(A.dim):
            if w[i]:
                for r in range(A.dim):
                    vx = var_index.get((r, i))
                    if vx is not None:
                        rows[r][vx] += w[i]
        prefix = A.group.zero()
        for s in range(n):
            sign = A.eps.value(d, prefix)
            ts = t[s]
            for j in range(A.dim):
                vx = var_index.get((j, ts))
                if vx is not None:
                    args = [acols[t[u]] for u in range(s)] + [A.basis_vector(j)] + \
                           [acols[t[u]] for u in range(s + 1, n)]
                    term = A.bracket(args)
                    for r in range(A.dim):
                        if term[r]:
                            rows[r][vx] -= sign * term[r]
            prefix = A.group.add(prefix, A.degrees[ts])
        for row in rows:
            if any(row):
                yield row


def derivation_space(algebra, k):
    """Basis of the twisted derivations for one twist power, per degree."""
    A = algebra
    blocks = _cached_blocks(A, "der", k,
                            lambda: _solve_blocks(A, k, _derivation_rows))
    return _blocks_to_space(A, "der", k, blocks)


def _double_derivation_rows(A, k, d, var_index, nvars):
    n = A.arity
    ak = A.alpha_power(k)
    acols = [ak.column(i) for i in range(A.dim)]
    ytuples = list(combinations_with_replacement(range(A.dim), n))
    for xs in combinations_with_replacement(range(A.dim), n - 1):
        xdeg = A.degree_sum(A.degrees[i] for i in xs)
        xker = [acols[i] for i in xs]
        for ys in ytuples:
            rows = [[F0] * nvars for _ in range(A.dim)]
            w = A.bracket([A.basis_vector(i) for i in xs] + [A.bracket_basis(ys)])
            for i in range(A.dim):
                if w[i]:
                    for r in range(A.dim):
                        vx = var_index.get((r, i))
                        if vx is not None:
                            rows[r][vx] += w[i]
            inner_k = A.bracket([acols[i] for i in ys])
            prefix = A.group.zero()
            for s in range(n - 1):
                sign = A.eps.value(d, prefix)
                xss = xs[s]
                for j in range(A.dim):
                    vx = var_index.get((j, xss))
                    if vx is not None:
                        args = [acols[xs[u]] for u in range(s)] + [A.basis_vector(j)] + \
                               [acols[xs[u]] for u in range(s + 1, n - 1)] + [inner_k]
                        term = A.bracket(args)
                        for r in range(A.dim):
                            if term[r]:
                                rows[r][vx] -= sign * term[r]
                prefix = A.group.add(prefix, A.degrees[xss])
            yprefix = A.group.zero()
            for jy in range(n):
                sign = A.eps.value(d, A.group.add(xdeg, yprefix))
                ysj = ys[jy]
                for j in range(A.dim):
                    vx = var_index.get((j, ysj))
                    if vx is not None:
                        inner_j = A.bracket([acols[ys[u]] for u in range(jy)] +
                                            [A.basis_vector(j)] +
                                            [acols[ys[u]] for u in range(jy + 1, n)])
                        term = A.bracket(xker + [inner_j])
                        for r in range(A.dim):
                            if term[r]:
                                rows[r][vx] -= sign * term[r]
                yprefix = A.group.add(yprefix, A.degrees[ysj])
            for row in rows:
                if any(row):
                    yield row


def double_derivation_space(algebra, k):
    """Maps satisfying the nested-bracket rule; needs arity >= 3."""
    A = algebra
    if A.arity < 3:
        raise ArityError("double derivations need arity >= 3")
    blocks = _cached_blocks(A, "dder", k,
                            lambda: _solve_blocks(A, k, _double_derivation_rows))
    return _blocks_to_space(A, "dder", k, blocks)


# ---------------------------------------------------------------------------
# inner maps
# ---------------------------------------------------------------------------

def ad_map(algebra, xs, k):
    """The map y -> [x_1, ..., x_{n-1}, alpha^k(y)] for twist-fixed x_i."""
    A = algebra
    if k < 0:
        raise ValueError("inner twist power must be nonnegative")
    if len(xs) != A.arity - 1:
        raise ShapeError(f"expected {A.arity - 1} arguments")
    xs = [[F1 * c for c in x] for x in xs]
    degs = []
    for x in xs:
        if len(x) != A.dim:
            raise ShapeError("argument length does not match dimension")
        dset = {A.degrees[i] for i, c in enumerate(x) if c != 0}
        if len(dset) > 1:
            raise ValueError("inner generator argument is not homogeneous")
        degs.append(dset.pop() if dset else A.group.zero())
        if A.alpha.apply(x) != x:
            raise ValueError("inner generator argument is not fixed by the twist")
    ak = A.alpha_power(k)
    cols = [A.bracket(xs + [ak.column(q)]) for q in range(A.dim)]
    data = [[cols[q][r] for q in range(A.dim)] for r in range(A.dim)]
    return HomMap(A.degree_sum(degs), Matrix(data))


def fixed_point_basis(algebra):
    """Graded basis of the fixed space of the twist, as (degree, vector)."""
    A = algebra
    out = []
    for g in sorted(set(A.degrees)):
        idxs = [i for i in range(A.dim) if A.degrees[i] == g]
        rows = [[A.alpha[r][c] - (F1 if r == c else F0) for c in idxs]
                for r in idxs]
        for kv in nullspace_of_rows(rows, len(idxs)):
            v = A.zero_vector()
            for pos, c in zip(idxs, kv):
                v[pos] = c
            out.append((g, v))
    return out


def inner_generators(algebra, k):
    """All nonzero ad maps on tuples from the fixed graded basis."""
    A = algebra
    fixed = fixed_point_basis(A)
    gens = []
    for combo in combinations_with_replacement(range(len(fixed)), A.arity - 1):
        xs = [fixed[i][1] for i in combo]
        m = ad_map(A, xs, k)
        if not m.matrix.is_zero():
            gens.append((xs, m))
    return gens


def inner_space(algebra, k):
    """Span of the inner ad maps for one twist power, per degree."""
    A = algebra
    if k < 0:
        raise ValueError("inner twist power must be nonnegative")

    def build():
        bydeg = {}
        for _, m in inner_generators(A, k):
            bydeg.setdefault(m.degree, []).append(m.matrix.flatten())
        return [(d, [_unflatten(A.dim, row) for row in span_basis(bydeg[d])])
                for d in sorted(bydeg)]

    blocks = _cached_blocks(A, "inner", k, build)
    return _blocks_to_space(A, "inner", k, blocks)


# ---------------------------------------------------------------------------
# subspaces of the algebra itself
# ---------------------------------------------------------------------------

def derived_subalgebra(algebra):
    """Canonical basis of the span of all bracket values."""
    A = algebra
    return span_basis([A.bracket_basis(t) for t in A.all_tuples()])


def is_perfect(algebra):
    return len(derived_subalgebra(algebra)) == algebra.dim


def center(algebra):
    """Elements bracketing to zero against every basis completion."""
    A = algebra
    rows = []
    for tail in combinations_with_replacement(range(A.dim), A.arity - 1):
        cols = [A.bracket_basis((q,) + tail) for q in range(A.dim)]
        for r in range(A.dim):
            row = [cols[q][r] for q in range(A.dim)]
            if any(row):
                rows.append(row)
    return nullspace_of_rows(rows, A.dim)


def centralizer(algebra, span_vectors):
    """Elements whose bracket with the given subspace (slot 2) vanishes."""
    A = algebra
    rows = []
    svs = [[F1 * c for c in v] for v in span_vectors]
    for s in svs:
        if len(s) != A.dim:
            raise ShapeError("subspace vector length does not match dimension")
        for tail in combinations_with_replacement(range(A.dim), A.arity - 2):
            cols = [A.bracket([A.basis_vector(q), s] +
                              [A.basis_vector(t) for t in tail])
                    for q in range(A.dim)]
            for r in range(A.dim):
                row = [cols[q][r] for q in range(A.dim)]
                if any(row):
                    rows.append(row)
    return nullspace_of_rows(rows, A.dim)


# ---------------------------------------------------------------------------
# the map calculus
# ---------------------------------------------------------------------------

def color_commutator(D1, D2, eps):
    """[D, D'] = D D' - eps(d, d') D' D, of degree d + d'."""
    sign = eps.value(D1.degree, D2.degree)
    mat = D1.matrix * D2.matrix - (D2.matrix * D1.matrix).scale(sign)
    return HomMap(eps.group.add(D1.degree, D2.degree), mat)


def alpha_shift(algebra, D):
    """The induced twist on map spaces: D -> D o alpha."""
    return HomMap(D.degree, D.matrix * algebra.alpha)


def verify_double_derivation_closure(algebra, k_max):
    """Closure of the double-derivation spaces under the induced twist and
    the color commutator, certified pointwise by the oracle."""
    A = algebra
    if A.arity < 3:
        raise ArityError("closure check needs arity >= 3")
    report = ValidationReport()
    spaces = {k: double_derivation_space(A, k) for k in range(k_max + 1)}
    shift_seen = set()
    checks = 0
    for k in range(k_max + 1):
        key = (A.alpha_power(k).data, A.alpha_power(k + 1).data)
        if key in shift_seen:
            continue
        shift_seen.add(key)
        for idx, D in enumerate(spaces[k].maps()):
            ok, wit = oracle.is_double_derivation(A, alpha_shift(A, D), k + 1)
            checks += 1
            if not ok:
                report.add("closure-shift", witness=(k, idx, wit),
                           expected="double derivation at twist k+1",
                           actual="identity fails")
    pair_seen = set()
    for k in range(k_max + 1):
        for s in range(k_max + 1 - k):
            # [D2, D1] is a scalar multiple of [D1, D2], so the class of
            # (k, s) and (s, k) carries the same verdicts
            key = (frozenset((A.alpha_power(k).data, A.alpha_power(s).data)),
                   A.alpha_power(k + s).data)
            if key in pair_seen:
                continue
            pair_seen.add(key)
            maps_k = spaces[k].maps()
            maps_s = spaces[s].maps()
            for i, D1 in enumerate(maps_k):
                for j, D2 in enumerate(maps_s):
                    if k == s and j < i:
                        continue
                    C = color_commutator(D1, D2, A.eps)
                    ok, wit = oracle.is_double_derivation(A, C, k + s)
                    checks += 1
                    if not ok:
                        report.add("closure-commutator", witness=(k, s, i, j, wit),
                                   expected="double derivation at twist k+s",
                                   actual="identity fails")
    report.details["checks"] = checks
    return report


def verify_inner_ideal(algebra, k_max):
    """Inner maps form an ideal of the double derivations (perfect algebras):
    the induced twist shifts inner levels up, and commutators with double
    derivations land back in the inner span."""
    A = algebra
    if A.arity < 3:
        raise ArityError("inner ideal check needs arity >= 3")
    if not is_perfect(A):
        raise HypothesisError(f"{A.name} is not perfect")
    report = ValidationReport()
    inns = {k: inner_space(A, k) for k in range(k_max + 2)}
    dds = {k: double_derivation_space(A, k) for k in range(k_max + 1)}
    inn_bases = {}
    for k, sp in inns.items():
        for block in sp.blocks:
            inn_bases[(k, block.degree)] = span_basis(
                [m.matrix.flatten() for m in block.basis])
    shift_seen = set()
    for k in range(k_max + 1):
        key = (A.alpha_power(k).data, A.alpha_power(k + 1).data)
        if key in shift_seen:
            continue
        shift_seen.add(key)
        for block in inns[k].blocks:
            target = inn_bases.get((k + 1, block.degree), [])
            for idx, I in enumerate(block.basis):
                shifted = I.matrix * A.alpha
                if shifted.is_zero():
                    continue
                if not subspace_contains(target, shifted.flatten()):
                    report.add("inner-shift", witness=(k, block.degree, idx),
                               expected="contained in inner span at k+1",
                               actual="outside")
    pair_seen = set()
    for s in range(k_max + 1):
        for k in range(k_max + 1 - s):
            key = (A.alpha_power(s).data, A.alpha_power(k).data,
                   A.alpha_power(k + s).data)
            if key in pair_seen:
                continue
            pair_seen.add(key)
            for i, D in enumerate(dds[s].maps()):
                for block in inns[k].blocks:
                    for j, I in enumerate(block.basis):
                        C = color_commutator(D, I, A.eps)
                        if C.matrix.is_zero():
                            continue
                        target = inn_bases.get((k + s, C.degree), [])
                        if not subspace_contains(target, C.matrix.flatten()):
                            report.add("inner-commutator",
                                       witness=(s, k, i, block.degree, j),
                                       expected="contained in inner span at k+s",
                                       actual="outside")
    return report


def merged_map_basis(space):
    """Canonical per-degree basis of the union of the space's blocks.

    Twist-power labels are dropped: for finite-order twists the per-power
    blocks coincide as subspaces of the endomorphisms, and the map algebra
    is built on the actual span.
    """
    A = space.algebra
    bydeg = {}
    for block in space.blocks:
        for m in block.basis:
            bydeg.setdefault(block.degree, []).append(m.matrix.flatten())
    out = []
    for d in sorted(bydeg):
        for row in span_basis(bydeg[d]):
            out.append(HomMap(d, _unflatten(A.dim, row)))
    return out


def map_coordinates(basis_maps, hom_map):
    """Coordinates of a map in a merged basis, or None when outside."""
    positions = [i for i, m in enumerate(basis_maps) if m.degree == hom_map.degree]
    rows = [basis_maps[i].matrix.flatten() for i in positions]
    co = coords_in_basis(rows, hom_map.matrix.flatten())
    if co is None:
        return None
    out = [F0] * len(basis_maps)
    for pos, c in zip(positions, co):
        out[pos] = c
    return out


def maps_as_color_algebra(space, name=None):
    """Package a commutator-closed map space as a binary color algebra.

    Basis: merged_map_basis(space) in order.  Bracket: color commutator in
    those coordinates.  Twist: composition with the ambient twist.  Raises
    TruncationError when a commutator or twist-shift leaves the span, and
    re-validates the constructed algebra.
    """
    A = space.algebra
    basis_maps = merged_map_basis(space)
    if not basis_maps:
        raise TruncationError("cannot build an algebra on an empty map space")
    dim = len(basis_maps)
    alpha_cols = []
    for bm in basis_maps:
        shifted = HomMap(bm.degree, bm.matrix * A.alpha)
        co = map_coordinates(basis_maps, shifted)
        if co is None:
            raise TruncationError(
                "twist-shift leaves the computed span; raise the twist-power range")
        alpha_cols.append(co)
    alpha = Matrix([[alpha_cols[c][r] for c in range(dim)] for r in range(dim)])
    constants = {}
    for p in range(dim):
        for q in range(p, dim):
            C = color_commutator(basis_maps[p], basis_maps[q], A.eps)
            if C.matrix.is_zero():
                continue
            co = map_coordinates(basis_maps, C)
            if co is None:
                raise TruncationError(
                    "commutator leaves the computed span; raise the twist-power range")
            value = {j: c for j, c in enumerate(co) if c != 0}
            if value:
                constants[(p, q)] = value
    label = KIND_LABELS.get(space.kind, space.kind)
    basis = [(f"D{i + 1}", bm.degree) for i, bm in enumerate(basis_maps)]
    out = ColorAlgebra(name or f"{label}({A.name})", 2, A.group, A.eps,
                       basis, alpha, constants)
    rep = validate_algebra(out)
    if not rep.ok:
        raise AlgebraValidationError(
            "map algebra fails validation (twist-shift may not be multiplicative)",
            rep)
    return out
