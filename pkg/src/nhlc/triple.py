"""Triple derivations of binary map algebras.

A triple derivation of a binary color algebra satisfies the Leibniz-type
rule only on nested brackets [x, [y, z]].  The instance theorems compare the
triple-derivation space of the inner- and derivation-map algebras of a
centerless perfect algebra against the plain derivation space; equality is
expected exactly under those hypotheses.
"""

from .errors import ArityError, HypothesisError
from .linalg import F0, RowReducer, span_basis, subspace_contains
from .report import ValidationReport
from .spaces import (GradedMapSpace, _blocks_to_space, _cached_blocks,
                     _solve_blocks, center, derivation_space,
                     double_derivation_space, inner_space, is_perfect,
                     map_coordinates, maps_as_color_algebra, merged_map_basis)


def _triple_rows(A, k, d, var_index, nvars):
    ak = A.alpha_power(k)
    acols = [ak.column(i) for i in range(A.dim)]
    for x in range(A.dim):
        sx = A.eps.value(d, A.degrees[x])
        for y in range(A.dim):
            sxy = A.eps.value(d, A.group.add(A.degrees[x], A.degrees[y]))
            for z in range(A.dim):
                rows = [[F0] * nvars for _ in range(A.dim)]
                w = A.bracket([A.basis_vector(x), A.bracket_basis((y, z))])
                for i in range(A.dim):
                    if w[i]:
                        for r in range(A.dim):
                            vx = var_index.get((r, i))
                            if vx is not None:
                                rows[r][vx] += w[i]
                inner_k = A.bracket([acols[y], acols[z]])
                for j in range(A.dim):
                    vx = var_index.get((j, x))
                    if vx is not None:
                        term = A.bracket([A.basis_vector(j), inner_k])
                        for r in range(A.dim):
                            if term[r]:
                                rows[r][vx] -= term[r]
                for j in range(A.dim):
                    vx = var_index.get((j, y))
                    if vx is not None:
                        term = A.bracket([acols[x],
                                          A.bracket([A.basis_vector(j), acols[z]])])
                        for r in range(A.dim):
                            if term[r]:
                                rows[r][vx] -= sx * term[r]
                for j in range(A.dim):
                    vx = var_index.get((j, z))
                    if vx is not None:
                        term = A.bracket([acols[x],
                                          A.bracket([acols[y], A.basis_vector(j)])])
                        for r in range(A.dim):
                            if term[r]:
                                rows[r][vx] -= sxy * term[r]
                for row in rows:
                    if any(row):
                        yield row


def triple_derivation_space(algebra, k):
    """Nullspace of the nested-bracket rule over all basis triples."""
    A = algebra
    if A.arity != 2:
        raise ArityError("triple derivations are defined for arity 2")
    blocks = _cached_blocks(A, "tder", k,
                            lambda: _solve_blocks(A, k, _triple_rows))
    return _blocks_to_space(A, "tder", k, blocks)


def verify_triple_invariance(algebra, k_max):
    """Triple derivations of the double-derivation algebra keep the inner
    subspace invariant, and vanish identically if they vanish on it."""
    A = algebra
    if A.arity < 3:
        raise ArityError("invariance check needs arity >= 3")
    if not is_perfect(A):
        raise HypothesisError(f"{A.name} is not perfect")
    if center(A):
        raise HypothesisError(f"{A.name} has nonzero center")
    dd_union = GradedMapSpace(A, "dder", [
        b for k in range(k_max + 1)
        for b in double_derivation_space(A, k).blocks])
    basis_maps = merged_map_basis(dd_union)
    inner_maps = [m for k in range(k_max + 1) for m in inner_space(A, k).maps()]
    if not inner_maps:
        raise HypothesisError(f"{A.name} has no inner maps (no twist-fixed points)")
    A2 = maps_as_color_algebra(dd_union)
    inn_coords = []
    for m in inner_maps:
        co = map_coordinates(basis_maps, m)
        if co is None:
            raise HypothesisError("inner maps do not lie in the double-derivation span")
        inn_coords.append(co)
    inn_basis = span_basis(inn_coords)
    report = ValidationReport()
    report.details["algebra"] = A2.name
    report.details["inner_dim"] = len(inn_basis)
    seen = set()
    for k in range(k_max + 1):
        key = A2.alpha_power(k).data
        if key in seen:
            continue
        seen.add(key)
        tder = triple_derivation_space(A2, k)
        for block in tder.blocks:
            for idx, T in enumerate(block.basis):
                for v in inn_basis:
                    image = T.apply(list(v))
                    if any(image) and not subspace_contains(inn_basis, image):
                        report.add("triple-invariance",
                                   witness=(k, block.degree, idx),
                                   expected="image inside inner subspace",
                                   actual="outside")
                        break
            # maps in the triple span vanishing on the inner subspace
            red = RowReducer(len(block.basis))
            rows = []
            for v in inn_basis:
                images = [T.apply(list(v)) for T in block.basis]
                for r in range(A2.dim):
                    rows.append([img[r] for img in images])
            for row in rows:
                red.add(row)
            kern = red.nullspace()
            if kern:
                report.add("triple-vanishing-on-inner",
                           witness=(k, block.degree),
                           expected="only the zero map vanishes on the inner subspace",
                           actual=f"kernel dimension {len(kern)}")
    return report


def verify_triple_equals_derivations(algebra2, k_max):
    """Compare triple derivations with derivations of a binary algebra.

    Containment of derivations in triple derivations must always hold.
    Strict containment is a violation when the algebra is centerless
    perfect, and an out-of-hypothesis notice otherwise.
    """
    A2 = algebra2
    if A2.arity != 2:
        raise ArityError("comparison is defined for arity 2")
    hypothesis_met = is_perfect(A2) and not center(A2)
    report = ValidationReport()
    report.details["algebra"] = A2.name
    report.details["hypothesis_met"] = hypothesis_met
    table = []
    seen = set()
    for k in range(k_max + 1):
        key = A2.alpha_power(k).data
        if key in seen:
            continue
        seen.add(key)
        der = derivation_space(A2, k)
        tder = triple_derivation_space(A2, k)
        degrees = sorted({b.degree for b in der.blocks} |
                         {b.degree for b in tder.blocks})
        for d in degrees:
            der_rows = [m.matrix.flatten() for m in der.basis_for_degree(d)]
            tder_rows = [m.matrix.flatten() for m in tder.basis_for_degree(d)]
            tder_basis = span_basis(tder_rows)
            contained = all(subspace_contains(tder_basis, row) for row in der_rows)
            equal = contained and len(span_basis(der_rows)) == len(tder_basis)
            table.append({"k": k, "degree": repr(d), "dim_der": len(der_rows),
                          "dim_tder": len(tder_rows), "equal": equal})
            if not contained:
                report.add("derivations-inside-triple", witness=(k, d),
                           expected="derivations contained in triple derivations",
                           actual="containment fails")
            elif not equal:
                if hypothesis_met:
                    report.add("triple-equals-derivations", witness=(k, d),
                               expected=f"equal spaces (dim {len(der_rows)})",
                               actual=f"triple dim {len(tder_rows)}")
                else:
                    report.notice(
                        f"strict containment at k={k} degree {d!r} "
                        f"(dim {len(der_rows)} < {len(tder_rows)}); "
                        "out of hypothesis: algebra is not centerless perfect")
    report.details["table"] = table
    return report
