from fractions import Fraction

import pytest

import nhlc.delta as delta_mod
from helpers import conjugate_algebra
from nhlc import oracle
from nhlc.algebra import HomMap, validate_algebra
from nhlc.delta import (bracket_decomposition, delta_of,
                        inner_centralizer_in_double_derivations,
                        verify_delta_derivation_criterion,
                        verify_delta_homomorphism, verify_delta_residual_laws,
                        verify_delta_well_defined)
from nhlc.errors import DecompositionError, HypothesisError
from nhlc.linalg import Matrix
from nhlc.spaces import (center, color_commutator, derivation_space,
                         double_derivation_space, is_perfect)

F = Fraction


@pytest.fixture(scope="module")
def skewed_sum(a4):
    """Two copies of the simple algebra, transported through a basis mixing
    the summands: isomorphic to the plain sum, but with redundant bracket
    decompositions (the well-definedness checks become non-vacuous)."""
    from helpers import direct_sum
    plain = direct_sum(a4, a4, "A4_PLUS_A4")
    data = [[1 if i == j else 0 for j in range(8)] for i in range(8)]
    for i in range(4):
        data[i + 4][i] = 1
    out = conjugate_algebra(plain, Matrix(data), "A4_SUM_SKEWED")
    assert validate_algebra(out).ok
    assert is_perfect(out) and not center(out)
    return out


def test_decomposition_of_target_basis_vector(a4):
    dec = bracket_decomposition(a4, a4.basis_vector(3))
    assert dec.kernel_basis == []
    nz = [(t, c) for t, c in zip(dec.tuples, dec.coefficients) if c != 0]
    assert nz == [((0, 1, 2), F(1))]


def test_decomposition_of_zero(a4):
    dec = bracket_decomposition(a4, a4.zero_vector())
    assert all(c == 0 for c in dec.coefficients)


def test_decomposition_outside_derived(abelian3):
    with pytest.raises(DecompositionError):
        bracket_decomposition(abelian3, abelian3.basis_vector(0))


def test_decomposition_reconstructs(skewed_sum):
    A = skewed_sum
    x = [F(1), F(-2), F(3), F(1, 2), F(0), F(7), F(-1, 3), F(2)]
    dec = bracket_decomposition(A, x)
    assert len(dec.kernel_basis) > 0
    total = [F(0)] * A.dim
    for t, c in zip(dec.tuples, dec.coefficients):
        if c:
            w = A.bracket_basis(t)
            for r in range(A.dim):
                total[r] += c * w[r]
    assert total == x


def test_delta_fixes_derivations(a4, twisted_a4, skewed_sum):
    for A in (a4, twisted_a4):
        for D in derivation_space(A, 0).maps():
            assert delta_of(A, D, 0).matrix == D.matrix
    # derivations are double derivations, so the input check may be skipped
    for D in derivation_space(skewed_sum, 0).maps()[:2]:
        assert delta_of(skewed_sum, D, 0, _trusted=True).matrix == D.matrix


def test_delta_of_zero_map(a4):
    z = HomMap(a4.group.zero(), Matrix.zeros(4, 4))
    assert delta_of(a4, z, 0).matrix.is_zero()


def test_delta_linear_in_map(skewed_sum):
    A = skewed_sum
    maps = derivation_space(A, 0).maps()
    D1, D2 = maps[0], maps[5]
    lam = F(5, 3)
    combo = HomMap(D1.degree, D1.matrix + D2.matrix.scale(lam))
    got = delta_of(A, combo, 0, _trusted=True).matrix
    expect = delta_of(A, D1, 0, _trusted=True).matrix + \
        delta_of(A, D2, 0, _trusted=True).matrix.scale(lam)
    assert got == expect


def test_delta_commutes_with_twist(twisted_a4):
    A = twisted_a4
    for D in double_derivation_space(A, 0).maps():
        dm = delta_of(A, D, 0)
        assert dm.matrix * A.alpha == A.alpha * dm.matrix


def test_delta_output_is_double_derivation(a4):
    for D in double_derivation_space(a4, 0).maps():
        dm = delta_of(a4, D, 0)
        assert oracle.is_double_derivation(a4, dm, 0)[0]


def test_delta_requires_hypotheses(abelian3, super_heis):
    z3 = HomMap(abelian3.group.zero(), Matrix.zeros(3, 3))
    with pytest.raises(HypothesisError):
        delta_of(abelian3, z3, 0)


def test_delta_rejects_non_double_derivation(a4):
    bad = HomMap(a4.group.zero(), Matrix.identity(4))
    with pytest.raises(ValueError, match="double derivation"):
        delta_of(a4, bad, 0)


def test_well_defined_on_instances(a4, twisted_a4):
    for A in (a4, twisted_a4):
        for k in (0, 1):
            for D in double_derivation_space(A, k).maps():
                report = verify_delta_well_defined(A, D, k)
                assert report.ok, (A.name, k)


def test_well_defined_nonvacuous_on_redundant_presentation(skewed_sum):
    """Here the decomposition kernel is genuinely nonzero, so the check
    exercises decomposition-independence rather than passing vacuously."""
    A = skewed_sum
    for D in derivation_space(A, 0).maps()[:3]:
        report = verify_delta_well_defined(A, D, 0)
        assert report.ok
        assert report.details["kernel_dimension"] > 0


def test_well_defined_catches_corrupted_formula(skewed_sum, monkeypatch):
    """Flipping the Koszul prefix sign of one replacement slot breaks
    decomposition-independence and must be reported."""
    A = skewed_sum

    def corrupted(algebra, t, D, k):
        ak = algebra.alpha_power(k)
        out = [F(0)] * algebra.dim
        prefix = algebra.group.zero()
        for s in range(algebra.arity):
            sign = algebra.eps.value(D.degree, prefix)
            if s == 1:
                sign = -sign  # deliberately wrong sign in the middle slot
            args = [ak.column(t[u]) for u in range(s)] + \
                   [D.matrix.column(t[s])] + \
                   [ak.column(t[u]) for u in range(s + 1, algebra.arity)]
            term = algebra.bracket(args)
            for r in range(algebra.dim):
                out[r] += sign * term[r]
            prefix = algebra.group.add(prefix, algebra.degrees[t[s]])
        return out

    # a derivation touching both summands; single-summand maps are blind
    # to the mixed-tuple relations
    maps = derivation_space(A, 0).maps()
    acc = maps[0].matrix
    for m in maps[1:]:
        acc = acc + m.matrix
    D = HomMap(maps[0].degree, acc)
    assert verify_delta_well_defined(A, D, 0).ok
    monkeypatch.setattr(delta_mod, "_tuple_delta_image", corrupted)
    report = verify_delta_well_defined(A, D, 0)
    assert not report.ok


def test_residual_laws(a4, twisted_a4):
    for A in (a4, twisted_a4):
        report = verify_delta_residual_laws(A, 1)
        assert report.ok, (A.name, report.violations[:2])





def test_derivation_criterion(a4, twisted_a4):
    for A in (a4, twisted_a4):
        assert verify_delta_derivation_criterion(A, 1).ok


def test_derivation_criterion_k0_edge(a4):
    assert verify_delta_derivation_criterion(a4, 0).ok


def test_delta_homomorphism(a4, twisted_a4):
    assert verify_delta_homomorphism(a4, 1).ok
    assert verify_delta_homomorphism(twisted_a4, 1).ok


def test_delta_homomorphism_even_self_pairs(a4):
    """Even-degree self pairs: both sides vanish identically."""
    D = double_derivation_space(a4, 0).maps()[0]
    C = color_commutator(D, D, a4.eps)
    assert C.matrix.is_zero()
    assert delta_of(a4, C, 0).matrix.is_zero()


def test_inner_centralizer_trivial_on_a4(a4):
    space = inner_centralizer_in_double_derivations(a4, 1)
    assert space.dimension() == 0


def test_inner_centralizer_requires_perfect(abelian3):
    with pytest.raises(HypothesisError):
        inner_centralizer_in_double_derivations(abelian3, 1)


def test_inner_centralizer_inversion_harness(a4):
    """With the inner constraints removed the whole space comes back."""
    space = inner_centralizer_in_double_derivations(a4, 1, inner_maps=[])
    total = sum(double_derivation_space(a4, k).dimension() for k in (0, 1))
    assert space.dimension() == total
