from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nhlc.errors import ShapeError
from nhlc.grading import (Bicharacter, GradingGroup, trivial_bicharacter,
                          validate_bicharacter)

F = Fraction


def test_group_add_identity():
    g = GradingGroup(free_rank=1, torsion=(2,))
    a = g.element(free=(3,), torsion=(1,))
    assert g.add(g.zero(), a) == a
    assert g.add(a, g.zero()) == a


def test_group_add_torsion_reduction():
    g = GradingGroup(torsion=(2,))
    one = g.element(torsion=(1,))
    assert g.add(one, one) == g.zero()


def test_group_add_componentwise():
    g = GradingGroup(free_rank=1, torsion=(2,))
    a = g.element(free=(1,), torsion=(1,))
    b = g.element(free=(2,), torsion=(1,))
    assert g.add(a, b) == g.element(free=(3,), torsion=(0,))


def test_group_shape_errors():
    g = GradingGroup(free_rank=1)
    other = GradingGroup(free_rank=2)
    with pytest.raises(ShapeError):
        g.add(g.zero(), other.zero())
    with pytest.raises(ShapeError):
        g.element(free=(1, 2))
    with pytest.raises(ShapeError):
        GradingGroup(torsion=(1,))


def test_eps_zero_is_one():
    g = GradingGroup(free_rank=2)
    eps = Bicharacter(g, [[F(1), F(3)], [F(1, 3), F(1)]])
    a = g.element(free=(5, -2))
    assert eps.value(g.zero(), a) == 1
    assert eps.value(a, g.zero()) == 1


def test_eps_super_sign():
    g = GradingGroup(torsion=(2,))
    eps = Bicharacter(g, [[F(-1)]])
    one = g.element(torsion=(1,))
    assert eps.value(one, one) == -1


def test_eps_bimultiplicative_exponents():
    # free rank 2 with value q on the (0,1) generator pair
    q = F(5, 7)
    g = GradingGroup(free_rank=2)
    eps = Bicharacter(g, [[F(1), q], [1 / q, F(1)]])
    a = g.element(free=(2, 0))
    b = g.element(free=(0, 1))
    assert eps.value(a, b) == q ** 2
    assert eps.value(b, a) == q ** -2


def test_validate_super_table():
    g = GradingGroup(torsion=(2,))
    assert validate_bicharacter(Bicharacter(g, [[F(-1)]])).ok


def test_validate_torsion_incompatible():
    g = GradingGroup(torsion=(2,))
    report = validate_bicharacter(Bicharacter(g, [[F(2)]]))
    assert not report.ok
    assert any(v.check == "bicharacter-torsion" for v in report.violations)


def test_validate_trivial_table():
    g = GradingGroup(free_rank=1, torsion=(2, 3))
    assert validate_bicharacter(trivial_bicharacter(g)).ok


def test_validate_skew_violation():
    g = GradingGroup(free_rank=2)
    table = [[F(1), F(2)], [F(3), F(1)]]
    report = validate_bicharacter(Bicharacter(g, table))
    assert any(v.check == "bicharacter-skew" for v in report.violations)


def test_table_shape_enforced():
    g = GradingGroup(free_rank=2)
    with pytest.raises(ShapeError):
        Bicharacter(g, [[F(1)]])


# -- quantified properties ---------------------------------------------------

def _mixed_eps():
    # Z^2 x Z/2; a non-sign value can only sit between the two distinct
    # free generators (diagonals and torsion pairings are forced to +-1)
    g = GradingGroup(free_rank=2, torsion=(2,))
    q = F(3, 2)
    table = [[F(1), q, F(-1)],
             [1 / q, F(-1), F(1)],
             [F(-1), F(1), F(-1)]]
    eps = Bicharacter(g, table)
    assert validate_bicharacter(eps).ok
    return eps


elements = st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5))


def _elem(g, e):
    return g.element(free=(e[0], e[1]), torsion=(e[2],))


@given(elements, elements)
@settings(max_examples=60)
def test_eps_skew_property(ea, eb):
    eps = _mixed_eps()
    g = eps.group
    a, b = _elem(g, ea), _elem(g, eb)
    assert eps.value(a, b) * eps.value(b, a) == 1


@given(elements, elements, elements)
@settings(max_examples=60)
def test_eps_bimultiplicative_property(ea, eb, ec):
    eps = _mixed_eps()
    g = eps.group
    a, b, c = _elem(g, ea), _elem(g, eb), _elem(g, ec)
    assert eps.value(g.add(a, b), c) == eps.value(a, c) * eps.value(b, c)
    assert eps.value(a, g.add(b, c)) == eps.value(a, b) * eps.value(a, c)


@given(elements)
@settings(max_examples=60)
def test_eps_diagonal_is_sign(ea):
    eps = _mixed_eps()
    a = _elem(eps.group, ea)
    assert eps.value(a, a) in (1, -1)


@given(elements, elements, st.integers(-3, 3))
@settings(max_examples=60)
def test_eps_torsion_representative_invariance(ea, eb, shift):
    """Adding a multiple of the modulus to a torsion exponent is invisible."""
    eps = _mixed_eps()
    g = eps.group
    a, b = _elem(g, ea), _elem(g, eb)
    a_shifted = g.element(free=(ea[0], ea[1]), torsion=(ea[2] + 2 * shift,))
    assert a == a_shifted
    assert eps.value(a, b) == eps.value(a_shifted, b)
