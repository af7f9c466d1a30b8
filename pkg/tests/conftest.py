import pytest

from nhlc.builders import (build_abelian, build_regraded_a4, build_simple_nlie,
                           build_super_heis, build_twisted_a4)


@pytest.fixture(scope="session")
def a4():
    return build_simple_nlie(3)


@pytest.fixture(scope="session")
def abelian3():
    return build_abelian(3)


@pytest.fixture(scope="session")
def twisted_a4():
    return build_twisted_a4()


@pytest.fixture(scope="session")
def super_heis():
    return build_super_heis()


@pytest.fixture(scope="session")
def regraded_a4():
    return build_regraded_a4()


@pytest.fixture(scope="session")
def cross3():
    return build_simple_nlie(2)


@pytest.fixture(scope="session")
def color_heis3():
    """Ternary analogue of the super Heisenberg algebra: odd x1, x2 with
    [x1,x1,y] = [x2,x2,y] = z.  The one stock instance whose double
    derivations strictly contain its derivations, with genuine sign
    bookkeeping in every ternary identity."""
    from fractions import Fraction
    from nhlc.algebra import ColorAlgebra
    from nhlc.grading import Bicharacter, GradingGroup
    from nhlc.linalg import Matrix
    g = GradingGroup(torsion=(2,))
    eps = Bicharacter(g, [[Fraction(-1)]])
    odd, even = g.element(torsion=(1,)), g.zero()
    constants = {(0, 0, 2): {3: Fraction(1)}, (1, 1, 2): {3: Fraction(1)}}
    return ColorAlgebra("COLOR_HEIS3", 3, g, eps,
                        [("x1", odd), ("x2", odd), ("y", even), ("z", even)],
                        Matrix.identity(4), constants)
