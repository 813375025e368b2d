from fractions import Fraction
from math import factorial

import pytest
import sympy

from exactalg import Poly1
from families import (
    FAMILIES_WITH_P, FAMILY_PARAMS, FamilySpec, binomial_sequence, family_P, family_Q,
    family_convolution_check, family_sequence, legendre_polynomials, load_family_presets,
    make_spec, spec_from_preset,
)
from operators import identity_op, is_shift_invariant_endo, op_invert
from suites import shift_down_report
from umbral_core import (
    PolySeq, build_F, generalized_sheffer, recover_P_from_F, verify_convolution,
    verify_divided_powers,
)
from umbral_errors import FamilyError

N = 8
_x = sympy.Symbol('x')


def from_sympy(expr) -> Poly1:
    coeffs = sympy.Poly(sympy.expand(expr), _x).all_coeffs()
    return Poly1(Fraction(int(c.p), int(c.q)) for c in reversed(coeffs))


def F(a, b=1):
    return Fraction(a, b)


# -- spot values ------------------------------------------------------------------

def test_bernoulli2_low_degrees():
    seq = family_sequence(make_spec('bernoulli2', 2))
    assert seq[0] == Poly1([1])
    assert seq[1] == Poly1([F(1, 2), 1])
    assert seq[2] == Poly1([F(-1, 12), 0, F(1, 2)])


def test_hermite_unit_variance():
    seq = family_sequence(make_spec('hermite', 4, nu=1))
    assert seq[2] == Poly1([F(-1, 2), 0, F(1, 2)])
    assert seq[3] == Poly1([0, F(-1, 2), 0, F(1, 6)])


def test_laguerre_degree_one():
    seq = family_sequence(make_spec('laguerre', 3, alpha=F(-1, 2)))
    assert seq[1] == Poly1([F(1, 2), -1])


def test_legendre_derived_low_degrees():
    seq = family_sequence(make_spec('legendre_derived', 3))
    assert seq[1] == Poly1([1, 1])
    assert seq[2] == Poly1([F(1, 4), 1, F(1, 4)])


def test_hermite_derived_low_degrees():
    seq = family_sequence(make_spec('hermite_derived', 3))
    assert seq[1] == Poly1([0, 2])
    assert seq[2] == Poly1([F(-1, 2), 0, 1])


def test_factorial_families():
    lower = binomial_sequence(make_spec('lower_factorial', 3))
    rising = binomial_sequence(make_spec('rising_factorial', 3))
    assert lower[3] == Poly1([0, 2, -3, 1])
    assert rising[3] == Poly1([0, 2, 3, 1])


def test_abel_with_zero_parameter_is_powers():
    assert family_sequence(make_spec('abel', N, a=0)) == family_sequence(make_spec('powers', N))


def test_hermite_with_zero_variance_is_powers():
    assert family_sequence(make_spec('hermite', N, nu=0)) == family_sequence(make_spec('powers', N))
    assert family_P(make_spec('hermite', N, nu=0)) == identity_op(N)


def test_laguerre_minus_one_has_identity_sheffer_operator():
    spec = make_spec('laguerre', N, alpha=-1)
    assert family_P(spec) == identity_op(N)
    assert family_convolution_check(spec).ok


def test_abel_closed_form():
    q = binomial_sequence(make_spec('abel', 3, a=2))
    # x (x - 6)^2
    assert q[3] == Poly1([0, 36, -12, 1])


# -- against sympy ----------------------------------------------------------------

def test_legendre_matches_sympy():
    for n, p in enumerate(legendre_polynomials(N)):
        assert p == from_sympy(sympy.legendre(n, _x))


@pytest.mark.parametrize("alpha", [F(-1, 2), F(0), F(2)])
def test_laguerre_matches_sympy(alpha):
    seq = family_sequence(make_spec('laguerre', N, alpha=alpha))
    a = sympy.Rational(alpha.numerator, alpha.denominator)
    for n in range(N + 1):
        assert seq[n] == from_sympy(sympy.assoc_laguerre(n, a, _x))


def test_hermite_derived_matches_sympy():
    seq = family_sequence(make_spec('hermite_derived', N))
    for n in range(N + 1):
        expected = from_sympy(sympy.hermite(n, _x)).scale(F(1, factorial(n) ** 2))
        assert seq[n] == expected


# -- operators --------------------------------------------------------------------

@pytest.mark.parametrize("name, params", [
    ('powers', {}), ('lower_factorial', {}), ('rising_factorial', {}), ('abel', {'a': F(1, 2)}),
    ('hermite', {'nu': F(3, 2)}), ('laguerre', {'alpha': F(-1, 2)}), ('bernoulli2', {}),
    ('legendre_derived', {}), ('hermite_derived', {}),
])
def test_q_lowers_every_family(name, params):
    spec = make_spec(name, N, **params)
    assert shift_down_report(family_Q(spec), family_sequence(spec)).ok


@pytest.mark.parametrize("preset", sorted(load_family_presets()))
def test_convolution_holds_for_every_preset(preset):
    assert family_convolution_check(spec_from_preset(preset, N)).ok


@pytest.mark.parametrize("name", FAMILIES_WITH_P)
def test_sheffer_operator_is_shift_invariant_and_recoverable(name):
    params = {key: F(1, 3) for key in FAMILY_PARAMS[name]}
    P = family_P(make_spec(name, N, **params))
    assert is_shift_invariant_endo(P)
    assert recover_P_from_F(build_F(P)) == P


def test_bernoulli2_p_is_the_unit_integral():
    P = family_P(make_spec('bernoulli2', 3))
    assert P.apply(Poly1.x()) == Poly1([F(1, 2), 1])


@pytest.mark.parametrize("name", ['legendre_derived', 'hermite_derived'])
def test_derived_families_have_no_stated_p(name):
    with pytest.raises(FamilyError):
        family_P(make_spec(name, N))


# -- specs and presets ----------------------------------------------------------------

def test_spec_validation():
    with pytest.raises(FamilyError):
        FamilySpec('chebyshev')
    with pytest.raises(FamilyError):
        FamilySpec('hermite')
    with pytest.raises(FamilyError):
        FamilySpec('powers', {'nu': '1'})
    with pytest.raises(FamilyError):
        FamilySpec('powers', {}, -1)


def test_spec_parses_rational_params():
    spec = FamilySpec('hermite', {'nu': '3/2'}, 4)
    assert spec.param('nu') == F(3, 2)
    assert spec.to_json() == {"name": "hermite", "trunc": 4, "params": {"nu": "3/2"}}


def test_make_spec_ignores_unset_params():
    assert make_spec('powers', 3, nu=None).params == {}


def test_presets_load_and_resolve():
    presets = load_family_presets()
    assert presets['hermite_three_halves']['family'] == 'hermite'
    spec = spec_from_preset('hermite_three_halves', 5)
    assert spec.param('nu') == F(3, 2)
    assert spec.trunc == 5


def test_unknown_preset():
    with pytest.raises(FamilyError):
        spec_from_preset('no_such_preset')


# -- acceptance grid at full size ---------------------------------------------------------

GRID = 12


@pytest.mark.parametrize("name, params", [
    ('hermite', {'nu': F(1)}), ('hermite', {'nu': F(3, 2)}), ('hermite', {'nu': F(-2)}),
    ('laguerre', {'alpha': F(-1, 2)}), ('laguerre', {'alpha': F(0)}), ('laguerre', {'alpha': F(2)}),
    ('bernoulli2', {}),
])
def test_family_grid_round_trip(name, params):
    spec = make_spec(name, GRID, **params)
    seq = family_sequence(spec)
    P = family_P(spec)
    F_built = build_F(P)
    assert verify_convolution(F_built, seq).ok
    assert recover_P_from_F(F_built) == P
    inverse = op_invert(P)
    assert verify_divided_powers(PolySeq([inverse.apply(p) for p in seq])).ok
    assert generalized_sheffer(seq).F == F_built


def test_family_grid_spot_values():
    assert family_sequence(make_spec('hermite', GRID, nu=F(3, 2)))[2] == Poly1([F(-3, 4), 0, F(1, 2)])
    assert family_sequence(make_spec('laguerre', GRID, alpha=F(2)))[1] == Poly1([3, -1])
    assert family_sequence(make_spec('bernoulli2', GRID))[2] == Poly1([F(-1, 12), 0, F(1, 2)])
