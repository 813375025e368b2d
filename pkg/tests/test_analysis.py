from fractions import Fraction

import pytest

from exactalg import Poly1, Poly2
from families import family_P, family_Q, family_sequence, make_spec
from operators import BivarOp, derivative_op, identity_op, shift_bivar, shift_endo
from umbral_core import basic_from_q, build_F
from analysis import (
    ANTIPODE_FORMS, antipode_check, antipode_op, bialgebra_detect, cauchy_solve,
    coassociativity_check, cocommutativity_check, counit_from_F, heaviside_check,
    generator_check, infinitesimal_generator, shifted_comultiplication, symmetry_report,
)
from umbral_errors import CounitError, PreconditionError

N = 6


def hermite(nu=1, trunc=N):
    spec = make_spec('hermite', trunc, nu=nu)
    return family_sequence(spec), build_F(family_P(spec))


def scaled_x_comultiplication(trunc=N):
    """x |-> 2x + y, extended multiplicatively."""
    r = Poly2.x().scale(2) + Poly2.y()
    return BivarOp([r ** n for n in range(trunc + 1)])


# -- Cauchy problem / generator ---------------------------------------------------

def test_cauchy_with_d_is_the_shift():
    D = derivative_op(N)
    witness = cauchy_solve(D, basic_from_q(D), Poly1.monomial(2))
    assert witness.verified
    assert witness.u == (Poly2.x() + Poly2.y()) ** 2


def test_cauchy_with_legendre_q():
    Q = family_Q(make_spec('legendre_derived', N))
    witness = cauchy_solve(Q, basic_from_q(Q), Poly1.monomial(2))
    x, y = Poly2.x(), Poly2.y()
    assert witness.verified
    assert witness.u == x ** 2 + (x * y).scale(4) + y ** 2
    assert witness.to_json()["verified"] is True


@pytest.mark.parametrize("name", ['powers', 'lower_factorial', 'laguerre', 'hermite_derived'])
def test_cauchy_holds_for_every_monomial(name):
    params = {'alpha': Fraction(1, 2)} if name == 'laguerre' else {}
    Q = family_Q(make_spec(name, N, **params))
    basic = basic_from_q(Q)
    for n in range(N + 1):
        assert cauchy_solve(Q, basic, Poly1.monomial(n)).verified


def test_generator_of_differences_is_d():
    Q = shift_endo(1, N) - identity_op(N)
    assert infinitesimal_generator(Q, basic_from_q(Q)) == derivative_op(N)


def test_generator_of_legendre_q_is_itself():
    Q = family_Q(make_spec('legendre_derived', N))
    assert infinitesimal_generator(Q, basic_from_q(Q)) == Q


@pytest.mark.parametrize("name", ['powers', 'bernoulli2', 'legendre_derived', 'hermite_derived'])
def test_generator_check_agrees_with_taylor_delsarte(name):
    Q = family_Q(make_spec(name, N))
    assert generator_check(Q, basic_from_q(Q)).ok


def test_heaviside():
    assert heaviside_check(Poly1([3, Fraction(-1, 2), 0, 5]), N).ok
    assert heaviside_check(Poly1(), N).ok


# -- coalgebra ------------------------------------------------------------------

def test_shift_is_coassociative():
    assert coassociativity_check(shift_bivar(N)).ok


@pytest.mark.parametrize("nu", [Fraction(1), Fraction(3, 2), Fraction(-2)])
def test_sheffer_comultiplication_is_coassociative_and_cocommutative(nu):
    seq, F = hermite(nu)
    assert coassociativity_check(F).ok
    assert cocommutativity_check(F, seq).ok


def test_scaled_x_is_not_coassociative():
    report = coassociativity_check(scaled_x_comultiplication())
    assert not report.ok
    assert report.first_violation.degree == 1


def test_sum_of_powers_is_not_coassociative():
    # x^n |-> x^n + y^n: the legs give x^n + y^n + 2z^n and 2x^n + y^n + z^n
    F = BivarOp([Poly2.x() ** n + Poly2.y() ** n for n in range(N + 1)])
    report = coassociativity_check(F)
    assert not report.ok
    assert [v.degree for v in report.violations] == list(range(1, N + 1))


def test_cocommutativity_needs_convolution():
    seq, _ = hermite()
    with pytest.raises(PreconditionError):
        cocommutativity_check(shift_bivar(N), seq)


def test_symmetry_report():
    x, y = Poly2.x(), Poly2.y()
    assert symmetry_report([x + y, x * y]).ok
    assert symmetry_report([x + y, x * x]).first_violation.degree == 1


def test_counit_of_shift_is_evaluation_at_zero():
    assert counit_from_F(shift_bivar(N)) == [1] + [0] * N


def test_counit_of_hermite_reads_off_the_variance():
    seq, F = hermite(Fraction(3, 2))
    eps = counit_from_F(F, seq)
    assert eps[1] == 0
    assert eps[2] == Fraction(3, 2)


def test_counit_of_shifted_comultiplication():
    eps = counit_from_F(shifted_comultiplication(2, N))
    assert eps == [Fraction(2) ** n for n in range(N + 1)]


def test_counit_fails_without_right_law():
    with pytest.raises(CounitError):
        counit_from_F(scaled_x_comultiplication())


@pytest.mark.parametrize("c", [Fraction(0), Fraction(1), Fraction(-2, 3)])
def test_bialgebra_detection_recovers_c(c):
    assert bialgebra_detect(shifted_comultiplication(c, N)) == c


def test_hermite_is_not_multiplicative():
    _, F = hermite()
    assert bialgebra_detect(F) is None


# -- antipode -------------------------------------------------------------------

@pytest.mark.parametrize("c", [Fraction(0), Fraction(1), Fraction(-5, 2)])
def test_corrected_antipode(c):
    assert antipode_check(c, N).ok


def test_printed_antipode_only_works_at_zero():
    assert antipode_check(0, N, 'printed').ok
    report = antipode_check(1, N, 'printed')
    assert not report.ok
    assert report.first_violation.degree == 1


def test_antipode_reflects_about_c():
    S = antipode_op(Fraction(1, 2), N)
    assert S.apply(Poly1.x()) == Poly1([1, -1])


def test_unknown_antipode_form():
    assert 'corrected' in ANTIPODE_FORMS
    with pytest.raises(ValueError):
        antipode_op(1, N, 'other')
