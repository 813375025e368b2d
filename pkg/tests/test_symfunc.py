import pytest

from exactalg import Poly1
from symfunc import (
    EMPTY, FullSeq, Partition, SymF, SymFY, SymOp, all_partitions, complete, conjugate,
    d_lambda, e_lambda, elementary, eval_single, full_sequence, is_full_sequence,
    is_shift_invariant_sym, partitions_of, rlex_compare, shift_expansion_check, sym_mul,
    sym_shift, sym_shift_op, sym_antipode_identity, sym_sheffer_verify, theta_expansion,
    verify_full_divided, verify_linear_divided,
)
from umbral_errors import PreconditionError

N = 5


def P(*parts):
    return Partition(parts)


def m(*parts, trunc=N):
    return SymF.monomial(Partition(parts), trunc)


# -- partitions -------------------------------------------------------------------

def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))
    assert Partition.of([0, 1, 3, 1]) == P(3, 1, 1)
    assert P(3, 1, 1).without(P(1)) == P(3, 1)
    assert P(3, 1).without(P(2)) is None


def test_conjugate():
    assert conjugate(P(3, 1)) == P(2, 1, 1)
    assert conjugate(EMPTY) == EMPTY
    for n in range(7):
        for lam in partitions_of(n):
            assert conjugate(conjugate(lam)) == lam


@pytest.mark.parametrize("n, count", [(0, 1), (1, 1), (4, 5), (6, 11), (8, 22)])
def test_partition_counts(n, count):
    assert len(partitions_of(n)) == count


def test_partitions_ascend_in_reverse_lex_order():
    assert partitions_of(4) == (P(4), P(3, 1), P(2, 2), P(2, 1, 1), P(1, 1, 1, 1))
    assert rlex_compare(P(2), P(1, 1)) == -1
    assert rlex_compare(P(1, 1), P(2)) == 1
    assert rlex_compare(P(2, 1), P(2, 1)) == 0
    assert len(all_partitions(3)) == 1 + 1 + 2 + 3


@pytest.mark.parametrize("n", range(9))
def test_reverse_lex_order_is_a_strict_total_order(n):
    parts = partitions_of(n)
    for a in parts:
        for b in parts:
            assert rlex_compare(a, b) == -rlex_compare(b, a)
            assert (rlex_compare(a, b) == 0) == (a == b)
    for a in parts:
        for b in parts:
            if rlex_compare(a, b) != -1:
                continue
            for c in parts:
                if rlex_compare(b, c) == -1:
                    assert rlex_compare(a, c) == -1
    assert all(rlex_compare(a, b) == -1 for a, b in zip(parts, parts[1:]))


# -- the monomial algebra -------------------------------------------------------------

def test_monomial_product():
    assert sym_mul(m(1), m(1)) == m(2) + m(1, 1).scale(2)
    assert sym_mul(m(1), m(1, 1)) == m(2, 1) + m(1, 1, 1).scale(3)


def test_elementary_and_complete():
    assert elementary(3, N) == m(1, 1, 1)
    assert complete(2, N) == m(2) + m(1, 1)
    assert e_lambda(P(1, 1), N) == m(2) + m(1, 1).scale(2)


def test_products_respect_truncation():
    assert sym_mul(m(2, trunc=3), m(2, trunc=3)).is_zero()


def test_eval_single():
    assert eval_single(elementary(2, N)).is_zero()
    assert eval_single(complete(2, N)) == Poly1.monomial(2)


def test_shift_of_a_monomial():
    shifted = sym_shift(m(2, 1))
    assert shifted == SymFY(N, {(0, P(2, 1)): 1, (2, P(1)): 1, (1, P(2)): 1})


def test_sym_shift_is_a_ring_map():
    basis = [SymF.monomial(lam, N) for lam in all_partitions(N)]
    assert sym_shift(SymF.one(N)) == SymFY.lift(SymF.one(N))
    for f in basis:
        for g in basis:
            assert sym_shift(f * g) == sym_shift(f) * sym_shift(g)
    f = elementary(2, N) + complete(3, N).scale(3)
    g = e_lambda(P(1, 1), N) - m(2)
    assert sym_shift(f * g) == sym_shift(f) * sym_shift(g)
    assert sym_shift(f + g) == sym_shift(f) + sym_shift(g)


def test_sym_antipode_identity():
    assert sym_antipode_identity(N).ok


@pytest.mark.parametrize("build", [elementary, complete])
def test_e_and_h_are_linear_divided_powers(build):
    assert verify_linear_divided([build(n, N) for n in range(N + 1)]).ok


def test_monomials_are_not_linear_divided_powers():
    seq = [m(*([1] * n)) if n else SymF.one(N) for n in range(N + 1)]
    seq[2] = m(2)
    assert not verify_linear_divided(seq).ok


# -- operators on symmetric functions --------------------------------------------------

def test_shift_expansion():
    assert shift_expansion_check(N).ok


def test_d_lambda_removes_parts():
    D21 = d_lambda(P(2, 1), N)
    assert D21.apply(m(3, 2, 1)) == m(3)
    assert D21.apply(m(2, 2)).is_zero()


@pytest.mark.parametrize("lam", [EMPTY, P(1), P(2, 1), P(3)])
def test_d_lambda_is_shift_invariant(lam):
    assert is_shift_invariant_sym(d_lambda(lam, N)) is None


def test_theta_expansion_of_a_fixed_shift():
    coeffs = theta_expansion(sym_shift_op(2, 4))
    assert coeffs == {EMPTY: 1, P(1): 2, P(2): 4, P(3): 8, P(4): 16}


def test_projection_is_not_shift_invariant():
    projection = SymOp(4, {P(1): m(1, trunc=4)})
    assert is_shift_invariant_sym(projection) == P(1)
    with pytest.raises(PreconditionError):
        theta_expansion(projection)


# -- full sequences ---------------------------------------------------------------------

def test_full_sequence_needs_every_partition():
    with pytest.raises(ValueError):
        FullSeq(2, {EMPTY: SymF.one(2)})
    with pytest.raises(ValueError):
        full_sequence('schur', 2)


@pytest.mark.parametrize("kind", ['e', 'm-conjugate'])
def test_full_sequence_kinds(kind):
    assert is_full_sequence(full_sequence(kind, N)).ok


def test_complete_functions_are_not_a_full_sequence():
    report = is_full_sequence(full_sequence('h', 3))
    assert not report.ok
    assert report.first_violation.degree == 2


def test_elementary_full_sequence_is_sheffer_with_c_one():
    s = full_sequence('e', 4)
    assert verify_full_divided(s).ok
    findings = sym_sheffer_verify(s)
    assert findings.shift_invariant
    assert findings.c == 1


def test_scaled_elementary_sequence_gives_c_three():
    findings = sym_sheffer_verify(full_sequence('e', 4, 3))
    assert findings.shift_invariant
    assert findings.c == 3
    assert findings.to_json() == {"shift_invariant": True, "c": "3", "witness": None}


def test_conjugate_monomials_break_the_convolution():
    s = full_sequence('m-conjugate', N)
    report = verify_full_divided(s)
    assert not report.ok
    first = report.first_violation
    assert first.degree == 2
    assert first.rhs - first.lhs == SymFY(N, {(1, P(1)): 2})


def test_conjugate_monomials_are_not_shift_invariant():
    findings = sym_sheffer_verify(full_sequence('m-conjugate', 4))
    assert not findings.shift_invariant
    assert findings.witness == P(2)
    assert findings.c is None


def test_full_divided_needs_a_full_sequence():
    with pytest.raises(PreconditionError):
        verify_full_divided(full_sequence('h', 3))
