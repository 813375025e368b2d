#!/usr/bin/env python3
"""
Analytic Checks and Coalgebra Suite
===================================
Cauchy problem, infinitesimal generator and Heaviside solution for a delta
operator, plus the coalgebra suite for a comultiplication F^(y).

Tensor legs are fixed variable names: in K[x] (x) K[x] (x) K[x] the legs
are x, y, z. Applying F to the first leg sends x^i to F(x^i)(x, y) and
renames the old y to z; applying F to the second leg sends y^j to
F(x^j)(y, z).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence

from sympy import Matrix, Rational

from exactalg import Poly1, Poly2, Poly3, Scalar, poly_substitute
from operators import (
    BivarOp, EndoOp, apply_x, op_from_Q_series, op_from_images,
    transport_apply_y,
)
from umbral_core import (
    PolySeq, VerifyReport, convolution_rhs, taylor_delsarte, verify_convolution,
)
from umbral_errors import (
    CounitError, InternalConsistencyError, PreconditionError, TruncationMismatchError,
)

logger = logging.getLogger(__name__)


# =============================================================================
# CAUCHY PROBLEM / GENERATOR / HEAVISIDE
# =============================================================================

@dataclass(frozen=True)
class CauchyWitness:
    u: Poly2
    residual: Poly2
    initial_gap: Poly1

    @property
    def verified(self) -> bool:
        return self.residual.is_zero() and self.initial_gap.is_zero()

    def to_json(self) -> Dict:
        return {
            "u": self.u.to_json(),
            "residual": self.residual.to_json(),
            "initial_gap": self.initial_gap.to_json(),
            "verified": self.verified,
        }


def cauchy_solve(Q: EndoOp, basic: PolySeq, p: Poly1) -> CauchyWitness:
    """u = G^(y) p solves Q_x u = Q_y u with u(x, 0) = p(x)."""
    if p.degree > Q.trunc:
        raise TruncationMismatchError(f"initial data of degree {p.degree} exceeds trunc {Q.trunc}")
    u = taylor_delsarte(Q, basic).apply(p)
    residual = apply_x(Q, u) - transport_apply_y(Q, u)
    return CauchyWitness(u=u, residual=residual, initial_gap=u.at_y_zero() - p)


def infinitesimal_generator(Q: EndoOp, basic: PolySeq) -> EndoOp:
    """sum_k (D q_k)(0) Q^k, checked against the y^1 coefficient of G^(y)."""
    coeffs = [q.derivative()(0) for q in basic]
    generator = op_from_Q_series(coeffs, Q)
    G = taylor_delsarte(Q, basic)
    limit = op_from_images([img.coeff_of_y(1) for img in G.images])
    if generator != limit:
        raise InternalConsistencyError("generator series differs from the y-derivative of G at y = 0")
    return generator


def generator_check(Q: EndoOp, basic: PolySeq) -> VerifyReport:
    """Column-wise comparison of sum_k (D q_k)(0) Q^k with the y^1 coefficient of G^(y)."""
    series = op_from_Q_series([q.derivative()(0) for q in basic], Q)
    G = taylor_delsarte(Q, basic)
    report = VerifyReport((0, Q.trunc))
    for n, img in enumerate(G.images):
        want = img.coeff_of_y(1)
        got = series.apply(Poly1.monomial(n))
        if got != want:
            report.add(n, Poly2.from_x(got), Poly2.from_x(want),
                       "generator series differs from the y-derivative of G at y = 0")
    return report


def heaviside_check(p: Poly1, trunc: int) -> VerifyReport:
    """sum_k y^k D^k p / k! equals p(x + y)."""
    if p.degree > trunc:
        raise TruncationMismatchError(f"polynomial of degree {p.degree} exceeds trunc {trunc}")
    report = VerifyReport((0, trunc))
    lhs = Poly2()
    term = p
    for k in range(max(p.degree, 0) + 1):
        lhs = lhs + Poly2.from_x(term) * Poly2.from_y(Poly1.monomial(k, Fraction(1, factorial(k))))
        term = term.derivative()
    rhs = poly_substitute(p, Poly2.x() + Poly2.y())
    if lhs != rhs:
        report.add(p.degree, lhs, rhs, "exp(y D) p differs from p(x + y)")
    return report


# =============================================================================
# COALGEBRA
# =============================================================================

def shifted_comultiplication(c: Scalar, trunc: int) -> BivarOp:
    """E^{y-c}: x^n |-> (x + y - c)^n."""
    r = Poly2.x() + Poly2.y() - Fraction(c)
    return BivarOp([r ** n for n in range(trunc + 1)])


def _first_leg(F: BivarOp, image: Poly2) -> Poly3:
    z = Poly3.variable(2)
    out = Poly3()
    for (i, j), c in image.items():
        out = out + Poly3.embed(F.images[i], (0, 1)) * (z ** j) * c
    return out


def _second_leg(F: BivarOp, image: Poly2) -> Poly3:
    x = Poly3.variable(0)
    out = Poly3()
    for (i, j), c in image.items():
        out = out + (x ** i) * Poly3.embed(F.images[j], (1, 2)) * c
    return out


def coassociativity_check(F: BivarOp) -> VerifyReport:
    """(F (x) I) F == (I (x) F) F on the degrees whose images stay within trunc."""
    N = F.trunc
    checked = -1
    report = VerifyReport()
    for n, image in enumerate(F.images):
        if image.x_degree > N or image.y_degree > N:
            logger.debug(f"coassociativity stops at x^{n}: image leaves the truncation")
            break
        lhs = _first_leg(F, image)
        rhs = _second_leg(F, image)
        if lhs != rhs:
            report.add(n, lhs, rhs, "coassociativity fails")
        checked = n
    report.checked_degrees = (0, checked)
    return report


def symmetry_report(images: Sequence[Poly2]) -> VerifyReport:
    """Every image is invariant under x <-> y."""
    report = VerifyReport((0, len(images) - 1))
    for n, image in enumerate(images):
        swapped = image.swap()
        if swapped != image:
            report.add(n, image, swapped, "not symmetric in x and y")
    return report


def cocommutativity_check(F: BivarOp, p: PolySeq) -> VerifyReport:
    """F p_n is symmetric, read through its expansion sum p_k(x) p_{n-k}(y)."""
    precondition = verify_convolution(F, p)
    if not precondition.ok:
        raise PreconditionError("F does not satisfy the convolution identity on p", precondition)
    return symmetry_report([convolution_rhs(p, n) for n in range(p.trunc + 1)])


def _to_sympy(c: Fraction) -> Rational:
    return Rational(c.numerator, c.denominator)


def _from_sympy(c) -> Fraction:
    c = Rational(c)
    return Fraction(int(c.p), int(c.q))


def counit_from_F(F: BivarOp, p: Optional[PolySeq] = None) -> List[Fraction]:
    """Solve (eps (x) I) F = I for eps(x^0)..eps(x^N); check the right counit law."""
    N = F.trunc
    if any(img.x_degree > N for img in F.images):
        raise CounitError("an image of F leaves the truncation in x")
    rows, rhs = [], []
    for n, image in enumerate(F.images):
        for j in range(max(image.y_degree, n) + 1):
            rows.append([_to_sympy(image.coefficient(i, j)) for i in range(N + 1)])
            rhs.append(1 if j == n else 0)
    try:
        solution, params = Matrix(rows).gauss_jordan_solve(Matrix(rhs))
    except ValueError as e:
        raise CounitError(f"counit system is inconsistent: {e}") from e
    if params.shape[0]:
        raise CounitError(f"counit system is underdetermined ({params.shape[0]} free parameters)")
    eps = [_from_sympy(v) for v in solution]

    for n, image in enumerate(F.images):
        right = Poly1()
        for (i, j), c in image.items():
            if j > N:
                raise CounitError("an image of F leaves the truncation in y")
            right = right + Poly1.monomial(i, c * eps[j])
        if right != Poly1.monomial(n):
            raise CounitError(f"right counit law fails at x^{n}")

    if p is not None:
        for k, pk in enumerate(p):
            value = sum((c * eps[i] for i, c in enumerate(pk.coeffs)), Fraction(0))
            if value != (1 if k == 0 else 0):
                raise InternalConsistencyError(f"counit of p_{k} is {value}, expected delta_k0")
    logger.debug(f"counit solved on {N + 1} monomials")
    return eps


def bialgebra_detect(F: BivarOp) -> Optional[Fraction]:
    """c when F is the algebra map E^{y-c}, else None."""
    N = F.trunc
    for total in range(N + 1):
        for i in range(total + 1):
            if F.images[total] != F.images[i] * F.images[total - i]:
                return None
    if N < 1:
        return None
    r = F.images[1]
    c = -r.coefficient(0, 0)
    if r != Poly2.x() + Poly2.y() - c:
        raise InternalConsistencyError(f"multiplicative F sends x to {r}, not x + y - c")
    if F != shifted_comultiplication(c, N):
        raise InternalConsistencyError("multiplicative F is not the shift E^{y-c}")
    return c


ANTIPODE_FORMS = ('corrected', 'printed')


def antipode_op(c: Scalar, trunc: int, form: str = 'corrected') -> EndoOp:
    """S p(x) = p(2c - x) (corrected) or p(-2c - x) (printed)."""
    c = Fraction(c)
    if form not in ANTIPODE_FORMS:
        raise ValueError(f"antipode form must be one of {ANTIPODE_FORMS}")
    image = Poly1([2 * c if form == 'corrected' else -2 * c, -1])
    return op_from_images([image ** n for n in range(trunc + 1)])


def antipode_check(c: Scalar, trunc: int, form: str = 'corrected') -> VerifyReport:
    """m (S (x) I) Delta == unit eps == m (I (x) S) Delta for Delta = E^{y-c}."""
    c = Fraction(c)
    S = antipode_op(c, trunc, form)
    delta = shifted_comultiplication(c, trunc)
    report = VerifyReport((0, trunc))
    for n, image in enumerate(delta.images):
        expected = Poly1.constant(c ** n)
        left = apply_x(S, image).y_equals_x()
        right = transport_apply_y(S, image).y_equals_x()
        if left != expected:
            report.add(n, left, expected, f"m(S x I)Delta differs from the counit ({form} antipode)")
        if right != expected:
            report.add(n, right, expected, f"m(I x S)Delta differs from the counit ({form} antipode)")
    return report
