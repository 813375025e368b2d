#!/usr/bin/env python3
"""
Sheffer Core
============
Divided-power, binomial and Sheffer sequences, the Sheffer theorem in both
directions, and the generalized construction that turns any graded
polynomial sequence into its comultiplication.

Pipeline for a sequence p_0..p_N (deg p_n = n):
  p  --q_from_sequence-->   Q        (Q p_n = p_{n-1})
  Q  --basic_from_q-->      q_n      (Q q_n = q_{n-1}, q_n(0) = delta_n0)
  p, q --sheffer_operator--> P       (P q_n = p_n)
  Q, q --taylor_delsarte--> G^(y)    (sum q_k(y) Q^k)
  P, G ----------------->   F^(y)    (P applied to the y-variable of G)

Every check returns a VerifyReport; nothing is compared with a tolerance.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Any, Dict, List, Optional, Sequence, Tuple

from exactalg import Poly1, Poly2, parse_rational
from operators import (
    BivarOp, EndoOp, compose_endo_bivar, first_noncommuting_degree,
    is_shift_invariant_bivar, is_shift_invariant_endo, op_compose,
    op_from_D_series, op_from_images, op_invert, shift_bivar,
)
from umbral_errors import (
    DegreeLoweringError, InternalConsistencyError, NotInvertibleError,
    PreconditionError, SequenceDegreeError, TruncationMismatchError,
)

logger = logging.getLogger(__name__)


# =============================================================================
# DATA TYPES
# =============================================================================

class PolySeq:
    """Graded polynomial sequence p_0..p_N with deg p_n = n."""

    __slots__ = ('polys',)

    def __init__(self, polys: Sequence[Poly1]):
        polys = tuple(polys)
        if not polys:
            raise ValueError("a sequence needs at least p_0")
        for n, p in enumerate(polys):
            if p.degree != n:
                raise SequenceDegreeError(n, p.degree)
        self.polys: Tuple[Poly1, ...] = polys

    @property
    def trunc(self) -> int:
        return len(self.polys) - 1

    def __getitem__(self, n: int) -> Poly1:
        return self.polys[n]

    def __iter__(self):
        return iter(self.polys)

    def __len__(self) -> int:
        return len(self.polys)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolySeq):
            return NotImplemented
        return self.polys == other.polys

    def __hash__(self) -> int:
        return hash(self.polys)

    def __repr__(self) -> str:
        return f"PolySeq(trunc={self.trunc})"

    def truncate(self, n: int) -> 'PolySeq':
        return PolySeq(self.polys[:n + 1])

    def to_json(self) -> Dict:
        return {"trunc": self.trunc, "polys": [p.to_json() for p in self.polys]}

    @classmethod
    def from_json(cls, data: Dict) -> 'PolySeq':
        polys = [Poly1.from_json(p) for p in data["polys"]]
        if "trunc" in data and int(data["trunc"]) != len(polys) - 1:
            raise TruncationMismatchError(
                f"trunc {data['trunc']} does not match {len(polys)} polynomials")
        return cls(polys)


@dataclass
class Violation:
    degree: int
    lhs: Any
    rhs: Any
    note: str = ""

    def to_json(self) -> Dict:
        return {"degree": self.degree, "lhs": _to_json(self.lhs),
                "rhs": _to_json(self.rhs), "note": self.note}


def _to_json(value):
    if value is None:
        return None
    if hasattr(value, 'to_json'):
        return value.to_json()
    return str(value)


@dataclass
class VerifyReport:
    """Outcome of one exact identity check over a range of degrees."""
    checked_degrees: Tuple[int, int] = (0, -1)
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, degree: int, lhs, rhs, note: str = "") -> None:
        logger.warning(f"violation at degree {degree}: {note or 'lhs != rhs'}")
        self.violations.append(Violation(degree, lhs, rhs, note))

    def combine(self, other: 'VerifyReport') -> 'VerifyReport':
        lo = min(self.checked_degrees[0], other.checked_degrees[0])
        hi = max(self.checked_degrees[1], other.checked_degrees[1])
        return VerifyReport((lo, hi), self.violations + other.violations)

    @property
    def first_violation(self) -> Optional[Violation]:
        return self.violations[0] if self.violations else None

    def to_json(self) -> Dict:
        return {
            "ok": self.ok,
            "checked_degrees": list(self.checked_degrees),
            "violations": [v.to_json() for v in self.violations],
        }


@dataclass(frozen=True)
class ShefferData:
    Q: EndoOp
    basic: PolySeq
    P: EndoOp
    G: BivarOp
    F: BivarOp

    def to_json(self) -> Dict:
        return {
            "Q": self.Q.to_json(),
            "basic": self.basic.to_json(),
            "P": self.P.to_json(),
            "G": self.G.to_json(),
            "F": self.F.to_json(),
        }


# =============================================================================
# SEQUENCE <-> OPERATOR
# =============================================================================

def _basis_matrix(p: PolySeq) -> EndoOp:
    """x^n |-> p_n; invertible because deg p_n = n."""
    return op_from_images(p.polys)


def q_from_sequence(p: PolySeq) -> EndoOp:
    """The operator with Q p_n = p_{n-1} and Q p_0 = 0."""
    lowered = op_from_images([Poly1()] + list(p.polys[:-1]))
    return op_compose(lowered, op_invert(_basis_matrix(p)))


def basic_from_q(Q: EndoOp) -> PolySeq:
    """The unique q_n with Q q_n = q_{n-1} and q_n(0) = delta_n0."""
    if not Q.column(0).is_zero():
        raise DegreeLoweringError(0, "operator does not annihilate constants")
    for n in range(1, Q.trunc + 1):
        if Q.column(n).degree != n - 1:
            raise DegreeLoweringError(n)
    m = Q.matrix
    basic = [Poly1.constant(1)]
    for n in range(1, Q.trunc + 1):
        target = basic[-1]
        coeffs = [Fraction(0)] * (n + 1)
        # rows n-1 .. 0 of Q restricted to x^1..x^n are upper triangular
        for r in range(n - 1, -1, -1):
            acc = target[r]
            for k in range(r + 2, n + 1):
                acc -= m[r, k] * coeffs[k]
            coeffs[r + 1] = acc / m[r, r + 1]
        basic.append(Poly1(coeffs))
    logger.debug(f"basic sequence solved to degree {Q.trunc}")
    return PolySeq(basic)


def sheffer_operator(p: PolySeq, basic: PolySeq) -> EndoOp:
    """P with P q_n = p_n."""
    if p.trunc != basic.trunc:
        raise TruncationMismatchError(f"sequences of trunc {p.trunc} and {basic.trunc}")
    return op_compose(_basis_matrix(p), op_invert(_basis_matrix(basic)))


def taylor_delsarte(Q: EndoOp, basic: PolySeq) -> BivarOp:
    """G^(y) x^n = sum_{k<=n} q_k(y) Q^k x^n."""
    images = []
    for n in range(Q.trunc + 1):
        image = Poly2()
        term = Poly1.monomial(n)
        for k in range(n + 1):
            if term.is_zero():
                break
            image = image + Poly2.from_y(basic[k]) * Poly2.from_x(term)
            term = Q.apply(term)
        images.append(image)
    return BivarOp(images)


def build_F(P: EndoOp) -> BivarOp:
    """P_y o E^y."""
    return compose_endo_bivar(P, shift_bivar(P.trunc))


def recover_P_from_F(F: BivarOp) -> EndoOp:
    """eps_y o F: set y := 0 in every image."""
    return op_from_images([img.at_y_zero() for img in F.images])


def bivar_from_basis_images(p: PolySeq, images: Sequence[Poly2]) -> BivarOp:
    """The linear map with p_n |-> images[n]."""
    if len(images) != len(p):
        raise TruncationMismatchError("one image per basis polynomial is required")
    inverse = op_invert(_basis_matrix(p)).matrix
    result = []
    for n in range(p.trunc + 1):
        image = Poly2()
        for k in range(n + 1):
            if inverse[k, n]:
                image = image + images[k] * inverse[k, n]
        result.append(image)
    return BivarOp(result)


def normalize_comultiplication(F: BivarOp) -> BivarOp:
    """P_y^{-1} o F with P = eps_y o F, so that eps_y o result = I."""
    P = recover_P_from_F(F)
    return compose_endo_bivar(op_invert(P), F)


def generalized_sheffer(p: PolySeq) -> ShefferData:
    """Run the whole construction for one sequence."""
    Q = q_from_sequence(p)
    basic = basic_from_q(Q)
    P = sheffer_operator(p, basic)
    G = taylor_delsarte(Q, basic)
    F = compose_endo_bivar(P, G)

    witness = first_noncommuting_degree(P, Q, P.trunc)
    if witness is not None:
        raise InternalConsistencyError(f"P and Q fail to commute at x^{witness}")
    try:
        op_invert(P)
    except NotInvertibleError as e:
        raise InternalConsistencyError(f"Sheffer operator is not invertible: {e}") from e
    logger.debug(f"generalized Sheffer construction complete at trunc {p.trunc}")
    return ShefferData(Q=Q, basic=basic, P=P, G=G, F=F)


# =============================================================================
# VERIFIERS
# =============================================================================

def convolution_rhs(p: Sequence[Poly1], n: int, weights: Optional[Sequence[int]] = None) -> Poly2:
    """sum_k w_k p_k(x) p_{n-k}(y)."""
    out = Poly2()
    for k in range(n + 1):
        term = Poly2.from_x(p[k]) * Poly2.from_y(p[n - k])
        out = out + (term * weights[k] if weights is not None else term)
    return out


def verify_convolution(F: BivarOp, p: PolySeq) -> VerifyReport:
    """F p_n = sum_k p_k(x) p_{n-k}(y) for every n <= N."""
    if F.trunc != p.trunc:
        raise TruncationMismatchError(f"operator trunc {F.trunc} vs sequence trunc {p.trunc}")
    report = VerifyReport((0, p.trunc))
    for n in range(p.trunc + 1):
        lhs = F.apply(p[n])
        rhs = convolution_rhs(p, n)
        if lhs != rhs:
            report.add(n, lhs, rhs, "convolution identity fails")
    return report


def verify_divided_powers(p: PolySeq) -> VerifyReport:
    return verify_convolution(shift_bivar(p.trunc), p)


def divide_by_factorials(q: PolySeq) -> PolySeq:
    return PolySeq([qn.scale(Fraction(1, factorial(n))) for n, qn in enumerate(q)])


def verify_binomial(q: PolySeq) -> VerifyReport:
    """E^y q_n = sum_k C(n,k) q_k(x) q_{n-k}(y), cross-checked against q_n / n!."""
    shift = shift_bivar(q.trunc)
    report = VerifyReport((0, q.trunc))
    for n in range(q.trunc + 1):
        lhs = shift.apply(q[n])
        rhs = convolution_rhs(q, n, [comb(n, k) for k in range(n + 1)])
        if lhs != rhs:
            report.add(n, lhs, rhs, "binomial identity fails")
    divided = verify_divided_powers(divide_by_factorials(q))
    if divided.ok != report.ok:
        raise InternalConsistencyError("binomial and divided-power checks disagree")
    return report


def verify_sheffer_pair(s: PolySeq, p: PolySeq) -> VerifyReport:
    """E^y s_n = sum_k p_{n-k}(y) s_k(x), given divided powers p."""
    precondition = verify_divided_powers(p)
    if not precondition.ok:
        raise PreconditionError("reference sequence is not of divided-power type", precondition)
    if s.trunc != p.trunc:
        raise TruncationMismatchError(f"sequences of trunc {s.trunc} and {p.trunc}")
    shift = shift_bivar(s.trunc)
    report = VerifyReport((0, s.trunc))
    for n in range(s.trunc + 1):
        lhs = shift.apply(s[n])
        rhs = Poly2()
        for k in range(n + 1):
            rhs = rhs + Poly2.from_x(s[k]) * Poly2.from_y(p[n - k])
        if lhs != rhs:
            report.add(n, lhs, rhs, "Sheffer identity fails")
    return report


def sheffer_theorem_check(F: BivarOp, p: PolySeq) -> VerifyReport:
    """Given a shift-invariant F satisfying the convolution identity on p,
    verify P = eps_y F is invertible and shift-invariant, P^{-1} p is of
    divided-power type, and F = P_y E^y."""
    convolution = verify_convolution(F, p)
    if not convolution.ok:
        raise PreconditionError("F does not satisfy the convolution identity on p", convolution)
    if not is_shift_invariant_bivar(F):
        raise PreconditionError("F is not shift-invariant")

    report = VerifyReport((0, p.trunc))
    P = recover_P_from_F(F)
    try:
        P_inv = op_invert(P)
    except NotInvertibleError as e:
        report.add(-1, P, None, f"recovered P is not invertible: {e}")
        return report
    if not is_shift_invariant_endo(P):
        report.add(-1, P, None, "recovered P is not shift-invariant")

    basic = PolySeq([P_inv.apply(pn) for pn in p])
    for v in verify_divided_powers(basic).violations:
        report.add(v.degree, v.lhs, v.rhs, "P^-1 p is not of divided-power type")

    rebuilt = build_F(P)
    for n, (got, want) in enumerate(zip(F.images, rebuilt.images)):
        if got != want:
            report.add(n, got, want, "F differs from P_y E^y")
    return report


# =============================================================================
# SEEDED GENERATORS
# =============================================================================

_DENOMINATORS = (1, 2, 3, 4)


def _random_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    while True:
        value = Fraction(rng.randint(-9, 9), rng.choice(_DENOMINATORS))
        if value or not nonzero:
            return value


def random_poly_seq(seed: int, trunc: int) -> PolySeq:
    """Deterministic random sequence with deg p_n = n."""
    rng = random.Random(seed)
    polys = []
    for n in range(trunc + 1):
        coeffs = [_random_rational(rng) for _ in range(n)]
        coeffs.append(_random_rational(rng, nonzero=True))
        polys.append(Poly1(coeffs))
    return PolySeq(polys)


def random_shift_invariant(seed: int, trunc: int) -> EndoOp:
    """Random invertible D-series sum c_k D^k with c_0 != 0."""
    rng = random.Random(seed)
    coeffs = [_random_rational(rng, nonzero=True)]
    coeffs += [_random_rational(rng) for _ in range(trunc)]
    return op_from_D_series(coeffs)


def parse_poly_seq(data: Dict) -> PolySeq:
    """PolySeq from a loaded JSON/YAML document; entries may be ints or 'p/q'."""
    polys = data.get("polys") if isinstance(data, dict) else data
    if polys is None:
        raise ValueError("document has no 'polys' list")
    if not isinstance(polys, list) or not all(isinstance(entry, list) for entry in polys):
        raise ValueError("'polys' must be a list of coefficient lists")
    return PolySeq([Poly1(parse_rational(c) for c in entry) for entry in polys])
