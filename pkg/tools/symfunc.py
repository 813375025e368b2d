#!/usr/bin/env python3
"""
Symmetric Functions
===================
Partitions, monomial symmetric functions and the symmetric Sheffer theory.

Features:
✅ Partitions: conjugate, reverse-lex order, enumeration by weight
✅ Exact monomial-basis algebra (products by exponent-vector merging)
✅ Elementary / complete bases, e_lambda, h_lambda
✅ Symmetric shift E^y (prepend a variable) and the derivatives D_lambda
✅ Full sequences, the vector-indexed convolution identity, F^y recovery
✅ Shift-invariance decision and the classical antipode identity

Everything lives in monomial coordinates up to total degree N; terms of
higher degree are dropped. In Lambda[y] the y-exponent counts toward the
degree.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
from sympy import Matrix, Rational
from sympy.utilities.iterables import multiset_permutations

from exactalg import Poly1, Scalar, format_rational
from umbral_core import VerifyReport
from umbral_errors import InternalConsistencyError, PreconditionError

logger = logging.getLogger(__name__)


# =============================================================================
# PARTITIONS
# =============================================================================

@dataclass(frozen=True, order=False)
class Partition:
    """Weakly decreasing tuple of positive parts; () is the empty partition."""
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, 'parts', parts)

    @classmethod
    def of(cls, values: Iterable[int]) -> 'Partition':
        """Sort an exponent vector into a partition, dropping zeros."""
        return cls(tuple(sorted((v for v in values if v), reverse=True)))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"

    def without(self, other: 'Partition') -> Optional['Partition']:
        """Multiset difference self \\ other, or None if other is not contained."""
        have = Counter(self.parts)
        have.subtract(other.parts)
        if any(v < 0 for v in have.values()):
            return None
        return Partition.of(have.elements())

    def distinct_parts(self) -> Tuple[int, ...]:
        return tuple(sorted(set(self.parts), reverse=True))

    def to_json(self) -> List[int]:
        return list(self.parts)


EMPTY = Partition()


def conjugate(lam: Partition) -> Partition:
    """lambda'_i = #{j : lambda_j >= i}."""
    if not lam.parts:
        return EMPTY
    return Partition(tuple(sum(1 for p in lam if p >= i) for i in range(1, lam[0] + 1)))


def rlex_compare(alpha: Partition, beta: Partition) -> int:
    """-1 if alpha << beta, 0 if equal, 1 otherwise; decided at the largest differing index."""
    size = max(len(alpha), len(beta))
    a = alpha.parts + (0,) * (size - len(alpha))
    b = beta.parts + (0,) * (size - len(beta))
    for i in range(size - 1, -1, -1):
        if a[i] != b[i]:
            return -1 if a[i] < b[i] else 1
    return 0


def rlex_key(lam: Partition) -> Tuple[int, ...]:
    """Sort key realizing << among partitions of the same weight."""
    size = lam.weight
    return tuple(reversed(lam.parts + (0,) * (size - len(lam))))


def _generate(n: int, largest: int):
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _generate(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def partitions_of(n: int) -> Tuple[Partition, ...]:
    """All partitions of n, ascending in <<."""
    return tuple(sorted((Partition(p) for p in _generate(n, n)), key=rlex_key))


def all_partitions(trunc: int) -> List[Partition]:
    """Partitions of weight 0..N, by weight then <<."""
    return [lam for n in range(trunc + 1) for lam in partitions_of(n)]


# =============================================================================
# MONOMIAL ALGEBRA
# =============================================================================

@lru_cache(maxsize=None)
def _monomial_product(lam: Partition, mu: Partition) -> Tuple[Tuple[Partition, int], ...]:
    """m_lam * m_mu = sum c_rho m_rho with integer c_rho."""
    total = lam.weight + mu.weight
    shortest, longest = max(len(lam), len(mu)), len(lam) + len(mu)
    out = []
    for rho in partitions_of(total):
        size = len(rho)
        if not shortest <= size <= longest:
            continue
        count = 0
        padded = list(lam.parts) + [0] * (size - len(lam))
        for beta in multiset_permutations(padded):
            rest = [r - b for r, b in zip(rho.parts, beta)]
            if min(rest, default=0) < 0:
                continue
            if Partition.of(rest) == mu:
                count += 1
        if count:
            out.append((rho, count))
    return tuple(out)


class SymF:
    """Symmetric function in monomial coordinates, truncated at degree trunc."""

    __slots__ = ('trunc', 'coeffs')

    def __init__(self, trunc: int, coeffs: Dict[Partition, Scalar] = None):
        self.trunc = trunc
        self.coeffs: Dict[Partition, Fraction] = {
            lam: Fraction(c) for lam, c in (coeffs or {}).items()
            if c != 0 and lam.weight <= trunc
        }

    @classmethod
    def monomial(cls, lam: Partition, trunc: int) -> 'SymF':
        return cls(trunc, {lam: 1})

    @classmethod
    def one(cls, trunc: int) -> 'SymF':
        return cls(trunc, {EMPTY: 1})

    def coefficient(self, lam: Partition) -> Fraction:
        return self.coeffs.get(lam, Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def weights(self) -> set:
        return {lam.weight for lam in self.coeffs}

    def __add__(self, other: 'SymF') -> 'SymF':
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            out[lam] = out.get(lam, Fraction(0)) + c
        return SymF(self.trunc, out)

    def __neg__(self) -> 'SymF':
        return self.scale(-1)

    def __sub__(self, other: 'SymF') -> 'SymF':
        return self + (-other)

    def scale(self, c: Scalar) -> 'SymF':
        return SymF(self.trunc, {lam: v * c for lam, v in self.coeffs.items()})

    def __mul__(self, other) -> 'SymF':
        if isinstance(other, SymF):
            return sym_mul(self, other)
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymF):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self) -> str:
        return f"SymF({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        ordered = sorted(self.coeffs.items(), key=lambda kv: (kv[0].weight, rlex_key(kv[0])))
        return " + ".join(f"{format_rational(c)}*m{lam}" for lam, c in ordered)

    def to_json(self) -> List[Dict]:
        ordered = sorted(self.coeffs.items(), key=lambda kv: (kv[0].weight, rlex_key(kv[0])))
        return [{"parts": lam.to_json(), "c": format_rational(c)} for lam, c in ordered]


def sym_mul(f: SymF, g: SymF) -> SymF:
    """Exact product, truncated at the smaller trunc."""
    trunc = min(f.trunc, g.trunc)
    out: Dict[Partition, Fraction] = {}
    for lam, a in f.coeffs.items():
        for mu, b in g.coeffs.items():
            if lam.weight + mu.weight > trunc:
                continue
            for rho, count in _monomial_product(lam, mu):
                out[rho] = out.get(rho, Fraction(0)) + a * b * count
    return SymF(trunc, out)


def elementary(n: int, trunc: int) -> SymF:
    """e_n = m_(1^n)."""
    return SymF.monomial(Partition((1,) * n), trunc)


def complete(n: int, trunc: int) -> SymF:
    """h_n = sum of m_lambda over partitions of n."""
    return SymF(trunc, {lam: 1 for lam in partitions_of(n)})


def _product_over_parts(lam: Partition, trunc: int, factor) -> SymF:
    out = SymF.one(trunc)
    for part in lam:
        out = sym_mul(out, factor(part, trunc))
    return out


def e_lambda(lam: Partition, trunc: int) -> SymF:
    return _product_over_parts(lam, trunc, elementary)


def h_lambda(lam: Partition, trunc: int) -> SymF:
    return _product_over_parts(lam, trunc, complete)


def augmentation(f: SymF) -> Fraction:
    """f evaluated at all variables zero."""
    return f.coefficient(EMPTY)


def eval_single(f: SymF) -> Poly1:
    """f(y, 0, 0, ...) as a polynomial in y."""
    out = Poly1()
    for lam, c in f.coeffs.items():
        if len(lam) <= 1:
            out = out + Poly1.monomial(lam.weight, c)
    return out


# =============================================================================
# Lambda[y]
# =============================================================================

class SymFY:
    """Element of Lambda[y]: map (y-exponent, partition) -> coefficient."""

    __slots__ = ('trunc', 'coeffs')

    def __init__(self, trunc: int, coeffs: Dict[Tuple[int, Partition], Scalar] = None):
        self.trunc = trunc
        self.coeffs: Dict[Tuple[int, Partition], Fraction] = {
            (k, lam): Fraction(c) for (k, lam), c in (coeffs or {}).items()
            if c != 0 and k + lam.weight <= trunc
        }

    @classmethod
    def lift(cls, f: SymF, y_power: int = 0, c: Scalar = 1) -> 'SymFY':
        """c y^k f."""
        return cls(f.trunc, {(y_power, lam): v * c for lam, v in f.coeffs.items()})

    @classmethod
    def from_product(cls, f: SymF, g: Poly1) -> 'SymFY':
        """f(x) g(y)."""
        out: Dict[Tuple[int, Partition], Fraction] = {}
        for k, gk in enumerate(g.coeffs):
            if gk:
                for lam, c in f.coeffs.items():
                    out[(k, lam)] = out.get((k, lam), Fraction(0)) + c * gk
        return cls(f.trunc, out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: 'SymFY') -> 'SymFY':
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, Fraction(0)) + c
        return SymFY(min(self.trunc, other.trunc), out)

    def __sub__(self, other: 'SymFY') -> 'SymFY':
        return self + other.scale(-1)

    def scale(self, c: Scalar) -> 'SymFY':
        return SymFY(self.trunc, {key: v * c for key, v in self.coeffs.items()})

    def __mul__(self, other: 'SymFY') -> 'SymFY':
        trunc = min(self.trunc, other.trunc)
        out: Dict[Tuple[int, Partition], Fraction] = {}
        for (k1, lam), a in self.coeffs.items():
            for (k2, mu), b in other.coeffs.items():
                if k1 + k2 + lam.weight + mu.weight > trunc:
                    continue
                for rho, count in _monomial_product(lam, mu):
                    key = (k1 + k2, rho)
                    out[key] = out.get(key, Fraction(0)) + a * b * count
        return SymFY(trunc, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymFY):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self) -> str:
        return f"SymFY({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        ordered = sorted(self.coeffs.items(), key=lambda kv: (kv[0][0], kv[0][1].weight, rlex_key(kv[0][1])))
        terms = []
        for (k, lam), c in ordered:
            y = "" if k == 0 else ("*y" if k == 1 else f"*y^{k}")
            terms.append(f"{format_rational(c)}{y}*m{lam}")
        return " + ".join(terms)

    def to_json(self) -> List[Dict]:
        ordered = sorted(self.coeffs.items(), key=lambda kv: (kv[0][0], kv[0][1].weight, rlex_key(kv[0][1])))
        return [{"y": k, "parts": lam.to_json(), "c": format_rational(c)} for (k, lam), c in ordered]


def _shift_terms(lam: Partition) -> List[Tuple[int, Partition]]:
    """m_lam(y, x1, x2, ...) = sum of y^r m_{lam minus one part r}."""
    terms = [(0, lam)]
    for r in lam.distinct_parts():
        terms.append((r, lam.without(Partition((r,)))))
    return terms


def sym_shift(f: SymF) -> SymFY:
    """E^y f = f(y, x1, x2, ...)."""
    out: Dict[Tuple[int, Partition], Fraction] = {}
    for lam, c in f.coeffs.items():
        for key in _shift_terms(lam):
            out[key] = out.get(key, Fraction(0)) + c
    return SymFY(f.trunc, out)


# =============================================================================
# OPERATORS ON Lambda
# =============================================================================

class SymOp:
    """Linear operator on Lambda up to degree trunc, by its images of m_mu."""

    __slots__ = ('trunc', 'images')

    def __init__(self, trunc: int, images: Dict[Partition, SymF]):
        self.trunc = trunc
        self.images = {mu: images.get(mu, SymF(trunc)) for mu in all_partitions(trunc)}

    def apply(self, f: SymF) -> SymF:
        out = SymF(self.trunc)
        for mu, c in f.coeffs.items():
            out = out + self.images[mu].scale(c)
        return out

    __call__ = apply

    def apply_y(self, f: SymFY) -> SymFY:
        """Act on the Lambda part, coefficientwise in y."""
        out = SymFY(self.trunc)
        for (k, mu), c in f.coeffs.items():
            out = out + SymFY.lift(self.images[mu], k, c)
        return out

    def block(self, w_in: int, w_out: int) -> np.ndarray:
        """Matrix from weight w_in to weight w_out, rows and columns in << order."""
        rows, cols = partitions_of(w_out), partitions_of(w_in)
        out = np.full((len(rows), len(cols)), Fraction(0), dtype=object)
        for j, mu in enumerate(cols):
            image = self.images[mu]
            for i, lam in enumerate(rows):
                out[i, j] = image.coefficient(lam)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymOp):
            return NotImplemented
        return self.trunc == other.trunc and self.images == other.images

    def __hash__(self) -> int:
        return hash((self.trunc, frozenset(self.images.items())))

    def __repr__(self) -> str:
        return f"SymOp(trunc={self.trunc})"


def sym_identity(trunc: int) -> SymOp:
    return SymOp(trunc, {mu: SymF.monomial(mu, trunc) for mu in all_partitions(trunc)})


def sym_compose(a: SymOp, b: SymOp) -> SymOp:
    """a o b."""
    return SymOp(a.trunc, {mu: a.apply(img) for mu, img in b.images.items()})


def sym_linear_combination(terms: Iterable[Tuple[Scalar, SymOp]], trunc: int) -> SymOp:
    images = {mu: SymF(trunc) for mu in all_partitions(trunc)}
    for c, op in terms:
        for mu, img in op.images.items():
            images[mu] = images[mu] + img.scale(c)
    return SymOp(trunc, images)


def d_lambda(lam: Partition, trunc: int) -> SymOp:
    """D_lam m_mu = m_{mu minus the parts of lam}, zero when they are not contained."""
    images = {}
    for mu in all_partitions(trunc):
        rest = mu.without(lam)
        images[mu] = SymF.monomial(rest, trunc) if rest is not None else SymF(trunc)
    return SymOp(trunc, images)


def sym_shift_op(a: Scalar, trunc: int) -> SymOp:
    """E^a with a fixed rational a."""
    a = Fraction(a)
    images = {}
    for mu in all_partitions(trunc):
        images[mu] = SymF(trunc, {})
        for r, rest in _shift_terms(mu):
            images[mu] = images[mu] + SymF.monomial(rest, trunc).scale(a ** r)
    return SymOp(trunc, images)


def is_shift_invariant_sym(theta: SymOp) -> Optional[Partition]:
    """None when theta E^y = E^y theta formally, else the first witness m_mu."""
    for mu in all_partitions(theta.trunc):
        shifted_first = theta.apply_y(sym_shift(SymF.monomial(mu, theta.trunc)))
        shifted_last = sym_shift(theta.images[mu])
        if shifted_first != shifted_last:
            return mu
    return None


def shift_expansion_check(trunc: int) -> VerifyReport:
    """E^a = sum_n a^n D_(n), with a formal (carried as y)."""
    report = VerifyReport((0, trunc))
    derivatives = [d_lambda(Partition((n,)) if n else EMPTY, trunc) for n in range(trunc + 1)]
    for mu in all_partitions(trunc):
        m = SymF.monomial(mu, trunc)
        lhs = sym_shift(m)
        rhs = SymFY(trunc)
        for n, dn in enumerate(derivatives):
            rhs = rhs + SymFY.lift(dn.apply(m), n)
        if lhs != rhs:
            report.add(mu.weight, lhs, rhs, f"shift expansion fails on m{mu}")
    return report


def theta_expansion(theta: SymOp) -> Dict[Partition, Fraction]:
    """c_lam = eps(theta m_lam), with theta = sum c_lam D_lam checked on every m_mu."""
    witness = is_shift_invariant_sym(theta)
    if witness is not None:
        raise PreconditionError(f"operator is not shift-invariant (witness m{witness})")
    trunc = theta.trunc
    coeffs = {lam: augmentation(theta.images[lam]) for lam in all_partitions(trunc)}
    coeffs = {lam: c for lam, c in coeffs.items() if c}
    rebuilt = sym_linear_combination(
        ((c, d_lambda(lam, trunc)) for lam, c in coeffs.items()), trunc)
    for mu in all_partitions(trunc):
        if rebuilt.images[mu] != theta.images[mu]:
            raise InternalConsistencyError(f"D_lambda expansion does not reproduce the operator on m{mu}")
    return coeffs


# =============================================================================
# FULL SEQUENCES
# =============================================================================

class FullSeq:
    """Partition-indexed family p_lam, |lam| <= trunc."""

    __slots__ = ('trunc', 'entries')

    def __init__(self, trunc: int, entries: Dict[Partition, SymF]):
        missing = [lam for lam in all_partitions(trunc) if lam not in entries]
        if missing:
            raise ValueError(f"full sequence is missing p{missing[0]}")
        self.trunc = trunc
        self.entries = dict(entries)

    def __getitem__(self, lam: Partition) -> SymF:
        return self.entries[lam]

    def scale(self, c: Scalar) -> 'FullSeq':
        return FullSeq(self.trunc, {lam: f.scale(c) for lam, f in self.entries.items()})

    def to_json(self) -> Dict:
        return {"trunc": self.trunc,
                "entries": [{"parts": lam.to_json(), "p": self.entries[lam].to_json()}
                            for lam in all_partitions(self.trunc)]}


SEQUENCE_KINDS = ('e', 'h', 'm-conjugate')


def full_sequence(kind: str, trunc: int, scale: Scalar = 1) -> FullSeq:
    """(c e_lam), (c h_lam) or (c m_lam')."""
    if kind == 'e':
        build = lambda lam: e_lambda(lam, trunc)
    elif kind == 'h':
        build = lambda lam: h_lambda(lam, trunc)
    elif kind == 'm-conjugate':
        build = lambda lam: SymF.monomial(conjugate(lam), trunc)
    else:
        raise ValueError(f"unknown sequence kind '{kind}' (choose from {', '.join(SEQUENCE_KINDS)})")
    return FullSeq(trunc, {lam: build(lam).scale(scale) for lam in all_partitions(trunc)})


def is_full_sequence(s: FullSeq) -> VerifyReport:
    """Homogeneity, support above lam' in <<, nonzero coefficient on m_lam'."""
    report = VerifyReport((0, s.trunc))
    for lam in all_partitions(s.trunc):
        p = s[lam]
        lead = conjugate(lam)
        if p.weights() - {lam.weight}:
            report.add(lam.weight, p, None, f"p{lam} is not homogeneous of degree {lam.weight}")
        below = [mu for mu in p.coeffs if mu.weight == lam.weight and rlex_compare(mu, lead) < 0]
        if below:
            report.add(lam.weight, p, SymF.monomial(lead, s.trunc),
                       f"p{lam} contains m{below[0]} preceding m{lead}")
        if p.coefficient(lead) == 0:
            report.add(lam.weight, p, SymF.monomial(lead, s.trunc),
                       f"p{lam} has zero coefficient on m{lead}")
    return report


def _alpha_box(lam: Partition):
    return product(*(range(part + 1) for part in lam))


def convolution_image(s: FullSeq, lam: Partition) -> SymFY:
    """sum over 0 <= alpha <= lam of p_alpha(x) p_{lam-alpha}(y, 0, 0, ...)."""
    out = SymFY(s.trunc)
    for alpha in _alpha_box(lam):
        rest = [p - a for p, a in zip(lam.parts, alpha)]
        out = out + SymFY.from_product(s[Partition.of(alpha)], eval_single(s[Partition.of(rest)]))
    return out


def verify_full_divided(s: FullSeq) -> VerifyReport:
    """E^y p_lam equals the vector-indexed convolution for every lam."""
    precondition = is_full_sequence(s)
    if not precondition.ok:
        raise PreconditionError("not a full sequence", precondition)
    report = VerifyReport((0, s.trunc))
    for lam in all_partitions(s.trunc):
        lhs = sym_shift(s[lam])
        rhs = convolution_image(s, lam)
        if lhs != rhs:
            report.add(lam.weight, lhs, rhs, f"convolution fails at p{lam}")
    return report


def derive_sym_F(s: FullSeq) -> Dict[Partition, SymFY]:
    """Images F^y p_lam given by the convolution identity."""
    return {lam: convolution_image(s, lam) for lam in all_partitions(s.trunc)}


def _to_fraction(v) -> Fraction:
    v = Rational(v)
    return Fraction(int(v.p), int(v.q))


def sym_F_on_monomials(s: FullSeq) -> Dict[Partition, SymFY]:
    """F^y m_mu, by inverting the change of basis p -> m degree by degree."""
    images_p = derive_sym_F(s)
    out: Dict[Partition, SymFY] = {}
    for n in range(s.trunc + 1):
        basis = partitions_of(n)
        # column j holds the m-coordinates of p_{basis[j]}
        B = Matrix([[Rational(s[lam].coefficient(mu).numerator, s[lam].coefficient(mu).denominator)
                     for lam in basis] for mu in basis])
        B_inv = B.inv()
        for i, mu in enumerate(basis):
            image = SymFY(s.trunc)
            for j, lam in enumerate(basis):
                c = _to_fraction(B_inv[j, i])
                if c:
                    image = image + images_p[lam].scale(c)
            out[mu] = image
    return out


def _shift_z_after(F_m: Dict[Partition, SymFY], mu: Partition) -> Dict[Tuple[int, int, Partition], Fraction]:
    """E^z F^y m_mu as (y, z, partition) -> coefficient."""
    out: Dict[Tuple[int, int, Partition], Fraction] = {}
    for (k, nu), c in F_m[mu].coeffs.items():
        for r, rest in _shift_terms(nu):
            key = (k, r, rest)
            out[key] = out.get(key, Fraction(0)) + c
    return {k: v for k, v in out.items() if v}


def _shift_z_before(F_m: Dict[Partition, SymFY], mu: Partition) -> Dict[Tuple[int, int, Partition], Fraction]:
    """F^y E^z m_mu as (y, z, partition) -> coefficient."""
    out: Dict[Tuple[int, int, Partition], Fraction] = {}
    for r, rest in _shift_terms(mu):
        for (k, nu), c in F_m[rest].coeffs.items():
            key = (k, r, nu)
            out[key] = out.get(key, Fraction(0)) + c
    return {k: v for k, v in out.items() if v}


@dataclass
class SymShefferFindings:
    shift_invariant: bool
    c: Optional[Fraction] = None
    witness: Optional[Partition] = None

    def to_json(self) -> Dict:
        return {
            "shift_invariant": self.shift_invariant,
            "c": None if self.c is None else format_rational(self.c),
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def sym_sheffer_verify(s: FullSeq) -> SymShefferFindings:
    """Decide whether F^y commutes with E^z; if so return c with F^y = c E^y."""
    precondition = is_full_sequence(s)
    if not precondition.ok:
        raise PreconditionError("not a full sequence", precondition)
    F_m = sym_F_on_monomials(s)
    for mu in all_partitions(s.trunc):
        if _shift_z_before(F_m, mu) != _shift_z_after(F_m, mu):
            logger.debug(f"F^y fails to commute with E^z on m{mu}")
            return SymShefferFindings(shift_invariant=False, witness=mu)
    c = augmentation(s[EMPTY])
    for mu in all_partitions(s.trunc):
        if F_m[mu] != sym_shift(SymF.monomial(mu, s.trunc)).scale(c):
            raise InternalConsistencyError(f"shift-invariant F^y differs from {c} E^y on m{mu}")
    return SymShefferFindings(shift_invariant=True, c=c)


# =============================================================================
# LINEAR SEQUENCES / ANTIPODE
# =============================================================================

def verify_linear_divided(seq: List[SymF]) -> VerifyReport:
    """E^y s_n = sum_k s_k(x) s_{n-k}(y, 0, 0, ...)."""
    trunc = len(seq) - 1
    report = VerifyReport((0, trunc))
    for n in range(trunc + 1):
        lhs = sym_shift(seq[n])
        rhs = SymFY(seq[n].trunc)
        for k in range(n + 1):
            rhs = rhs + SymFY.from_product(seq[k], eval_single(seq[n - k]))
        if lhs != rhs:
            report.add(n, lhs, rhs, "linear divided-power identity fails")
    return report


def sym_antipode_identity(trunc: int) -> VerifyReport:
    """sum_k (-1)^k e_k h_{n-k} = delta_n0."""
    report = VerifyReport((0, trunc))
    for n in range(trunc + 1):
        total = SymF(trunc)
        for k in range(n + 1):
            total = total + sym_mul(elementary(k, trunc), complete(n - k, trunc)).scale((-1) ** k)
        expected = SymF.one(trunc) if n == 0 else SymF(trunc)
        if total != expected:
            report.add(n, total, expected, "sum (-1)^k e_k h_{n-k} is not delta_n0")
    return report
