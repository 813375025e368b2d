#!/usr/bin/env python3
"""
Classic Polynomial Families
===========================
Exact constructors for the named Sheffer families, each paired with its
delta operator Q and, where one is known, its Sheffer operator P.

Features:
✅ Generating-series extraction (hermite, laguerre, bernoulli2)
✅ Closed forms (powers, lower/rising factorials, abel)
✅ Recurrence + homogenization (legendre_derived)
✅ Rescaled Hermite with 1/(n!)^2 norming (hermite_derived)
✅ Named presets from data/family_presets.json

All sequences are divided-power normalized: Q p_n = p_{n-1}.
"""

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Dict, List, Mapping, Tuple

from exactalg import (
    Poly1, Series, definite_unit_integral, parse_rational,
    series_div_unit, series_exp, series_log1p, series_mul, series_pow,
)
from operators import (
    DEFAULT_TRUNCATION, EndoOp, derivative_op, identity_op, op_compose,
    op_from_D_series, op_from_images, op_from_xD, shift_endo,
)
from umbral_core import (
    PolySeq, VerifyReport, build_F, generalized_sheffer, verify_convolution,
)
from umbral_errors import FamilyError, InternalConsistencyError

logger = logging.getLogger(__name__)


# name -> required parameters
FAMILY_PARAMS: Dict[str, Tuple[str, ...]] = {
    'powers': (),
    'lower_factorial': (),
    'rising_factorial': (),
    'abel': ('a',),
    'hermite': ('nu',),
    'laguerre': ('alpha',),
    'bernoulli2': (),
    'legendre_derived': (),
    'hermite_derived': (),
}

FAMILIES_WITH_P = ('powers', 'lower_factorial', 'rising_factorial', 'abel',
                   'hermite', 'laguerre', 'bernoulli2')


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: Mapping[str, Fraction] = field(default_factory=dict)
    trunc: int = DEFAULT_TRUNCATION

    def __post_init__(self):
        if self.name not in FAMILY_PARAMS:
            raise FamilyError(f"unknown family '{self.name}' "
                              f"(choose from {', '.join(FAMILY_PARAMS)})")
        if self.trunc < 0:
            raise FamilyError(f"degree must be >= 0, got {self.trunc}")
        required = set(FAMILY_PARAMS[self.name])
        given = set(self.params)
        if required - given:
            raise FamilyError(f"family '{self.name}' needs parameter(s): "
                              f"{', '.join(sorted(required - given))}")
        if given - required:
            raise FamilyError(f"family '{self.name}' does not take: "
                              f"{', '.join(sorted(given - required))}")
        object.__setattr__(self, 'params',
                           {k: parse_rational(v) for k, v in self.params.items()})

    def param(self, key: str) -> Fraction:
        return self.params[key]

    def to_json(self) -> Dict:
        return {"name": self.name, "trunc": self.trunc,
                "params": {k: str(v) for k, v in self.params.items()}}


def make_spec(name: str, trunc: int = DEFAULT_TRUNCATION, **params) -> FamilySpec:
    """FamilySpec from keyword parameters, ignoring ones left as None."""
    return FamilySpec(name, {k: v for k, v in params.items() if v is not None}, trunc)


# =============================================================================
# SEQUENCES
# =============================================================================

def _divided(polys: List[Poly1]) -> List[Poly1]:
    return [p.scale(Fraction(1, factorial(n))) for n, p in enumerate(polys)]


def _falling(n: int, step: int) -> Poly1:
    """x (x - step) (x - 2 step) ... (n factors)."""
    out = Poly1.constant(1)
    for i in range(n):
        out = out * Poly1([-i * step, 1])
    return out


def _abel(n: int, a: Fraction) -> Poly1:
    if n == 0:
        return Poly1.constant(1)
    return Poly1.x() * Poly1([-n * a, 1]) ** (n - 1)


def _hermite(trunc: int, nu: Fraction) -> List[Poly1]:
    """[t^n] exp(x t - nu t^2 / 2)."""
    exponent = Series(trunc, [0, Poly1.x(), Poly1.constant(-nu / 2)])
    return list(series_exp(exponent).coeffs)


def _laguerre(trunc: int, alpha: Fraction) -> List[Poly1]:
    """[t^n] (1 - t)^(-alpha-1) exp(x t / (t - 1))."""
    one_minus_t = Series(trunc, [1, -1])
    prefactor = series_pow(one_minus_t, -alpha - 1)
    ratio = series_div_unit(Series(trunc, [0, -1]), one_minus_t)
    return list(series_mul(prefactor, series_exp(ratio.scale(Poly1.x()))).coeffs)


def _bernoulli2(trunc: int) -> List[Poly1]:
    """[t^n] t / log(1 + t) * (1 + t)^x."""
    # log(1+t) = t v(t) with v(0) = 1, taken one order higher before dividing by t
    v = series_log1p(Series.t(trunc + 1)).shift_down()
    reciprocal = series_div_unit(Series.one(trunc), v)
    power = series_exp(series_log1p(Series.t(trunc)).scale(Poly1.x()))
    return list(series_mul(reciprocal, power).coeffs)


def legendre_polynomials(trunc: int) -> List[Poly1]:
    """Classical Legendre P_0..P_N from the three-term recurrence."""
    polys = [Poly1.constant(1), Poly1.x()]
    for n in range(1, trunc):
        nxt = (Poly1.x() * polys[n]).scale(2 * n + 1) - polys[n - 1].scale(n)
        polys.append(nxt.scale(Fraction(1, n + 1)))
    return polys[:trunc + 1]


def _legendre_derived(trunc: int) -> List[Poly1]:
    """(x-1)^n P_n((x+1)/(x-1)) / (n!)^2."""
    plus, minus = Poly1([1, 1]), Poly1([-1, 1])
    out = []
    for n, legendre in enumerate(legendre_polynomials(trunc)):
        homog = Poly1()
        for k, c in enumerate(legendre.coeffs):
            if c:
                homog = homog + (plus ** k) * (minus ** (n - k)) * c
        if homog.degree != n:
            raise InternalConsistencyError(f"homogenized Legendre polynomial {n} lost its degree")
        out.append(homog.scale(Fraction(1, factorial(n) ** 2)))
    return out


def _hermite_derived(trunc: int) -> List[Poly1]:
    """H_n(x) / (n!)^2 for the classical Hermite polynomials (e^{2xt - t^2})."""
    exponent = Series(trunc, [0, Poly1([0, 2]), Poly1.constant(-1)])
    coeffs = series_exp(exponent).coeffs
    return [c.scale(Fraction(1, factorial(n))) for n, c in enumerate(coeffs)]


def family_sequence(spec: FamilySpec) -> PolySeq:
    """The family's polynomials p_0..p_N."""
    N = spec.trunc
    name = spec.name
    if name == 'powers':
        polys = _divided([Poly1.monomial(n) for n in range(N + 1)])
    elif name == 'lower_factorial':
        polys = _divided([_falling(n, 1) for n in range(N + 1)])
    elif name == 'rising_factorial':
        polys = _divided([_falling(n, -1) for n in range(N + 1)])
    elif name == 'abel':
        polys = _divided([_abel(n, spec.param('a')) for n in range(N + 1)])
    elif name == 'hermite':
        polys = _hermite(N, spec.param('nu'))
    elif name == 'laguerre':
        polys = _laguerre(N, spec.param('alpha'))
    elif name == 'bernoulli2':
        polys = _bernoulli2(N)
    elif name == 'legendre_derived':
        polys = _legendre_derived(N)
    else:
        polys = _hermite_derived(N)
    logger.debug(f"built {name} to degree {N}")
    return PolySeq(polys)


def binomial_sequence(spec: FamilySpec) -> PolySeq:
    """q_n = n! p_n, the binomial-type form of the family."""
    return PolySeq([p.scale(factorial(n)) for n, p in enumerate(family_sequence(spec))])


# =============================================================================
# OPERATORS
# =============================================================================

def _xD(trunc: int, coeffs: List[Poly1]) -> EndoOp:
    padded = (coeffs + [Poly1()] * (trunc + 1))[:trunc + 1]
    return op_from_xD(padded)


def family_Q(spec: FamilySpec) -> EndoOp:
    """The family's delta operator."""
    N = spec.trunc
    name = spec.name
    if name in ('powers', 'hermite'):
        return derivative_op(N)
    if name in ('lower_factorial', 'bernoulli2'):
        return shift_endo(1, N) - identity_op(N)
    if name == 'rising_factorial':
        return identity_op(N) - shift_endo(-1, N)
    if name == 'abel':
        return op_compose(shift_endo(spec.param('a'), N), derivative_op(N))
    if name == 'laguerre':
        # D / (D - I) = -D - D^2 - D^3 - ...
        return op_from_D_series([0] + [-1] * N)
    if name == 'legendre_derived':
        return _xD(N, [Poly1(), Poly1.constant(1), Poly1.x()])
    return _xD(N, [Poly1(), Poly1.constant(Fraction(1, 2)),
                   Poly1([0, Fraction(1, 2)]), Poly1.constant(Fraction(-1, 4))])


def family_P(spec: FamilySpec) -> EndoOp:
    """The Sheffer operator carrying the basic sequence of Q onto the family."""
    N = spec.trunc
    name = spec.name
    if name in ('powers', 'lower_factorial', 'rising_factorial', 'abel'):
        return identity_op(N)
    if name == 'hermite':
        # exp(-nu D^2 / 2)
        half_nu = -spec.param('nu') / 2
        coeffs = [Fraction(0)] * (N + 1)
        for m in range(N // 2 + 1):
            coeffs[2 * m] = half_nu ** m / factorial(m)
        return op_from_D_series(coeffs)
    if name == 'laguerre':
        # (I - D)^(alpha + 1)
        series = series_pow(Series(N, [1, -1]), spec.param('alpha') + 1)
        return op_from_D_series([c[0] for c in series.coeffs])
    if name == 'bernoulli2':
        return op_from_images([definite_unit_integral(Poly1.monomial(n)) for n in range(N + 1)])
    raise FamilyError(f"family '{name}' has no stated Sheffer operator")


def family_convolution_check(spec: FamilySpec) -> VerifyReport:
    """Convolution identity for the family with F = P_y E^y (or the generalized F)."""
    seq = family_sequence(spec)
    if spec.name in FAMILIES_WITH_P:
        F = build_F(family_P(spec))
    else:
        F = generalized_sheffer(seq).F
    return verify_convolution(F, seq)


# =============================================================================
# PRESETS
# =============================================================================

def load_family_presets() -> Dict[str, Dict]:
    """Load named family presets from the data folder."""
    possible_paths = [
        Path(__file__).parent.parent / 'data' / 'family_presets.json',  # tools/../data/
        Path(__file__).parent / 'data' / 'family_presets.json',          # tools/data/
        Path('data') / 'family_presets.json',                             # ./data/
    ]

    for preset_path in possible_paths:
        if preset_path.exists():
            try:
                with open(preset_path, 'r', encoding='utf-8') as f:
                    return json.load(f).get('presets', {})
            except (json.JSONDecodeError, IOError) as e:
                logger.warning(f"Could not load {preset_path}: {e}")

    logger.warning("family_presets.json not found, using built-in presets")
    return {
        "hermite_unit": {"family": "hermite", "params": {"nu": "1"},
                         "description": "Hermite polynomials of variance 1"},
        "bernoulli2": {"family": "bernoulli2", "params": {},
                       "description": "Bernoulli polynomials of the second kind"},
    }


def spec_from_preset(preset: str, trunc: int = DEFAULT_TRUNCATION) -> FamilySpec:
    presets = load_family_presets()
    if preset not in presets:
        raise FamilyError(f"unknown preset '{preset}' (choose from {', '.join(sorted(presets))})")
    entry = presets[preset]
    return FamilySpec(entry['family'], dict(entry.get('params', {})), trunc)
