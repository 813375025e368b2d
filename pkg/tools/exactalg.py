#!/usr/bin/env python3
"""
Exact Algebra Substrate
=======================
Rational scalars, polynomials in x / (x,y) / (x,y,z), and truncated power
series in an auxiliary variable t whose coefficients are polynomials in x.

Every identity in the toolkit is checked on these types, so nothing here
ever rounds:
  - Rational is fractions.Fraction (always in lowest terms)
  - Poly1 is dense and ascending, Poly2 / Poly3 are sparse exponent maps
  - Series keeps exactly order+1 coefficient slots and drops t^k, k > order

Serialization:
  Rational -> "p/q" or "p"
  Poly1    -> ["c0", "c1", ...]
  Poly2    -> [{"i": i, "j": j, "c": "p/q"}, ...]
"""

import logging
import re
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from umbral_errors import RationalParseError, SeriesDomainError, TruncationMismatchError

logger = logging.getLogger(__name__)

Rational = Fraction
Scalar = Union[int, Fraction]

# degree of the zero polynomial
ZERO_DEGREE = -1

_RATIONAL_RE = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$')


# =============================================================================
# RATIONALS
# =============================================================================

def parse_rational(value) -> Fraction:
    """Parse 'p/q' or an integer. Decimals are refused."""
    if isinstance(value, bool):
        raise RationalParseError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if not isinstance(value, str):
        raise RationalParseError(f"not a rational: {value!r}")
    match = _RATIONAL_RE.match(value)
    if not match:
        raise RationalParseError(f"not a rational (expected p/q): {value!r}")
    num, den = match.group(1), match.group(2)
    if den is not None and int(den) == 0:
        raise RationalParseError(f"zero denominator: {value!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(r: Scalar) -> str:
    return str(Fraction(r))


# =============================================================================
# POLY1
# =============================================================================

class Poly1:
    """Polynomial in one variable, dense ascending coefficients."""

    __slots__ = ('_coeffs',)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs: Tuple[Fraction, ...] = tuple(cs)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls) -> 'Poly1':
        return cls()

    @classmethod
    def constant(cls, c: Scalar) -> 'Poly1':
        return cls([c])

    @classmethod
    def monomial(cls, n: int, c: Scalar = 1) -> 'Poly1':
        return cls([0] * n + [c])

    @classmethod
    def x(cls) -> 'Poly1':
        return cls([0, 1])

    # -- inspection ----------------------------------------------------------

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1 if self._coeffs else ZERO_DEGREE

    @property
    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __getitem__(self, n: int) -> Fraction:
        if 0 <= n < len(self._coeffs):
            return self._coeffs[n]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly1):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly1.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"Poly1({self})"

    def __str__(self) -> str:
        return _render_terms([((n,), c) for n, c in enumerate(self._coeffs) if c], ('x',))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other) -> 'Poly1':
        other = _as_poly1(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self._coeffs), len(other._coeffs))
        return Poly1(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> 'Poly1':
        return Poly1(-c for c in self._coeffs)

    def __sub__(self, other) -> 'Poly1':
        other = _as_poly1(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> 'Poly1':
        return (-self) + other

    def __mul__(self, other) -> 'Poly1':
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly1):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly1()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a:
                for j, b in enumerate(other._coeffs):
                    out[i + j] += a * b
        return Poly1(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> 'Poly1':
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly1.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c: Scalar) -> 'Poly1':
        return Poly1(c * a for a in self._coeffs)

    def truncate(self, n: int) -> 'Poly1':
        """Drop every term of degree > n."""
        return Poly1(self._coeffs[:n + 1])

    # -- calculus ------------------------------------------------------------

    def __call__(self, a: Scalar) -> Fraction:
        return poly_eval(self, a)

    def derivative(self) -> 'Poly1':
        return Poly1(n * c for n, c in enumerate(self._coeffs) if n > 0)

    def antiderivative(self) -> 'Poly1':
        """Antiderivative with zero constant term."""
        return Poly1([0] + [c / (n + 1) for n, c in enumerate(self._coeffs)])

    def compose(self, inner: 'Poly1') -> 'Poly1':
        """self(inner(x)) by Horner."""
        result = Poly1()
        for c in reversed(self._coeffs):
            result = result * inner + c
        return result

    def shift(self, c: Scalar) -> 'Poly1':
        """p(x + c)."""
        return self.compose(Poly1([c, 1]))

    # -- serialization -------------------------------------------------------

    def to_json(self) -> List[str]:
        return [format_rational(c) for c in self._coeffs] or ["0"]

    @classmethod
    def from_json(cls, data: Sequence) -> 'Poly1':
        return cls(parse_rational(c) for c in data)


def _as_poly1(value):
    if isinstance(value, Poly1):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly1.constant(value)
    return NotImplemented


def poly_eval(p: Poly1, a: Scalar) -> Fraction:
    """p(a), Horner evaluation. poly_eval(p, 0) is the evaluation map at 0."""
    a = Fraction(a)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * a + c
    return acc


def definite_unit_integral(p: Poly1) -> Poly1:
    """The integral of p(u) du from x to x+1."""
    anti = p.antiderivative()
    return anti.shift(1) - anti


# =============================================================================
# POLY2 / POLY3
# =============================================================================

class _SparsePoly:
    """Shared machinery for sparse multivariate polynomials."""

    __slots__ = ('_terms',)
    NVARS = 0
    NAMES: Tuple[str, ...] = ()

    def __init__(self, terms: Dict[Tuple[int, ...], Scalar] = None):
        self._terms: Dict[Tuple[int, ...], Fraction] = {
            tuple(k): Fraction(v) for k, v in (terms or {}).items() if v != 0
        }

    @classmethod
    def constant(cls, c: Scalar):
        return cls({(0,) * cls.NVARS: c})

    @classmethod
    def variable(cls, index: int):
        key = [0] * cls.NVARS
        key[index] = 1
        return cls({tuple(key): 1})

    @property
    def terms(self) -> Dict[Tuple[int, ...], Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def degree_in(self, index: int) -> int:
        return max((k[index] for k in self._terms), default=ZERO_DEGREE)

    @property
    def total_degree(self) -> int:
        return max((sum(k) for k in self._terms), default=ZERO_DEGREE)

    def coefficient(self, *key: int) -> Fraction:
        return self._terms.get(tuple(key), Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, type(self)):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == type(self).constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._terms.items())))

    def __str__(self) -> str:
        return _render_terms(sorted(self._terms.items()), self.NAMES)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, (int, Fraction)):
            return type(self).constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return type(self)(out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar):
        return type(self)({k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, type(self)):
            return NotImplemented
        out: Dict[Tuple[int, ...], Fraction] = {}
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                out[key] = out.get(key, Fraction(0)) + v1 * v2
        return type(self)(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = type(self).constant(1)
        for _ in range(n):
            result = result * self
        return result


class Poly2(_SparsePoly):
    """Polynomial in (x, y); keys are (x-exponent, y-exponent)."""

    __slots__ = ()
    NVARS = 2
    NAMES = ('x', 'y')

    @classmethod
    def x(cls) -> 'Poly2':
        return cls.variable(0)

    @classmethod
    def y(cls) -> 'Poly2':
        return cls.variable(1)

    @classmethod
    def from_x(cls, p: Poly1) -> 'Poly2':
        return cls({(i, 0): c for i, c in enumerate(p.coeffs)})

    @classmethod
    def from_y(cls, p: Poly1) -> 'Poly2':
        return cls({(0, j): c for j, c in enumerate(p.coeffs)})

    @property
    def x_degree(self) -> int:
        return self.degree_in(0)

    @property
    def y_degree(self) -> int:
        return self.degree_in(1)

    def swap(self) -> 'Poly2':
        """Exchange x and y."""
        return Poly2({(j, i): c for (i, j), c in self._terms.items()})

    def at_y_zero(self) -> Poly1:
        return self.coeff_of_y(0)

    def at_x_zero(self) -> Poly1:
        """p(0, y), returned as a polynomial in y."""
        return self.coeff_of_x(0)

    def at_y(self, c: Scalar) -> Poly1:
        """p(x, c) as a polynomial in x."""
        out: Dict[int, Fraction] = {}
        c = Fraction(c)
        for (i, j), v in self._terms.items():
            out[i] = out.get(i, Fraction(0)) + v * c ** j
        return _poly1_from_dict(out)

    def y_equals_x(self) -> Poly1:
        """Substitute y := x (polynomial multiplication of the two legs)."""
        out: Dict[int, Fraction] = {}
        for (i, j), v in self._terms.items():
            out[i + j] = out.get(i + j, Fraction(0)) + v
        return _poly1_from_dict(out)

    def coeff_of_y(self, j: int) -> Poly1:
        """Coefficient of y^j, a polynomial in x."""
        return _poly1_from_dict({i: v for (i, jj), v in self._terms.items() if jj == j})

    def coeff_of_x(self, i: int) -> Poly1:
        """Coefficient of x^i, a polynomial in y."""
        return _poly1_from_dict({j: v for (ii, j), v in self._terms.items() if ii == i})

    def to_json(self) -> List[Dict]:
        return [{"i": i, "j": j, "c": format_rational(c)} for (i, j), c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, data: Sequence[Dict]) -> 'Poly2':
        out: Dict[Tuple[int, int], Fraction] = {}
        for entry in data:
            key = (int(entry["i"]), int(entry["j"]))
            out[key] = out.get(key, Fraction(0)) + parse_rational(entry["c"])
        return cls(out)


class Poly3(_SparsePoly):
    """Polynomial in (x, y, z); keys are exponent triples."""

    __slots__ = ()
    NVARS = 3
    NAMES = ('x', 'y', 'z')

    @classmethod
    def embed(cls, p: Poly2, slots: Tuple[int, int] = (0, 1)) -> 'Poly3':
        """Place the x and y of a Poly2 into the given variable slots."""
        out: Dict[Tuple[int, int, int], Fraction] = {}
        for (i, j), c in p.items():
            key = [0, 0, 0]
            key[slots[0]] += i
            key[slots[1]] += j
            out[tuple(key)] = out.get(tuple(key), Fraction(0)) + c
        return cls(out)

    def to_json(self) -> List[Dict]:
        return [{"i": i, "j": j, "k": k, "c": format_rational(c)}
                for (i, j, k), c in sorted(self._terms.items())]


def _poly1_from_dict(d: Dict[int, Fraction]) -> Poly1:
    if not d:
        return Poly1()
    out = [Fraction(0)] * (max(d) + 1)
    for n, c in d.items():
        out[n] += c
    return Poly1(out)


def poly_substitute(p: Poly1, r: Poly2) -> Poly2:
    """p(r(x, y)), expanded exactly."""
    result = Poly2()
    for c in reversed(p.coeffs):
        result = result * r + c
    return result


def _render_terms(items, names) -> str:
    if not items:
        return "0"
    parts = []
    for key, c in items:
        mono = "*".join(
            f"{names[v]}^{e}" if e > 1 else names[v]
            for v, e in enumerate(key) if e
        )
        if not mono:
            parts.append(format_rational(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append(f"-{mono}")
        else:
            parts.append(f"{format_rational(c)}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


# =============================================================================
# TRUNCATED SERIES IN t
# =============================================================================

class Series:
    """Power series in t truncated at t^order, coefficients are Poly1 in x."""

    __slots__ = ('order', '_coeffs')

    def __init__(self, order: int, coeffs: Iterable = ()):
        if order < 0:
            raise ValueError("series order must be >= 0")
        cs = [_as_poly1(c) for c in list(coeffs)[:order + 1]]
        cs += [Poly1()] * (order + 1 - len(cs))
        self.order = order
        self._coeffs: Tuple[Poly1, ...] = tuple(cs)

    @classmethod
    def one(cls, order: int) -> 'Series':
        return cls(order, [1])

    @classmethod
    def t(cls, order: int) -> 'Series':
        return cls(order, [0, 1])

    @property
    def coeffs(self) -> Tuple[Poly1, ...]:
        return self._coeffs

    def coefficient(self, n: int) -> Poly1:
        return self._coeffs[n] if 0 <= n <= self.order else Poly1()

    @property
    def constant_term(self) -> Poly1:
        return self._coeffs[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.order == other.order and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.order, self._coeffs))

    def __repr__(self) -> str:
        return f"Series(order={self.order}, {[str(c) for c in self._coeffs]})"

    def _check(self, other: 'Series') -> None:
        if self.order != other.order:
            raise TruncationMismatchError(f"series orders differ: {self.order} vs {other.order}")

    def __add__(self, other: 'Series') -> 'Series':
        self._check(other)
        return Series(self.order, (a + b for a, b in zip(self._coeffs, other._coeffs)))

    def __neg__(self) -> 'Series':
        return Series(self.order, (-a for a in self._coeffs))

    def __sub__(self, other: 'Series') -> 'Series':
        return self + (-other)

    def __mul__(self, other) -> 'Series':
        if isinstance(other, Series):
            return series_mul(self, other)
        return self.scale(other)

    def scale(self, c) -> 'Series':
        """Multiply every coefficient by a scalar or a Poly1 in x."""
        return Series(self.order, (a * c for a in self._coeffs))

    def shift_down(self) -> 'Series':
        """Divide by t; the constant term must vanish. Loses one order."""
        if not self._coeffs[0].is_zero():
            raise SeriesDomainError("cannot divide by t: nonzero constant term")
        if self.order == 0:
            raise SeriesDomainError("cannot divide an order-0 series by t")
        return Series(self.order - 1, self._coeffs[1:])


def series_mul(a: Series, b: Series) -> Series:
    """Cauchy product truncated at the common order."""
    a._check(b)
    n = a.order
    out = []
    for k in range(n + 1):
        acc = Poly1()
        for i in range(k + 1):
            ai = a.coeffs[i]
            if not ai.is_zero():
                acc = acc + ai * b.coeffs[k - i]
        out.append(acc)
    return Series(n, out)


def _require_zero_constant(u: Series, what: str) -> None:
    if not u.constant_term.is_zero():
        raise SeriesDomainError(f"{what} needs a series with zero constant term")


def series_exp(u: Series) -> Series:
    """exp(u) from E' = u' E: n e_n = sum_k k u_k e_(n-k); u must vanish at t = 0."""
    _require_zero_constant(u, "series_exp")
    e: List[Poly1] = [Poly1.constant(1)]
    for n in range(1, u.order + 1):
        acc = Poly1()
        for k in range(1, n + 1):
            if not u.coeffs[k].is_zero():
                acc = acc + u.coeffs[k] * e[n - k] * k
        e.append(acc * Fraction(1, n))
    return Series(u.order, e)


def series_log1p(u: Series) -> Series:
    """log(1 + u) from (1 + u) L' = u'; u must vanish at t = 0."""
    _require_zero_constant(u, "series_log1p")
    log: List[Poly1] = [Poly1()]
    for n in range(1, u.order + 1):
        acc = u.coeffs[n] * n
        for k in range(1, n):
            if not u.coeffs[k].is_zero():
                acc = acc - u.coeffs[k] * log[n - k] * (n - k)
        log.append(acc * Fraction(1, n))
    return Series(u.order, log)


def _require_unit_constant(u: Series, what: str) -> None:
    if u.constant_term != Poly1.constant(1):
        raise SeriesDomainError(f"{what} needs a series with constant term 1")


def series_pow(u: Series, rho: Scalar) -> Series:
    """u^rho = exp(rho * log(u)) for a series with constant term 1."""
    _require_unit_constant(u, "series_pow")
    w = u - Series.one(u.order)
    return series_exp(series_log1p(w).scale(Fraction(rho)))


def series_div_unit(a: Series, b: Series) -> Series:
    """a / b for b with constant term 1 (factor powers of t out first)."""
    a._check(b)
    _require_unit_constant(b, "series_div_unit")
    inverse: List[Poly1] = [Poly1.constant(1)]
    for n in range(1, b.order + 1):
        acc = Poly1()
        for k in range(1, n + 1):
            acc = acc + b.coeffs[k] * inverse[n - k]
        inverse.append(-acc)
    return series_mul(a, Series(b.order, inverse))
