#!/usr/bin/env python3
"""
Operator Algebra
================
Exact finite representations of linear operators on polynomials.

Features:
✅ EndoOp: K[x] -> K[x] as an (N+1)x(N+1) rational matrix (columns = images of x^n)
✅ BivarOp: K[x] -> K[x,y] as N+1 Poly2 images
✅ Compose, invert (triangular back-substitution), linear combinations
✅ Standard operators: I, D, x, E^c, E^y, evaluation at a point
✅ Shift-invariance tests with a formal second variable
✅ Expansion in powers of a delta operator and in a_k(x) D^k form
"""

import logging
from fractions import Fraction
from math import comb, factorial, perm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from exactalg import Poly1, Poly2, Poly3, Scalar, poly_eval, poly_substitute
from umbral_errors import CommutationError, NotInvertibleError, TruncationMismatchError

logger = logging.getLogger(__name__)

DEFAULT_TRUNCATION = 12

_ZERO = Fraction(0)


def _zeros(size: int) -> np.ndarray:
    return np.full((size, size), _ZERO, dtype=object)


# =============================================================================
# ENDO OPERATORS
# =============================================================================

class EndoOp:
    """Linear operator on polynomials of degree <= trunc."""

    __slots__ = ('trunc', 'matrix', 'degree_shift')

    def __init__(self, matrix: np.ndarray):
        rows, cols = matrix.shape
        if rows != cols:
            raise ValueError(f"operator matrix must be square, got {rows}x{cols}")
        self.trunc: int = rows - 1
        self.matrix: np.ndarray = matrix
        self.matrix.setflags(write=False)
        self.degree_shift: int = self._compute_degree_shift()

    def _compute_degree_shift(self) -> int:
        shift: Optional[int] = None
        for n in range(self.trunc + 1):
            nonzero = np.nonzero(self.matrix[:, n] != 0)[0]
            if len(nonzero):
                d = int(nonzero[-1]) - n
                shift = d if shift is None else max(shift, d)
        # zero operator: below every reachable shift
        return -(self.trunc + 1) if shift is None else shift

    @property
    def safe_degree(self) -> int:
        """Largest input degree whose image is not cut by the truncation."""
        return self.trunc - max(self.degree_shift, 0)

    def column(self, n: int) -> Poly1:
        """Image of x^n."""
        return Poly1(self.matrix[:, n])

    def columns(self) -> List[Poly1]:
        return [self.column(n) for n in range(self.trunc + 1)]

    def apply(self, p: Poly1) -> Poly1:
        if p.degree > self.trunc:
            raise TruncationMismatchError(
                f"polynomial of degree {p.degree} exceeds operator truncation {self.trunc}")
        vec = np.array([p[n] for n in range(self.trunc + 1)], dtype=object)
        return Poly1(self.matrix.dot(vec))

    __call__ = apply

    def __matmul__(self, other: 'EndoOp') -> 'EndoOp':
        return op_compose(self, other)

    def __add__(self, other: 'EndoOp') -> 'EndoOp':
        return op_linear_combination([(1, self), (1, other)])

    def __sub__(self, other: 'EndoOp') -> 'EndoOp':
        return op_linear_combination([(1, self), (-1, other)])

    def scale(self, c: Scalar) -> 'EndoOp':
        return EndoOp(self.matrix * Fraction(c))

    def __eq__(self, other) -> bool:
        if not isinstance(other, EndoOp):
            return NotImplemented
        return self.trunc == other.trunc and bool(np.all(self.matrix == other.matrix))

    def __hash__(self) -> int:
        return hash((self.trunc, tuple(self.matrix.flat)))

    def __repr__(self) -> str:
        return f"EndoOp(trunc={self.trunc}, degree_shift={self.degree_shift})"

    def to_json(self) -> Dict:
        return {"trunc": self.trunc, "columns": [c.to_json() for c in self.columns()]}

    @classmethod
    def from_json(cls, data: Dict) -> 'EndoOp':
        images = [Poly1.from_json(c) for c in data["columns"]]
        if len(images) != int(data["trunc"]) + 1:
            raise TruncationMismatchError("column count does not match trunc")
        return op_from_images(images)


def op_from_images(images: Sequence[Poly1]) -> EndoOp:
    """The operator sending x^n to images[n]; terms above x^N are dropped."""
    size = len(images)
    if size == 0:
        raise ValueError("an operator needs at least one image")
    matrix = _zeros(size)
    for n, image in enumerate(images):
        if image.degree >= size:
            logger.debug(f"image of x^{n} truncated from degree {image.degree} to {size - 1}")
        for i, c in enumerate(image.coeffs[:size]):
            matrix[i, n] = c
    return EndoOp(matrix)


def op_compose(a: EndoOp, b: EndoOp) -> EndoOp:
    """a o b (apply b first)."""
    if a.trunc != b.trunc:
        raise TruncationMismatchError(f"cannot compose trunc {a.trunc} with trunc {b.trunc}")
    return EndoOp(a.matrix.dot(b.matrix))


def op_power(a: EndoOp, k: int) -> EndoOp:
    result = identity_op(a.trunc)
    for _ in range(k):
        result = op_compose(a, result)
    return result


def op_invert(a: EndoOp) -> EndoOp:
    """Exact inverse of a degree-preserving operator by back-substitution."""
    if a.degree_shift != 0:
        raise NotInvertibleError(f"operator with degree shift {a.degree_shift} is not invertible")
    m = a.matrix
    size = a.trunc + 1
    for n in range(size):
        if m[n, n] == 0:
            raise NotInvertibleError(f"zero diagonal entry at degree {n}")
    inv = _zeros(size)
    for n in range(size):
        inv[n, n] = 1 / m[n, n]
        for i in range(n - 1, -1, -1):
            acc = sum((m[i, k] * inv[k, n] for k in range(i + 1, n + 1)), _ZERO)
            inv[i, n] = -acc / m[i, i]
    return EndoOp(inv)


def op_linear_combination(terms: Iterable[Tuple[Scalar, EndoOp]]) -> EndoOp:
    """Sum of c_k T_k over a non-empty list of (c_k, T_k)."""
    terms = list(terms)
    if not terms:
        raise ValueError("empty linear combination")
    trunc = terms[0][1].trunc
    matrix = _zeros(trunc + 1)
    for c, op in terms:
        if op.trunc != trunc:
            raise TruncationMismatchError("linear combination of operators with different trunc")
        matrix = matrix + op.matrix * Fraction(c)
    return EndoOp(matrix)


# -- standard operators --------------------------------------------------------

def identity_op(trunc: int = DEFAULT_TRUNCATION) -> EndoOp:
    return op_from_images([Poly1.monomial(n) for n in range(trunc + 1)])


def derivative_op(trunc: int = DEFAULT_TRUNCATION) -> EndoOp:
    return op_from_images([Poly1.monomial(n).derivative() for n in range(trunc + 1)])


def multiply_by_x_op(trunc: int = DEFAULT_TRUNCATION) -> EndoOp:
    return op_from_images([Poly1.monomial(n + 1) for n in range(trunc + 1)])


def evaluation_op(trunc: int = DEFAULT_TRUNCATION, a: Scalar = 0) -> EndoOp:
    """p |-> p(a) as a constant polynomial; a = 0 gives the counit."""
    a = Fraction(a)
    return op_from_images([Poly1.constant(a ** n) for n in range(trunc + 1)])


def shift_endo(c: Scalar, trunc: int = DEFAULT_TRUNCATION) -> EndoOp:
    """E^c: p(x) |-> p(x + c)."""
    return op_from_images([Poly1.monomial(n).shift(c) for n in range(trunc + 1)])


def op_from_D_series(coeffs: Sequence[Scalar]) -> EndoOp:
    """sum_k coeffs[k] D^k on degrees <= len(coeffs) - 1."""
    coeffs = [Fraction(c) for c in coeffs]
    size = len(coeffs)
    matrix = _zeros(size)
    for n in range(size):
        for k in range(n + 1):
            if coeffs[k]:
                matrix[n - k, n] += coeffs[k] * perm(n, k)
    return EndoOp(matrix)


def op_from_xD(coeffs: Sequence[Poly1]) -> EndoOp:
    """sum_k a_k(x) D^k for polynomial coefficients a_k."""
    size = len(coeffs)
    images = []
    for n in range(size):
        image = Poly1()
        for k in range(n + 1):
            if not coeffs[k].is_zero():
                image = image + coeffs[k] * Poly1.monomial(n - k, perm(n, k))
        images.append(image)
    return op_from_images(images)


def op_from_Q_series(coeffs: Sequence[Scalar], Q: EndoOp) -> EndoOp:
    """sum_n coeffs[n] Q^n."""
    terms = []
    power = identity_op(Q.trunc)
    for c in coeffs:
        if c:
            terms.append((c, power))
        power = op_compose(Q, power)
    if not terms:
        return EndoOp(_zeros(Q.trunc + 1))
    return op_linear_combination(terms)


# =============================================================================
# BIVARIATE OPERATORS
# =============================================================================

class BivarOp:
    """Linear map K[x] -> K[x,y], stored as the images of x^0..x^N."""

    __slots__ = ('trunc', 'images')

    def __init__(self, images: Sequence[Poly2]):
        if not images:
            raise ValueError("a bivariate operator needs at least one image")
        self.images: Tuple[Poly2, ...] = tuple(images)
        self.trunc: int = len(self.images) - 1

    def apply(self, p: Poly1) -> Poly2:
        if p.degree > self.trunc:
            raise TruncationMismatchError(
                f"polynomial of degree {p.degree} exceeds operator truncation {self.trunc}")
        out = Poly2()
        for n, c in enumerate(p.coeffs):
            if c:
                out = out + self.images[n] * c
        return out

    __call__ = apply

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivarOp):
            return NotImplemented
        return self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"BivarOp(trunc={self.trunc})"

    def to_json(self) -> Dict:
        return {"trunc": self.trunc, "images": [img.to_json() for img in self.images]}

    @classmethod
    def from_json(cls, data: Dict) -> 'BivarOp':
        images = [Poly2.from_json(img) for img in data["images"]]
        if len(images) != int(data["trunc"]) + 1:
            raise TruncationMismatchError("image count does not match trunc")
        return cls(images)


def shift_bivar(trunc: int = DEFAULT_TRUNCATION) -> BivarOp:
    """E^y: x^n |-> (x + y)^n."""
    x_plus_y = Poly2.x() + Poly2.y()
    return BivarOp([x_plus_y ** n for n in range(trunc + 1)])


def transport_apply_y(T: EndoOp, p: Poly2) -> Poly2:
    """Apply T to the y-variable of p, treating x-monomials as scalars."""
    if p.y_degree > T.trunc:
        raise TruncationMismatchError(
            f"y-degree {p.y_degree} exceeds operator truncation {T.trunc}")
    out = Poly2()
    for j in range(p.y_degree + 1):
        x_part = p.coeff_of_y(j)
        if x_part.is_zero():
            continue
        image = T.column(j)
        out = out + Poly2.from_x(x_part) * Poly2.from_y(image)
    return out


def apply_x(T: EndoOp, p: Poly2) -> Poly2:
    """Apply T to the x-variable of p."""
    return transport_apply_y(T, p.swap()).swap()


def compose_endo_bivar(T: EndoOp, F: BivarOp) -> BivarOp:
    """(T_y) o F: T applied to the y-variable of every image."""
    return BivarOp([transport_apply_y(T, img) for img in F.images])


# =============================================================================
# SHIFT INVARIANCE
# =============================================================================

def is_shift_invariant_endo(T: EndoOp) -> bool:
    """T(E^y x^n) == E^y(T x^n) with y formal, for all n <= safe degree."""
    x_plus_y = Poly2.x() + Poly2.y()
    for n in range(T.safe_degree + 1):
        lhs = apply_x(T, x_plus_y ** n)
        rhs = poly_substitute(T.column(n), x_plus_y)
        if lhs != rhs:
            logger.debug(f"shift invariance fails at x^{n}")
            return False
    return True


def commutes_with_constant_shift(T: EndoOp, c: Scalar) -> bool:
    """T E^c == E^c T on the input degrees where T is exact."""
    shift = shift_endo(c, T.trunc)
    left = op_compose(T, shift)
    right = op_compose(shift, T)
    return all(left.column(n) == right.column(n) for n in range(T.safe_degree + 1))


def _shift_x_by_z(p: Poly2) -> Poly3:
    """p(x + z, y) in (x, y, z)."""
    x_plus_z = Poly3.variable(0) + Poly3.variable(2)
    y = Poly3.variable(1)
    out = Poly3()
    for (i, j), c in p.items():
        out = out + (x_plus_z ** i) * (y ** j) * c
    return out


def is_shift_invariant_bivar(F: BivarOp) -> bool:
    """F(E^z x^n) == E^z(F x^n) as Poly3 identities for n <= N-1."""
    z = Poly3.variable(2)
    for n in range(F.trunc):
        lhs = Poly3()
        for k in range(n + 1):
            lhs = lhs + Poly3.embed(F.images[k]) * (z ** (n - k)) * comb(n, k)
        rhs = _shift_x_by_z(F.images[n])
        if lhs != rhs:
            logger.debug(f"bivariate shift invariance fails at x^{n}")
            return False
    return True


# =============================================================================
# EXPANSION THEOREMS
# =============================================================================

def first_noncommuting_degree(a: EndoOp, b: EndoOp, upto: int) -> Optional[int]:
    """Smallest n <= upto with (ab)x^n != (ba)x^n, or None."""
    ab = op_compose(a, b)
    ba = op_compose(b, a)
    for n in range(upto + 1):
        if ab.column(n) != ba.column(n):
            return n
    return None


def expand_in_Q(T: EndoOp, Q: EndoOp, basic: Sequence[Poly1]) -> List[Fraction]:
    """Coefficients c_n = (T q_n)(0) with T = sum c_n Q^n."""
    witness = first_noncommuting_degree(T, Q, T.trunc - 1)
    if witness is not None:
        raise CommutationError(witness, f"operator does not commute with Q at x^{witness}")
    return [poly_eval(T.apply(q), 0) for q in basic]


def expand_in_xD(T: EndoOp) -> List[Poly1]:
    """a_0..a_N with T = sum a_k(x) D^k on degrees <= N."""
    coeffs: List[Poly1] = []
    for n in range(T.trunc + 1):
        rest = T.column(n)
        for k, a_k in enumerate(coeffs):
            if not a_k.is_zero():
                rest = rest - a_k * Poly1.monomial(n - k, perm(n, k))
        coeffs.append(rest.scale(Fraction(1, factorial(n))))
    return coeffs
