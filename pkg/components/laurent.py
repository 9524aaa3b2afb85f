from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union

from utils.errors import (
    EvalAtZeroWithNegativeExponents,
    NegativeExponentPresent,
    NotAddSymmetric,
    NotMultSymmetric,
)

Scalar = Union[int, Fraction]


class LaurentPoly:
    """
    Exact Laurent polynomial in one variable x with rational coefficients.

    Values are immutable; zero coefficients are never stored.
    """

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Optional[Dict[int, Scalar]] = None):
        clean: Dict[int, Fraction] = {}
        for exp, value in (coeffs or {}).items():
            value = Fraction(value)
            if value:
                clean[int(exp)] = value
        self._coeffs = clean
        self._hash = None

    # --- constructors ---

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def constant(cls, value: Scalar) -> "LaurentPoly":
        return cls({0: value})

    @classmethod
    def monomial(cls, exp: int, coeff: Scalar = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[int, Scalar]]) -> "LaurentPoly":
        """Builds a polynomial from (exponent, coefficient) pairs, summing repeats."""
        acc: Dict[int, Fraction] = {}
        for exp, value in terms:
            acc[exp] = acc.get(exp, Fraction(0)) + Fraction(value)
        return cls(acc)

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[Scalar]) -> "LaurentPoly":
        """Ordinary polynomial a_0 + a_1 x + ... from its coefficient list."""
        return cls({k: a for k, a in enumerate(coeffs)})

    # --- inspection ---

    @property
    def coeffs(self) -> Dict[int, Fraction]:
        return dict(self._coeffs)

    def terms(self) -> List[Tuple[int, Fraction]]:
        """Terms sorted by decreasing exponent."""
        return sorted(self._coeffs.items(), reverse=True)

    def coefficient(self, exp: int) -> Fraction:
        return self._coeffs.get(exp, Fraction(0))

    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def degree(self) -> Optional[int]:
        """Largest exponent, or None for the zero polynomial."""
        return max(self._coeffs) if self._coeffs else None

    @property
    def low_degree(self) -> Optional[int]:
        return min(self._coeffs) if self._coeffs else None

    def has_negative_exponents(self) -> bool:
        return any(exp < 0 for exp in self._coeffs)

    def is_integral(self) -> bool:
        return all(value.denominator == 1 for value in self._coeffs.values())

    def coefficient_list(self) -> List[Fraction]:
        """Coefficients a_0..a_deg of an ordinary polynomial."""
        self._require_ordinary()
        if self.is_zero():
            return []
        return [self.coefficient(k) for k in range(self.degree + 1)]

    def __iter__(self) -> Iterator[Tuple[int, Fraction]]:
        return iter(self.terms())

    # --- arithmetic ---

    def __add__(self, other: Union["LaurentPoly", Scalar]) -> "LaurentPoly":
        other = _coerce(other)
        acc = dict(self._coeffs)
        for exp, value in other._coeffs.items():
            acc[exp] = acc.get(exp, Fraction(0)) + value
        return LaurentPoly(acc)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({exp: -value for exp, value in self._coeffs.items()})

    def __sub__(self, other: Union["LaurentPoly", Scalar]) -> "LaurentPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        return _coerce(other) - self

    def __mul__(self, other: Union["LaurentPoly", Scalar]) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        acc: Dict[int, Fraction] = {}
        for e1, v1 in self._coeffs.items():
            for e2, v2 in other._coeffs.items():
                acc[e1 + e2] = acc.get(e1 + e2, Fraction(0)) + v1 * v2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative powers are only defined for monomials")
        result = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, r: Scalar) -> "LaurentPoly":
        r = Fraction(r)
        return LaurentPoly({exp: value * r for exp, value in self._coeffs.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiplies by x^k."""
        return LaurentPoly({exp + k: value for exp, value in self._coeffs.items()})

    def substitute_power(self, k: int) -> "LaurentPoly":
        """p(x^k); k = -1 gives p(1/x)."""
        return LaurentPoly({exp * k: value for exp, value in self._coeffs.items()})

    def eval_at(self, r: Scalar) -> Fraction:
        r = Fraction(r)
        if r == 0 and self.has_negative_exponents():
            raise EvalAtZeroWithNegativeExponents(f"cannot evaluate {self} at 0")
        return sum((value * r ** exp for exp, value in self._coeffs.items()), Fraction(0))

    # --- truncations ---

    def truncate_ge(self, z: int) -> "LaurentPoly":
        return LaurentPoly({exp: value for exp, value in self._coeffs.items() if exp >= z})

    def truncate_le(self, z: int) -> "LaurentPoly":
        return LaurentPoly({exp: value for exp, value in self._coeffs.items() if exp <= z})

    # --- comparison and display ---

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._coeffs.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for exp, value in self.terms():
            sign = "-" if value < 0 else "+"
            mag = abs(value)
            if exp == 0:
                body = str(mag)
            else:
                power = "x" if exp == 1 else f"x^{exp}"
                body = power if mag == 1 else f"{mag}*{power}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self) -> List[List[int]]:
        """[exponent, numerator, denominator] triples by decreasing exponent."""
        return [[exp, value.numerator, value.denominator] for exp, value in self.terms()]

    @classmethod
    def from_json(cls, triples: Iterable[Iterable[int]]) -> "LaurentPoly":
        return cls.from_terms((int(e), Fraction(int(num), int(den))) for e, num, den in triples)

    def _require_ordinary(self) -> None:
        if self.has_negative_exponents():
            raise NegativeExponentPresent(f"{self} has negative exponents")


def _coerce(value: Union[LaurentPoly, Scalar]) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    return LaurentPoly.constant(value)


X = LaurentPoly.monomial(1)
X_INV = LaurentPoly.monomial(-1)


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def scale(p: LaurentPoly, r: Scalar) -> LaurentPoly:
    return p.scale(r)


def eval_at(p: LaurentPoly, r: Scalar) -> Fraction:
    return p.eval_at(r)


def truncate_ge(p: LaurentPoly, z: int) -> LaurentPoly:
    """U_{>=z}: keeps the terms of degree at least z."""
    return p.truncate_ge(z)


def truncate_le(p: LaurentPoly, z: int) -> LaurentPoly:
    """U_{<=z}: keeps the terms of degree at most z."""
    return p.truncate_le(z)


def is_mult_symmetric(p: LaurentPoly, n: int) -> bool:
    """
    Checks x^n p(1/x) = p(x).

    Args:
        p (LaurentPoly): An ordinary polynomial of degree at most n.
        n (int): The symmetry degree.

    Returns:
        bool: True if a_k = a_{n-k} for every k.
    """
    p._require_ordinary()
    if not p.is_zero() and p.degree > n:
        return False
    return all(p.coefficient(n - exp) == value for exp, value in p.coeffs.items())


def is_add_symmetric(p: LaurentPoly, n: int) -> bool:
    """
    Checks p(x) = (-1)^n p(-x), i.e. only exponents of the parity of n occur.
    """
    p._require_ordinary()
    if not p.is_zero() and p.degree > n:
        return False
    return all((n - exp) % 2 == 0 for exp in p.coeffs)


def to_additive_variant(p: LaurentPoly, n: int) -> LaurentPoly:
    """Returns q = U_{>=0}(x^{-n} p(x^2)) for a multiplicatively symmetric p of degree n."""
    if not is_mult_symmetric(p, n):
        raise NotMultSymmetric(f"{p} is not multiplicatively symmetric of degree {n}")
    return p.substitute_power(2).shift(-n).truncate_ge(0)


def to_multiplicative_variant(q: LaurentPoly, n: Optional[int] = None) -> LaurentPoly:
    """
    Inverts to_additive_variant by exponent re-indexing.

    The coefficient a_{n-2k} of q is paired into x^{n-k} + x^k; for even n
    the doubled centre x^{n/2} q(0) is subtracted once.
    """
    if n is None:
        if q.is_zero():
            raise NotAddSymmetric("the zero polynomial carries no degree")
        n = q.degree
    if q.has_negative_exponents() or not is_add_symmetric(q, n):
        raise NotAddSymmetric(f"{q} is not additively symmetric of degree {n}")

    acc: Dict[int, Fraction] = {}
    for exp, value in q.coeffs.items():
        k = (n - exp) // 2
        acc[n - k] = acc.get(n - k, Fraction(0)) + value
        acc[k] = acc.get(k, Fraction(0)) + value
    if n % 2 == 0:
        acc[n // 2] = acc.get(n // 2, Fraction(0)) - q.coefficient(0)
    return LaurentPoly(acc)
