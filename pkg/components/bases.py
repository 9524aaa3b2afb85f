"""
The Q_n and t_n bases of additively symmetric polynomials, the letter
operators C and D, and the small binomial/Catalan helpers they rest on.
"""
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, List

from components.laurent import LaurentPoly, is_add_symmetric
from utils.errors import NotAddSymmetric, ParameterOutOfRange


def binom(a: int, b: int) -> int:
    """C(a, b), zero outside 0 <= b <= a."""
    if a < 0 or b < 0 or b > a:
        return 0
    return comb(a, b)


def catalan(m: int) -> int:
    if m < 0:
        return 0
    return comb(2 * m, m) // (m + 1)


def ballot(a: int, b: int) -> int:
    """p(a, b) = C(a, b) - C(a, b-1)."""
    return binom(a, b) - binom(a, b - 1)


@lru_cache(maxsize=None)
def Q_poly(n: int) -> LaurentPoly:
    """Q_0 = 1, Q_n = sum_j (-1)^j (C(n-1,j) - C(n-1,j-1)) x^{n-2j}."""
    if n < 0:
        raise ParameterOutOfRange(f"Q_n needs n >= 0, got {n}")
    if n == 0:
        return LaurentPoly.one()
    return LaurentPoly({
        n - 2 * j: (-1) ** j * ballot(n - 1, j)
        for j in range((n - 1) // 2 + 1)
    })


@lru_cache(maxsize=None)
def t_poly(n: int) -> LaurentPoly:
    """t_n = x^n + x^{n-2} + ...; t_{-1} = 0."""
    if n < 0:
        return LaurentPoly.zero()
    return LaurentPoly({n - 2 * k: 1 for k in range(n // 2 + 1)})


def x_to_Q(n: int) -> List[int]:
    """Coefficients c_m with x^n = sum_m c_m Q_m."""
    if n < 0:
        raise ParameterOutOfRange(f"n must be >= 0, got {n}")
    coeffs = [0] * (n + 1)
    if n == 0:
        coeffs[0] = 1
        return coeffs
    for k in range((n - 1) // 2 + 1):
        coeffs[n - 2 * k] = binom(n - 1 - k, k)
    return coeffs


def x_to_t(n: int) -> List[int]:
    """Coefficients c_m with x^n = sum_m c_m t_m."""
    if n < 0:
        raise ParameterOutOfRange(f"n must be >= 0, got {n}")
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    if n >= 2:
        coeffs[n - 2] = -1
    return coeffs


def morgan_voyce(n: int, kind: str) -> List[int]:
    """
    Coefficients of the Q-expansions of even and odd powers.

    kind "B": x^{2n} = sum_k C(n-1+k, n-k) Q_{2k}, returned indexed by k.
    kind "b": x^{2n+1} = sum_k C(n+k, n-k) Q_{2k+1}, returned indexed by k.
    """
    if n < 0:
        raise ParameterOutOfRange(f"n must be >= 0, got {n}")
    if kind == "B":
        if n == 0:
            return [1]
        return [binom(n - 1 + k, n - k) for k in range(n + 1)]
    if kind == "b":
        return [binom(n + k, n - k) for k in range(n + 1)]
    raise ParameterOutOfRange(f"kind must be 'B' or 'b', got {kind!r}")


def _basis_expansion(p: LaurentPoly, n: int, basis) -> Dict[int, Fraction]:
    if p.has_negative_exponents() or not is_add_symmetric(p, n):
        raise NotAddSymmetric(f"{p} is not additively symmetric of degree {n}")
    remainder = p
    out: Dict[int, Fraction] = {}
    for m in range(n, -1, -2):
        c = remainder.coefficient(m)
        if c:
            out[m] = c
            remainder = remainder - basis(m).scale(c)
    return out


def to_t_basis(p: LaurentPoly, n: int) -> Dict[int, Fraction]:
    """Expands an additively symmetric p of degree n as sum_m c_m t_m."""
    return _basis_expansion(p, n, t_poly)


def to_Q_basis(p: LaurentPoly, n: int) -> Dict[int, Fraction]:
    return _basis_expansion(p, n, Q_poly)


def from_basis(coeffs: Dict[int, Fraction], basis) -> LaurentPoly:
    total = LaurentPoly.zero()
    for m, c in coeffs.items():
        total = total + basis(m).scale(c)
    return total


def op_C(p: LaurentPoly) -> LaurentPoly:
    """C(x^n) = x^{n+1} - x^{n-1} for n >= 2, x^{n+1} for n in {0, 1}."""
    p._require_ordinary()
    acc: Dict[int, Fraction] = {}
    for exp, value in p.coeffs.items():
        acc[exp + 1] = acc.get(exp + 1, Fraction(0)) + value
        if exp >= 2:
            acc[exp - 1] = acc.get(exp - 1, Fraction(0)) - value
    return LaurentPoly(acc)


def op_D(p: LaurentPoly) -> LaurentPoly:
    """D(1) = 1, D(x^2) = -1, D(x^n) = 0 otherwise."""
    p._require_ordinary()
    return LaurentPoly.constant(p.coefficient(0) - p.coefficient(2))


OPERATORS = {"c": op_C, "d": op_D}


def cd_word_blocks(word: str) -> tuple:
    """c^{k_1} d c^{k_2} d ... c^{k_r} d c^k -> ([k_1, ..., k_r], k)."""
    blocks = word.split("d")
    return [len(b) for b in blocks[:-1]], len(blocks[-1])


def st_cd_word(word: str) -> LaurentPoly:
    """Catalan-product closed form of the short toric image of one cd-word."""
    heads, tail = cd_word_blocks(word)
    if any(k % 2 for k in heads):
        return LaurentPoly.zero()
    value = (-1) ** (sum(heads) // 2)
    for k in heads:
        value *= catalan(k // 2)
    return Q_poly(tail).scale(value)
