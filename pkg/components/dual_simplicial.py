"""
Dual simplicial Eulerian posets: augmented Andre permutations, the
polynomials Phi-check(n, i) by enumeration and by recurrence, the tau and
sigma coefficient tables, the toric g and st formulas in terms of the toric
h-vector of the dual, and the cube closed forms.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from components.bases import ballot, binom, catalan, t_poly
from components.laurent import LaurentPoly
from components.ncindex import NCPoly, cd_index, require_eulerian, reverse
from components.poset import FVector, Poset, f_vector, is_dual_simplicial, is_simplicial
from components.toric import (
    ShortToric,
    X_MINUS_ONE,
    apply_cd_word,
    f_closed_interval,
    stanley_f_g,
    toric_h_vector,
)
from utils.errors import (
    AsymmetricHVector,
    ConsecutiveDescents,
    DecompositionMismatch,
    IndexOutOfRange,
    InputError,
    NonIntegralCoefficient,
    NotDualSimplicial,
    NotSimplicial,
    ParameterOutOfRange,
)

Number = Union[int, Fraction]


@dataclass(frozen=True)
class Permutation:
    """A word of distinct letters from a linearly ordered set."""

    word: Tuple[int, ...]

    def __post_init__(self):
        if len(set(self.word)) != len(self.word):
            raise InputError(f"{self.word} repeats a letter")

    def __len__(self) -> int:
        return len(self.word)

    @property
    def descents(self) -> List[int]:
        """Positions i (1-based) with word[i] > word[i+1]."""
        return [i + 1 for i in range(len(self.word) - 1) if self.word[i] > self.word[i + 1]]


def _as_word(p: Union[Permutation, Sequence[int]]) -> Tuple[int, ...]:
    return p.word if isinstance(p, Permutation) else tuple(p)


def is_augmented_andre(p: Union[Permutation, Sequence[int]]) -> bool:
    """
    Split at the smallest letter: both sides must be augmented Andre and the
    largest letter must lie to the right of the split.
    """
    word = _as_word(p)
    if len(word) <= 1:
        return True
    split = word.index(min(word))
    left, right = word[:split], word[split + 1:]
    if max(word) not in right:
        return False
    return is_augmented_andre(left) and is_augmented_andre(right)


def andre_permutations(n: int) -> Iterator[Permutation]:
    """Augmented Andre permutations of [1, n+1], in lexicographic order."""
    if n < 0:
        raise ParameterOutOfRange(f"n must be >= 0, got {n}")
    for word in permutations(range(1, n + 2)):
        if is_augmented_andre(word):
            yield Permutation(word)


def cd_variation(p: Union[Permutation, Sequence[int]]) -> str:
    """A d over {i, i+1} for each descent i, a c at every other position of [1, n]."""
    word = _as_word(p)
    n = len(word) - 1
    descents = set(Permutation(word).descents)
    letters = []
    i = 1
    while i <= n:
        if i in descents:
            if i == n or i + 1 in descents:
                raise ConsecutiveDescents(f"{word} has no ascent after the descent at {i}")
            letters.append("d")
            i += 2
        else:
            letters.append("c")
            i += 1
    return "".join(letters)


def _check_phi_indices(n: int, i: int) -> None:
    if n < 1 or not 0 <= i <= n - 1:
        raise ParameterOutOfRange(f"Phi-check needs n >= 1 and 0 <= i <= n-1, got ({n}, {i})")


def phi_check_enum(n: int, i: int) -> NCPoly:
    """Sum of the cd-variations of the Andre permutations with pi(n) = n - i."""
    _check_phi_indices(n, i)
    terms = {}
    for p in andre_permutations(n):
        if p.word[n - 1] == n - i:
            word = cd_variation(p)
            terms[word] = terms.get(word, 0) + 1
    return NCPoly("CD", terms)


@lru_cache(maxsize=None)
def phi_check_rec(n: int, i: int) -> NCPoly:
    _check_phi_indices(n, i)
    c = NCPoly.word("CD", "c")
    d = NCPoly.word("CD", "d")
    if n == 1:
        return c
    if i == n - 1:
        return boolean_cd_index(n - 1) * d

    total = c * phi_check_rec(n - 1, i)
    for m in range(2, n):
        for j in range(min(i, m - 1) + 1):
            if i - j > n - m - 1:
                continue
            weight = binom(i, j) * binom(n - i - 2, m - 1 - j)
            if weight:
                total = total + (boolean_cd_index(m - 1) * d * phi_check_rec(n - m, i - j)).scale(weight)
    return total


@lru_cache(maxsize=None)
def boolean_cd_index(k: int) -> NCPoly:
    """cd-index of the Boolean algebra of rank k as the sum of Phi-check(k-1, i)."""
    if k < 1:
        raise ParameterOutOfRange(f"rank must be >= 1, got {k}")
    if k == 1:
        return NCPoly.word("CD", "")
    total = NCPoly("CD")
    for i in range(k - 1):
        total = total + phi_check_rec(k - 1, i)
    return total


def t_ni(n: int, i: int, route: str = "rec") -> LaurentPoly:
    """Phi-check(n, i) evaluated at the C/D operators, applied to 1."""
    phi = phi_check_rec(n, i) if route == "rec" else phi_check_enum(n, i)
    total = LaurentPoly.zero()
    for word, value in reverse(phi).terms.items():
        total = total + apply_cd_word(word).scale(value)
    return total


@dataclass(frozen=True)
class DecompositionReport:
    h: Tuple[int, ...]
    cd: NCPoly
    expected: NCPoly


def stanley_decomposition_check(P: Poset) -> DecompositionReport:
    """
    Checks cd(P) = sum_i h_i Phi-check(n, i) with h the toric h-vector of a
    simplicial Eulerian P of rank n+1.
    """
    require_eulerian(P)
    if not is_simplicial(P):
        raise NotSimplicial("some proper lower interval is not Boolean")
    h = toric_h_vector(stanley_f_g(P))
    n = len(h) - 1
    cd = cd_index(P)
    expected = NCPoly("CD")
    if n == 0:
        expected = NCPoly.word("CD", "")
    for i in range(n):
        expected = expected + phi_check_rec(n, i).scale(h[i])
    residual = cd - expected
    if not residual.is_zero():
        raise DecompositionMismatch(f"cd-index differs from the decomposition by {residual}", residual)
    return DecompositionReport(tuple(h), cd, expected)


def simplicial_toric_f(fv: FVector) -> LaurentPoly:
    """f = sum_{i=0}^{n} f_{i-1} (x-1)^{n-i}."""
    n = fv.n
    return sum(
        ((X_MINUS_ONE ** (n - i)).scale(fv.f(i - 1)) for i in range(n + 1)),
        LaurentPoly.zero(),
    )


def dual_h_from_f(P: Poset) -> List[int]:
    """h_k = sum_{i >= k} (-1)^{i-k} C(i, k) f_i, f_i counting rank i+1 elements."""
    if not is_dual_simplicial(P):
        raise NotDualSimplicial("some proper upper interval is not Boolean")
    fv = f_vector(P)
    n = fv.n
    return [
        sum((-1) ** (i - k) * binom(i, k) * fv.f(i) for i in range(k, n + 1))
        for k in range(n + 1)
    ]


# --- coefficient tables ---

def tau(n: int, i: int, k: int) -> int:
    """Coefficient of t_{n-2k} in t_{n,i}."""
    if n < 1 or not 0 <= i <= n - 1 or not 0 <= k <= n // 2:
        raise IndexOutOfRange(f"tau({n}, {i}, {k}) is outside its table")
    if i == 0:
        return {0: 1, 1: -(n - 1)}.get(k, 0)
    return binom(n - i, k) * binom(i - 1, k - 1) - binom(n - i - 1, k) * binom(i, k - 1)


def sigma(n: int, i: int, k: int) -> int:
    """Coefficient of (x-1)^k contributed by h_i, i >= 1."""
    if n < 1 or not 1 <= i <= n - 1 or not 0 <= k <= n // 2:
        raise IndexOutOfRange(f"sigma({n}, {i}, {k}) is outside its table")
    return (
        binom(n - k - 1, k) * ballot(n - 2 * k - 1, n - i - k - 1)
        + binom(n - k - 1, k - 1) * ballot(n - 2 * k, n - i - k)
    )


def sigma_by_expansion(n: int, i: int, k: int) -> int:
    """sigma as the re-expansion of the x-basis coefficients of h_i."""
    return sum(
        binom(j, k) * (binom(n - i, j) * binom(i - 1, i - j) - binom(n - i - 1, j) * binom(i, i + 1 - j))
        for j in range(k, n // 2 + 1)
    )


def shifted_coefficient(n: int, i: int, k: int) -> int:
    return binom(n - i, k) * binom(n - k - 1, i - k) - binom(n - i - 1, k) * binom(n - k - 1, i + 1 - k)


def narayana(i: int, k: int) -> int:
    if i < 1 or not 1 <= k <= i:
        raise IndexOutOfRange(f"N({i}, {k}) is outside its table")
    return binom(i - 1, k - 1) * binom(i, k - 1) // k


def monotone_coefficient(n: int, i: int, k: int) -> int:
    """(n+1-2i)/k C(n-i, k-1) C(i-1, k-1); always an integer."""
    if n < 1 or not 1 <= i <= n or k < 1:
        raise IndexOutOfRange(f"monotone coefficient ({n}, {i}, {k}) is outside its table")
    value = Fraction(n + 1 - 2 * i, k) * binom(n - i, k - 1) * binom(i - 1, k - 1)
    if value.denominator != 1:
        raise NonIntegralCoefficient(f"({n}, {i}, {k}) gives {value}")
    return int(value)


def monotone_coefficient_int(n: int, i: int, k: int) -> int:
    return binom(n + 1 - i, k) * binom(i - 1, k - 1) - binom(n - i, k - 1) * binom(i, k)


# --- formulas in terms of h ---

def _check_h(h: Sequence[Number], n: int) -> None:
    if len(h) != n + 1:
        raise ParameterOutOfRange(f"h-vector of length {len(h)} for n = {n}")
    for i in range(n + 1):
        if h[i] != h[n - i]:
            raise AsymmetricHVector(f"h_{i} = {h[i]} but h_{n - i} = {h[n - i]}")


def st_dual_simplicial(h: Sequence[Number], n: int) -> ShortToric:
    _check_h(h, n)
    poly = (t_poly(n) - t_poly(n - 2).scale(n - 1)).scale(h[0])
    for i in range(1, n):
        for k in range(n // 2 + 1):
            value = tau(n, i, k)
            if value:
                poly = poly + t_poly(n - 2 * k).scale(h[i] * value)
    return ShortToric(poly, n)


def g_dual_simplicial(h: Sequence[Number], n: int) -> LaurentPoly:
    _check_h(h, n)
    g = LaurentPoly({0: 1, 1: -(n - 1)}).scale(h[0])
    for i in range(1, n):
        g = g + LaurentPoly({k: tau(n, i, k) for k in range(1, n // 2 + 1)}).scale(h[i])
    return g


def g_dual_monotone(h: Sequence[Number], n: int) -> LaurentPoly:
    _check_h(h, n)
    g = LaurentPoly.constant(h[0])
    for i in range(1, n // 2 + 1):
        step = h[i] - h[i - 1]
        if step:
            g = g + LaurentPoly({
                k: monotone_coefficient(n, i, k) for k in range(1, min(i, n - i) + 1)
            }).scale(step)
    return g


def g_shifted_basis(h: Sequence[Number], n: int) -> LaurentPoly:
    _check_h(h, n)
    powers = [X_MINUS_ONE ** k for k in range(n // 2 + 1)]
    g = (LaurentPoly.constant(2 - n) - X_MINUS_ONE.scale(n - 1)).scale(h[0])
    for i in range(1, n):
        for k in range(n // 2 + 1):
            value = sigma(n, i, k)
            if value:
                g = g + powers[k].scale(h[i] * value)
    return g


# --- cubes ---

def gessel_cube_g(n: int) -> LaurentPoly:
    """g of [0, 1) for the n-cube: sum_k C(n-k, k) Catalan(n-k) (x-1)^k."""
    if n < 1:
        raise ParameterOutOfRange(f"n must be >= 1, got {n}")
    return sum(
        ((X_MINUS_ONE ** k).scale(binom(n - k, k) * catalan(n - k)) for k in range(n // 2 + 1)),
        LaurentPoly.zero(),
    )


def gessel_cube_g_binomial(n: int) -> LaurentPoly:
    """The same polynomial as sum_k C(n, k) C(2n-2k, n) / (n-k+1) (x-1)^k."""
    if n < 1:
        raise ParameterOutOfRange(f"n must be >= 1, got {n}")
    return sum(
        (
            (X_MINUS_ONE ** k).scale(Fraction(binom(n, k) * binom(2 * n - 2 * k, n), n - k + 1))
            for k in range(n // 2 + 1)
        ),
        LaurentPoly.zero(),
    )


@dataclass(frozen=True)
class GLBVerdict:
    """holds is None when the symmetric/monotone preconditions fail."""

    holds: Optional[bool]
    reason: str


def glb_nonnegativity_check(h: Sequence[Number], n: int) -> GLBVerdict:
    if len(h) != n + 1 or any(h[i] != h[n - i] for i in range(n + 1)):
        return GLBVerdict(None, "h is not symmetric")
    if any(h[i] > h[i + 1] for i in range(n // 2)):
        return GLBVerdict(None, "h is not monotone up to the middle")
    g = g_dual_monotone(h, n)
    if any(value < 0 for _, value in g.terms()):
        return GLBVerdict(False, f"g = {g} has a negative coefficient")
    f = f_closed_interval(g, n)
    if any(value < 0 for _, value in f.terms()):
        return GLBVerdict(False, f"f([0, 1]) = {f} has a negative coefficient")
    return GLBVerdict(True, f"g = {g}")
