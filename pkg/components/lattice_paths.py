"""
Brute-force sign-vector and lattice-path enumerators.

Every oracle here walks the full space {-1, +1}^n without pruning; they
are correctness anchors for the faster routes in toric.py, capped at
ORACLE_MAX_N.
"""
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import List, NamedTuple, Optional, Tuple

from components.bases import Q_poly, catalan
from components.flags import FlagVector, evenly_contains, is_even_set, runs
from components.laurent import LaurentPoly
from components.ncindex import NCPoly
from utils.errors import AlphabetMismatch, KindMismatch, ParameterOutOfRange
from utils.params import ORACLE_MAX_N


@dataclass(frozen=True)
class SignVector:
    """lambda in {-1, +1}^n; S, R and i are recomputed on every access."""

    entries: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def prefix_sums(self) -> List[int]:
        sums, acc = [], 0
        for step in self.entries:
            acc += step
            sums.append(acc)
        return sums

    @property
    def total(self) -> int:
        return sum(self.entries)

    @property
    def S(self) -> int:
        """Bitmask of {s : lambda_1 + ... + lambda_s > 0}."""
        return sum(1 << s for s, value in enumerate(self.prefix_sums) if value > 0)

    @property
    def R(self) -> int:
        """Bitmask of {i : lambda_1 + ... + lambda_i = 0}."""
        return sum(1 << i for i, value in enumerate(self.prefix_sums) if value == 0)

    @property
    def i_lambda(self) -> int:
        return self.entries.count(-1)

    @property
    def min_prefix(self) -> int:
        return min(self.prefix_sums, default=0)


class PathRecord(NamedTuple):
    S: int
    R: int
    i: int
    total: int
    min_prefix: int


def _check_n(n: int) -> None:
    if n < 0 or n > ORACLE_MAX_N:
        raise ParameterOutOfRange(f"path oracles need 0 <= n <= {ORACLE_MAX_N}, got {n}")


def sign_vectors(n: int):
    _check_n(n)
    for entries in product((1, -1), repeat=n):
        yield SignVector(entries)


@lru_cache(maxsize=None)
def path_table(n: int) -> Tuple[PathRecord, ...]:
    """Derived data of every sign vector of length n."""
    return tuple(
        PathRecord(lam.S, lam.R, lam.i_lambda, lam.total, lam.min_prefix)
        for lam in sign_vectors(n)
    )


def _monomial(exp: int, sign: int, factor: int = 1) -> Tuple[int, int]:
    return exp, sign * factor


def _reflected_cover(R: int) -> int:
    """R(lambda) union (R(lambda) - 1)."""
    return R | (R >> 1)


def st_ce_all(S: int, n: int) -> LaurentPoly:
    """All sign vectors with nonnegative total whose zero set S evenly contains."""
    terms = []
    for rec in path_table(n):
        if rec.total < 0 or not evenly_contains(S, _reflected_cover(rec.R)):
            continue
        plus = n - rec.i
        sign = (-1) ** (plus + (rec.S & ~S).bit_count())
        terms.append(_monomial(n - 2 * rec.i, sign))
    return LaurentPoly.from_terms(terms)


def st_ce_reflected(S: int, n: int) -> LaurentPoly:
    """Paths weakly above the axis; each return to the axis counts twice."""
    terms = []
    for rec in path_table(n):
        if rec.min_prefix < 0 or not evenly_contains(S, _reflected_cover(rec.R)):
            continue
        terms.append(_monomial(n - 2 * rec.i, (-1) ** rec.i, 2 ** rec.R.bit_count()))
    return LaurentPoly.from_terms(terms)


def d_cover(word: str) -> Tuple[int, int]:
    """(degree, bitmask of the positions covered by the letters d)."""
    mask, pos = 0, 1
    for letter in word:
        if letter == "d":
            mask |= 0b11 << (pos - 1)
            pos += 2
        elif letter == "c":
            pos += 1
        else:
            raise AlphabetMismatch(f"{word!r} is not a cd-word")
    return pos - 1, mask


def st_cd_word_paths(word: str) -> LaurentPoly:
    n, covered = d_cover(word)
    terms = []
    for rec in path_table(n):
        if rec.min_prefix < 0 or _reflected_cover(rec.R) != covered:
            continue
        terms.append(_monomial(n - 2 * rec.i, (-1) ** (rec.i + rec.R.bit_count())))
    return LaurentPoly.from_terms(terms)


def q_poly_paths(n: int) -> LaurentPoly:
    """Paths staying strictly above the axis after the start, weights x and -1/x."""
    terms = [
        _monomial(n - 2 * rec.i, (-1) ** rec.i)
        for rec in path_table(n)
        if n == 0 or rec.min_prefix >= 1
    ]
    return LaurentPoly.from_terms(terms)


def x_to_q_paths(n: int) -> LaurentPoly:
    """
    Three-step model: northeast (1,1) weighs x, southeast (1,-1) weighs -1/x,
    the long horizontal (2,0) weighs 1; every point after the start has
    height at least 1. The total weight is x^n.
    """
    _check_n(n)
    return _walk(n, 0)


@lru_cache(maxsize=None)
def _walk(remaining: int, height: int) -> LaurentPoly:
    if remaining == 0:
        return LaurentPoly.one()
    total = _walk(remaining - 1, height + 1).shift(1)
    if height >= 2:
        total = total - _walk(remaining - 1, height - 1).shift(-1)
    if height >= 1 and remaining >= 2:
        total = total + _walk(remaining - 2, height)
    return total


@dataclass(frozen=True)
class SparseIntervals:
    """Intervals [i_k, j_k] with j_k + 1 < i_{k+1}; their union is the source set."""

    intervals: Tuple[Tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.intervals)

    def union(self) -> int:
        mask = 0
        for i, j in self.intervals:
            for s in range(i, j + 1):
                mask |= 1 << (s - 1)
        return mask


def sparse_intervals(S: int) -> SparseIntervals:
    return SparseIntervals(tuple(runs(S)))


def st_h_bruteforce(S: int, n: int) -> LaurentPoly:
    size = S.bit_count()
    terms = [
        _monomial(n - 2 * rec.i, (-1) ** (size + n - rec.i))
        for rec in path_table(n)
        if rec.total >= 0 and rec.S == S
    ]
    return LaurentPoly.from_terms(terms)


def _half(value: int) -> Optional[int]:
    if value < 0 or value % 2:
        return None
    return value // 2


def st_h_closed(S: int, n: int) -> LaurentPoly:
    """
    Catalan-product form of st_h(S, n).

    With I[S] = [i_1, j_1], ..., [i_r, j_r] and j_0 = -1: run k contributes
    C_{(j_k - i_k)/2}, the gap before it C_{(i_k - j_{k-1} - 2)/2}. When
    j_r < n the tail gives C_{(n - j_r - 1)/2} and the sign is
    (-1)^{r + n/2}; when j_r = n the last run gives Q_{n - i_r + 1} with sign
    (-1)^{r - 1 + (i_r - 1)/2}. Any odd index makes the value zero.
    """
    intervals = sparse_intervals(S).intervals
    r = len(intervals)
    ends_at_n = r > 0 and intervals[-1][1] == n
    value = 1
    previous_end = -1
    for k, (i, j) in enumerate(intervals):
        gap = _half(i - previous_end - 2)
        if gap is None:
            return LaurentPoly.zero()
        value *= catalan(gap)
        if not (ends_at_n and k == r - 1):
            inner = _half(j - i)
            if inner is None:
                return LaurentPoly.zero()
            value *= catalan(inner)
        previous_end = j

    if ends_at_n:
        i_r = intervals[-1][0]
        return Q_poly(n - i_r + 1).scale(value * (-1) ** (r - 1 + (i_r - 1) // 2))

    tail = _half(n - previous_end - 1)
    if tail is None:
        return LaurentPoly.zero()
    return LaurentPoly.constant(value * catalan(tail) * (-1) ** (r + n // 2))


def st_h_closed_literal(S: int, n: int) -> Optional[LaurentPoly]:
    """
    The Catalan-product formula read exactly as printed: j_0 = 0, gap
    indices (i_k - j_{k-1})/2, tail (n - j_r)/2, and sign
    (-1)^{r + (i_r - 1)/2} when j_r = n. None where an index is not a
    nonnegative integer.
    """
    intervals = sparse_intervals(S).intervals
    r = len(intervals)
    ends_at_n = r > 0 and intervals[-1][1] == n
    value = 1
    previous_end = 0
    for k, (i, j) in enumerate(intervals):
        gap = _half(i - previous_end)
        if gap is None:
            return None
        value *= catalan(gap)
        if not (ends_at_n and k == r - 1):
            inner = _half(j - i)
            if inner is None:
                return None
            value *= catalan(inner)
        previous_end = j

    if ends_at_n:
        i_r = intervals[-1][0]
        exponent = _half(i_r - 1)
        if exponent is None:
            return None
        return Q_poly(n - i_r + 1).scale(value * (-1) ** (r + exponent))

    tail = _half(n - previous_end)
    centre = _half(n)
    if tail is None or centre is None:
        return None
    return LaurentPoly.constant(value * catalan(tail) * (-1) ** (r + centre))


def st_from_flag_h(h: FlagVector) -> LaurentPoly:
    """st = sum_S h_S st_h(S, n)."""
    if h.kind != "H":
        raise KindMismatch(f"expected an H flag vector, got {h.kind}")
    table = st_h_table(h.n)
    total = LaurentPoly.zero()
    for S, value in h.values.items():
        if value:
            total = total + table[S].scale(value)
    return total


def st_from_ce(ce: NCPoly) -> LaurentPoly:
    """sum over even S of L_S st_ce_all(S, n), reading L_S off the ce-index."""
    if ce.alphabet != "CE":
        raise AlphabetMismatch(f"expected a CE polynomial, got {ce.alphabet}")
    total = LaurentPoly.zero()
    for word, value in ce.terms.items():
        S = sum(1 << pos for pos, letter in enumerate(word) if letter == "e")
        if is_even_set(S):
            total = total + st_ce_all(S, len(word)).scale(value)
    return total


def st_from_cd_paths(cd: NCPoly) -> LaurentPoly:
    if cd.alphabet != "CD":
        raise AlphabetMismatch(f"expected a CD polynomial, got {cd.alphabet}")
    total = LaurentPoly.zero()
    for word, value in cd.terms.items():
        total = total + st_cd_word_paths(word).scale(value)
    return total


def even_sets(n: int) -> List[int]:
    return [S for S in range(1 << n) if is_even_set(S)]


def st_h_table(n: int) -> List[LaurentPoly]:
    """st_h_bruteforce(S, n) for every S, from a single pass over the sign vectors."""
    buckets: List[list] = [[] for _ in range(1 << n)]
    for rec in path_table(n):
        if rec.total >= 0:
            buckets[rec.S].append(_monomial(n - 2 * rec.i, (-1) ** (rec.S.bit_count() + n - rec.i)))
    return [LaurentPoly.from_terms(terms) for terms in buckets]
