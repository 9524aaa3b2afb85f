"""
Toric invariants of graded posets.

Stanley's intertwined f/g recurrence, the short toric polynomial st by its
recurrence, by Fine's flag formula, by symmetric transfer from f and by
substituting the C/D operators into the cd-index, plus the g/st transfer
and the reduced Euler characteristic.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Union

from components.bases import OPERATORS, t_poly
from components.flags import FlagVector
from components.lattice_paths import path_table
from components.laurent import (
    X,
    X_INV,
    LaurentPoly,
    is_mult_symmetric,
    to_additive_variant,
    to_multiplicative_variant,
)
from components.ncindex import NCPoly, require_eulerian
from components.poset import Poset, half_open_interval, is_lower_eulerian
from utils.errors import (
    AlphabetMismatch,
    KindMismatch,
    NotEulerian,
    NotLowerEulerian,
    NotMultSymmetric,
    ParameterOutOfRange,
    UnexpectedParity,
)

ONE_MINUS_X = LaurentPoly({0: 1, 1: -1})
X_MINUS_ONE = LaurentPoly({0: -1, 1: 1})
X_MINUS_X_INV = X - X_INV
X_INV_MINUS_X = X_INV - X


@dataclass(frozen=True)
class ToricPair:
    """f and g of [0, 1) for a graded Eulerian poset; n = rank(1) - 1."""

    f: LaurentPoly
    g: LaurentPoly
    n: int

    def to_json(self) -> dict:
        return {"f": self.f.to_json(), "g": self.g.to_json(), "n": self.n}


@dataclass(frozen=True)
class ShortToric:
    """An additively symmetric polynomial of degree at most n."""

    poly: LaurentPoly
    n: int

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ShortToric):
            return self.poly == other.poly
        if isinstance(other, (LaurentPoly, int, Fraction)):
            return self.poly == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.poly)

    def __str__(self) -> str:
        return str(self.poly)

    def to_json(self) -> dict:
        return {"poly": self.poly.to_json(), "n": self.n}


class _Powers:
    """Lazily extended powers of a fixed polynomial."""

    def __init__(self, base: LaurentPoly):
        self.base = base
        self._table: List[LaurentPoly] = [LaurentPoly.one()]

    def __getitem__(self, k: int) -> LaurentPoly:
        while len(self._table) <= k:
            self._table.append(self._table[-1] * self.base)
        return self._table[k]


def _grouped_sum(P: Poset, members, values: Dict[int, LaurentPoly]) -> Dict[int, LaurentPoly]:
    """Sums values[z] over the given elements, grouped by rank."""
    by_rank: Dict[int, LaurentPoly] = {}
    for z in members:
        value = values[z]
        if value.is_zero():
            continue
        r = P.ranks[z]
        by_rank[r] = by_rank[r] + value if r in by_rank else value
    return by_rank


# --- Stanley's f/g ---

def _lower_interval_table(P: Poset) -> Dict[int, ToricPair]:
    """
    f([0, p)) and g([0, p)) for every p, by the intertwined recurrence.

    Elements are indexed in rank order, so every [0, q) with q < p is
    already in the table when [0, p) is reached. Results are only
    meaningful where [0, p] is Eulerian.
    """
    bottom = P.require_bottom()
    powers = _Powers(X_MINUS_ONE)
    g_values: Dict[int, LaurentPoly] = {}
    table: Dict[int, ToricPair] = {}
    for p in range(len(P)):
        rank = P.ranks[p]
        if p == bottom:
            pair = ToricPair(LaurentPoly.one(), LaurentPoly.one(), -1)
        else:
            f = LaurentPoly.zero()
            for r, total in _grouped_sum(P, P.below_lists[p], g_values).items():
                f = f + total * powers[rank - 1 - r]
            g = (ONE_MINUS_X * f).truncate_le((rank - 1) // 2)
            pair = ToricPair(f, g, rank - 1)
        table[p] = pair
        g_values[p] = pair.g
    return table


def stanley_f_g(P: Poset) -> ToricPair:
    """
    Stanley's toric f and g of the half-open interval [0, 1) of P.

    Args:
        P (Poset): A graded Eulerian poset.

    Returns:
        ToricPair: f multiplicatively symmetric of degree rank(1) - 1.
    """
    require_eulerian(P)
    top = P.require_top()
    pair = _lower_interval_table(P)[top]
    if not is_mult_symmetric(pair.f, pair.n):
        raise NotEulerian(f"toric f {pair.f} is not symmetric of degree {pair.n}")
    return pair


def toric_h_vector(t: ToricPair) -> List[int]:
    """(h_0, ..., h_n) with sum h_i x^i = x^n f(1/x)."""
    out = []
    for i in range(t.n + 1):
        value = t.f.coefficient(t.n - i)
        out.append(int(value) if value.denominator == 1 else value)
    return out


def f_lower_eulerian(P: Poset) -> LaurentPoly:
    """
    Stanley's extended toric f: sum over p of g([0, p)) (x-1)^{n - rank p},
    with n the length of the longest chain.
    """
    if not is_lower_eulerian(P):
        raise NotLowerEulerian("some lower interval [0, p] is not Eulerian")
    n = P.longest_chain
    powers = _Powers(X_MINUS_ONE)
    table = _lower_interval_table(P)
    total = LaurentPoly.zero()
    for r, g_sum in _grouped_sum(P, range(len(P)), {p: pair.g for p, pair in table.items()}).items():
        total = total + g_sum * powers[n - r]
    return total


def f_closed_interval(g: LaurentPoly, n: int) -> LaurentPoly:
    """f([0, 1]) = x^{n+1} g([0, 1), 1/x)."""
    return g.substitute_power(-1).shift(n + 1)


def f_from_g(g: LaurentPoly, n: int) -> LaurentPoly:
    """The multiplicatively symmetric f of degree n with U_{<=n/2}((1-x) f) = g."""
    g._require_ordinary()
    coeffs = [Fraction(0)] * (n + 1)
    running = Fraction(0)
    for k in range(n // 2 + 1):
        running += g.coefficient(k)
        coeffs[k] = running
        coeffs[n - k] = running
    return LaurentPoly.from_coefficients(coeffs)


# --- short toric polynomial ---

def st_recurrence(P: Poset) -> ShortToric:
    """
    st(P) = U_{>=0}((1/x - x)^n + sum_{p > 0} U_{>=1}(st([0, p))(x - 1/x)) (1/x - x)^{n - rank p}).

    n is the maximal rank of P; the empty poset gives 1. Each lower
    interval [0, p) is evaluated once, in rank order.
    """
    if P.is_empty():
        return ShortToric(LaurentPoly.one(), 0)
    bottom = P.require_bottom()
    powers = _Powers(X_INV_MINUS_X)
    lifted: Dict[int, LaurentPoly] = {bottom: LaurentPoly.zero()}

    def combine(members, top_rank: int) -> LaurentPoly:
        total = powers[top_rank]
        for r, value in _grouped_sum(P, members, lifted).items():
            total = total + value * powers[top_rank - r]
        return total.truncate_ge(0)

    for p in range(len(P)):
        if p == bottom:
            continue
        half_open = combine(P.below_lists[p], P.ranks[p] - 1)
        lifted[p] = (half_open * X_MINUS_X_INV).truncate_ge(1)

    n = P.max_rank
    return ShortToric(combine(range(len(P)), n), n)


def short_toric(P: Poset) -> ShortToric:
    """st of [0, 1) when P has a top element, of P itself otherwise."""
    if P.is_graded and len(P) > 1:
        P = half_open_interval(P, P.ids[P.require_bottom()], P.ids[P.top])
    return st_recurrence(P)


def st_from_f(f: LaurentPoly, n: int) -> ShortToric:
    """U_{>=0}(x^{-n} f(x^2))."""
    if not is_mult_symmetric(f, n):
        raise NotMultSymmetric(f"{f} is not multiplicatively symmetric of degree {n}")
    return ShortToric(to_additive_variant(f, n), n)


def f_from_st(t: ShortToric) -> LaurentPoly:
    return to_multiplicative_variant(t.poly, t.n)


def g_from_st(t: ShortToric) -> LaurentPoly:
    """Reads g off U_{>=1}(st (x - 1/x)) = x^{n+1} g(x^{-2})."""
    lifted = (t.poly * X_MINUS_X_INV).truncate_ge(1)
    coeffs: Dict[int, Fraction] = {}
    for exp, value in lifted.coeffs.items():
        offset = t.n + 1 - exp
        if offset < 0 or offset % 2:
            raise UnexpectedParity(f"exponent {exp} does not match degree {t.n}")
        coeffs[offset // 2] = value
    return LaurentPoly(coeffs)


def _alternating_subset_sums(f: FlagVector) -> List[Fraction]:
    """alt[T] = sum over S in T of (-1)^{|S|} f_S, by a subset-sum sweep."""
    alt = [(-1) ** S.bit_count() * f.values[S] for S in range(1 << f.n)]
    for bit in range(f.n):
        step = 1 << bit
        for mask in range(1 << f.n):
            if mask & step:
                alt[mask] += alt[mask ^ step]
    return alt


def _require_flag_f(f: FlagVector, n: Optional[int]) -> int:
    if f.kind != "F":
        raise KindMismatch(f"expected an F flag vector, got {f.kind}")
    if n is not None and n != f.n:
        raise ParameterOutOfRange(f"flag vector spans [1, {f.n}] but n = {n}")
    return f.n


def fine_f(f: FlagVector, n: Optional[int] = None) -> LaurentPoly:
    """sum over S and sign vectors with S(lambda) containing S of (-1)^{|S|+n-i} f_S x^i."""
    n = _require_flag_f(f, n)
    alt = _alternating_subset_sums(f)
    return LaurentPoly.from_terms(
        (rec.i, (-1) ** (n - rec.i) * alt[rec.S]) for rec in path_table(n)
    )


def fine_st(f: FlagVector, n: Optional[int] = None) -> ShortToric:
    """Same sum as fine_f, read in the additive variable; n must match the span of f when given."""
    n = _require_flag_f(f, n)
    alt = _alternating_subset_sums(f)
    poly = LaurentPoly.from_terms(
        (n - 2 * rec.i, (-1) ** (n - rec.i) * alt[rec.S])
        for rec in path_table(n)
        if n - 2 * rec.i >= 0
    )
    return ShortToric(poly, n)


def apply_cd_word(word: str) -> LaurentPoly:
    """Applies the letter operators to 1, first letter first."""
    value = LaurentPoly.one()
    for letter in word:
        value = OPERATORS[letter](value)
    return value


def st_via_cd(phi: NCPoly) -> ShortToric:
    if phi.alphabet != "CD":
        raise AlphabetMismatch(f"st_via_cd needs a CD polynomial, got {phi.alphabet}")
    total = LaurentPoly.zero()
    for word, value in phi.terms.items():
        total = total + apply_cd_word(word).scale(value)
    n = max(phi.degrees(), default=0)
    return ShortToric(total, n)


class Transfer(NamedTuple):
    st: ShortToric
    g: LaurentPoly
    consistent: bool


def g_st_transfer(coeffs: Sequence[Union[int, Fraction]], n: int) -> Transfer:
    """
    Builds st = sum c_k t_{n-2k} and g = sum c_k x^k and checks that each
    determines the other.
    """
    st = ShortToric(
        sum((t_poly(n - 2 * k).scale(c) for k, c in enumerate(coeffs)), LaurentPoly.zero()),
        n,
    )
    g = LaurentPoly.from_coefficients(coeffs)
    forward = g_from_st(st) == g
    backward = st_from_f(f_from_g(g, n), n) == st
    return Transfer(st, g, forward and backward)


def reduced_euler_char(P: Poset) -> Fraction:
    """
    sum_S (-1)^{|S|} f_S over the chains of P starting at 0, computed as
    the sum of the Moebius values mu(0, p).
    """
    bottom = P.require_bottom()
    mobius = [0] * len(P)
    mobius[bottom] = 1
    for v in range(len(P)):
        if v != bottom:
            mobius[v] = -sum(mobius[u] for u in P.below_lists[v])
    return Fraction(sum(mobius))