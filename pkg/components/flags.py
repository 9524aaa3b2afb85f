from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Union

from components.poset import Poset, iter_bits
from utils.errors import KindMismatch, ParameterOutOfRange
from utils.params import MAX_RANK

VALID_KINDS = ("F", "H", "L")


def to_mask(subset: Iterable[int]) -> int:
    """{1, 3} -> 0b101; element i of [1, n] lives on bit i-1."""
    mask = 0
    for i in subset:
        mask |= 1 << (i - 1)
    return mask


def from_mask(mask: int) -> List[int]:
    return [b + 1 for b in iter_bits(mask)]


def submasks(mask: int) -> Iterator[int]:
    """All submasks of mask, including 0 and mask itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def runs(mask: int) -> List[tuple]:
    """Maximal runs of consecutive elements of a subset of [1, n], as (start, end) pairs."""
    out = []
    elements = from_mask(mask)
    for i in elements:
        if out and out[-1][1] == i - 1:
            out[-1] = (out[-1][0], i)
        else:
            out.append((i, i))
    return out


def is_even_set(mask: int) -> bool:
    return all((end - start + 1) % 2 == 0 for start, end in runs(mask))


def evenly_contains(S: int, R: int) -> bool:
    return R & ~S == 0 and is_even_set(S & ~R)


class FlagVector:
    """A function on the subsets of [1, n], stored by bitmask."""

    def __init__(self, n: int, kind: str, values: Dict[int, Union[int, Fraction]]):
        if kind not in VALID_KINDS:
            raise KindMismatch(f"unknown flag vector kind {kind!r}")
        if n > MAX_RANK:
            raise ParameterOutOfRange(f"rank span {n} exceeds {MAX_RANK}")
        self.n = n
        self.kind = kind
        self.values: Dict[int, Fraction] = {S: Fraction(values.get(S, 0)) for S in range(1 << n)}

    def __getitem__(self, S: Union[int, Iterable[int]]) -> Fraction:
        if not isinstance(S, int):
            S = to_mask(S)
        return self.values[S]

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FlagVector):
            return NotImplemented
        return (self.n, self.kind, self.values) == (other.n, other.kind, other.values)

    def __repr__(self) -> str:
        shown = ", ".join(f"{from_mask(S)}: {v}" for S, v in self.values.items() if v)
        return f"FlagVector(n={self.n}, kind={self.kind}, {{{shown}}})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "kind": self.kind,
            "values": {str(S): [v.numerator, v.denominator] for S, v in sorted(self.values.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> "FlagVector":
        values = {int(S): Fraction(int(num), int(den)) for S, (num, den) in data["values"].items()}
        return cls(int(data["n"]), data["kind"], values)


def _require_kind(vector: FlagVector, kind: str) -> None:
    if vector.kind != kind:
        raise KindMismatch(f"expected a {kind} flag vector, got {vector.kind}")


def flag_f(P: Poset, interior: Optional[bool] = None) -> FlagVector:
    """
    Flag f-vector: f_S counts the chains whose rank set is exactly S.

    For a graded poset the ranks run over the open interior [1, rank(1)-1];
    with interior=False (or for a poset without 1) they run over [1, max rank].
    """
    bottom = P.require_bottom()
    if interior is None:
        interior = P.is_graded and P.max_rank >= 1
    n = P.max_rank - 1 if interior else P.max_rank
    if n > MAX_RANK:
        raise ParameterOutOfRange(f"rank span {n} exceeds {MAX_RANK}")

    levels = P.by_rank
    # chains ending at each element, keyed by rank set
    ending: Dict[int, Dict[int, int]] = {0: {bottom: 1}}
    values: Dict[int, int] = {0: 1}
    for S in range(1, 1 << n):
        top_bit = S.bit_length()
        rest = S & ~(1 << (top_bit - 1))
        previous = ending[rest]
        counts = {}
        for v in levels[top_bit]:
            below = P.below[v]
            total = sum(c for u, c in previous.items() if below >> u & 1)
            if total:
                counts[v] = total
        ending[S] = counts
        values[S] = sum(counts.values())
    return FlagVector(n, "F", values)


def h_from_f(f: FlagVector) -> FlagVector:
    _require_kind(f, "F")
    values = {}
    for S in range(1 << f.n):
        size = S.bit_count()
        values[S] = sum(
            ((-1) ** (size - T.bit_count()) * f.values[T] for T in submasks(S)),
            Fraction(0),
        )
    return FlagVector(f.n, "H", values)


def f_from_h(h: FlagVector) -> FlagVector:
    _require_kind(h, "H")
    values = {S: sum((h.values[T] for T in submasks(S)), Fraction(0)) for S in range(1 << h.n)}
    return FlagVector(h.n, "F", values)


def L_from_f(f: FlagVector) -> FlagVector:
    """L_S = (-1)^{n-|S|} sum over T containing the complement of S of (-1/2)^{|T|} f_T."""
    _require_kind(f, "F")
    values = {}
    for S in range(1 << f.n):
        complement = f.full & ~S
        total = Fraction(0)
        for extra in submasks(S):
            T = complement | extra
            total += Fraction(-1, 2) ** T.bit_count() * f.values[T]
        values[S] = (-1) ** (f.n - S.bit_count()) * total
    return FlagVector(f.n, "L", values)


def f_from_L(L: FlagVector) -> FlagVector:
    _require_kind(L, "L")
    values = {}
    for S in range(1 << L.n):
        complement = L.full & ~S
        values[S] = 2 ** S.bit_count() * sum((L.values[T] for T in submasks(complement)), Fraction(0))
    return FlagVector(L.n, "F", values)
