from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from utils.errors import (
    CycleDetected,
    InputError,
    MultipleMinima,
    NoMinimum,
    NoRank,
    NotComparable,
    NotGraded,
    ParameterOutOfRange,
    RankMismatch,
)
from utils.params import MAX_RANK


def iter_bits(mask: int) -> Iterator[int]:
    """Yields the positions of the set bits of mask, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class FVector:
    """(f_{-1}, f_0, ..., f_n): f_i counts the elements of rank i+1."""

    entries: Tuple[int, ...]

    def f(self, i: int) -> int:
        return self.entries[i + 1]

    @property
    def n(self) -> int:
        return len(self.entries) - 2


class Poset:
    """
    Finite ranked poset with a unique minimum, stored by dense indices.

    Elements are indexed in (rank, id) order; covers go from lower to upper
    index. The instance is immutable apart from the write-once flag cache.
    """

    FLAG_NAMES = ("graded", "eulerian", "simplicial", "dual_simplicial", "lower_eulerian")

    def __init__(self, ids: Sequence[str], ranks: Sequence[int], covers: Iterable[Tuple[int, int]]):
        self.ids: Tuple[str, ...] = tuple(ids)
        self.ranks: Tuple[int, ...] = tuple(ranks)
        self.index: Dict[str, int] = {name: i for i, name in enumerate(self.ids)}

        upper: List[List[int]] = [[] for _ in self.ids]
        lower: List[List[int]] = [[] for _ in self.ids]
        for u, v in covers:
            upper[u].append(v)
            lower[v].append(u)
        self.upper_covers: Tuple[Tuple[int, ...], ...] = tuple(tuple(sorted(c)) for c in upper)
        self.lower_covers: Tuple[Tuple[int, ...], ...] = tuple(tuple(sorted(c)) for c in lower)

        self._flags: Dict[str, Optional[bool]] = {name: None for name in self.FLAG_NAMES}
        self._flags["graded"] = self.top is not None

    @classmethod
    def empty(cls) -> "Poset":
        return cls((), (), ())

    # --- structure ---

    def __len__(self) -> int:
        return len(self.ids)

    def is_empty(self) -> bool:
        return not self.ids

    @cached_property
    def bottom(self) -> Optional[int]:
        minima = [i for i, low in enumerate(self.lower_covers) if not low]
        return minima[0] if len(minima) == 1 else None

    @cached_property
    def top(self) -> Optional[int]:
        maxima = [i for i, up in enumerate(self.upper_covers) if not up]
        return maxima[0] if len(maxima) == 1 else None

    @property
    def is_graded(self) -> bool:
        return self.top is not None

    @cached_property
    def max_rank(self) -> int:
        return max(self.ranks) if self.ranks else -1

    @cached_property
    def longest_chain(self) -> int:
        """Length of the longest chain starting at the minimum."""
        longest = [0] * len(self)
        for v in range(len(self)):
            for u in self.lower_covers[v]:
                longest[v] = max(longest[v], longest[u] + 1)
        return max(longest) if longest else -1

    @cached_property
    def rank_gaps(self) -> Tuple[int, ...]:
        present = set(self.ranks)
        return tuple(r for r in range(self.max_rank + 1) if r not in present)

    @cached_property
    def by_rank(self) -> Tuple[Tuple[int, ...], ...]:
        levels: List[List[int]] = [[] for _ in range(self.max_rank + 1)]
        for i, r in enumerate(self.ranks):
            levels[r].append(i)
        return tuple(tuple(level) for level in levels)

    @cached_property
    def below(self) -> Tuple[int, ...]:
        """Strict down-set of every element as a bitmask."""
        masks = [0] * len(self)
        for v in range(len(self)):
            m = 0
            for u in self.lower_covers[v]:
                m |= masks[u] | (1 << u)
            masks[v] = m
        return tuple(masks)

    @cached_property
    def above(self) -> Tuple[int, ...]:
        """Strict up-set of every element as a bitmask."""
        masks = [0] * len(self)
        for u in reversed(range(len(self))):
            m = 0
            for v in self.upper_covers[u]:
                m |= masks[v] | (1 << v)
            masks[u] = m
        return tuple(masks)

    @cached_property
    def below_lists(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(iter_bits(m)) for m in self.below)

    @cached_property
    def parity_masks(self) -> Tuple[int, int]:
        even = odd = 0
        for i, r in enumerate(self.ranks):
            if r % 2:
                odd |= 1 << i
            else:
                even |= 1 << i
        return even, odd

    def leq(self, u: int, v: int) -> bool:
        return u == v or bool(self.below[v] >> u & 1)

    def interval_mask(self, u: int, v: int) -> int:
        """Bitmask of the closed interval [u, v]; 0 when u is not below v."""
        if not self.leq(u, v):
            return 0
        return ((self.above[u] | 1 << u) & (self.below[v] | 1 << v))

    def element(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise InputError(f"unknown element {name!r}") from None

    def require_bottom(self) -> int:
        if self.bottom is None:
            raise NoMinimum("poset has no unique minimum")
        return self.bottom

    def require_top(self) -> int:
        if self.top is None:
            raise NotGraded("poset has no unique maximal element")
        return self.top

    def cover_pairs(self) -> List[Tuple[str, str]]:
        return sorted(
            ((self.ids[u], self.ids[v]) for u in range(len(self)) for v in self.upper_covers[u]),
            key=lambda pair: (self.ranks[self.index[pair[0]]], pair[0], pair[1]),
        )

    def cover_graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.ids)
        graph.add_edges_from(self.cover_pairs())
        return graph

    @property
    def flags(self) -> Dict[str, Optional[bool]]:
        return dict(self._flags)

    def _cache_flag(self, name: str, value: bool) -> bool:
        if self._flags[name] is None:
            self._flags[name] = value
        return self._flags[name]

    def induced(self, mask: int, base_rank: int) -> "Poset":
        """Induced subposet on a convex set of elements, ranks shifted down by base_rank."""
        members = list(iter_bits(mask))
        remap = {old: new for new, old in enumerate(members)}
        covers = [
            (remap[u], remap[v])
            for u in members
            for v in self.upper_covers[u]
            if v in remap
        ]
        return Poset(
            [self.ids[i] for i in members],
            [self.ranks[i] - base_rank for i in members],
            covers,
        )

    def __repr__(self) -> str:
        return f"Poset(|P|={len(self)}, max_rank={self.max_rank}, graded={self.is_graded})"


def from_covers(
    pairs: Iterable[Tuple[str, str]],
    explicit_ranks: Optional[Dict[str, int]] = None,
    elements: Optional[Iterable[str]] = None,
) -> Poset:
    """
    Validates a cover relation and builds the Poset.

    Args:
        pairs (iterable): Cover pairs (lower, upper) of element ids.
        explicit_ranks (dict, optional): Rank of every element; inferred as the
            longest chain from the minimum when absent.
        elements (iterable, optional): Extra element ids, e.g. for a one-point poset.

    Returns:
        Poset: The validated poset, elements indexed in (rank, id) order.
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(str(e) for e in (elements or ()))
    graph.add_edges_from((str(u), str(v)) for u, v in pairs)

    if graph.number_of_nodes() == 0:
        raise NoMinimum("a poset needs at least one element")

    if not nx.is_directed_acyclic_graph(graph):
        cycle = nx.find_cycle(graph)
        raise CycleDetected("cover relation contains a cycle", witness=[u for u, _ in cycle])

    minima = sorted(node for node, degree in graph.in_degree() if degree == 0)
    if len(minima) != 1:
        raise MultipleMinima(f"{len(minima)} minimal elements", witness=minima)

    if explicit_ranks is not None:
        ranks = {str(k): int(v) for k, v in explicit_ranks.items()}
        missing = sorted(node for node in graph if node not in ranks)
        if missing:
            raise NoRank("elements without a rank", witness=missing)
        if ranks[minima[0]] != 0:
            raise RankMismatch("the minimum must have rank 0", witness=minima)
    else:
        ranks = {}
        for node in nx.topological_sort(graph):
            ranks[node] = max((ranks[u] + 1 for u in graph.predecessors(node)), default=0)

    for u, v in graph.edges():
        if ranks[v] != ranks[u] + 1:
            raise RankMismatch(f"cover ({u}, {v}) jumps from rank {ranks[u]} to {ranks[v]}", witness=[u, v])

    if max(ranks[node] for node in graph) > MAX_RANK + 1:
        raise ParameterOutOfRange(f"rank exceeds the supported maximum {MAX_RANK + 1}")

    ids = sorted(graph.nodes(), key=lambda node: (ranks[node], node))
    index = {name: i for i, name in enumerate(ids)}
    return Poset(
        ids,
        [ranks[name] for name in ids],
        [(index[u], index[v]) for u, v in graph.edges()],
    )


def dual(P: Poset) -> Poset:
    """Reverses the order; ranks become rank(1) - rank(x)."""
    top = P.require_top()
    height = P.ranks[top]
    return from_covers(
        [(v, u) for u, v in P.cover_pairs()],
        explicit_ranks={name: height - P.ranks[i] for i, name in enumerate(P.ids)},
        elements=P.ids,
    )


def _comparable_pair(P: Poset, u: str, v: str) -> Tuple[int, int]:
    iu, iv = P.element(u), P.element(v)
    if not P.leq(iu, iv):
        raise NotComparable(f"{u} is not below {v}", witness=[u, v])
    return iu, iv


def closed_interval(P: Poset, u: str, v: str) -> Poset:
    iu, iv = _comparable_pair(P, u, v)
    return P.induced(P.interval_mask(iu, iv), P.ranks[iu])


def half_open_interval(P: Poset, u: str, v: str) -> Poset:
    """[u, v) as a poset; [u, u) is the empty poset."""
    iu, iv = _comparable_pair(P, u, v)
    if iu == iv:
        return Poset.empty()
    return P.induced(P.interval_mask(iu, iv) & ~(1 << iv), P.ranks[iu])


def lower_half_open(P: Poset) -> Poset:
    """[0, 1) of a graded poset."""
    top = P.require_top()
    return half_open_interval(P, P.ids[P.require_bottom()], P.ids[top])


def is_isomorphic(P: Poset, Q: Poset) -> bool:
    if len(P) != len(Q) or sorted(P.ranks) != sorted(Q.ranks):
        return False
    return nx.is_isomorphic(P.cover_graph(), Q.cover_graph())


def f_vector(P: Poset) -> FVector:
    P.require_top()
    return FVector(tuple(len(level) for level in P.by_rank))


# --- semantic predicates ---

def find_non_eulerian_interval(P: Poset) -> Optional[Tuple[int, int]]:
    """First interval [u, v], u < v, whose alternating rank-sum is nonzero."""
    even, odd = P.parity_masks
    for u in range(len(P)):
        start = P.above[u] | 1 << u
        for v in iter_bits(P.above[u]):
            mask = start & (P.below[v] | 1 << v)
            if (mask & even).bit_count() != (mask & odd).bit_count():
                return u, v
    return None


def is_eulerian(P: Poset) -> bool:
    P.require_top()
    if P._flags["eulerian"] is None:
        P._cache_flag("eulerian", find_non_eulerian_interval(P) is None)
    return P._flags["eulerian"]


def is_lower_eulerian(P: Poset) -> bool:
    """Every [0, p] is Eulerian; no 1 is required."""
    P.require_bottom()
    if P._flags["lower_eulerian"] is None:
        P._cache_flag("lower_eulerian", find_non_eulerian_interval(P) is None)
    return P._flags["lower_eulerian"]


def _is_boolean_interval(P: Poset, u: int, v: int) -> bool:
    mask = P.interval_mask(u, v)
    members = list(iter_bits(mask))
    r = P.ranks[v] - P.ranks[u]
    if len(members) != 1 << r:
        return False
    atoms = [z for z in members if P.ranks[z] == P.ranks[u] + 1]
    if len(atoms) != r:
        return False
    atom_sets = {}
    for z in members:
        atom_sets[z] = sum(1 << k for k, a in enumerate(atoms) if P.leq(a, z))
    if len(set(atom_sets.values())) != len(members):
        return False
    for z in members:
        for w in members:
            if P.leq(z, w) != (atom_sets[z] & ~atom_sets[w] == 0):
                return False
    return True


def is_simplicial(P: Poset) -> bool:
    """Every [0, t] with t != 1 is a Boolean algebra."""
    top = P.require_top()
    if P._flags["simplicial"] is None:
        bottom = P.require_bottom()
        verdict = all(_is_boolean_interval(P, bottom, t) for t in range(len(P)) if t != top)
        P._cache_flag("simplicial", verdict)
    return P._flags["simplicial"]


def is_dual_simplicial(P: Poset) -> bool:
    P.require_top()
    if P._flags["dual_simplicial"] is None:
        P._cache_flag("dual_simplicial", is_simplicial(dual(P)))
    return P._flags["dual_simplicial"]
