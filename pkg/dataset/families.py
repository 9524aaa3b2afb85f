from itertools import combinations, product
from typing import Dict, List, Optional, Tuple

import numpy as np

from components.poset import Poset, dual, from_covers
from utils.errors import ParameterOutOfRange, UnknownFamily
from utils.params import MAX_RANK, VALID_FAMILIES

EMPTY_FACE = "empty"


def _subset_id(subset: Tuple[int, ...]) -> str:
    return "{" + ",".join(str(i) for i in subset) + "}"


def boolean_algebra(r: int) -> Poset:
    """Subsets of {1..r} ordered by inclusion."""
    if r < 0 or r > MAX_RANK + 1:
        raise ParameterOutOfRange(f"boolean rank must be in [0, {MAX_RANK + 1}], got {r}")
    ground = range(1, r + 1)
    subsets = [s for k in range(r + 1) for s in combinations(ground, k)]
    covers = [
        (_subset_id(s), _subset_id(tuple(sorted(s + (i,)))))
        for s in subsets
        for i in ground
        if i not in s
    ]
    ranks = {_subset_id(s): len(s) for s in subsets}
    return from_covers(covers, explicit_ranks=ranks, elements=ranks)


def cube_lattice(d: int) -> Poset:
    """
    Face lattice of the d-cube, faces written as words over {0, 1, *}.

    The empty face is the minimum; '*' * d is the whole cube.
    """
    if d < 1 or d > MAX_RANK:
        raise ParameterOutOfRange(f"cube dimension must be in [1, {MAX_RANK}], got {d}")
    faces = ["".join(word) for word in product("01*", repeat=d)]
    ranks: Dict[str, int] = {EMPTY_FACE: 0}
    covers: List[Tuple[str, str]] = []
    for face in faces:
        ranks[face] = face.count("*") + 1
        if "*" not in face:
            covers.append((EMPTY_FACE, face))
        for pos, letter in enumerate(face):
            if letter != "*":
                covers.append((face, face[:pos] + "*" + face[pos + 1:]))
    return from_covers(covers, explicit_ranks=ranks)


def cross_polytope_lattice(d: int) -> Poset:
    return dual(cube_lattice(d))


def polygon_lattice(m: int) -> Poset:
    if m < 3:
        raise ParameterOutOfRange(f"a polygon needs at least 3 vertices, got {m}")
    covers = []
    for i in range(m):
        vertex, edge = f"v{i}", f"e{i}"
        covers.append((EMPTY_FACE, vertex))
        covers.append((vertex, edge))
        covers.append((f"v{(i + 1) % m}", edge))
        covers.append((edge, "polygon"))
    return from_covers(covers)


def chain(k: int) -> Poset:
    """Chain 0 < 1 < ... < k."""
    if k < 0 or k > MAX_RANK + 1:
        raise ParameterOutOfRange(f"chain length must be in [0, {MAX_RANK + 1}], got {k}")
    return from_covers([(str(i), str(i + 1)) for i in range(k)], elements=["0"])


def glue_at_bottom(*posets: Poset) -> Poset:
    """Identifies the minima of the given posets; the result need not be graded."""
    covers, ranks = [], {"0": 0}
    for k, P in enumerate(posets):
        bottom = P.require_bottom()
        rename = {i: ("0" if i == bottom else f"p{k}:{P.ids[i]}") for i in range(len(P))}
        for i, r in enumerate(P.ranks):
            ranks[rename[i]] = r
        for u in range(len(P)):
            for v in P.upper_covers[u]:
                covers.append((rename[u], rename[v]))
    return from_covers(covers, explicit_ranks=ranks, elements=ranks)


def random_ranked_poset(size: int, seed: Optional[int] = None) -> Poset:
    """
    Random ranked poset with a unique minimum and `size` elements.

    Each new element picks a rank at most one above the current maximum and
    covers a random nonempty set of elements one rank below.
    """
    if size < 1:
        raise ParameterOutOfRange("a poset needs at least one element")
    rng = np.random.default_rng(seed)
    levels: List[List[str]] = [["x0"]]
    covers = []
    for i in range(1, size):
        name = f"x{i}"
        r = int(rng.integers(1, len(levels) + 1))
        below = levels[r - 1]
        picks = rng.random(len(below)) < 0.5
        if not picks.any():
            picks[int(rng.integers(0, len(below)))] = True
        covers.extend((u, name) for u, chosen in zip(below, picks) if chosen)
        if r == len(levels):
            levels.append([])
        levels[r].append(name)
    return from_covers(covers, elements=["x0"])


def generate(family: str, param: int) -> Poset:
    """Dispatches a named family (all but 'dual-of', which needs a file)."""
    builders = {
        "boolean": boolean_algebra,
        "cube": cube_lattice,
        "crosspolytope": cross_polytope_lattice,
        "polygon": polygon_lattice,
        "chain": chain,
    }
    if family not in builders:
        raise UnknownFamily(f"unknown family {family!r}; expected one of {VALID_FAMILIES}")
    return builders[family](param)
