import json
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError, field_validator

from components.poset import Poset, from_covers
from utils.errors import InputError

Status = Literal["pass", "fail", "reported", "skipped"]


class PosetFile(BaseModel):
    """
    On-disk poset: element ids, cover pairs and optionally explicit ranks.

    Ranks are inferred from the cover relation when omitted.
    """

    elements: List[str] = Field(default_factory=list)
    covers: List[Tuple[str, str]] = Field(default_factory=list)
    ranks: Optional[Dict[str, int]] = None
    name: Optional[str] = None

    @field_validator("elements")
    @classmethod
    def _unique(cls, value: List[str]) -> List[str]:
        if len(set(value)) != len(value):
            raise ValueError("element ids must be unique")
        return value

    def to_poset(self) -> Poset:
        return from_covers(self.covers, explicit_ranks=self.ranks, elements=self.elements)

    @classmethod
    def from_poset(cls, P: Poset, name: Optional[str] = None) -> "PosetFile":
        return cls(
            elements=list(P.ids),
            covers=[tuple(pair) for pair in P.cover_pairs()],
            ranks={pid: P.ranks[i] for i, pid in enumerate(P.ids)},
            name=name,
        )


class IdentityResult(BaseModel):
    identity: str
    anchor: str
    status: Status
    detail: str = ""
    residual: Optional[str] = None


class SuiteReport(BaseModel):
    suite: str
    anchor: str
    max_n: int
    passed: int = 0
    failed: int = 0
    reported: int = 0
    results: List[IdentityResult] = Field(default_factory=list)

    def add(self, result: IdentityResult) -> None:
        self.results.append(result)
        if result.status == "pass":
            self.passed += 1
        elif result.status == "fail":
            self.failed += 1
        elif result.status == "reported":
            self.reported += 1

    def sort(self) -> None:
        self.results.sort(key=lambda r: r.identity)


class VerifyReport(BaseModel):
    ok: bool
    suites: List[SuiteReport]


class ComputeReport(BaseModel):
    source: str
    max_rank: int
    longest_chain: int
    invariants: Dict[str, Any]
    routes: Dict[str, str]


class PosetReport(BaseModel):
    source: str
    elements: int
    rank_histogram: List[int]
    flags: Dict[str, Optional[bool]]
    max_rank: int
    longest_chain: int
    rank_gaps: List[int]
    reduced_euler_char: str


def dumps(model: BaseModel) -> str:
    """Sorted-key JSON; identical models give byte-identical text."""
    return json.dumps(model.model_dump(mode="json"), sort_keys=True, indent=2)


def load_poset(path: str) -> Poset:
    """
    Reads and validates a poset file.

    Args:
        path (str): Path of a JSON poset file.

    Returns:
        Poset: The validated poset.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            payload = json.load(f)
        record = PosetFile.model_validate(payload)
    except (OSError, json.JSONDecodeError, ValidationError) as e:
        raise InputError(f"cannot read poset file {path}: {e}") from e
    return record.to_poset()


def save_poset(P: Poset, path: Optional[str] = None, name: Optional[str] = None) -> str:
    """Writes the canonical poset JSON to path (when given) and returns it."""
    text = dumps(PosetFile.from_poset(P, name))
    if path:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text + "\n")
    return text
