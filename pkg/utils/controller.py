import sys
from fractions import Fraction
from typing import Dict, List, Tuple

import pandas as pd
from termcolor import colored

from components.flags import L_from_f, flag_f, from_mask, h_from_f
from components.ncindex import cd_index
from components.poset import (
    Poset,
    dual,
    is_dual_simplicial,
    is_eulerian,
    is_lower_eulerian,
    is_simplicial,
)
from components.toric import reduced_euler_char, short_toric, stanley_f_g, toric_h_vector
from dataset.families import generate
from dataset.store import ComputeReport, PosetReport, dumps, load_poset, save_poset
from eval.verify import Verification
from utils.errors import InputError, ParameterOutOfRange, ToricError
from utils.params import EXIT_INPUT_ERROR, EXIT_OK, EXIT_VERIFY_FAILED, VALID_INVARIANTS

# invariant -> route tag written into compute reports
ROUTES = {
    "flag-f": "chain count by rank set",
    "flag-h": "inclusion-exclusion over flag-f",
    "flag-L": "L transform of flag-f",
    "cd-index": "flag-f -> flag-h -> ab -> ce -> cd",
    "toric-f": "intertwined f/g recurrence on [0, 1)",
    "toric-g": "intertwined f/g recurrence on [0, 1)",
    "toric-h": "coefficients of x^n f(1/x)",
    "st": "short toric recurrence",
}


def _scalar(value: Fraction):
    """Integers stay integers, other rationals become 'p/q' strings."""
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else str(value)


def _flag_json(vector) -> Dict[str, object]:
    return {",".join(str(i) for i in from_mask(S)): _scalar(v) for S, v in vector.values.items() if v}


class ToricOrchestrator:
    def __init__(self, config: dict):
        """
        Stores the parsed CLI config; nothing is computed until run().
        """
        self.command = config["command"]
        self.config = config
        self.output_path = config.get("output")
        self.format = config.get("format", "json")

    def run(self) -> int:
        """
        Dispatches the verb and returns the process exit code.
        """
        handlers = {
            "generate": self.generate,
            "compute": self.compute,
            "verify": self.verify,
            "report": self.report,
        }
        try:
            return handlers[self.command]()
        except (ToricError, OSError) as e:
            print(colored(f"[{self.command.upper()}] {type(e).__name__}: {e}", "red"), file=sys.stderr)
            return EXIT_INPUT_ERROR

    # --- verbs ---

    def generate(self) -> int:
        family = self.config["family"]
        param = self.config.get("param")
        if family.startswith("dual-of"):
            path = family.split(":", 1)[1] if ":" in family else self.config.get("input")
            if not path:
                raise InputError("dual-of needs a poset file: dual-of:<file> or --input FILE")
            P = dual(load_poset(path))
            name = f"dual-of:{path}"
        else:
            if param is None:
                raise ParameterOutOfRange(f"family {family} needs an integer parameter")
            P = generate(family, param)
            name = f"{family}{param}"

        if self.format == "table":
            frame = pd.DataFrame({"element": list(P.ids), "rank": list(P.ranks)})
            self._emit(frame.to_string(index=False))
        else:
            self._emit(save_poset(P, name=name))
        print(colored(f"[GENERATE] {name}: {len(P)} elements, max rank {P.max_rank}", "green"), file=sys.stderr)
        return EXIT_OK

    def compute(self) -> int:
        P, source = self._load_target()
        wanted = self.config.get("invariants") or list(VALID_INVARIANTS)
        unknown = [w for w in wanted if w not in VALID_INVARIANTS]
        if unknown:
            raise ParameterOutOfRange(f"unknown invariants {unknown}; expected some of {VALID_INVARIANTS}")

        invariants = {}
        for what in wanted:
            invariants[what] = self._invariant(P, what)
        report = ComputeReport(
            source=source,
            max_rank=P.max_rank,
            longest_chain=P.longest_chain,
            invariants=invariants,
            routes={what: ROUTES[what] for what in wanted},
        )

        if self.format == "table":
            rows = [(what, ROUTES[what], str(invariants[what])) for what in wanted]
            self._emit(pd.DataFrame(rows, columns=["invariant", "route", "value"]).to_string(index=False))
        else:
            self._emit(dumps(report))
        print(colored(f"[COMPUTE] {source}: {', '.join(wanted)}", "green"), file=sys.stderr)
        return EXIT_OK

    @staticmethod
    def _invariant(P: Poset, what: str):
        if what in ("flag-f", "flag-h", "flag-L"):
            f = flag_f(P)
            if what == "flag-h":
                return _flag_json(h_from_f(f))
            if what == "flag-L":
                return _flag_json(L_from_f(f))
            return _flag_json(f)
        if what == "cd-index":
            return {w: _scalar(v) for w, v in sorted(cd_index(P).terms.items())}
        if what in ("toric-f", "toric-g", "toric-h"):
            pair = stanley_f_g(P)
            if what == "toric-h":
                return [_scalar(v) for v in toric_h_vector(pair)]
            return (pair.f if what == "toric-f" else pair.g).to_json()
        return short_toric(P).poly.to_json()

    def verify(self) -> int:
        verification = Verification({
            "max_rank": self.config.get("max_rank"),
            "error_log": self.config.get("error_log"),
            "config_path": self.config.get("config_path"),
        })
        report = verification.run(self.config.get("suite") or "all")

        if self.format == "table":
            rows = [
                (suite.suite, r.identity, r.status, r.detail)
                for suite in report.suites
                for r in suite.results
            ]
            frame = pd.DataFrame(rows, columns=["suite", "identity", "status", "detail"])
            self._emit(frame.to_string(index=False))
        else:
            self._emit(dumps(report))
        return EXIT_OK if report.ok else EXIT_VERIFY_FAILED

    def report(self) -> int:
        P, source = self._load_target()
        flags = {"graded": P.is_graded, "lower_eulerian": is_lower_eulerian(P)}
        if P.is_graded:
            flags["eulerian"] = is_eulerian(P)
            flags["simplicial"] = is_simplicial(P)
            flags["dual_simplicial"] = is_dual_simplicial(P)
        else:
            flags.update({"eulerian": None, "simplicial": None, "dual_simplicial": None})

        report = PosetReport(
            source=source,
            elements=len(P),
            rank_histogram=[len(level) for level in P.by_rank],
            flags=flags,
            max_rank=P.max_rank,
            longest_chain=P.longest_chain,
            rank_gaps=list(P.rank_gaps),
            reduced_euler_char=str(reduced_euler_char(P)),
        )

        if self.format == "table":
            rows = [(key, str(value)) for key, value in sorted(report.model_dump().items())]
            self._emit(pd.DataFrame(rows, columns=["field", "value"]).to_string(index=False))
        else:
            self._emit(dumps(report))
        print(colored(f"[REPORT] {source}: {len(P)} elements", "green"), file=sys.stderr)
        return EXIT_OK

    # --- helpers ---

    def _load_target(self) -> Tuple[Poset, str]:
        path = self.config.get("input")
        if path:
            return load_poset(path), path
        family, param = self.config.get("family"), self.config.get("param")
        if family and param is not None:
            return generate(family, param), f"{family}{param}"
        raise InputError("give a poset file with --input or a family and parameter")

    def _emit(self, text: str) -> None:
        if self.output_path:
            with open(self.output_path, "w", encoding="utf-8") as f:
                f.write(text + "\n")
        else:
            sys.stdout.write(text + "\n")
