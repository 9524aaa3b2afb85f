import argparse
import sys
from functools import cached_property
from typing import Callable, Iterator, List, NamedTuple, Optional, Tuple

import yaml
from termcolor import colored
from tqdm import tqdm

# --- make imports work no matter the cwd ---
from pathlib import Path

PROJECT_ROOT = Path(__file__).resolve().parents[1]  # folder that contains 'components' and 'eval'
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))
# -------------------------------------------

from components.bases import (
    Q_poly,
    catalan,
    from_basis,
    morgan_voyce,
    op_C,
    op_D,
    st_cd_word,
    t_poly,
    to_t_basis,
    x_to_Q,
    x_to_t,
)
from components.dual_simplicial import (
    andre_permutations,
    dual_h_from_f,
    g_dual_monotone,
    g_dual_simplicial,
    g_shifted_basis,
    gessel_cube_g,
    gessel_cube_g_binomial,
    glb_nonnegativity_check,
    monotone_coefficient,
    monotone_coefficient_int,
    narayana,
    phi_check_enum,
    phi_check_rec,
    shifted_coefficient,
    sigma,
    sigma_by_expansion,
    st_dual_simplicial,
    stanley_decomposition_check,
    t_ni,
    tau,
)
from components.flags import L_from_f, flag_f, h_from_f, is_even_set
from components.lattice_paths import (
    even_sets,
    q_poly_paths,
    st_cd_word_paths,
    st_ce_all,
    st_ce_reflected,
    st_from_cd_paths,
    st_from_ce,
    st_from_flag_h,
    st_h_closed,
    st_h_closed_literal,
    st_h_table,
    x_to_q_paths,
)
from components.laurent import LaurentPoly, is_add_symmetric, is_mult_symmetric
from components.ncindex import cd_index, ce_index, reverse
from components.poset import Poset, dual, lower_half_open
from components.toric import (
    fine_st,
    f_lower_eulerian,
    g_from_st,
    reduced_euler_char,
    short_toric,
    st_from_f,
    st_recurrence,
    st_via_cd,
    stanley_f_g,
)
from dataset.families import (
    boolean_algebra,
    chain,
    cross_polytope_lattice,
    cube_lattice,
    glue_at_bottom,
    polygon_lattice,
    random_ranked_poset,
)
from dataset.store import IdentityResult, SuiteReport, VerifyReport
from utils.errors import ParameterOutOfRange, ToricError
from utils.params import CONFIG_PATH, T_TABLE, VALID_SUITES

Outcome = Tuple[str, str, Optional[str]]


class Check(NamedTuple):
    identity: str
    run: Callable[[], Outcome]


def _unwrap(value):
    return getattr(value, "poly", value)


def _compare(expected, actual) -> Outcome:
    expected, actual = _unwrap(expected), _unwrap(actual)
    if expected == actual:
        return "pass", "", None
    try:
        residual = str(actual - expected)
    except TypeError:
        residual = None
    return "fail", f"expected {expected}, got {actual}", residual


def _holds(condition: bool, detail: str = "") -> Outcome:
    return ("pass", "", None) if condition else ("fail", detail, None)


def _load_config(path: str) -> dict:
    config_path = Path(path)
    if not config_path.is_absolute():
        config_path = PROJECT_ROOT / config_path
    with open(config_path, "r", encoding="utf-8") as file:
        return yaml.safe_load(file)


class _Subject:
    """A named poset with its invariants computed on first use."""

    def __init__(self, label: str, P: Poset):
        self.label = label
        self.P = P

    @cached_property
    def half_open(self) -> Poset:
        return lower_half_open(self.P)

    @cached_property
    def st(self):
        return short_toric(self.P)

    @cached_property
    def flags(self):
        return flag_f(self.P)

    @cached_property
    def toric(self):
        return stanley_f_g(self.P)

    @cached_property
    def cd(self):
        return cd_index(self.P)


def _eulerian_sweep(max_rank: int, boolean_max: int, cube_max: int, polygon_max: int) -> Iterator[_Subject]:
    """
    Boolean algebras, cubes, cross-polytopes, polygons and their duals of rank
    at most max_rank. The d-cube and d-cross-polytope have rank d + 1.
    """
    for r in range(1, min(boolean_max, max_rank) + 1):
        yield _Subject(f"boolean{r}", boolean_algebra(r))
    for d in range(1, min(cube_max, max_rank - 1) + 1):
        yield _Subject(f"cube{d}", cube_lattice(d))
        if d >= 2:
            yield _Subject(f"crosspolytope{d}", cross_polytope_lattice(d))
    if max_rank >= 3:
        for m in range(3, polygon_max + 1):
            yield _Subject(f"polygon{m}", polygon_lattice(m))
        for m in (4, 5):
            yield _Subject(f"dual-of-polygon{m}", dual(polygon_lattice(m)))
    if max_rank >= 3:
        yield _Subject("dual-of-boolean3", dual(boolean_algebra(3)))


class Verification:
    """
    Runs the identity suites and collects one IdentityResult per identity.
    """

    def __init__(self, config: dict):
        self.suites = _load_config(config.get("config_path") or CONFIG_PATH)
        self.max_rank = config.get("max_rank")
        self.error_log_path = config.get("error_log")
        self.quiet = config.get("quiet", False)
        self._error_log = None

    def cap(self, suite: str) -> int:
        entry = self.suites[suite]
        if self.max_rank is None:
            return int(entry["max_n"])
        if self.max_rank < 0 or self.max_rank > int(entry["hard_cap"]):
            raise ParameterOutOfRange(
                f"--max-rank {self.max_rank} outside [0, {entry['hard_cap']}] for suite {suite}"
            )
        return int(self.max_rank)

    def run(self, suite: str) -> VerifyReport:
        if suite not in VALID_SUITES:
            raise ParameterOutOfRange(f"unknown suite {suite!r}; expected one of {VALID_SUITES}")
        names = [s for s in VALID_SUITES if s != "all"] if suite == "all" else [suite]
        caps = {name: self.cap(name) for name in names}

        handlers = {
            "four-routes": self.verify_four_routes,
            "reflection": self.verify_reflection,
            "bases": self.verify_bases,
            "dual-simplicial": self.verify_dual_simplicial,
            "table1": self.verify_table1,
            "gessel": self.verify_gessel,
            "appendix": self.verify_appendix,
            "structural": self.verify_structural,
        }
        reports = []
        if self.error_log_path:
            self._error_log = open(self.error_log_path, "w", encoding="utf-8")
        try:
            for name in names:
                reports.append(handlers[name](caps[name]))
        finally:
            if self._error_log is not None:
                self._error_log.close()
                self._error_log = None
        return VerifyReport(ok=all(r.failed == 0 for r in reports), suites=reports)

    def _execute(self, suite: str, max_n: int, checks: List[Check]) -> SuiteReport:
        anchor = self.suites[suite]["anchor"]
        report = SuiteReport(suite=suite, anchor=anchor, max_n=max_n)
        progress_bar = tqdm(
            checks, desc=f"Verifying {suite}", unit="identity",
            dynamic_ncols=True, file=sys.stderr, disable=self.quiet,
        )
        for check in progress_bar:
            try:
                status, detail, residual = check.run()
            except ToricError as e:
                status, detail, residual = "fail", f"{type(e).__name__}: {e}", None
            result = IdentityResult(
                identity=check.identity, anchor=anchor, status=status, detail=detail, residual=residual
            )
            report.add(result)
            if status == "fail":
                self._log_failure(result)
            progress_bar.set_postfix({"pass": report.passed, "fail": report.failed})
        report.sort()

        color = "green" if report.failed == 0 else "red"
        if not self.quiet:
            print(
                colored(f"[VERIFY] {suite}: {report.passed} passed, {report.failed} failed, "
                        f"{report.reported} reported", color),
                file=sys.stderr,
            )
        return report

    def _log_failure(self, result: IdentityResult) -> None:
        if self._error_log is None:
            return
        self._error_log.write(f"\n--- FAILED: {result.identity} ---\n")
        self._error_log.write(f"Anchor: {result.anchor}\n")
        self._error_log.write(f"Detail: {result.detail}\n")
        if result.residual is not None:
            self._error_log.write(f"Residual: {result.residual}\n")
        self._error_log.write("\n------------------------------\n")
        self._error_log.flush()

    # --- suites ---

    def verify_four_routes(self, max_n: int) -> SuiteReport:
        entry = self.suites["four-routes"]
        checks = []
        for s in _eulerian_sweep(max_n, max_n, entry["cube_max"], entry["polygon_max"]):
            checks += [
                Check(f"{s.label}/fine", lambda s=s: _compare(s.st, fine_st(s.flags, s.toric.n))),
                Check(f"{s.label}/stanley-f", lambda s=s: _compare(s.st, st_from_f(s.toric.f, s.toric.n))),
                Check(f"{s.label}/cd-substitution", lambda s=s: _compare(s.st, st_via_cd(s.cd))),
                Check(f"{s.label}/g-from-st", lambda s=s: _compare(s.toric.g, g_from_st(s.st))),
                Check(f"{s.label}/euler-degree", lambda s=s: self._euler_degree(s.half_open)),
            ]
        return self._execute("four-routes", max_n, checks)

    @staticmethod
    def _euler_degree(P: Poset) -> Outcome:
        st = st_recurrence(P)
        chi = reduced_euler_char(P)
        full = st.poly.degree == P.max_rank
        return _holds(full == (chi != 0), f"degree {st.poly.degree}, n {P.max_rank}, chi {chi}")

    def verify_reflection(self, max_n: int) -> SuiteReport:
        entry = self.suites["reflection"]
        checks = []
        for n in range(max_n + 1):
            checks.append(Check(f"ce-reflection/n={n}", lambda n=n: self._reflection(n)))
        for n in range(min(entry["cd_max"], max_n) + 1):
            checks.append(Check(f"cd-paths/degree={n}", lambda n=n: self._cd_paths(n)))
        for s in _eulerian_sweep(entry["poset_rank_max"], entry["poset_rank_max"], 4, 6):
            checks += [
                Check(f"{s.label}/cd-path-sum", lambda s=s: _compare(s.st, st_from_cd_paths(s.cd))),
                Check(f"{s.label}/ce-path-sum", lambda s=s: _compare(s.st, st_from_ce(ce_index(s.P)))),
            ]
        return self._execute("reflection", max_n, checks)

    @staticmethod
    def _reflection(n: int) -> Outcome:
        for S in even_sets(n):
            outcome = _compare(st_ce_all(S, n), st_ce_reflected(S, n))
            if outcome[0] == "fail":
                return "fail", f"S={bin(S)}: {outcome[1]}", outcome[2]
        return "pass", "", None

    @staticmethod
    def _cd_paths(n: int) -> Outcome:
        for word in _cd_words(n):
            outcome = _compare(st_cd_word(word), st_cd_word_paths(word))
            if outcome[0] == "fail":
                return "fail", f"{word}: {outcome[1]}", outcome[2]
        return "pass", "", None

    def verify_bases(self, max_n: int) -> SuiteReport:
        entry = self.suites["bases"]
        x = LaurentPoly.monomial
        checks = []
        for n in range(max_n + 1):
            checks += [
                Check(f"x-to-Q/n={n}", lambda n=n: _compare(x(n), from_basis(dict(enumerate(x_to_Q(n))), Q_poly))),
                Check(f"x-to-t/n={n}", lambda n=n: _compare(x(n), from_basis(dict(enumerate(x_to_t(n))), t_poly))),
                Check(f"Q-paths/n={n}", lambda n=n: _compare(Q_poly(n), q_poly_paths(n))),
                Check(f"x-Q-paths/n={n}", lambda n=n: _compare(x(n), x_to_q_paths(n))),
                Check(f"morgan-voyce/n={n}", lambda n=n: self._morgan_voyce(n)),
            ]
        for n in range(min(entry["operator_max"], max_n) + 1):
            checks += [
                Check(f"C(Q)/n={n}", lambda n=n: _compare(Q_poly(n + 1), op_C(Q_poly(n)))),
                Check(f"D(Q)/n={n}", lambda n=n: _compare(
                    (-1) ** (n // 2) * catalan(n // 2) if n % 2 == 0 else 0, op_D(Q_poly(n)))),
                Check(f"C(t)/n={n}", lambda n=n: _compare(t_poly(n + 1) - t_poly(n - 1), op_C(t_poly(n)))),
                Check(f"D(t)/n={n}", lambda n=n: _compare(1 if n == 0 else 0, op_D(t_poly(n)))),
            ]
        return self._execute("bases", max_n, checks)

    @staticmethod
    def _morgan_voyce(n: int) -> Outcome:
        m = n // 2
        coeffs = x_to_Q(n)
        if n % 2 == 0:
            expected = morgan_voyce(m, "B")
            actual = [coeffs[2 * k] for k in range(m + 1)]
        else:
            expected = morgan_voyce(m, "b")
            actual = [coeffs[2 * k + 1] for k in range(m + 1)]
        return _compare(expected, actual)

    def verify_dual_simplicial(self, max_n: int) -> SuiteReport:
        entry = self.suites["dual-simplicial"]
        checks = []
        subjects = [_Subject(f"cube{d}", cube_lattice(d)) for d in range(1, entry["cube_max"] + 1)]
        subjects += [_Subject(f"boolean{r}", boolean_algebra(r)) for r in range(2, entry["boolean_max"] + 1)]
        for s in subjects:
            checks += [
                Check(f"{s.label}/st", lambda s=s: self._dual_st(s)),
                Check(f"{s.label}/g", lambda s=s: self._dual_g(s)),
            ]
        for r in range(1, min(entry["phi_max"], max_n) + 2):
            P = boolean_algebra(r)
            checks.append(Check(f"decomposition/boolean{r}", lambda P=P: self._decomposition(P)))
        for d in range(2, entry["cube_max"] + 1):
            P = cross_polytope_lattice(d)
            checks.append(Check(f"decomposition/crosspolytope{d}", lambda P=P: self._decomposition(P)))
        for n in range(1, entry["phi_max"] + 1):
            checks.append(Check(f"phi-routes/n={n}", lambda n=n: self._phi_routes(n)))
        for n in range(2, max_n + 1):
            checks.append(Check(f"telescoping/n={n}", lambda n=n: self._telescoping(n)))
        for n in range(2, entry["sigma_max"] + 1):
            checks.append(Check(f"sigma/n={n}", lambda n=n: self._sigma(n)))
            checks.append(Check(f"g-signs/n={n}", lambda n=n: self._g_signs(n)))
        for i in range(1, entry["narayana_max"] + 1):
            checks.append(Check(f"narayana/i={i}", lambda i=i: _compare(
                [narayana(i, k) for k in range(1, i + 1)],
                [monotone_coefficient(2 * i, i, k) for k in range(1, i + 1)],
            )))
        for n in range(1, entry["glb_max"] + 1):
            checks.append(Check(f"glb/cube-h/n={n}", lambda n=n: self._glb(_binomial_row(n), n)))
        return self._execute("dual-simplicial", max_n, checks)

    @staticmethod
    def _dual_st(s: _Subject) -> Outcome:
        h = dual_h_from_f(s.P)
        return _compare(s.st, st_dual_simplicial(h, len(h) - 1))

    @staticmethod
    def _dual_g(s: _Subject) -> Outcome:
        h = dual_h_from_f(s.P)
        n = len(h) - 1
        g = s.toric.g
        for route in (g_dual_simplicial, g_dual_monotone, g_shifted_basis):
            outcome = _compare(g, route(h, n))
            if outcome[0] == "fail":
                return "fail", f"{route.__name__}: {outcome[1]}", outcome[2]
        return "pass", "", None

    @staticmethod
    def _decomposition(P: Poset) -> Outcome:
        stanley_decomposition_check(P)
        return "pass", "", None

    @staticmethod
    def _phi_routes(n: int) -> Outcome:
        for i in range(n):
            outcome = _compare(phi_check_rec(n, i), phi_check_enum(n, i))
            if outcome[0] == "fail":
                return "fail", f"i={i}: {outcome[1]}", outcome[2]
        count = sum(1 for _ in andre_permutations(n))
        total = sum(sum(phi_check_rec(n, i).terms.values()) for i in range(n))
        return _holds(total == count, f"{count} permutations, coefficient sum {total}")

    @staticmethod
    def _telescoping(n: int) -> Outcome:
        for i in range(1, n // 2 + 1):
            for k in range(1, n // 2 + 1):
                window = sum(tau(n, j, k) for j in range(i, n - i + 1))
                values = (window, monotone_coefficient(n, i, k), monotone_coefficient_int(n, i, k))
                if len(set(values)) != 1:
                    return "fail", f"i={i}, k={k}: {values}", None
        return "pass", "", None

    @staticmethod
    def _sigma(n: int) -> Outcome:
        for i in range(1, n):
            for k in range(n // 2 + 1):
                values = (sigma(n, i, k), sigma_by_expansion(n, i, k), shifted_coefficient(n, i, k))
                if len(set(values)) != 1:
                    return "fail", f"i={i}, k={k}: {values}", None
        return "pass", "", None

    @staticmethod
    def _g_signs(n: int) -> Outcome:
        # signs of the h_i terms of g for i < (n-1)/2; recorded only
        negative = [
            (i, k) for i in range(1, n) if 2 * i < n - 1
            for k in range(1, n // 2 + 1) if tau(n, i, k) < 0
        ]
        if not negative:
            return "pass", "", None
        return "reported", f"negative tau(n, i, k) at (i, k) in {negative}", None

    @staticmethod
    def _glb(h: List[int], n: int) -> Outcome:
        verdict = glb_nonnegativity_check(h, n)
        return _holds(verdict.holds is True, verdict.reason)

    def verify_table1(self, max_n: int) -> SuiteReport:
        checks = []
        for n in range(1, max_n + 1):
            for i in range(n):
                checks.append(Check(f"t_{n},{i}", lambda n=n, i=i: self._table_entry(n, i)))
        return self._execute("table1", max_n, checks)

    @staticmethod
    def _table_entry(n: int, i: int) -> Outcome:
        from_tau = {n - 2 * k: tau(n, i, k) for k in range(n // 2 + 1) if tau(n, i, k)}
        routes = {
            "recurrence": to_t_basis(t_ni(n, i, "rec"), n),
            "enumeration": to_t_basis(t_ni(n, i, "enum"), n),
            "tau": from_tau,
        }
        expected = T_TABLE.get((n, i), from_tau)
        for name, actual in routes.items():
            if actual != expected:
                return "fail", f"{name}: expected {expected}, got {actual}", None
        return "pass", "", None

    def verify_gessel(self, max_n: int) -> SuiteReport:
        entry = self.suites["gessel"]
        checks = []
        for n in range(1, max_n + 1):
            checks.append(Check(f"cube{n}/face-lattice", lambda n=n: _compare(
                stanley_f_g(cube_lattice(n)).g, gessel_cube_g(n))))
        for n in range(1, entry["closed_form_max"] + 1):
            checks.append(Check(f"closed-forms/n={n}", lambda n=n: _compare(
                gessel_cube_g(n), gessel_cube_g_binomial(n))))
        return self._execute("gessel", max_n, checks)

    def verify_appendix(self, max_n: int) -> SuiteReport:
        entry = self.suites["appendix"]
        rank_max = entry["poset_rank_max"]
        checks = []
        for n in range(max_n + 1):
            checks.append(Check(f"closed-form/n={n}", lambda n=n: self._st_h_closed(n)))
            checks.append(Check(f"literal-reading/n={n}", lambda n=n: self._st_h_literal(n)))
        subjects = list(_eulerian_sweep(rank_max, rank_max, rank_max - 1, 8))
        subjects += [_Subject(f"chain{k}", chain(k)) for k in range(1, rank_max + 1)]
        for s in subjects:
            checks.append(Check(f"{s.label}/flag-h-sum", lambda s=s: _compare(
                s.st, st_from_flag_h(h_from_f(s.flags)))))
            checks.append(Check(f"{s.label}/inverse-weighting", lambda s=s: self._inverse_weighting(s)))
        return self._execute("appendix", max_n, checks)

    @staticmethod
    def _st_h_closed(n: int) -> Outcome:
        table = st_h_table(n)
        for S in range(1 << n):
            outcome = _compare(table[S], st_h_closed(S, n))
            if outcome[0] == "fail":
                return "fail", f"S={bin(S)}: {outcome[1]}", outcome[2]
        return "pass", "", None

    @staticmethod
    def _st_h_literal(n: int) -> Outcome:
        differing = []
        for S in range(1 << n):
            literal = st_h_closed_literal(S, n)
            if literal != st_h_closed(S, n):
                differing.append((S, literal))
        if not differing:
            return "pass", "", None
        sample = ", ".join(f"S={bin(S)}: {value}" for S, value in differing[:4])
        return "reported", f"{len(differing)} of {1 << n} sets read differently as printed ({sample})", None

    @staticmethod
    def _inverse_weighting(s: _Subject) -> Outcome:
        inverse = st_from_flag_h(h_from_f(s.flags)).substitute_power(-1)
        if inverse == s.st.poly:
            return "pass", "", None
        return "reported", f"x -> 1/x weighting gives {inverse} instead of {s.st}", None

    def verify_structural(self, max_n: int) -> SuiteReport:
        entry = self.suites["structural"]
        checks = []
        for s in _eulerian_sweep(max_n, max_n, max_n - 1, 8):
            checks += [
                Check(f"{s.label}/L-even-support", lambda s=s: self._even_support(s)),
                Check(f"{s.label}/cd-integral", lambda s=s: _holds(s.cd.is_integral(), str(s.cd))),
                Check(f"{s.label}/dual-reverses-cd", lambda s=s: _compare(reverse(s.cd), cd_index(dual(s.P)))),
                Check(f"{s.label}/closed-interval-st", lambda s=s: _compare(0, st_recurrence(s.P))),
                Check(f"{s.label}/f-symmetric", lambda s=s: _holds(
                    is_mult_symmetric(s.toric.f, s.toric.n), str(s.toric.f))),
            ]
        glued = [
            ("boolean3+polygon4", glue_at_bottom(boolean_algebra(3), polygon_lattice(4))),
            ("chain1+boolean2", glue_at_bottom(chain(1), boolean_algebra(2))),
            ("boolean3-closed", boolean_algebra(3)),
        ]
        for label, P in glued:
            checks.append(Check(f"{label}/lower-eulerian", lambda P=P: self._lower_eulerian(P)))
        seed = int(entry["seed"])
        for k in range(int(entry["random_posets"])):
            P = random_ranked_poset(1 + k % int(entry["random_size"]), seed=seed + k)
            checks.append(Check(f"random{k:03d}/st-symmetric", lambda P=P: self._random_symmetry(P)))
        return self._execute("structural", max_n, checks)

    @staticmethod
    def _even_support(s: _Subject) -> Outcome:
        L = L_from_f(s.flags)
        odd = [S for S, value in L.values.items() if value and not is_even_set(S)]
        return _holds(not odd, f"nonzero L on {[bin(S) for S in odd]}")

    @staticmethod
    def _lower_eulerian(P: Poset) -> Outcome:
        n = P.longest_chain
        expected = f_lower_eulerian(P).substitute_power(-2).shift(n).truncate_ge(0)
        return _compare(expected, st_recurrence(P))

    @staticmethod
    def _random_symmetry(P: Poset) -> Outcome:
        st = st_recurrence(P)
        if not is_add_symmetric(st.poly, st.n):
            return "fail", f"{st} is not additively symmetric of degree {st.n}", None
        chi = reduced_euler_char(P)
        return _holds((st.poly.degree == st.n) == (chi != 0), f"degree {st.poly.degree}, chi {chi}")


def _cd_words(n: int) -> Iterator[str]:
    """All words over {c, d} of degree n."""
    if n == 0:
        yield ""
        return
    if n < 0:
        return
    for tail in _cd_words(n - 1):
        yield "c" + tail
    for tail in _cd_words(n - 2):
        yield "d" + tail


def _binomial_row(n: int) -> List[int]:
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Run the identity suites.")
    parser.add_argument("--suite", type=str, default="all", choices=VALID_SUITES)
    parser.add_argument("--max-rank", type=int, default=None)
    parser.add_argument("--error-log", type=str, default=None)
    args = parser.parse_args()

    verification = Verification({
        "max_rank": args.max_rank,
        "error_log": args.error_log,
    })
    report = verification.run(args.suite)
    print("\nVerification Results:")
    for suite in report.suites:
        color = "green" if suite.failed == 0 else "red"
        print(colored(f"{suite.suite}: {suite.passed} passed, {suite.failed} failed", color))
    sys.exit(0 if report.ok else 1)
