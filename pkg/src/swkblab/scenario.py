"""Declarative scenarios: parsing, sweeping, CSV output and threshold checks.

A scenario file holds ``key = value`` lines (``#`` starts a comment). A file
consisting of ``include = other.scn`` lines is a batch. Recognised keys::

    name, family, g, h, kind (none | mi | ka), d_I, d_II, d,
    n_min, n_max, form, tol, output,
    target_max_err, target_rel_tol, max_err_below, expect_sign,
    argmax_window, min_intervals_at_n1, sign_change_below
"""
from __future__ import annotations

import csv
import math
import subprocess
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np

from .deform import DeformedSystem, build, logderiv_sq
from .errors import InvalidParameters, SWKBError
from .swkb import swkb_integral
from .systems import SystemSpec, validate_deformation

CSV_COLUMNS = ("n", "breve_n", "I_over_pi", "err", "interval_count")
DEFAULT_REL_TOL = 0.15

_LIST_KEYS = {"d_I", "d_II"}
_INT_KEYS = {"d", "n_min", "n_max", "argmax_window", "min_intervals_at_n1", "sign_change_below"}
_FLOAT_KEYS = {"tol", "target_max_err", "target_rel_tol", "max_err_below"}
_STR_KEYS = {"name", "family", "kind", "form", "output", "expect_sign", "g", "h"}


@dataclass(frozen=True)
class Scenario:
    name: str
    family: str
    g: Fraction = Fraction(0)
    h: Fraction = Fraction(0)
    kind: str = "none"
    d_I: tuple[int, ...] = ()
    d_II: tuple[int, ...] = ()
    d: int | None = None
    n_min: int = 1
    n_max: int = 20
    form: str | None = None
    tol: float = 1e-10
    output: str | None = None
    target_max_err: float | None = None
    target_rel_tol: float = DEFAULT_REL_TOL
    max_err_below: float | None = None
    expect_sign: str | None = None
    argmax_window: int | None = None
    min_intervals_at_n1: int | None = None
    sign_change_below: int | None = None

    @property
    def spec(self) -> SystemSpec:
        return SystemSpec(self.family, self.g, self.h)

    def validation_problems(self) -> list[str]:
        try:
            spec = self.spec
        except ValueError as exc:
            return [str(exc)]
        if self.kind == "mi":
            return validate_deformation(spec, self.d_I, self.d_II)
        if self.kind == "ka" and (self.d is None or self.d < 1):
            return ["Krein-Adler scenarios need d >= 1"]
        if self.kind not in ("none", "mi", "ka"):
            return [f"unknown kind {self.kind!r}"]
        return []

    def build(self, precision: str = "auto") -> DeformedSystem:
        dsys = build(self.spec, self.kind, self.d_I, self.d_II, self.d)
        return replace(dsys, precision=precision) if precision != "auto" else dsys


@dataclass(frozen=True)
class ResultRow:
    n: int
    breve_n: int
    I_over_pi: float
    err: float
    interval_count: int
    wall_time: float = 0.0
    failure: str | None = None


@dataclass
class ScenarioResult:
    scenario: Scenario
    rows: list[ResultRow]
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def ok_rows(self) -> list[ResultRow]:
        return [r for r in self.rows if r.failure is None and r.n > 0]

    @property
    def max_abs_err(self) -> float:
        rows = self.ok_rows
        return max(abs(r.err) for r in rows) if rows else math.nan

    @property
    def argmax_n(self) -> int | None:
        rows = self.ok_rows
        return max(rows, key=lambda r: abs(r.err)).n if rows else None

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def summary(self) -> str:
        return (f"{self.scenario.name}: max|err| = {self.max_abs_err:.3e} at n = {self.argmax_n}; "
                f"{sum(ok for _, ok, _ in self.checks)}/{len(self.checks)} checks passed")


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _parse_lines(text: str) -> list[tuple[str, str]]:
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        pairs.append((key, value))
    return pairs


def scenario_from_pairs(pairs: list[tuple[str, str]]) -> Scenario:
    kw = {}
    for key, value in pairs:
        if key in _LIST_KEYS:
            kw[key] = tuple(int(v) for v in value.replace(",", " ").split())
        elif key in _INT_KEYS:
            kw[key] = int(value)
        elif key in _FLOAT_KEYS:
            kw[key] = float(value)
        elif key in _STR_KEYS:
            kw[key] = value
        else:
            raise ValueError(f"unknown scenario key {key!r}")
    for key in ("g", "h"):
        if key in kw:
            kw[key] = Fraction(kw[key])
    if "name" not in kw or "family" not in kw:
        raise ValueError("scenario needs at least 'name' and 'family'")
    return Scenario(**kw)


def parse_scenario_text(text: str, base_dir: Path | None = None) -> list[Scenario]:
    pairs = _parse_lines(text)
    includes = [v for k, v in pairs if k == "include"]
    if includes:
        if len(includes) != len(pairs):
            raise ValueError("a batch file may only contain include lines")
        out = []
        for inc in includes:
            out.extend(load_scenarios(inc, base_dir))
        return out
    return [scenario_from_pairs(pairs)]


def load_scenarios(path, base_dir: Path | None = None) -> list[Scenario]:
    """Read a scenario or batch file; includes resolve relative to the including file."""
    p = Path(path)
    if not p.is_absolute() and base_dir is not None:
        p = base_dir / p
    if not p.exists():
        name = Path(path).name
        bundled = resources.files("swkblab") / "scenarios" / (name if name.endswith(".scn") else name + ".scn")
        if bundled.is_file():
            return parse_scenario_text(bundled.read_text(), None)
        raise FileNotFoundError(f"scenario file not found: {p}")
    return parse_scenario_text(p.read_text(), p.parent)


def bundled_scenarios(fig_id: str) -> list[Scenario]:
    text = (resources.files("swkblab") / "scenarios" / f"{fig_id}.scn").read_text()
    return parse_scenario_text(text)


# ---------------------------------------------------------------------------
# execution
# ---------------------------------------------------------------------------

def _row(dsys: DeformedSystem, n: int, form: str | None, tol: float) -> ResultRow:
    t0 = time.perf_counter()
    try:
        r = swkb_integral(dsys, n, form, tol)
    except (SWKBError, ArithmeticError, ValueError) as exc:
        return ResultRow(n, dsys.level_index(n), math.nan, math.nan, 0,
                         time.perf_counter() - t0, f"{type(exc).__name__}: {exc}")
    return ResultRow(n, r.breve_n, r.I_over_pi, r.err, r.interval_count, time.perf_counter() - t0)


def evaluate_checks(result: ScenarioResult) -> list[tuple[str, bool, str]]:
    s, rows = result.scenario, result.ok_rows
    checks = []
    failed = [r for r in result.rows if r.failure]
    checks.append(("all rows computed", not failed,
                   f"{len(failed)} failed" if failed else f"{len(result.rows)} rows"))
    if not rows:
        return checks
    m = result.max_abs_err
    if s.target_max_err is not None:
        rel = abs(m - s.target_max_err) / s.target_max_err
        checks.append((f"max|err| within {s.target_rel_tol:.0%} of {s.target_max_err:g}",
                       rel <= s.target_rel_tol, f"{m:.3e} (off by {rel:.1%})"))
    if s.max_err_below is not None:
        checks.append((f"max|err| < {s.max_err_below:g}", m < s.max_err_below, f"{m:.3e}"))
    if s.expect_sign in ("+", "-"):
        want = 1 if s.expect_sign == "+" else -1
        bad = [r.n for r in rows if np.sign(r.err) != want]
        checks.append((f"I - n*pi has sign {s.expect_sign} for every n", not bad,
                       f"wrong sign at n={bad}" if bad else "ok"))
    if s.argmax_window is not None and s.d is not None:
        dist = abs(result.argmax_n - s.d)
        checks.append((f"argmax n within {s.argmax_window} of d={s.d}", dist <= s.argmax_window,
                       f"argmax n={result.argmax_n}"))
    if s.min_intervals_at_n1 is not None:
        row1 = next((r for r in rows if r.n == 1), None)
        count = row1.interval_count if row1 else 0
        checks.append((f">= {s.min_intervals_at_n1} turning intervals at n=1",
                       count >= s.min_intervals_at_n1, f"{count} intervals"))
    if s.sign_change_below is not None:
        signs = [np.sign(r.err) for r in rows if r.n < s.sign_change_below]
        flips = sum(a != b for a, b in zip(signs, signs[1:]))
        checks.append((f"err changes sign for n < {s.sign_change_below}", flips >= 1,
                       f"{flips} sign changes"))
    return checks


def run_scenario(s: Scenario, n_max: int | None = None, tol: float | None = None, threads: int = 1,
                 precision: str = "auto") -> ScenarioResult:
    """Sweep the SWKB integral over ``n_min..n_max``; failing rows are recorded, not raised."""
    problems = s.validation_problems()
    if problems:
        raise InvalidParameters(problems)
    dsys = s.build(precision)
    ns = range(s.n_min, (n_max or s.n_max) + 1)
    tol = tol or s.tol
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            rows = list(pool.map(lambda n: _row(dsys, n, s.form, tol), ns))
    else:
        rows = [_row(dsys, n, s.form, tol) for n in ns]
    result = ScenarioResult(s, rows)
    result.checks = evaluate_checks(result)
    return result


def rescaled_err(err: float) -> float:
    """``sgn(err) 2**log10|err|``, the compressed scale used for error plots."""
    if err == 0 or not np.isfinite(err):
        return 0.0
    return math.copysign(2.0 ** math.log10(abs(err)), err)


def write_csv(result: ScenarioResult, path, with_rescaled: bool = False) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    cols = CSV_COLUMNS + (("err_plot",) if with_rescaled else ())
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(cols)
        for r in result.rows:
            vals = [r.n, r.breve_n, f"{r.I_over_pi:.17g}", f"{r.err:.17g}", r.interval_count]
            if with_rescaled:
                vals.append(f"{rescaled_err(r.err):.17g}")
            w.writerow(vals)
    return path


def read_csv(path) -> list[dict]:
    with Path(path).open() as fh:
        return list(csv.DictReader(fh))


def git_describe() -> str:
    try:
        out = subprocess.run(["git", "describe", "--always", "--dirty", "--tags"],
                             cwd=Path(__file__).resolve().parent, capture_output=True,
                             text=True, timeout=10)
    except (OSError, subprocess.SubprocessError):
        return "unknown"
    return out.stdout.strip() or "unknown"


# ---------------------------------------------------------------------------
# figures
# ---------------------------------------------------------------------------

FIGURE_IDS = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6")


def _scenario_lines(s: Scenario) -> list[str]:
    lines = [f"[{s.name}]", f"family = {s.family}"]
    if s.family in ("L", "J"):
        lines.append(f"g = {s.g}")
    if s.family == "J":
        lines.append(f"h = {s.h}")
    lines.append(f"kind = {s.kind}")
    if s.kind == "mi":
        lines += [f"d_I = {list(s.d_I)}", f"d_II = {list(s.d_II)}"]
    if s.kind == "ka":
        lines.append(f"D = {{{s.d}, {s.d + 1}}}")
    return lines


def reproduce_figure(fig_id: str, out_dir, n_max: int | None = None, tol: float | None = None,
                     threads: int = 1, precision: str = "auto") -> tuple[list[ScenarioResult], Path]:
    """Write one CSV per panel plus ``<fig_id>_manifest.txt``; return results and manifest path."""
    if fig_id not in FIGURE_IDS:
        raise ValueError(f"unknown figure {fig_id!r}; choose from {FIGURE_IDS}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    results = []
    lines = [f"figure = {fig_id}", f"build = {git_describe()}",
             "note = the plotted n-range is not stated for the reference figures; "
             "the range below is an assumption"]
    for s in bundled_scenarios(fig_id):
        res = run_scenario(s, n_max, tol, threads, precision)
        results.append(res)
        csv_path = write_csv(res, out / f"{s.name}.csv", with_rescaled=True)
        lines += [""] + _scenario_lines(s)
        lines += [f"n_range = {s.n_min}..{n_max or s.n_max}", f"csv = {csv_path.name}",
                  f"max_abs_err = {res.max_abs_err:.6e}", f"argmax_n = {res.argmax_n}"]
        if s.target_max_err is not None:
            rel = (res.max_abs_err - s.target_max_err) / s.target_max_err
            lines += [f"reference_max_abs_err = {s.target_max_err:g}", f"relative_difference = {rel:+.4f}"]
        for label, ok, detail in res.checks:
            lines.append(f"check = {'PASS' if ok else 'FAIL'} | {label} | {detail}")
    if fig_id == "fig3":
        lines += _write_fig3_curve(results[0].scenario, out, precision)
    manifest = out / f"{fig_id}_manifest.txt"
    manifest.write_text("\n".join(lines) + "\n")
    return results, manifest


def _write_fig3_curve(s: Scenario, out: Path, precision: str) -> list[str]:
    dsys = s.build(precision)
    w2 = logderiv_sq(dsys, "xi")
    xi = np.linspace(-5.0, 5.0, 2001)
    level = dsys.level_index(1)
    E = 2.0 * level
    path = out / f"{s.name}_w2.csv"
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(("xi", "w2", "energy_n1"))
        for x, v in zip(xi, w2(xi)):
            w.writerow((f"{x:.17g}", f"{v:.17g}", f"{E:.17g}"))
    return ["", f"w2_curve = {path.name}", f"energy_line = 2*breve(1) = {E:g}"]
