"""Command-line front end: solve puzzle files, run formula-vs-oracle sweeps.

Exit codes: 0 when everything solved (and, with --check, agreed); 1 on
parse or I/O errors; 2 on a formula/oracle disagreement or bad sweep
bounds.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Mapping, Sequence

from .classics import (
    DrawnIsMoved,
    StationInstance,
    TransferInstance,
    format_survey,
    station_walk_formula,
    station_walk_simulate,
    transfer_formula_survey,
    transfer_probability_enumerate,
    transfer_probability_formula,
)
from .core import PuzzleKind, PuzzleSpec
from .errors import Infeasible, InvalidBounds
from .pigeonhole import (
    PigeonholeInstance,
    adversarial_sequence,
    formula_applicable,
    guarantee_draws_formula,
    guarantee_draws_oracle,
)
from .rate import RateField, RateQuery, ceil_subjects, rate_constant, solve_rate
from .speck import ParseFailure, parse_puzzles
from .weighing import (
    WeighingInstance,
    build_strategy,
    min_weighings_formula,
    min_weighings_oracle,
    render_strategy,
    strategy_to_dict,
)

THREADS_ENV = "RIDDLE_FORGE_THREADS"
WEIGHING_SWEEP_LIMIT = 3 ** 8
PIGEONHOLE_SWEEP_LIMITS = {"colors": 4, "count": 6, "required": 4}
TRANSFER_SWEEP_LIMIT = 8
STATION_TOLERANCE = 1e-9
STRATEGY_RENDER_LIMIT = 27  # explain-mode trees get big fast beyond this


@dataclass
class SolveOptions:
    check: bool = False
    explain: bool = False
    fmt: str = "text"
    ceil_subjects: bool = False
    out: str | None = None


@dataclass
class SolveReport:
    """One solved puzzle, ready for text or JSON output."""

    label: str
    kind: str
    answer: str
    checked: bool = False
    oracle: str | None = None
    agreement: bool | None = None
    explanation: list[str] = field(default_factory=list)
    strategy: dict | None = None  # weighing only, explain mode

    def to_dict(self) -> dict:
        data: dict = {"label": self.label, "kind": self.kind, "answer": self.answer}
        if self.checked:
            data["oracle"] = self.oracle
            data["agreement"] = self.agreement
        if self.explanation:
            data["explanation"] = self.explanation
        if self.strategy is not None:
            data["strategy"] = self.strategy
        return data

    def to_text(self) -> str:
        lines = [f"{self.label} [{self.kind}] answer = {self.answer}"]
        if self.checked:
            verdict = {True: "yes", False: "NO", None: "n/a"}[self.agreement]
            lines.append(f"  oracle = {self.oracle}  (agreement: {verdict})")
        lines.extend(f"  {line}" for line in self.explanation)
        return "\n".join(lines)


def _solve_rate_report(label: str, query: RateQuery, opts: SolveOptions) -> SolveReport:
    exact = solve_rate(query)
    shown: str = str(exact)
    rounded = None
    if opts.ceil_subjects and query.target is RateField.SUBJECTS:
        rounded = ceil_subjects(exact)
        shown = str(rounded)
    report = SolveReport(label, "rate", shown)
    if opts.explain:
        known = query.known
        k = rate_constant(known)
        given = query.given()
        w = given.get(RateField.WORK)
        s = given.get(RateField.SUBJECTS)
        t = given.get(RateField.TIME)
        report.explanation.append(
            f"rate constant: k = {known.work.magnitude}"
            f"/({known.subjects.magnitude}*{known.time.magnitude}) = {k}"
        )
        if query.target is RateField.SUBJECTS:
            equation = f"{w.magnitude}/(x*{t.magnitude}) = {k}"
        elif query.target is RateField.WORK:
            equation = f"x/({s.magnitude}*{t.magnitude}) = {k}"
        else:
            equation = f"{w.magnitude}/({s.magnitude}*x) = {k}"
        report.explanation.append(f"solve {equation}")
        word = None
        if query.target is not RateField.TIME:
            source = known.subjects if query.target is RateField.SUBJECTS else known.work
            word = source.label
        suffix = f" {word}" if word else ""
        if rounded is not None and Fraction(rounded) != exact:
            report.explanation.append(
                f"x = {exact}{suffix}, rounded up to {rounded} whole"
            )
        else:
            report.explanation.append(f"x = {exact}{suffix}")
    return report


def _solve_weighing_report(
    label: str, inst: WeighingInstance, opts: SolveOptions
) -> SolveReport:
    answer = min_weighings_formula(inst)
    report = SolveReport(label, "weighing", str(answer.weighings))
    if opts.explain:
        n = inst.n_objects
        if n == 1:
            report.explanation.append("a single object is already identified")
        else:
            i = answer.exponent
            report.explanation.append(
                f"bracket between powers of three: 3^{i} < {n} <= 3^{i + 1}"
            )
            report.explanation.append(
                f"weighings needed: P = {i} + 1 = {answer.weighings}"
            )
        if n <= STRATEGY_RENDER_LIMIT:
            tree = build_strategy(inst)
            report.strategy = strategy_to_dict(tree)
            report.explanation.append("strategy:")
            report.explanation.extend(
                "  " + line for line in render_strategy(tree).splitlines()
            )
        else:
            report.explanation.append(
                f"strategy tree elided ({n} objects; render up to "
                f"{STRATEGY_RENDER_LIMIT})"
            )
    if opts.check:
        oracle = min_weighings_oracle(inst)
        report.checked = True
        report.oracle = str(oracle)
        report.agreement = oracle == answer.weighings
    return report


def _solve_pigeonhole_report(
    label: str, inst: PigeonholeInstance, opts: SolveOptions
) -> SolveReport:
    n_colors = len(inst.color_counts)
    formula = guarantee_draws_formula(n_colors, inst.required)
    report = SolveReport(label, "pigeonhole", str(formula))
    if opts.explain:
        report.explanation.append(
            f"colors: {n_colors}, same-color run wanted: {inst.required}"
        )
        report.explanation.append(
            f"guaranteed draws: {n_colors}*({inst.required} - 1) + 1 = {formula}"
        )
    if opts.check:
        report.checked = True
        try:
            oracle = guarantee_draws_oracle(inst)
        except Infeasible as exc:
            report.oracle = "infeasible"
            report.agreement = False
            report.explanation.append(f"oracle: {exc}")
        else:
            report.oracle = str(oracle)
            report.agreement = oracle == formula
            if not formula_applicable(inst):
                report.explanation.append(
                    "note: the closed formula assumes every color has at least "
                    "required - 1 objects; this instance does not"
                )
            if opts.explain:
                stall = adversarial_sequence(inst)
                shown = ", ".join(stall[:30]) + (", ..." if len(stall) > 30 else "")
                report.explanation.append(f"longest stall ({len(stall)} draws): {shown}")
    return report


def _solve_transfer_report(
    label: str, inst: TransferInstance, opts: SolveOptions
) -> SolveReport:
    n = sum(count for _, count in inst.container_a)
    d = sum(count for _, count in inst.container_b)
    if d >= 1:
        formula = transfer_probability_formula(n, d)
        answer = str(formula)
    else:
        formula = None
        answer = "undefined"
    report = SolveReport(label, "transfer", answer)
    if opts.explain:
        report.explanation.append(
            f"folklore formula 2n/(n+d) with n = {n} (source total), "
            f"d = {d} (destination total): {answer}"
        )
    if opts.check:
        report.checked = True
        enumerated = transfer_probability_enumerate(inst)
        report.oracle = str(enumerated)
        report.agreement = formula is not None and enumerated == formula
        if not report.agreement:
            report.explanation.append(
                "formula and exact enumeration disagree here; "
                "run 'sweep transfer' for the full picture"
            )
    return report


def _solve_station_report(
    label: str, inst: StationInstance, opts: SolveOptions
) -> SolveReport:
    walked = station_walk_formula(inst)
    report = SolveReport(label, "station", str(walked))
    x, y = inst.early_minutes, inst.saved_minutes
    if opts.explain:
        report.explanation.append(
            f"walked = early - saved/2 = {x} - {y}/2 = {walked} min"
        )
    if opts.check:
        report.checked = True
        if y < x:
            # A parameter family realising (X, Y): car speed 1, walker speed
            # Y/(2X - Y) < 1, any distance beyond the meeting point.
            sim_walked, sim_saved = station_walk_simulate(
                distance=float(x),
                car_speed=1.0,
                walk_speed=float(y / (2 * x - y)),
                early_minutes=float(x),
            )
            report.oracle = f"{sim_walked:.12g}"
            report.agreement = (
                abs(sim_walked - float(walked)) <= STATION_TOLERANCE
                and abs(sim_saved - float(y)) <= STATION_TOLERANCE
            )
        else:
            # saved >= early needs a walker at least as fast as the car,
            # outside the simulation's preconditions.
            report.oracle = None
            report.agreement = None
            report.explanation.append(
                "kinematic check skipped: it covers saved < early only "
                "(the car must be faster than the walker)"
            )
    return report


def _solve_one(spec: PuzzleSpec, fallback_label: str, opts: SolveOptions) -> SolveReport:
    label = spec.label or fallback_label
    if spec.kind is PuzzleKind.RATE:
        return _solve_rate_report(label, spec.payload, opts)
    if spec.kind is PuzzleKind.WEIGHING:
        return _solve_weighing_report(label, spec.payload, opts)
    if spec.kind is PuzzleKind.PIGEONHOLE:
        return _solve_pigeonhole_report(label, spec.payload, opts)
    if spec.kind is PuzzleKind.TRANSFER:
        return _solve_transfer_report(label, spec.payload, opts)
    return _solve_station_report(label, spec.payload, opts)


def _format_reports(reports: list[SolveReport], opts: SolveOptions) -> str:
    if opts.fmt == "json":
        return json.dumps([r.to_dict() for r in reports], indent=2) + "\n"
    if not reports:
        return ""
    return "\n".join(r.to_text() for r in reports) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)


def cmd_solve(paths: Sequence[str], opts: SolveOptions) -> int:
    """Solve every puzzle in the given files and print one report each."""
    reports: list[SolveReport] = []
    failed = False
    for path in paths:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            print(f"error: {path}: {exc}", file=sys.stderr)
            failed = True
            continue
        try:
            specs = parse_puzzles(text)
        except ParseFailure as failure:
            for error in failure.errors:
                print(f"{path}:{error}", file=sys.stderr)
            failed = True
            continue
        stem = Path(path).stem
        for index, spec in enumerate(specs, 1):
            reports.append(_solve_one(spec, f"{stem}#{index}", opts))
    _emit(_format_reports(reports, opts), opts.out)
    if failed:
        return 1
    if any(report.agreement is False for report in reports):
        return 2
    return 0


# ----------------------------------------------------------------------
# Sweeps

def _thread_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return 1
    try:
        count = int(raw)
    except ValueError:
        count = 0
    if count < 1:
        raise InvalidBounds(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return count


def _map_ordered(fn: Callable, items: Sequence) -> list:
    """Apply fn to items, optionally in a thread pool, preserving order."""
    workers = _thread_count()
    if workers <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _sweep_weighing(max_objects: int) -> int:
    if max_objects < 1 or max_objects > WEIGHING_SWEEP_LIMIT:
        raise InvalidBounds(
            f"weighing sweep bound must be in [1, {WEIGHING_SWEEP_LIMIT}], "
            f"got {max_objects}"
        )
    mismatches: list[tuple[int, int, int]] = []
    compared = 0
    for n in range(2, max_objects + 1):
        inst = WeighingInstance(n)
        formula = min_weighings_formula(inst).weighings
        oracle = min_weighings_oracle(inst)
        compared += 1
        if formula != oracle:
            mismatches.append((n, formula, oracle))
    print(
        f"weighing sweep, N in [2, {max_objects}]: {compared} compared, "
        f"{compared - len(mismatches)} matched, {len(mismatches)} mismatched"
    )
    if mismatches:
        n, formula, oracle = mismatches[0]
        print(f"first mismatch: N={n} formula={formula} oracle={oracle}")
        return 2
    return 0


def _pigeonhole_family(max_colors: int, max_count: int, max_required: int):
    for colors in range(1, max_colors + 1):
        labels = [f"c{i + 1}" for i in range(colors)]
        counts = [0] * colors
        while True:
            for required in range(1, max_required + 1):
                yield tuple(zip(labels, counts)), required
            position = colors - 1
            while position >= 0 and counts[position] == max_count:
                counts[position] = 0
                position -= 1
            if position < 0:
                break
            counts[position] += 1


def _sweep_pigeonhole(max_colors: int, max_count: int, max_required: int) -> int:
    limits = PIGEONHOLE_SWEEP_LIMITS
    if not (1 <= max_colors <= limits["colors"]):
        raise InvalidBounds(f"colors bound must be in [1, {limits['colors']}]")
    if not (1 <= max_count <= limits["count"]):
        raise InvalidBounds(f"count bound must be in [1, {limits['count']}]")
    if not (1 <= max_required <= limits["required"]):
        raise InvalidBounds(f"required bound must be in [1, {limits['required']}]")

    instances = list(_pigeonhole_family(max_colors, max_count, max_required))

    def compare(item):
        pairs, required = item
        inst = PigeonholeInstance(pairs, required)
        if not formula_applicable(inst):
            return None
        formula = guarantee_draws_formula(len(pairs), required)
        oracle = guarantee_draws_oracle(inst)
        return (pairs, required, formula, oracle)

    results = _map_ordered(compare, instances)
    applicable = [r for r in results if r is not None]
    mismatches = [r for r in applicable if r[2] != r[3]]
    print(
        f"pigeonhole sweep, colors <= {max_colors}, counts <= {max_count}, "
        f"required <= {max_required}: {len(applicable)} applicable instances, "
        f"{len(applicable) - len(mismatches)} matched, {len(mismatches)} mismatched "
        f"({len(results) - len(applicable)} outside the formula's assumptions skipped)"
    )
    if mismatches:
        pairs, required, formula, oracle = mismatches[0]
        print(
            f"first mismatch: counts={dict(pairs)} required={required} "
            f"formula={formula} oracle={oracle}"
        )
        return 2
    return 0


def _sweep_transfer(max_n: int, max_d: int, out: str) -> int:
    if not (1 <= max_n <= TRANSFER_SWEEP_LIMIT) or not (1 <= max_d <= TRANSFER_SWEEP_LIMIT):
        raise InvalidBounds(
            f"transfer sweep bounds must be in [1, {TRANSFER_SWEEP_LIMIT}]"
        )
    rows = transfer_formula_survey(max_n, max_d)
    with open(out, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(format_survey(rows))
    matched = sum(1 for row in rows if row.match)
    print(
        f"transfer survey, n <= {max_n}, d <= {max_d}: {len(rows)} instances, "
        f"{matched} matched, {len(rows) - matched} mismatched (mismatches expected); "
        f"report written to {out}"
    )
    for row in rows:
        if not row.match:
            print(
                f"first mismatch: {row.key()} enumerated={row.enumerated} "
                f"formula={row.formula}"
            )
            break
    return 0


def cmd_sweep(kind: str, bounds: Mapping[str, int], out: str | None = None) -> int:
    """Run a formula-vs-oracle sweep for one puzzle kind."""
    if kind == "weighing":
        return _sweep_weighing(bounds.get("max", WEIGHING_SWEEP_LIMIT))
    if kind == "pigeonhole":
        return _sweep_pigeonhole(
            bounds.get("colors", 4), bounds.get("count", 6), bounds.get("required", 4)
        )
    if kind == "transfer":
        return _sweep_transfer(
            bounds.get("n", 4), bounds.get("d", 4), out or "transfer_survey.tsv"
        )
    raise InvalidBounds(f"unknown sweep kind {kind!r}")


# ----------------------------------------------------------------------
# argparse wiring

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riddle-forge",
        description="Solve puzzle files and verify the closed-form answers "
        "against independent oracles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve every puzzle in the given files")
    solve.add_argument("paths", nargs="+", metavar="FILE")
    solve.add_argument("--check", action="store_true",
                       help="also run the independent oracle where one exists")
    solve.add_argument("--explain", action="store_true",
                       help="show the worked solution, formula instance included")
    solve.add_argument("--format", choices=("text", "json"), default="text")
    solve.add_argument("--ceil-subjects", action="store_true", dest="ceil_subjects",
                       help="round fractional subject counts up to whole subjects")
    solve.add_argument("--out", help="write the report to a file instead of stdout")

    sweep = sub.add_parser("sweep", help="formula-vs-oracle verification sweeps")
    sweep_sub = sweep.add_subparsers(dest="sweep_kind", required=True)

    weighing = sweep_sub.add_parser("weighing")
    weighing.add_argument("--max", type=int, default=WEIGHING_SWEEP_LIMIT,
                          help=f"largest object count (default and cap: "
                          f"{WEIGHING_SWEEP_LIMIT})")

    pigeonhole = sweep_sub.add_parser("pigeonhole")
    pigeonhole.add_argument("--max-colors", type=int, default=4)
    pigeonhole.add_argument("--max-count", type=int, default=6)
    pigeonhole.add_argument("--max-required", type=int, default=4)

    transfer = sweep_sub.add_parser("transfer")
    transfer.add_argument("--max-n", type=int, default=4)
    transfer.add_argument("--max-d", type=int, default=4)
    transfer.add_argument("--out", default="transfer_survey.tsv")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "solve":
            opts = SolveOptions(
                check=args.check,
                explain=args.explain,
                fmt=args.format,
                ceil_subjects=args.ceil_subjects,
                out=args.out,
            )
            return cmd_solve(args.paths, opts)
        if args.sweep_kind == "weighing":
            return cmd_sweep("weighing", {"max": args.max})
        if args.sweep_kind == "pigeonhole":
            return cmd_sweep(
                "pigeonhole",
                {
                    "colors": args.max_colors,
                    "count": args.max_count,
                    "required": args.max_required,
                },
            )
        return cmd_sweep("transfer", {"n": args.max_n, "d": args.max_d}, out=args.out)
    except InvalidBounds as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())
