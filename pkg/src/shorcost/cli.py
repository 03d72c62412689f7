"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 infeasible estimate, 3 failed
verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, replace
from typing import Optional, Sequence

from . import __version__
from .abstract_cost import CostParams, FactoryKind
from .config import DEFAULT_ASSUMPTIONS, PhysicalAssumptions, load_assumptions
from .factories import UnsupportedDistance
from .optimizer import EstimateReport, InfeasibleProblem, make_table, optimize, report_for
from .problems import FAMILIES, TABLE_MODULI, ProblemInstance, UnsupportedModulus, family_instance
from .reports import FORMATS, ReportRow, render, two_sig

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_VERIFY = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_assumption_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("physical assumptions")
    g.add_argument("--config", help="JSON file with gate_error, cycle_us, reaction_us, misc_ms")
    g.add_argument("--gate-error", type=float, help="physical gate error rate (default 1e-3)")
    g.add_argument("--cycle-us", type=float, help="surface code cycle time in microseconds (default 1)")
    g.add_argument("--reaction-us", type=float, help="reaction time in microseconds (default 10)")


def _assumptions(args) -> PhysicalAssumptions:
    base = load_assumptions(args.config) if args.config else DEFAULT_ASSUMPTIONS
    updates = {}
    if args.gate_error is not None:
        updates["gate_error"] = args.gate_error
    if args.cycle_us is not None:
        updates["cycle_time"] = args.cycle_us * 1e-6
    if args.reaction_us is not None:
        updates["reaction_time"] = args.reaction_us * 1e-6
    return replace(base, **updates)


def _parse_params(text: str, factory: str) -> CostParams:
    parts = text.split(",")
    if len(parts) != 6:
        raise UsageError("--params takes d1,d2,delta_off,c_mul,c_exp,c_sep")
    try:
        d1, d2, delta_off, c_mul, c_exp, c_sep = (int(x) for x in parts)
    except ValueError:
        raise UsageError(f"--params values must be integers, got {text!r}") from None
    return CostParams(d1, d2, delta_off, c_exp, c_mul, c_sep, FactoryKind(factory))


def _problem(family: str, n: int, n_e: Optional[int]) -> ProblemInstance:
    problem = family_instance(family, n) if n_e is None else None
    if problem is None:
        kind = FAMILIES[family][0]
        problem = ProblemInstance(kind, n, n_e)
    return problem


def report_dict(report: EstimateReport) -> dict:
    def plain(obj):
        d = asdict(obj)
        return {k: (v.value if hasattr(v, "value") else v) for k, v in d.items()}

    return {
        "problem": plain(report.problem),
        "params": plain(report.params),
        "abstract": asdict(report.abstract),
        "errors": asdict(report.errors),
        "layout": asdict(report.layout),
        "physical": {**asdict(report.physical), "megaqubits": report.physical.megaqubits,
                     "hours_per_run": report.physical.hours_per_run},
        "objective": report.objective,
        "flagged": report.flagged,
    }


def _text_report(report: EstimateReport) -> str:
    p, ph, e = report.params, report.physical, report.errors
    lines = [
        f"problem        {report.problem.kind.value} n={report.problem.n} n_e={report.problem.n_e}",
        f"parameters     d1={p.d1} d2={p.d2} delta_off={p.delta_off} c_mul={p.c_mul} "
        f"c_exp={p.c_exp} c_sep={p.c_sep} factory={p.factory.value}",
        f"toffolis       {report.abstract.toffoli_count:.3e}",
        f"meas. depth    {report.abstract.measurement_depth:.3e}",
        f"logical qubits {report.layout.logical_qubit_total}",
        f"retry risk     {two_sig(ph.retry_risk * 100)}%",
        f"  topological  {e.topological_error:.2e}",
        f"  distillation {e.distillation_error:.2e}",
        f"  approx.      {e.approximation_error:.2e}",
        f"megaqubits     {two_sig(ph.megaqubits)}",
        f"hours per run  {two_sig(ph.hours_per_run)}",
        f"volume/run     {two_sig(ph.volume_per_run)} megaqubitdays",
        f"expected vol.  {two_sig(ph.expected_volume)} megaqubitdays",
    ]
    if report.flagged:
        lines.append("warning: retry risk is at least 50%")
    return "\n".join(lines) + "\n"


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", newline="\n", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def cmd_estimate(args) -> int:
    assumptions = _assumptions(args)
    problem = _problem(args.problem, args.n, args.n_e)
    if args.params:
        report = report_for(problem, _parse_params(args.params, args.factory), assumptions)
        if report.errors.retry_risk >= 1:
            raise InfeasibleProblem("the given parameters fail with certainty",
                                    report.errors.dominant_component())
    else:
        report = optimize(problem, assumptions)
    if args.format == "json":
        text = json.dumps(report_dict(report), indent=2) + "\n"
    elif args.format == "csv":
        text = render([ReportRow.from_report(report)], "csv")
    else:
        text = _text_report(report)
    _emit(text, args.out)
    return EXIT_OK


def cmd_table(args) -> int:
    rows = [ReportRow.from_report(r) for r in make_table(args.family, _assumptions(args))]
    _emit(render(rows, args.format), args.out)
    return EXIT_OK


def _sweep_sizes(args) -> list[int]:
    if args.sizes:
        return args.sizes
    if args.n_min is None and args.n_max is None:
        return list(TABLE_MODULI)
    lo, hi = args.n_min or 1024, args.n_max or 16384
    if lo > hi or args.points < 1:
        raise UsageError("need n-min <= n-max and at least one point")
    if args.points == 1:
        return [lo]
    ratio = (hi / lo) ** (1 / (args.points - 1))
    return sorted({2 * round(lo * ratio**i / 2) for i in range(args.points)})


SWEEP_COLUMNS = ("n", "n_e", "expected_volume", "megaqubits", "hours_per_run", "retry_risk")


def cmd_sweep(args) -> int:
    assumptions = _assumptions(args)
    lines = [",".join(SWEEP_COLUMNS)]
    records = []
    for n in _sweep_sizes(args):
        r = optimize(family_instance(args.problem, n), assumptions)
        rec = {"n": n, "n_e": r.problem.n_e, "expected_volume": r.physical.expected_volume,
               "megaqubits": r.physical.megaqubits, "hours_per_run": r.physical.hours_per_run,
               "retry_risk": r.physical.retry_risk}
        records.append(rec)
        lines.append(",".join(repr(rec[c]) if isinstance(rec[c], float) else str(rec[c]) for c in SWEEP_COLUMNS))
    text = json.dumps(records, indent=2) + "\n" if args.format == "json" else "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    from .sim import PostProcessingFailure, SimParams, build_windowed_modexp, recover_factors_from_sum

    N, g = args.N, args.g
    params = SimParams(args.c_exp, args.c_mul, args.c_pad)
    n_e = args.n_e or N.bit_length()
    if args.e is not None:
        n_e = max(n_e, args.e.bit_length())
    mc = build_windowed_modexp(g, N, N.bit_length(), params, n_e)
    print(f"circuit: {len(mc.circuit)} gates, {mc.circuit.num_qubits} qubits, "
          f"{mc.lookup_additions} lookup additions")
    if args.e is not None:
        got = int(mc.run([args.e])[0])
        print(f"{g}^{args.e} mod {N} = {got} (expected {pow(g, args.e, N)})")
        if got != pow(g, args.e, N):
            return EXIT_VERIFY
    if args.factor:
        # g^(N+1) = g^(p+q) when N = pq, so p + q is a logarithm of g^(N+1).
        target = pow(g, N + 1, N)
        results = mc.run(range(1 << n_e))
        for d in (int(e) for e in (results == target).nonzero()[0]):
            try:
                p, q = recover_factors_from_sum(d, N)
            except PostProcessingFailure:
                continue
            if 1 < p < N:
                print(f"d = {d}: {N} = {p} x {q}")
                return EXIT_OK
        print(f"no factorization of {N} found from exponents below 2^{n_e}")
        return EXIT_VERIFY
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_suites

    results = run_suites(quick=args.quick)
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="shorcost", description="Cost estimates for factoring and discrete logarithms "
                     "with windowed, coset-encoded arithmetic on a surface code machine.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("estimate", help="optimize (or evaluate) one problem instance")
    p.add_argument("--problem", choices=sorted(FAMILIES), default="rsa")
    p.add_argument("--n", type=int, required=True, help="modulus length in bits")
    p.add_argument("--n-e", type=int, help="override the exponent length")
    p.add_argument("--params", help="evaluate d1,d2,delta_off,c_mul,c_exp,c_sep instead of optimizing")
    p.add_argument("--factory", choices=[k.value for k in FactoryKind], default="CCZ")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out")
    _add_assumption_flags(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("table", help="optimized rows for every tabulated modulus length")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("--format", choices=FORMATS, default="csv")
    p.add_argument("--out")
    _add_assumption_flags(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("sweep", help="optimized costs across modulus lengths (plot data)")
    p.add_argument("--problem", choices=sorted(FAMILIES), default="rsa")
    p.add_argument("--sizes", type=int, nargs="+")
    p.add_argument("--n-min", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--points", type=int, default=9)
    p.add_argument("--format", choices=FORMATS, default="csv")
    p.add_argument("--out")
    _add_assumption_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("simulate", help="run the windowed modexp circuit on a small modulus")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--g", type=int, default=2)
    p.add_argument("--e", type=int, help="exponent to evaluate")
    p.add_argument("--n-e", type=int, help="exponent bits (default: bit length of N)")
    p.add_argument("--factor", action="store_true", help="recover p, q from the logarithm of g^(N+1)")
    p.add_argument("--c-exp", type=int, default=2)
    p.add_argument("--c-mul", type=int, default=2)
    p.add_argument("--c-pad", type=int, default=8)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="run the simulator invariant suites")
    p.add_argument("--quick", action="store_true", help="smaller exhaustive ranges")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleProblem as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        if exc.dominant_component:
            print(f"dominating error component: {exc.dominant_component}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (UsageError, UnsupportedModulus, UnsupportedDistance, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
