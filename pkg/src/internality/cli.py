"""Command-line front end.

Exit codes: 0 Yes, 1 No, 2 Unknown, 3 bad input or usage, 4 a certificate
failed verification, 5 internal error.  ``corpus`` exits 0 when every query
ran without error and every Yes verified, otherwise the worst error code.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from . import decision, numeric
from .decision import Answer, SystemSpec, Verdict
from .errors import InternalityError, PreconditionError, VerificationError
from .parsing import parse_ratfunc
from .report import SCHEMA_VERSION, verdict_from_json, verdict_to_json

__all__ = ["Query", "run_command", "build_parser", "main", "EXIT_USAGE", "EXIT_VERIFICATION", "EXIT_INTERNAL"]

COMMANDS = ("check-single", "check-log-system", "check-general", "verify", "xcheck", "corpus")
EXIT_USAGE = 3
EXIT_VERIFICATION = 4
EXIT_INTERNAL = 5


class UsageError(InternalityError):
    code = "usage"


@dataclass(frozen=True)
class Query:
    command: str
    f: Optional[str] = None
    g: Optional[str] = None
    params: tuple[str, ...] = ()
    m_bound: int = decision.DEFAULT_M_BOUND
    allow_trivial_m: bool = False
    xcheck: bool = False
    step: float = 1e-4
    t_end: float = 0.2
    inits: tuple[float, ...] = (1.0, 2.0, 3.0, 4.0)
    x0: float = 0.5
    report: Optional[str] = None
    files: tuple[str, ...] = field(default=())

    def options(self) -> dict:
        out = {"m_bound": self.m_bound, "allow_trivial_m": self.allow_trivial_m, "xcheck": self.xcheck}
        if self.xcheck or self.command == "xcheck":
            out.update(step=self.step, t_end=self.t_end, inits=list(self.inits), x0=self.x0)
        if self.report is not None:
            out["report"] = self.report
        if self.files:
            out["files"] = list(self.files)
        return out


def _empty_report(q: Query) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": q.command,
        "inputs": {"f": q.f, "g": q.g, "params": list(q.params), "options": q.options()},
        "verdict": None,
        "exit_code": EXIT_INTERNAL,
        "verification": {"symbolic": None, "numeric": None},
        "timing": {"seconds": 0.0},
        "error": None,
    }


def _spec_for(command: str, f, g) -> SystemSpec:
    if command == "check-log-system":
        return SystemSpec.log_system(f)
    if command == "check-general":
        return SystemSpec(f, g)
    return SystemSpec(f)


def _drift_json(kind: str, compute) -> dict:
    try:
        d = compute()
    except (InternalityError, ValueError, ArithmeticError) as exc:
        return {"kind": kind, "drift": None, "blew_up": False, "t_reached": 0.0, "skipped": str(exc)}
    return {"kind": kind, "drift": float(d), "blew_up": d.blew_up, "t_reached": d.t_reached, "skipped": d.skipped}


def _decide(q: Query, f, g) -> Verdict:
    if q.command in ("check-single", "xcheck"):
        return decision.check_single_equation(f)
    if q.command == "check-log-system":
        return decision.check_log_system(f)
    return decision.check_general_system(f, g, q.m_bound, q.allow_trivial_m)


def _run_check(q: Query, report: dict) -> None:
    if q.f is None:
        raise UsageError(f"{q.command} needs -f")
    if q.command == "check-general" and q.g is None:
        raise UsageError("check-general needs -g")
    if q.command != "check-general" and q.g is not None:
        raise UsageError(f"{q.command} does not take -g")
    f = parse_ratfunc(q.f, q.params)
    g = parse_ratfunc(q.g, q.params) if q.g is not None else None
    report["inputs"]["f"] = str(f)
    report["inputs"]["g"] = str(g) if g is not None else None
    spec = _spec_for(q.command, f, g)
    verdict = _decide(q, f, g)
    report["verdict"] = verdict_to_json(verdict)
    report["exit_code"] = verdict.answer.exit_code
    if verdict.answer is Answer.YES:
        ok = decision.verify_witness(spec, verdict)
        report["verification"]["symbolic"] = ok
        if not ok:
            raise VerificationError("certificate failed exact re-verification")
    if q.command == "xcheck":
        report["verification"]["numeric"] = _drift_json(
            "cross-ratio", lambda: numeric.cross_ratio_drift(f, q.inits, q.t_end, q.step)
        )
    elif q.xcheck and verdict.answer is Answer.YES:
        report["verification"]["numeric"] = _drift_json(
            "witness", lambda: numeric.witness_drift(spec, verdict, q.x0, q.t_end, q.step)
        )


def _run_verify(q: Query, report: dict) -> None:
    if q.report is None:
        raise UsageError("verify needs --report")
    try:
        original = json.loads(Path(q.report).read_text())
        inputs = original["inputs"]
        command = original["command"]
        params = tuple(inputs.get("params", ()))
        vjson = original["verdict"]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read report {q.report}: {exc}") from None
    if vjson is None or vjson.get("answer") != Answer.YES.value:
        raise PreconditionError("only reports with a Yes verdict carry witnesses")
    f = parse_ratfunc(inputs["f"], params)
    g = parse_ratfunc(inputs["g"], params) if inputs.get("g") is not None else None
    report["inputs"].update(f=str(f), g=str(g) if g is not None else None, params=list(params))
    verdict = verdict_from_json(vjson, params)
    report["verdict"] = verdict_to_json(verdict)
    ok = decision.verify_witness(_spec_for(command, f, g), verdict)
    report["verification"]["symbolic"] = ok
    if not ok:
        raise VerificationError("certificate failed exact re-verification")
    report["exit_code"] = 0


def _run_corpus(q: Query, report: dict) -> None:
    if not q.files:
        raise UsageError("corpus needs at least one file")
    parser = build_parser()
    results = []
    for path in q.files:
        try:
            lines = Path(path).read_text().splitlines()
        except OSError as exc:
            raise UsageError(f"cannot read corpus {path}: {exc}") from None
        for line in lines:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                sub = _query_from_args(parser.parse_args(shlex.split(line)))
                if sub.command == "corpus":
                    raise UsageError("corpus files cannot nest corpus queries")
            except (UsageError, ValueError) as exc:
                sub_report = _empty_report(Query("corpus"))
                sub_report["error"] = {"code": "usage", "message": f"{line}: {exc}"}
                sub_report["exit_code"] = EXIT_USAGE
                sub_report["results"], sub_report["summary"] = [], {}
                results.append(sub_report)
                continue
            results.append(run_command(sub))
    summary = {"yes": 0, "no": 0, "unknown": 0, "error": 0}
    for r in results:
        if r["error"] is not None:
            summary["error"] += 1
        else:
            summary[r["verdict"]["answer"]] += 1
    report["results"] = results
    report["summary"] = summary
    codes = [r["exit_code"] for r in results if r["exit_code"] > 2]
    report["exit_code"] = max(codes) if codes else 0


def run_command(q: Query) -> dict:
    """Execute one query and return its report (``report["exit_code"]`` is the process exit code)."""
    report = _empty_report(q)
    start = time.perf_counter()
    try:
        if q.command in ("check-single", "check-log-system", "check-general", "xcheck"):
            _run_check(q, report)
        elif q.command == "verify":
            _run_verify(q, report)
        elif q.command == "corpus":
            _run_corpus(q, report)
        else:
            raise UsageError(f"unknown command {q.command!r}")
    except VerificationError as exc:
        report["error"] = {"code": exc.code, "message": str(exc)}
        report["exit_code"] = EXIT_VERIFICATION
    except InternalityError as exc:
        report["error"] = {"code": exc.code, "message": str(exc)}
        report["exit_code"] = EXIT_USAGE
    except Exception as exc:  # surfaced, never swallowed silently
        report["error"] = {"code": "internal", "message": f"{type(exc).__name__}: {exc}"}
        report["exit_code"] = EXIT_INTERNAL
    report["timing"]["seconds"] = time.perf_counter() - start
    return report


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _csv(kind):
    def conv(text: str):
        items = [s.strip() for s in text.split(",") if s.strip()]
        return tuple(kind(s) for s in items)

    return conv


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-f", help="right-hand side of x' = f(x)")
    common.add_argument("-g", help="coefficient in y' = g(x) y (check-general only)")
    common.add_argument("--params", type=_csv(str), default=(), help="comma-separated parameter names, e.g. t,s")
    common.add_argument("--m-bound", type=int, default=decision.DEFAULT_M_BOUND, help="kept for compatibility; the exact solver needs no bound")
    common.add_argument("--allow-trivial-m", action="store_true", help="accept m = 0 in condition (ii)")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", default="json", help="JSON report (default)")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text", help="human-readable report")
    common.add_argument("--xcheck", action="store_true", help="also run the numeric shadow")
    common.add_argument("--step", type=float, default=1e-4, help="RK4 step size")
    common.add_argument("--t-end", type=float, default=0.2, help="integration horizon")
    common.add_argument("--inits", type=_csv(float), default=(1.0, 2.0, 3.0, 4.0), help="four initial values for xcheck")
    common.add_argument("--x0", type=float, default=0.5, help="start point for witness drift")

    parser = _Parser(prog="internality", description="Decide internality to constants for rational ODE systems.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS[:3]:
        sub.add_parser(name, parents=[common])
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("--report", required=True, help="JSON report written by a check command")
    sub.add_parser("xcheck", parents=[common])
    p = sub.add_parser("corpus", parents=[common])
    p.add_argument("files", nargs="+", help="one query per line, written as command-line arguments")
    return parser


def _query_from_args(ns: argparse.Namespace) -> Query:
    return Query(
        command=ns.command,
        f=ns.f,
        g=ns.g,
        params=tuple(ns.params),
        m_bound=ns.m_bound,
        allow_trivial_m=ns.allow_trivial_m,
        xcheck=ns.xcheck,
        step=ns.step,
        t_end=ns.t_end,
        inits=tuple(ns.inits),
        x0=ns.x0,
        report=getattr(ns, "report", None),
        files=tuple(getattr(ns, "files", ())),
    )


def format_text(report: dict, indent: str = "") -> str:
    lines = [f"{indent}{report['command']}: exit {report['exit_code']}"]
    inp = report["inputs"]
    if inp["f"] is not None:
        lines.append(f"{indent}  f = {inp['f']}")
    if inp["g"] is not None:
        lines.append(f"{indent}  g = {inp['g']}")
    v = report["verdict"]
    if v is not None:
        lines.append(f"{indent}  verdict: {v['answer']}")
        if v["certificate"] is not None:
            lines.append(f"{indent}  certificate: {v['certificate']['pretty']}")
        if v["obstruction"] is not None:
            lines.append(f"{indent}  obstruction: {v['obstruction']['text']}")
        if v["reason"] is not None:
            lines.append(f"{indent}  reason: {v['reason']}")
    ver = report["verification"]
    if ver["symbolic"] is not None:
        lines.append(f"{indent}  symbolic verification: {'pass' if ver['symbolic'] else 'FAIL'}")
    if ver["numeric"] is not None:
        n = ver["numeric"]
        if n["skipped"]:
            lines.append(f"{indent}  numeric {n['kind']}: skipped ({n['skipped']})")
        else:
            flag = " (blew up)" if n["blew_up"] else ""
            lines.append(f"{indent}  numeric {n['kind']} drift: {n['drift']:.3e} to t = {n['t_reached']:.4g}{flag}")
    if report["error"] is not None:
        lines.append(f"{indent}  error [{report['error']['code']}]: {report['error']['message']}")
    for r in report.get("results", []):
        lines.append(format_text(r, indent + "  "))
    if "summary" in report:
        lines.append(f"{indent}  summary: " + ", ".join(f"{k} {n}" for k, n in report["summary"].items()))
    return "\n".join(lines)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt = "text" if "--text" in argv else "json"
    try:
        q = _query_from_args(parser.parse_args(argv))
    except UsageError as exc:
        command = next((a for a in argv if a in COMMANDS), "check-single")
        report = _empty_report(Query(command))
        report["error"] = {"code": exc.code, "message": str(exc)}
        report["exit_code"] = EXIT_USAGE
        parser.print_usage(sys.stderr)
    else:
        report = run_command(q)
    if fmt == "text":
        print(format_text(report))
    else:
        print(json.dumps(report, indent=2))
    return report["exit_code"]


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
