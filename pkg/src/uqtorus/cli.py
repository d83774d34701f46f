"""Command line entry point: build, verify, export, eval.

Exit codes: 0 success, 1 a verification check failed, 2 usage or build error.
The largest accepted p is read from UQTORUS_MAX_P (default 7).
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from . import persist
from .suites import RUNNERS, SUITES, status_of

ENV_MAX_P = "UQTORUS_MAX_P"
DEFAULT_MAX_P = 7

STAGES = ("cyclo", "hopf", "quasi", "integrals", "repns", "slf")


class BuildError(Exception):
    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"build failed in stage {stage}: {cause}")
        self.stage = stage


def max_p() -> int:
    raw = os.environ.get(ENV_MAX_P, str(DEFAULT_MAX_P))
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"uqtorus: {ENV_MAX_P} must be an integer, got {raw!r}") from None


def check_p(p: int):
    cap = max_p()
    if p < 2:
        raise ValueError(f"p must be at least 2, got {p}")
    if p > cap:
        raise ValueError(f"p={p} exceeds the cap {cap} (set {ENV_MAX_P} to raise it)")


def build_pipeline(p: int):
    """Run the stages in order, naming the stage that fails."""
    from .cyclo import field_context
    from .hopf import uq
    from .integrals import build_integrals
    from .quasi import build_ribbon
    from .repns import build_pims, simple_modules
    from .slf import build_slf

    steps = {
        "cyclo": lambda: field_context(p),
        "hopf": lambda: uq(p),
        "quasi": lambda: build_ribbon(p),
        "integrals": lambda: build_integrals(p),
        "repns": lambda: (simple_modules(uq(p)), build_pims(uq(p))),
        "slf": lambda: build_slf(p),
    }
    out = None
    for stage in STAGES:
        try:
            out = steps[stage]()
        except Exception as exc:  # any structural failure aborts with the stage name
            raise BuildError(stage, exc) from exc
    return out


# ----------------------------------------------------------------------------
# commands


def cmd_build(args) -> int:
    data = build_pipeline(args.p)
    summary = {
        "p": args.p,
        "dim_algebra": data.alg.dim,
        "dim_slf": data.space.dim,
        "dim_center": len(data.center.canonical_basis()),
        "provenance": persist.provenance(data),
    }
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        files = []
        for what in persist.EXPORTS:
            (out / f"{what}.json").write_text(persist.dumps(persist.export(what, args.p)))
            files.append(f"{what}.json")
        summary["files"] = files
        (out / "manifest.json").write_text(persist.dumps(summary))
    sys.stdout.write(persist.dumps(summary))
    return 0


def run_suites(p: int, suites, timing: bool = True) -> dict:
    checks = []
    for name in suites:
        t0 = time.perf_counter()
        results = RUNNERS[name](p)
        elapsed = int(round((time.perf_counter() - t0) * 1000))
        seen = set()
        for c in results:
            cid = f"{name}/{c.check_id}"
            if cid in seen:
                raise RuntimeError(f"duplicate check id {cid}")
            seen.add(cid)
            status = status_of(name, c)
            entry = {"check_id": cid, "status": status, "wall_time_ms": elapsed if timing else 0}
            witness = c.witness
            if status == "fail" and witness is None:
                witness = "identity does not hold"
            if witness is not None:
                entry["witness"] = persist.scalar_json(witness)
            if status == "probe":
                entry["result"] = bool(c.ok)
            if c.values:
                entry["scalar_values"] = persist.scalar_json(c.values)
            checks.append(entry)
    checks.sort(key=lambda e: e["check_id"])
    counts = {s: sum(1 for e in checks if e["status"] == s) for s in ("pass", "fail", "skipped", "probe")}
    return {"p": p, "suites": list(suites), "checks": checks, "summary": counts}


def cmd_verify(args) -> int:
    if args.from_dir:
        art = persist.load_artifacts(args.from_dir)
        missing = [w for w in ("st-matrices", "gta-basis", "ribbon", "integrals") if w not in art]
        if missing:
            sys.stderr.write(f"uqtorus: missing artifacts in {args.from_dir}: {', '.join(missing)}\n")
            return 2
        try:
            checks = persist.reverify(art)
        except (KeyError, TypeError, ValueError) as exc:
            sys.stderr.write(f"uqtorus: malformed artifacts in {args.from_dir}: {exc}\n")
            return 2
        entries = sorted(({"check_id": f"import/{c.check_id}", "status": "pass" if c.ok else "fail",
                           **({"witness": persist.scalar_json(c.witness or "identity does not hold")}
                              if not c.ok else {})} for c in checks), key=lambda e: e["check_id"])
        report = {"p": art["st-matrices"]["p"], "suites": ["import"], "checks": entries,
                  "summary": {"pass": sum(c.ok for c in checks), "fail": sum(not c.ok for c in checks)},
                  "provenance": art.get("manifest", {}).get("provenance", {})}
    else:
        data = build_pipeline(args.p)
        suites = list(SUITES) if args.suite == "all" else [args.suite]
        report = run_suites(args.p, suites, timing=not args.no_timing)
        report["provenance"] = persist.provenance(data)
    if args.json:
        sys.stdout.write(persist.dumps(report))
    else:
        for e in report["checks"]:
            extra = f"  witness={e['witness']}" if "witness" in e else ""
            sys.stdout.write(f"{e['status'].upper():8s} {e['check_id']}{extra}\n")
        sys.stdout.write(" ".join(f"{k}={v}" for k, v in report["summary"].items()) + "\n")
    return 1 if report["summary"].get("fail") else 0


def cmd_export(args) -> int:
    build_pipeline(args.p)
    obj = persist.export(args.what, args.p)
    if args.format == "json":
        sys.stdout.write(persist.dumps(obj))
    else:
        sys.stdout.write(persist.render_text(args.what, obj, args.p))
    return 0


def cmd_eval(args) -> int:
    from .expr import ParseError, parse_element
    from .hopf import uq

    try:
        x = parse_element(uq(args.p), args.expr)
    except ParseError as exc:
        sys.stderr.write(f"uqtorus: parse error: {exc}\n  {args.expr}\n  {' ' * exc.pos}^\n")
        return 2
    if args.format == "json":
        sys.stdout.write(persist.dumps(x.to_json()))
    else:
        sys.stdout.write(str(x) + "\n")
    return 0


# ----------------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="uqtorus", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build the pipeline and optionally write artifacts")
    b.add_argument("--p", type=int, required=True)
    b.add_argument("--out", help="directory for JSON artifacts")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--p", type=int, default=2)
    v.add_argument("--suite", choices=("all",) + SUITES, default="all")
    v.add_argument("--json", action="store_true", help="emit the report as JSON")
    v.add_argument("--no-timing", action="store_true", help="zero the wall_time_ms fields")
    v.add_argument("--from", dest="from_dir", help="re-verify exported artifacts without rebuilding")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("export", help="export exact data")
    e.add_argument("what", nargs="?", choices=persist.EXPORTS)
    e.add_argument("--what", dest="what_opt", choices=persist.EXPORTS)
    e.add_argument("--p", type=int, default=2)
    e.add_argument("--format", choices=("json", "text"), default="json")
    e.set_defaults(func=cmd_export)

    ev = sub.add_parser("eval", help="evaluate an expression in the algebra")
    ev.add_argument("expr_pos", nargs="?", metavar="EXPR")
    ev.add_argument("--expr")
    ev.add_argument("--p", type=int, default=2)
    ev.add_argument("--format", choices=("json", "text"), default="text")
    ev.set_defaults(func=cmd_eval)
    return ap


def main(argv=None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    if args.command == "export":
        args.what = args.what_opt or args.what
        if args.what is None:
            ap.error("export needs a target (st-matrices, gta-basis, ribbon, integrals, modules)")
    if args.command == "eval":
        args.expr = args.expr if args.expr is not None else args.expr_pos
        if args.expr is None:
            ap.error("eval needs an expression")
    if not (args.command == "verify" and args.from_dir):
        try:
            check_p(args.p)
        except ValueError as exc:
            sys.stderr.write(f"uqtorus: {exc}\n")
            return 2
    try:
        return args.func(args)
    except BuildError as exc:
        sys.stderr.write(f"uqtorus: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
