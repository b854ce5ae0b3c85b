"""Command-line front end: ``tiotest check|product|synth|run|oracle``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .execution.campaign import campaign, prepare
from .execution.impl import BlockingImplError, make_impl
from .execution.simulate import Budget
from .game.strategy import Unsatisfiable
from .model.analysis import check_deterministic, validate_spec, validate_tp
from .model.automaton import ModelError
from .model.completion import complete_tp
from .model.parser import ModelSyntaxError, load_model, to_text
from .model.product import product
from .model.tester import NondeterministicError
from .semantics.oracles import bounded_tioco, bounded_trace_equiv

OK, INVALID, IO_ERROR, UNSATISFIABLE, NONDETERMINISTIC, VIOLATION = 0, 1, 2, 3, 4, 5
OUT_ENV = "TIOTEST_OUT"


class _Usage(Exception):
    pass


def _load(path):
    try:
        return load_model(path)
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror or exc}") from exc


def _seeds(items) -> list:
    if not items:
        return list(range(1, 21))
    out = []
    for it in items:
        if ".." in it:
            lo, hi = it.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(it))
    return out


def _positive(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


class _Out:
    def __init__(self, args, command):
        d = args.out or os.environ.get(OUT_ENV)
        self.dir = Path(d) if d else None
        self.json = args.json
        self.command = command
        self.records = []

    def record(self, **rec) -> None:
        self.records.append({"command": self.command, **rec})

    def say(self, text: str) -> None:
        if not self.json:
            print(text)

    def write(self, name: str, text: str) -> None:
        if self.dir is None:
            return
        self.dir.mkdir(parents=True, exist_ok=True)
        (self.dir / name).write_text(text)

    def close(self, code: int) -> int:
        self.record(kind="exit", code=code)
        lines = "".join(json.dumps(r, sort_keys=True) + "\n" for r in self.records)
        if self.json:
            sys.stdout.write(lines)
        self.write(f"{self.command}.jsonl", lines)
        return code


def _tp(args, out):
    tp = _load(args.tp)
    if args.auto_complete_tp:
        tp = complete_tp(tp)
        out.say(f"completed {tp.name}")
    return tp


def cmd_check(args, out) -> int:
    spec = _load(args.spec)
    reports = [validate_spec(spec)]
    if args.tp:
        reports.append(validate_tp(_tp(args, out), spec))
    if args.dp:
        reports.append(check_deterministic(_load(args.dp)))
    code = OK
    for rep in reports:
        out.say(str(rep))
        for c in rep.checks:
            out.record(kind="check", subject=rep.subject, property=c.name, ok=c.ok, witness=None if c.witness is None else str(c.witness))
        if not rep.ok:
            f = rep.first_failure()
            out.say(f"FAILED {rep.subject}: {f.name} ({f.witness})")
            code = INVALID
    return code


def cmd_product(args, out) -> int:
    p = product(_load(args.a), _load(args.b))
    text = to_text(p)
    out.say(text.rstrip("\n"))
    out.write(f"{p.name}.ta", text)
    out.record(kind="product", name=p.name, locations=len(p.locations), edges=len(p.edges))
    return OK


def _prepare(args, out):
    spec = _load(args.spec)
    tp = _tp(args, out)
    for rep in (validate_spec(spec), validate_tp(tp, spec)):
        if not rep.ok:
            f = rep.first_failure()
            out.say(f"FAILED {rep.subject}: {f.name} ({f.witness})")
            out.record(kind="check", subject=rep.subject, property=f.name, ok=False)
            return None, INVALID
    dp = _load(args.dp) if args.dp else None
    det = _load(args.det_spec) if args.det_spec else None
    return prepare(spec, tp, dp=dp, det_spec=det, horizon=args.horizon), OK


def cmd_synth(args, out) -> int:
    case, code = _prepare(args, out)
    if case is None:
        return code
    names = case.tester.locations
    out.say(case.ranks.table(names))
    out.say(case.strategy.table())
    out.write("tester.ta", to_text(case.tester))
    out.write("ranks.txt", case.ranks.table(names) + "\n")
    out.write("strategy.txt", case.strategy.table() + "\n")
    for rec in case.strategy.records():
        out.record(kind="move", **rec)
    return OK


def cmd_run(args, out) -> int:
    spec = _load(args.spec)
    case_args = {"dp": _load(args.dp) if args.dp else None,
                 "det_spec": _load(args.det_spec) if args.det_spec else None}
    tp = _tp(args, out)
    impls = {}
    for path in args.impl:
        im = make_impl(_load(path), policy=args.policy, spec=spec, horizon=args.horizon)
        impls[path] = im
    targets = []
    for t in args.target or ():
        key, _, trace = t.partition("=")
        im = impls.get(key) or next((m for m in impls.values() if m.name == key), None)
        if im is None:
            raise _Usage(f"--target names {key!r}, which is not one of the implementations")
        targets.append((im, trace))
    budget = Budget(args.restarts, args.steps, args.fairness_bound)
    rep = campaign(spec, [tp], impls.values(), budget, _seeds(args.seed), targets=targets,
                   inject_fail=args.inject_fail, **case_args)
    out.say(rep.table())
    out.write("report.txt", rep.table() + "\n")
    for r in rep.records():
        out.record(**r)
    if not rep.ok:
        out.say("violated: " + ", ".join(rep.violated()))
        return VIOLATION
    return OK


def cmd_oracle(args, out) -> int:
    a, b = _load(args.a), _load(args.b)
    if args.relation == "tioco":
        r = bounded_tioco(a, b, args.horizon)
    else:
        r = bounded_trace_equiv(a, b, args.horizon, compare_accept=args.accept)
    out.say(str(r))
    out.record(kind="oracle", relation=args.relation, ok=r.ok, witness=None if r.witness is None else str(r.witness),
               action=r.action, explored=r.explored)
    return OK if r.ok else INVALID


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help=f"directory for artifacts and records (default ${OUT_ENV})")
    common.add_argument("--json", action="store_true", help="print line-delimited records instead of tables")
    common.add_argument("--horizon", type=_positive, default=6, help="action bound for trace oracles")
    common.add_argument("--auto-complete-tp", action="store_true", help="add missing test-purpose transitions")

    p = argparse.ArgumentParser(prog="tiotest", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", parents=[common], help="validate a spec, test purpose and deterministic product")
    c.add_argument("spec")
    c.add_argument("tp", nargs="?")
    c.add_argument("--dp")
    c.set_defaults(fn=cmd_check)

    c = sub.add_parser("product", parents=[common], help="print the synchronized product of two models")
    c.add_argument("a")
    c.add_argument("b")
    c.set_defaults(fn=cmd_product)

    for name, fn, hlp in (("synth", cmd_synth, "build tester, ranks and strategy"),
                          ("run", cmd_run, "run a conformance campaign")):
        c = sub.add_parser(name, parents=[common], help=hlp)
        c.add_argument("spec")
        c.add_argument("tp")
        c.add_argument("--dp", help="user-supplied deterministic product")
        c.add_argument("--det-spec", help="deterministic spec whose product with the test purpose is used")
        c.set_defaults(fn=fn)
        if name == "run":
            c.add_argument("impl", nargs="+")
            c.add_argument("--restarts", type=_positive, default=32)
            c.add_argument("--steps", type=_positive, default=10_000)
            c.add_argument("--fairness-bound", type=int, default=3)
            c.add_argument("--seed", action="append", help="seed or range lo..hi (repeatable, default 1..20)")
            c.add_argument("--policy", choices=("explicit", "absorb"), default="explicit")
            c.add_argument("--target", action="append", help="IMPL=TRACE exhaustiveness target (IMPL is a file or automaton name)")
            c.add_argument("--inject-fail", action="store_true", help="self-test: report Fail on a conformant run")

    c = sub.add_parser("oracle", parents=[common], help="bounded tioco or trace equivalence")
    c.add_argument("relation", choices=("tioco", "equiv"))
    c.add_argument("a")
    c.add_argument("b")
    c.add_argument("--accept", action="store_true", help="equiv: also compare accepting traces")
    c.set_defaults(fn=cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "fairness_bound", 1) < 1:
        print("error: --fairness-bound must be positive", file=sys.stderr)
        return IO_ERROR
    out = _Out(args, args.command)
    try:
        code = args.fn(args, out)
    except ModelSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        out.record(kind="error", error="syntax", message=str(exc), line=exc.line, column=exc.col)
        code = IO_ERROR
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        out.record(kind="error", error="io", message=str(exc))
        code = IO_ERROR
    except Unsatisfiable as exc:
        print(f"UNSATISFIABLE: {exc}", file=sys.stderr)
        out.record(kind="error", error="unsatisfiable", message=str(exc))
        code = UNSATISFIABLE
    except NondeterministicError as exc:
        print(f"error: {exc}; tester synthesis assumes a deterministic product (pass --dp)", file=sys.stderr)
        out.record(kind="error", error="nondeterministic", message=str(exc))
        code = NONDETERMINISTIC
    except BlockingImplError as exc:
        print(f"error: {exc}", file=sys.stderr)
        out.record(kind="error", error="validation", message=str(exc))
        code = INVALID
    except ModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        out.record(kind="error", error="validation", message=str(exc))
        code = INVALID
    return out.close(code)


if __name__ == "__main__":
    sys.exit(main())
