"""Command line interface: run session files, explain verification ids.

Exit codes: 0 ok, 1 verification FAIL, 2 input error, 3 internal
invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import DgtorError, InputError
from .field import parse_field
from .session import SCHEMA, outcomes_to_json, outcomes_to_text, run_session
from .verify import THEOREM_IDS, explain

FAIL_VERDICTS = ("FAIL",)
STRICT_VERDICTS = ("SKIPPED", "UNDETERMINED", "HYPOTHESIS-UNDETERMINED")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dgtor", description="Exact homological invariants of finite DG algebras")
    sub = p.add_subparsers(dest="command", required=True)
    runp = sub.add_parser("run", help="execute a JSON session file")
    runp.add_argument("session", help="path to the session file")
    runp.add_argument("--field", help="ground field: fp:<p> or q (overrides the session)")
    runp.add_argument("--max-degree", type=int, default=None, help="default truncation degree")
    runp.add_argument("--window", help="default degree window a..b")
    runp.add_argument("--output", choices=("text", "json"), default="text")
    runp.add_argument("--strict", action="store_true",
                      help="SKIPPED/UNDETERMINED verdicts also fail the run")
    runp.add_argument("--seed", type=int, default=0, help="seed for randomized detector restarts")
    runp.add_argument("--threads", type=int, default=1,
                      help="worker threads for independent commands (output is identical)")
    exp = sub.add_parser("explain", help="print the identity a verification id checks")
    exp.add_argument("id1", metavar="id", help=f"one of: {', '.join(THEOREM_IDS)}")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "explain":
        try:
            text = explain(args.id1)
        except DgtorError as e:
            print(f"error: {e}", file=sys.stderr)
            return 2
        print(text)
        return 0
    return _run(args)


def _run(args) -> int:
    try:
        with open(args.session, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as e:
        print(f"error: cannot read session: {e}", file=sys.stderr)
        return 2
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as e:
        print(f"error: parse error at line {e.lineno}, column {e.colno}: {e.msg}", file=sys.stderr)
        return 2
    field = None
    try:
        if args.field:
            field = parse_field(args.field)
        elif isinstance(doc, dict):
            field = parse_field(doc.get("field", "fp:101"))
    except DgtorError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.window and isinstance(doc, dict):
        try:
            a, b = args.window.split("..", 1)
            default_window = (int(a), int(b))
        except ValueError:
            print(f"error: bad window {args.window!r}; expected a..b", file=sys.stderr)
            return 2
        for cmd in doc.get("commands", ()):
            if isinstance(cmd, dict):
                cmd.setdefault("window", list(default_window))
    try:
        outcomes = run_session(doc, field=field, seed=args.seed, threads=args.threads,
                               max_degree=args.max_degree)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except DgtorError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # anything else is an internal invariant breach
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return 3
    if outcomes:
        if args.output == "json":
            print(json.dumps(outcomes_to_json(outcomes, field), sort_keys=True, indent=1))
        else:
            print(outcomes_to_text(outcomes))
    code = 0
    for out in outcomes:
        if out.verdict in FAIL_VERDICTS:
            code = 1
        elif args.strict and out.verdict in STRICT_VERDICTS:
            code = 1
    return code


if __name__ == "__main__":
    sys.exit(main())
