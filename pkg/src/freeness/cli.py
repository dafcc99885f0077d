"""Command-line front end.

Subcommands:

* ``eval``: evaluate a word under one or more independence models.
* ``converge``: tabulate the level-m values of a word against the
  conditionally free target and flag where they stabilize.
* ``verify``: run a named verification suite over seeded random states.

Exit codes: 0 success, 1 verification counterexample, 2 usage, parse, or
input-data error. All values are exact rationals; output is byte-stable
for fixed inputs, flags, and seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .algebra import FpWord, Word
from .bialgebra import convolve, retag_state
from .mfree import MContext, mfree_eval
from .specfile import SessionSpec, SpecError, load_spec
from .states import (
    MomentError,
    boolean_product_eval,
    cfree_eval_word,
    free_eval,
)
from .verify import SUITE_NAMES, run_suite
from .wordlang import WordSyntaxError, format_word, parse_word

FIELDS = ("word", "model", "m", "value", "stabilized")


class UsageError(ValueError):
    pass


def _parse_models(spec: SessionSpec, model_arg: str | None, m_arg: int | None):
    """Expand the requested models into (name, m) pairs, sorted by model
    name then level for deterministic output."""
    raw = model_arg or ",".join(spec.modes) or "cfree"
    requested = []
    for token in raw.split(","):
        token = token.strip()
        if not token:
            continue
        name, _, level = token.partition(":")
        if name not in ("boolean", "free", "cfree", "mfree", "convolve"):
            raise UsageError(f"unknown model {token!r}")
        m = None
        if name in ("mfree", "convolve"):
            if level:
                m = int(level)
            elif m_arg is not None:
                m = m_arg
            else:
                raise UsageError(f"model {name!r} needs a level: {name}:M or --m M")
            if m < 1:
                raise UsageError("level must be at least 1")
        requested.append((name, m))
    requested.sort(key=lambda nm: (nm[0], nm[1] or 0))
    return requested


def _single_algebra_word(u: FpWord):
    algebras = set(u.algebras())
    if len(algebras) > 1:
        raise UsageError("convolution expects a word in one algebra")
    return u.blocks[0][1] if u.blocks else None


def _evaluate(spec: SessionSpec, u: FpWord, name: str, m: int | None):
    if name == "boolean":
        return boolean_product_eval(spec.phis(), u)
    if name == "free":
        return free_eval(spec.phis(), u)
    if name == "cfree":
        return cfree_eval_word(spec.pairs, u)
    if name == "mfree":
        return mfree_eval(MContext(m, spec.pairs), u)
    if name == "convolve":
        from .states import StatePair

        w = _single_algebra_word(u)
        factors = [spec.pairs[alg] for alg in sorted(spec.pairs)]
        if len(factors) < 2:
            raise UsageError("convolution needs at least two declared pairs")
        target_alg = w.algebra if w is not None else factors[0].algebra
        word = w if w is not None else Word()
        factors = [
            StatePair(retag_state(p.phi, target_alg), retag_state(p.psi, target_alg))
            for p in factors
        ]
        return convolve(m, factors, word)
    raise UsageError(f"unknown model {name!r}")


def cmd_eval(args) -> int:
    spec = load_spec(args.spec)
    u = parse_word(args.word, spec.algebras)
    rows = []
    for name, m in _parse_models(spec, args.model, args.m):
        value = _evaluate(spec, u, name, m)
        rows.append(
            {
                "word": format_word(u),
                "model": name,
                "m": "" if m is None else m,
                "value": str(value),
                "stabilized": "",
            }
        )
    _emit(rows, args.format)
    return 0


def cmd_converge(args) -> int:
    spec = load_spec(args.spec)
    u = parse_word(args.word, spec.algebras)
    if args.m_max < 1:
        raise UsageError("--m-max must be at least 1")
    target = cfree_eval_word(spec.pairs, u)
    rows = []
    for m in range(1, args.m_max + 1):
        value = mfree_eval(MContext(m, spec.pairs), u)
        rows.append(
            {
                "word": format_word(u),
                "model": "mfree",
                "m": m,
                "value": str(value),
                "stabilized": "yes" if value == target else "no",
            }
        )
    rows.append(
        {
            "word": format_word(u),
            "model": "cfree",
            "m": "",
            "value": str(target),
            "stabilized": "",
        }
    )
    _emit(rows, args.format)
    return 0


def cmd_verify(args) -> int:
    report = run_suite(
        args.suite, seed=args.seed, trials=args.trials, n_max=args.n_max, m_max=args.m_max
    )
    if args.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(f"suite: {report['suite']}  seed: {report['seed']}")
        for check in report["checks"]:
            status = "ok" if check["failures"] == 0 else "FAIL"
            line = f"  [{status}] {check['name']}: {check['cases']} cases"
            if check["failures"]:
                line += f", {check['failures']} failures"
                line += f"; first: {check['first_counterexample']}"
            print(line)
        print("passed" if report["passed"] else "FAILED")
    return 0 if report["passed"] else 1


def _emit(rows, fmt: str):
    if fmt == "json":
        print(json.dumps({"rows": rows}, indent=2, sort_keys=True))
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        widths = {f: len(f) for f in FIELDS}
        for row in rows:
            for f in FIELDS:
                widths[f] = max(widths[f], len(str(row[f])))
        header = "  ".join(f.ljust(widths[f]) for f in FIELDS)
        print(header)
        print("-" * len(header))
        for row in rows:
            print("  ".join(str(row[f]).ljust(widths[f]) for f in FIELDS))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freeness",
        description="Exact evaluation of mixed moments under Boolean, free, "
        "conditionally free, and level-m interpolating independence.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a word under chosen models")
    p_eval.add_argument("--spec", required=True, help="session spec file")
    p_eval.add_argument("--word", required=True, help="word expression")
    p_eval.add_argument(
        "--model",
        help="comma list of boolean|free|cfree|mfree[:M]|convolve[:M]; "
        "defaults to the spec's mode lines, else cfree",
    )
    p_eval.add_argument("--m", type=int, help="level for mfree/convolve")
    p_eval.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p_eval.set_defaults(func=cmd_eval)

    p_conv = sub.add_parser("converge", help="level sweep against the cfree target")
    p_conv.add_argument("--spec", required=True)
    p_conv.add_argument("--word", required=True)
    p_conv.add_argument("--m-max", type=int, default=3)
    p_conv.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p_conv.set_defaults(func=cmd_converge)

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument("--suite", default="all", choices=SUITE_NAMES + ("all",))
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--trials", type=int, default=3)
    p_ver.add_argument("--n-max", type=int, default=6)
    p_ver.add_argument("--m-max", type=int, default=3)
    p_ver.add_argument("--format", choices=("table", "json"), default="table")
    p_ver.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (WordSyntaxError, SpecError, MomentError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
