"""Command-line entry point: ``qcomposed {analyze,run,sweep,verify}``.

Exit codes: 0 ok, 1 input error, 2 verification failure, 3 capacity error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from .analysis import analyze
from .core import CapacityError, InputError, parse_symmetric
from .harness import PROTOCOLS, run_protocol, rows_to_csv, sweep, sweep_columns, write_csv

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_CAPACITY = 0, 1, 2, 3

GLOBAL_DEFAULTS = {"seed": 0, "mode": None, "out": None}
GRID_KEYS = ("n", "k", "gamma", "marked", "g", "f", "randomness")
_INT_KEYS = {"n", "k", "gamma", "marked"}


def parse_values(text: str, integer: bool) -> list:
    """Comma list; integer items may also be ``a..b`` or ``2^a..2^b`` ranges."""
    out: list = []
    for item in str(text).split(","):
        item = item.strip()
        if not item:
            continue
        if not integer:
            out.append(item)
            continue
        try:
            if ".." in item:
                a, b = item.split("..", 1)
                if a.startswith("2^") and b.startswith("2^"):
                    out.extend(2 ** e for e in range(int(a[2:]), int(b[2:]) + 1))
                else:
                    out.extend(range(int(a), int(b) + 1))
            elif item.startswith("2^"):
                out.append(2 ** int(item[2:]))
            else:
                out.append(int(item))
        except ValueError:
            raise InputError(f"cannot parse integer value {item!r}") from None
    return out


def _common() -> argparse.ArgumentParser:
    # SUPPRESS so a flag given after the subcommand does not reset one given before it
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    p.add_argument("--mode", choices=("sim", "ledger"), default=argparse.SUPPRESS)
    p.add_argument("--out", default=argparse.SUPPRESS)
    p.add_argument("--config", default=argparse.SUPPRESS)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="qcomposed", parents=[common],
                                     description="Entanglement-free composed-function protocols.")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="bound calculators for a symmetric f")
    a.add_argument("--f", default=argparse.SUPPRESS)
    a.add_argument("--n", type=int, default=argparse.SUPPRESS)

    r = sub.add_parser("run", parents=[common], help="one seeded protocol execution")
    r.add_argument("protocol", choices=PROTOCOLS)
    r.add_argument("--n", type=int, default=argparse.SUPPRESS)
    r.add_argument("--f", default=argparse.SUPPRESS)
    r.add_argument("--g", default=argparse.SUPPRESS)
    r.add_argument("--x", default=argparse.SUPPRESS)
    r.add_argument("--y", default=argparse.SUPPRESS)
    r.add_argument("--k", type=int, default=argparse.SUPPRESS)
    r.add_argument("--gamma", type=int, default=argparse.SUPPRESS)
    r.add_argument("--randomness", choices=("shared", "private"), default=argparse.SUPPRESS)

    s = sub.add_parser("sweep", parents=[common], help="parameter grid to CSV")
    s.add_argument("protocol", choices=PROTOCOLS)
    for key in GRID_KEYS:
        s.add_argument(f"--{key}", default=argparse.SUPPRESS,
                       help="comma list" + (", a..b or 2^a..2^b ranges" if key in _INT_KEYS else ""))
    s.add_argument("--trials", type=int, default=argparse.SUPPRESS)
    s.add_argument("--workers", type=int, default=argparse.SUPPRESS)

    v = sub.add_parser("verify", parents=[common], help="run the acceptance criteria")
    v.add_argument("suite", choices=("fast", "full"))
    v.add_argument("--only", default=argparse.SUPPRESS,
                   help="comma list of criterion numbers")
    return parser


def load_config(path: str | None) -> dict[str, Any]:
    if not path:
        return {}
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read config {path!r}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"config {path!r} is not valid JSON: {exc}") from None
    if not isinstance(data, dict) or any(isinstance(v, (dict, list)) for v in data.values()):
        raise InputError("config must be a flat JSON object")
    return {k.replace("-", "_"): v for k, v in data.items()}


def resolve(args: argparse.Namespace) -> dict[str, Any]:
    """Defaults, then config file, then command-line flags."""
    given = vars(args)
    opts = dict(GLOBAL_DEFAULTS)
    opts.update(load_config(given.get("config")))
    opts.update(given)
    return opts


def _emit(text: str, out: str | None) -> None:
    if out:
        try:
            with open(out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write {out!r}: {exc}") from None
    else:
        sys.stdout.write(text)


def _required(opts: dict, key: str):
    if opts.get(key) is None:
        raise InputError(f"--{key} is required")
    return opts[key]


def cmd_analyze(opts: dict) -> int:
    desc = str(_required(opts, "f"))
    n = opts.get("n")
    spec = parse_symmetric(desc, int(n) if n is not None else None)
    data = analyze(spec.D).as_dict()
    data["bounds"] = "class representatives with hidden constants set to 1, not proven constants"
    _emit(json.dumps(data, indent=2) + "\n", opts.get("out"))
    return EXIT_OK


def cmd_run(opts: dict) -> int:
    protocol = opts["protocol"]
    x, y = str(_required(opts, "x")), str(_required(opts, "y"))
    report = run_protocol(
        protocol, f=opts.get("f"), g=str(opts.get("g") or "and2"), x=x, y=y,
        k=None if opts.get("k") is None else int(opts["k"]),
        gamma=None if opts.get("gamma") is None else int(opts["gamma"]),
        seed=int(opts["seed"]), mode=opts.get("mode") or "sim",
        randomness=opts.get("randomness") or "shared")
    n = opts.get("n")
    if n is not None and int(n) != report.inputs.get("n"):
        raise InputError(f"--n {n} does not match the input length {report.inputs.get('n')}")
    _emit(json.dumps(report.as_dict(), indent=2) + "\n", opts.get("out"))
    return EXIT_OK


def cmd_sweep(opts: dict) -> int:
    grid = {}
    for key in GRID_KEYS:
        if opts.get(key) is not None:
            grid[key] = parse_values(opts[key], key in _INT_KEYS)
    if not grid or any(not v for v in grid.values()):
        raise InputError("sweep needs a non-empty parameter grid (for example --n 8,16)")
    rows = sweep(opts["protocol"], grid, int(opts.get("trials", 1)), int(opts["seed"]),
                 opts.get("mode") or "ledger", int(opts.get("workers", 1)))
    cols = sweep_columns(grid)
    out = opts.get("out")
    if out:
        try:
            write_csv(rows, cols, out)
        except OSError as exc:
            raise InputError(f"cannot write {out!r}: {exc}") from None
    else:
        sys.stdout.write(rows_to_csv(rows, cols))
    return EXIT_OK


def cmd_verify(opts: dict) -> int:
    from .acceptance import run_all

    only = None
    if opts.get("only") is not None:
        only = set(parse_values(opts["only"], True))
    fast = opts["suite"] == "fast"
    results = run_all(fast=fast, only=only, progress=lambda r: print(r.line(), flush=True))
    ok = all(r.passed for r in results)
    print(f"{sum(r.passed for r in results)}/{len(results)} criteria passed", flush=True)
    if not fast or opts.get("out"):
        summary = {"suite": opts["suite"], "passed": ok,
                   "criteria": [{"number": r.number, "name": r.name, "passed": r.passed,
                                 "seconds": round(r.seconds, 2), "measured": r.measured}
                                for r in results]}
        text = json.dumps(summary, indent=2, default=str) + "\n"
        _emit(text, opts.get("out"))
    return EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {"analyze": cmd_analyze, "run": cmd_run, "sweep": cmd_sweep, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse reports its own usage errors; map them onto the input-error code
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        opts = resolve(args)
        return COMMANDS[opts["command"]](opts)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
