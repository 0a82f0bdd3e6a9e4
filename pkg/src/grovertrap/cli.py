"""Command line front end: ``grovertrap generate|analyze|simulate|verify``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import families
from .graph import load_instance, save_instance, serialize_instance
from .report import analyze, verify
from .simulator import maximally_mixed, simulate


def _parse_value(text: str):
    low = text.lower()
    if low in ("true", "false"):
        return low == "true"
    try:
        return int(text)
    except ValueError:
        return text


def _params(tokens: list[str]) -> dict:
    out = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep:
            raise SystemExit(f"parameter {tok!r} is not of the form key=value")
        out[key] = _parse_value(value)
    return out


def _write_json(doc, path: str | None) -> None:
    text = json.dumps(doc, indent=2)
    if path:
        Path(path).write_text(text + "\n")
    else:
        print(text)


def cmd_generate(args) -> int:
    inst = families.generate(args.family, **_params(args.params))
    if args.output:
        save_instance(inst, args.output)
    else:
        print(serialize_instance(inst))
    return 0


def cmd_analyze(args) -> int:
    inst = load_instance(args.graph)
    rep = analyze(inst)
    if args.output:
        basis_path = Path(args.output).with_suffix(".basis.json")
        basis_path.write_text(json.dumps(rep.pop("basis"), indent=2) + "\n")
        rep["basis_file"] = str(basis_path)
    _write_json(rep, args.output)
    return 0


def cmd_simulate(args) -> int:
    inst = load_instance(args.graph)
    rho0 = maximally_mixed(inst.dim, inst.initial)
    traj = simulate(rho0, inst, args.pi, steps=args.steps, mode=args.mode, samples=args.samples, seed=args.seed)
    if args.output:
        traj.write_csv(args.output)
    else:
        print("step,trace,trace_error_estimate")
        for t, (tr, err) in enumerate(zip(traj.traces, traj.errors)):
            print(f"{t},{float(tr)!r},{float(err)!r}")
    return 0


def cmd_verify(args) -> int:
    inst = load_instance(args.graph)
    rep = verify(inst, exhaustive=args.exhaustive, pi=args.pi, attractors=args.attractors, seed=args.seed)
    _write_json(rep, args.output)
    for c in rep["checks"]:
        print(f"{'PASS' if c['passed'] else 'FAIL'} {c['name']}", file=sys.stderr)
    return 0 if rep["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="grovertrap", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a family instance as JSON")
    g.add_argument("family", choices=sorted(families.GENERATORS))
    g.add_argument("params", nargs="*", help="key=value, e.g. n=3 H=2")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)

    a = sub.add_parser("analyze", help="trapped basis and transport probability")
    a.add_argument("-g", "--graph", required=True)
    a.add_argument("-o", "--output")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("simulate", help="trace trajectory of the sinked walk (CSV)")
    s.add_argument("-g", "--graph", required=True)
    s.add_argument("--pi", type=float, default=0.5)
    s.add_argument("--steps", type=int, default=None)
    s.add_argument("--mode", choices=("exact", "mc"), default="exact")
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_simulate)

    v = sub.add_parser("verify", help="run all consistency checks")
    v.add_argument("-g", "--graph", required=True)
    v.add_argument("--exhaustive", action="store_true", help="enumerate every percolation configuration")
    v.add_argument("--attractors", action="store_true", help="also compute the attractor space numerically")
    v.add_argument("--pi", type=float, default=0.5)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("-o", "--output")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
