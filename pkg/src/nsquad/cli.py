"""``nsquad`` command line: rates | sweep | stokes-grid | selftest | references.

Options may also come from a JSON file given with ``--config``; keys are the
long option names with dashes or underscores.  Flags given on the command line
win over the file.  Exit status: 0 success, 1 failed invariant or missing
data, 2 bad arguments.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import experiments, integrands, selftest, stokes
from .methods import FAMILIES, METHODS

__all__ = ["main"]


class UsageError(Exception):
    pass


def _list(conv):
    def parse(text):
        if isinstance(text, (list, tuple)):
            return [conv(v) for v in text]
        try:
            return [conv(v) for v in str(text).split(",") if v.strip()]
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    return parse


def _float(text) -> float:
    text = str(text).strip()
    if "/" in text:  # allow 1/30
        num, den = text.split("/", 1)
        return float(num) / float(den)
    return float(text)


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--config", help="JSON file of option values; flags win")

    p = argparse.ArgumentParser(prog="nsquad", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("rates", parents=[common], help="predicted convergence rates")
    r.add_argument("--family", choices=FAMILIES)
    r.add_argument("--method", type=_list(str), help="comma-separated methods (default: all)")
    r.add_argument("--A", type=_list(_float), help="real part / real location of the singularity")
    r.add_argument("--B", type=_list(_float), help="height of the singularity")
    r.add_argument("--isolated", action="store_true", default=None,
                   help="real singularity without a branch cut")

    s = sub.add_parser("sweep", parents=[common], help="errors of each method against n")
    s.add_argument("--ids", type=_list(str), help="integrand ids, e.g. f1,g2")
    s.add_argument("--epsilon", type=_list(_float), help="epsilon values (default: the standard grid for each id)")
    s.add_argument("--method", type=_list(str), help="methods (default: all for the family)")
    s.add_argument("--n", type=_list(int), help="node counts (default: 7, 14, ..., 147)")
    s.add_argument("--workers", type=int)

    g = sub.add_parser("stokes-grid", parents=[common], help="log10 error of the Stokes potential on a grid")
    g.add_argument("--n", type=int, help="nodes per direction per panel (default 32)")
    g.add_argument("--strategy", choices=stokes.STRATEGIES)
    g.add_argument("--resolution", type=int, help="cells per side (default 40)")
    g.add_argument("--tube-radius", type=float, help="fiber radius (default 0.05)")
    g.add_argument("--workers", type=int)

    sub.add_parser("selftest", parents=[common], help="run the invariant checks")

    ref = sub.add_parser("references", parents=[common], help="recompute the reference-value store")
    ref.add_argument("--ids", type=_list(str))
    return p


_DEFAULTS = {
    "rates": {"family": "periodic", "method": None, "A": None, "B": None, "isolated": False},
    "sweep": {"ids": None, "epsilon": None, "method": None, "n": None, "workers": 1},
    "stokes-grid": {"n": 32, "strategy": "conformal", "resolution": 40, "tube_radius": 0.05, "workers": 1},
    "selftest": {},
    "references": {"ids": None},
}

_CONVERTERS = {
    "method": _list(str), "A": _list(_float), "B": _list(_float), "ids": _list(str),
    "epsilon": _list(_float), "n": None, "workers": int, "resolution": int,
    "tube_radius": float, "family": str, "strategy": str, "isolated": bool, "out": str,
}


def _merge(args: argparse.Namespace) -> dict:
    opts = {"out": args.out}
    config = {}
    if args.config:
        try:
            config = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(config, dict):
            raise UsageError("config file must hold a JSON object")
        config = {k.replace("-", "_"): v for k, v in config.items()}
        unknown = set(config) - set(_DEFAULTS[args.command]) - {"out"}
        if unknown:
            raise UsageError(f"unknown config keys for {args.command}: {', '.join(sorted(unknown))}")
    for key, default in {**_DEFAULTS[args.command], "out": None}.items():
        flag = getattr(args, key, None)
        if flag is not None:
            opts[key] = flag
        elif key in config:
            conv = _CONVERTERS.get(key)
            if key == "n":
                conv = int if args.command == "stokes-grid" else _list(int)
            try:
                opts[key] = conv(config[key]) if conv else config[key]
            except (TypeError, ValueError, argparse.ArgumentTypeError) as exc:
                raise UsageError(f"bad config value for {key}: {exc}") from None
        else:
            opts[key] = default
    return opts


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _g(v: float) -> str:
    return repr(float(v))  # shortest round-trip form


def cmd_rates(o) -> int:
    fam = o["family"]
    methods = o["method"]
    for m in methods or ():
        if m not in METHODS[fam]:
            raise UsageError(f"method {m!r} is not valid for family {fam!r}; "
                             f"expected one of {', '.join(METHODS[fam])}")
    if fam == "periodic":
        params = o["B"] or [0.3]
    elif fam == "aperiodic_real":
        params = o["A"] or [4 / 3]
    else:
        As, Bs = o["A"] or [2 / 3], o["B"] or [1 / 3]
        params = [(a, b) for a in As for b in Bs]
    try:
        rows = experiments.rate_rows(fam, params, methods, branch_cut=not o["isolated"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(_csv(["method", "param", "predicted_rate"], [(m, p, _g(v)) for m, p, v in rows]), o["out"])
    return 0


def cmd_sweep(o) -> int:
    if not o["ids"]:
        raise UsageError("sweep needs --ids (e.g. --ids f1)")
    try:
        cfg = experiments.SweepConfig(
            tuple(o["ids"]),
            tuple(o["epsilon"]) if o["epsilon"] else None,
            tuple(o["method"]) if o["method"] else None,
            tuple(o["n"]) if o["n"] else experiments.DEFAULT_SWEEP_N,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = experiments.run_sweep(cfg, workers=o["workers"])
    header = ["id", "epsilon", "method", "n", "rel_error", "predicted_per_node_decay", "abs_error"]
    body = [(r.id, _g(r.epsilon), r.method, r.n, _g(r.rel_error), _g(r.predicted_per_node_decay),
             _g(r.abs_error)) for r in rows]
    _emit(_csv(header, body), o["out"])
    return 0


def cmd_stokes_grid(o) -> int:
    if o["n"] < 4:
        raise UsageError("--n must be at least 4")
    if o["resolution"] < 2:
        raise UsageError("--resolution must be at least 2")
    try:
        surface = stokes.FiberSurface(epsilon=o["tube_radius"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if o["strategy"] not in stokes.STRATEGIES:
        raise UsageError(f"unknown strategy {o['strategy']!r}")
    res = stokes.error_grid(o["resolution"], o["n"], o["strategy"], surface, workers=o["workers"])
    _emit(res.to_csv(), o["out"])
    return 0


def cmd_selftest(o) -> int:
    results = selftest.run_checks()
    lines = [f"{'PASS' if msg is None else 'FAIL'}  {name}" + ("" if msg is None else f": {msg}")
             for name, msg in results]
    failed = sum(msg is not None for _, msg in results)
    lines.append(f"{len(results) - failed} passed, {failed} failed")
    _emit("\n".join(lines) + "\n", o["out"])
    return 1 if failed else 0


def cmd_references(o) -> int:
    ids = tuple(o["ids"]) if o["ids"] else integrands.ALL_IDS
    bad = [i for i in ids if i not in integrands.ALL_IDS]
    if bad:
        raise UsageError(f"unknown integrand ids: {', '.join(bad)}")
    path = integrands.generate_reference_store(o["out"], ids, progress=lambda line: print(line, file=sys.stderr))
    print(f"wrote {path}", file=sys.stderr)
    return 0


_COMMANDS = {"rates": cmd_rates, "sweep": cmd_sweep, "stokes-grid": cmd_stokes_grid,
             "selftest": cmd_selftest, "references": cmd_references}


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)  # exits with status 2 on bad syntax
    try:
        opts = _merge(args)
        return _COMMANDS[args.command](opts)
    except UsageError as exc:
        print(f"nsquad {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (integrands.ReferenceMissing, integrands.ReferenceFailure) as exc:
        print(f"nsquad {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
