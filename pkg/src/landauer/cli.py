"""Command-line front end: ``landauer {bound,rabi,verify,models}``.

Exit codes: 0 success, 1 usage or configuration error, 2 infeasible bound
request, 3 Fock truncation not converged, 4 fuzz run found violations.

Model configuration (``bound``) is a JSON object ``{"kind": ..., ...}`` with
fields per kind:

    bosonic    omega
    waveguide  L, c
    phonon     a
    gapped     b, delta, asymptotic (optional bool)
    spectrum   levels (list of energies)
    tabulated  csv (path to a two-column "T,C" file with header) or samples

It is read from ``--model-file`` and/or given inline (``--model``, ``--omega``,
``--L``, ...); inline flags override file fields.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Any, Sequence

from . import bounds, harness, rabi
from .envmodels import MODEL_KINDS, load_model_file, model_from_config
from .errors import ConfigError, OutOfTableRange, TruncationUnconverged

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_TRUNCATION = 3
EXIT_VIOLATIONS = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x: float) -> str:
    """17 significant digits, enough to round-trip any double."""
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def to_json(obj: Any) -> str:
    """JSON text with every float written by :func:`fmt` (Python's json reads it back)."""
    if isinstance(obj, bool) or obj is None:
        return {True: "true", False: "false", None: "null"}[obj]
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{to_json(str(k))}: {to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers: {text!r}") from exc


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from exc


_MODEL_FLAGS = ("omega", "L", "c", "a", "b", "delta")


def model_config_from_args(args) -> dict[str, Any]:
    cfg: dict[str, Any] = {}
    if args.model_file:
        cfg.update(load_model_file(args.model_file))
    if args.model:
        cfg["kind"] = args.model
    for name in _MODEL_FLAGS:
        value = getattr(args, name)
        if value is not None:
            cfg[name] = value
    if args.levels is not None:
        cfg["levels"] = args.levels
    if args.csv is not None:
        cfg["csv"] = args.csv
    if args.asymptotic:
        cfg["asymptotic"] = True
    return cfg


def bound_result(cfg: dict[str, Any], T: float, ds: float) -> dict[str, Any]:
    m = model_from_config(cfg)
    ev = bounds.modified_bound(m, T, ds)
    return {
        "model": m.to_config(),
        "T": float(T),
        "dS": float(ds),
        "reference_temperature": ev.reference_temperature,
        "modified_bound": ev.modified_bound,
        "original_bound": ev.original_bound,
        "status": ev.status.value,
    }


def cmd_bound(args) -> int:
    if not (math.isfinite(args.T) and args.T >= 0 and math.isfinite(args.dS)):
        raise ConfigError("--T must be finite and >= 0, --dS finite")
    res = bound_result(model_config_from_args(args), args.T, args.dS)
    if args.format == "json":
        sys.stdout.write(to_json(res) + "\n")
    else:
        keys = ("T", "dS", "reference_temperature", "modified_bound", "original_bound", "status")
        sys.stdout.write(to_csv(keys, [[res[k] for k in keys]]))
    return EXIT_INFEASIBLE if res["status"] == bounds.BoundStatus.INFEASIBLE.value else EXIT_OK


def cmd_rabi(args) -> int:
    if args.steps < 0:
        raise ConfigError("--steps must be >= 0")
    cfg = rabi.RabiConfig(g=args.g, T=args.T, omega=args.omega, Omega=args.Omega, p=args.p,
                          fock_dim=args.fock,
                          t_grid=rabi.default_time_grid(args.tmax, args.steps))
    rows = rabi.records_table(rabi.sweep(cfg))
    if args.format == "csv":
        sys.stdout.write(to_csv(rabi.CSV_COLUMNS, rows))
    else:
        sys.stdout.write(to_json([dict(zip(rabi.CSV_COLUMNS, r)) for r in rows]) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.trials < 1:
        raise ConfigError("--trials must be >= 1")
    if len(args.dims) != 2 or min(args.dims) < 2:
        raise ConfigError("--dims takes two integers >= 2, e.g. 3,6")
    if not args.Tlist or any(t < 0 or not math.isfinite(t) for t in args.Tlist):
        raise ConfigError("--Tlist needs finite temperatures >= 0")
    seeds = range(args.seed, args.seed + args.trials)
    summary = harness.summarize(harness.run_fuzz(seeds, args.Tlist, tuple(args.dims)))
    if args.format == "json":
        sys.stdout.write(to_json(summary) + "\n")
    else:
        rows = [(v["seed"], v["inequality"], v["slack"]) for v in summary["violations"]]
        sys.stdout.write(to_csv(("seed", "inequality", "slack"), rows))
    return EXIT_OK if not summary["violations"] else EXIT_VIOLATIONS


def cmd_models(args) -> int:
    for kind, (params, desc) in MODEL_KINDS.items():
        sys.stdout.write(f"{kind}: {params}  ({desc})\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="landauer", description="Heat-cost bounds for entropy changes, valid down to T = 0.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bound", help="evaluate the modified and original bounds")
    b.add_argument("--model", choices=sorted(MODEL_KINDS), help="environment model kind")
    b.add_argument("--model-file", help="JSON model configuration")
    b.add_argument("--omega", type=float)
    b.add_argument("--L", type=float)
    b.add_argument("--c", type=float)
    b.add_argument("--a", type=float)
    b.add_argument("--b", type=float)
    b.add_argument("--delta", type=float)
    b.add_argument("--levels", type=_floats, help="comma-separated energies")
    b.add_argument("--csv", help="heat-capacity table for the tabulated model")
    b.add_argument("--asymptotic", action="store_true", help="gapped: low-T asymptotic forms")
    b.add_argument("--T", type=float, required=True, help="environment temperature")
    b.add_argument("--dS", type=float, required=True, help="system entropy change (nats)")
    b.add_argument("--format", choices=("json", "csv"), default="json")
    b.set_defaults(func=cmd_bound)

    r = sub.add_parser("rabi", help="Rabi-model sweep: heat, entropies and both bounds vs time")
    r.add_argument("--g", type=float, default=0.2)
    r.add_argument("--T", type=float, default=0.01)
    r.add_argument("--p", type=float, default=0.1)
    r.add_argument("--omega", type=float, default=1.0)
    r.add_argument("--Omega", type=float, default=1.0)
    r.add_argument("--tmax", type=float, default=rabi.DEFAULT_TMAX)
    r.add_argument("--steps", type=int, default=rabi.DEFAULT_STEPS)
    r.add_argument("--fock", type=int, default=rabi.DEFAULT_FOCK)
    r.add_argument("--format", choices=("csv", "json"), default="csv")
    r.set_defaults(func=cmd_rabi)

    v = sub.add_parser("verify", help="randomized inequality fuzz run")
    v.add_argument("--trials", type=int, default=1000)
    v.add_argument("--seed", type=int, default=1, help="first seed; trials use consecutive seeds")
    v.add_argument("--Tlist", type=_floats, default=list(harness.DEFAULT_TEMPERATURES))
    v.add_argument("--dims", type=_ints, default=list(harness.DEFAULT_MAX_DIMS),
                   help="max system,environment dimensions")
    v.add_argument("--format", choices=("json", "csv"), default="json")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("models", help="list environment model kinds and parameters")
    m.set_defaults(func=cmd_models)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TruncationUnconverged as exc:
        print(f"landauer: {exc}", file=sys.stderr)
        return EXIT_TRUNCATION
    except (ConfigError, OutOfTableRange, ValueError) as exc:
        print(f"landauer: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
