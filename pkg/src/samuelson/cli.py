"""Command-line front end.

Subcommands::

    samuelson simulate         --c1 --c2 --b --p --t0 --t1 --t2 --steps
    samuelson simulate-classic --a --b --g-bar --t0 --t1 --steps
    samuelson equilibrium      --c1 --c2 --b --p [--theta]
    samuelson stability        --c1 --c2 --b [--p]
    samuelson sweep            --c1 A:B:N --c2 A:B:N --b A:B:N --p VALUE [--config PATH]

Common options: ``--mode {strict,extended}``, ``--format {csv,json}``,
``--out PATH`` and ``--quiet``. Reports go to stdout (or ``--out``); the
banner and errors go to stderr. Exit status is 0 on success, 1 when the
inputs violate a model constraint and 2 on a usage error.

Every float is written with 17 significant digits so that parsing the
output recovers the exact binary value.
"""

import argparse
import csv
import io
import itertools
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__, equilibrium, linalg3, spectral
from .errors import ConfigurationError, InvalidParameters, NonFiniteError, SingularMatrixError
from .model import EXTENDED, STRICT, ClassicParams, ModelParams, simulate, simulate_classic

__all__ = ["run", "main", "sweep", "SweepSpec", "parse_range", "format_float"]

MAX_STEPS = 10**7
MAX_GRID = 10**6

SIMULATE_HEADER = ["k", "T", "C", "I"]
SWEEP_HEADER = ["c1", "c2", "b", "P", "detG", "kind", "s_e", "theta", "spectral_radius", "classification"]
EQUILIBRIUM_HEADER = ["kind", "s_e", "y1", "y2", "y3", "residual_d1", "theta_used", "in_colspan"]
STABILITY_HEADER = ["spectral_radius", "classification", "oscillatory", "root", "re", "im"]


class UsageError(Exception):
    pass


def format_float(x) -> str:
    return format(float(x), ".17g")


def _cell(x):
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format_float(x)
    return str(x)


def _json(obj, indent=0) -> str:
    # json.dumps always uses float.__repr__; floats are written by hand here
    # to honour the fixed 17-digit format.
    pad = "  " * (indent + 1)
    end = "  " * indent
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            raise ValueError("non-finite value in report")
        return format_float(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [f"{pad}{_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(x) for x in row])
    return buf.getvalue()


def parse_range(text: str):
    """``"start:stop:count"`` to an evenly spaced grid, or a single value."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return [float(parts[0])]
        if len(parts) != 3:
            raise ValueError
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"expected a number or start:stop:count, got {text!r}") from None
    if count < 1:
        raise UsageError(f"range count must be >= 1, got {count}")
    if count == 1:
        return [start]
    return [float(x) for x in np.linspace(start, stop, count)]


class SweepSpec:
    """Grid over ``c1 x c2 x b`` at fixed ``P``."""

    def __init__(self, c1, c2, b, P, mode=EXTENDED, theta=None):
        self.c1 = list(c1)
        self.c2 = list(c2)
        self.b = list(b)
        self.P = float(P)
        self.mode = mode
        self.theta = theta
        if not (self.c1 and self.c2 and self.b):
            raise UsageError("every sweep axis needs at least one value")
        size = len(self.c1) * len(self.c2) * len(self.b)
        if size > MAX_GRID:
            raise ConfigurationError(f"sweep grid has {size} points, more than the limit of {MAX_GRID}")

    def points(self):
        return itertools.product(self.c1, self.c2, self.b)

    def __len__(self):
        return len(self.c1) * len(self.c2) * len(self.b)


def _sweep_point(args):
    c1, c2, b, P, mode, theta = args
    params = ModelParams(c1, c2, b, P, mode)
    prob = equilibrium.build_problem(params)
    res = equilibrium.solve(params, theta)
    rep = spectral.analyze(params)
    return [
        c1, c2, b, P,
        linalg3.det3(prob.G),
        res.kind,
        res.s_e,
        res.theta_used,
        rep.spectral_radius,
        rep.classification,
    ]


def sweep(spec: SweepSpec, jobs: int = 1):
    """Evaluate every grid point; rows come back in lexicographic grid order."""
    tasks = [(c1, c2, b, spec.P, spec.mode, spec.theta) for c1, c2, b in spec.points()]
    # validate everything up front so a bad point fails before any work
    for t in tasks:
        ModelParams(*t[:5])
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_sweep_point, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    return [_sweep_point(t) for t in tasks]


def _model_json(params):
    if isinstance(params, ClassicParams):
        return {"a": params.a, "b": params.b, "G_bar": params.G_bar}
    return {"c1": params.c1, "c2": params.c2, "b": params.b, "P": params.P, "mode": params.mode}


def _report(fmt, model, result, diagnostics, header, rows):
    if fmt == "json":
        return _json({"model": model, "result": result, "diagnostics": diagnostics}) + "\n"
    return _csv(header, rows)


def _cmd_simulate(ns):
    params = ModelParams(ns.c1, ns.c2, ns.b, ns.p, ns.mode)
    traj = simulate(params, ns.t0, ns.t1, ns.t2, ns.steps)
    records = list(traj.records())
    result = {
        "start_index": traj.start_index,
        "records": [{"k": k, "T": t, "C": c, "I": i} for k, t, c, i in records],
    }
    return _report(ns.format, _model_json(params), result, {"steps": ns.steps}, SIMULATE_HEADER, records)


def _cmd_simulate_classic(ns):
    params = ClassicParams(ns.a, ns.b, ns.g_bar)
    traj = simulate_classic(params, ns.t0, ns.t1, ns.steps)
    records = list(traj.records())
    result = {
        "start_index": traj.start_index,
        "records": [{"k": k, "T": t, "C": None, "I": None} for k, t, _, _ in records],
    }
    return _report(ns.format, _model_json(params), result, {"steps": ns.steps}, SIMULATE_HEADER, records)


def _cmd_equilibrium(ns):
    params = ModelParams(ns.c1, ns.c2, ns.b, ns.p, ns.mode)
    prob = equilibrium.build_problem(params)
    regular = equilibrium.regularity(prob)
    res = equilibrium.solve(params, ns.theta)
    result = {
        "kind": res.kind,
        "s_e": res.s_e,
        "y_star": [float(x) for x in res.y_star],
        "residual_d1": res.residual_d1,
        "theta_used": res.theta_used,
        "in_colspan": res.in_colspan,
    }
    diagnostics = {
        "regularity": regular,
        "det_G": linalg3.det3(prob.G),
        "one_minus_c1_minus_c2": params.det_g,
    }
    row = [res.kind, res.s_e, *res.y_star, res.residual_d1, res.theta_used, res.in_colspan]
    return _report(ns.format, _model_json(params), result, diagnostics, EQUILIBRIUM_HEADER, [row])


def _cmd_stability(ns):
    params = ModelParams(ns.c1, ns.c2, ns.b, ns.p, ns.mode)
    cubic = spectral.characteristic(params)
    rep = spectral.analyze(params)
    result = {
        "roots": [{"re": float(z.real), "im": float(z.imag)} for z in rep.roots],
        "spectral_radius": rep.spectral_radius,
        "classification": rep.classification,
        "oscillatory": rep.oscillatory,
    }
    diagnostics = {"characteristic": list(cubic.coefficients), "marginal_tol": spectral.MARGINAL_TOL}
    rows = [
        [rep.spectral_radius, rep.classification, rep.oscillatory, n, z.real, z.imag]
        for n, z in enumerate(rep.roots)
    ]
    return _report(ns.format, _model_json(params), result, diagnostics, STABILITY_HEADER, rows)


def _read_config(path):
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lower().replace("-", "_")
        if key not in {"c1", "c2", "b", "p", "theta", "mode", "format", "jobs"}:
            raise UsageError(f"{path}:{n}: unknown key {key!r}")
        values[key] = value
    return values


def _cmd_sweep(ns):
    cfg = _read_config(ns.config) if ns.config else {}

    def pick(name, flag_value):
        return flag_value if flag_value is not None else cfg.get(name)

    axes = {}
    for name in ("c1", "c2", "b"):
        text = pick(name, getattr(ns, name))
        if text is None:
            raise UsageError(f"sweep needs --{name} (or {name}= in the config file)")
        axes[name] = parse_range(str(text))
    p_text = pick("p", ns.p)
    if p_text is None:
        raise UsageError("sweep needs --p (or p= in the config file)")
    try:
        P = float(p_text)
        theta = pick("theta", ns.theta)
        theta = None if theta is None else float(theta)
        jobs = int(pick("jobs", ns.jobs) or 1)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    mode = ns.mode or cfg.get("mode") or STRICT
    if mode not in (STRICT, EXTENDED):
        raise UsageError(f"mode must be strict or extended, got {mode!r}")
    fmt = ns.format or cfg.get("format") or "csv"
    if fmt not in ("csv", "json"):
        raise UsageError(f"format must be csv or json, got {fmt!r}")
    ns.format = fmt

    if theta is not None:
        equilibrium.RegularizationConfig(theta)
    spec = SweepSpec(axes["c1"], axes["c2"], axes["b"], P, mode, theta)
    rows = sweep(spec, jobs=jobs)
    result = {"rows": [dict(zip(SWEEP_HEADER, r)) for r in rows]}
    diagnostics = {"points": len(rows), "mode": mode}
    model = {"c1": axes["c1"], "c2": axes["c2"], "b": axes["b"], "P": P, "mode": mode}
    return _report(fmt, model, result, diagnostics, SWEEP_HEADER, rows)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _steps(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= n <= MAX_STEPS:
        raise argparse.ArgumentTypeError(f"steps must be between 0 and {MAX_STEPS}")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default=None)
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--quiet", action="store_true", help="suppress the banner on stderr")

    model = argparse.ArgumentParser(add_help=False)
    model.add_argument("--c1", type=float, required=True)
    model.add_argument("--c2", type=float, required=True)
    model.add_argument("--b", type=float, required=True)
    model.add_argument("--mode", choices=[STRICT, EXTENDED], default=STRICT)

    parser = _Parser(prog="samuelson", description="Delayed multiplier-accelerator model.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", parents=[common, model], help="simulate the third-order recurrence")
    p.add_argument("--p", type=float, required=True)
    for seed in ("--t0", "--t1", "--t2"):
        p.add_argument(seed, type=float, required=True)
    p.add_argument("--steps", type=_steps, required=True)

    p = sub.add_parser("simulate-classic", parents=[common], help="simulate the classic second-order model")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--g-bar", type=float, required=True)
    p.add_argument("--t0", type=float, required=True)
    p.add_argument("--t1", type=float, required=True)
    p.add_argument("--steps", type=_steps, required=True)

    p = sub.add_parser("equilibrium", parents=[common, model], help="unique or regularised equilibrium")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--theta", type=float, default=None)

    p = sub.add_parser("stability", parents=[common, model], help="eigenvalues of F and stability class")
    p.add_argument("--p", type=float, default=0.0)

    p = sub.add_parser("sweep", parents=[common], help="grid over c1, c2 and b")
    p.add_argument("--c1", default=None, help="value or start:stop:count")
    p.add_argument("--c2", default=None, help="value or start:stop:count")
    p.add_argument("--b", default=None, help="value or start:stop:count")
    p.add_argument("--p", default=None)
    p.add_argument("--theta", default=None)
    p.add_argument("--mode", choices=[STRICT, EXTENDED], default=None)
    p.add_argument("--config", default=None, help="key=value file with the same settings")
    p.add_argument("--jobs", type=int, default=None, help="worker processes")
    return parser


_COMMANDS = {
    "simulate": _cmd_simulate,
    "simulate-classic": _cmd_simulate_classic,
    "equilibrium": _cmd_equilibrium,
    "stability": _cmd_stability,
    "sweep": _cmd_sweep,
}


def _error(code, message, constraint=None):
    payload = {"error": {"code": code, "message": message}}
    if constraint is not None:
        payload["error"]["constraint"] = constraint
    sys.stderr.write(json.dumps(payload) + "\n")


def run(argv=None) -> int:
    """Parse ``argv``, execute the subcommand and return the exit status."""
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        if ns.command != "sweep" and ns.format is None:
            ns.format = "csv"
        if getattr(ns, "theta", None) is not None and ns.command == "equilibrium":
            equilibrium.RegularizationConfig(ns.theta)
        if not ns.quiet:
            sys.stderr.write(f"samuelson {__version__} {ns.command}\n")
        text = _COMMANDS[ns.command](ns)
    except UsageError as exc:
        _error("usage", str(exc))
        return 2
    except InvalidParameters as exc:
        _error(exc.code, str(exc), exc.constraint)
        return 1
    except (ConfigurationError, SingularMatrixError, NonFiniteError) as exc:
        _error(exc.code, str(exc))
        return 1

    if ns.out:
        with open(ns.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
