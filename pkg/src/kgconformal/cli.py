"""Command-line front end: spectra, verification suites, map evaluation.

Exit codes are a stable contract:
  0 pass, 1 verification failure, 2 config error, 3 numerical domain error.

Reports are written atomically (temp file + rename).  In exact-forward
mode the JSON report's wall_ms is zeroed by default so identical inputs
give byte-identical output; pass --timing to record the measured time.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

from .confmap import ConformalMap, forward, inverse
from .core import ConfigError, DomainError, KgcError, NonFiniteError, SpaceTimePoint, UnitSystem
from .diffengine import DiffConfig, MODE_EXACT, MODE_STENCIL
from .harness import SUITES, run_suite
from .specfun import HYDRINO, SOMMERFELD
from . import coulomb as cb
from . import oscillator as ho

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_DOMAIN = 3

ENV_MODE = "KGCONFORMAL_MODE"
ENV_TOLERANCE = "KGCONFORMAL_TOLERANCE"


def _atomic_write(path: str, text: str):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".kgc-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, output: str = None):
    if output:
        _atomic_write(output, text)
    else:
        sys.stdout.write(text)


def _load_config_file(path):
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}")
    if not isinstance(cfg, dict):
        raise ConfigError("config file must hold a JSON object")
    return cfg


def _units(args) -> UnitSystem:
    return UnitSystem(
        hbar=getattr(args, "hbar", 1.0),
        c=getattr(args, "c", 1.0),
        m0=getattr(args, "m0", 1.0),
    )


def _parse_range(text: str):
    """'0..3' or '4' -> list of ints."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _parse_states(text: str):
    """'(0,0);(1,0);(0,1,1)' -> list of tuples."""
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip().strip("()")
        if not chunk:
            continue
        parts = [int(v) for v in chunk.split(",")]
        if len(parts) not in (2, 3):
            raise ConfigError(f"bad state spec: {chunk!r}")
        out.append(tuple(parts))
    return out


def _diff_config(args) -> DiffConfig:
    mode = getattr(args, "mode", None) or os.environ.get(ENV_MODE) or MODE_EXACT
    if mode in ("exact", "exact-forward"):
        mode = MODE_EXACT
    elif mode == "stencil":
        mode = MODE_STENCIL
    else:
        raise ConfigError(f"unknown mode: {mode!r}")
    return DiffConfig(mode=mode)


def _tolerance(args):
    tol = getattr(args, "tolerance", None)
    if tol is None:
        env = os.environ.get(ENV_TOLERANCE)
        tol = float(env) if env else None
    return tol


# ---------------------------------------------------------------------------
# spectrum


def _spectrum_rows(args):
    units = _units(args)
    if args.system == "oscillator":
        model = ho.OscillatorModel(omega=args.omega, units=units)
        return [
            {"n": n, "energy": ho.energy(model, n)}
            for n in _parse_range(args.n)
        ]
    if args.alpha == 0.0:
        raise ConfigError("alpha = 0 is degenerate: the map scale b diverges")
    model = cb.CoulombModel(alpha=args.alpha, units=units)
    rows = []
    for spec in _parse_states(args.states):
        n, l = spec[0], spec[1]
        k = spec[2] if len(spec) > 2 else 0
        state = cb.make_state(model, n, l, k, args.branch)
        coeff = cb.map_coefficients(model, state)
        rows.append(
            {
                "n": n,
                "l": l,
                "k": k,
                "branch": args.branch,
                "eta_l": state.eta,
                "energy": state.energy,
                "r_nl": state.r_scale,
                "a": coeff.a,
                "b": coeff.b,
            }
        )
    return rows


def _rows_to_csv(rows) -> str:
    cols = list(rows[0].keys())
    lines = [",".join(cols)]
    for row in rows:
        lines.append(",".join(_csv_cell(row[c]) for c in cols))
    return "\n".join(lines) + "\n"


def _csv_cell(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def cmd_spectrum(args) -> int:
    rows = _spectrum_rows(args)
    if args.format == "csv":
        text = _rows_to_csv(rows)
    else:
        text = json.dumps({"system": args.system, "rows": rows}, indent=2, allow_nan=False) + "\n"
    _emit(text, args.output)
    return EXIT_PASS


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    cfg = _diff_config(args)
    params = {}
    if args.config:
        params.update(_load_config_file(args.config))
    tol = _tolerance(args)
    if tol is not None:
        params["tolerance"] = tol
    if args.nmax is not None:
        params["nmax"] = args.nmax
    if args.omega is not None:
        params["omega"] = args.omega
    if args.alpha is not None:
        params["alpha"] = args.alpha
    if args.branch is not None:
        params["branch"] = args.branch
    if args.state is not None:
        params["states"] = [tuple(int(v) for v in args.state.split(","))]
    if args.seed is not None:
        params["seed"] = args.seed
    if args.n_fields is not None:
        params["n_fields"] = args.n_fields

    report = run_suite(args.suite, params, cfg)
    if cfg.mode == MODE_EXACT and not args.timing:
        report = report.with_wall_ms(0.0)
    _emit(report.to_json(), args.output)
    return EXIT_PASS if report.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# map


def _map_from_args(args) -> ConformalMap:
    units = _units(args)
    if args.system == "oscillator":
        model = ho.OscillatorModel(omega=args.omega, units=units)
        e_val = args.energy if args.energy is not None else ho.energy(model, 0)
        return ho.oscillator_map(model, e_val)
    if args.system == "coulomb":
        if args.alpha == 0.0:
            raise ConfigError("alpha = 0 is degenerate: the map scale b diverges")
        model = cb.CoulombModel(alpha=args.alpha, units=units)
        spec = _parse_states(args.state or "(0,0)")[0]
        state = cb.make_state(model, spec[0], spec[1], 0, args.branch)
        return cb.coulomb_map(model, state)
    # raw parameters
    if args.b is None or args.energy is None:
        raise ConfigError("raw map needs --a, --b, --lam and --energy")
    b = math.inf if args.b == "inf" else float(args.b)
    return ConformalMap(a=args.a, b=b, lam=args.lam, E=args.energy, units=units)


def _read_points(path):
    pts = []
    try:
        fh = open(path)
    except OSError as exc:
        raise ConfigError(f"cannot read points file {path}: {exc}")
    with fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 4:
                raise ConfigError(f"{path}:{lineno}: expected 'x1 x2 x3 t'")
            x1, x2, x3, t = (float(v) for v in parts)
            pts.append(SpaceTimePoint(x=(x1, x2, x3), t=t))
    return pts


def cmd_map(args) -> int:
    cmap = _map_from_args(args)
    pts = _read_points(args.points)
    lines = ["# z1 z2 z3 re_s im_s roundtrip_err"]
    for p in pts:
        q = forward(cmap, p)
        back = inverse(cmap, q)
        rt = abs(back.t - p.t) + max(abs(a - b) for a, b in zip(back.x, p.x))
        lines.append(
            f"{q.z[0]!r} {q.z[1]!r} {q.z[2]!r} {q.s.real!r} {q.s.imag!r} {rt:.3e}"
        )
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_PASS


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kgconformal",
        description="Numerically certify the conformal-map identities of the "
        "Klein-Gordon oscillator and Coulomb systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_units(p):
        p.add_argument("--hbar", type=float, default=1.0)
        p.add_argument("--c", type=float, default=1.0)
        p.add_argument("--m0", type=float, default=1.0)

    sp = sub.add_parser("spectrum", help="energy spectra as JSON or CSV tables")
    sp.add_argument("--system", choices=("oscillator", "coulomb"), required=True)
    sp.add_argument("--omega", type=float, default=1.0)
    sp.add_argument("--alpha", type=float, default=0.0072973525693)
    sp.add_argument("--n", default="0..4", help="oscillator range, e.g. 0..6")
    sp.add_argument("--states", default="(0,0);(1,0);(0,1)")
    sp.add_argument("--branch", choices=(SOMMERFELD, HYDRINO), default=SOMMERFELD)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--output")
    add_units(sp)
    sp.set_defaults(func=cmd_spectrum)

    vp = sub.add_parser("verify", help="run a verification suite, write a JSON report")
    vp.add_argument("--suite", choices=SUITES, required=True)
    vp.add_argument("--mode", choices=("exact", "exact-forward", "stencil"))
    vp.add_argument("--nmax", type=int)
    vp.add_argument("--omega", type=float)
    vp.add_argument("--alpha", type=float)
    vp.add_argument("--branch", choices=(SOMMERFELD, HYDRINO))
    vp.add_argument("--state", help="single coulomb state as 'n,l'")
    vp.add_argument("--tolerance", type=float)
    vp.add_argument("--seed", type=int)
    vp.add_argument("--n-fields", dest="n_fields", type=int)
    vp.add_argument("--config", help="JSON file of suite parameters")
    vp.add_argument("--timing", action="store_true", help="record wall time even in exact mode")
    vp.add_argument("--output")
    vp.set_defaults(func=cmd_verify)

    mp = sub.add_parser("map", help="apply the conformal map to a points file")
    mp.add_argument("--points", required=True, help="lines of 'x1 x2 x3 t', '#' comments")
    mp.add_argument("--system", choices=("oscillator", "coulomb", "raw"), default="raw")
    mp.add_argument("--omega", type=float, default=1.0)
    mp.add_argument("--alpha", type=float, default=0.0072973525693)
    mp.add_argument("--state", help="coulomb state as '(n,l)'")
    mp.add_argument("--branch", choices=(SOMMERFELD, HYDRINO), default=SOMMERFELD)
    mp.add_argument("--a", type=float, default=0.0)
    mp.add_argument("--b", help="scale length, or 'inf'")
    mp.add_argument("--lam", type=float, default=2.0)
    mp.add_argument("--energy", type=float)
    mp.add_argument("--output")
    add_units(mp)
    mp.set_defaults(func=cmd_map)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DomainError, NonFiniteError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except KgcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
