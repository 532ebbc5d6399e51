"""Command line front end.

Subcommands
    simulate   integrate a trajectory, write channel series
    brackets   bracket verification report (closed forms vs. oracle)
    expand     low-energy ladder and commuting-chart report
    spectrum   hydrogen-like fine-structure table

All numeric output is deterministic: same config, same seed, same
bytes.  Exit codes: 0 success, 1 runtime failure, 2 config error (the
message names the offending field or YAML line).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np
import yaml

from . import expansion, hydrogen
from .brackets import (aux_table_report, closed_vs_direct_report,
                       defining_property_report)
from .dynamics import integrate
from .fields import KINDS, make_background
from .phase import Model, init_state, random_constrained_state

CHANNEL_ORDER = ("t", "x1", "x2", "x3", "P0", "P1", "P2", "P3",
                 "S1", "S2", "S3", "D1", "D2", "D3", "H",
                 "T2", "T3", "T4", "T5", "spin2")


class ConfigError(Exception):
    pass


def _fmt(v):
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


# ---------------------------------------------------------------------------
# config handling


def load_config(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path}: {exc}") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f" at line {mark.line + 1}" if mark else ""
        raise ConfigError(f"config: YAML parse error{where}: {exc}") from exc
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError("config: top level must be a mapping")
    return data


def _get(cfg, path, kind, default=None, required=False):
    cur = cfg
    parts = path.split(".")
    for part in parts[:-1]:
        cur = cur.get(part, {}) if isinstance(cur, dict) else {}
    if not isinstance(cur, dict) or parts[-1] not in cur:
        if required:
            raise ConfigError(f"config: missing required field '{path}'")
        return default
    val = cur[parts[-1]]
    if kind is float:
        if not isinstance(val, (int, float)) or isinstance(val, bool):
            raise ConfigError(f"config: field '{path}' must be a number, "
                              f"got {val!r}")
        return float(val)
    if kind is int:
        if not isinstance(val, int) or isinstance(val, bool):
            raise ConfigError(f"config: field '{path}' must be an integer, "
                              f"got {val!r}")
        return val
    if kind is str:
        if not isinstance(val, str):
            raise ConfigError(f"config: field '{path}' must be a string, "
                              f"got {val!r}")
        return val
    if kind is bool:
        if not isinstance(val, bool):
            raise ConfigError(f"config: field '{path}' must be a boolean, "
                              f"got {val!r}")
        return val
    if kind == "vec3":
        if (not isinstance(val, (list, tuple)) or len(val) != 3
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool)
                           for x in val)):
            raise ConfigError(f"config: field '{path}' must be a list of "
                              f"three numbers, got {val!r}")
        return tuple(float(x) for x in val)
    raise AssertionError(kind)


def model_from_config(cfg):
    c = _get(cfg, "units.c", float, 10.0)
    hbar = _get(cfg, "units.hbar", float, 1.0)
    if c <= 0 or hbar <= 0:
        raise ConfigError("config: units.c and units.hbar must be positive")
    kind = _get(cfg, "background.kind", str, "zero")
    if kind not in KINDS:
        raise ConfigError(f"config: background.kind must be one of {KINDS}, "
                          f"got {kind!r}")
    params = {}
    if kind in ("uniform-E", "crossed"):
        params["E"] = _get(cfg, "background.E", "vec3", required=True)
    if kind in ("uniform-B", "crossed"):
        params["B"] = _get(cfg, "background.B", "vec3", required=True)
    if kind == "coulomb":
        params["q"] = _get(cfg, "background.q", float, required=True)
    e = _get(cfg, "model.e", float, 1.0)
    bg = make_background(kind, e=e, c=c, **params)
    m = _get(cfg, "model.m", float, 1.0)
    if m <= 0:
        raise ConfigError("config: model.m must be positive")
    g = _get(cfg, "model.g", float, 2.0)
    alpha = _get(cfg, "model.alpha", float, 0.75 * hbar**2)
    if alpha < 0:
        raise ConfigError("config: model.alpha must be >= 0 "
                          "(0 switches spin off)")
    return Model(background=bg, m=m, g=g, hbar=hbar, alpha=alpha)


# ---------------------------------------------------------------------------
# output writers


def _open_out(path):
    return open(path, "w") if path else sys.stdout


def write_channels(channels, fmt, out_path):
    names = [n for n in CHANNEL_ORDER if n in channels]
    fh = _open_out(out_path)
    try:
        if fmt == "csv":
            fh.write(",".join(names) + "\n")
            n = len(channels["t"])
            for k in range(n):
                fh.write(",".join(_fmt(float(channels[nm][k])) for nm in names)
                         + "\n")
        elif fmt == "json":
            payload = {nm: [float(v) for v in channels[nm]] for nm in names}
            json.dump(payload, fh, indent=1)
            fh.write("\n")
        elif fmt == "plot":
            # long format for plotting front ends
            fh.write("series,t,value\n")
            t = channels["t"]
            for nm in names:
                if nm == "t":
                    continue
                for k in range(len(t)):
                    fh.write(f"{nm},{_fmt(float(t[k]))},"
                             f"{_fmt(float(channels[nm][k]))}\n")
        else:
            raise AssertionError(fmt)
    finally:
        if fh is not sys.stdout:
            fh.close()


def write_json(payload, out_path):
    fh = _open_out(out_path)
    try:
        json.dump(payload, fh, indent=1, default=_json_default)
        fh.write("\n")
    finally:
        if fh is not sys.stdout:
            fh.close()


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj)}")


# ---------------------------------------------------------------------------
# subcommands


def cmd_simulate(args):
    cfg = load_config(args.config) if args.config else {}
    model = model_from_config(cfg)
    x0 = _get(cfg, "simulate.x0", "vec3", (0.0, 0.0, 0.0))
    P0 = _get(cfg, "simulate.P0", "vec3", (0.0, 0.0, 0.0))
    spin_dir = _get(cfg, "simulate.spin_dir", "vec3", (0.0, 0.0, 1.0))
    t_final = _get(cfg, "simulate.t_final", float, required=True)
    dt = _get(cfg, "simulate.dt", float, required=True)
    if dt <= 0 or t_final <= 0:
        raise ConfigError("config: simulate.dt and simulate.t_final must be "
                          "positive")
    record_every = _get(cfg, "simulate.record_every", int, 1)
    method = _get(cfg, "simulate.method", str, "rk4")
    if method not in ("rk4", "dop853"):
        raise ConfigError("config: simulate.method must be rk4 or dop853, "
                          f"got {method!r}")
    project = _get(cfg, "simulate.project", bool, True)
    z0 = init_state(model, x3=x0, P3=P0, spin_dir=spin_dir)
    traj = integrate(model, z0, t_final, dt, record_every=record_every,
                     method=method, project=project)
    write_channels(traj.channels(), args.format, args.out)
    return 0


def cmd_brackets(args):
    cfg = load_config(args.config) if args.config else {}
    model = model_from_config(cfg)
    rng = np.random.default_rng(args.seed)
    n_states = args.states
    states = [random_constrained_state(model, rng) for _ in range(n_states)]
    report = {
        "background": model.background.kind,
        "seed": args.seed,
        "n_states": n_states,
        "defining_property_max": defining_property_report(states, model),
        "closed_vs_direct_max_rel": closed_vs_direct_report(states, model),
        "aux_table": aux_table_report(states, model),
    }
    if args.format == "csv":
        fh = _open_out(args.out)
        try:
            fh.write("quantity,value\n")
            fh.write(f"defining_property_max,"
                     f"{_fmt(report['defining_property_max'])}\n")
            for fam, v in report["closed_vs_direct_max_rel"].items():
                fh.write(f"closed_vs_direct_{fam},{_fmt(v)}\n")
            for row, v in report["aux_table"]["resolved_max_dev"].items():
                fh.write(f"aux_resolved_{row},{_fmt(v)}\n")
            fh.write(f"aux_transcribed_energy_row,"
                     f"{_fmt(report['aux_table']['transcribed_energy_row_max_dev'])}\n")
        finally:
            if fh is not sys.stdout:
                fh.close()
    else:
        write_json(report, args.out)
    return 0


def cmd_expand(args):
    cfg = load_config(args.config) if args.config else {}
    background = _get(cfg, "expand.background", str, "crossed")
    if background not in ("crossed", "coulomb"):
        raise ConfigError("config: expand.background must be crossed or "
                          f"coulomb, got {background!r}")
    ladder = expansion.bracket_ladder(background)
    model = model_from_config(cfg)
    shift = expansion.primed_shift_example(model)
    report = {
        "background": background,
        "ladder": {fam: {"cs": ent["cs"], "order": ent["order"],
                         "residuals": ent["residuals"],
                         "scaled": ent["scaled"],
                         "decreasing": expansion.ladder_decreasing(ent)}
                   for fam, ent in ladder.items()},
        "primed_shift_example": shift,
    }
    if args.format == "csv":
        fh = _open_out(args.out)
        try:
            fh.write("family,c,residual,scaled\n")
            for fam, ent in report["ladder"].items():
                for c, r, s in zip(ent["cs"], ent["residuals"], ent["scaled"]):
                    fh.write(f"{fam},{_fmt(float(c))},{_fmt(float(r))},"
                             f"{_fmt(float(s))}\n")
        finally:
            if fh is not sys.stdout:
                fh.close()
    else:
        write_json(report, args.out)
    return 0


def cmd_spectrum(args):
    cfg = load_config(args.config) if args.config else {}
    hm = hydrogen.HydrogenModel(
        alpha=_get(cfg, "spectrum.alpha_fs", float, hydrogen.ALPHA_FS),
        mc2=_get(cfg, "spectrum.mc2", float, hydrogen.MC2_EV),
        g=_get(cfg, "spectrum.g", float, 2.0),
    )
    n_max = _get(cfg, "spectrum.n_max", int, 3)
    if n_max < 1:
        raise ConfigError("config: spectrum.n_max must be >= 1")
    rows = hydrogen.fine_structure_table(hm, n_max)
    summary = {
        "p_splitting_n2": hydrogen.p_level_splitting(hm),
        "p_splitting_n2_bare_g": hydrogen.p_level_splitting_naive(hm),
    }
    if args.format == "csv":
        fh = _open_out(args.out)
        try:
            fh.write("n,l,j,kinetic,spin_orbit,total,sommerfeld,defect\n")
            for row in rows:
                cells = [str(row["n"]), str(row["l"]), _fmt(float(row["j"]))]
                for key in ("kinetic", "spin_orbit", "total", "sommerfeld",
                            "defect"):
                    v = row[key]
                    cells.append("" if v is None else _fmt(float(v)))
                fh.write(",".join(cells) + "\n")
        finally:
            if fh is not sys.stdout:
                fh.close()
    else:
        write_json({"levels": rows, "summary": summary}, args.out)
    return 0


# ---------------------------------------------------------------------------
# self test


def run_selftest():
    from .quantum import (build_operators, correspondence_report,
                          g_minus_one_residual, shift_identity_residual)

    checks = []

    bg = make_background("coulomb", e=1.0, c=10.0, q=1.0)
    model = Model(background=bg, m=1.0, g=2.0)
    rng = np.random.default_rng(0)
    states = [random_constrained_state(model, rng) for _ in range(3)]
    dp = defining_property_report(states, model)
    checks.append(("dirac bracket kills the second-class pair", dp < 1e-10))
    cvd = closed_vs_direct_report(states, model)
    checks.append(("closed forms match the direct oracle",
                   max(cvd.values()) < 1e-8))

    lad = expansion.bracket_ladder("crossed", cs=(10.0, 20.0, 40.0))
    checks.append(("low-energy ladder decreases",
                   all(expansion.ladder_decreasing(e) for e in lad.values())))

    hm = hydrogen.HydrogenModel()
    dev = max(abs(hydrogen.level_shift(hm, n, l, j)
                  - hydrogen.sommerfeld_shift(hm, n, j))
              for n in (2, 3) for l in range(1, n)
              for j in (l - 0.5, l + 0.5))
    checks.append(("fine structure matches the frozen oracle", dev < 1e-18))

    ps = build_operators("uniform-E")
    checks.append(("potential shift identity is exact",
                   shift_identity_residual(ps).is_zero()))
    checks.append(("spin-orbit coupling carries g-1",
                   g_minus_one_residual(ps).is_zero()))
    rep = correspondence_report("free")
    checks.append(("operator correspondence floors hold",
                   all(v["ok"] for v in rep.values())))

    ok = True
    for name, passed in checks:
        print(f"{'PASS' if passed else 'FAIL'}  {name}")
        ok = ok and passed
    return 0 if ok else 1


# ---------------------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(
        prog="relspin",
        description="Relativistic spinning particle in stationary "
                    "electromagnetic fields")
    ap.add_argument("--selftest", action="store_true",
                    help="run the built-in verification battery and exit")
    sub = ap.add_subparsers(dest="command")
    for name, fn in (("simulate", cmd_simulate), ("brackets", cmd_brackets),
                     ("expand", cmd_expand), ("spectrum", cmd_spectrum)):
        p = sub.add_parser(name)
        p.add_argument("--config", help="YAML configuration file")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json", "plot"),
                       default="json" if name != "simulate" else "csv")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--states", type=int, default=8,
                       help="random states for the brackets report")
        p.set_defaults(fn=fn)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.selftest:
        return run_selftest()
    if not getattr(args, "fn", None):
        ap.print_help()
        return 2
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
