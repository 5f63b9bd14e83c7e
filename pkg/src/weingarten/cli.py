"""Command-line front end.

Settings are resolved in the order: built-in defaults, the JSON file
named by ``WEINGARTEN_SEED_CONFIG``, ``--config FILE``, then flags. Exit
codes: 0 on success, 1 when a verification suite fails, 2 for
configuration errors, 3 for solver errors.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from . import berger as B
from . import output as O
from .classes import FForm, class_from_options, ellipticity_check
from .closed_forms import (ConeSpec, cone_heights, cone_rho_limit, ke_angle, ke_domain_limit,
                           ke_x0)
from .errors import ConfigError, MaxSExceeded, ParseError, WeingartenError
from .hyperbolic import OrbitConfig, h2r_orbit
from .solver import SPHERE, SolveConfig, integrate_canonical
from .space import SpaceParams
from .suites import SUITES, run_suite

SEED_ENV = "WEINGARTEN_SEED_CONFIG"
CLASS_KINDS = ("const-h", "prescribed-h", "const-ke", "prescribed-ke", "phi", "fform")
FORMATS = ("csv", "json", "svg")
SWEEP_PARAMS = ("c", "h0", "kappa", "tau")


@dataclass
class RunConfig:
    kappa: float = 0.0
    tau: float = 0.0
    space: str | None = None
    cls: str = "const-h"
    h0: float | None = 1.0
    c: float | None = 1.0
    phi: str | None = None
    f: str | None = None
    s0: float = 1e-4
    tol: float = 1e-10
    max_s: float = 1e3
    horizon: float = 1e2
    out: str | None = None
    formats: list = field(default_factory=lambda: ["csv", "json"])
    stride: int = 1

    def params(self) -> SpaceParams:
        if self.space:
            return SpaceParams.from_name(self.space)
        return SpaceParams(self.kappa, self.tau)

    def solve_config(self) -> SolveConfig:
        return SolveConfig(s0=self.s0, rel_tol=self.tol, abs_tol=self.tol * 1e-2,
                           max_s=self.max_s, horizon=self.horizon)

    def weingarten_class(self):
        return class_from_options(self.cls, h0=self.h0, c=self.c, phi=self.phi, f=self.f)

    def echo(self) -> dict:
        out = asdict(self)
        out["class"] = out.pop("cls")
        p = self.params()
        out["kappa"], out["tau"] = p.kappa, p.tau
        out["solver"] = asdict(self.solve_config())
        return out


_FIELD_TYPES = {"kappa": float, "tau": float, "space": str, "cls": str, "h0": float,
                "c": float, "phi": str, "f": str, "s0": float, "tol": float, "max_s": float,
                "horizon": float, "out": str, "formats": list, "stride": int}
_ALIASES = {"class": "cls", "max-s": "max_s", "format": "formats"}


def _coerce(name, value, where):
    typ = _FIELD_TYPES[name]
    if value is None:
        return None
    try:
        if typ is float:
            if isinstance(value, bool):
                raise TypeError
            v = float(value)
            if not math.isfinite(v):
                raise ValueError
            return v
        if typ is int:
            if isinstance(value, bool) or int(value) != value:
                raise TypeError
            return int(value)
        if typ is list:
            items = [value] if isinstance(value, str) else list(value)
            for it in items:
                if it not in FORMATS:
                    raise ValueError
            return items
        if not isinstance(value, str):
            raise TypeError
        return value
    except (TypeError, ValueError):
        raise ConfigError(f"{where}: field {name!r} has invalid value {value!r}") from None


def load_json_config(path, cfg: RunConfig) -> RunConfig:
    """Overlay the settings of a JSON file onto ``cfg``."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: line 1: top level must be an object")
    updates = {}
    for key, value in data.items():
        name = _ALIASES.get(key, key).replace("-", "_")
        if name not in _FIELD_TYPES:
            line = _line_of(text, key)
            raise ConfigError(f"{path}: line {line}: unknown field {key!r}")
        updates[name] = _coerce(name, value, f"{path}: line {_line_of(text, key)}")
    return replace(cfg, **updates)


def _line_of(text, key):
    needle = json.dumps(key)
    pos = text.find(needle)
    return text.count("\n", 0, pos) + 1 if pos >= 0 else 1


def resolve_config(args) -> RunConfig:
    cfg = RunConfig()
    seed = os.environ.get(SEED_ENV)
    if seed:
        cfg = load_json_config(seed, cfg)
    if getattr(args, "config", None):
        cfg = load_json_config(args.config, cfg)
    updates = {}
    for name in _FIELD_TYPES:
        flag = "class_kind" if name == "cls" else ("format" if name == "formats" else name)
        val = getattr(args, flag, None)
        if val is not None:
            updates[name] = _coerce(name, val, "command line")
    # explicit curvatures override a named space from a config file
    if ("kappa" in updates or "tau" in updates) and "space" not in updates:
        updates["space"] = None
    cfg = replace(cfg, **updates)
    if cfg.cls not in CLASS_KINDS:
        raise ConfigError(f"field 'class': unknown kind {cfg.cls!r}")
    if cfg.stride < 1:
        raise ConfigError("field 'stride' must be at least 1")
    cfg.params()
    cfg.solve_config()
    return cfg


# ---------------------------------------------------------------- emission

def _emit(cfg: RunConfig, name: str, payloads: dict):
    """Write ``{format: text}`` to ``out/name.ext`` or to stdout."""
    for fmt in cfg.formats:
        if fmt not in payloads:
            continue
        if cfg.out:
            Path(cfg.out).mkdir(parents=True, exist_ok=True)
            O.write_text(Path(cfg.out) / f"{name}.{fmt}", payloads[fmt])
        else:
            sys.stdout.write(payloads[fmt])


def _check_elliptic(cls):
    if cls.is_h_form and cls.depends_on_t:
        rep = ellipticity_check(cls)
        if not rep.passed:
            raise ConfigError(f"class is not elliptic: 4t(dPhi/dt)^2 reaches {rep.worst}")


def _solve(cfg: RunConfig):
    cls = cfg.weingarten_class()
    _check_elliptic(cls)
    try:
        return integrate_canonical(cls, cfg.params(), cfg.solve_config()), False
    except MaxSExceeded as exc:
        return exc.partial, True


def _report(ex, cfg, capped):
    rep = ex.report()
    rep["config"] = cfg.echo()
    rep["max_s_exceeded"] = capped
    rep["residual_max"] = rep["diagnostics"].get("max_residual")
    return rep


def cmd_solve(args):
    cfg = resolve_config(args)
    ex, capped = _solve(cfg)
    p = ex.params
    payloads = {"csv": O.profile_csv(ex, cfg.stride), "json": O.json_text(_report(ex, cfg, capped))}
    if "svg" in cfg.formats:
        cap = f"kappa={p.kappa:g}, tau={p.tau:g}, {ex.classification}"
        payloads["svg"] = O.profile_svg(ex.rho, ex.h, cap)
    _emit(cfg, "profile", payloads)
    return 0


def cmd_classify(args):
    cfg = resolve_config(args)
    ex, capped = _solve(cfg)
    sys.stdout.write(O.json_text({"classification": ex.classification,
                                  "diagnostics": ex.diagnostics,
                                  "max_s_exceeded": capped, "config": cfg.echo()}))
    return 0


def cmd_ke_sphere(args):
    cfg = replace(resolve_config(args), cls="const-ke")
    p = cfg.params()
    c = cfg.c
    x0 = ke_x0(c, p)
    xs = np.linspace(0.0, x0, args.samples)
    rows = []
    for x in xs[:-1]:
        rows.append([x, ke_angle(x, c, p)])
    rows.append([x0, 0.0])
    ex, capped = _solve(cfg)
    n = ex.lower
    gap = max((abs(ex.drho[i] - ke_angle(ex.rho[i], c, p))
               for i in range(n) if ex.rho[i] <= 0.95 * x0), default=math.nan)
    rep = {"c": c, "x0": x0, "domain_limit": ke_domain_limit(p),
           "solver_classification": ex.classification, "solver_sup_error": gap,
           "solver_height": ex.diagnostics.get("total_height"), "config": cfg.echo()}
    payloads = {"csv": O.csv_text(("rho", "nu"), rows), "json": O.json_text(rep)}
    if "svg" in cfg.formats:
        payloads["svg"] = O.profile_svg(xs, [r[1] for r in rows],
                                        f"Ke={c:g}: angle vs radius", ylabel="nu")
    _emit(cfg, "ke_sphere", payloads)
    return 0


def cmd_cone(args):
    cfg = resolve_config(args)
    p = cfg.params()
    spec = ConeSpec(args.beta, args.cone_c)
    lim = cone_rho_limit(spec, p)
    top = min(lim, args.rho_max) * (1 - 1e-9)
    rho = np.linspace(0.0, top, args.samples)
    h = cone_heights(rho, spec, p)
    rep = {"beta": spec.beta, "c": spec.c, "rho_limit": lim, "nu": abs(spec.beta),
           "Ke": -p.tau**2, "config": cfg.echo()}
    payloads = {"csv": O.csv_text(("rho", "h"), zip(rho, h)), "json": O.json_text(rep)}
    if "svg" in cfg.formats:
        payloads["svg"] = O.profile_svg(rho, h, f"cone beta={spec.beta:g}")
    _emit(cfg, "cone", payloads)
    return 0


def cmd_phase_h2r(args):
    # the hyperboloid model is H2xR with kappa = -1
    cfg = replace(resolve_config(args), space=None, kappa=-1.0, tau=0.0)
    if cfg.cls == "fform":
        rel = FForm(cfg.f)
    elif cfg.cls == "const-h":
        rel = FForm(f"2*({cfg.h0!r}) - k2")
    else:
        raise ConfigError("phase-h2r takes --class fform or --class const-h")
    oc = OrbitConfig(s0=cfg.s0, rel_tol=cfg.tol, abs_tol=cfg.tol * 1e-2, max_s=cfg.max_s,
                     horizon=args.horizon)
    try:
        orb, capped = h2r_orbit(rel, oc), False
    except MaxSExceeded as exc:
        orb, capped = exc.partial, True
    cols = (orb.s, orb.r, orb.y, orb.h, orb.k1, orb.k2, orb.sigma_sq)
    rows = list(zip(*cols))[::cfg.stride]
    rep = {"classification": orb.classification, "diagnostics": orb.diagnostics,
           "max_s_exceeded": capped, "relation": rel.describe(), "config": cfg.echo()}
    payloads = {"csv": O.csv_text(("s", "r", "y", "h", "k1", "k2", "sigma_sq"), rows),
                "json": O.json_text(rep)}
    if "svg" in cfg.formats:
        payloads["svg"] = O.profile_svg(orb.r, orb.y, f"H2xR orbit, {orb.classification}",
                                        xlabel="r", ylabel="y")
    _emit(cfg, "phase_h2r", payloads)
    return 0


def cmd_berger_project(args):
    cfg = resolve_config(args)
    p = cfg.params()
    if not (p.kappa > 0 and p.tau != 0):
        raise ConfigError("berger-project needs kappa > 0 and tau != 0")
    ex, capped = _solve(cfg)
    curve = B.profile_curve(ex.rho, ex.h, p)
    rows = [[s, r, h, a, b] for s, r, h, (a, b) in zip(ex.s, ex.rho, ex.h, curve)][::cfg.stride]
    rep = {"classification": ex.classification, "max_s_exceeded": capped,
           "fiber_period": B.fiber_period(p), "config": cfg.echo()}
    if ex.classification == SPHERE:
        rep["embeddedness"] = B.embeddedness_check(ex, p)
    payloads = {"csv": O.csv_text(("s", "rho", "h", "y_radius", "y3"), rows),
                "json": O.json_text(rep)}
    if "svg" in cfg.formats:
        payloads["svg"] = O.profile_svg(curve[:, 0], curve[:, 1],
                                        f"stereographic profile, kappa={p.kappa:g}, tau={p.tau:g}",
                                        xlabel="distance to axis", ylabel="y3")
    _emit(cfg, "berger_profile", payloads)
    return 0


def cmd_verify(args):
    names = SUITES if args.suite == "all" else (args.suite,)
    results = [run_suite(n) for n in names]
    doc = results[0] if len(results) == 1 else {"passed": all(r["passed"] for r in results),
                                                 "suites": results}
    text = O.json_text(doc)
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        O.write_text(Path(args.out) / f"verify_{args.suite}.json", text)
    else:
        sys.stdout.write(text)
    return 0 if doc["passed"] else 1


SWEEP_COLUMNS = ("param", "value", "classification", "s_end", "turning_s", "total_height",
                 "nu_min", "max_sigma_sq", "embedded", "threshold", "error")


def _sweep_row(job):
    cfg, name, value = job
    row = {"param": name, "value": value}
    try:
        if name in ("kappa", "tau"):
            cfg = replace(cfg, space=None, **{name: value})
        else:
            cfg = replace(cfg, **{name: value})
        ex, capped = _solve(cfg)
        d = ex.diagnostics
        row.update(classification=ex.classification, s_end=d.get("s_end"),
                   turning_s=d.get("turning_s"), total_height=d.get("total_height"),
                   nu_min=d.get("nu_min"), max_sigma_sq=d.get("max_sigma_sq"))
        p = ex.params
        if ex.classification == SPHERE and p.kappa > 0 and p.tau != 0:
            e = B.embeddedness_check(ex, p)
            row.update(embedded=str(e["embedded"]).lower(), threshold=e["threshold"])
        if capped:
            row["error"] = "max_s exceeded"
    except (WeingartenError, ValueError, ZeroDivisionError) as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def sweep_values(args) -> list:
    if args.values is not None:
        text = args.values.strip()
        if not text:
            return []
        try:
            return [float(v) for v in text.split(",")]
        except ValueError:
            raise ConfigError(f"--values: cannot parse {args.values!r}") from None
    if args.range is not None:
        lo, hi, n = args.range
        n = int(n)
        if n <= 0:
            return []
        if args.log:
            if lo <= 0 or hi <= 0:
                raise ConfigError("--log needs a positive range")
            return [float(v) for v in np.geomspace(lo, hi, n)]
        return [float(v) for v in np.linspace(lo, hi, n)]
    raise ConfigError("sweep needs --values or --range")


def cmd_sweep(args):
    cfg = resolve_config(args)
    values = sweep_values(args)
    if not all(math.isfinite(v) for v in values):
        raise ConfigError("sweep ranges must be finite")
    jobs = [(cfg, args.param, v) for v in values]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_sweep_row, jobs))
    else:
        rows = [_sweep_row(j) for j in jobs]

    def cell(v):
        if v is None:
            return ""
        if isinstance(v, str):
            return v.replace(",", ";").replace("\n", " ")
        return v
    table = [[cell(r.get(k)) for k in SWEEP_COLUMNS] for r in rows]
    text = O.csv_text(SWEEP_COLUMNS, table)
    if cfg.out:
        Path(cfg.out).mkdir(parents=True, exist_ok=True)
        O.write_text(Path(cfg.out) / f"sweep_{args.param}.csv", text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------- parser

def _common(p: argparse.ArgumentParser):
    g = p.add_argument_group("space and class")
    g.add_argument("--space", help="named space: R3, H2xR, S2xR, Nil3, S3, Berger")
    g.add_argument("--kappa", type=float)
    g.add_argument("--tau", type=float)
    g.add_argument("--class", dest="class_kind", choices=CLASS_KINDS)
    g.add_argument("--h0", type=float, help="constant mean curvature")
    g.add_argument("--c", type=float, help="constant extrinsic curvature")
    g.add_argument("--phi", help="expression in t and v")
    g.add_argument("--f", help="expression in k2 and v")
    s = p.add_argument_group("solver")
    s.add_argument("--s0", type=float)
    s.add_argument("--tol", type=float, help="relative tolerance; absolute is 1e-2 of it")
    s.add_argument("--max-s", dest="max_s", type=float)
    o = p.add_argument_group("output")
    o.add_argument("--out", help="output directory (stdout when omitted)")
    o.add_argument("--format", action="append", choices=FORMATS)
    o.add_argument("--stride", type=int)
    o.add_argument("--config", help="JSON file of settings")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="weingarten",
                                 description="Rotational Weingarten surfaces in E(kappa, tau).")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="integrate and classify the canonical example")
    _common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("classify", help="print the classification as JSON")
    _common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("ke-sphere", help="closed-form angle of the constant Ke sphere")
    _common(p)
    p.add_argument("--samples", type=int, default=201)
    p.set_defaults(func=cmd_ke_sphere)

    p = sub.add_parser("cone", help="sample a constant-angle cone")
    _common(p)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--cone-c", type=float, default=0.0, help="height offset")
    p.add_argument("--rho-max", type=float, default=5.0)
    p.add_argument("--samples", type=int, default=201)
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("phase-h2r", help="orbit of k1 = f(k2, v) in H2xR")
    _common(p)
    p.add_argument("--horizon", type=float, default=30.0, help="geodesic radius cap")
    p.set_defaults(func=cmd_phase_h2r)

    p = sub.add_parser("berger-project", help="stereographic profile in a Berger sphere")
    _common(p)
    p.set_defaults(func=cmd_berger_project)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="one row per parameter value")
    _common(p)
    p.add_argument("--param", choices=SWEEP_PARAMS, required=True)
    p.add_argument("--values", help="comma-separated values")
    p.add_argument("--range", nargs=3, type=float, metavar=("LO", "HI", "N"))
    p.add_argument("--log", action="store_true", help="log-spaced range")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except WeingartenError as exc:
        print(f"solver error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
