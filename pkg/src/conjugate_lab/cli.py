"""Command-line front end: ``conjugate-lab <subcommand> [options]``.

Every subcommand writes its result to ``--out`` (CSV or JSON) and accepts
``--selftest`` to run the invariant suite of the module behind it. Options
may also come from a JSON file given with ``--config``; command-line flags
override file values and unknown keys are rejected.

Exit status: 0 on success, 2 for invalid configuration, 3 when a
computation fails. Errors are reported on stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np

from . import circle, conjugator, distribution, io, poisson, selftest, series, strip
from .circle import TWO_PI, ArcSet, StepSymbol, TrigPoly
from .errors import ConfigError, ConjugateLabError

_PI_RE = re.compile(r"^\s*([+-]?)\s*(\d*\.?\d*(?:[eE][+-]?\d+)?)?\s*\*?\s*pi\s*(?:/\s*(\d*\.?\d+))?\s*$")


def parse_angle(text) -> float:
    """Radians from a number or a pi literal such as ``pi``, ``-pi/2``, ``3*pi/4``, ``2pi``."""
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        return float(text)
    s = str(text).strip().lower().replace("π", "pi")
    m = _PI_RE.match(s)
    if m:
        sign, coef, den = m.groups()
        val = (float(coef) if coef else 1.0) * np.pi / (float(den) if den else 1.0)
        return -val if sign == "-" else val
    try:
        return float(s)
    except ValueError:
        raise ConfigError(f"cannot read {text!r} as an angle or number") from None


def parse_list(text, kind=parse_angle) -> List[float]:
    if isinstance(text, (list, tuple)):
        return [kind(v) for v in text]
    s = str(text).strip()
    if s.startswith("["):
        return [kind(v) for v in _json(s)]
    return [kind(v) for v in s.split(",") if v.strip()]


def parse_range(text) -> np.ndarray:
    """``start:stop:count`` (inclusive linspace) or an explicit list."""
    if isinstance(text, str) and text.count(":") == 2:
        a, b, n = text.split(":")
        n = int(n)
        if n < 2:
            raise ConfigError("a range needs at least two points")
        return np.linspace(parse_angle(a), parse_angle(b), n)
    return np.array(parse_list(text))


def _json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from None


def _load_obj(text):
    if isinstance(text, (dict, list)):
        return text
    s = str(text).strip()
    if s.startswith("{") or s.startswith("["):
        return _json(s)
    p = Path(s)
    if not p.is_file():
        raise ConfigError(f"{s!r} is neither inline JSON nor a readable file")
    return _json(p.read_text(encoding="utf-8"))


def parse_arcs(obj) -> ArcSet:
    obj = _load_obj(obj)
    try:
        return ArcSet(tuple((parse_angle(a), parse_angle(b)) for a, b in obj))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad arcs: {exc}") from None


def parse_symbol(obj):
    """Build a symbol from its JSON description.

    ``{"type": "rho" | "indicator", "arcs": [[a, b], ...], "scale": c}``,
    ``{"type": "step", "breakpoints": [...], "values": [...]}``,
    ``{"type": "const", "value": c}``,
    ``{"type": "trig", "cos": [...], "sin": [...]}``.
    """
    obj = _load_obj(obj)
    if not isinstance(obj, dict) or "type" not in obj:
        raise ConfigError("a symbol needs a JSON object with a 'type' field")
    kind = obj["type"]
    allowed = {"rho": {"arcs", "scale"}, "indicator": {"arcs", "scale"},
               "step": {"breakpoints", "values"}, "const": {"value"}, "trig": {"cos", "sin"}}
    if kind not in allowed:
        raise ConfigError(f"unknown symbol type {kind!r}")
    extra = set(obj) - allowed[kind] - {"type"}
    if extra:
        raise ConfigError(f"unknown symbol fields {sorted(extra)}")
    try:
        if kind in ("rho", "indicator"):
            E = parse_arcs(obj["arcs"])
            base = circle.rho(E) if kind == "rho" else E.indicator()
            return base * parse_angle(obj.get("scale", 1.0))
        if kind == "step":
            return StepSymbol([parse_angle(b) for b in obj["breakpoints"]],
                              [parse_angle(v) for v in obj["values"]])
        if kind == "const":
            return StepSymbol.constant(parse_angle(obj["value"]))
        return TrigPoly.from_real([parse_angle(v) for v in obj.get("cos", [])],
                                  [parse_angle(v) for v in obj.get("sin", [])])
    except KeyError as exc:
        raise ConfigError(f"symbol of type {kind!r} lacks field {exc}") from None
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad symbol: {exc}") from None


# ---------------------------------------------------------------------------
# validation helpers


def _pow2(n: int, name: str = "n"):
    if n < 8 or n & (n - 1):
        raise ConfigError(f"{name} must be a power of two >= 8, got {n}")


def _positive(x, name):
    if not x > 0:
        raise ConfigError(f"{name} must be positive, got {x}")


def _grid_opts(a):
    if not 1 <= a.depth <= 60:
        raise ConfigError("depth must lie in 1..60")
    if not 0 < a.ratio < 1:
        raise ConfigError("ratio must lie in (0, 1)")
    _pow2(a.n_base, "n-base")


def _lambdas(a) -> np.ndarray:
    if a.lambdas is not None:
        lam = parse_range(a.lambdas)
    else:
        _positive(a.lmax, "lmax")
        lam = np.linspace(0.0, a.lmax, a.nlam)
    if np.any(lam < 0) or np.any(np.diff(lam) <= 0):
        raise ConfigError("lambdas must be nonnegative and increasing")
    return lam


def _window(a):
    w = parse_list(a.window)
    if len(w) != 2 or not w[0] < w[1]:
        raise ConfigError("window must be 'lo,hi' with lo < hi")
    return tuple(w)


def _emit(a, header, rows, obj):
    if a.format == "csv":
        io.write_csv(a.out, header, rows)
    else:
        io.write_json(a.out, obj)


# ---------------------------------------------------------------------------
# subcommands


def cmd_conjugate(a):
    f = parse_symbol(a.symbol)
    _pow2(a.n)
    theta, exact, fft, pv, report = conjugator.cross_check(f, a.n)
    rows = list(zip(theta, exact, fft, pv))
    footer = report.to_json()
    if a.format == "csv":
        io.write_csv(a.out, ["theta", "exact", "fft", "pv"], rows)
        io.write_json(_footer_path(a.out), footer)
    else:
        io.write_json(a.out, {**footer, "theta": theta, "exact": exact, "fft": fft, "pv": pv})


def _footer_path(out) -> Path:
    p = Path(out)
    return p.with_name(p.stem + ".footer.json")


def _graded_conjugate(f: StepSymbol, a):
    angles = f.jumps()[0]
    grid = circle.GradedGrid(tuple(angles), depth=a.depth, ratio=a.ratio, n_base=a.n_base)
    return conjugator.conjugate_step_on_grid(f, grid)


def cmd_distribution(a):
    f = parse_symbol(a.symbol)
    if not isinstance(f, StepSymbol):
        raise ConfigError("distribution needs a step symbol")
    _grid_opts(a)
    lam = _lambdas(a)
    vals = _graded_conjugate(f, a)
    curve = distribution.distribution_curve(vals, lam)
    obj = {"curve": curve.to_json()}
    try:
        obj["fit"] = distribution.fit_decay(curve, _window(a)).to_json()
    except ConjugateLabError as exc:
        obj["fit"] = None
        obj["fit_error"] = str(exc)
    _emit(a, ["lambda", "measure", "count"], zip(curve.lambdas, curve.measures, curve.counts), obj)


def cmd_theorem1(a):
    if (a.f_const is None) == (a.f is None):
        raise ConfigError("give exactly one of --f-const and --f")
    if a.f is not None:
        f = parse_symbol(a.f)
        if not isinstance(f, StepSymbol):
            raise ConfigError("--f must describe a step symbol")
    else:
        f = StepSymbol.constant(parse_angle(a.f_const))
    if a.arcs is None:
        raise ConfigError("--arcs is required")
    E = parse_arcs(a.arcs)
    _grid_opts(a)
    v = distribution.verdict(f, E, lambdas=_lambdas(a), window=_window(a), n_base=a.n_base)
    obj = v.to_json()
    if a.format == "csv":
        ev = obj["evidence"]
        rows = [(k, json.dumps(ev[k], sort_keys=True) if isinstance(ev[k], (dict, list)) else io.fmt(ev[k]))
                for k in sorted(ev)]
        io.write_csv(a.out, ["key", "value"],
                     [("verdict", v.verdict), ("theorem", v.theorem), ("alpha", io.fmt(v.alpha)),
                      ("C", io.fmt(v.C))] + rows)
    else:
        io.write_json(a.out, obj)


def cmd_zygmund(a):
    E = parse_arcs(a.arcs)
    if not 0 < E.measure < TWO_PI:
        raise ConfigError("need 0 < |E| < 2 pi")
    _grid_opts(a)
    lam = _lambdas(a)
    conj = conjugator.conjugate_step_on_grid(
        E.indicator(), circle.GradedGrid(tuple(E.endpoints), depth=a.depth, ratio=a.ratio,
                                         n_base=a.n_base))
    absval = circle.SampledFn(conj.grid, np.abs(conj.values))
    curve = distribution.distribution_curve(absval, 2 * lam / np.pi)
    bound = 10 * np.pi * np.exp(-2 * lam)
    ok = curve.measures < bound
    rows = list(zip(lam, curve.measures, bound, ok))
    _emit(a, ["lambda", "measure", "bound", "ok"], rows,
          {"lambdas": lam, "measures": curve.measures, "bounds": bound, "ok": ok,
           "all_ok": bool(np.all(ok))})


def cmd_strip(a):
    lam = parse_angle(a.lam)
    if lam < 0:
        raise ConfigError("lambda must be >= 0")
    if a.nx < 2 or a.ny < 2:
        raise ConfigError("nx and ny must be at least 2")
    xmax = parse_angle(a.xmax)
    if not 0 < xmax < np.pi / 2:
        raise ConfigError("xmax must lie in (0, pi/2)")
    ymin, ymax = parse_angle(a.ymin), parse_angle(a.ymax)
    if not ymin < ymax:
        raise ConfigError("need ymin < ymax")
    grid = strip.heatmap(lam, np.linspace(-xmax, xmax, a.nx), np.linspace(ymin, ymax, a.ny))
    _emit(a, ["x", "y", "g"], grid.tolist(), {"lambda": lam, "rows": grid})


def cmd_series(a):
    xs = parse_list(a.xs)
    _positive(a.tol, "tol")
    if any(not 0 < x < np.exp(-1) for x in xs):
        raise ConfigError("every x must lie in (0, 1/e)")
    rows = []
    for x in xs:
        s = series.loglog_cos_series(x, a.tol)
        asy = series.asymptote(x)
        rows.append((x, s.value, asy, s.value - asy, s.tail_bound))
    _emit(a, ["x", "series", "asymptote", "err", "bound"], rows,
          {"B": series.constant_B(), "rows": [dict(zip(["x", "series", "asymptote", "err", "bound"], r))
                                              for r in rows]})


def cmd_jump(a):
    try:
        spec = series.JumpSymbolSpec(parse_angle(a.t0), parse_angle(a.delta),
                                     None if a.taper_width is None else parse_angle(a.taper_width))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    offs = parse_list(a.offsets)
    if any(o == 0 for o in offs):
        raise ConfigError("offsets must be nonzero")
    t = spec.t0 + np.array(offs)
    f = series.jump_symbol(spec, t)
    conj = series.jump_conjugate(spec, t)
    env = series.envelope(offs)
    rows = list(zip(t, f, conj, np.exp(conj), env))
    _emit(a, ["t", "f", "conj", "exp_conj", "envelope"], rows,
          {"spec": spec.to_json(), "rows": [dict(zip(["t", "f", "conj", "exp_conj", "envelope"], r))
                                            for r in rows]})


def cmd_outer(a):
    f = parse_symbol(a.symbol)
    _positive(a.p, "p")
    radii = parse_list(a.radii)
    if any(not 0 <= r < 1 for r in radii) or np.any(np.diff(radii) <= 0):
        raise ConfigError("radii must increase inside [0, 1)")
    curve = poisson.hardy_growth(f, a.p, radii)
    _emit(a, ["r", "mean_p"], curve.rows(),
          {"p": a.p, "radii": curve.radii, "means": curve.means, "monotone": curve.is_monotone()})


def cmd_gap(a):
    f = parse_symbol(a.symbol)
    if not isinstance(f, StepSymbol):
        raise ConfigError("gap needs a step symbol")
    if a.arcs is not None:
        f = circle.scale_symbol(f, circle.rho(parse_arcs(a.arcs)))
    gap = circle.essential_range_gap(f)
    jumps = f.jumps()[1]
    obj = {"essential_range": f.essential_range(), "gap": gap,
           "max_jump": float(np.max(np.abs(jumps))) if len(jumps) else 0.0,
           "gap_at_least_pi": bool(gap >= np.pi - 1e-6)}
    _emit(a, ["key", "value"], [(k, io.fmt(obj[k]) if k != "essential_range" else
                                  " ".join(io.fmt(v) for v in obj[k])) for k in sorted(obj)], obj)


SUBCOMMANDS = {
    "conjugate": (cmd_conjugate, "conjugator", "three-way conjugation of a symbol"),
    "distribution": (cmd_distribution, "distribution", "distribution function of a conjugate"),
    "theorem1": (cmd_theorem1, "distribution", "integrability verdict for f * rho_E"),
    "zygmund-check": (cmd_zygmund, "distribution", "upper bound on |{|chi~_E| > 2 lambda/pi}|"),
    "strip": (cmd_strip, "strip", "heatmap of the strip function g_lambda"),
    "series": (cmd_series, "series", "log-log series against its asymptote"),
    "jump-example": (cmd_jump, "series", "conjugate of a symbol with one jump of size pi"),
    "outer": (cmd_outer, "poisson", "Hardy integral means of the outer function"),
    "gap": (cmd_gap, "circle", "essential range and gap of a step symbol"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="conjugate-lab", allow_abbrev=False,
                description="Conjugate functions on the circle and exponential integrability.")
    p.add_argument("--config", help="JSON file with option values")
    sub = p.add_subparsers(dest="subcommand", parser_class=_Parser)
    for name, (_, _, help_text) in SUBCOMMANDS.items():
        s = sub.add_parser(name, help=help_text, allow_abbrev=False)
        s.add_argument("--selftest", action="store_true", help="run the module's invariant suite")
        s.add_argument("--out", help="output file")
        s.add_argument("--format", choices=("csv", "json"), default=None)
        _add_options(name, s)
    return p


def _add_options(name: str, s):
    def grid_opts(depth=40):
        s.add_argument("--depth", type=int, default=depth)
        s.add_argument("--ratio", type=float, default=0.5)
        s.add_argument("--n-base", type=int, default=4096)

    def lam_opts():
        s.add_argument("--lambdas", default=None, help="'start:stop:count' or a list")
        s.add_argument("--lmax", type=float, default=6.0)
        s.add_argument("--nlam", type=int, default=61)
        s.add_argument("--window", default="1,6")

    if name == "conjugate":
        s.add_argument("--symbol")
        s.add_argument("--n", type=int, default=4096)
    elif name == "distribution":
        s.add_argument("--symbol")
        grid_opts()
        lam_opts()
    elif name == "theorem1":
        s.add_argument("--f-const", default=None)
        s.add_argument("--f", default=None)
        s.add_argument("--arcs")
        grid_opts()
        lam_opts()
    elif name == "zygmund-check":
        s.add_argument("--arcs")
        grid_opts()
        lam_opts()
        s.set_defaults(lambdas="0:6:13")
    elif name == "strip":
        s.add_argument("--lambda", dest="lam", default="0")
        s.add_argument("--nx", type=int, default=41)
        s.add_argument("--ny", type=int, default=61)
        s.add_argument("--xmax", default="1.5")
        s.add_argument("--ymin", default="-4")
        s.add_argument("--ymax", default="8")
    elif name == "series":
        s.add_argument("--xs", default="1e-3,1e-4,1e-5")
        s.add_argument("--tol", type=float, default=1e-4)
    elif name == "jump-example":
        s.add_argument("--t0", default="pi")
        s.add_argument("--delta", default="0.5")
        s.add_argument("--taper-width", default=None)
        s.add_argument("--offsets", default="1e-2,1e-3,1e-4,1e-5,1e-6,-1e-2,-1e-3,-1e-4,-1e-5,-1e-6")
    elif name == "outer":
        s.add_argument("--symbol")
        s.add_argument("--p", type=float, default=2.0)
        s.add_argument("--radii", default="0.5,0.9,0.99,0.999,0.9999")
    elif name == "gap":
        s.add_argument("--symbol")
        s.add_argument("--arcs", default=None)


_REQUIRED = {"conjugate": ["symbol"], "distribution": ["symbol"], "zygmund-check": ["arcs"],
             "outer": ["symbol"], "gap": ["symbol"]}


def _config_argv(path: str, argv: List[str]) -> List[str]:
    try:
        cfg = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    cfg = dict(cfg)
    name = cfg.pop("subcommand", None)
    cli_name = next((x for x in argv if x in SUBCOMMANDS), None)
    if name and cli_name and name != cli_name:
        raise ConfigError(f"config is for {name!r}, command line asks for {cli_name!r}")
    name = name or cli_name
    if name not in SUBCOMMANDS:
        raise ConfigError("no subcommand given")
    out = [name]
    for key, val in cfg.items():
        flag = "--" + key.replace("_", "-")
        if isinstance(val, bool):
            if val:
                out.append(flag)
            continue
        out += [flag, json.dumps(val) if isinstance(val, (list, dict)) else str(val)]
    rest = [x for x in argv if x != name]
    return out + rest


def _fail(kind: str, exc: Exception, code: int) -> int:
    report = {"error": kind, "type": type(exc).__name__, "message": str(exc), "exit_status": code}
    sys.stderr.write(json.dumps(report, sort_keys=True) + "\n")
    return code


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        parser = build_parser()
        if "--config" in argv:
            i = argv.index("--config")
            if i + 1 >= len(argv):
                raise ConfigError("--config needs a file name")
            argv = _config_argv(argv[i + 1], argv[:i] + argv[i + 2:])
        a = parser.parse_args(argv)
        if a.subcommand is None:
            raise ConfigError("no subcommand given")
        fn, suite, _ = SUBCOMMANDS[a.subcommand]
        if a.selftest:
            passed, failed, details = selftest.run_suite(suite)
            report = {"suite": suite, "passed": passed, "failed": failed, "checks": details}
            sys.stdout.write(io.json_text(report))
            return 0 if failed == 0 else 3
        for req in _REQUIRED.get(a.subcommand, []):
            if getattr(a, req.replace("-", "_")) is None:
                raise ConfigError(f"--{req.replace('_', '-')} is required")
        if not a.out:
            raise ConfigError("--out is required")
        if a.format is None:
            a.format = "json" if str(a.out).lower().endswith(".json") else "csv"
    except ConjugateLabError as exc:
        return _fail("config", exc, 2)
    try:
        fn(a)
    except ConfigError as exc:
        return _fail("config", exc, 2)
    except (ConjugateLabError, ArithmeticError, ValueError, OSError) as exc:
        return _fail("compute", exc, 3)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
