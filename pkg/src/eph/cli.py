"""Command line front end: SVG scenes, orbits, invariant tables and the
numerical experiments."""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import warnings
from dataclasses import dataclass, field

import numpy as np

from .cycles import Cycle, cycle_from_points
from .errors import DegenerateError, DomainError, InvalidInput, PrecisionWarning
from .hypercomplex import Hypercomplex, signature
from .invariants import invariant_table
from .mech import CharacterMode, OscParams, interference_curve
from .moebius import is_inf, k_orbit_sample
from .sl2rep import GENERATORS, solve_ladder
from .spectral import lidskii_experiment, stability_exponent

WIDTH, HEIGHT = 800, 600
CHORD_TOL = 0.5
DEFAULT_SEED = 0
COLOURS = {-1: "#1f5fbf", 0: "#2a8a2a", 1: "#c0392b"}


# scenes


@dataclass
class Scene:
    cycles: list = field(default_factory=list)
    sigmas: list = field(default_factory=list)
    viewport: tuple = (-3.0, 3.0, -2.25, 2.25)
    samples: int = 64

    def __post_init__(self):
        umin, umax, vmin, vmax = map(float, self.viewport)
        if not (umax > umin and vmax > vmin) or not all(map(math.isfinite, (umin, umax, vmin, vmax))):
            raise InvalidInput("degenerate viewport")
        self.viewport = (umin, umax, vmin, vmax)
        if int(self.samples) < 16:
            raise InvalidInput("samples must be at least 16")
        self.samples = int(self.samples)
        if len(self.sigmas) != len(self.cycles):
            raise InvalidInput("one draw signature per cycle")
        self.sigmas = [int(signature(s)) for s in self.sigmas]

    @classmethod
    def from_json(cls, rec) -> "Scene":
        """Accepts {"cycles": [...], "viewport": [...], "samples": n} or a bare
        list of cycle records.  A record holds k, l, n, m (or "quadruple"),
        optional sigma_breve and s, and the draw signature "sigma", which
        defaults to sigma_breve."""
        if isinstance(rec, list):
            rec = {"cycles": rec}
        if not isinstance(rec, dict):
            raise InvalidInput("scene must be a JSON object or list")
        cycles, sigmas = [], []
        for item in rec.get("cycles", []):
            try:
                sb = item.get("sigma_breve", item.get("sigma", -1))
                if "quadruple" in item:
                    k, l, n, m = (float(x) for x in item["quadruple"])
                else:
                    k, l, n, m = (float(item[x]) for x in "klnm")
                cycles.append(Cycle(k, l, n, m, sb, int(item.get("s", 1))))
                sigmas.append(item.get("sigma", sb))
            except (AttributeError, KeyError, TypeError, ValueError) as exc:
                raise InvalidInput(f"bad cycle entry {item!r}") from exc
        return cls(cycles, sigmas, tuple(rec.get("viewport", cls.viewport)), rec.get("samples", 64))


def _branches(c: Cycle, sigma: int, vp) -> list:
    """Parametrisations (f, t0, t1, closed) of the drawn branches of c."""
    k, l, n, m = c.quadruple
    umin, umax, vmin, vmax = vp
    reach = 2 * math.hypot(umax - umin, vmax - vmin) + abs(umin) + abs(umax) + abs(vmin) + abs(vmax)

    def line(p0, d):
        d = np.asarray(d, float) / np.hypot(*d)
        return (lambda t: (p0[0] + t * d[0], p0[1] + t * d[1]), -reach, reach, False)

    if k == 0:
        if n == 0 and l == 0:
            return []
        # 2 l u + 2 n v = m; start from the point nearest the origin
        nrm = 2 * (l * l + n * n)
        p0 = (l * m / nrm, n * m / nrm)
        return [line(p0, (-n, l))]
    l, n, m = l / k, n / k, m / k
    if sigma == -1:
        r2 = l * l + n * n - m
        if r2 <= 0:
            return []
        r = math.sqrt(r2)
        return [(lambda t: (l + r * math.cos(t), n + r * math.sin(t)), 0.0, 2 * math.pi, True)]
    if sigma == 0:
        if n != 0:
            span = reach + abs(l)
            return [(lambda t: (t, (t * t - 2 * l * t + m) / (2 * n)), l - span, l + span, False)]
        disc = l * l - m
        if disc < 0:
            return []
        if disc == 0:
            return [line((l, 0.0), (0.0, 1.0))]
        s = math.sqrt(disc)
        return [line((l - s, 0.0), (0.0, 1.0)), line((l + s, 0.0), (0.0, 1.0))]
    # sigma == 1: (u - l)^2 - (v + n)^2 = rho
    rho = l * l - n * n - m
    if rho == 0:
        return [line((l, -n), (1.0, 1.0)), line((l, -n), (1.0, -1.0))]
    a = math.sqrt(abs(rho))
    tmax = math.asinh((reach + abs(l) + abs(n)) / a) + 0.5
    out = []
    for sgn in (1, -1):
        if rho > 0:
            f = (lambda t, s=sgn: (l + s * a * math.cosh(t), -n + a * math.sinh(t)))
        else:
            f = (lambda t, s=sgn: (l + a * math.sinh(t), -n + s * a * math.cosh(t)))
        out.append((f, -tmax, tmax, False))
    return out


def _to_screen(p, vp):
    umin, umax, vmin, vmax = vp
    return ((p[0] - umin) / (umax - umin) * WIDTH, (vmax - p[1]) / (vmax - vmin) * HEIGHT)


def _chord_dev(a, b, m):
    dx, dy = b[0] - a[0], b[1] - a[1]
    L = math.hypot(dx, dy)
    if L == 0:
        return math.hypot(m[0] - a[0], m[1] - a[1])
    return abs(dx * (m[1] - a[1]) - dy * (m[0] - a[0])) / L


def _visible(p) -> bool:
    return -WIDTH <= p[0] <= 2 * WIDTH and -HEIGHT <= p[1] <= 2 * HEIGHT


def _sample(f, t0, t1, samples, vp, depth_limit=16) -> list:
    ts = np.linspace(t0, t1, samples + 1)
    pts = [(float(t), _to_screen(f(float(t)), vp)) for t in ts]
    out = [pts[0]]

    def refine(a, b, depth):
        tm = 0.5 * (a[0] + b[0])
        m = (tm, _to_screen(f(tm), vp))
        if depth < depth_limit and (_visible(a[1]) or _visible(b[1]) or _visible(m[1])) \
                and _chord_dev(a[1], b[1], m[1]) > CHORD_TOL:
            refine(a, m, depth + 1)
            refine(m, b, depth + 1)
        else:
            out.append(b)

    for a, b in zip(pts, pts[1:]):
        refine(a, b, 0)
    return [p for _, p in out]


def _runs(points) -> list:
    runs, cur = [], []
    for p in points:
        if _visible(p) and all(map(math.isfinite, p)):
            cur.append(p)
        elif cur:
            runs.append(cur)
            cur = []
    if cur:
        runs.append(cur)
    return [r for r in runs if len(r) > 1]


def _fmt(x: float) -> str:
    s = "%.3f" % x
    return "0.000" if s == "-0.000" else s


def _path_data(runs, closed) -> str:
    parts = []
    for r in runs:
        parts.append("M" + " L".join(f"{_fmt(x)},{_fmt(y)}" for x, y in r) + (" Z" if closed and len(runs) == 1 else ""))
    return " ".join(parts)


def scene_paths(scene: Scene) -> list:
    """(cycle, sigma, path data) for each visible branch."""
    out = []
    for c, sig in zip(scene.cycles, scene.sigmas):
        for f, t0, t1, closed in _branches(c, sig, scene.viewport):
            runs = _runs(_sample(f, t0, t1, scene.samples, scene.viewport))
            if runs:
                out.append((c, sig, _path_data(runs, closed)))
    return out


def _svg(paths, extra: str = "") -> str:
    lines = ['<?xml version="1.0" encoding="UTF-8"?>',
             f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
             f'viewBox="0 0 {WIDTH} {HEIGHT}">',
             f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>']
    lines.extend(paths)
    if extra:
        lines.append(extra)
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_svg(scene: Scene) -> str:
    paths = []
    for c, sig, d in scene_paths(scene):
        quad = ",".join(repr(float(x)) for x in c.quadruple)
        paths.append(f'<path d="{d}" fill="none" stroke="{COLOURS[sig]}" stroke-width="1.5" '
                     f'data-quadruple="{quad}" data-sigma="{sig}"/>')
    return _svg(paths)


def render_scene(scene: Scene, out_path) -> str:
    text = render_svg(scene)
    try:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise InvalidInput(f"cannot write {out_path}: {exc}") from exc
    return text


def curve_svg(points, title: str = "") -> str:
    """Plot (c, value) pairs as a single polyline."""
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    lo, hi = min(ys + [0.0]), max(ys + [1e-12])
    pad = 0.05 * (hi - lo)
    vp = (min(xs), max(xs), lo - pad, hi + pad)
    pts = [_to_screen(p, vp) for p in points]
    d = "M" + " L".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
    label = f'<text x="10" y="20" font-size="14">{title}</text>' if title else ""
    return _svg([f'<path d="{d}" fill="none" stroke="#c0392b" stroke-width="1.5"/>'], label)


# output helpers


def _emit(rows, header, fmt, out):
    if fmt == "json":
        out.write(json.dumps([dict(zip(header, r)) for r in rows], indent=2, sort_keys=True) + "\n")
        return
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(float(x)) if isinstance(x, float) else x for x in r])
    out.write(buf.getvalue())


def _seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("EPH_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise InvalidInput("EPH_SEED must be an integer") from None


def _load_scene(path) -> Scene:
    try:
        with open(path, encoding="utf-8") as fh:
            return Scene.from_json(json.load(fh))
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc}") from exc


def _write(path, text):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise InvalidInput(f"cannot write {path}: {exc}") from exc


# subcommands


def cmd_render(args, out):
    scene = _load_scene(args.scene)
    text = render_svg(scene)
    if args.out:
        _write(args.out, text)
    else:
        out.write(text)


def korbit_cycles(sigma: int, starts=None, num: int = 64) -> list:
    """Cycles through the K-orbits of the given starting points."""
    if starts is None:
        starts = [(0.0, v) for v in (0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0)]
    out = []
    for start in starts:
        pts = [p for p in k_orbit_sample(start, sigma, num) if not is_inf(p)]
        pts = [p for p in pts if max(abs(p[0]), abs(p[1])) < 1e6]
        spread = max(math.hypot(p[0] - start[0], p[1] - start[1]) for p in pts) if pts else 0.0
        if len(pts) < 3 or spread < 1e-9:
            # fixed point of K
            continue
        idx = np.linspace(0, len(pts) - 1, 5).round().astype(int)
        try:
            out.append((start, cycle_from_points([pts[i] for i in idx], sigma)))
        except DegenerateError:
            continue
    return out


def cmd_korbits(args, out):
    sigma = int(signature(args.sigma))
    found = korbit_cycles(sigma, num=args.samples)
    rows = [(s[0], s[1]) + c.quadruple for s, c in found]
    if args.out:
        scene = Scene([c for _, c in found], [sigma] * len(found), tuple(args.viewport))
        _write(args.out, render_svg(scene))
    _emit(rows, ["start_u", "start_v", "k", "l", "n", "m"], args.format, out)


def cmd_invariants(args, out):
    scene = _load_scene(args.scene)
    table = invariant_table(scene.cycles, args.tol)
    rows = [(r["i"], r["j"], r["pairing"], int(r["orthogonal"]), int(r["f_orthogonal"])) for r in table]
    _emit(rows, ["i", "j", "pairing", "orthogonal", "f_orthogonal"], args.format, out)


def cmd_lidskii(args, out):
    rep = lidskii_experiment(args.n, args.eps, _seed(args))
    _emit(rep.rows(), ["experiment", "n", "eps", "seed", "metric", "value"], args.format, out)


def cmd_slope2(args, out):
    seed = _seed(args)
    grid = args.eps or [0.1, 0.05, 0.02, 0.01]
    rows = [("slope2", 2, e, seed, "eps", e) for e in grid]
    rows.append(("slope2", 2, min(grid), seed, "slope", stability_exponent(args.trials, grid, seed)))
    rows.append(("slope2", 2, min(grid), seed, "control_slope",
                 stability_exponent(args.trials, grid, seed, control=True)))
    _emit(rows, ["experiment", "n", "eps", "seed", "metric", "value"], args.format, out)


def cmd_interference(args, out):
    params = OscParams(args.m, args.k, args.hbar)
    cs = np.linspace(args.cmin, args.cmax, args.points)
    curve = interference_curve(args.mode, args.state, args.b, cs, params)
    if args.out:
        _write(args.out, curve_svg(curve, f"{args.mode} {args.state} b={args.b:g}"))
    _emit(curve, ["c", "value"], args.format, out)


def _coeff(h: Hypercomplex) -> tuple:
    """(sign, magnitude text) of a coefficient with at most one nonzero part."""
    unit = {-1: "i", 0: "p", 1: "h"}[int(h.sig)]
    if h.re and h.im:
        return 1, f"({h.re:g}{h.im:+g}{unit})"
    if h.im:
        mag = abs(h.im)
        return (1 if h.im > 0 else -1), ("" if mag == 1 else f"{mag:g}") + unit
    mag = abs(h.re)
    return (1 if h.re > 0 else -1), ("" if mag == 1 else f"{mag:g}")


def format_pair(plus, minus) -> str:
    """L+- written as one expression, '±' marking terms that flip sign."""
    terms = []
    for name, p, m in zip("ABZ", (plus.coeff_A, plus.coeff_B, plus.coeff_Z),
                          (minus.coeff_A, minus.coeff_B, minus.coeff_Z)):
        if not (p.re or p.im):
            continue
        sgn, mag = _coeff(p)
        flips = (p.re, p.im) == (-m.re, -m.im)
        terms.append((sgn, mag + name, flips))
    if not terms:
        return "0"
    text = ""
    for i, (sgn, body, flips) in enumerate(terms):
        if flips:
            mark = "±" if sgn > 0 else "∓"
            text += (mark if i == 0 else f" {mark} ") + body
        else:
            text += ("-" if sgn < 0 else "") + body if i == 0 else f" {'-' if sgn < 0 else '+'} " + body
    return text


CHARACTERISTIC = {"Z": "lambda^2+4=0", "B": "lambda^2-1=0", "BminusHalfZ": "lambda^2=0"}


def cmd_ladder(args, out):
    sol = solve_ladder(args.generator, args.t)
    if args.format == "json":
        rec = {"generator": sol.generator, "unit": int(sol.unit),
               "lambda": [sol.lam.re, sol.lam.im], "equation": CHARACTERISTIC[sol.generator],
               "pair": format_pair(sol.plus, sol.minus),
               "extra": {name: format_pair(p, m) for name, p, m, _ in sol.extra}}
        out.write(json.dumps(rec, indent=2, sort_keys=True) + "\n")
        return
    out.write(f"{CHARACTERISTIC[sol.generator]}; L± = {format_pair(sol.plus, sol.minus)}\n")
    for name, p, m, _ in sol.extra:
        out.write(f"{name} pair for 2B: L± = {format_pair(p, m)}\n")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="eph", description="Cycles, spectra and kernels in the three planar geometries.")
    p.add_argument("--format", choices=("csv", "json"), default="csv", help="machine readable output format")
    p.add_argument("--strict", action="store_true", help="exit 3 on precision warnings")
    # the same flags are accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default=argparse.SUPPRESS)
    common.add_argument("--strict", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    r = sub.add_parser("render", help="render a scene JSON file to SVG")
    r.add_argument("scene")
    r.add_argument("-o", "--out", help="SVG path (default: stdout)")
    r.set_defaults(func=cmd_render)

    k = sub.add_parser("korbits", help="cycles through K-orbits")
    k.add_argument("--sigma", type=int, choices=(-1, 0, 1), required=True)
    k.add_argument("--samples", type=int, default=64)
    k.add_argument("--viewport", type=float, nargs=4, default=[-3.0, 3.0, -1.0, 3.5],
                   metavar=("UMIN", "UMAX", "VMIN", "VMAX"))
    k.add_argument("-o", "--out", help="also write an SVG drawing")
    k.set_defaults(func=cmd_korbits)

    i = sub.add_parser("invariants", help="pairwise orthogonality table of a scene")
    i.add_argument("scene")
    i.add_argument("--tol", type=float, default=1e-8)
    i.set_defaults(func=cmd_invariants)

    ld = sub.add_parser("lidskii", help="perturbed Jordan block experiment")
    ld.add_argument("--n", type=int, default=20)
    ld.add_argument("--eps", type=float, default=0.1)
    ld.add_argument("--seed", type=int, default=None, help="default: EPH_SEED or 0")
    ld.set_defaults(func=cmd_lidskii)

    s2 = sub.add_parser("slope2", help="stability exponent of the 2x2 Jordan block")
    s2.add_argument("--trials", type=int, default=10)
    s2.add_argument("--eps", type=float, nargs="+", default=None)
    s2.add_argument("--seed", type=int, default=None, help="default: EPH_SEED or 0")
    s2.set_defaults(func=cmd_slope2)

    it = sub.add_parser("interference", help="two-slit measurement curve as CSV")
    it.add_argument("--mode", choices=[m.value for m in CharacterMode], default="elliptic")
    it.add_argument("--state", choices=("gaussian", "rational"), default="gaussian")
    it.add_argument("--b", type=float, default=2.0)
    it.add_argument("--cmin", type=float, default=-2.0)
    it.add_argument("--cmax", type=float, default=2.0)
    it.add_argument("--points", type=int, default=401)
    it.add_argument("--m", type=float, default=1.0)
    it.add_argument("--k", type=float, default=1.0)
    it.add_argument("--hbar", type=float, default=1.0)
    it.add_argument("-o", "--out", help="also write an SVG plot")
    it.set_defaults(func=cmd_interference)

    la = sub.add_parser("ladder", help="ladder operators of a generator")
    la.add_argument("--generator", choices=GENERATORS, required=True)
    la.add_argument("--t", type=float, default=1.0, help="parabolic parameter")
    la.set_defaults(func=cmd_ladder)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", PrecisionWarning)
        try:
            args.func(args, out)
        except (InvalidInput, DomainError, DegenerateError) as exc:
            sys.stderr.write(f"eph: error: {exc}\n")
            return 2
    precision = [w for w in caught if issubclass(w.category, PrecisionWarning)]
    for w in precision:
        sys.stderr.write(f"eph: warning: {w.message}\n")
    if precision and args.strict:
        return 3
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
