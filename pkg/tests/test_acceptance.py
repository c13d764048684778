"""Acceptance run: one PASS/FAIL line per criterion, each at its stated tolerance.

Run with ``pytest -s tests/test_acceptance.py`` to see the report lines.
"""
import io
import math
import time

import numpy as np
import pytest

from eph import cli
from eph.cycles import Cycle, centre, focus
from eph.mech import (BumpState, GaussianState, OscParams, count_interior_maxima, cross_amplitude,
                      interference_curve, measure_gaussian, oscillator_flow, parabolic_cross_kernel,
                      two_slit_measure)
from eph.sl2rep import GENERATORS, ladder_residuals, solve_ladder
from eph.spectral import (JetSpectrum, assemble_jordan, covariant_spectrum, lidskii_experiment,
                          spectral_map, stability_exponent)
from oracles import random_cycle
from test_cycles import intertwining_failures
from test_invariants import incidence_mismatches, similarity_suite
from test_mech import closed_two_slit
from test_spectral import (example_map, orthogonal, pencil_failures, quadratic_failures,
                           spectral_mapping_failures)


def report(number, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
    assert ok, detail


def test_criterion_01_invariance_suite():
    t0 = time.perf_counter()
    bad = similarity_suite(500, 1)
    dt = time.perf_counter() - t0
    report(1, bad == 0 and dt < 5, f"{bad} failures in 500 instances, {dt:.2f} s")


def test_criterion_02_intertwining():
    bad = intertwining_failures(500, 2)
    report(2, bad == 0, f"{bad} of 500 refits disagree at tol 1e-8")


def test_criterion_03_centres_foci_incidence():
    rng = np.random.default_rng(3)
    centre_bad = 0
    for _ in range(200):
        c = random_cycle(rng, int(rng.integers(-1, 2)))
        e, p, h = centre(c, -1), centre(c, 0), centre(c, 1)
        centre_bad += e != (h[0], -h[1]) or p != ((e[0] + h[0]) / 2, (e[1] + h[1]) / 2)
    par = Cycle(1, 0, 1, 0, 0)
    foci = [focus(par, f) for f in (1, 0, -1)]
    want = [(0, 0.5), (0, 0), (0, -0.5)]
    foci_ok = all(math.dist(a, b) < 1e-12 for a, b in zip(foci, want))
    inc = incidence_mismatches(200, 3)
    report(3, centre_bad == 0 and foci_ok and inc == 0,
           f"centre identity failures {centre_bad}, parabola foci {foci}, incidence mismatches {inc}")


def test_criterion_04_ladder():
    worst = {}
    for gen in GENERATORS:
        sol = solve_ladder(gen)
        worst[gen] = max(ladder_residuals(sol).values())
    report(4, max(worst.values()) <= 1e-12, f"max residuals {worst}")


def test_criterion_05_spectral_mapping():
    bad = spectral_mapping_failures(50, 5)
    lams, phi = example_map()
    orders = [phi.zero_order(x) for x in lams]
    spec = JetSpectrum(tuple(zip(lams, (3, 4, 1, 2))))
    u = orthogonal(np.random.default_rng(5), 10)
    a = u @ assemble_jordan(spec) @ u.conj().T
    pattern = (orders[0] == 1 and orders[1] == 3 and orders[2] >= 2
               and covariant_spectrum(phi.of_matrix(a)).same_as(spectral_map(spec, phi, full=True), 1e-6))
    report(5, bad == 0 and pattern, f"{bad} of 50 random cases fail, example zero orders {orders}")


def test_criterion_06_lidskii():
    t0 = time.perf_counter()
    gaps, spreads = [], []
    for seed in range(20):
        r = lidskii_experiment(20, 0.1, seed)
        gaps.append(r.max_gap_error)
        spreads.append(r.magnitude_spread)
    dt = time.perf_counter() - t0
    ok = max(gaps) < 0.1 and max(spreads) < 0.3 and dt < 2
    report(6, ok, f"max gap error {max(gaps):.3g} rad, max spread {max(spreads):.3g}, {dt:.2f} s")


def test_criterion_07_stability_exponent():
    grid = [0.1, 0.05, 0.02, 0.01]
    main = stability_exponent(10, grid, 7)
    control = stability_exponent(10, grid, 7, control=True)
    ok = abs(main - 4) <= 0.3 and abs(control - 2) <= 0.3
    report(7, ok, f"slope {main:.3f}, control slope {control:.3f}")


def test_criterion_08_pencils():
    lin = pencil_failures(100, 8)
    quad = quadratic_failures(100, 8)
    report(8, lin == 0 and quad == 0, f"linear pencil failures {lin}, quadratic pencil failures {quad}")


def _mech_closed_forms():
    P = OscParams()
    worst = 0.0
    s = GaussianState(0.3, -0.4, P)
    for c in np.linspace(-1, 1, 9):
        worst = max(worst, abs(cross_amplitude(s, s, c).real / measure_gaussian(s, c) - 1))
    for b in (0.2, 0.5):
        s1, s2 = GaussianState(0, b, P), GaussianState(0, -b, P)
        for c in np.linspace(-1, 1, 11):
            tot = (cross_amplitude(s1, s1, c).real + cross_amplitude(s2, s2, c).real
                   + 2 * cross_amplitude(s1, s2, c).real)
            worst = max(worst, abs(tot / closed_two_slit(b, c, P) - 1))
    hyp = max(abs(two_slit_measure("hyperbolic", "gaussian", 2.0, c)
                  / two_slit_measure("elliptic", "gaussian", 2.0, c) - 1)
              for c in np.linspace(-2, 2, 41))
    v1, v2 = BumpState(-1.5, 0.2, 1.0), BumpState(1.2, -0.4, 1.0)
    rng = np.random.default_rng(9)
    par = max(max(map(abs, parabolic_cross_kernel(v1, v2, *rng.uniform(-3, 3, 3), n=101)))
              for _ in range(20))
    return worst, hyp, par


def test_criterion_09_mechanics():
    worst, hyp, par = _mech_closed_forms()
    cs = np.linspace(-2, 2, 161)
    ell = count_interior_maxima([v for _, v in interference_curve("elliptic", "rational", 2.0, cs)])
    hmax = count_interior_maxima([v for _, v in interference_curve("hyperbolic", "rational", 2.0, cs)])
    ok = worst <= 1e-6 and hyp <= 1e-6 and par == 0 and ell >= 5 and hmax < 2
    report(9, ok, f"gaussian quadrature rel err {worst:.2e}, hyperbolic vs elliptic {hyp:.2e}, "
                  f"parabolic cross term {par}, rational maxima elliptic {ell} (need >= 5), "
                  f"hyperbolic {hmax} (need < 2)")


def test_criterion_10_oscillator():
    rng = np.random.default_rng(10)
    per, jac = 0.0, 0.0
    for _ in range(50):
        P = OscParams(*rng.uniform(0.3, 3, 3))
        x, y = rng.uniform(-3, 3, 2)
        x2, y2 = oscillator_flow(x, y, 2 * math.pi / P.k, P)
        per = max(per, abs(x2 - x) / max(1, abs(x), abs(y) * P.km),
                  abs(y2 - y) / max(1, abs(y), abs(x) / P.km))
        t, h = rng.uniform(-10, 10), 1e-5
        fx = (np.array(oscillator_flow(x + h, y, t, P)) - oscillator_flow(x - h, y, t, P)) / (2 * h)
        fy = (np.array(oscillator_flow(x, y + h, t, P)) - oscillator_flow(x, y - h, t, P)) / (2 * h)
        jac = max(jac, abs(np.linalg.det(np.column_stack([fx, fy])) - 1))
    report(10, per <= 1e-10 and jac <= 1e-9, f"period defect {per:.2e}, Jacobian defect {jac:.2e}")


def _cli_outputs(tmp_path, tag):
    scene = tmp_path / "scene.json"
    scene.write_text('{"cycles": [{"k": 1, "l": 0, "n": 1, "m": 0, "sigma": -1},'
                     ' {"k": 1, "l": 0, "n": 1, "m": 0, "sigma": 0},'
                     ' {"k": 1, "l": 0, "n": 1, "m": 0, "sigma": 1}]}')
    files = []
    for argv in (["render", str(scene)], ["korbits", "--sigma", "1"],
                 ["interference", "--mode", "elliptic", "--state", "gaussian", "--points", "21"]):
        svg = tmp_path / f"{tag}-{argv[0]}.svg"
        buf = io.StringIO()
        assert cli.main(argv + ["-o", str(svg)], buf) == 0
        files.append(svg.read_bytes())
        files.append(buf.getvalue().encode())
    for argv in (["lidskii", "--seed", "4"], ["slope2", "--trials", "3", "--seed", "4"]):
        buf = io.StringIO()
        assert cli.main(argv, buf) == 0
        files.append(buf.getvalue().encode())
    return files


def test_criterion_11_cli_determinism(tmp_path):
    a, b = _cli_outputs(tmp_path, "a"), _cli_outputs(tmp_path, "b")
    same = sum(x == y for x, y in zip(a, b))
    report(11, a == b, f"{same} of {len(a)} SVG/CSV outputs byte-identical across two runs")
