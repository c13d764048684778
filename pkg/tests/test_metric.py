import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eph.cycles import Cycle, centre, evaluate, focus
from eph.errors import DegenerateError, DomainError, InvalidInput
from eph.invariants import is_f_orthogonal
from eph.metric import (DISTANCE, DirectedInterval, LengthKind, centre_cycle, conformality_ratio,
                        distance_sq, extremal_diameter_sq, focus_cycle, is_perpendicular, length,
                        perpendicular_defect)
from eph.moebius import IDENTITY, random_map, subgroup_element

seeds = st.integers(0, 2 ** 32 - 1)


@pytest.mark.parametrize("uv,s,expect", [((3, 4), -1, 25), ((3, 4), 0, 9), ((5, 3), 1, 16)])
def test_distance_sq(uv, s, expect):
    assert distance_sq(*uv, s) == expect


def test_length_kind_validation():
    with pytest.raises(InvalidInput):
        LengthKind("angle")
    assert LengthKind("focus", 1.0).flavour == 1


def test_length_examples():
    iv = DirectedInterval((0, 0), (3, 4))
    assert length(iv, LengthKind("centre", -1), -1) == pytest.approx(5)
    assert length(iv, DISTANCE, -1) == 5
    assert length(DirectedInterval((1, 1), (1, 1)), LengthKind("centre", -1), -1) == 0


def test_centre_cycle_construction():
    c = centre_cycle((1, 2), (0.5, -1), -1, -1)
    assert centre(c, -1) == pytest.approx((1, 2))
    assert abs(evaluate(c, 0.5, -1, -1)) < 1e-12
    with pytest.raises(DegenerateError):
        centre_cycle((0, 0), (1, 1), 0, 0)


@given(seeds, st.sampled_from([-1, 0, 1]), st.sampled_from([-1, 0, 1]))
def test_focus_cycle_construction(seed, s, f):
    rng = np.random.default_rng(seed)
    A, B = tuple(rng.normal(size=2)), tuple(rng.normal(size=2))
    try:
        c = focus_cycle(A, B, s, f)
    except DegenerateError:
        return
    assert abs(evaluate(c, *B, s)) < 1e-9 * max(1, *map(abs, c.quadruple))
    # the anchor is the focus of the mirrored cycle
    fu, fv = focus(c, f)
    assert (fu, -fv) == pytest.approx(A, abs=1e-8)


def test_focal_length_is_not_symmetric():
    rng = np.random.default_rng(2)
    kind = LengthKind("focus", -1)
    for _ in range(20):
        A, B = tuple(rng.normal(size=2)), tuple(rng.normal(size=2))
        ab = length(DirectedInterval(A, B), kind, -1)
        ba = length(DirectedInterval(B, A), kind, -1)
        if abs(ab - ba) > 1e-3:
            return
    pytest.fail("no asymmetric pair")


def test_perpendicular_examples():
    ab = DirectedInterval((0, 0), (1, 0))
    assert is_perpendicular(ab, DirectedInterval((0, 0), (0, 1)), DISTANCE, -1)
    assert not is_perpendicular(ab, DirectedInterval((0, 0), (1, 1)), DISTANCE, -1)
    assert not is_perpendicular(ab, DirectedInterval((0, 0), (1, 3)), DISTANCE, 0)
    assert is_perpendicular(ab, DirectedInterval((0, 0), (0, 3)), DISTANCE, 0)
    assert perpendicular_defect(ab, DirectedInterval((0, 0), (0, 3)), DISTANCE, 0) == 0


def test_perpendicular_undefined_length():
    ab = DirectedInterval((0, 0), (1, 0))
    with pytest.raises(DomainError):
        perpendicular_defect(ab, DirectedInterval((0, 0), (1, 1)), LengthKind("centre", 0), 0)


def test_conformality_identity_and_dilation():
    assert conformality_ratio(IDENTITY, (0.2, 1), (1, 2), 1e-3, DISTANCE, -1) == pytest.approx(1)
    a = 1.7
    r = conformality_ratio(subgroup_element("A", a), (0.2, 1), (0.3, -1), 1e-6, DISTANCE, -1)
    assert r == pytest.approx(a * a, rel=1e-6)


CONFORMAL = [(s, DISTANCE) for s in (-1, 0, 1)] + \
    [(s, LengthKind("focus", f)) for s in (-1, 1) for f in (-1, 0, 1)] + \
    [(s, LengthKind("centre", -s if s else -1)) for s in (-1, 0, 1)]


@pytest.mark.parametrize("s,kind", CONFORMAL)
def test_conformality_direction_independent(s, kind):
    rng = np.random.default_rng(7)
    checked = 0
    for _ in range(30):
        g = random_map(rng)
        y = (rng.normal(), rng.uniform(0.3, 2))
        d1, d2 = tuple(rng.normal(size=2)), tuple(rng.normal(size=2))
        try:
            r1 = conformality_ratio(g, y, d1, 1e-5, kind, s)
            r2 = conformality_ratio(g, y, d2, 1e-5, kind, s)
        except (DegenerateError, DomainError):
            continue
        if not 1e-2 < r1 < 1e2:
            continue    # near the pole t is no longer small on the image scale
        checked += 1
        assert abs(r1 - r2) <= 1e-3 * abs(r1)
    assert checked >= 20


def random_pair(rng, s):
    if s == 0:
        # the parabolic extremum equals u^2 only for mirror images in the real axis
        v = rng.choice([-1, 1]) * rng.uniform(0.2, 2)
        return (rng.normal(), v), (rng.normal(), -v)
    return tuple(rng.normal(size=2)), tuple(rng.normal(size=2))


@pytest.mark.parametrize("s", [-1, 0, 1])
def test_extremal_diameter_is_distance(s):
    rng = np.random.default_rng(30 + s)
    done = 0
    while done < 50:
        A, B = random_pair(rng, s)
        du, dv = B[0] - A[0], B[1] - A[1]
        if s == 1 and abs(abs(du) - abs(dv)) < 0.2:
            continue
        got = extremal_diameter_sq(A, B, s)
        assert got == pytest.approx(distance_sq(du, dv, s), rel=1e-6, abs=1e-6)
        done += 1


def test_focal_perpendicularity_report(capsys):
    """Compare l_f perpendicularity with f-orthogonality of the focal cycle to
    the line through B.  Disagreements are reported only."""
    rng = np.random.default_rng(5)
    agree = total = 0
    for s in (-1, 1):
        kind = LengthKind("focus", s)
        for _ in range(40):
            A, B = tuple(rng.normal(size=2)), tuple(rng.normal(size=2))
            d = tuple(rng.normal(size=2))
            try:
                c = focus_cycle(A, B, s, s)
                perp = is_perpendicular(DirectedInterval(A, B),
                                        DirectedInterval((0, 0), d), kind, s)
            except (DegenerateError, DomainError):
                continue
            a, b = d[1], -d[0]
            line = Cycle(0, a, b, 2 * a * B[0] + 2 * b * B[1], s)
            total += 1
            agree += perp == is_f_orthogonal(c, line, 1e-6)
    print(f"focal perpendicularity agreement {agree}/{total}")
    assert total > 0
