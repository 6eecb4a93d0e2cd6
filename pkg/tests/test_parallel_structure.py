from math import comb, pi

import numpy as np
import pytest
from scipy.optimize import brentq

from centresym import fixtures as F
from centresym.curve import build_curve, det2
from centresym.errors import BasePointIsInflexion, NotSameFamily
from centresym.parallel import angle_function, decompose, division_points, local_extrema

from conftest import structure_of


def test_circle_angle_function_is_t_mod_pi():
    c = build_curve(F.circle())
    phi = angle_function(c, base_t=0.0)
    t = np.linspace(0, 2 * pi, 50, endpoint=False)
    d = np.mod(phi(t) - t, pi)
    assert np.all(np.minimum(d, pi - d) < 1e-12)


def test_rosette_angle_lift_turns_twice():
    c = build_curve(F.two_rosette())
    phi = angle_function(c)
    assert phi.lift(np.array([c.period]))[0] - phi.lift(np.array([0.0]))[0] == pytest.approx(4 * pi, abs=1e-9)


def test_base_at_inflexion_is_rejected():
    s = structure_of("two_inflexions")
    with pytest.raises(BasePointIsInflexion):
        angle_function(s.curve, base_t=s.inflexions[0].t)


def test_rosette_has_no_angle_extrema():
    c = build_curve(F.two_rosette())
    assert local_extrema(angle_function(c)) == []


def test_two_inflexion_fixture_has_one_max_one_min():
    s = structure_of("two_inflexions")
    assert sorted(e.kind for e in s.extrema) == ["max", "min"]


def test_oval_has_two_division_points_and_one_two_arc_set():
    s = structure_of("oval")
    assert len(s.division) == 2
    assert len(s.sets) == 1 and len(s.sets[0].arcs) == 2


@pytest.mark.parametrize("n", [2, 3, 4])
def test_rosette_division_points_and_single_set(n):
    spec = F.two_rosette() if n == 2 else F.random_rosette(n, F.rng_for([n, 0]))
    s = decompose(build_curve(spec))
    assert len(s.division) == 2 * n
    assert len(s.sets) == 1 and len(s.sets[0].arcs) == 2 * n


@pytest.mark.parametrize("name", ["two_inflexions", "four_inflexions"])
def test_nonconvex_division_points_contain_tagged_inflexions(name):
    s = structure_of(name)
    assert len(s.division) % 2 == 0
    tagged = s.division.params[s.inflexion_points()]
    expected = np.sort([r.t for r in s.inflexions])
    got = np.sort(np.mod(tagged, s.period))
    assert np.allclose(got, expected, atol=1e-12)


def test_division_points_recomputed_from_scratch_agree():
    s = structure_of("four_inflexions")
    again = division_points(s.curve, s.angle, s.inflexions)
    assert np.allclose(again.params, s.division.params)


@pytest.mark.parametrize("name", ["circle", "ellipse", "oval", "two_rosette", "two_inflexions", "four_inflexions"])
def test_division_count_is_even(name):
    assert len(structure_of(name).division) % 2 == 0


@pytest.mark.parametrize("name", ["two_inflexions", "four_inflexions"])
def test_arcs_of_a_set_share_one_angle_interval(name):
    s = structure_of(name)
    assert len(s.sets) > 1
    for phi_set in s.sets:
        images = []
        for j, _ in phi_set.arcs:
            arc = s.arcs[j]
            ends = np.mod(s.angle.lift(np.array([arc.start, arc.end])) - s.angle.theta_base, pi)
            images.append(np.sort(ends))
        for im in images[1:]:
            d = np.abs(im - images[0])
            assert np.all(np.minimum(d, pi - d) < 1e-9)


@pytest.mark.parametrize("name", ["two_rosette", "two_inflexions", "four_inflexions", "oval"])
def test_curvature_sign_constant_on_arcs(name):
    s = structure_of(name)
    for arc in s.arcs:
        t = np.linspace(arc.start, arc.end, 402)[1:-1]
        k = s.curve.kappa(t)
        assert np.all(np.sign(k) == arc.sign)


@pytest.mark.parametrize("name", ["circle", "ellipse"])
def test_centrally_symmetric_correspondence_is_shift_by_pi(name):
    s = structure_of(name)
    corr = s.correspondence(0, 1)
    x = np.linspace(s.arcs[0].start, s.arcs[0].end, 41)[1:-1]
    assert np.allclose(np.mod(corr.solve(x) - x, 2 * pi), pi, atol=1e-10)
    assert corr.sigma == -1


def test_rosette_correspondences_are_parallel():
    s = structure_of("two_rosette")
    for a in range(4):
        for b in range(4):
            if a == b:
                continue
            corr = s.correspondence(a, b)
            x = np.linspace(s.arcs[a].start, s.arcs[a].end, 100)
            assert np.max(corr.residual(x)) < 1e-10


def test_arcs_from_different_sets_are_rejected():
    s = structure_of("two_inflexions")
    a = s.sets[0].arcs[0][0]
    b = s.sets[1].arcs[0][0]
    with pytest.raises(NotSameFamily):
        s.correspondence(a, b)


def _brute_partners(curve, s, n=20000):
    u = curve.velocity(np.array([s]))[0]

    def f(t):
        return det2(curve.velocity(np.atleast_1d(t)), u)

    t = curve.grid(n)
    v = f(t)
    v = np.append(v, v[0])
    tt = np.append(t, curve.period)
    out = []
    for i in np.nonzero(np.sign(v[:-1]) * np.sign(v[1:]) < 0)[0]:
        r = brentq(lambda x: float(f(x)[0]), tt[i], tt[i + 1], xtol=1e-14)
        d = abs(r - s) % curve.period
        if min(d, curve.period - d) > 1e-7:
            out.append(r % curve.period)
    return sorted(out)


@pytest.mark.parametrize("name", ["two_rosette", "two_inflexions", "four_inflexions"])
def test_partners_match_brute_force_scan(name):
    s = structure_of(name)
    rng = np.random.default_rng(11)
    div = np.mod(s.division.params, s.period)
    checked = 0
    while checked < 50:
        x = float(rng.uniform(0, s.period))
        if np.min(np.abs((div - x + s.period / 2) % s.period - s.period / 2)) < 1e-3:
            continue
        got = s.partners(x)
        want = _brute_partners(s.curve, x)
        assert len(got) == len(want)
        d = np.abs(np.array(got) - np.array(want))
        assert np.all(np.minimum(d, s.period - d) < 1e-6)
        checked += 1


@pytest.mark.parametrize("name", ["two_rosette", "two_inflexions"])
def test_transport_derivative_is_curvature_ratio(name):
    s = structure_of(name)
    curve = s.curve
    h = 1e-6
    for phi_set in s.sets:
        members = [j for j, _ in phi_set.arcs]
        for a in members:
            for b in members:
                if a == b:
                    continue
                corr = s.correspondence(a, b)
                arc = s.arcs[a]
                x = np.linspace(arc.start, arc.end, 12)[2:-2]
                t = corr.solve(x)
                dt = (corr.solve(x + h) - corr.solve(x - h)) / (2 * h)
                arc_ratio = dt * np.hypot(*curve.velocity(t).T) / np.hypot(*curve.velocity(x).T)
                want = corr.dt_ds_arc(x)
                assert np.all(np.abs(arc_ratio - want) <= 1e-5 * (1 + np.abs(want)))


def test_scheme_coverage_formula_uses_set_sizes():
    s = structure_of("four_inflexions")
    total = sum(comb(len(p.arcs), 2) for p in s.sets)
    assert total == 14
