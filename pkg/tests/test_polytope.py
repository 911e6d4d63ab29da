from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from icregions.dist import Form, build_joint
from icregions.linsys import substitute_rate_sums
from icregions.polytope import (DEFAULT_EPS, SNAP_DEN, HPoly,
                                UnboundedRegionError, area2, bind, contains,
                                fm_eliminate_numeric, poly_equal, snap_terms,
                                substitute_rate_sums_numeric, vertices2)
from icregions.regions import build_system, region_for
from icregions.sampler import binary_alphabets, sample_spec
from icregions.terms import ALL_SYMBOLS, eval_terms
from oracles import brute_force_vertices

F = Fraction


def square(side=1):
    return HPoly(("R1", "R2"), (
        ((F(1), F(0)), F(side)),
        ((F(0), F(1)), F(side)),
    ))


def hk2_binding(index):
    spec = sample_spec(binary_alphabets(), Form.HK2, [41, index])
    return snap_terms(eval_terms(build_joint(spec)))


class TestSnapTerms:
    def test_denominator_and_rounding(self):
        out = snap_terms({"a1": 0.5, "b1": 1.0 / 3.0})
        assert out["a1"] == F(1, 2)
        assert abs(out["b1"] - F(1, 3)) <= F(1, 2 * SNAP_DEN)
        assert out["b1"].denominator <= SNAP_DEN

    def test_negative_roundoff_floors_to_zero(self):
        assert snap_terms({"a1": -1e-15})["a1"] == 0


class TestBind:
    def test_all_zero_binding_gives_origin(self):
        binding = {s: F(0) for s in ALL_SYMBOLS}
        poly = bind(build_system("HK_R"), binding)
        assert vertices2(poly) == [(F(0), F(0))]

    def test_box_constraints_only(self):
        binding = {s: F(1000) for s in ALL_SYMBOLS}
        binding["d1"] = binding["d2"] = F(1)
        poly = bind(build_system("COMPACT_R"), binding)
        assert vertices2(poly) == [(F(0), F(0)), (F(1), F(0)), (F(1), F(1)),
                                   (F(0), F(1))]

    def test_missing_symbol_reported(self):
        with pytest.raises(ValueError, match="missing term symbol"):
            bind(build_system("HK_R"), {"a1": F(0)})

    def test_feasibility_matches_direct_evaluation(self):
        binding = hk2_binding(0)
        poly = bind(build_system("HK_R"), binding)
        rows = poly.rows
        rng = np.random.default_rng(0)
        scale = float(binding["d1"]) + float(binding["d2"]) + 1e-6
        pts = rng.random((10**4, 2)) * scale
        for x, y in pts:
            px, py = F(x).limit_denominator(10**6), F(y).limit_denominator(10**6)
            direct = all(a * px + b * py <= r for (a, b), r in rows)
            assert poly.contains_point((px, py)) == direct


class TestVertices2:
    def test_unit_square(self):
        assert vertices2(square()) == [(F(0), F(0)), (F(1), F(0)),
                                       (F(1), F(1)), (F(0), F(1))]

    def test_triangle(self):
        tri = HPoly(("R1", "R2"), (((F(1), F(1)), F(1)),))
        assert vertices2(tri) == [(F(0), F(0)), (F(1), F(0)), (F(0), F(1))]

    def test_empty_region(self):
        empty = HPoly(("R1", "R2"), (((F(-1), F(0)), F(-1)),
                                     ((F(1), F(0)), F(0))))
        assert vertices2(empty) == []

    def test_unbounded_detected(self):
        with pytest.raises(UnboundedRegionError):
            vertices2(HPoly(("R1", "R2"), (((F(1), F(0)), F(1)),)))

    def test_vertices_satisfy_constraints_exactly(self):
        poly = bind(build_system("HK_R"), hk2_binding(1))
        for v in vertices2(poly):
            assert poly.contains_point(v, F(0))

    def test_matches_brute_force_oracle(self):
        for i in range(5):
            poly = bind(build_system("HK_R"), hk2_binding(2 + i))
            assert set(vertices2(poly)) == brute_force_vertices(poly.rows)

    def test_ccw_order_from_lex_smallest(self):
        vs = vertices2(bind(build_system("HK_R"), hk2_binding(7)))
        assert vs[0] == min(vs)
        for a, b, c in zip(vs, vs[1:], vs[2:]):
            cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
            assert cross > 0


class TestContains:
    def test_reflexive(self):
        poly = bind(build_system("HK_R"), hk2_binding(8))
        assert contains(poly, poly, F(0))

    def test_square_dilation(self):
        assert not contains(square(1), square(2), F(0))
        assert contains(square(2), square(1), F(0))

    def test_hod_equals_hk_under_independence(self):
        spec = sample_spec(binary_alphabets(), Form.HK2, [41, 9])
        assert poly_equal(region_for(spec, "HOD_R"), region_for(spec, "HK_R"),
                          DEFAULT_EPS)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            contains(square(), HPoly(("S1", "T1", "S2", "T2"), ()), F(0))

    def test_quadruple_containment_via_lp(self):
        binding = hk2_binding(10)
        hk_q = bind(build_system("HK_Q"), binding)
        # dropping the T bounds can only enlarge the region
        cmg_like = HPoly(hk_q.dims, tuple(
            row for row in hk_q.rows
            if any(c != 0 for c in (row[0][0], row[0][2]))))
        assert contains(cmg_like, hk_q, F(0))

    @settings(max_examples=30, deadline=None)
    @given(st.data())
    def test_partial_order_on_random_polytopes(self, data):
        def rnd_poly():
            n = data.draw(st.integers(1, 4))
            rows = []
            for _ in range(n):
                a = data.draw(st.fractions(min_value=0, max_value=3,
                                           max_denominator=4))
                b = data.draw(st.fractions(min_value=0, max_value=3,
                                           max_denominator=4))
                r = data.draw(st.fractions(min_value=0, max_value=3,
                                           max_denominator=4))
                rows.append(((a, b), r))
            rows.append(((F(1), F(0)), F(3)))
            rows.append(((F(0), F(1)), F(3)))
            return HPoly(("R1", "R2"), tuple(rows))

        p, q, r = rnd_poly(), rnd_poly(), rnd_poly()
        assert contains(p, p, F(0))
        if contains(p, q, F(0)) and contains(q, p, F(0)):
            assert poly_equal(p, q, F(0))
        if contains(p, q, F(0)) and contains(q, r, F(0)):
            assert contains(p, r, F(0))
        if contains(p, q, F(0)):
            assert area2(p) >= area2(q)


class TestArea2:
    def test_unit_square(self):
        assert area2(square()) == 1

    def test_empty(self):
        empty = HPoly(("R1", "R2"), (((F(-1), F(0)), F(-1)),
                                     ((F(1), F(0)), F(0))))
        assert area2(empty) == 0

    def test_monte_carlo_oracle(self):
        poly = bind(build_system("HK_R"), hk2_binding(11))
        vs = vertices2(poly)
        box_w = float(max(v[0] for v in vs))
        box_h = float(max(v[1] for v in vs))
        rows = [(float(a), float(b), float(r)) for (a, b), r in poly.rows]
        rng = np.random.default_rng(1)
        n = 10**6
        pts = rng.random((n, 2)) * [box_w, box_h]
        hits = np.ones(n, dtype=bool)
        for a, b, r in rows:
            hits &= a * pts[:, 0] + b * pts[:, 1] <= r
        frac = hits.mean()
        est = frac * box_w * box_h
        se = box_w * box_h * np.sqrt(frac * (1 - frac) / n)
        assert abs(float(area2(poly)) - est) <= 3 * se + 1e-12


class TestNumericFm:
    def test_projection_matches_symbolic_route(self):
        quad_sym = build_system("HK_Q")
        for i in range(3):
            binding = hk2_binding(12 + i)
            quad = bind(quad_sym, binding)
            shadow = fm_eliminate_numeric(
                fm_eliminate_numeric(substitute_rate_sums_numeric(quad), "T1"),
                "T2")
            pair = bind(build_system("HK_R"), binding)
            assert poly_equal(shadow, pair, F(0))

    def test_symbolic_and_numeric_substitution_agree(self):
        binding = hk2_binding(15)
        sym = bind(substitute_rate_sums(build_system("HK_Q")), binding)
        num = substitute_rate_sums_numeric(bind(build_system("HK_Q"), binding))
        assert sym.dims == num.dims
        for v in ("R1", "T1", "R2", "T2"):
            obj = [F(1) if d == v else F(0) for d in sym.dims]
            assert sym.maximize(obj).value == num.maximize(obj).value

    def test_infeasible_constant_row_raises(self):
        bad = HPoly(("R1", "R2"), (((F(-1), F(0)), F(-2)),
                                   ((F(1), F(0)), F(1))))
        with pytest.raises(ValueError):
            fm_eliminate_numeric(bad, "R1")
