"""Refinement iteration, attractor sampling, and cloud utilities."""

import numpy as np
import pytest

from projfif import (
    CloudLimitError,
    GridAlignmentError,
    PointCloud,
    SampledGraph,
    ValidationError,
    chaos_game,
    cloud_from_graph,
    data_grid,
    deterministic_attractor,
    endpoint_segment,
    evaluate,
    fixed_point_graph,
    graph_sup_dist,
    hausdorff_distance,
    hutchinson_step,
    linear_seed,
    refine,
    slice_at_level,
    snap_dedup,
)

E = 1e-12


class TestPointCloud:
    def test_validates_shape(self):
        with pytest.raises(ValidationError):
            PointCloud(np.zeros((3, 2)))
        with pytest.raises(ValidationError):
            PointCloud(np.zeros((0, 3)))

    def test_rejects_removed_line(self):
        with pytest.raises(ValidationError):
            PointCloud(np.array([[1.0, 2.0, 0.0]]))

    def test_keeps_raw_rows_and_canonicalizes_uv(self):
        cloud = PointCloud(np.array([[2.0, 4.0, 2.0]]))
        assert cloud.xyz[0].tolist() == [2.0, 4.0, 2.0]
        assert cloud.uv[0].tolist() == [1.0, 2.0]

    def test_from_graph_roundtrip(self):
        g = SampledGraph(np.array([0.0, 1.0]), np.array([3.0, 4.0]))
        cloud = cloud_from_graph(g)
        assert cloud.uv.tolist() == [[0.0, 3.0], [1.0, 4.0]]
        assert len(cloud) == 2


class TestDataGrid:
    def test_zigzag_nine(self, zigzag_data):
        u = data_grid(zigzag_data, 9)
        assert u.tolist() == [-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0]

    def test_matches_uniform_for_equispaced(self, zigzag_data):
        u = data_grid(zigzag_data, 1025)
        assert np.array_equal(u, np.linspace(-2.0, 2.0, 1025))

    def test_alignment_required(self, zigzag_data):
        for bad in (4, 10, 1024):
            with pytest.raises(GridAlignmentError):
                data_grid(zigzag_data, bad)

    def test_nonuniform_data_contains_nodes(self):
        from projfif import InterpolationData, ProjPoint

        pts = [ProjPoint(x, 0.0, 1.0) for x in (0.0, 0.1, 1.0, 5.0)]
        pts = [ProjPoint(p.x, float(i % 2), p.z) for i, p in enumerate(pts)]
        data = InterpolationData(pts)
        u = data_grid(data, 31)
        for xv in data.X:
            assert xv in u


class TestRefine:
    def test_one_pass_interpolates_nodes(self, make_zigzag_ifs):
        ifs = make_zigzag_ifs(0.3)
        g1 = refine(ifs, linear_seed(ifs.data, 33))
        for xv, yv in zip(ifs.data.X, ifs.data.Y):
            k = int(np.searchsorted(g1.u, xv))
            assert g1.u[k] == xv
            assert g1.v[k] == pytest.approx(yv, abs=E)

    def test_keeps_endpoints_pinned(self, make_zigzag_ifs):
        ifs = make_zigzag_ifs(-0.3)
        g = linear_seed(ifs.data, 129)
        for _ in range(4):
            g = refine(ifs, g)
            assert g.v[0] == pytest.approx(1.0, abs=E)
            assert g.v[-1] == pytest.approx(1.0, abs=E)

    def test_misaligned_grid_rejected(self, make_zigzag_ifs):
        ifs = make_zigzag_ifs(0.1)
        g = SampledGraph(np.linspace(-2.0, 2.0, 100), np.zeros(100))
        with pytest.raises(GridAlignmentError):
            refine(ifs, g)

    def test_contracts_pinned_pairs(self, make_zigzag_ifs):
        ifs = make_zigzag_ifs([0.3, -0.2, 0.25, 0.15])
        rng = np.random.default_rng(11)
        u = data_grid(ifs.data, 257)
        base = np.interp(u, ifs.data.X, ifs.data.Y)
        for _ in range(20):
            p1 = rng.normal(0.0, 1.0, size=u.size)
            p2 = rng.normal(0.0, 1.0, size=u.size)
            p1[0] = p1[-1] = p2[0] = p2[-1] = 0.0
            g1 = SampledGraph(u, base + p1)
            g2 = SampledGraph(u, base + p2)
            before = graph_sup_dist(g1, g2)
            after = graph_sup_dist(refine(ifs, g1), refine(ifs, g2))
            assert after <= ifs.d_bound * before + 1e-9


class TestFixedPoint:
    def test_converges(self, make_zigzag_ifs):
        ifs = make_zigzag_ifs(0.3)
        graph, trace = fixed_point_graph(ifs, grid_m=1025, tol=1e-10)
        assert trace.converged
        assert trace.deltas[-1] < 1e-10
        # geometric decay at rate d_bound once the iteration settles
        for i in range(2, len(trace.deltas)):
            if trace.deltas[i - 1] > 0:
                assert trace.deltas[i] <= ifs.d_bound * trace.deltas[i - 1] + 1e-13

    def test_interpolates_data(self, make_zigzag_ifs):
        ifs = make_zigzag_ifs(0.3)
        graph, _ = fixed_point_graph(ifs, grid_m=1025, tol=1e-11)
        for xv, yv in zip(ifs.data.X, ifs.data.Y):
            k = int(np.searchsorted(graph.u, xv))
            assert graph.v[k] == pytest.approx(yv, abs=1e-10)

    def test_zero_scales_give_linear(self, zigzag_data):
        from projfif import build_ifs

        with pytest.warns(UserWarning):
            ifs = build_ifs(zigzag_data, [0.0] * 4)
        graph, trace = fixed_point_graph(ifs, grid_m=257, tol=1e-12)
        want = np.interp(graph.u, zigzag_data.X, zigzag_data.Y)
        assert trace.iterations == 1
        assert np.max(np.abs(graph.v - want)) < 1e-14

    def test_nonconvergence_reported(self, make_zigzag_ifs):
        # an aligned grid of depth 3 needs three passes to resolve, so
        # two passes cannot reach a 1e-15 tolerance
        ifs = make_zigzag_ifs(0.9)
        _, trace = fixed_point_graph(ifs, grid_m=65, tol=1e-15, max_iter=2)
        assert not trace.converged
        assert trace.iterations == 2

    def test_bad_arguments(self, make_zigzag_ifs):
        ifs = make_zigzag_ifs(0.1)
        with pytest.raises(ValidationError):
            fixed_point_graph(ifs, grid_m=65, tol=0.0)
        with pytest.raises(ValidationError):
            fixed_point_graph(ifs, grid_m=65, max_iter=0)


class TestEvaluate:
    def test_data_nodes_exact_any_depth(self, make_zigzag_ifs):
        ifs = make_zigzag_ifs(0.3)
        for depth in (0, 1, 2, 5, 30):
            for xv, yv in zip(ifs.data.X, ifs.data.Y):
                got = evaluate(ifs, float(xv), depth=depth).value
                assert got == pytest.approx(yv, abs=E)

    def test_outside_span(self, make_zigzag_ifs):
        ifs = make_zigzag_ifs(0.1)
        for bad in (-2.5, 2.5):
            with pytest.raises(ValidationError):
                evaluate(ifs, bad)
        with pytest.raises(ValidationError):
            evaluate(ifs, 0.0, depth=-1)

    def test_matches_grid_fixed_point(self, make_zigzag_ifs):
        # map-aligned grids make the discretized fixed point exact at
        # the nodes, so the two routes must agree to iteration accuracy
        ifs = make_zigzag_ifs(0.3)
        graph, _ = fixed_point_graph(ifs, grid_m=257, tol=1e-12)
        rng = np.random.default_rng(3)
        for k in rng.integers(0, 257, size=40):
            got = evaluate(ifs, float(graph.u[k]), depth=48).value
            assert got == pytest.approx(graph.v[k], abs=1e-9)

    def test_self_similarity(self, make_zigzag_ifs):
        # composing with map n on the left equals the vertical part of
        # map n applied to (x, value), the defining functional equation
        from projfif import AbscissaPoint

        ifs = make_zigzag_ifs([0.3, -0.25, 0.2, 0.35])
        rng = np.random.default_rng(5)
        for x in rng.uniform(-2.0, 2.0, size=25):
            fx = evaluate(ifs, float(x), depth=50).value
            for m in ifs.maps:
                lx = m.map_abscissa(AbscissaPoint(float(x), 1.0)).value
                want = m.c * x + m.d * fx + m.f
                got = evaluate(ifs, lx, depth=50).value
                assert got == pytest.approx(want, abs=1e-9)


class TestAttractorClouds:
    def test_hutchinson_multiplies_size(self, make_zigzag_ifs):
        ifs = make_zigzag_ifs(0.1)
        cloud = endpoint_segment(ifs.data, 33)
        step = hutchinson_step(ifs, cloud)
        assert len(step) == 4 * 33

    def test_hutchinson_hits_data_nodes(self, make_zigzag_ifs):
        # the chord contains both span endpoints, so one union step
        # already contains every data node
        ifs = make_zigzag_ifs(0.3)
        step = hutchinson_step(ifs, endpoint_segment(ifs.data, 2))
        uv = step.uv
        for xv, yv in zip(ifs.data.X, ifs.data.Y):
            hit = np.min(np.hypot(uv[:, 0] - xv, uv[:, 1] - yv))
            assert hit < E

    def test_cloud_cap(self, make_zigzag_ifs):
        ifs = make_zigzag_ifs(0.1)
        cloud = endpoint_segment(ifs.data, 100)
        with pytest.raises(CloudLimitError):
            hutchinson_step(ifs, cloud, max_points=399)

    def test_deterministic_attractor_k0(self, make_zigzag_ifs):
        ifs = make_zigzag_ifs(0.1)
        cloud = endpoint_segment(ifs.data, 5)
        assert deterministic_attractor(ifs, cloud, 0) is cloud
        with pytest.raises(ValidationError):
            deterministic_attractor(ifs, cloud, -1)

    def test_deterministic_attractor_growth_and_snap(self, make_zigzag_ifs):
        ifs = make_zigzag_ifs(0.3)
        init = endpoint_segment(ifs.data, 9)
        plain = deterministic_attractor(ifs, init, 3)
        assert len(plain) == 9 * 4**3
        snapped = deterministic_attractor(ifs, init, 3, snap_eps=1e-6)
        assert len(snapped) <= len(plain)

    def test_snap_dedup(self):
        cloud = PointCloud.from_uv(
            [0.0, 1e-9, 1.0, 2.0], [0.0, 0.0, 1.0, 2.0]
        )
        kept = snap_dedup(cloud, eps=1e-6)
        assert len(kept) == 3
        assert kept.uv[0].tolist() == [0.0, 0.0]
        with pytest.raises(ValidationError):
            snap_dedup(cloud, eps=0.0)


class TestChaosGame:
    def test_deterministic_for_seed(self, make_zigzag_ifs):
        ifs = make_zigzag_ifs(0.3)
        c1 = chaos_game(ifs, 500, seed=42)
        c2 = chaos_game(ifs, 500, seed=42)
        c3 = chaos_game(ifs, 500, seed=43)
        assert np.array_equal(c1.xyz, c2.xyz)
        assert not np.array_equal(c1.xyz, c3.xyz)

    def test_stays_on_graph(self, make_zigzag_ifs):
        # iterates start on the attractor and the maps keep them there,
        # so every sample must satisfy the graph equation
        ifs = make_zigzag_ifs(0.3)
        cloud = chaos_game(ifs, 300, burn_in=10, seed=9)
        for u, v in cloud.uv[::10]:
            assert v == pytest.approx(evaluate(ifs, float(u), depth=48).value, abs=1e-7)

    def test_bounds(self, make_zigzag_ifs):
        ifs = make_zigzag_ifs(0.3)
        cloud = chaos_game(ifs, 2000, seed=1)
        assert np.all(cloud.uv[:, 0] >= -2.0 - E)
        assert np.all(cloud.uv[:, 0] <= 2.0 + E)
        assert np.all(np.abs(cloud.uv[:, 1]) <= 4.0)

    def test_tracks_graph_within_two_pixels(self, make_zigzag_ifs):
        # rough instance: the sampled graph misses within-cell swings,
        # so the tolerance is the render pixel, not the grid spacing
        ifs = make_zigzag_ifs(0.3)
        graph, _ = fixed_point_graph(ifs, grid_m=1025, tol=1e-10)
        cloud = chaos_game(ifs, 100_000, burn_in=50, seed=3)
        pixel = 4.4 / 256.0
        h = hausdorff_distance(cloud, cloud_from_graph(graph))
        assert h < 2.0 * pixel

    def test_validation(self, make_zigzag_ifs):
        ifs = make_zigzag_ifs(0.1)
        with pytest.raises(ValidationError):
            chaos_game(ifs, 0)
        with pytest.raises(ValidationError):
            chaos_game(ifs, 10, burn_in=-1)


class TestHausdorff:
    def test_hand_values(self):
        a = PointCloud.from_uv([0.0], [0.0])
        b = PointCloud.from_uv([3.0], [4.0])
        assert hausdorff_distance(a, b) == pytest.approx(5.0, abs=E)
        c = PointCloud.from_uv([0.0, 10.0], [0.0, 0.0])
        assert hausdorff_distance(a, c) == pytest.approx(10.0, abs=E)
        assert hausdorff_distance(c, a) == pytest.approx(10.0, abs=E)

    def test_weighted(self):
        a = PointCloud.from_uv([0.0], [0.0])
        b = PointCloud.from_uv([3.0], [4.0])
        assert hausdorff_distance(a, b, theta=2.0) == pytest.approx(11.0, abs=E)
        with pytest.raises(ValidationError):
            hausdorff_distance(a, b, theta=0.0)

    def test_matches_slow_oracle(self):
        rng = np.random.default_rng(17)
        A = rng.uniform(-5, 5, size=(40, 2))
        B = rng.uniform(-5, 5, size=(60, 2))

        def slow(P, Q):
            worst = 0.0
            for p in P:
                best = min(np.hypot(p[0] - q[0], p[1] - q[1]) for q in Q)
                worst = max(worst, best)
            return worst

        want = max(slow(A, B), slow(B, A))
        a = PointCloud.from_uv(A[:, 0], A[:, 1])
        b = PointCloud.from_uv(B[:, 0], B[:, 1])
        assert hausdorff_distance(a, b) == pytest.approx(want, rel=1e-12)
        # tiny chunks must not change the result
        assert hausdorff_distance(a, b, chunk=7) == pytest.approx(want, rel=1e-12)

    def test_zero_on_identical(self, make_zigzag_ifs):
        ifs = make_zigzag_ifs(0.1)
        cloud = endpoint_segment(ifs.data, 17)
        assert hausdorff_distance(cloud, cloud) == 0.0


class TestSlices:
    def test_scaling(self):
        cloud = PointCloud.from_uv([1.0, -2.0], [3.0, 0.5])
        s2 = slice_at_level(cloud, 2.0)
        assert s2.tolist() == [[2.0, 6.0, 2.0], [-4.0, 1.0, 2.0]]
        s_neg = slice_at_level(cloud, -1.0)
        assert s_neg.tolist() == [[-1.0, -3.0, -1.0], [2.0, -0.5, -1.0]]

    def test_levels_related_by_ratio(self):
        cloud = PointCloud.from_uv([0.3, 4.0], [-1.0, 2.0])
        s1 = slice_at_level(cloud, 1.0)
        s3 = slice_at_level(cloud, 3.0)
        assert np.allclose(s1 * 3.0, s3, atol=0, rtol=0)

    def test_zero_level_rejected(self):
        cloud = PointCloud.from_uv([0.0], [0.0])
        with pytest.raises(ValidationError):
            slice_at_level(cloud, 0.0)
