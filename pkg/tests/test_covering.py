import numpy as np
import pytest

from treespec import (
    BadStartError,
    CoveringMap,
    Multigraph,
    NotAnEigenpairError,
    OmegaWord,
    WindowTooSmallError,
    binary_tree_oracle,
    cayley_ball,
    fiber_count,
    folner_balls,
    hulanicki_residual,
    level_projection_covering,
    lift_path,
    lift_weights,
    markov_operator,
    markov_weights,
    schreier_graph,
    spectral_inclusion_report,
    upsilon_ray_oracle,
    verify_covering,
    window_pullback_residual,
)

W = OmegaWord.parse(":012")


def eigenpairs(g):
    m = markov_operator(g).as_matrix()
    vals, vecs = np.linalg.eigh(m)
    return vals, vecs


class TestVerifyCovering:
    def test_level_projection_verifies(self):
        assert verify_covering(level_projection_covering(W, 4, 2))

    def test_broken_edge_map_detected(self):
        cov = level_projection_covering(W, 3, 2)
        bad = dict(cov.edge_map)
        # remap one edge to an arbitrary different target edge
        ei = next(iter(bad))
        bad[ei] = (bad[ei] + 1) % len(cov.target.edges)
        rep = verify_covering(
            CoveringMap(cov.source, cov.target, cov.vertex_map, bad)
        )
        assert not rep and rep.witness

    def test_identity_covering(self):
        g = schreier_graph(W, 3)
        cov = CoveringMap(g, g, {v: v for v in g.vertices},
                          {i: i for i in range(len(g.edges))})
        assert verify_covering(cov)

    def test_window_too_small_raises(self):
        # a radius-1 ball cannot certify surjectivity onto the level-3 graph
        ball = cayley_ball(W, 1, 3)
        with pytest.raises(WindowTooSmallError):
            verify_covering(ball.covering)


class TestLifting:
    def test_weight_pullback_preserves_markov_rows(self):
        cov = level_projection_covering(W, 4, 2)
        lifted = lift_weights(cov, markov_weights(cov.target))
        m = np.asarray(
            __import__("treespec").laplace_type_operator(lifted).as_matrix()
        )
        assert np.allclose(m.sum(axis=1), 1.0)

    def test_path_lifting_unique(self):
        cov = level_projection_covering(W, 3, 2)
        tgt = cov.target
        # a length-4 closed walk downstairs from vertex '11'
        walk = []
        cur = "11"
        for _ in range(4):
            ei = next(
                i for i, e in enumerate(tgt.edges)
                if cur in (e.u, e.v) and not e.is_loop
            )
            walk.append(ei)
            e = tgt.edges[ei]
            cur = e.v if e.u == cur else e.u
        start = next(v for v in cov.source.vertices if cov.phi(v) == "11")
        lifted = lift_path(cov, "11", walk, start)
        assert len(lifted) == 5
        # the lift projects back onto the walk
        proj = [cov.phi(v) for v in lifted]
        assert proj[0] == "11"

    def test_bad_start_rejected(self):
        cov = level_projection_covering(W, 3, 2)
        start = next(v for v in cov.source.vertices if cov.phi(v) != "11")
        with pytest.raises(BadStartError):
            lift_path(cov, "11", [], start)


class TestFolner:
    def test_ray_is_folner(self):
        rep = folner_balls(upsilon_ray_oracle(), 0, 12)
        assert rep.subexp_evidence
        assert rep.boundary_ratios[-1] < 0.2

    def test_binary_tree_is_not(self):
        rep = folner_balls(binary_tree_oracle(), "", 12)
        assert not rep.subexp_evidence
        assert min(rep.boundary_ratios) > 0.5

    def test_sizes_linear_on_ray(self):
        rep = folner_balls(upsilon_ray_oracle(), 0, 8)
        assert rep.sizes == tuple(k + 1 for k in range(9))


class TestFiberCount:
    def test_finite_cover_counts_whole_fiber(self):
        cov = level_projection_covering(W, 5, 2)
        v = cov.source.vertices[0]
        assert fiber_count(cov, v, 40) == 8

    def test_window_guard(self):
        ball = cayley_ball(W, 4, 2)
        with pytest.raises(WindowTooSmallError):
            fiber_count(ball.covering, 0, 9)

    def test_monotone_in_radius(self):
        ball = cayley_ball(W, 6, 2)
        counts = [fiber_count(ball.covering, 0, k) for k in range(7)]
        assert counts == sorted(counts)
        assert counts[0] == 1  # the base point itself


class TestResiduals:
    def test_constant_eigenvector_pulls_back_exactly(self):
        cov = level_projection_covering(W, 5, 2)
        f = np.ones(4)
        rec = hulanicki_residual(cov, 1.0, f, "finite-target", 40)
        assert rec.residual < 1e-12

    def test_finite_cover_eigenpairs_pull_back_exactly(self):
        cov = level_projection_covering(W, 5, 2)
        vals, vecs = eigenpairs(cov.target)
        for i, lam in enumerate(vals):
            rec = hulanicki_residual(cov, float(lam), vecs[:, i], "finite-target", 40)
            assert rec.residual < 1e-9, lam

    def test_window_pullback_zero_on_exact_cover(self):
        cov = level_projection_covering(W, 6, 2)
        vals, vecs = eigenpairs(cov.target)
        for i, lam in enumerate(vals):
            rec = window_pullback_residual(cov, float(lam), vecs[:, i])
            assert rec.residual < 1e-12

    def test_non_eigenpair_rejected(self):
        cov = level_projection_covering(W, 4, 2)
        with pytest.raises(NotAnEigenpairError):
            hulanicki_residual(cov, 0.123, np.ones(4), "finite-target", 30)

    def test_subexp_bound_sound_on_cayley_ball(self):
        ball = cayley_ball(W, 8, 2)
        vals, vecs = eigenpairs(ball.covering.target)
        for i, lam in enumerate(vals):
            for k in (3, 5):
                rec = hulanicki_residual(
                    ball.covering, float(lam), vecs[:, i], "subexp", k
                )
                assert rec.residual ** 2 <= rec.theoretical_bound + 1e-9

    def test_window_residuals_decrease_with_radius(self):
        # pinned harness values for the smallest eigenvalue of the level-2
        # graph: strictly positive, strictly decreasing in the ball radius
        vals, vecs = eigenpairs(schreier_graph(W, 2))
        lam, f = float(vals[0]), vecs[:, 0]
        res = []
        for r in (4, 6, 8):
            cov = cayley_ball(W, r, 2).covering
            res.append(window_pullback_residual(cov, lam, f).residual)
        assert all(x > 0 for x in res)
        assert res[0] > res[1] > res[2]

    def test_inclusion_report_improves_with_schedule(self):
        ball = cayley_ball(W, 8, 2)
        rep_small = spectral_inclusion_report(ball.covering, [3])
        rep_big = spectral_inclusion_report(ball.covering, [3, 4, 5])
        for a, b in zip(rep_big.best_residuals, rep_small.best_residuals):
            assert a <= b + 1e-12
