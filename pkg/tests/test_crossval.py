import numpy as np
import pytest

from jointdyad.crossval.mask import make_mask
from jointdyad.crossval.run import held_out_entries, run_cv, run_cv_sweep, score_fold
from jointdyad.graph.core import DirectedBinaryGraph
from jointdyad.graph.stats import reciprocity
from jointdyad.inference.fit import fit
from jointdyad.inference.types import FitConfig
from jointdyad.utils.exceptions import ValidationError


@pytest.fixture
def small_config():
    return FitConfig(k=2, max_iter=60, check_every=10, n_restarts=1, seed=0)


class TestMask:

    @pytest.mark.parametrize("n_nodes, n_folds, sizes", [
        (5, 5, [2, 2, 2, 2, 2]),
        (5, 4, [3, 3, 2, 2]),
    ])
    def test_fold_sizes(self, n_nodes, n_folds, sizes):
        assert make_mask(n_nodes, n_folds, seed=0).fold_sizes() == sizes

    def test_same_seed_same_folds(self):
        a, b = make_mask(30, 5, seed=7), make_mask(30, 5, seed=7)
        assert np.array_equal(a.assignment, b.assignment)
        assert not np.array_equal(a.assignment, make_mask(30, 5, seed=8).assignment)

    def test_folds_partition_the_dyads(self):
        mask = make_mask(12, 4, seed=1)
        seen = set()
        for fold in range(4):
            dyads = set(zip(*map(np.ndarray.tolist, mask.test_dyads(fold))))
            assert not dyads & seen
            seen |= dyads
        assert seen == set(zip(*map(np.ndarray.tolist, np.triu_indices(12, 1))))

    def test_train_matrix_is_symmetric_complement(self):
        mask = make_mask(10, 3, seed=2)
        train = mask.train_matrix(1)
        assert np.array_equal(train, train.T)
        assert not train.diagonal().any()
        ti, tj = mask.test_dyads(1)
        assert not train[ti, tj].any()
        assert int(train.sum()) == 2 * len(mask.train_dyads(1)[0])

    def test_assignment_is_read_only(self):
        mask = make_mask(6, 3, seed=0)
        with pytest.raises(ValueError):
            mask.assignment[0] = 1

    def test_needs_two_folds(self):
        with pytest.raises(ValidationError):
            make_mask(10, 1, seed=0)

    def test_needs_a_dyad_per_fold(self):
        with pytest.raises(ValidationError):
            make_mask(2, 2, seed=0)

    def test_fold_out_of_range(self):
        with pytest.raises(ValidationError):
            make_mask(6, 3, seed=0).test_dyads(3)


class TestScoreFold:

    def test_oracle_parameters(self, rng, make_graph, oracle_params):
        g = make_graph(rng, n_nodes=14, density=0.3)
        mask = make_mask(14, 3, seed=0)
        result = score_fold(g, oracle_params(g), mask, fold=0)
        assert result.n_test_dyads == mask.fold_sizes()[0]
        assert result.marginal.n_entries == 2 * result.n_test_dyads
        assert result.marginal.auc == pytest.approx(1.0)
        assert result.marginal.log_loss < 0.05
        assert result.joint_full.accuracy == pytest.approx(1.0)
        assert result.joint.accuracy == pytest.approx(1.0)

    def test_fold_without_edges(self, make_params, rng):
        g = DirectedBinaryGraph(6, [(0, 1)])
        mask = make_mask(6, 5, seed=0)
        fold = next(f for f in range(5) if (0, 1) not in set(zip(*map(np.ndarray.tolist, mask.test_dyads(f)))))
        result = score_fold(g, make_params(rng, n_nodes=6), mask, fold)
        assert result.joint is None
        assert result.marginal.auc is None
        assert result.joint_full.n_dyads == result.n_test_dyads

    def test_held_out_entries_cover_both_directions(self):
        rows, cols = held_out_entries(np.array([0, 2]), np.array([1, 3]))
        assert sorted(zip(rows.tolist(), cols.tolist())) == [(0, 1), (1, 0), (2, 3), (3, 2)]


class TestRunCV:

    def test_held_out_entries_do_not_leak(self, planted, small_config):
        mask = make_mask(planted.graph.n_nodes, 5, seed=3)
        ti, tj = mask.test_dyads(0)
        flipped = set(planted.graph.edges) ^ {(int(ti[0]), int(tj[0])), (int(tj[1]), int(ti[1]))}
        g_flipped = DirectedBinaryGraph(planted.graph.n_nodes, sorted(flipped))

        train = mask.train_matrix(0)
        original = fit(planted.graph, small_config, mask=train, threads=1)
        perturbed = fit(g_flipped, small_config, mask=train, threads=1)
        assert np.array_equal(original.params.u, perturbed.params.u)
        assert original.params.eta == perturbed.params.eta
        assert original.final_loglik == perturbed.final_loglik

    def test_report(self, planted, small_config):
        report = run_cv(planted.graph, small_config, n_folds=3, seed=1, threads=1)
        assert report.k == 2
        assert [f.fold for f in report.folds] == [0, 1, 2]
        assert sum(f.n_test_dyads for f in report.folds) == 80 * 79 // 2
        summary = report.aggregate("marginal", "auc")
        assert summary.n_folds == 3
        assert summary.mean == pytest.approx(np.mean([f.marginal.auc for f in report.folds]))
        assert summary.std == pytest.approx(np.std([f.marginal.auc for f in report.folds]))
        frame = report.to_frame()
        assert list(frame.columns) == ["fold", "score_kind", "metric", "value"]
        assert set(frame["score_kind"]) >= {"marginal", "conditional", "joint_full"}

    def test_independent_of_thread_count(self, planted, small_config):
        serial = run_cv(planted.graph, small_config, n_folds=3, seed=1, threads=1)
        parallel = run_cv(planted.graph, small_config, n_folds=3, seed=1, threads=3)
        assert serial.model_dump() == parallel.model_dump()

    def test_empty_graph(self, small_config):
        with pytest.raises(ValidationError):
            run_cv(DirectedBinaryGraph(5, []), small_config)

    def test_sweep_selects_best_marginal_auc(self, planted, small_config):
        sweep = run_cv_sweep(planted.graph, [2, 1], small_config, n_folds=3, seed=1, threads=1)
        assert [r.k for r in sweep.reports] == [1, 2]
        means = {r.k: r.aggregate("marginal", "auc").mean for r in sweep.reports}
        best = max(means.values())
        assert sweep.selected_k == min(k for k, value in means.items() if value == best)
        assert set(sweep.to_frame()["k"]) == {1, 2}

    def test_sweep_needs_candidates(self, planted, small_config):
        with pytest.raises(ValidationError):
            run_cv_sweep(planted.graph, [], small_config)


@pytest.mark.slow
def test_conditional_beats_marginal_under_strong_reciprocity(planted_fits):
    instance, _ = planted_fits[1500.0]
    assert reciprocity(instance.graph) >= 0.5
    report = run_cv(instance.graph, FitConfig(k=2, n_restarts=3, seed=0), n_folds=5, seed=0)
    marginal = report.aggregate("marginal", "auc").mean
    conditional = report.aggregate("conditional", "auc").mean
    assert marginal >= 0.6
    assert conditional - marginal >= 0.05
