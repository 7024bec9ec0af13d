import numpy as np
import pytest
from scipy.optimize import brentq

from jointdyad.graph.core import DirectedBinaryGraph
from jointdyad.model.dyad import (
    conditional_mean,
    conditional_mean_matrix,
    dyad_distribution,
    dyad_moments,
    joint_probabilities,
    lambda_matrix,
    lambda_rate,
    marginal_mean,
    marginal_mean_matrix,
    natural_parameters,
    normalizer_matrix,
)
from jointdyad.model.likelihood import eta_gradient, log_likelihood
from jointdyad.model.params import ModelParams, load_params, save_params
from jointdyad.utils.exceptions import ValidationError


def two_node_params(u0, v1, w, eta=1.0):
    k = len(u0)
    return ModelParams.create(
        u=[u0, [0.0] * k],
        v=[[0.0] * k, v1],
        w=w,
        eta=eta,
    )


class TestLambdaRate:

    def test_orthogonal_memberships(self):
        params = two_node_params([1, 0], [0, 1], np.eye(2))
        assert lambda_rate(params, 0, 1) == 0.0

    def test_all_ones(self):
        params = two_node_params([1, 1], [1, 1], np.ones((2, 2)))
        assert lambda_rate(params, 0, 1) == pytest.approx(4.0)

    def test_mixed(self):
        params = two_node_params([0.5, 0.2], [1, 3], [[2, 0], [1, 4]])
        assert lambda_rate(params, 0, 1) == pytest.approx(3.6)

    def test_matrix_form_zeroes_diagonal(self, rng, make_params):
        params = make_params(rng, n_nodes=5)
        lam = lambda_matrix(params)
        assert np.all(np.diag(lam) == 0)
        assert lam[1, 3] == pytest.approx(lambda_rate(params, 1, 3))


class TestDyadDistribution:

    def test_no_support(self):
        d = dyad_distribution(0.0, 0.0, 2.0)
        assert d.as_array().tolist() == [1.0, 0.0, 0.0, 0.0]
        assert d.z == 1.0

    def test_symmetric_independent(self):
        d = dyad_distribution(1.0, 1.0, 1.0)
        assert d.as_array() == pytest.approx([0.25] * 4)
        assert d.z == 4.0

    def test_worked_example(self):
        d = dyad_distribution(2.0, 0.5, 3.0)
        assert d.z == pytest.approx(6.5)
        assert d.as_array() == pytest.approx(np.array([1.0, 0.5, 2.0, 3.0]) / 6.5)
        assert d.probability(1, 0) == pytest.approx(2.0 / 6.5)

    def test_non_finite_input(self):
        with pytest.raises(ValidationError):
            dyad_distribution(float("nan"), 1.0, 1.0)
        with pytest.raises(ValidationError):
            dyad_distribution(1.0, 1.0, float("inf"))

    def test_overflowing_normalizer(self):
        d = dyad_distribution(1e200, 1e200, 1e10)
        assert d.as_array().sum() == pytest.approx(1.0)
        assert d.p11 == pytest.approx(1.0)

    def test_vector_form_survives_overflow(self):
        probs = joint_probabilities(np.array([1e200, 1e200, 2.0]), np.array([1e200, 1e-3, 0.5]), 1.0)
        assert np.all(np.isfinite(probs))
        np.testing.assert_allclose(probs.sum(axis=1), 1.0)
        assert probs[0, 3] == pytest.approx(1.0)
        assert probs[1, 3] == pytest.approx(dyad_distribution(1e200, 1e-3, 1.0).p11)
        np.testing.assert_allclose(probs[2], dyad_distribution(2.0, 0.5, 1.0).as_array(), rtol=1e-12)

    def test_marginal_matrix_survives_overflow(self):
        lam = np.array([[0.0, 1e200], [1e200, 0.0]])
        marginal = marginal_mean_matrix(lam, 3.0)
        assert marginal[0, 1] == pytest.approx(1.0)
        assert marginal[1, 0] == pytest.approx(1.0)
        assert marginal[0, 0] == 0.0

    def test_cells_sum_to_one(self):
        rng = np.random.default_rng(7)
        lam_ij, lam_ji, eta = np.exp(rng.uniform(-5, 5, size=(3, 10_000)))
        for e in (eta[:50]):
            probs = joint_probabilities(lam_ij, lam_ji, float(e))
            assert np.max(np.abs(probs.sum(axis=1) - 1.0)) < 1e-12

    def test_independence_at_eta_one(self):
        rng = np.random.default_rng(8)
        lam_ij, lam_ji = np.exp(rng.uniform(-5, 5, size=(2, 10_000)))
        p = joint_probabilities(lam_ij, lam_ji, 1.0)
        product = (p[:, 2] + p[:, 3]) * (p[:, 1] + p[:, 3])
        assert np.max(np.abs(p[:, 3] - product)) < 1e-12

    def test_natural_parameters_are_log_odds(self):
        d = dyad_distribution(2.0, 0.5, 3.0)
        f_ij, f_ji, j = natural_parameters(2.0, 0.5, 3.0)
        assert f_ij == pytest.approx(np.log(d.p10 / d.p00))
        assert f_ji == pytest.approx(np.log(d.p01 / d.p00))
        assert j == pytest.approx(np.log(d.p11 * d.p00 / (d.p10 * d.p01)))


class TestMeans:

    def test_marginal_examples(self):
        assert marginal_mean(1.0, 1.0, 1.0) == pytest.approx(0.5)
        assert marginal_mean(0.0, 3.0, 7.0) == 0.0
        assert marginal_mean(2.0, 0.5, 3.0) == pytest.approx(5.0 / 6.5)

    def test_conditional_examples(self):
        assert conditional_mean(1.0, 42.0, 0) == pytest.approx(0.5)
        assert conditional_mean(2.0, 3.0, 1) == pytest.approx(6.0 / 7.0)

    def test_conditional_at_eta_one_is_independent(self):
        for lam in (0.1, 1.0, 7.0):
            expected = lam / (lam + 1.0)
            assert conditional_mean(lam, 1.0, 0) == pytest.approx(expected)
            assert conditional_mean(lam, 1.0, 1) == pytest.approx(expected)
            assert marginal_mean(lam, 2.3, 1.0) == pytest.approx(expected)

    def test_conditional_matches_joint_table(self):
        d = dyad_distribution(0.7, 1.9, 4.0)
        assert conditional_mean(0.7, 4.0, 1) == pytest.approx(d.p11 / (d.p01 + d.p11))
        assert conditional_mean(0.7, 4.0, 0) == pytest.approx(d.p10 / (d.p00 + d.p10))

    def test_matrix_forms_agree_with_scalars(self, rng, make_params, make_graph):
        params = make_params(rng, n_nodes=5, eta=3.0)
        g = make_graph(rng, n_nodes=5)
        lam = lambda_matrix(params)
        marginal = marginal_mean_matrix(lam, params.eta)
        conditional = conditional_mean_matrix(lam, params.eta, g.dense)
        for i, j in [(0, 1), (3, 2), (4, 0)]:
            assert marginal[i, j] == pytest.approx(marginal_mean(lam[i, j], lam[j, i], params.eta))
            a_ji = int(g.dense[j, i])
            assert conditional[i, j] == pytest.approx(conditional_mean(lam[i, j], params.eta, a_ji))


class TestMoments:

    def test_zero_covariance_at_eta_one(self):
        assert dyad_moments(0.3, 5.0, 1.0).cov == 0.0

    def test_bernoulli_half(self):
        m = dyad_moments(1.0, 1.0, 1.0)
        assert m.var_ij == pytest.approx(0.25)
        assert m.var_ji == pytest.approx(0.25)

    def test_worked_covariance(self):
        assert dyad_moments(2.0, 0.5, 3.0).cov == pytest.approx(2.0 / 6.5**2)

    def test_closed_form_matches_cells(self):
        rng = np.random.default_rng(3)
        for lam_ij, lam_ji, eta in np.exp(rng.uniform(-3, 3, size=(200, 3))):
            d = dyad_distribution(lam_ij, lam_ji, eta)
            m = dyad_moments(lam_ij, lam_ji, eta)
            mean_ij = d.p10 + d.p11
            mean_ji = d.p01 + d.p11
            assert m.var_ij == pytest.approx(mean_ij * (1 - mean_ij), rel=1e-9)
            assert m.var_ji == pytest.approx(mean_ji * (1 - mean_ji), rel=1e-9)
            assert m.cov == pytest.approx(d.p11 - mean_ij * mean_ji, rel=1e-9, abs=1e-15)


def brute_force_loglik(g, params, mask=None):
    lam = lambda_matrix(params)
    A = g.dense
    total = 0.0
    for i in range(g.n_nodes):
        for j in range(i + 1, g.n_nodes):
            if mask is not None and not mask[i, j]:
                continue
            d = dyad_distribution(lam[i, j], lam[j, i], params.eta)
            total += np.log(d.probability(int(A[i, j]), int(A[j, i])))
    return total


class TestLogLikelihood:

    def test_empty_graph_keeps_normalizer_only(self, rng, make_params):
        params = make_params(rng, n_nodes=4)
        z = normalizer_matrix(lambda_matrix(params), params.eta)
        iu, ju = np.triu_indices(4, k=1)
        expected = -np.log(z[iu, ju]).sum()
        assert log_likelihood(DirectedBinaryGraph(4, []), params) == pytest.approx(expected)

    def test_single_mutual_dyad(self):
        params = ModelParams.create(u=[[1.0], [1.0]], v=[[1.0], [1.0]], w=[[1.0]], eta=1.0)
        g = DirectedBinaryGraph(2, [(0, 1), (1, 0)])
        assert log_likelihood(g, params) == pytest.approx(np.log(0.25))

    def test_matches_per_dyad_oracle(self, rng, make_params, make_graph):
        params = make_params(rng, n_nodes=8, k=3, eta=4.0)
        g = make_graph(rng, n_nodes=8)
        assert log_likelihood(g, params) == pytest.approx(brute_force_loglik(g, params), abs=1e-10)

    def test_mask_restricts_dyads(self, rng, make_params, make_graph):
        params = make_params(rng, n_nodes=7)
        g = make_graph(rng, n_nodes=7)
        upper = np.triu(rng.random((7, 7)) < 0.5, k=1)
        mask = upper | upper.T
        assert log_likelihood(g, params, mask) == pytest.approx(
            brute_force_loglik(g, params, mask), abs=1e-10
        )

    def test_zero_rate_on_edge_is_minus_infinity(self):
        params = ModelParams.create(u=[[0.0], [1.0]], v=[[1.0], [1.0]], w=[[1.0]], eta=1.0)
        g = DirectedBinaryGraph(2, [(0, 1)])
        assert log_likelihood(g, params) == float("-inf")

    def test_relabelling_communities_keeps_loglik(self, rng, make_params, make_graph):
        g = make_graph(rng, n_nodes=9, density=0.3)
        params = make_params(rng, n_nodes=9, k=4, eta=7.0)
        for perm in ([1, 0, 2, 3], [3, 2, 1, 0], [2, 3, 0, 1]):
            permuted = params.permute_communities(perm)
            assert log_likelihood(g, permuted) == pytest.approx(log_likelihood(g, params), rel=1e-12)

    def test_dimension_mismatch(self, rng, make_params):
        with pytest.raises(ValidationError):
            log_likelihood(DirectedBinaryGraph(3, []), make_params(rng, n_nodes=4))


class TestEtaGradient:

    def test_negative_without_mutual_edges(self, rng, make_params):
        params = make_params(rng, n_nodes=5, eta=50.0)
        g = DirectedBinaryGraph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
        assert eta_gradient(g, params) < 0

    def test_matches_finite_differences(self, make_params, make_graph):
        rng = np.random.default_rng(99)
        for _ in range(20):
            n = int(rng.integers(4, 30))
            params = make_params(rng, n_nodes=n, k=2, eta=float(rng.uniform(0.5, 10)))
            g = make_graph(rng, n_nodes=n, density=0.3)
            h = 1e-5 * params.eta
            up = log_likelihood(g, params.replace(eta=params.eta + h))
            down = log_likelihood(g, params.replace(eta=params.eta - h))
            numeric = (up - down) / (2 * h)
            assert eta_gradient(g, params) == pytest.approx(numeric, rel=1e-5, abs=1e-6)

    def test_fixed_point_is_stationary(self, rng, make_params):
        params = make_params(rng, n_nodes=10, eta=1.0)
        g = DirectedBinaryGraph(10, [(0, 1), (1, 0), (2, 3), (3, 2), (4, 5)])
        root = brentq(lambda eta: eta_gradient(g, params.replace(eta=eta)), 1e-6, 1e6, xtol=1e-14)
        lam = lambda_matrix(params)
        iu, ju = np.triu_indices(10, k=1)
        z = normalizer_matrix(lam, root)[iu, ju]
        fixed_point = 2 / np.sum(lam[iu, ju] * lam[ju, iu] / z)
        assert fixed_point == pytest.approx(root, rel=1e-8)


class TestModelParams:

    def test_rejects_negative_entries(self):
        with pytest.raises(ValidationError):
            ModelParams.create(u=[[-1.0]], v=[[1.0]], w=[[1.0]], eta=1.0)

    def test_rejects_non_positive_eta(self):
        with pytest.raises(ValidationError):
            ModelParams.create(u=[[1.0]], v=[[1.0]], w=[[1.0]], eta=0.0)

    def test_rejects_shape_mismatch(self):
        with pytest.raises(ValidationError):
            ModelParams.create(u=np.ones((3, 2)), v=np.ones((3, 3)), w=np.ones((2, 2)), eta=1.0)

    def test_arrays_are_read_only(self, rng, make_params):
        params = make_params(rng)
        with pytest.raises(ValueError):
            params.u[0, 0] = 5.0

    def test_json_file_round_trip(self, tmp_path, rng, make_params):
        params = make_params(rng, n_nodes=4).replace(node_labels=["a", "b", "c", "d"])
        again = load_params(save_params(params, tmp_path / "params.json"))
        assert np.array_equal(again.u, params.u)
        assert np.array_equal(again.w, params.w)
        assert again.eta == params.eta
        assert again.node_labels == ["a", "b", "c", "d"]

    def test_missing_file(self, tmp_path):
        with pytest.raises(ValidationError):
            load_params(tmp_path / "absent.json")

    def test_permutation_keeps_rates(self, rng, make_params):
        params = make_params(rng, n_nodes=5, k=3)
        permuted = params.permute_communities([2, 0, 1])
        assert np.allclose(lambda_matrix(permuted), lambda_matrix(params))
        assert np.array_equal(permuted.u[:, 0], params.u[:, 2])
