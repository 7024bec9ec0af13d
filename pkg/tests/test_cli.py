import json

import pandas as pd
import pytest

from jointdyad.cli.main import main
from jointdyad.graph.edgelist import write_edge_list
from jointdyad.model.params import ModelParams, load_params, save_params


FAST_FIT = ["--restarts", "1", "--max-iter", "20", "--quiet"]


@pytest.fixture
def edges_file(tmp_path, planted):
    return str(write_edge_list(planted.graph, tmp_path / "input" / "graph.edges"))


@pytest.fixture
def params_file(tmp_path, planted):
    return str(save_params(planted.true_params, tmp_path / "input" / "true_params.json"))


def read_json(path):
    return json.loads(path.read_text(encoding="utf-8"))


class TestGenerate:

    ARGS = ["generate", "-N", "40", "-K", "2", "--avg-degree", "6", "--eta", "5", "--quiet"]

    def test_writes_instance(self, tmp_path):
        assert main(self.ARGS + ["-o", str(tmp_path)]) == 0
        assert (tmp_path / "graph.edges").exists()
        params = load_params(tmp_path / "true_params.json")
        assert params.n_nodes == 40
        manifest = read_json(tmp_path / "manifest.json")
        assert manifest["command"] == "generate"
        assert manifest["seed"] == 0
        assert "graph.edges" in manifest["outputs"]

    def test_same_seed_same_bytes(self, tmp_path):
        first, second = tmp_path / "a", tmp_path / "b"
        assert main(self.ARGS + ["--seed", "9", "-o", str(first)]) == 0
        assert main(self.ARGS + ["--seed", "9", "-o", str(second)]) == 0
        for name in ("graph.edges", "true_params.json"):
            assert (first / name).read_bytes() == (second / name).read_bytes()

    def test_missing_node_count(self, tmp_path):
        with pytest.raises(SystemExit) as excinfo:
            main(["generate", "-K", "2", "--avg-degree", "6", "--eta", "5", "-o", str(tmp_path)])
        assert excinfo.value.code == 2

    def test_invalid_community_count(self, tmp_path):
        assert main(["generate", "-N", "40", "-K", "0", "--avg-degree", "6", "--eta", "5", "-o", str(tmp_path)]) == 2

    def test_sweep(self, tmp_path):
        code = main([
            "generate", "-N", "30", "-K", "2", "--eta-list", "1,10", "--avg-degree-list", "4,6",
            "--threads", "2", "--quiet", "-o", str(tmp_path),
        ])
        assert code == 0
        instances = pd.read_csv(tmp_path / "instances.csv")
        assert len(instances) == 4
        assert instances["seed"].nunique() == 4
        for name in instances["instance"]:
            assert (tmp_path / name / "graph.edges").exists()
            assert (tmp_path / name / "true_params.json").exists()

    def test_config_file(self, tmp_path):
        config = tmp_path / "benchmark.json"
        config.write_text(json.dumps({"n_nodes": 30, "k": 3, "avg_degree": 4, "eta": 2, "seed": 5}))
        assert main(["generate", "--config", str(config), "--quiet", "-o", str(tmp_path / "out")]) == 0
        assert load_params(tmp_path / "out" / "true_params.json").n_communities == 3


class TestFit:

    def test_outputs(self, tmp_path, edges_file):
        out = tmp_path / "fit"
        assert main(["fit", edges_file, "-K", "2", "-o", str(out)] + FAST_FIT) == 0
        params = load_params(out / "params.json")
        assert params.n_communities == 2
        assert params.node_labels is not None
        report = read_json(out / "fit_result.json")
        trace = pd.read_csv(out / "loglik_trace.csv")
        assert len(trace) == report["iterations"] + 1
        assert trace["loglik"].iloc[-1] == pytest.approx(report["final_loglik"])

    def test_malformed_edge_list(self, tmp_path):
        bad = tmp_path / "bad.edges"
        bad.write_text("a b\nc d e\n")
        assert main(["fit", str(bad), "-K", "2", "-o", str(tmp_path)] + FAST_FIT) == 2

    def test_missing_file(self, tmp_path):
        assert main(["fit", str(tmp_path / "nope.edges"), "-K", "2", "-o", str(tmp_path)] + FAST_FIT) == 2

    def test_threads_must_be_positive(self, tmp_path, edges_file):
        with pytest.raises(SystemExit) as excinfo:
            main(["fit", edges_file, "-K", "2", "--threads", "0", "-o", str(tmp_path)])
        assert excinfo.value.code == 2


class TestCV:

    def test_single_k(self, tmp_path, edges_file):
        out = tmp_path / "cv"
        assert main(["cv", edges_file, "-K", "2", "--folds", "3", "-o", str(out)] + FAST_FIT) == 0
        report = read_json(out / "cv_report.json")
        assert report["n_folds"] == 3
        assert len(report["folds"]) == 3
        assert set(pd.read_csv(out / "cv_folds.csv").columns) == {"fold", "score_kind", "metric", "value"}

    def test_k_list(self, tmp_path, edges_file):
        out = tmp_path / "cv"
        assert main(["cv", edges_file, "--k-list", "1,2", "--folds", "3", "-o", str(out)] + FAST_FIT) == 0
        sweep = read_json(out / "cv_sweep.json")
        assert sweep["selected_k"] in (1, 2)

    def test_k_and_k_list_are_exclusive(self, tmp_path, edges_file):
        with pytest.raises(SystemExit) as excinfo:
            main(["cv", edges_file, "-K", "2", "--k-list", "1,2", "-o", str(tmp_path)])
        assert excinfo.value.code == 2


class TestSampleAndReconstruct:

    def test_sample_with_comparison(self, tmp_path, edges_file, params_file):
        out = tmp_path / "samples"
        code = main(["sample", params_file, "--n-samples", "2", "--compare", edges_file, "--quiet", "-o", str(out)])
        assert code == 0
        assert (out / "sample_000.edges").exists()
        assert (out / "sample_001.edges").exists()
        comparison = pd.read_csv(out / "comparison.csv")
        assert "reciprocity" in set(comparison["statistic"])

    def test_comparison_uses_the_same_node_set(self, tmp_path):
        params = ModelParams.create(
            u=[[1.0], [1.0], [0.0]],
            v=[[1.0], [1.0], [0.0]],
            w=[[50.0]],
            eta=10.0,
            node_labels=["a", "b", "c"],
        )
        params_path = save_params(params, tmp_path / "params.json")
        edges = tmp_path / "graph.edges"
        edges.write_text("a b\nb a\n")

        out = tmp_path / "samples"
        args = ["sample", str(params_path), "--n-samples", "3", "--compare", str(edges), "--quiet", "-o", str(out)]
        assert main(args) == 0
        table = pd.read_csv(out / "comparison.csv").set_index("statistic")
        assert table.loc["n_nodes", "observed"] == 2
        assert table.loc["n_nodes", "sample_mean"] == 2

    def test_reconstruct(self, tmp_path, edges_file, params_file):
        out = tmp_path / "reconstruct"
        assert main(["reconstruct", edges_file, params_file, "--threshold", "0.3", "--quiet", "-o", str(out)]) == 0
        exported = pd.read_csv(out / "reconstruction.csv")
        assert (exported["conditional_score"] > 0.3).all()
        report = read_json(out / "reconstruction.json")
        assert "entries" not in report
        assert report["joint"]["n_dyads"] == 80 * 79 // 2


class TestEvaluate:

    def test_cosine_similarity_of_identical_parameters(self, tmp_path, params_file):
        out = tmp_path / "cs"
        code = main(["eval", "cs", "--true-params", params_file, "--inferred-params", params_file, "--quiet", "-o", str(out)])
        assert code == 0
        assert read_json(out / "cs_report.json")["cosine_similarity"] == pytest.approx(1.0)

    def test_modularity_of_generated_instance(self, tmp_path):
        generated = tmp_path / "gen"
        assert main(TestGenerate.ARGS + ["-o", str(generated)]) == 0
        out = tmp_path / "modularity"
        code = main([
            "eval", "modularity", str(generated / "graph.edges"),
            "--params", str(generated / "true_params.json"), "--quiet", "-o", str(out),
        ])
        assert code == 0
        table = pd.read_csv(out / "modularity.csv")
        assert list(table["aggregation"]) == ["mean", "max", "product"]

    def test_recovery_after_fit(self, tmp_path):
        generated = tmp_path / "gen"
        assert main(TestGenerate.ARGS + ["-o", str(generated)]) == 0
        assert main(["fit", str(generated / "graph.edges"), "-K", "2", "-o", str(tmp_path / "fit")] + FAST_FIT) == 0
        out = tmp_path / "cs"
        code = main([
            "eval", "cs", "--true-params", str(generated / "true_params.json"),
            "--inferred-params", str(tmp_path / "fit" / "params.json"), "--quiet", "-o", str(out),
        ])
        assert code == 0
        assert 0.0 <= read_json(out / "cs_report.json")["cosine_similarity"] <= 1.0


class TestStats:

    def test_stats(self, tmp_path, edges_file, planted):
        out = tmp_path / "stats"
        assert main(["stats", edges_file, "--quiet", "-o", str(out)]) == 0
        stats = read_json(out / "stats.json")
        assert stats["n_edges"] == planted.graph.n_edges

    def test_csv_only_writes_to_stdout(self, tmp_path, edges_file, capsys):
        out = tmp_path / "stats"
        assert main(["stats", edges_file, "--csv-only", "--quiet", "-o", str(out)]) == 0
        captured = capsys.readouterr().out
        assert captured.startswith("n_nodes,n_edges,avg_degree,reciprocity,clustering")
        assert not (out / "stats.json").exists()
        assert not (out / "manifest.json").exists()
