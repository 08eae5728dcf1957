import json

import numpy as np
import pytest

from attrlearn.aer import default_lambda
from attrlearn.cli import run_cli
from attrlearn.core import Model
from attrlearn.datasets import IdxImageSet, load_csv, write_idx_images, write_idx_labels
from attrlearn.evaluation import CURVE_HEADER, test_squared_error as sq_error


@pytest.fixture
def data(tmp_path):
    path = tmp_path / "lb.csv"
    assert run_cli(["gen-synth", "--dist", "lowerbound", "--d", "16", "--j", "3", "--p", "0.2",
                    "--m", "2000", "--seed", "7", "--out", str(path)]) == 0
    return path


class TestGenSynth:
    def test_lowerbound(self, data):
        ds = load_csv(data)
        assert (ds.m, ds.d) == (2000, 16)

    def test_reproducible(self, tmp_path, data):
        run_cli(["gen-synth", "--dist", "lowerbound", "--d", "16", "--j", "3", "--p", "0.2",
                 "--m", "2000", "--seed", "7", "--out", str(tmp_path / "again.csv")])
        assert (tmp_path / "again.csv").read_bytes() == data.read_bytes()

    def test_linear(self, tmp_path):
        out = tmp_path / "lin.csv"
        assert run_cli(["gen-synth", "--dist", "linear", "--d", "3", "--m", "50", "--w-star", "0.2,0.3,-0.1",
                        "--noise", "0.2", "--out", str(out)]) == 0
        assert load_csv(out).d == 3

    def test_unbounded_linear_is_data_error(self, tmp_path):
        assert run_cli(["gen-synth", "--dist", "linear", "--d", "2", "--m", "5", "--w-star", "0.9,0.9",
                        "--out", str(tmp_path / "x.csv")]) == 2


class TestTrainEval:
    def test_aer_round_trip(self, tmp_path, data, capsys):
        model_path = tmp_path / "m.json"
        assert run_cli(["train", "--algo", "aer", "--k", "4", "--B", "1", "--lambda", "auto",
                        "--data", str(data), "--seed", "1", "--model-out", str(model_path)]) == 0
        model = Model.load(model_path)
        assert np.abs(model.weights).sum() <= 1 + 1e-9
        assert model.hyperparameters["lambda"] == default_lambda(1.0, 1.0, 16, 2000, 4)
        assert set(json.loads(model_path.read_text())) == {
            "algo", "d", "weights", "hyperparameters", "attributes_consumed", "seed", "train_size"}
        capsys.readouterr()
        assert run_cli(["eval", "--model", str(model_path), "--data", str(data),
                        "--metrics", str(tmp_path / "metrics.json")]) == 0
        printed = json.loads(capsys.readouterr().out)
        assert printed["sq_error"] == sq_error(model, load_csv(data))
        assert printed == json.loads((tmp_path / "metrics.json").read_text())
        assert 0 <= printed["cls_error"] <= 1

    def test_dense_b2(self, tmp_path, data):
        path = tmp_path / "m.json"
        run_cli(["train", "--algo", "aer", "--k", "2", "--B", "2", "--b2", "dense",
                 "--data", str(data), "--model-out", str(path)])
        assert Model.load(path).hyperparameters["lambda"] == default_lambda(2.0, 0.5, 16, 2000, 2)

    @pytest.mark.parametrize("algo", ["baseline", "naive", "lasso", "ridge"])
    def test_every_algorithm_bitwise_reproducible(self, tmp_path, data, algo):
        paths = [tmp_path / f"{algo}{i}.json" for i in range(2)]
        for p in paths:
            assert run_cli(["train", "--algo", algo, "--k", "4", "--B", "1", "--data", str(data),
                            "--seed", "3", "--model-out", str(p)]) == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_usage_errors(self, tmp_path, data):
        assert run_cli(["train", "--algo", "aer", "--B", "1", "--data", str(data), "--model-out", "x"]) == 1
        assert run_cli(["train", "--algo", "nope", "--data", str(data), "--model-out", "x"]) == 1
        assert run_cli(["train", "--algo", "aer", "--k", "4", "--B", "1", "--lambda", "big",
                        "--data", str(data), "--model-out", "x"]) == 1
        assert run_cli([]) == 1

    def test_data_errors(self, tmp_path, data):
        assert run_cli(["train", "--algo", "aer", "--k", "3", "--B", "1", "--data", str(data),
                        "--model-out", str(tmp_path / "m.json")]) == 2
        assert run_cli(["eval", "--model", str(tmp_path / "absent.json"), "--data", str(data)]) == 2


def test_tune(tmp_path, data, capsys):
    grid = tmp_path / "grid.json"
    grid.write_text(json.dumps({"B": [0.1, 1.0]}))
    assert run_cli(["tune", "--algo", "lasso", "--data", str(data), "--grid", str(grid), "--folds", "5",
                    "--out", str(tmp_path / "best.json")]) == 0
    result = json.loads((tmp_path / "best.json").read_text())
    assert result["best"] in [{"B": 0.1}, {"B": 1.0}]
    assert len(result["scores"]) == 2


def test_experiment(tmp_path, data):
    cfg = tmp_path / "exp.json"
    cfg.write_text(json.dumps({"data": str(data), "algorithms": {"aer": {"B": 1.0}, "naive": {}},
                               "prefixes": [100, 400], "seeds": [0, 1], "k": 4}))
    out = tmp_path / "curve.csv"
    assert run_cli(["experiment", "--config", str(cfg), "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == ",".join(CURVE_HEADER)
    assert len(lines) == 1 + 2 * 2 * 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"data": str(data)}))
    assert run_cli(["experiment", "--config", str(bad), "--out", str(out)]) == 2


def test_import_mnist(tmp_path):
    pixels = np.arange(8 * 4, dtype=np.uint8).reshape(8, 4) * 8
    write_idx_images(IdxImageSet(8, 2, 2, pixels), tmp_path / "img")
    write_idx_labels([3, 5, 3, 1, 5, 5, 0, 3], tmp_path / "lab")
    out = tmp_path / "pair.csv"
    assert run_cli(["import-mnist", "--images", str(tmp_path / "img"), "--labels", str(tmp_path / "lab"),
                    "--digit-a", "3", "--digit-b", "5", "--out", str(out)]) == 0
    ds = load_csv(out)
    assert ds.m == 6 and ds.d == 4
    np.testing.assert_array_equal(ds.y, [-1, 1, -1, 1, 1, -1])
    assert run_cli(["import-mnist", "--images", str(tmp_path / "lab"), "--labels", str(tmp_path / "lab"),
                    "--digit-a", "3", "--digit-b", "5", "--out", str(out)]) == 2


def test_demo_floor(capsys):
    assert run_cli(["demo-floor"]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(1 / 9, abs=1e-12)
