# %% [markdown]
# The command line, end to end
#
# Generate data, train, evaluate, tune and run a small learning-curve
# experiment, all through `attrlearn` subcommands, in a scratch directory.

# %%
import json
import subprocess
import sys
import tempfile
from pathlib import Path

work = Path(tempfile.mkdtemp(prefix="attrlearn-demo-"))


def cli(*args):
    cmd = [sys.executable, "-m", "attrlearn.cli", *map(str, args)]
    print("$ attrlearn", " ".join(map(str, args)))
    out = subprocess.run(cmd, capture_output=True, text=True)
    if out.stdout:
        print(out.stdout.rstrip())
    if out.returncode:
        print(out.stderr.rstrip())
    return out.returncode


# %% one fixed w*, two independent samples from the task
w_star = ",".join(f"{v:.3f}" for v in [0.045, -0.045] * 10)
cli("gen-synth", "--dist", "linear", "--d", "20", "--w-star", w_star, "--noise", "0.1",
    "--m", "5000", "--seed", "1", "--out", work / "train.csv")
cli("gen-synth", "--dist", "linear", "--d", "20", "--w-star", w_star, "--noise", "0.1",
    "--m", "2000", "--seed", "2", "--out", work / "test.csv")

# %%
cli("train", "--algo", "aer", "--k", "4", "--B", "1", "--lambda", "auto",
    "--data", work / "train.csv", "--seed", "3", "--model-out", work / "aer.json")
cli("eval", "--model", work / "aer.json", "--data", work / "test.csv")

# %%
(work / "grid.json").write_text(json.dumps({"B": [0.5, 1.0, 2.0], "lambda_scale": [0.3, 1.0, 3.0]}))
cli("tune", "--algo", "aer", "--k", "4", "--data", work / "train.csv", "--grid", work / "grid.json", "--folds", "5")

# %%
(work / "exp.json").write_text(json.dumps({
    "data": str(work / "train.csv"),
    "algorithms": {"aer": {"B": 1.0}, "baseline": {"B": 1.0}},
    "prefixes": [250, 1000, 4000],
    "seeds": [0, 1],
    "k": 4,
}))
cli("experiment", "--config", work / "exp.json", "--out", work / "curve.csv")
print((work / "curve.csv").read_text())
cli("demo-floor")
