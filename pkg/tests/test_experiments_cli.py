import subprocess
import sys

import pytest

from uniseq.experiments import ExperimentConfig, GuardError, run_experiment


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "uniseq.cli", *args],
        capture_output=True,
        text=True,
    )


def test_run_twice_byte_identical():
    cfg = dict(n=80, samples=300, seed=9)
    for name in ("pk", "rank", "totalsmall"):
        a, _ = run_experiment(ExperimentConfig(name=name, kn=3, **cfg))
        b, _ = run_experiment(ExperimentConfig(name=name, kn=3, **cfg))
        assert a == b


def test_exact_experiments_deterministic():
    a, _ = run_experiment(ExperimentConfig(name="pk-exact", n=120))
    b, _ = run_experiment(ExperimentConfig(name="pk-exact", n=120))
    assert a == b


def test_csv_shape():
    text, summary = run_experiment(
        ExperimentConfig(name="pk", n=80, samples=200, seed=4)
    )
    lines = text.split("\n")
    assert lines[0].startswith("# uniseq pk ")
    assert lines[1] == "index,pk,x"
    assert text.endswith("\n")
    assert ("peak-gumbel-limit", "ks") in summary
    data = [l for l in lines if l and not l.startswith(("#", "summary", "index"))]
    assert len(data) == 200


def test_summary_names_target_and_tolerance():
    text, _ = run_experiment(ExperimentConfig(name="rank", n=80, samples=200))
    summary_lines = [l for l in text.splitlines() if l.startswith("summary,")]
    assert any("rank-logistic-limit" in l and l.endswith("0.1") for l in summary_lines)


def test_guards_name_growth_condition():
    with pytest.raises(GuardError, match=r"o\(n\^\(1/4\)\)"):
        run_experiment(ExperimentConfig(name="smallparts", n=50, samples=10, k=5))
    with pytest.raises(GuardError, match=r"o\(n\^\(1/2\)\)"):
        run_experiment(ExperimentConfig(name="totalsmall", n=100, samples=10, kn=40))
    with pytest.raises(GuardError, match=r"o\(n\^\(1/4\)\)"):
        run_experiment(ExperimentConfig(name="largeparts", n=50, samples=10, t=3))
    with pytest.raises(GuardError):
        run_experiment(ExperimentConfig(name="rank", strict=True, n=50, samples=10))


def test_sample_rows_encode_sequences():
    text, _ = run_experiment(
        ExperimentConfig(name="sample", n=20, samples=5, seed=2)
    )
    rows = [
        l for l in text.splitlines() if l and not l.startswith(("#", "summary", "left"))
    ]
    assert len(rows) == 5
    for row in rows:
        left, peak, right = row.split("|")
        parts = [int(v) for v in (left.split() + [peak] + right.split()) if v]
        assert sum(parts) == 20


def test_sample_stats_rows():
    text, _ = run_experiment(
        ExperimentConfig(name="sample", n=25, samples=4, seed=3, stats=True)
    )
    lines = text.splitlines()
    header = [l for l in lines if l.startswith("n,seed,")]
    assert header == ["n,seed,pk,rank,size,y_l1,y_r1,y_l2,y_r2,y_l3,y_r3"]
    data = [
        l for l in lines if l and not l.startswith(("#", "summary", "n,seed"))
    ]
    assert len(data) == 4
    for row in data:
        vals = [int(v) for v in row.split(",")]
        assert vals[0] == 25 and vals[1] == 3 and vals[4] == 25
        assert vals[5] <= vals[2]  # largest left part bounded by the peak


def test_moments_identities_all_match():
    text, summary = run_experiment(ExperimentConfig(name="moments", order=30))
    for k in range(4):
        assert summary[("peak-moment-bell-identity", f"exact-match-k{k}")] == 1
    for k in range(1, 4):
        assert summary[("largest-part-moment-recursion", f"exact-match-k{k}")] == 1
    assert ("largest-part-mean-vs-formula", "relative-deviation-at-30") in summary


def test_cli_writes_file_and_is_byte_stable(tmp_path):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    for out in (out1, out2):
        res = run_cli(
            "pk", "--n", "80", "--samples", "200", "--seed", "9", "--out", str(out)
        )
        assert res.returncode == 0, res.stderr
    assert out1.read_bytes() == out2.read_bytes()
    assert b"\r" not in out1.read_bytes()


def test_cli_stdout_and_exit_codes():
    ok = run_cli("count", "--n", "12")
    assert ok.returncode == 0
    assert "12,1," in ok.stdout
    bad = run_cli("smallparts", "--n", "50", "--samples", "10", "--k", "7")
    assert bad.returncode == 1
    assert "o(n^(1/4))" in bad.stderr
    assert bad.stderr.count("\n") == 1  # one-line reason
    missing = run_cli("nonsense")
    assert missing.returncode != 0


def test_cli_series_and_asymp():
    from uniseq.series import mu_series_direct

    res = run_cli("series", "--kind", "mu", "--k", "1", "--order", "6")
    assert res.returncode == 0
    assert res.stdout.splitlines()[-1] == f"6,{mu_series_direct(1, 6)[6]}"
    res = run_cli("asymp", "--n", "300")
    assert res.returncode == 0
    assert "peak-count-saddle" in res.stdout


def test_cli_bench_backends_agree():
    res = run_cli("bench", "--n", "60", "--samples", "400", "--seed", "3")
    assert res.returncode == 0, res.stderr
    assert "numpy" in res.stdout
    if "numba" in res.stdout:
        assert "identical,true" in res.stdout
