import json
import os
import subprocess

import pytest

import locotrans as lt


def test_threshold_matches_ml_on_grid():
    m = lt.LinearModel(0.37, -5.55, lt.Algorithm.LogisticRegression)
    th = lt.extract_threshold(m)
    assert th.fire_above
    assert th.threshold == pytest.approx(15.0, abs=1e-9)
    for i in range(2001):
        x = -200.0 + i * 0.2
        assert lt.predict_th(th, x) == lt.predict_ml(m, x)


def test_fit_recovers_midpoint():
    data = [(1.0, False), (3.0, False), (7.0, True), (9.0, True)]
    for fit in (lt.fit_logistic_1d, lt.fit_linear_svm_1d):
        assert lt.extract_threshold(fit(data)).threshold == pytest.approx(5.0, abs=1e-6)


def test_degenerate_training_is_a_data_error():
    with pytest.raises(lt.DataError):
        lt.fit_logistic_1d([(1.0, True), (2.0, True)])


def test_protocol_trial_round_trip(tmp_path):
    t = lt.generate_protocol_trial(seed=3, noise_sd=2.0, id="p")
    assert [a.mode for a in t.annotations] == [
        lt.Mode.Sit, lt.Mode.Walk, lt.Mode.StairDescent, lt.Mode.Walk,
        lt.Mode.StairAscent, lt.Mode.Walk, lt.Mode.Sit]
    path = tmp_path / "p.csv"
    lt.save_trial(t, path)
    back = lt.load_trial(path)
    assert back.samples == t.samples


def test_train_and_replay_in_process():
    trials = [lt.generate_protocol_trial(seed=s, id=f"t{s}") for s in range(12)]
    bank = lt.train_bank(trials)
    again = lt.ModelBank.from_json(bank.to_json())
    assert again.to_json() == bank.to_json()
    t = lt.generate_protocol_trial(seed=99)
    log = lt.run_stream(bank, t.samples, lt.Mode.Sit)
    kinds = [lt.to_string(d.kind) for d in log.fired()]
    assert kinds == ["S->W", "W->SD", "SD->W", "W->SA", "SA->W", "W->S"]
    assert log.final_mode == lt.Mode.Sit


def test_recognition_accuracy():
    assert lt.recognition_accuracy(45, 50) == 90.0
    with pytest.raises(lt.DataError):
        lt.recognition_accuracy(0, 0)


CLI = os.environ.get("LOCOTRANS_CLI")


@pytest.mark.skipif(not CLI, reason="LOCOTRANS_CLI not set")
def test_cli_round_trip_and_exit_codes(tmp_path):
    def run(*args, env=None):
        return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True,
                              env={**os.environ, **(env or {})})

    data = tmp_path / "data"
    assert run("generate", "--count", 12, "--seed", 10, "--out-dir", data).returncode == 0
    bank = tmp_path / "bank.json"
    r = run("train", "--data", data, "--out", bank)
    assert r.returncode == 0, r.stderr
    assert "W->SA" in r.stdout

    held = tmp_path / "held"
    assert run("generate", "--count", 2, "--seed", 500, "--out-dir", held).returncode == 0
    out = tmp_path / "replay.json"
    r = run("replay", "--trials", held, "--bank", bank, "--initial-mode", "auto",
            "--out-json", out, "--log-dir", tmp_path / "logs")
    assert r.returncode == 0, r.stderr
    acc = json.loads(out.read_text())["accuracy"]["total"]
    assert acc["n_correct"] == acc["n_total"] == 12

    r = run("report", "--log", tmp_path / "logs" / "trial_000.decisions.csv",
            "--trial", held / "trial_000.csv")
    assert r.returncode == 0, r.stderr
    assert r.stdout.strip().splitlines()[-1] == "total,6,6,100"

    bad = tmp_path / "bad.json"
    bad.write_text('{"detector": {"no_such_key": 1}}')
    assert run("--config", bad, "replay", "--trials", held, "--bank", bank).returncode == 2
    r = run("replay", "--trials", held, "--bank", bank,
            env={"LOCOTRANS_DETECTOR_CROSSING_BAND_LOW": "80"})
    assert r.returncode == 2
    assert run("replay", "--trials", tmp_path / "missing", "--bank", bank).returncode == 1
