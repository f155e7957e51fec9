import json
import subprocess
import sys

import pytest

from payner.cli import run


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    d = tmp_path_factory.mktemp("cli")
    assert run(["generate", "--count", "120", "--seed", "1", "--out", str(d / "c.conll"),
                "--raw-out", str(d / "raw.jsonl"), "--split-dir", str(d / "split"), "--quiet"]) == 0  # fmt: skip
    assert run(["train", "--train", str(d / "split/train.conll"), "--dev", str(d / "split/dev.conll"),
                "--model", str(d / "m.json"), "--max-iter", "15", "--quiet"]) == 0  # fmt: skip
    return d


def test_generate_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.conll", tmp_path / "b.conll"
    assert run(["generate", "--count", "100", "--seed", "1", "--out", str(a)]) == 0
    stats = json.loads(capsys.readouterr().out)
    assert stats["message_count"] == 100
    assert run(["generate", "--count", "100", "--seed", "1", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_format_mix_flag(tmp_path):
    from payner.corpus import read_annotations

    p = tmp_path / "c.conll"
    assert run(["generate", "--count", "10", "--out", str(p), "--format-mix", "MT103=0.5,SEPA=0.5", "--quiet"]) == 0
    assert {m.message.format.value for m in read_annotations(p)} == {"MT103", "SEPA"}
    assert run(["generate", "--count", "10", "--out", str(p), "--format-mix", "XML=1"]) == 1
    assert run(["generate", "--count", "10", "--out", str(p), "--format-mix", "MT103=0.5"]) == 1


def test_train_eval_roundtrip(workdir, capsys):
    pred = workdir / "pred.conll"
    test = workdir / "split/test.conll"
    assert run(["tag", "--model", str(workdir / "m.json"), "--input", str(test), "--out", str(pred), "--quiet"]) == 0
    report = workdir / "report.json"
    capsys.readouterr()
    assert run(["eval", "--gold", str(test), "--pred", str(pred), "--report", str(report)]) == 0
    printed = capsys.readouterr().out.strip().splitlines()[-1]
    f1 = json.loads(report.read_text())["micro"]["f1"]
    assert printed == f"micro-F1 {f1:.4f}"


def test_eval_identity(workdir, capsys):
    test = str(workdir / "split/test.conll")
    assert run(["eval", "--gold", test, "--pred", test]) == 0
    assert capsys.readouterr().out.strip() == "micro-F1 1.0000"


def test_eval_bootstrap(workdir, capsys):
    test = str(workdir / "split/test.conll")
    base = workdir / "base.conll"
    assert run(["tag", "--baseline", "--input", str(workdir / "raw.jsonl"), "--out", str(base), "--quiet"]) == 0
    assert run(["tag", "--baseline", "--input", test, "--out", str(base), "--quiet"]) == 0
    assert run(["eval", "--gold", test, "--pred", test, "--bootstrap", str(base), "--iters", "200"]) == 0
    assert "paired bootstrap p=0" in capsys.readouterr().out


def test_tag_deterministic(workdir):
    outs = []
    for k in range(2):
        p = workdir / f"t{k}.conll"
        assert run(["tag", "--model", str(workdir / "m.json"), "--input", str(workdir / "raw.jsonl"),
                    "--out", str(p), "--quiet"]) == 0  # fmt: skip
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_crossformat(workdir, capsys):
    plan = workdir / "plan.json"
    plan.write_text('[{"train": ["MT103"], "test": "MT103"}, {"train": ["MT103"], "test": "SEPA"}]')
    rep = workdir / "xf.json"
    assert run(["crossformat", "--corpus", str(workdir / "c.conll"), "--plan", str(plan), "--report", str(rep),
                "--max-iter", "10", "--quiet"]) == 0  # fmt: skip
    assert len(json.loads(rep.read_text())["cells"]) == 2
    assert "MT103 -> SEPA" in capsys.readouterr().out
    only_mt = workdir / "mt.conll"
    assert run(["generate", "--count", "8", "--out", str(only_mt), "--format-mix", "MT103=1", "--quiet"]) == 0
    capsys.readouterr()
    assert run(["crossformat", "--corpus", str(only_mt), "--plan", str(plan), "--report", str(rep)]) == 2
    assert "empty subset" in capsys.readouterr().err


def test_bench(workdir, capsys):
    rep = workdir / "bench.json"
    assert run(["bench", "--model", str(workdir / "m.json"), "--input", str(workdir / "raw.jsonl"),
                "--duration", "0.3", "--warmup", "2", "--report", str(rep), "--quiet"]) == 0  # fmt: skip
    d = json.loads(rep.read_text())
    assert d["latency"]["latency_p50_ms"] > 0 and d["throughput"]["message_count"] > 0
    assert run(["bench", "--baseline", "--input", str(workdir / "raw.jsonl"), "--duration", "0", "--quiet"]) == 1


def test_json_logs(workdir, capsys):
    assert run(["generate", "--count", "3", "--out", str(workdir / "j.conll"), "--json-logs"]) == 0
    lines = [ln for ln in capsys.readouterr().err.splitlines() if ln.strip()]
    assert lines
    for ln in lines:
        rec = json.loads(ln)
        assert {"level", "message", "logger", "time"} <= set(rec)


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["generate", "--count", "5"],
        ["generate", "--count", "0", "--out", "x"],
        ["train", "--bogus"],
        ["tag", "--input", "x", "--out", "y"],
        ["nosuchcommand"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv) == 1
    assert capsys.readouterr().err


def test_data_errors(workdir, tmp_path, capsys):
    bad = tmp_path / "bad.conll"
    bad.write_text("# id = a\n# format = OTHER\nx\tB-NOPE\n")
    assert run(["eval", "--gold", str(bad), "--pred", str(bad)]) == 2
    err = capsys.readouterr().err
    assert str(bad) in err and ":3:" in err
    assert run(["eval", "--gold", str(tmp_path / "missing"), "--pred", str(bad)]) == 2
    assert "--gold" in capsys.readouterr().err
    junk = tmp_path / "m.json"
    junk.write_text("{}")
    assert run(["tag", "--model", str(junk), "--input", str(workdir / "raw.jsonl"), "--out", str(tmp_path / "o")]) == 2
    assert "--model" in capsys.readouterr().err
    test = str(workdir / "split/test.conll")
    assert run(["eval", "--gold", test, "--pred", str(workdir / "split/dev.conll")]) == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "payner", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("payner ")
