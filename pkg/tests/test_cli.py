import csv
import hashlib
import json
import subprocess
import sys

import pytest

from drunktexter.cli import all_stage_argvs, build_parser, run

SMALL = ["--n-drunk", "16", "--n-nondrunk", "16", "--min-tweets", "20", "--max-tweets", "40"]


def tree(root):
    return {p.relative_to(root).as_posix(): hashlib.sha256(p.read_bytes()).hexdigest()
            for p in sorted(root.rglob("*")) if p.is_file()}


def rows(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.reader(fh))


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    out = tmp_path_factory.mktemp("gen")
    assert run(["generate", "--out", str(out), "--seed", "3"] + SMALL) == 0
    assert run(["label", "--out", str(out), "--corpus", str(out / "corpus.jsonl")]) == 0
    return out / "labeled.jsonl"


def test_usage_errors(capsys, tmp_path):
    assert run(["evaluate", "--k", "1", "--synthetic", "--out", str(tmp_path)]) == 1
    assert "--k" in capsys.readouterr().err
    assert run(["rank", "--bogus"]) == 1
    assert run(["featurize", "--segment", "monday", "--synthetic"]) == 1
    assert run(["nosuch"]) == 1
    assert run(["featurize", "--out", str(tmp_path)]) == 1  # no corpus given
    assert run(["peaks", "--window", "4", "--corpus", "x"]) == 1
    assert run(["generate", "--n-drunk", "0", "--out", str(tmp_path)]) == 1
    assert run(["--version"]) == 0
    assert list(tmp_path.iterdir()) == []


def test_data_errors(capsys, tmp_path):
    assert run(["featurize", "--corpus", str(tmp_path / "missing.jsonl"), "--out", str(tmp_path)]) == 2
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"user_id": "a"}\nnot json\n', encoding="utf-8")
    assert run(["bots", "--corpus", str(bad), "--out", str(tmp_path / "o")]) == 2
    assert "line 2" in capsys.readouterr().err
    one = tmp_path / "one.jsonl"
    one.write_text('{"user_id": "a", "label": "drunk", "tweets": [{"id": "1", "ts": 1389009600, '
                   '"text": "drunk"}]}\n', encoding="utf-8")
    assert run(["rank", "--corpus", str(one), "--out", str(tmp_path / "o")]) == 2
    assert run(["report-categories", "--corpus", str(one), "--lexicons", str(tmp_path)]) == 2


def test_report_categories_layout(corpus, tmp_path, lexicons):
    assert run(["report-categories", "--corpus", str(corpus), "--out", str(tmp_path)]) == 0
    table = rows(tmp_path / "categories.csv")
    assert table[0] == ["category", "alpha", "beta", "gamma", "delta"]
    assert [r[0] for r in table[1:]] == lexicons.names
    assert all(len(r) == 5 for r in table)


def test_featurize_layout(corpus, tmp_path, lexicons):
    assert run(["featurize", "--corpus", str(corpus), "--out", str(tmp_path),
                "--segment", "weekend"]) == 0
    table = rows(tmp_path / "features.csv")
    assert table[0][-3:] == ["user_id", "segment", "label"]
    assert {r[-2] for r in table[1:]} == {"weekend"}
    assert len(table[0]) == len(lexicons) + 2 + 3


def test_evaluate_outputs(corpus, tmp_path):
    assert run(["evaluate", "--corpus", str(corpus), "--out", str(tmp_path), "--classifier", "lr",
                "--k", "4"]) == 0
    table = rows(tmp_path / "evaluation.csv")
    assert table[0] == ["segment", "classifier", "accuracy", "precision", "recall", "f1", "roc_auc"]
    assert [r[:2] for r in table[1:]] == [["weekday", "LR"], ["weekend", "LR"]]
    detail = json.loads((tmp_path / "evaluation.json").read_text())
    assert len(detail[0]["folds"]) == 4


def test_negative_set_random(tmp_path):
    args = ["evaluate", "--synthetic", "--out", str(tmp_path), "--classifier", "nb", "--k", "3",
            "--segment", "weekday"] + SMALL
    assert run(args + ["--negative-set", "random"]) == 2  # no unlabeled users
    assert run(args + ["--negative-set", "random", "--n-random", "12"]) == 0
    detail = json.loads((tmp_path / "evaluation.json").read_text())
    assert detail[0]["n"] == 28


def test_manifest_hashes(corpus, tmp_path):
    assert run(["rank", "--corpus", str(corpus), "--out", str(tmp_path), "--bins", "5"]) == 0
    man = json.loads((tmp_path / "manifests" / "rank.json").read_text())
    assert man["seed"] == 1337 and man["config"]["bins"] == 5
    assert man["inputs"]["corpus_sha256"] == hashlib.sha256(corpus.read_bytes()).hexdigest()
    for name, digest in man["outputs"].items():
        assert hashlib.sha256((tmp_path / name).read_bytes()).hexdigest() == digest
    assert str(tmp_path) not in json.dumps(man)


def test_all_is_deterministic_and_stepwise(tmp_path):
    a, b, c = tmp_path / "a", tmp_path / "b", tmp_path / "c"
    argv = ["all", "--synthetic", "--seed", "7"] + SMALL
    assert run(argv + ["--out", str(a)]) == 0
    assert run(argv + ["--out", str(b)]) == 0
    assert tree(a) == tree(b)
    for step in all_stage_argvs(build_parser().parse_args(argv + ["--out", str(c)])):
        assert run(step) == 0
    ta = tree(a)
    assert ta.pop("manifests/all.json")
    assert ta == tree(c)
    summary = json.loads((a / "manifests" / "all.json").read_text())
    assert summary["outputs"]["corpus.jsonl"] == ta["corpus.jsonl"]
    assert sorted(p.name for p in tmp_path.iterdir()) == ["a", "b", "c"]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "drunktexter", "--help"], capture_output=True, text=True)
    assert res.returncode == 0 and "communities" in res.stdout
