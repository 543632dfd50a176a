from __future__ import annotations

import json

import pytest

from monodromy import braidmono, factorizations, fibrations, fukaya
from monodromy.io import (
    Report,
    build_examples,
    bundled_names,
    canonical_json,
    data_dir,
    digest,
    read_input,
    verify_corpus,
    write_corpus,
)


def test_bundled_files_match_their_definitions():
    built = build_examples()
    assert sorted(built) == bundled_names()
    for name, obj in built.items():
        assert (data_dir() / name).read_text(encoding="utf-8") == canonical_json(obj), name


def test_bundled_manifest_digests():
    assert verify_corpus(data_dir()) == []
    assert len(bundled_names()) >= 5


def test_written_corpus_is_stable(tmp_path):
    a = write_corpus(tmp_path / "a")
    b = write_corpus(tmp_path / "b")
    assert a == b
    assert verify_corpus(tmp_path / "a") == []
    (tmp_path / "a" / "e1.json").write_text("{}\n", encoding="utf-8")
    assert verify_corpus(tmp_path / "a") == ["e1.json"]


def test_canonical_json():
    text = canonical_json({"b": 1, "a": ["σ"]})
    assert text == '{\n  "a": [\n    "σ"\n  ],\n  "b": 1\n}\n'
    assert digest(text) == digest(text.encode("utf-8"))


def test_read_input_resolution(tmp_path):
    obj, h, source = read_input("examples/e1.json")
    assert source == "bundled:e1.json" and obj["genus"] == 1
    assert h == digest((data_dir() / "e1.json").read_bytes())
    local = tmp_path / "x.json"
    local.write_text('{"k": 2}', encoding="utf-8")
    assert read_input(str(local))[0] == {"k": 2}
    with pytest.raises(FileNotFoundError):
        read_input("examples/nothing.json")
    with pytest.raises(FileNotFoundError):
        read_input("manifest.json")


def _verify(name: str, obj) -> bool:
    if "genus" in obj:
        spec = fibrations.FibrationSpec.from_json(obj)
        return fibrations.fibration_invariants(spec).chi == fibrations.euler_characteristic(spec)
    if "moves" in obj:
        res = factorizations.Factorization.from_json(obj["result"])
        source = factorizations.Factorization.from_json(read_input("elliptic_sl2z.json")[0])
        path = factorizations.MovePath.from_json(obj["moves"], source.context)
        return factorizations.factorwise_equal(factorizations.replay(source, path), res) \
            and factorizations.verify_product(res)
    if "context" in obj:
        return factorizations.verify_product(factorizations.Factorization.from_json(obj))
    if name.endswith("_theta.json"):
        b = braidmono.BranchData.from_json(obj)
        return b.is_transitive()
    if name.endswith("_arrangement.json"):
        return fukaya.validate_arrangement(fukaya.CurveArrangement.from_json(obj)).valid
    return braidmono.verify_braided_curve(braidmono.BraidedCurveSpec.from_json(obj)).valid


@pytest.mark.parametrize("name", bundled_names())
def test_every_bundled_spec_passes_its_verifier(name):
    assert _verify(name, read_input(name)[0])


def test_report_status():
    assert Report("violated").exit_code == 1
    with pytest.raises(ValueError):
        Report("maybe")
    assert json.loads(canonical_json(Report("ok", {"x": 1}).to_json()))["status"] == "ok"
