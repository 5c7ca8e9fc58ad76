import csv
import io
import json
import subprocess
import sys

import pytest

from qsupport.cli import Certificate, run


def call(*argv):
    code, text = run(list(argv))
    return code, text


def as_json(text):
    return json.loads(text)


def strip_timing(data):
    data = dict(data)
    data.pop("timing", None)
    return data


class TestSupport:
    def test_steinberg_a1(self):
        code, text = call("--type", "A", "--rank", "1", "--ell", "5", "--weight", "4", "support")
        out = as_json(text)["outputs"]
        assert code == 0 and out["J"] == [1] and out["dimension"] == 0

    def test_zero_a2(self):
        code, text = call("--type", "A", "--rank", "2", "--ell", "5", "--weight", "0,0", "support")
        out = as_json(text)["outputs"]
        assert code == 0 and out["J"] == [] and out["dimension"] == 6
        assert set(out) >= {"type", "rank", "ell", "mode", "weight", "J", "conjugator_word", "dimension",
                            "conditional_on_LCF"}

    def test_weyl_module(self):
        code, text = call("--ell", "5", "--weight", "1,1", "support", "--module", "weyl")
        assert code == 0 and as_json(text)["outputs"]["module_kind"] == "weyl"

    def test_modular(self):
        code, text = call("--ell", "5", "--mode", "modular", "--weight", "6,5", "support")
        out = as_json(text)["outputs"]
        assert code == 0 and out["conditional_on_LCF"] is True

    def test_even_ell(self):
        code, text = call("--ell", "4", "--weight", "0,0", "support")
        err = as_json(text)
        assert code == 2 and "ell must be odd" in err["messages"]

    def test_all_ell_reasons(self):
        code, text = call("--type", "G", "--ell", "6", "--mode", "modular", "--weight", "0,0", "support")
        assert code == 2 and len(as_json(text)["messages"]) == 4

    @pytest.mark.parametrize("argv", [
        ["--ell", "5", "support"],
        ["--ell", "5", "--weight", "1", "support"],
        ["--ell", "5", "--weight", "a,b", "support"],
        ["--ell", "5", "--weight", "-1,0", "support"],
        ["--type", "Q", "--ell", "5", "--weight", "0", "support"],
        ["--ell", "5", "frobnicate"],
        ["--weight", "0,0", "support"],
        ["--ell", "5", "--jobs", "0", "verify"],
    ])
    def test_invalid_input(self, argv):
        code, text = call(*argv)
        assert code == 2 and as_json(text)["error"] == "invalid-input"


class TestVerify:
    def test_a2_acceptance_bound(self):
        code, text = call("--type", "A", "--rank", "2", "--ell", "5", "--bound", "10", "verify")
        data = as_json(text)
        s = data["outputs"]["summary"]
        assert code == 0 and data["verdict"] == "pass"
        assert s["weights"] == 121 and s["pass"] == 121 and s["fail"] == 0 and s["complete"]

    def test_a1_includes_worked_instance(self):
        code, text = call("--type", "A", "--rank", "1", "--ell", "5", "verify")
        recs = {tuple(r["weight"]): r for r in as_json(text)["outputs"]["weights"]}
        assert code == 0 and len(recs) == 10
        thm = recs[(4,)]["derivative_formula"]
        assert thm["s"] == 1 and thm["lhs"] == thm["rhs"] and thm["passed"]
        assert recs[(4,)]["wall_signs"] is True

    def test_bound_zero(self):
        code, text = call("--ell", "5", "--bound", "0", "verify")
        s = as_json(text)["outputs"]["summary"]
        assert code == 0 and s["weights"] == 1 and s["pass"] == 1

    def test_capacity(self):
        code, text = call("--type", "B", "--rank", "2", "--ell", "5", "--max-kl-length", "4", "verify")
        data = as_json(text)
        assert code == 3 and data["verdict"] == "capacity-exceeded"
        assert data["outputs"]["summary"]["complete"] is False

    def test_csv(self):
        code, text = call("--type", "A", "--rank", "1", "--ell", "5", "--format", "csv", "verify")
        rows = list(csv.DictReader(io.StringIO(text)))
        assert code == 0 and len(rows) == 10 and all(r["verdict"] == "pass" for r in rows)

    def test_csv_only_for_verify(self):
        code, _ = call("--ell", "5", "--weight", "0,0", "--format", "csv", "support")
        assert code == 2

    def test_text(self):
        code, text = call("--type", "A", "--rank", "1", "--ell", "5", "--format", "text", "verify")
        assert code == 0 and text.startswith("verify: pass")

    def test_parallel_matches_serial(self):
        base = ["--type", "B", "--rank", "2", "--ell", "5", "--bound", "5"]
        _, serial = call(*base, "verify")
        _, parallel = call(*base, "--jobs", "2", "verify")
        assert as_json(serial)["outputs"] == as_json(parallel)["outputs"]


class TestKL:
    def test_diagonal(self):
        code, text = call("--type", "A", "--rank", "1", "--ell", "5", "kl", "--y", "1,0", "--w", "1,0")
        out = as_json(text)["outputs"]
        assert code == 0 and out["coefficients"] == [1] and out["value_at_1"] == 1

    def test_not_below(self):
        code, text = call("--ell", "5", "kl", "--y", "1,2", "--w", "0,1")
        assert code == 0 and as_json(text)["outputs"]["coefficients"] == []

    def test_affine_a1(self):
        for y in ["", "0", "1", "0,1", "1,0,1"]:
            code, text = call("--type", "A", "--rank", "1", "--ell", "5", "kl", "--y", y, "--w", "0,1,0,1,0,1,0,1")
            assert code == 0 and as_json(text)["outputs"]["coefficients"] == [1]

    def test_parabolic_non_minimal(self):
        code, text = call("--ell", "5", "kl", "--y", "", "--w", "0,1", "--parabolic", "1")
        assert code == 2 and "minimal" in as_json(text)["messages"][0]

    def test_parabolic(self):
        code, text = call("--ell", "5", "kl", "--y", "1", "--w", "1", "--parabolic", "0")
        assert code == 0 and as_json(text)["outputs"]["coefficients"] == [1]


class TestCharacterCommand:
    def test_a1(self):
        code, text = call("--type", "A", "--rank", "1", "--ell", "5", "--weight", "6", "character")
        out = as_json(text)["outputs"]
        assert code == 0 and out["dimension"] == 4
        assert [(t["sign"], t["weight"]) for t in out["terms"]] == [(1, [6]), (-1, [2])]


class TestCertificate:
    def test_round_trip(self):
        _, text = call("--type", "A", "--rank", "1", "--ell", "5", "verify")
        cert = Certificate.loads(text)
        assert json.loads(cert.dumps()) == json.loads(text)

    def test_deterministic(self):
        argv = ["--type", "B", "--rank", "2", "--ell", "7", "--bound", "4", "verify"]
        a, b = as_json(call(*argv)[1]), as_json(call(*argv)[1])
        assert strip_timing(a) == strip_timing(b)
        assert json.dumps(strip_timing(a), sort_keys=True) == json.dumps(strip_timing(b), sort_keys=True)

    def test_bad_verdict(self):
        with pytest.raises(ValueError):
            Certificate.loads(json.dumps({"command": "x", "inputs": {}, "outputs": {}, "verdict": "maybe"}))


def test_entry_point_subprocess():
    proc = subprocess.run([sys.executable, "-m", "qsupport", "--ell", "4", "--weight", "0,0", "support"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
    assert "ell must be odd" in json.loads(proc.stdout)["messages"]
