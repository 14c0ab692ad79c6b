"""Command-line driver: exit codes, report schema, determinism, formats."""

import csv
import io
import json

import pytest

from clusterspt.cli import main


def run_json(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


class TestVerify:
    def test_passes_on_open_nine(self, capsys):
        code, doc = run_json(capsys, "verify", "--size", "9",
                             "--boundary", "open")
        assert code == 0
        assert doc["schema_version"] == 1
        assert doc["verdict"] == "pass"
        names = [c["name"] for c in doc["results"]["checks"]]
        assert "pairwise-commutation" in names

    def test_symbolic_only_skips_numeric(self, capsys):
        code, doc = run_json(capsys, "verify", "--size", "15",
                             "--symbolic-only")
        assert code == 0
        assert [c["name"] for c in doc["results"]["checks"]] == \
            ["pairwise-commutation"]

    def test_global_symmetry_certification(self, capsys):
        code, doc = run_json(capsys, "verify", "--size", "9",
                             "--global-symmetry")
        assert code == 0
        alg = doc["results"]["global_symmetry"]["algebra"]
        assert all(alg.values())
        mism = [c["name"]
                for c in doc["results"]["global_symmetry"]["cross_checks"]
                if not c["matches"]]
        assert mism == ["B2"]

    def test_global_symmetry_needs_admissible_size(self, capsys):
        assert main(["verify", "--size", "5", "--boundary", "open",
                     "--global-symmetry"]) == 2

    def test_tamper_flags_failure(self, capsys):
        code, doc = run_json(capsys, "verify", "--size", "9",
                             "--tamper", "B2")
        assert code == 1
        assert doc["verdict"] == "fail"
        alg = doc["results"]["global_symmetry"]["algebra"]
        assert not alg["t2_commutes_h"]

    def test_tamper_sign_flip_passes(self, capsys):
        code, doc = run_json(capsys, "verify", "--size", "9",
                             "--tamper", "A2")
        assert code == 0


class TestSpectrum:
    def test_open_nine(self, capsys):
        code, doc = run_json(capsys, "spectrum", "--size", "9",
                             "--boundary", "open")
        assert code == 0
        r = doc["results"]
        assert r["ground_energy"] == pytest.approx(-7.0)
        assert r["ground_degeneracy"] == 4
        assert r["gap"] == pytest.approx(2.0)

    def test_periodic_eight(self, capsys):
        code, doc = run_json(capsys, "spectrum", "--size", "8",
                             "--boundary", "periodic")
        assert code == 0
        assert doc["results"]["ground_degeneracy"] == 1
        assert doc["results"]["ground_energy"] == pytest.approx(-8.0)

    def test_size_cap(self, capsys):
        assert main(["spectrum", "--size", "30"]) == 2

    def test_rejects_grid_syntax(self, capsys):
        assert main(["spectrum", "--size", "6",
                     "--lambda", "0:1:0.1"]) == 2


class TestProtect:
    def test_protected_at_nine(self, capsys):
        code, doc = run_json(capsys, "protect", "--size", "9")
        assert code == 0
        r = doc["results"]
        assert r["verdict"] == "protected"
        assert r["per_s_bulk"] == {"1": True, "2": True}
        assert r["cross_check_mismatches"] == ["B2"]
        assert len(r["probes"]) == 96

    def test_local_only(self, capsys):
        code, doc = run_json(capsys, "protect", "--size", "6",
                             "--local-only")
        assert code == 0
        assert doc["results"]["mode"] == "local"

    def test_tamper_exits_one(self, capsys):
        code, doc = run_json(capsys, "protect", "--size", "9",
                             "--tamper", "B2", "--symbolic-only")
        assert code == 1
        assert doc["results"]["verdict"] == "not protected"

    def test_malformed_probe(self, capsys):
        assert main(["protect", "--size", "9", "--probe", "Q5"]) == 2

    def test_explicit_probes(self, capsys):
        code, doc = run_json(capsys, "protect", "--size", "9",
                             "--probe", "X5", "--probe", "Z1")
        assert code == 0
        names = {p["probe"] for p in doc["results"]["probes"]}
        # requested probes plus the forbidden products
        assert {"X5", "Z1"} <= names
        assert sum(p["forbidden"] for p in doc["results"]["probes"]) == 15


class TestScan:
    def test_single_point(self, capsys):
        code, doc = run_json(capsys, "scan", "--size", "6",
                             "--lambda", "0:0:1")
        assert code == 0
        row = doc["results"]["rows"][0]
        assert row["lam"] == 0.0
        assert row["string_order"] == pytest.approx(1.0, abs=1e-10)
        assert row["gap"] == pytest.approx(2.0, abs=1e-9)
        assert doc["results"]["transition"] is None

    def test_reversed_range(self, capsys):
        assert main(["scan", "--size", "6", "--lambda", "1.2:0.8:0.05"]) == 2

    def test_bad_range_syntax(self, capsys):
        assert main(["scan", "--size", "6", "--lambda", "abc"]) == 2
        assert main(["scan", "--size", "6", "--lambda", "0:1:-0.1"]) == 2

    def test_estimate_in_json(self, capsys):
        code, doc = run_json(capsys, "scan", "--size", "8",
                             "--lambda", "0.8:1.2:0.05")
        assert code == 0
        t = doc["results"]["transition"]
        assert t["method"] == "interior-minimum"
        assert t["value"] == pytest.approx(0.9239, abs=5e-3)
        assert doc["results"]["parity_commutes"]
        assert doc["results"]["time_reversal_real"]

    def test_csv_output(self, capsys):
        code = main(["scan", "--size", "6", "--lambda", "0.9:1.1:0.1",
                     "--format", "csv"])
        assert code == 0
        text = capsys.readouterr().out
        rows = list(csv.DictReader(io.StringIO(text)))
        assert len(rows) == 3
        assert "string_order" in rows[0]
        assert float(rows[0]["lam"]) == pytest.approx(0.9)

    def test_deterministic_modulo_timings(self, capsys, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for path in (a, b):
            assert main(["scan", "--size", "6", "--lambda", "0.9:1.1:0.1",
                         "--out", str(path)]) == 0
        da, db = json.loads(a.read_text()), json.loads(b.read_text())
        da.pop("timings"), db.pop("timings")
        assert json.dumps(da, sort_keys=True) == json.dumps(db, sort_keys=True)

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "scan.csv"
        assert main(["scan", "--size", "6", "--lambda", "0:0:1",
                     "--format", "csv", "--out", str(path)]) == 0
        assert path.read_text().startswith("lam,")


class TestUsage:
    def test_no_command(self, capsys):
        assert main([]) == 2

    def test_unknown_command(self, capsys):
        assert main(["frobnicate"]) == 2

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0

    def test_floats_have_twelve_significant_digits(self, capsys):
        code, doc = run_json(capsys, "scan", "--size", "6",
                             "--lambda", "0.9:0.9:1")
        text = json.dumps(doc)
        for token in text.replace(",", " ").replace("}", " ").split():
            try:
                float(token)
            except ValueError:
                continue
            digits = token.lstrip("-0.").replace(".", "").rstrip("0")
            assert len(digits) <= 12, token
