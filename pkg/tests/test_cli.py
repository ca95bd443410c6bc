import csv
import json
import subprocess
import sys

import pytest

from tlsim.cli import EXIT_INVALID, EXIT_IO, EXIT_OK, PAIR_COLUMNS, RunConfig, main, run_command
from tlsim.errors import ParseError, ValidationError
from tlsim.scenario import bundled_path, parse_scenario, read_document, validate


def write_doc(tmp_path, doc, name="scenario.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return path


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_validate_bundled_ok(capsys):
    assert main(["validate", "oran-ra-ee-ac"]) == EXIT_OK
    assert "ok" in capsys.readouterr().out
    assert validate(bundled_path("oran-ra-ee-ac")) == []


def test_validate_reports_m_ordering(tmp_path, oran_doc, capsys):
    oran_doc["overhead"]["m_costs"] = [1, 2, 3]
    path = write_doc(tmp_path, oran_doc)
    assert main(["validate", str(path)]) == EXIT_INVALID
    err = capsys.readouterr().err
    assert "overhead.m_costs" in err and "M1 >= M2 >= M3" in err


def test_validate_reports_overlapping_windows(tmp_path, oran_doc):
    oran_doc["pipelines"][2].update({"class": "NonRealTime", "schedule": [[0, 100], [50, 200]]})
    issues = validate(write_doc(tmp_path, oran_doc))
    assert any(path == "pipelines[2].schedule" for path, _ in issues)


def test_validate_collects_every_issue(tmp_path, oran_doc):
    oran_doc["overhead"]["m_costs"] = [1, 2, 3]
    oran_doc["horizon"] = -1
    paths = {p for p, _ in validate(write_doc(tmp_path, oran_doc))}
    assert {"overhead.m_costs", "horizon"} <= paths


def test_parse_error_has_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "name": "x",\n  oops\n}')
    with pytest.raises(ParseError) as info:
        read_document(path)
    assert info.value.line == 3
    assert main(["validate", str(path)]) == EXIT_INVALID


def test_missing_file_is_io_error(tmp_path):
    assert main(["validate", str(tmp_path / "nope.json")]) == EXIT_IO


def test_validate_only_writes_nothing(tmp_path):
    out = tmp_path / "out"
    assert run_command(RunConfig(bundled_path("oran-ra-ee-ac"), out, validate_only=True)) == EXIT_OK
    assert not out.exists()


def test_unwritable_output_is_exit_2(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert main(["run", "quantized-retune", "--out", str(blocker / "sub")]) == EXIT_IO
    assert capsys.readouterr().err.startswith("error:")


def test_invalid_scenario_run_is_exit_1(tmp_path, oran_doc):
    oran_doc["overhead"]["m_costs"] = [1, 2, 3]
    assert run_command(RunConfig(write_doc(tmp_path, oran_doc), tmp_path / "out")) == EXIT_INVALID


def test_csv_reports(tmp_path):
    out = tmp_path / "out"
    assert main(["run", "quantized-retune", "--out", str(out)]) == EXIT_OK
    assert {p.name for p in out.iterdir()} == {"report.csv", "conflicts.csv", "utilization.csv", "quantization.csv"}
    with open(out / "report.csv", newline="") as fh:
        assert next(csv.reader(fh)) == PAIR_COLUMNS
    (pair,) = read_csv(out / "report.csv")
    assert abs(float(pair["tau"]) - 3.142) <= 1e-3
    quant = {r["scheme"]: r for r in read_csv(out / "quantization.csv")}
    assert float(quant["Float32"]["payload_ratio"]) == 1.0
    assert float(quant["Qat8"]["payload_ratio"]) == 0.25
    util = read_csv(out / "utilization.csv")
    assert sum(int(r["bits"]) for r in util) == int(pair["bits"])


def test_json_report_and_seed_override(tmp_path):
    out = tmp_path / "out"
    assert main(["run", "hierarchy-three-models", "--format", "json", "--seed", "7", "--out", str(out)]) == EXIT_OK
    report = json.loads((out / "report.json").read_text())
    assert report["seed"] == 7
    assert report["totals"]["jobs"] == len(report["jobs"])
    assert not (out / "report.csv").exists()


def test_multiple_scenarios_in_parallel(tmp_path):
    out = tmp_path / "out"
    assert main(["run", "oran-ra-ee-ac", "quantized-retune", "--jobs", "2", "--out", str(out)]) == EXIT_OK
    assert (out / "oran-ra-ee-ac" / "report.csv").exists()
    assert (out / "quantized-retune" / "report.csv").exists()


def test_conflicts_csv(tmp_path):
    out = tmp_path / "out"
    main(["run", "oran-ra-ee-ac", "--out", str(out)])
    (row,) = read_csv(out / "conflicts.csv")
    assert row["agents"] == "EE1;RA1"
    assert float(row["net_opposition"]) == 3.0


def test_list_and_module_entry(capsys):
    assert main(["list"]) == EXIT_OK
    assert "quantized-retune" in capsys.readouterr().out.split()
    proc = subprocess.run([sys.executable, "-m", "tlsim", "list"], capture_output=True, text=True, check=True)
    assert "oran-ra-ee-ac" in proc.stdout


def test_validation_error_carries_issues(oran_doc):
    oran_doc["overhead"]["m_costs"] = [1, 2, 3]
    with pytest.raises(ValidationError) as info:
        parse_scenario(oran_doc)
    assert info.value.issues[0][0] == "overhead.m_costs"
