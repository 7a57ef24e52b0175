import json
import os
import subprocess
import sys

import pytest

from reflsub import cli
from reflsub.subsystems import CACHE_VERSION

G23_SHOWTABLE = """\
P | A1 | [ A1A1, A2, D2(5) ]
P | A1A1 | [ H3, A1A1A1 ]
P | A2 | [ H3 ]
P | D2(5) | [ H3 ]
P | H3 | []
N | A1A1A1 | [ H3 ]
"""


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate_g23_showtable(capsys):
    code, out, err = run(capsys, "enumerate", "-g", "23", "--format", "showtable")
    assert code == 0 and out == G23_SHOWTABLE
    assert "enumeration" in err


def test_enumerate_default_format_is_showtable(capsys):
    assert run(capsys, "enumerate", "-g", "H3")[1] == G23_SHOWTABLE


def test_unknown_group_is_usage_error(capsys):
    code, out, err = run(capsys, "enumerate", "-g", "99")
    assert code == 2 and out == ""
    assert run(capsys, "enumerate", "-g", "30..23")[0] == 2


def test_cache_io_error(capsys, tmp_path):
    path = tmp_path / "missing" / "g23.json"
    assert run(capsys, "enumerate", "-g", "23", "--cache", str(path))[0] == 3


def test_cache_is_reused(capsys, tmp_path):
    path = str(tmp_path / "g28.json")
    code, first, err = run(capsys, "enumerate", "-g", "28", "--cache", path)
    assert code == 0 and "enumeration" in err and os.path.exists(path)
    code, second, err = run(capsys, "enumerate", "-g", "28", "--cache", path)
    assert code == 0 and second == first
    assert "cache reload" in err and "G28 enumeration" not in err


def test_cache_version_mismatch_recomputes(capsys, tmp_path):
    path = tmp_path / "g23.json"
    run(capsys, "enumerate", "-g", "23", "--cache", str(path))
    data = json.loads(path.read_text())
    data["version"] = CACHE_VERSION + 7
    path.write_text(json.dumps(data))
    code, out, err = run(capsys, "enumerate", "-g", "23", "--cache", str(path))
    assert code == 0 and out == G23_SHOWTABLE and "recomputing" in err
    assert json.loads(path.read_text())["version"] == CACHE_VERSION


def test_corrupt_cache_is_invariant_failure(capsys, tmp_path):
    path = tmp_path / "g23.json"
    run(capsys, "enumerate", "-g", "23", "--cache", str(path))
    data = json.loads(path.read_text())
    for row in data["classes"]:
        if row["label"] == "3A1":
            row["parabolic"] = True
    path.write_text(json.dumps(data))
    assert run(capsys, "enumerate", "-g", "23", "--cache", str(path))[0] == 4


def test_cache_directory_for_several_groups(capsys, tmp_path):
    code, out, _ = run(capsys, "table", "-g", "23,25", "--cache", str(tmp_path))
    assert code == 0
    assert sorted(os.listdir(tmp_path)) == ["G23.json", "G25.json"]


@pytest.mark.parametrize("fmt", ["showtable", "grid", "markdown", "json"])
def test_output_is_deterministic(capsys, fmt):
    a = run(capsys, "enumerate", "-g", "24", "--format", fmt)[1]
    b = run(capsys, "enumerate", "-g", "24", "--format", fmt)[1]
    assert a == b and a


def test_json_format(capsys):
    data = json.loads(run(capsys, "enumerate", "-g", "23", "--format", "json")[1])
    assert data["version"] == CACHE_VERSION
    assert len(data["classes"]) == 6


def test_table_defaults_to_grid(capsys):
    out = run(capsys, "table", "-g", "23")[1]
    assert out.startswith("Reflection subgroup classes of G23 = H3")
    assert "*H3" in out


def test_dump_rootdata(capsys):
    code, out, _ = run(capsys, "dump-rootdata", "-g", "23")
    assert code == 0 and out.startswith("G23 ")


def test_all_excludes_large_groups():
    assert cli.parse_groups("all") == [g for g in range(23, 38) if g not in (34, 36, 37)]
    assert cli.parse_groups("all", include_large=True) == list(range(23, 38))
    assert cli.parse_groups("23..26") == [23, 24, 25, 26]
    assert cli.parse_groups("G28,E8,23-24") == [23, 24, 28, 37]


def test_large_group_warning(capsys):
    err = run(capsys, "enumerate", "-g", "36")[2]
    assert "warning" in err


def test_verify_theorem_only(capsys):
    code, out, _ = run(capsys, "verify", "-g", "23", "--samples", "0")
    assert code == 0 and "theorem violations: 0" in out


def test_verify_range_and_json_report(capsys, tmp_path):
    report = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "-g", "23..30", "--json-report", str(report))
    assert code == 0
    data = json.loads(report.read_text())
    assert [r["group"] for r in data["reports"]] == list(range(23, 31))
    assert all(r["ok"] for r in data["reports"]) and data["seed"] == 1


def test_verify_g31_is_marked_vacuous(capsys):
    code, out, _ = run(capsys, "verify", "-g", "31")
    assert code == 0 and "hypothesis not satisfied" in out


@pytest.mark.parametrize("group", ["23", "24"])
def test_planted_fault_exits_4(capsys, group):
    code, out, _ = run(capsys, "verify", "-g", group, "--samples", "0", "--plant-fault")
    assert code == 4 and "FAILED" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "reflsub", "enumerate", "-g", "23"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == G23_SHOWTABLE
    proc = subprocess.run([sys.executable, "-m", "reflsub", "enumerate", "-g", "99"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 2
