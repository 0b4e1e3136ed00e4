from __future__ import annotations

import json
import shutil
from pathlib import Path

from tribound.cli import main
from tribound.fixtures import fixture_dict

REPO_FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out), err


def test_missing_subcommand_is_usage_error(capsys):
    code, out, _ = run(capsys, str(REPO_FIXTURES / "d1.json"))
    assert code == 1


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", str(REPO_FIXTURES / "d1.json"))
    assert code == 0
    assert "3 crossings" in out and "5 faces" in out


def test_validate_bundled_name(capsys):
    code, report, _ = run_json(capsys, "validate", "d3")
    assert code == 0
    assert report["schema"] == 1
    assert report["results"]["summary"]["faces"] == 6


def test_validate_emit_derived(capsys):
    code, report, _ = run_json(capsys, "validate", "d3", "--emit-derived")
    assert code == 0
    derived = report["results"]["derived"]
    assert len(derived["arcs"]) == 4
    assert len(derived["faces"]) == 6
    assert sorted(derived["signs"].values()) == [-1, -1, 1, 1]


def test_validate_broken_file(capsys, tmp_path):
    broken = fixture_dict("d1")
    broken["crossings"][0]["slots"][0]["edge"] = 999
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(broken))
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 2
    assert "INVALID" in out


def test_validate_missing_file(capsys):
    code, _, err = run(capsys, "validate", "no-such-diagram.json")
    assert code == 2
    assert "no such file" in err


def test_colorings_counts(capsys):
    code, report, _ = run_json(capsys, "colorings", "d1", "-n", "3")
    assert code == 0
    assert report["results"]["count_total"] == 9
    code, report, _ = run_json(
        capsys, "colorings", "d3", "-n", "5", "--nontrivial-only"
    )
    assert report["results"]["count_total"] == 25
    assert report["results"]["count_listed"] == 20
    code, report, _ = run_json(capsys, "colorings", "d1", "-n", "1")
    assert report["results"]["count_total"] == 1


def test_colorings_with_regions(capsys):
    code, report, _ = run_json(
        capsys, "colorings", "d1", "-n", "3", "--outer-color", "0"
    )
    assert code == 0
    row = report["results"]["colorings"][0]
    assert len(row["region_colors"]) == 5


def test_colorings_bad_modulus(capsys):
    code, _, err = run(capsys, "colorings", "d1", "-n", "0")
    assert code == 2


def test_weight_all(capsys):
    code, report, _ = run_json(
        capsys,
        "weight", "d1", "-n", "3", "-f", "(x-y)*(y-z)*z", "-s", "0",
        "--coloring", "all",
    )
    assert code == 0
    by_id = {row["id"]: row for row in report["results"]["weights"]}
    assert by_id[3]["w"] == -8
    assert all(row["w"] == 0 for row in by_id.values() if row["trivial"])
    code, report, _ = run_json(
        capsys,
        "weight", "d2", "-n", "3", "-f", "(x-y)*(y-z)*z", "-s", "0",
    )
    assert report["results"]["phi"]["values"] == [-2, 2]


def test_weight_single_coloring(capsys):
    code, report, _ = run_json(
        capsys,
        "weight", "d6", "-n", "4", "-f", "(x+y)^2*(y-z)^3*z^5", "-s", "0",
        "--coloring", "0",
    )
    assert code == 0
    row = report["results"]["weights"][0]
    assert row["trivial"] and row["w"] == 0
    assert "phi" not in report["results"]


def test_weight_coloring_out_of_range(capsys):
    code, _, err = run(
        capsys,
        "weight", "d1", "-n", "3", "-f", "(x-y)*(y-z)*z", "-s", "0",
        "--coloring", "99",
    )
    assert code == 2
    assert "out of range" in err


def test_weight_refuses_bad_function(capsys):
    code, _, err = run(
        capsys, "weight", "d1", "-n", "3", "-f", "x", "-s", "0"
    )
    assert code == 2
    assert "(1, 0, 0)" in err


def test_delta_and_cache(capsys, tmp_path):
    cache = tmp_path / "cache"
    args = (
        "delta", "-n", "3", "-f", "(x-y)*(y-z)*z", "--max-m", "1",
        "--cache", str(cache),
    )
    code, cold, _ = run_json(capsys, *args)
    assert code == 0
    assert cold["results"]["im_size"] == 13
    assert cold["results"]["levels"][1]["values"] == [
        -11, -8, -7, -5, -4, -2, -1, 0, 1, 2, 4, 5, 7, 8, 11,
    ]
    assert cold["cache"] == {"hits": 0, "misses": 1}
    code, warm, _ = run_json(capsys, *args)
    assert warm["cache"] == {"hits": 1, "misses": 0}
    assert warm["results"] == cold["results"]


def test_delta_large_set_summarized(capsys, tmp_path):
    code, report, _ = run_json(
        capsys,
        "delta", "-n", "5", "-f", "(x+y)^3*(y+z)*(y-z)^3*z^5",
        "--max-m", "1", "--cache", str(tmp_path / "c"),
    )
    assert code == 0
    assert report["results"]["im_size"] == 393
    level1 = report["results"]["levels"][1]
    assert "values" not in level1
    assert level1["size"] > 64 and "file" in level1
    assert Path(report["results"]["cache_file"]).exists()


def test_delta_cap_exit_code(capsys, tmp_path):
    code, _, err = run(
        capsys,
        "delta", "-n", "3", "-f", "(x-y)*(y-z)*z", "--max-m", "2",
        "--cache", str(tmp_path / "c"), "--cap", "5",
    )
    assert code == 4
    assert "cap" in err


def test_certify_reference_pairs(capsys, tmp_path):
    cache = str(tmp_path / "c")
    code, report, _ = run_json(
        capsys,
        "certify", "d1", "d2", "-n", "3", "-f", "(x-y)*(y-z)*z",
        "-s", "0", "--max-m", "2", "--cache", cache,
    )
    assert code == 0
    assert report["results"]["certificate"]["m"] == 2
    assert report["results"]["verified"] is True

    code, report, _ = run_json(
        capsys,
        "certify", "d5", "d6", "-n", "4", "-f", "(x+y)^2*(y-z)^3*z^5",
        "-s", "0", "--max-m", "3", "--cache", cache,
    )
    assert code == 0
    assert report["results"]["certificate"]["m"] == 3


def test_certify_no_obstruction(capsys, tmp_path):
    code, report, _ = run_json(
        capsys,
        "certify", "d1", "d1", "-n", "3", "-f", "(x-y)*(y-z)*z",
        "-s", "0", "--max-m", "2", "--cache", str(tmp_path / "c"),
    )
    assert code == 5
    assert report["results"]["certificate"]["m"] == 0


def test_reproduce_all_pass(capsys):
    code, out, _ = run(capsys, "reproduce")
    assert code == 0
    assert out.count("[PASS]") == 14
    assert "FAIL" not in out


def test_reproduce_json(capsys):
    code, report, _ = run_json(capsys, "reproduce")
    assert code == 0
    assert report["results"]["pass"] is True
    assert len(report["results"]["checks"]) == 14


def test_reproduce_detects_tampering(capsys, tmp_path):
    fdir = tmp_path / "fixtures"
    fdir.mkdir()
    for name in ("d1", "d2", "d3", "d4", "d5", "d6"):
        shutil.copy(REPO_FIXTURES / f"{name}.json", fdir / f"{name}.json")
    tampered = json.loads((fdir / "d2.json").read_text())
    tampered["outer_face"] = 3  # wrong outer region
    (fdir / "d2.json").write_text(json.dumps(tampered))
    code, out, _ = run(capsys, "reproduce", "--fixtures-dir", str(fdir))
    assert code == 3
    assert "[FAIL] Phi(d2, 0)" in out
    assert "got" in out


def test_usage_error_exit_code(capsys):
    assert main(["colorings", "d1"]) == 1  # missing -n
    assert main(["frobnicate"]) == 1
    assert main(["--help"]) == 0


def test_repo_fixture_files_match_builders():
    for name in ("d1", "d2", "d3", "d4", "d5", "d6"):
        on_disk = json.loads((REPO_FIXTURES / f"{name}.json").read_text())
        assert on_disk == fixture_dict(name)
