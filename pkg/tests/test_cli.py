"""Command line interface: output formats, exit codes, caching, atomic writes."""

import json
import os

import pytest

from polyloop import cli
from polyloop.series import TruncSeries


def _run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_path_json(capsys):
    code, out, _ = _run(capsys, "build", "path", "3")
    assert code == 0
    assert json.loads(out) == {"m": 4, "facets": [[0, 1], [1, 2], [2, 3]]}


def test_build_families(capsys):
    for argv, m in [
        (("build", "cycle", "4"), 4),
        (("build", "points", "3"), 3),
        (("build", "simplex", "2"), 3),
        (("build", "book", "1", "3", "2"), 4),
        (("build", "planar-book", "2", "2"), 5),
    ]:
        code, out, _ = _run(capsys, *argv)
        assert code == 0
        assert json.loads(out)["m"] == m


def test_output_is_byte_identical(capsys):
    _, out1, _ = _run(capsys, "decompose", "path", "3")
    _, out2, _ = _run(capsys, "decompose", "path", "3")
    assert out1 == out2
    obj = json.loads(out1)
    assert json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n" == out1


def test_text_format(capsys):
    code, out, _ = _run(capsys, "build", "path", "2", "--format", "text")
    assert code == 0
    assert "m: 2" not in out and "m: 3" in out


def test_build_file_roundtrip(tmp_path, capsys):
    target = tmp_path / "complex.json"
    code, out1, _ = _run(capsys, "build", "planar-book", "2", "3", "--out", str(target))
    assert code == 0 and out1 == ""
    code, out2, _ = _run(capsys, "build", "file", str(target))
    assert code == 0
    assert out2 == target.read_text()


def test_glue_spec_file(tmp_path, capsys):
    spec = {
        "base": {"m": 2, "facets": [[0, 1]]},
        "sub_a": [0],
        "sub_b": [1],
        "psi": [1, 0],
        "copies": 2,
    }
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec))
    code, out, _ = _run(capsys, "build", "glue-spec-file", str(path))
    assert code == 0
    obj = json.loads(out)
    assert obj["m"] == 3 and len(obj["facets"]) == 2


def test_out_writes_atomically(tmp_path, capsys):
    target = tmp_path / "result.json"
    code, _, _ = _run(capsys, "decompose", "path", "2", "--out", str(target))
    assert code == 0
    _, stdout_version, _ = _run(capsys, "decompose", "path", "2")
    assert target.read_text() == stdout_version
    leftovers = [p for p in os.listdir(tmp_path) if p.startswith(".polyloop-")]
    assert leftovers == []


def test_out_into_missing_directory_fails_cleanly(tmp_path, capsys):
    target = tmp_path / "no" / "such" / "dir" / "x.json"
    code, _, err = _run(capsys, "build", "path", "2", "--out", str(target))
    assert code == 2
    assert "error" in err


def test_decompose_planar_book(capsys):
    code, out, _ = _run(capsys, "decompose", "planar-book", "2", "2", "--N", "8")
    assert code == 0
    obj = json.loads(out)
    assert obj["series"]["coeffs"] == [1, 5, 14, 32, 68, 140, 284, 572, 1148]
    assert obj["spheres"]["fibre"] == {"2": 2}
    assert {f["name"] for f in obj["factors"]} == {
        "circles",
        "loop-path-fibre",
        "loop-page-fibre-wedge",
    }


def test_decompose_book_symbolic(capsys):
    code, out, _ = _run(capsys, "decompose", "book", "1", "4", "2")
    assert code == 0
    obj = json.loads(out)
    assert obj["series"] is None and obj["spheres"] is None


def test_series_subcommand(capsys):
    code, out, _ = _run(capsys, "series", "hilbert", "path", "2", "--N", "4")
    assert code == 0
    assert json.loads(out) == {"N": 4, "coeffs": [1, 3, 5, 7, 9]}
    code, out, _ = _run(capsys, "series", "koszul", "path", "2", "--N", "4")
    assert json.loads(out)["coeffs"] == [1, 3, 4, 4, 4]


def test_hochster_subcommand(capsys):
    code, out, _ = _run(capsys, "hochster", "cycle", "4")
    assert code == 0
    assert json.loads(out) == {"betti": {"0": 1, "3": 2, "6": 1}, "m": 4}


def test_hochster_jobs_do_not_change_output(capsys):
    _, out1, _ = _run(capsys, "hochster", "path", "5", "--jobs", "1")
    _, out2, _ = _run(capsys, "hochster", "path", "5", "--jobs", "2")
    assert out1 == out2


def test_hochster_cache(tmp_path, capsys):
    cache = tmp_path / "cache"
    code, out1, _ = _run(
        capsys, "hochster", "cycle", "5", "--cache-dir", str(cache)
    )
    assert code == 0
    entries = list(cache.glob("hochster-*.json"))
    assert len(entries) == 1
    cached = json.loads(entries[0].read_text())
    assert cached == json.loads(out1)
    code, out2, _ = _run(
        capsys, "hochster", "cycle", "5", "--cache-dir", str(cache)
    )
    assert out2 == out1
    assert len(list(cache.glob("hochster-*.json"))) == 1


def test_verify_porter_hochster(capsys):
    code, out, _ = _run(capsys, "verify", "porter-hochster", "path", "4")
    assert code == 0
    obj = json.loads(out)
    assert obj["status"] == "pass"
    assert obj["checks"] == [{"name": "porter-hochster", "status": "pass"}]


def test_verify_koszul_path_and_book(capsys):
    assert _run(capsys, "verify", "koszul", "path", "3")[0] == 0
    assert _run(capsys, "verify", "koszul", "planar-book", "2", "2")[0] == 0
    assert _run(capsys, "verify", "koszul", "book", "2", "4", "2")[0] == 0


def test_verify_all_runs_both_checks(capsys):
    code, out, _ = _run(capsys, "verify", "all", "path", "3")
    assert code == 0
    obj = json.loads(out)
    assert [c["name"] for c in obj["checks"]] == ["porter-hochster", "koszul"]


def test_verify_reports_mismatch(capsys, monkeypatch):
    real = cli.series.koszul_loop_series

    def skewed(K, n):
        s = real(K, n)
        return TruncSeries(n, s.coeffs[:5] + (s.coeffs[5] + 1,) + s.coeffs[6:])

    monkeypatch.setattr(cli.series, "koszul_loop_series", skewed)
    code, out, _ = _run(capsys, "verify", "koszul", "path", "2")
    assert code == 1
    obj = json.loads(out)
    assert obj["status"] == "fail"
    disc = obj["checks"][0]["first_discrepancy"]
    assert disc["degree"] == 5 and disc["oracle"] == disc["engine"] + 1


def test_verify_rejects_unsupported(capsys):
    code, _, err = _run(capsys, "verify", "porter-hochster", "planar-book", "2", "2")
    assert code == 2 and "paths only" in err


def test_exit_codes():
    # argparse rejects unknown families with its usual exit code
    with pytest.raises(SystemExit) as exc:
        cli.main(["build", "dodecahedron", "1"])
    assert exc.value.code == 2


def test_exit_invalid_params(capsys):
    assert _run(capsys, "build", "path", "0")[0] == 2
    assert _run(capsys, "build", "path")[0] == 2
    assert _run(capsys, "build", "path", "x")[0] == 2
    assert _run(capsys, "decompose", "path", "2", "3")[0] == 2


def test_exit_ceiling_too_small(capsys):
    code, _, err = _run(capsys, "decompose", "planar-book", "3", "2", "--max-dim", "2")
    assert code == 3 and "ceiling" in err


def test_exit_not_flag(capsys):
    code, _, err = _run(capsys, "series", "koszul", "cycle", "3")
    assert code == 4
    code, _, _ = _run(capsys, "verify", "koszul", "book", "1", "3", "2")
    assert code == 4


def test_exit_ground_size_cap(capsys):
    code, _, err = _run(capsys, "hochster", "path", "5", "--ceiling", "4")
    assert code == 5


def test_verify_book_off_family(capsys):
    # flag book without the doubled-length structure: no engine exists
    code, _, err = _run(capsys, "verify", "koszul", "book", "2", "5", "2")
    assert code == 2 and "planar" in err
