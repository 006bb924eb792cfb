import json

import pytest

from cdindex.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def gen(tmp_path, capsys, *argv):
    path = tmp_path / ("_".join(argv).replace(":", "") + ".json")
    code, _, err = run(capsys, "gen", *argv, "--out", str(path))
    assert code == 0, err
    return str(path)


def test_gen_counts(tmp_path, capsys):
    path = gen(tmp_path, capsys, "polygon", "5")
    data = json.loads(open(path).read())
    assert len(data["elements"]) == 12

    path = gen(tmp_path, capsys, "polygon", "4", "--pyramid")
    data = json.loads(open(path).read())
    assert len(data["elements"]) == 20


def test_gen_barycentric_stdout(capsys):
    code, out, _ = run(capsys, "gen", "simplex_fan", "3", "--barycentric")
    assert code == 0
    data = json.loads(out)
    assert data["rank"] == 3
    # chains of the tetrahedron fan: 14 + 36 + 24 proper elements
    assert len(data["elements"]) == 14 + 36 + 24 + 2


def test_gen_bad_params(capsys):
    code, _, err = run(capsys, "gen", "polygon", "2")
    assert code == 2 and "polygon" in err


def test_compute_methods(tmp_path, capsys):
    path = gen(tmp_path, capsys, "polygon", "4", "--pyramid")
    for method in ("flag", "stanley", "operator"):
        code, out, _ = run(capsys, "compute", "--input", path, "--method", method)
        assert code == 0 and out.strip() == "c^3 + 3*cd + 3*dc"

    code, out, _ = run(capsys, "compute", "--input", path, "--method", "all")
    assert code == 0 and out.strip().endswith("MATCH")


def test_compute_polygon7(tmp_path, capsys):
    path = gen(tmp_path, capsys, "polygon", "7")
    code, out, _ = run(capsys, "compute", "--input", path, "--method", "flag")
    assert code == 0 and out.strip() == "c^2 + 5*d"


def test_compute_json(tmp_path, capsys):
    path = gen(tmp_path, capsys, "polygon", "4")
    code, out, _ = run(capsys, "compute", "--input", path, "--method", "flag", "--json")
    data = json.loads(out)
    assert data == {"cd_index": "c^2 + 2*d", "method": "flag",
                    "terms": {"cc": 1, "d": 2}}


def test_compute_non_eulerian_exit3(tmp_path, capsys):
    path = gen(tmp_path, capsys, "chain", "2")
    code, _, err = run(capsys, "compute", "--input", path)
    assert code == 3 and "not Eulerian" in err


def test_check_exit_codes(tmp_path, capsys):
    p4 = gen(tmp_path, capsys, "polygon", "4")
    code, out, _ = run(capsys, "check", "--input", p4, "--what", "gorenstein-star")
    assert code == 0
    assert json.loads(out)["gorenstein_star"] is True

    c2 = gen(tmp_path, capsys, "chain", "2")
    code, out, _ = run(capsys, "check", "--input", c2, "--what", "eulerian")
    assert code == 1
    assert json.loads(out) == {"eulerian": False}

    code, out, _ = run(capsys, "check", "--input", p4, "--what", "duality")
    assert code == 0 and json.loads(out)["duality"] is True

    code, out, _ = run(capsys, "check", "--input", p4, "--what", "quasi-convex")
    assert code == 0 and json.loads(out)["quasi_convex"] is True


def test_check_quasi_convex_on_partial_polygon(tmp_path, capsys):
    from conftest import polygon_minus_facet

    path = tmp_path / "pm.json"
    path.write_text(polygon_minus_facet(4).dumps())
    code, out, _ = run(capsys, "check", "--input", str(path), "--what", "quasi-convex")
    assert code == 0 and json.loads(out)["quasi_convex"] is True


def test_shell_table(tmp_path, capsys):
    path = gen(tmp_path, capsys, "polygon", "4")
    code, out, _ = run(
        capsys, "shell", "--input", path, "--order", "f1", "f2", "f3", "f4"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1] == "c^2 + 2*d"
    assert "f = 0  g = 1" in lines[0]
    assert "f = c  g = 0" in lines[2]


def test_shell_pi(tmp_path, capsys):
    path = gen(tmp_path, capsys, "polygon", "4", "--pyramid")
    code, out, _ = run(
        capsys,
        "shell", "--input", path,
        "--pi", "b:f1", "b:f2", "a:r3", "a:r4", "b:f4",
    )
    assert code == 0 and out.strip() == "c^3 + 3*cd + 3*dc"


def test_shell_invalid_pi_exit5(tmp_path, capsys):
    path = gen(tmp_path, capsys, "polygon", "4", "--pyramid")
    code, _, err = run(
        capsys, "shell", "--input", path, "--pi", "b:f1", "b:f2", "b:f3", "b:f4"
    )
    assert code == 5 and err.startswith("error:")
    # with the apex covered but the cycle still open, the Gorenstein* check fires
    code, _, err = run(
        capsys, "shell", "--input", path,
        "--pi", "b:f1", "b:f2", "b:f3", "a:r1", "a:r2",
    )
    assert code == 5 and "Gorenstein" in err


def test_shell_invalid_order_exit5(tmp_path, capsys):
    path = gen(tmp_path, capsys, "polygon", "4")
    code, _, err = run(
        capsys, "shell", "--input", path, "--order", "f1", "f3", "f2", "f4"
    )
    assert code == 5 and "step 2" in err


def test_compute_trace(tmp_path, capsys):
    path = gen(tmp_path, capsys, "polygon", "3")
    code, out, _ = run(
        capsys, "compute", "--input", path, "--method", "operator", "--trace"
    )
    assert code == 0
    assert out.startswith("cc -> 1")
    assert "d -> 1" in out
    assert "level 0: _bot=1" in out

    code, out, _ = run(
        capsys, "compute", "--input", path, "--method", "operator",
        "--trace", "--json",
    )
    data = json.loads(out)
    words = {rec["word"]: rec for rec in data["monomials"]}
    assert words["d"]["coefficient"] == 1
    assert [snap["level"] for snap in words["cc"]["trace"]] == [2, 1, 0]

    code, _, err = run(
        capsys, "compute", "--input", path, "--method", "flag", "--trace"
    )
    assert code == 2


def test_report_polygons(capsys):
    code, out, _ = run(capsys, "report", "--corpus", "polygons:3..12")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 11  # header + 10 rows
    for i, line in enumerate(lines[1:], start=3):
        assert f"c^2 + {i - 2}*d" in line or (i == 3 and "c^2 + d" in line)
        assert "yes" in line


def test_report_marks_non_eulerian(capsys):
    code, out, _ = run(capsys, "report", "--corpus", "polygons:3..4,chain:2")
    assert code == 0
    assert "non-Eulerian" in out


def test_report_json_deterministic(capsys):
    code, out1, _ = run(capsys, "report", "--corpus", "polygons:3..5", "--json")
    assert code == 0
    code, out2, _ = run(capsys, "report", "--corpus", "polygons:3..5", "--json")
    assert out1 == out2
    rows = json.loads(out1)
    assert all(r["agree"] and r["nonneg"] and r["gorenstein_star"] for r in rows)


def test_report_bad_corpus(capsys):
    code, _, err = run(capsys, "report", "--corpus", "dodecahedra:1..2")
    assert code == 2


def test_max_elements_cap(tmp_path, capsys, monkeypatch):
    path = gen(tmp_path, capsys, "polygon", "30")
    monkeypatch.setenv("CDINDEX_MAX_ELEMENTS", "10")
    code, _, err = run(capsys, "compute", "--input", path)
    assert code == 2 and "cap" in err


def test_gen_deterministic(tmp_path, capsys):
    a = gen(tmp_path, capsys, "cube_fan", "3")
    text_a = open(a).read()
    b = tmp_path / "again.json"
    code, _, _ = run(capsys, "gen", "cube_fan", "3", "--out", str(b))
    assert code == 0
    assert open(b).read() == text_a


def test_unreadable_input(capsys):
    code, _, err = run(capsys, "compute", "--input", "/nonexistent.json")
    assert code == 2
