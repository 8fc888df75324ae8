import json
import subprocess
import sys

import pytest

from reflexkit import cli, enumerator, fileio
from reflexkit.corpus import cross_polytope, free_sum, hexagon, smooth_simplex
from reflexkit.fileio import ParseError, emit, import_polytopes, parse
from reflexkit.polytope import hull

P2_FILE = "# projective plane\n3 2\n1 0\n0 1\n-1 -1\n"
DUAL_FILE = "3 2\n2 -1\n-1 2\n-1 -1\n"


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, text, name="in.txt"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_parse_emit_round_trip():
    polys = [smooth_simplex(2), cross_polytope(3), free_sum(hexagon(), smooth_simplex(1))]
    text = emit(polys, comment="three\npolytopes")
    back = parse(text)
    assert back == [list(P.vertices) for P in polys]
    assert [hull(v) for v in back] == polys


def test_lenient_import_transposes():
    cols = "2 3\n1 0 -1\n0 1 -1\n"
    assert import_polytopes(cols) == [[(1, 0), (0, 1), (-1, -1)]]
    assert import_polytopes(P2_FILE) == parse(P2_FILE)
    with pytest.raises(ParseError):
        parse(cols)
    with pytest.raises(ParseError):
        import_polytopes("2 2\n1 0\n0 1\n")


@pytest.mark.parametrize("text, line", [
    ("3 2\n1 0\n0 1\n", 3),
    ("3 2\n1 0\n0 x\n-1 -1\n", 3),
    ("3 2\n1 0 0\n0 1\n-1 -1\n", 2),
    ("# c\n\n3\n1 0\n", 3),
    ("3 2\n1 0\n\n-1 -1\n", 3),
])
def test_parse_errors_report_lines(text, line):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert exc.value.line == line


def test_exact_json():
    from fractions import Fraction
    assert fileio.exact(Fraction(1, 3)) == "1/3"
    assert fileio.exact(Fraction(4, 2)) == 2
    assert fileio.exact([Fraction(1, 2), 3]) == ["1/2", 3]


def test_analyze_p2(tmp_path, capsys):
    code, out, _ = run(["analyze", write(tmp_path, P2_FILE)], capsys)
    assert code == 0
    (rep,) = json.loads(out)
    assert rep["schema"] == 1 and rep["dimension"] == 2
    assert rep["flags"] == {"reflexive": True, "simplicial": True, "smooth": True}
    assert rep["delta"] == 2 and rep["picard"] == 1
    assert rep["minkowski"] == {"coefficients": [3, 3, 3], "residual": [0, 0]}
    assert rep["pseudo_index"] == {"upper_bound": 3, "min_invariant_degree": 3, "exact": True}
    assert rep["theorems"]["equality_ii"] and not rep["theorems"]["equality_i"]
    assert rep["classification"] == "projective_power(2,1)"
    assert rep["decomposition"]["delta"] == 2


def test_analyze_dual_triangle(tmp_path, capsys):
    code, out, _ = run(["analyze", write(tmp_path, DUAL_FILE)], capsys)
    (rep,) = json.loads(out)
    assert code == 0
    assert not rep["flags"]["smooth"]
    assert sorted(map(abs, rep["facet_determinants"])) == [3, 3, 3]
    assert rep["pseudo_index"] == {"upper_bound": 3, "min_invariant_degree": 1, "exact": False}
    assert rep["minkowski"]["coefficients"] == [1, 1, 1]
    assert rep["classification"] == "other"


def test_analyze_non_reflexive(tmp_path, capsys):
    code, out, _ = run(["analyze", write(tmp_path, "3 2\n2 0\n0 2\n-2 -2\n")], capsys)
    (rep,) = json.loads(out)
    assert code == 0 and not rep["flags"]["reflexive"] and rep["delta"] is None


def test_dual_command(tmp_path, capsys):
    code, out, _ = run(["dual", write(tmp_path, P2_FILE)], capsys)
    assert code == 0
    assert sorted(parse(out)[0]) == sorted([(2, -1), (-1, 2), (-1, -1)])


def test_mori_text(tmp_path, capsys):
    code, out, _ = run(["mori", "--text", write(tmp_path, DUAL_FILE)], capsys)
    assert code == 0
    rows = [line for line in out.splitlines() if not line.startswith(("#", "facetA"))]
    assert len(rows) == 3
    assert all(line.split()[-2:] == ["1/3", "1"] for line in rows)


def test_mori_json(tmp_path, capsys):
    code, out, _ = run(["mori", write(tmp_path, P2_FILE)], capsys)
    doc = json.loads(out)
    assert code == 0
    assert [w["degree"] for w in doc["polytopes"][0]["walls"]] == [3, 3, 3]


def test_decompose(tmp_path, capsys):
    text = emit([cross_polytope(3), free_sum(smooth_simplex(1), smooth_simplex(2))])
    code, out, _ = run(["decompose", write(tmp_path, text)], capsys)
    first, second = json.loads(out)
    assert code == 0
    assert first["decomposition"]["delta"] == 1 and len(first["free_sum_factors"]) == 3
    assert second["decomposition"] is None and "explanation" in second
    assert len(second["free_sum_factors"]) == 2


def test_canon_invariant(tmp_path, capsys):
    code, out, _ = run(["canon", write(tmp_path, "3 2\n1 0\n1 1\n-2 -1\n")], capsys)
    _, ref, _ = run(["canon", write(tmp_path, P2_FILE, "p2.txt")], capsys)
    assert code == 0
    assert json.loads(out)[0]["matrix"] == json.loads(ref)[0]["matrix"]


def test_exit_codes(tmp_path, capsys, monkeypatch):
    assert run(["verify", write(tmp_path, P2_FILE)], capsys)[0] == cli.EXIT_OK
    code, _, err = run(["analyze", write(tmp_path, "3 2\n1 0\n", "bad.txt")], capsys)
    assert code == cli.EXIT_PARSE and json.loads(err)["error"] == "parse"
    code, _, err = run(["mori", write(tmp_path, "3 2\n2 0\n0 2\n-2 -2\n", "nr.txt")], capsys)
    assert code == cli.EXIT_PRECONDITION and json.loads(err)["reason"] == "not_reflexive"
    code, _, err = run(["analyze", write(tmp_path, "3 2\n0 0\n1 1\n2 2\n", "flat.txt")], capsys)
    assert code == cli.EXIT_PRECONDITION
    # a broken Minkowski computation must surface as a violation
    monkeypatch.setattr(enumerator, "minkowski_relation", lambda P: ((1,) * P.n_vertices, (1,) * P.dim))
    code, out, _ = run(["verify", write(tmp_path, P2_FILE)], capsys)
    assert code == cli.EXIT_VIOLATION
    assert json.loads(out)["violations"]


def test_quiet(tmp_path, capsys):
    code, out, _ = run(["analyze", "--quiet", write(tmp_path, P2_FILE)], capsys)
    assert code == 0 and out == ""


def test_byte_identical_across_runs_and_jobs(tmp_path, capsys):
    text = emit([smooth_simplex(2), cross_polytope(3), hexagon(), free_sum(hexagon(), hexagon())])
    path = write(tmp_path, text)
    outs = set()
    for jobs in ("1", "1", "2"):
        for cmd in (["analyze"], ["canon"], ["verify", "--images", "3"]):
            code, out, _ = run(cmd + ["--jobs", jobs, path], capsys)
            assert code == 0
            outs.add((tuple(cmd), out))
    assert len(outs) == 3


def test_enumerate2d_out_and_verify(tmp_path, capsys):
    out_dir = tmp_path / "classes"
    code, out, _ = run(["enumerate2d", "--box", "3", "--out", str(out_dir)], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["class_count"] == 16 and doc["seven_vertex_probe"] == []
    files = sorted(out_dir.glob("class_*.txt"))
    assert len(files) == 16
    corpus = tmp_path / "all.txt"
    corpus.write_text("\n".join(f.read_text() for f in files))
    code, out, _ = run(["verify", str(corpus)], capsys)
    assert code == 0 and json.loads(out)["class_count"] == 16
    summary = json.loads((out_dir / "summary.json").read_text())
    assert summary["checked"] == 16


def test_console_entry_point(tmp_path):
    path = write(tmp_path, P2_FILE)
    res = subprocess.run([sys.executable, "-m", "reflexkit.cli", "canon", path],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)[0]["matrix"]
