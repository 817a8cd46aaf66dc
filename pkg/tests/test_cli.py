import json
import os
import shutil
import subprocess
import sys

import pytest

from mgk.cli import main
from mgk.mgf import read_mgf, write_mgf
from mgk.model import build_graph

from conftest import CORPUS, rhombus, triangle

MIRROR = [[1.0, 0.0], [0.0, -1.0]]


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def put(path, g):
    path.write_text(write_mgf(g))
    return str(path)


def test_parse_fig9(tmp_path, capsys):
    code, out, _ = run(["parse", str(CORPUS / "fig09.tikz"), "--out", str(tmp_path)], capsys)
    assert code == 0
    files = sorted(tmp_path.glob("*.mgf"))
    assert [f.name for f in files] == ["fig09-0.mgf", "fig09-1.mgf"]
    assert read_mgf(files[0].read_text()).n_vertices == 22


def test_parse_triangle(tmp_path, capsys):
    src = tmp_path / "tri.tikz"
    src.write_text(r"\draw (0,0) -- (2,0) -- (1,1.7320508075688772) -- cycle;" "\n")
    outdir = tmp_path / "out"
    outdir.mkdir()
    code, _, _ = run(["parse", str(src), "--out", str(outdir)], capsys)
    assert code == 0
    assert len(list(outdir.glob("*.mgf"))) == 1


def test_parse_empty_file(tmp_path, capsys):
    src = tmp_path / "empty.tikz"
    src.write_text("")
    code, _, err = run(["parse", str(src), "--out", str(tmp_path)], capsys)
    assert code == 2
    assert "no segments" in err


def test_missing_input(tmp_path, capsys):
    code, _, err = run(["verify", str(tmp_path / "nope.mgf")], capsys)
    assert code == 2 and err


def test_verify_exit_codes(tmp_path, corpus_refined, capsys):
    good = put(tmp_path / "fig2.mgf", corpus_refined["fig02/0"])
    code, out, _ = run(["verify", good], capsys)
    assert code == 0
    assert json.loads(out)["verdict"] == "pass"
    bad = put(tmp_path / "bad.mgf", build_graph([(0, 0), (1.1, 0), (0.5, 0.8)], [(0, 1), (1, 2), (0, 2)]))
    code, out, _ = run(["verify", bad, "--allow-disconnected"], capsys)
    assert code == 1
    assert json.loads(out)["verdict"] == "fail"


def test_refine_writes_mgf(tmp_path, corpus_components, capsys):
    src = put(tmp_path / "f11.mgf", corpus_components["fig11/0"])
    dest = tmp_path / "f11-out.mgf"
    code, out, _ = run(["refine", src, "--mgf-out", str(dest)], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["converged"] is True
    g = read_mgf(dest.read_text())
    assert max(abs(g.edge_lengths() - 1.0)) <= 1e-9


def test_refine_infeasible_is_usage_error(tmp_path, capsys):
    src = put(tmp_path / "far.mgf", build_graph([(0, 0), (2, 0)], [(0, 1)]))
    code, _, _ = run(["refine", src], capsys)
    assert code == 2


def test_rigidity_rhombus(tmp_path, capsys):
    src = put(tmp_path / "rh.mgf", rhombus())
    code, out, _ = run(["rigidity", src, "--basis"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["classification"] == "flexible" and rep["internal_dof"] == 1
    code, _, _ = run(["rigidity", src, "--expect", "rigid"], capsys)
    assert code == 1


def test_dedup_mirror(tmp_path, corpus_refined, capsys):
    g = corpus_refined["fig09/0"]
    a = put(tmp_path / "a.mgf", g)
    b = put(tmp_path / "b.mgf", g.transformed(MIRROR, (3.0, 0.0)))
    code, out, _ = run(["dedup", a, b], capsys)
    assert code == 0
    classes = json.loads(out)["classes"]
    assert len(classes) == 1 and len(classes[0]["members"]) == 2
    assert classes[0]["alignments"][b]["reflection"] is True


def test_render(tmp_path, capsys):
    src = put(tmp_path / "tri.mgf", triangle())
    out = tmp_path / "tri.svg"
    code, _, _ = run(["render", src, "--out", str(out)], capsys)
    assert code == 0
    assert out.read_text().count("<line") == 3


def test_catalog_empty_dir(tmp_path, capsys):
    code, out, _ = run(["catalog", str(tmp_path)], capsys)
    assert code == 0
    assert "not embedded" in out


def test_catalog_broken_file(tmp_path, capsys):
    shutil.copy(CORPUS / "fig11.tikz", tmp_path)
    (tmp_path / "fig99.tikz").write_text("% no drawing here\n")
    code, out, _ = run(["catalog", str(tmp_path), "--json"], capsys)
    assert code == 1
    report = json.loads(out)
    assert any("fig99" in f["source"] for f in report["failures"])


def test_catalog_missing_dir(tmp_path, capsys):
    code, _, _ = run(["catalog", str(tmp_path / "missing")], capsys)
    assert code == 2


def test_catalog_json_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["catalog", "--out", str(a)], capsys)[0] == 0
    assert run(["catalog", "--out", str(b)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_catalog_env_corpus(tmp_path):
    shutil.copy(CORPUS / "fig09.tikz", tmp_path)
    env = dict(os.environ, MGK_CORPUS=str(tmp_path))
    proc = subprocess.run(
        [sys.executable, "-m", "mgk.cli", "catalog", "--json"], env=env, capture_output=True, text=True
    )
    assert proc.returncode == 0, proc.stderr
    ids = [e["id"] for e in json.loads(proc.stdout)["graphs"]]
    assert ids == ["fig09/0", "fig09/1"]


@pytest.mark.parametrize("argv", [[], ["bogus"], ["verify"]])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
