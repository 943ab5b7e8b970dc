import hashlib
import json
from pathlib import Path

import pytest

from diamondlab import golay
from diamondlab.cli import main

GOLDEN = Path(__file__).parent / "golden"


def read_golden(name: str) -> dict[str, str]:
    out = {}
    for ln in (GOLDEN / name).read_text().splitlines():
        digest, path = ln.split()
        out[path.removeprefix("./")] = digest
    return out


def sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def run_json(capsys, argv):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


class TestVerify:
    def test_theorem(self, capsys):
        code, rep = run_json(capsys, ["verify", "theorem"])
        assert code == 0
        assert rep["failures"] == [] and rep["counterexamples"] == []
        assert rep["ordinary_count"] == 560 and rep["interchange_only_count"] == 280
        assert rep["total"] == 840

    def test_geometry(self, capsys):
        code, rep = run_json(capsys, ["verify", "geometry"])
        assert code == 0
        assert (rep["lines"], rep["classes"], rep["class_size"]) == (35, 35, [24])
        assert rep["orthogonality"]["violations"] == []

    def test_all(self, capsys):
        code, rep = run_json(capsys, ["verify", "all"])
        assert code == 0 and rep["passed"]
        assert set(rep["reports"]) == {"group", "theorem", "geometry", "ring", "mog"}
        assert rep["reports"]["ring"]["matching_cut_definitions"] == []

    def test_out_file(self, tmp_path, capsys):
        out = tmp_path / "r" / "group.json"
        assert main(["verify", "group", "--out", str(out)]) == 0
        assert json.loads(out.read_text())["closure_size"] == 322_560
        assert capsys.readouterr().out == ""

    def test_corrupted_golay_data(self, tmp_path, monkeypatch, capsys):
        rows = golay.GOLAY_FILE.read_text().splitlines()
        i = next(k for k, ln in enumerate(rows) if ln and not ln.startswith("#"))
        rows[i] = ("1" if rows[i][5] == "0" else "0").join((rows[i][:5], rows[i][6:]))
        bad = tmp_path / "golay.txt"
        bad.write_text("\n".join(rows) + "\n")
        monkeypatch.setattr(golay, "GOLAY_FILE", bad)
        code, rep = run_json(capsys, ["verify", "all"])
        assert code == 1 and not rep["passed"]
        checks = {f["check"] for f in rep["failures"]}
        assert checks & {"self-orthogonality", "weight distribution"}

    def test_unwritable_output(self, tmp_path, capsys):
        blocker = tmp_path / "file"
        blocker.write_text("")
        assert main(["verify", "group", "--out", str(blocker / "x.json")]) == 1
        assert str(blocker) in capsys.readouterr().err


class TestUsage:
    @pytest.mark.parametrize("argv", [[], ["verify"], ["verify", "nonsense"], ["census", "cuts"],
                                      ["render", "--subject", "pattern"]])
    def test_argparse_errors(self, argv):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 2

    @pytest.mark.parametrize("ref", ["31310202", "orbit:999", "313102023131020X"])
    def test_bad_pattern(self, ref, tmp_path, capsys):
        assert main(["render", "--subject", "pattern", "--input", ref, "--out", str(tmp_path / "x.svg")]) == 2
        assert "error" in capsys.readouterr().err

    def test_bad_diagram(self, tmp_path):
        assert main(["render", "--subject", "diagram", "--input", "r2", "--out", str(tmp_path / "x.svg")]) == 2

    def test_missing_input(self, tmp_path):
        assert main(["render", "--subject", "pattern", "--out", str(tmp_path / "x.svg")]) == 2


class TestCensus:
    def test_constant_relation(self, capsys):
        code, rep = run_json(capsys, ["census", "cuts", "--definition", "ConstantRelation"])
        assert code == 0
        assert rep == {"definition": "ConstantRelation", "count": 16384,
                       "equals_affine_set": False, "affine_satisfying": 1024}

    def test_scope(self, capsys):
        _, rep = run_json(capsys, ["census", "cuts", "--definition", "AllContrast", "--scope", "vertical"])
        assert rep["count"] == 2 ** 20


class TestGolden:
    def test_export(self, tmp_path):
        assert main(["export", "--out", str(tmp_path)]) == 0
        written = {str(p.relative_to(tmp_path)): sha256(p) for p in tmp_path.rglob("*.json")}
        assert written == read_golden("export.sha256")

    def test_export_cross_references(self, tmp_path):
        main(["export", "--out", str(tmp_path)])
        orbit = set(json.loads((tmp_path / "orbit.json").read_text())["patterns"])
        structures = json.loads((tmp_path / "structures.json").read_text())["structures"]
        assert len(orbit) == 840 and len(structures) == 35
        assert {s for rec in structures for s in rec["patterns"]} == orbit

    @pytest.mark.parametrize("subject, ref", [("pattern", "D"), ("diagram", "all"), ("structure-plate", None),
                                              ("orbit-sheet", None), ("mog-sheet", None)])
    def test_render(self, subject, ref, tmp_path):
        out = tmp_path / f"{subject}.svg"
        argv = ["render", "--subject", subject, "--out", str(out)]
        if ref:
            argv += ["--input", ref]
        assert main(argv) == 0
        assert sha256(out) == read_golden("render.sha256")[out.name]

    def test_render_twice_identical(self, tmp_path):
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        for out in (a, b):
            main(["render", "--subject", "pattern", "--input", "orbit:17", "--out", str(out)])
        assert a.read_bytes() == b.read_bytes()
