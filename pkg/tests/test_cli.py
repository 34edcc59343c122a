import json
import xml.etree.ElementTree as ET

import pytest

from dedekind_kernels import characters
from dedekind_kernels.cli import RunConfig, build_parser, config_from_args, main
from dedekind_kernels.cyclotomic import CyclotomicNumber
from dedekind_kernels.formats import ScanTable, from_csv, from_json, to_csv, to_json, to_svg
from dedekind_kernels.kernel import all_pair_specs, scan_kernel


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_sum_examples(capsys):
    assert run(capsys, "sum", "--q1", "3", "--q2", "3", "--chi1", "2", "--chi2", "2", "--a", "2", "--c", "9")[:2] == (
        0, "2/3 (0.666666666667 + 0i)\n")
    assert run(capsys, "sum", "--chi1", "3.2", "--chi2", "3.2", "--a", "1", "--c", "9")[:2] == (0, "0\n")
    assert run(capsys, "sum", "--chi1", "3.2", "--chi2", "3.2", "--gamma", "2,1,9,5")[1].startswith("2/3")


def test_sum_complex_rendering(capsys):
    code, out, _ = run(capsys, "sum", "--chi1", "5.2", "--chi2", "5.3", "--a", "3", "--c", "25")
    assert code == 0 and out == "2/5 - 4/5*z4 (0.4 - 0.8i)\n"


@pytest.mark.parametrize("argv, needle", [
    (["--a", "2", "--c", "10"], "c not divisible by q1*q2"),
    (["--a", "3", "--c", "9"], "gcd"),
    (["--gamma", "1,1,1,1"], "determinant"),
    ([], "needs --gamma"),
])
def test_sum_bad_input(capsys, argv, needle):
    code, _, err = run(capsys, "sum", "--chi1", "3.2", "--chi2", "3.2", *argv)
    assert code == 2 and needle in err


def test_parity_and_primitivity_rejected(capsys):
    assert run(capsys, "sum", "--chi1", "5.2", "--chi2", "5.4", "--a", "1", "--c", "25")[0] == 2
    assert run(capsys, "sum", "--chi1", "9.8", "--chi2", "3.2", "--a", "1", "--c", "27")[0] == 2


def test_chars(capsys):
    code, out, _ = run(capsys, "chars", "--q1", "5")
    assert code == 0
    assert out.splitlines()[0] == "5.2\torder=4\tparity=-1"
    code, out, _ = run(capsys, "chars", "--q1", "3", "11", "--format", "json")
    labels = [r["label"] for r in json.loads(out)]
    assert labels[0] == "3.2" and len(labels) == 10


def test_scan_csv(tmp_path, capsys):
    path = tmp_path / "k55.csv"
    assert run(capsys, "scan", "--q1", "5", "--q2", "5", "--c-max", "250", "--out", str(path))[0] == 0
    text = path.read_text()
    lines = text.splitlines()
    assert lines[0] == "# dedekind-kernels 0.1.0"
    assert lines[1] == "# seed=0 c_max=250"
    assert lines[2] == "q1,q2,chi1,chi2,a,c,subgroup,predicted_by"
    assert "5,5,*,*,49,100,gamma0,reflection" in lines
    rows = [tuple(map(int, l.split(",")[4:6])) for l in lines[3:]]
    assert rows == sorted(rows, key=lambda t: (t[1], t[0]))


def test_scan_default_cmax_and_empty(capsys):
    code, out, _ = run(capsys, "scan", "--q1", "5", "--q2", "5", "--c-max", "20")
    assert code == 0 and out.splitlines()[-1] == "q1,q2,chi1,chi2,a,c,subgroup,predicted_by"
    cfg = RunConfig("scan", [3], [3])
    assert cfg.resolved_c_max() == 90


def test_scan_single_pair_json(capsys):
    code, out, _ = run(capsys, "scan", "--chi1", "3.2", "--chi2", "3.2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["chi1"] == "3.2" and doc["c_max"] == 90
    assert {"a": 1, "c": 9, "predicted_by": "a-equals-1"} in doc["points"]


def test_unwritable_output(capsys, tmp_path):
    bad = tmp_path / "missing" / "x.csv"
    assert run(capsys, "scan", "--q1", "3", "--q2", "3", "--out", str(bad))[0] == 3
    assert run(capsys, "plot", "--input", str(tmp_path / "nope.csv"))[0] == 3


def test_round_trip(tmp_path, capsys):
    res = scan_kernel(all_pair_specs(5, 5), 250)
    table = ScanTable.from_result(res, seed=0)
    back = from_csv(to_csv(table))
    assert back.point_set == res.point_set()
    assert [p.predicted_by for p in back.points] == [p.predicted_by for p in table.points]
    assert from_json(to_json(table)).point_set == res.point_set()
    # scan -> CSV -> plot equals plotting in memory
    csv_path, svg_path = tmp_path / "s.csv", tmp_path / "s.svg"
    run(capsys, "scan", "--q1", "5", "--q2", "5", "--c-max", "250", "--out", str(csv_path))
    run(capsys, "plot", "--input", str(csv_path), "--out", str(svg_path))
    assert svg_path.read_text() == to_svg(table)


def test_svg_shape():
    table = ScanTable.from_result(scan_kernel(all_pair_specs(5, 5), 250))
    root = ET.fromstring(to_svg(table).split("\n", 1)[1])
    assert root.get("width") == "800" and root.get("height") == "800"
    circles = root.findall(".//{http://www.w3.org/2000/svg}circle")
    assert len(circles) == len(table.points)
    texts = [t.text for t in root.iter("{http://www.w3.org/2000/svg}text")]
    assert "a" in texts and "c" in texts
    # a = 1 points share one x coordinate: the vertical line
    xs = {c.get("cx") for c, p in zip(circles, table.points) if p.a == 1}
    assert len(xs) == 1


def test_svg_empty_axes_only():
    svg = to_svg(ScanTable(5, 5, "*", "*", 20, "gamma1"))
    assert "<circle" not in svg and "<line" in svg


def test_plot_default_subgroup(capsys):
    code, out, _ = run(capsys, "plot", "--q1", "3", "--q2", "3")
    assert code == 0 and "gamma1" in out


def test_threads_config(monkeypatch):
    ns = build_parser().parse_args(["scan", "--q1", "3", "--q2", "3", "--threads", "auto"])
    assert config_from_args(ns).resolved_threads() >= 1
    cfg = RunConfig("scan", [3], [3])
    monkeypatch.setenv("DEDEKIND_THREADS", "3")
    assert cfg.resolved_threads() == 3
    monkeypatch.setenv("DEDEKIND_THREADS", "zero")
    with pytest.raises(ValueError):
        cfg.resolved_threads()


def test_orbits(capsys):
    code, out, _ = run(capsys, "orbits", "--q1", "5", "--q2", "11")
    doc = json.loads(out)
    assert code == 0 and [o["size"] for o in doc] == [8, 2, 4]
    code, out, _ = run(capsys, "orbits", "--q1", "5", "--q2", "5", "--c-max", "100")
    doc = json.loads(out)
    assert all(o["points"] for o in doc)


def test_verify_passes(capsys, tmp_path):
    out_path = tmp_path / "report.json"
    code, _, _ = run(capsys, "verify", "--q1", "3", "5", "--samples", "10", "--out", str(out_path))
    rep = json.loads(out_path.read_text())
    assert code == 0 and rep["passed"]
    checks = {r["check"] for r in rep["results"]}
    assert {"crossed-hom", "reciprocity-odd", "gauss-norm", "commutator"} <= checks


def test_verify_only_reciprocity_odd(capsys):
    code, out, _ = run(capsys, "verify", "--q1", "3", "--q2", "3", "--only", "reciprocity-odd",
                       "--only", "reciprocity-constant")
    rep = json.loads(out)
    assert code == 0 and [r["check"] for r in rep["results"]] == ["reciprocity-odd", "reciprocity-constant"]


def test_verify_detects_corrupted_gauss_sum(capsys, monkeypatch):
    real = characters.gauss_sum

    def corrupted(chi):
        return real(chi) * CyclotomicNumber.zeta(4)  # off by a unit

    monkeypatch.setattr(characters, "gauss_sum", corrupted)
    code, out, err = run(capsys, "verify", "--q1", "5", "--q2", "5", "--only", "gauss-norm")
    assert code == 1
    assert "gauss-norm" in err and "5.2" in err
    assert json.loads(out)["passed"] is False
