import json
import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from rp2 import cli, rootsys
from rp2.config import parse_chart, parse_depths, parse_levels, shipped_example
from rp2.errors import ConfigError, NumericError
from rp2.projlin import normalize_point
from rp2.render import level_conic, level_points
from rp2.rootsys import H
from rp2.svg import SvgDoc, fmt

GOLDEN = Path(__file__).parent / "golden"
FIGS = ["fig%d.json" % k for k in range(1, 7)]


def verb_of(name):
    return json.loads(shipped_example(name).read_text())["verb"]


def run(argv, capsys=None):
    code = cli.main(argv)
    if capsys is not None:
        return code, capsys.readouterr()
    return code


def write_config(tmp_path, data, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


# -- roots ------------------------------------------------------------------

def test_roots_check(capsys):
    code, out = run(["roots", "--check"], capsys)
    assert code == 0
    assert "alpha23 = [ 1,  2]" in out.out
    assert "FAIL" not in out.out
    assert out.out.count("[pass]") == len(rootsys.identity_checks())


def test_roots_json(capsys):
    code, out = run(["roots", "--json"], capsys)
    assert code == 0
    assert set(json.loads(out.out).values()) == {"pass"}


def test_roots_injected_fault_exits_3(monkeypatch, capsys):
    bad = dict(rootsys.ROOTS)
    bad[1, 2] = rootsys.Root((1, 2), (1, 1))
    monkeypatch.setattr(rootsys, "ROOTS", bad)
    code, out = run(["roots", "--check"], capsys)
    assert code == 3
    assert "[FAIL] root table matches a_i - a_j" in out.out


# -- tile -------------------------------------------------------------------

def test_tile_depth_8_report(tmp_path):
    rep = tmp_path / "r.json"
    js = tmp_path / "t.json"
    code = run(["tile", "--max-word-length", "8", "--chart", "1,1,1",
                "--out", str(tmp_path / "t.svg"), "--json", str(js), "--report", str(rep)])
    assert code == 0
    r = json.loads(rep.read_text())
    assert r["tiles"] == r["elements"] == r["distinct_tiles"] == 194
    assert r["product_orders"] == [4, 3, 3]
    assert r["ok"] and r["overlaps"] == []
    tiles = json.loads(js.read_text())
    assert len(tiles) == 194 and tiles[0]["word"] == ""


def test_tile_even_only(tmp_path):
    rep = tmp_path / "r.json"
    assert run(["tile", "--max-word-length", "6", "--even-only", "--out",
                str(tmp_path / "t.svg"), "--report", str(rep)]) == 0
    assert json.loads(rep.read_text())["tiles"] == 1 + 6 + 15 + 31


@pytest.mark.parametrize("depth", ["25", "-1"])
def test_tile_depth_out_of_range(depth, tmp_path, capsys):
    code, out = run(["tile", "--max-word-length", depth, "--out", str(tmp_path / "x.svg")], capsys)
    assert code == 2
    assert "max word length" in out.err
    assert not (tmp_path / "x.svg").exists()


# -- conics -----------------------------------------------------------------

def test_conics_levels(tmp_path):
    out = tmp_path / "c.svg"
    assert run(["conics", "--levels", "0.5,1,2", "--out", str(out), "--report",
                str(tmp_path / "r.json")]) == 0
    assert out.read_text().count("<polyline") == 3


@pytest.mark.parametrize("levels", ["", "1,-2", "a,b", "1,nan"])
def test_conics_bad_levels(levels, tmp_path):
    assert run(["conics", "--levels", levels, "--out", str(tmp_path / "c.svg")]) == 2


def test_level_conics():
    for c in (0.25, 1.0, 3.0):
        pts = level_points(c, 101)
        assert np.abs(pts[:, 0] * pts[:, 2] - c * pts[:, 1] ** 2).max() <= 1e-10
        moved = pts @ H(0.3).m.T
        assert np.abs(moved[:, 0] * moved[:, 2] - c * moved[:, 1] ** 2).max() <= 1e-10
    assert level_conic(1.0).contains(normalize_point((1, 1, 1)))


# -- bulge ------------------------------------------------------------------

def bulge_cfg(leaves, **extra):
    cfg = {"conic": "unit_circle", "basepoint": [0.0, -0.5], "leaves": leaves}
    cfg.update(extra)
    return cfg


def test_bulge_empty_lamination(tmp_path):
    rep = tmp_path / "r.json"
    cfg = write_config(tmp_path, bulge_cfg([]))
    assert run(["bulge", "--config", cfg, "--out", str(tmp_path / "b.svg"), "--report", str(rep)]) == 0
    r = json.loads(rep.read_text())
    assert r["deformations"][0]["c1_mismatch"] == 0
    assert r["deformations"][0]["arcs"] == 1


def test_bulge_single_diameter(tmp_path):
    rep = tmp_path / "r.json"
    leaf = {"p_angle_deg": 0, "q_angle_deg": 180, "weight": {"s": -0.1, "t": 0.2}}
    cfg = write_config(tmp_path, bulge_cfg([leaf]))
    assert run(["bulge", "--config", cfg, "--overlay-original", "--out",
                str(tmp_path / "b.svg"), "--report", str(rep)]) == 0
    d = json.loads(rep.read_text())["deformations"][0]
    assert d["convex"] and d["closed"] and d["arcs"] == 2 and d["c1_mismatch"] <= 1e-8
    assert "stroke-dasharray" in (tmp_path / "b.svg").read_text()


def test_bulge_crossing_chords(tmp_path, capsys):
    leaves = [{"p_angle_deg": 10, "q_angle_deg": 100}, {"p_angle_deg": 80, "q_angle_deg": 170}]
    rep = tmp_path / "r.json"
    cfg = write_config(tmp_path, bulge_cfg(leaves))
    code, out = run(["bulge", "--config", cfg, "--out", str(tmp_path / "b.svg"),
                     "--report", str(rep)], capsys)
    assert code == 2
    assert "crossing [0, 1]" in out.err
    assert json.loads(rep.read_text())["lamination"]["violations"][0]["indices"] == [0, 1]
    assert not (tmp_path / "b.svg").exists()


@pytest.mark.parametrize("cfg, fragment", [
    ({"leaves": [{"p_angle_deg": 10}]}, "finite number"),
    ({"leaves": [{"p_angle_deg": 10, "q_angle_deg": 50, "weight": [0, 1]}],
      "require_chamber": True}, "weight_outside_chamber"),
    ({"conic": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}, "real points"),
    ({"conic": [[1, 0, 0], [0, 1, 0], [0, 0, -1]], "leaves": [{"p_angle_deg": 1, "q_angle_deg": 2}]},
     "only defined on the unit circle"),
    ({"basepoint": [3.0, 0.0]}, "basepoint_outside"),
])
def test_bulge_validation_errors(cfg, fragment, tmp_path, capsys):
    path = write_config(tmp_path, cfg)
    code, out = run(["bulge", "--config", path, "--out", str(tmp_path / "b.svg")], capsys)
    assert code == 2
    assert fragment in out.err


def test_bulge_general_conic_endpoints(tmp_path):
    # ellipse x^2 + 4 y^2 = 1 with a chord between homogeneous endpoints
    cfg = {"conic": [[1, 0, 0], [0, 4, 0], [0, 0, -1]], "basepoint": [0.0, -0.2],
           "leaves": [{"p": [1, 0, 1], "q": [-1, 0, 1], "weight": {"s": 0.2, "t": 0.1}}]}
    rep = tmp_path / "r.json"
    assert run(["bulge", "--config", write_config(tmp_path, cfg), "--out",
                str(tmp_path / "b.svg"), "--report", str(rep)]) == 0
    assert json.loads(rep.read_text())["ok"]


# -- converge ---------------------------------------------------------------

def test_converge_shipped(tmp_path, capsys):
    rep = tmp_path / "c.json"
    code, out = run(["converge", "--config", str(shipped_example("converge.json")),
                     "--report", str(rep)], capsys)
    assert code == 0
    r = json.loads(rep.read_text())
    assert [e["depth"] for e in r["depths"]] == [1, 2, 3, 4, 5]
    assert out.out.count("hausdorff_to_previous") == 5
    assert all(e["hausdorff_to_previous"] > 0 for e in r["depths"])


def test_converge_depth_zero_to_one_moves(tmp_path, capsys):
    code, out = run(["converge", "--config", str(shipped_example("converge.json")),
                     "--depths", "0..1"], capsys)
    assert code == 0
    r = json.loads(out.out)
    assert r["depths"][0]["hausdorff_to_previous"] is None
    assert r["depths"][1]["hausdorff_to_previous"] > 1e-3


def test_converge_earthquake_weight_is_trivial(tmp_path, capsys):
    cfg = json.loads(shipped_example("converge.json").read_text())
    cfg["seed"]["weight"] = {"s": 0.7, "t": 0.0}
    code, out = run(["converge", "--config", write_config(tmp_path, cfg), "--depths", "0..3"], capsys)
    assert code == 0
    r = json.loads(out.out)
    assert all(e["hausdorff_to_previous"] <= 1e-8 for e in r["depths"][1:])


def test_converge_needs_generator(tmp_path):
    assert run(["converge", "--config", write_config(tmp_path, {"conic": "unit_circle"})]) == 2


# -- exit codes and parsing ---------------------------------------------------

def test_missing_config_is_io_error(tmp_path, capsys):
    code, out = run(["bulge", "--config", str(tmp_path / "missing.json")], capsys)
    assert code == 4
    assert "I/O error" in out.err


def test_invalid_json_is_validation_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["bulge", "--config", str(bad)]) == 2


def test_unwritable_output_is_io_error(tmp_path):
    assert run(["conics", "--out", str(tmp_path / "no" / "such" / "dir.svg")]) == 4


def test_parsers():
    assert parse_depths("1..5") == (1, 5)
    assert parse_depths(3) == (3, 3)
    for bad in ("5..1", "x", "1..99", True):
        with pytest.raises(ConfigError):
            parse_depths(bad)
    assert parse_levels("1, 2") == [1.0, 2.0]
    with pytest.raises(ConfigError):
        parse_chart("0,0,0")
    with pytest.raises(ConfigError):
        parse_chart([1, 0, 0], [[1, 0, 0], [0, 1, 0]])
    assert parse_chart([1, 1, 1], "equilateral").c == (1.0, 1.0, 1.0)


def test_svg_refuses_non_finite():
    doc = SvgDoc()
    doc.polyline([[0, 0], [1, float("nan")]])
    with pytest.raises(NumericError):
        doc.render()
    assert fmt(-0.0) == "0" and fmt(1 / 3) == "0.333333333333"


# -- shipped figures, determinism and goldens --------------------------------

def render_fig(name, outdir: Path):
    stem = Path(name).stem
    svg, rep = outdir / (stem + ".svg"), outdir / (stem + ".report.json")
    code = cli.main([verb_of(name), "--config", str(shipped_example(name)),
                     "--out", str(svg), "--report", str(rep)])
    return code, svg.read_bytes(), rep.read_bytes()


@pytest.mark.parametrize("name", FIGS)
def test_shipped_figure_matches_golden(name, tmp_path):
    code, svg, rep = render_fig(name, tmp_path)
    assert code == 0
    assert json.loads(rep)["verb"] == verb_of(name)
    stem = Path(name).stem
    gsvg, grep = GOLDEN / (stem + ".svg"), GOLDEN / (stem + ".report.json")
    if os.environ.get("RP2_UPDATE_GOLDEN"):
        gsvg.write_bytes(svg)
        grep.write_bytes(rep)
    assert svg == gsvg.read_bytes()
    assert rep == grep.read_bytes()


def test_separate_processes_are_byte_identical(tmp_path):
    outs = []
    for k in range(2):
        d = tmp_path / str(k)
        d.mkdir()
        subprocess.run([sys.executable, "-m", "rp2", "bulge", "--config",
                        str(shipped_example("fig4.json")), "--out", str(d / "f.svg"),
                        "--report", str(d / "f.json")], check=True)
        outs.append(((d / "f.svg").read_bytes(), (d / "f.json").read_bytes()))
    assert outs[0] == outs[1]
