import json

import numpy as np
import pytest

from coxlim import cli, instances


def write_input(tmp_path, name, payload=None):
    payload = payload if payload is not None else instances.input_dict(name)
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps(payload))
    return str(path)


class TestAnalyze:
    def test_rank4_report(self, tmp_path, capsys):
        path = write_input(tmp_path, "rank4_with_cusps")
        assert cli.main(["analyze", path]) == 0
        out = capsys.readouterr().out
        assert "signature: (3,1)" in out
        assert "action: with cusps" in out
        assert "cusp ranks: [3]" in out
        # The rank-3 affine subsystem {1,2,3} defeats the rank >= 3
        # subsystem hypothesis; the honest report says so.
        assert "hypothesis" in out and "fails" in out
        assert "{1,2,3}: affine" in out

    def test_reducible_rejected(self, tmp_path, capsys):
        path = write_input(tmp_path, "bad", {
            "coxeter_matrix": [[1, 2], [2, 1]],
        })
        assert cli.main(["analyze", path]) == 2
        assert "reducible" in capsys.readouterr().err

    def test_bad_weight_rejected(self, tmp_path, capsys):
        path = write_input(tmp_path, "bad", {
            "coxeter_matrix": [[1, 0], [0, 1]],
            "infinity_weights": {"1,2": -0.5},
        })
        assert cli.main(["analyze", path]) == 2
        assert "must be <= -1" in capsys.readouterr().err

    def test_wrong_signature_rejected(self, tmp_path, capsys):
        path = write_input(tmp_path, "bad", {
            "coxeter_matrix": [[1, 0], [0, 1]],
            "infinity_weights": {"1,2": -1.0},
        })
        assert cli.main(["analyze", path]) == 2

    def test_gram_roundtrip_bit_exact(self, tmp_path, capsys):
        path = write_input(tmp_path, "rank4_with_cusps")
        out_path = tmp_path / "report.json"
        assert cli.main(["analyze", path, "--out", str(out_path)]) == 0
        capsys.readouterr()
        report = json.loads(out_path.read_text())
        reread = cli.load_system(str(out_path))
        original = cli.load_system(path)
        assert np.array_equal(reread.gram, original.gram)
        assert report["action"] == "with_cusps"
        assert report["ct_hypothesis"] is False

    def test_consistency_check_between_forms(self, tmp_path, capsys):
        doc = instances.input_dict("rank3_cusped")
        doc["gram_matrix"] = [[1.0, -1.0, -0.5],
                              [-1.0, 1.0, 0.0],
                              [-0.5, 0.0, 1.0]]
        path = write_input(tmp_path, "ok", doc)
        assert cli.main(["analyze", path]) == 0
        capsys.readouterr()
        other = -float(np.cos(np.pi / 4))  # valid entry, wrong bond order
        doc["gram_matrix"][0][2] = other
        doc["gram_matrix"][2][0] = other
        path = write_input(tmp_path, "mismatch", doc)
        assert cli.main(["analyze", path]) == 2
        assert "disagree" in capsys.readouterr().err

    def test_unreadable_file(self, capsys):
        assert cli.main(["analyze", "/nonexistent/x.json"]) == 2


class TestRootsCommand:
    def test_depth_zero_rows(self, tmp_path, capsys):
        path = write_input(tmp_path, "triangle_237")
        assert cli.main(["roots", path, "--depth", "0"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["points"]) == 3
        assert all(rec["depth"] == 0 for rec in payload["points"])

    def test_rank2_depth10_has_22_rows(self, tmp_path, capsys):
        path = write_input(tmp_path, "rank2_lorentzian")
        assert cli.main(["roots", path, "--depth", "10"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["points"]) == 22

    def test_csv_shape_and_determinism(self, tmp_path):
        path = write_input(tmp_path, "rank3_cusped")
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        for out in (out1, out2):
            assert cli.main(["roots", path, "--depth", "4",
                             "--out", str(out), "--format", "csv"]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        header = out1.read_text().splitlines()[0]
        assert header == "depth,word,coord_1,coord_2,coord_3,q"

    def test_csv_floats_roundtrip(self, tmp_path):
        path = write_input(tmp_path, "rank2_lorentzian")
        out = tmp_path / "pts.csv"
        assert cli.main(["roots", path, "--depth", "3",
                         "--out", str(out), "--format", "csv"]) == 0
        system = cli.load_system(path)
        for line in out.read_text().splitlines()[1:]:
            fields = line.split(",")
            coords = np.array([float(v) for v in fields[2:4]])
            q = float(fields[4])
            from coxlim import coxeter
            assert abs(float(coxeter.quad_form(system, coords)) - q) <= 1e-15


class TestLimitsetCommand:
    def test_depth_zero_single_row(self, tmp_path, capsys):
        path = write_input(tmp_path, "triangle_237")
        assert cli.main(["limitset", path, "--depth", "0"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["points"]) == 1
        assert payload["points"][0]["word"] == "e"

    def test_words_act_as_claimed(self, tmp_path, capsys):
        from coxlim import coxeter
        path = write_input(tmp_path, "rank2_lorentzian")
        assert cli.main(["limitset", path, "--depth", "5"]) == 0
        payload = json.loads(capsys.readouterr().out)
        system = cli.load_system(path)
        for rec in payload["points"]:
            letters = (() if rec["word"] == "e" else
                       tuple(int(t) - 1 for t in rec["word"].split()))
            pt = coxeter.normalized_act(system, letters, system.base_point)
            assert np.allclose(pt, rec["coords"], atol=1e-9)
            assert len(letters) == rec["depth"]


class TestDistCommand:
    def test_two_routes_printed_equal(self, tmp_path, capsys):
        from coxlim import hilbert
        path = write_input(tmp_path, "triangle_237")
        system = cli.load_system(path)
        o = system.base_point
        rng = np.random.default_rng(0)
        y = hilbert.sample_interior(system, 1, rng)[0]
        xs = ",".join(repr(float(v)) for v in o)
        ys = ",".join(repr(float(v)) for v in y)
        assert cli.main(["dist", path, "--x", xs, "--y", ys]) == 0
        lines = capsys.readouterr().out.splitlines()
        d1 = float(lines[0].split(":")[1])
        d2 = float(lines[1].split(":")[1])
        assert abs(d1 - d2) <= 1e-9 and d1 > 0


class TestCtCommand:
    def test_not_applicable_message(self, tmp_path, capsys):
        path = write_input(tmp_path, "triangle_237")
        assert cli.main(["ct", path]) == 0
        assert "case (i) not applicable" in capsys.readouterr().out

    def test_decay_columns_monotone(self, tmp_path, capsys):
        path = write_input(tmp_path, "rank3_cusped")
        assert cli.main(["ct", path, "--depth", "12",
                         "--m-list", "10,100,1000", "--target", "50"]) == 0
        out = capsys.readouterr().out
        sup_line = next(l for l in out.splitlines() if l.startswith("sup"))
        sups = [float(v) for v in sup_line.split()[1:]]
        assert sups[0] >= sups[1] >= sups[2]
        assert "collision at bond (1, 2)" in out

    def test_depth_zero_table(self, tmp_path, capsys):
        path = write_input(tmp_path, "rank3_cusped")
        assert cli.main(["ct", path, "--depth", "0", "--m-list", "10",
                         "--target", "1"]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[1].startswith("0 0")


class TestRenderCommand:
    def test_rank3_svg(self, tmp_path, capsys):
        path = write_input(tmp_path, "rank3_convex")
        out = tmp_path / "plot.svg"
        assert cli.main(["render", path, "--depth", "6", "--out", str(out)]) == 0
        text = out.read_text()
        assert text.startswith("<?xml")
        assert "<polygon" in text and "<circle" in text

    def test_rank4_projection(self, tmp_path, capsys):
        path = write_input(tmp_path, "rank4_with_cusps")
        out = tmp_path / "plot4.svg"
        assert cli.main(["render", path, "--depth", "4", "--out", str(out),
                         "--projection", "0,2"]) == 0
        assert "<circle" in out.read_text()

    def test_rank5_rejected(self, tmp_path, capsys):
        weights = {f"{i},{j}": -1.2 for i in range(1, 6)
                   for j in range(i + 1, 6)}
        payload = {
            "coxeter_matrix": [[1 if i == j else 0 for j in range(5)]
                               for i in range(5)],
            "infinity_weights": weights,
        }
        path = write_input(tmp_path, "rank5", payload)
        out = tmp_path / "plot5.svg"
        assert cli.main(["render", path, "--out", str(out)]) == 2
        assert "rank 3 or 4" in capsys.readouterr().err
