"""Tests for config parsing, spec files, exports and the CLI."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np
import pytest

from flexprism import (
    DihedralProfile,
    Frame,
    JunctureType,
    SpecFormatError,
    dihedral_profiles,
    load_config,
    load_spec,
    read_obj,
    read_spec,
    realize,
    rigidity_report,
    save_spec,
    sweep,
    write_obj,
    write_spec,
)
from flexprism.cli import main
from conftest import CANONICAL, open_j2, right_angle_juncture

DEG = math.pi / 180.0

CONFIG_I_OEE = """\
[polyhedron]
genus = 0
samples = 12

[juncture]
type = I_OEE
beta = 80, 100, 110, 75   # degrees
lengths = 1.0

[segments]
1 = -u, 2.0
2 = +w, 2.0
3 = +u, auto
"""

CONFIG_II_AEE = """\
[polyhedron]
genus = 1
samples = 10

[juncture]
type = II_AEE
beta = 100, 70, 50, 120
lengths = 1.0

[segments]
1 = +u, 2.0
2 = +w, 2.0
3 = -u, 2.0
4 = -w, 2.0
"""

CONFIG_II_OEE = """\
[polyhedron]
genus = 0

[juncture]
type = II_OEE
beta = 75, 130, 70
b = 60, 105, 95
lengths = 1.0

[segments]
1 = -u, 1.5
2 = +w, 2.5
"""

CONFIG_III = """\
[polyhedron]
genus = 0
samples = 20

[juncture]
type = III_OAE
n = 6
l_idx = 3
beta = 75
b = 100
odd_lengths = 2.0, 0.8
even_lengths = 1.5, 0.6

[segments]
1 = -u, auto
2 = +w, 2.0
3 = -u, 2.0
4 = +w, auto
"""

ALL_CONFIGS = {
    "I_OEE": CONFIG_I_OEE,
    "II_AEE": CONFIG_II_AEE,
    "II_OEE": CONFIG_II_OEE,
    "III_OAE": CONFIG_III,
}


class TestConfig:
    @pytest.mark.parametrize("name,text", ALL_CONFIGS.items())
    def test_loads_and_solves(self, name, text, tmp_path):
        path = tmp_path / "conf.ini"
        path.write_text(text)
        cfg = load_config(path)
        assert cfg.poly.seed.kind is JunctureType(name)

    def test_odd_vertex_count_rejected(self, tmp_path):
        path = tmp_path / "conf.ini"
        path.write_text(CONFIG_I_OEE.replace("80, 100, 110, 75", "80, 100, 110"))
        with pytest.raises(Exception, match="even"):
            load_config(path)

    def test_bad_l_idx_names_valid_range(self, tmp_path):
        path = tmp_path / "conf.ini"
        path.write_text(CONFIG_III.replace("l_idx = 3", "l_idx = 2"))
        with pytest.raises(Exception, match=r"\[3, n-2\]"):
            load_config(path)

    def test_auto_only_on_genus0_ends(self, tmp_path):
        path = tmp_path / "conf.ini"
        path.write_text(CONFIG_I_OEE.replace("2 = +w, 2.0", "2 = +w, auto"))
        with pytest.raises(SpecFormatError, match="auto"):
            load_config(path)

    def test_missing_section(self, tmp_path):
        path = tmp_path / "conf.ini"
        path.write_text("[polyhedron]\ngenus = 0\n")
        with pytest.raises(SpecFormatError, match="juncture"):
            load_config(path)


class TestSpecRoundTrip:
    @pytest.mark.parametrize("name,text", ALL_CONFIGS.items())
    def test_generate_parse_generate_is_idempotent(self, name, text, tmp_path):
        path = tmp_path / "conf.ini"
        path.write_text(text)
        cfg = load_config(path)
        first = write_spec(cfg.poly, cfg.samples)
        poly2, samples2 = read_spec(first)
        second = write_spec(poly2, samples2)
        assert second == first  # byte identical

    def test_reloaded_type_three_closes_at_flat_endpoints(self, tmp_path):
        # The supplement structure of the cosines must survive the file.
        poly = open_j2(CANONICAL[JunctureType.III_OAE]())
        path = tmp_path / "p.spec"
        save_spec(path, poly, 50)
        poly2, _ = load_spec(path)
        from flexprism import closure_residual, flexion_range

        rng_p = flexion_range(poly2.seed)
        for theta in (rng_p.lo, rng_p.hi) if rng_p.closed_hi else (rng_p.lo,):
            res = closure_residual(poly2.seed, theta)
            assert float(np.linalg.norm(res)) < 1e-12 * poly2.seed.total_length

    def test_rejects_unknown_header(self):
        with pytest.raises(SpecFormatError):
            read_spec("not-a-spec 1\n")

    def test_rejects_missing_field(self):
        poly = open_j2(CANONICAL[JunctureType.I_OEE]())
        text = "\n".join(
            ln for ln in write_spec(poly, 50).splitlines() if not ln.startswith("lengths")
        )
        with pytest.raises(SpecFormatError, match="lengths"):
            read_spec(text)


class TestObjExport:
    def test_roundtrip_vertices_to_nine_digits(self, tmp_path):
        poly = open_j2(CANONICAL[JunctureType.II_OEE]())
        fr = realize(poly, poly.flexion_interval.samples(5)[2])
        path = tmp_path / "frame.obj"
        write_obj(path, fr, poly)
        verts, faces = read_obj(path)
        assert verts.shape == fr.vertices.shape
        assert np.array_equal(faces, poly.faces())
        scale = np.max(np.abs(fr.vertices))
        assert np.max(np.abs(verts - fr.vertices)) < 1e-8 * scale

    def test_reimported_frames_pass_rigidity(self, tmp_path):
        poly = open_j2(CANONICAL[JunctureType.I_OEE]())
        frames = sweep(poly, 9)
        back = []
        for i, fr in enumerate(frames):
            path = tmp_path / f"f{i}.obj"
            write_obj(path, fr, poly)
            verts, _ = read_obj(path)
            back.append(Frame(theta=fr.theta, rings=verts.reshape(fr.rings.shape)))
        report = rigidity_report(back, poly)
        assert report.passed(1e-6)  # 9 significant digits of export headroom


class TestCli:
    def _write(self, tmp_path: Path, text: str) -> Path:
        path = tmp_path / "conf.ini"
        path.write_text(text)
        return path

    def test_generate_validate_flex_range_info(self, tmp_path, capsys):
        conf = self._write(tmp_path, CONFIG_I_OEE)
        out = tmp_path / "out"
        assert main(["generate", "--config", str(conf), "--out", str(out)]) == 0
        spec = out / "polyhedron.spec"
        assert spec.exists()
        echoed = capsys.readouterr().out
        assert "solved lengths" in echoed

        assert main(["validate", str(spec)]) == 0
        report = capsys.readouterr().out
        assert report.count("PASS") == 4 and "FAIL" not in report

        assert main(["flex", str(spec), "--out", str(out / "frames"), "--samples", "3"]) == 0
        capsys.readouterr()
        assert sorted(p.name for p in (out / "frames").glob("frame_*.obj")) == [
            "frame_0000.obj",
            "frame_0001.obj",
            "frame_0002.obj",
        ]
        assert (out / "frames" / "profiles.csv").exists()
        assert (out / "frames" / "rigidity.txt").exists()

        assert main(["range", str(spec)]) == 0
        text = capsys.readouterr().out
        assert "flexion interval (deg): [15," in text

        assert main(["info", str(spec)]) == 0
        text = capsys.readouterr().out
        assert "V=10 E=20 F=12" in text and "variant" in text

    def test_validate_fails_on_flipped_z_sign(self, tmp_path, capsys):
        conf = self._write(tmp_path, CONFIG_I_OEE)
        out = tmp_path / "out"
        main(["generate", "--config", str(conf), "--out", str(out)])
        capsys.readouterr()
        spec = out / "polyhedron.spec"
        text = spec.read_text().replace("z-signs 1 1 -1 -1", "z-signs 1 1 1 -1")
        spec.write_text(text)
        assert main(["validate", str(spec)]) == 1
        report = capsys.readouterr().out
        assert "FAIL: chain closure" in report

    def test_broken_torus_closure_names_direction(self, tmp_path, capsys):
        conf = self._write(tmp_path, CONFIG_II_AEE.replace("3 = -u, 2.0", "3 = -u, 1.0"))
        assert main(["generate", "--config", str(conf), "--out", str(tmp_path)]) == 2
        err = capsys.readouterr().err
        assert "along u" in err

    def test_config_errors_exit_2(self, tmp_path, capsys):
        conf = self._write(tmp_path, CONFIG_III.replace("l_idx = 3", "l_idx = 2"))
        assert main(["generate", "--config", str(conf), "--out", str(tmp_path)]) == 2
        assert "[3, n-2]" in capsys.readouterr().err

    def test_flex_single_frame_mode(self, tmp_path, capsys):
        conf = self._write(tmp_path, CONFIG_I_OEE)
        out = tmp_path / "out"
        main(["generate", "--config", str(conf), "--out", str(out)])
        spec = out / "polyhedron.spec"
        assert main(["flex", str(spec), "--out", str(out / "one"), "--theta", "40"]) == 0
        capsys.readouterr()
        assert sorted(p.name for p in (out / "one").glob("frame_*.obj")) == ["frame_0000.obj"]

    def test_flex_out_of_range_theta(self, tmp_path, capsys):
        conf = self._write(tmp_path, CONFIG_I_OEE)
        out = tmp_path / "out"
        main(["generate", "--config", str(conf), "--out", str(out)])
        spec = out / "polyhedron.spec"
        assert main(["flex", str(spec), "--out", str(out / "bad"), "--theta", "5"]) == 2
        assert "flexion interval" in capsys.readouterr().err

    def test_unwritable_output_dir(self, tmp_path, capsys):
        conf = self._write(tmp_path, CONFIG_I_OEE)
        out = tmp_path / "out"
        main(["generate", "--config", str(conf), "--out", str(out)])
        capsys.readouterr()
        blocker = tmp_path / "blocker"
        blocker.write_text("a file, not a directory")
        spec = out / "polyhedron.spec"
        assert main(["flex", str(spec), "--out", str(blocker / "sub")]) == 2

    def test_truncate_override(self, tmp_path, capsys):
        conf = self._write(tmp_path, CONFIG_I_OEE)
        out = tmp_path / "out"
        main(["generate", "--config", str(conf), "--out", str(out)])
        spec = out / "polyhedron.spec"
        assert main(
            ["flex", str(spec), "--out", str(out / "t"), "--samples", "2", "--truncate", "7.5"]
        ) == 0
        capsys.readouterr()
        verts, _ = read_obj(out / "t" / "frame_0000.obj")
        poly, _ = load_spec(spec)
        ring0 = verts[: poly.n]
        ring1 = verts[poly.n : 2 * poly.n]
        assert np.linalg.norm(ring1[0] - ring0[0]) == pytest.approx(7.5, abs=1e-6)


class TestProfilesCsv:
    def test_right_angle_tube_eps_column_is_double_theta(self, tmp_path):
        from flexprism import write_profiles_csv

        poly = open_j2(right_angle_juncture(4, 1.0))
        frames = sweep(poly, 11)
        prof = dihedral_profiles(frames, poly)
        path = tmp_path / "profiles.csv"
        write_profiles_csv(path, prof, poly)
        rows = path.read_text().splitlines()
        header = rows[0].split(",")
        assert header[0] == "theta"
        assert header[1] == "eps_j0_k0"
        assert f"del_s{poly.segment_count - 1}_k{poly.n - 1}" == header[-1]
        data = np.loadtxt(path, delimiter=",", skiprows=1)
        n_cols = 1 + len(poly.junctures) * poly.n + poly.segment_count * poly.n
        assert data.shape == (11, n_cols)
        theta = data[:, 0]
        eps = data[:, 1 : 1 + poly.n]
        folded = DihedralProfile.fold(eps)
        assert np.max(np.abs(folded - 2 * np.abs(theta)[:, None])) < 1e-9
