"""Tests for frame realization, rigidity certification and profiles."""

from __future__ import annotations

import math

import numpy as np
import pytest

from flexprism import (
    DihedralProfile,
    FlexionRangeError,
    FlexprismError,
    JunctureType,
    dihedral_profiles,
    realize,
    rigidity_report,
    sweep,
)
from flexprism.geom import orientation_vectors
from conftest import CANONICAL, open_j2, open_j3, right_angle_juncture, torus_j4

DEG = math.pi / 180.0


def _all_polys():
    out = []
    for kind, make in CANONICAL.items():
        seed = make()
        out.append((f"{kind.value}-j2", open_j2(seed)))
        out.append((f"{kind.value}-j3", open_j3(seed)))
        out.append((f"{kind.value}-torus", torus_j4(seed)))
    return out


class TestRealize:
    def test_right_angle_tube_vertices(self):
        # A straight square-section tube bent at one juncture.
        poly = open_j2(right_angle_juncture(4, 1.0))
        theta = 0.5
        fr = realize(poly, theta)
        u, w = orientation_vectors(theta)
        # Symmetric start puts the chain at z = -1, 0, +1, 0.
        chain = np.array([[0, 0, -1], [0, 0, 0], [0, 0, 1], [0, 0, 0]], dtype=float)
        assert np.allclose(fr.rings[1], chain, atol=1e-12)
        assert np.allclose(fr.rings[0], chain - 2.0 * (-u), atol=1e-12)
        assert np.allclose(fr.rings[2], chain + 2.0 * w, atol=1e-12)

    def test_determinism_bitwise(self):
        poly = open_j3(CANONICAL[JunctureType.II_AEE]())
        a = realize(poly, 0.6)
        b = realize(poly, 0.6)
        assert np.array_equal(a.rings, b.rings)

    def test_mirror_symmetry_under_negated_theta(self):
        poly = open_j3(CANONICAL[JunctureType.I_OEE]())
        theta = poly.flexion_interval.samples(5)[2]
        plus = realize(poly, theta)
        minus = realize(poly, -theta)
        mirrored = plus.rings * np.array([-1.0, 1.0, 1.0])
        assert np.max(np.abs(minus.rings - mirrored)) < 1e-9

    def test_out_of_range_rejected(self):
        poly = open_j2(CANONICAL[JunctureType.I_OEE]())
        with pytest.raises(FlexionRangeError):
            realize(poly, 0.01)  # inside the gap around zero

    def test_flat_endpoint_realizes(self):
        poly = open_j2(CANONICAL[JunctureType.I_OEE]())
        rng_p = poly.flexion_interval
        fr = realize(poly, rng_p.lo)
        assert np.min(np.abs(np.diff(fr.rings[1][:, 2]))) == 0.0

    def test_sweep_counts(self):
        poly = open_j2(CANONICAL[JunctureType.III_OAE]())
        assert len(sweep(poly, 1)) == 1
        assert len(sweep(poly, 50)) == 50
        with pytest.raises(FlexprismError):
            sweep(poly, 0)


class TestRigidity:
    @pytest.mark.parametrize("name,poly", _all_polys())
    def test_all_builds_rigid_over_sweep(self, name, poly):
        report = rigidity_report(sweep(poly, 25), poly)
        assert report.passed(1e-9), report.summary()

    def test_single_frame_zero_deviation(self):
        poly = open_j2(CANONICAL[JunctureType.I_OEE]())
        report = rigidity_report(sweep(poly, 1), poly)
        assert report.max_face_deviation == 0.0
        assert report.max_edge_deviation < 1e-12

    def test_corrupted_vertex_is_localized(self):
        poly = open_j3(CANONICAL[JunctureType.I_OEE]())
        frames = sweep(poly, 9)
        rings = frames[4].rings.copy()
        rings[1, 2] += np.array([0.0, 0.0, 1e-3])  # poke one juncture vertex
        frames[4] = type(frames[4])(theta=frames[4].theta, rings=rings)
        report = rigidity_report(frames, poly)
        assert not report.passed(1e-9)
        bad = {report.edge_labels[e] for e in np.nonzero(report.edge_deviation > 1e-6)[0]}
        # Only edges meeting the poked vertex move (parallel edges only to
        # second order: the poke is orthogonal to them).
        vid = 1 * poly.n + 2
        touching = {lbl for a, b, _, lbl in poly.edges() if vid in (a, b)}
        assert bad and bad <= touching

    def test_torus_closure_across_sweep(self):
        poly = torus_j4(CANONICAL[JunctureType.II_OEE]())
        frames = sweep(poly, 20)
        assert max(fr.closure_gap for fr in frames) < 1e-9 * poly.seed.total_length


class TestFaceGeometry:
    @pytest.mark.parametrize("name,poly", _all_polys())
    def test_faces_planar_with_parallel_edges(self, name, poly):
        faces = poly.faces()
        for fr in sweep(poly, 7):
            verts = fr.vertices
            u, w = orientation_vectors(fr.theta)
            for s in range(poly.segment_count):
                direction = poly.segments[s].orient.vector(u, w)
                for k in range(poly.n):
                    q = verts[faces[s * poly.n + k]]
                    e1 = q[3] - q[0]  # parallel edges of the trapezoid
                    e2 = q[2] - q[1]
                    for e in (e1, e2):
                        cross = np.linalg.norm(np.cross(e, direction))
                        assert cross < 1e-9 * np.linalg.norm(e)
                    # planarity: triple product of spanning edges
                    v1, v2, v3 = q[1] - q[0], q[2] - q[0], q[3] - q[0]
                    vol = abs(np.dot(v1, np.cross(v2, v3)))
                    assert vol < 1e-9


class TestDihedralProfiles:
    def test_right_angle_juncture_gives_double_theta(self):
        poly = open_j2(right_angle_juncture(4, 1.0))
        frames = sweep(poly, 21)
        prof = dihedral_profiles(frames, poly)
        folded = DihedralProfile.fold(prof.epsilon)
        for t_idx, theta in enumerate(prof.thetas):
            assert np.allclose(folded[t_idx, 0], 2 * abs(theta), atol=1e-9)
            assert np.allclose(prof.epsilon_formula[t_idx, 0], 2 * abs(theta), atol=1e-12)

    @pytest.mark.parametrize("name,poly", _all_polys())
    def test_formula_matches_measurement(self, name, poly):
        frames = sweep(poly, 15)
        prof = dihedral_profiles(frames, poly)
        folded = DihedralProfile.fold(prof.epsilon)
        both = ~(np.isnan(folded) | np.isnan(prof.epsilon_formula))
        assert both.any()
        assert np.max(np.abs(folded[both] - prof.epsilon_formula[both])) < 1e-9

    @pytest.mark.parametrize("name,poly", _all_polys())
    def test_nonconstancy_over_windows(self, name, poly):
        frames = sweep(poly, 50)
        prof = dihedral_profiles(frames, poly)
        width = 0.1
        thetas = prof.thetas
        assert thetas[-1] - thetas[0] > width
        for series in (
            prof.epsilon.reshape(len(thetas), -1),
            prof.delta.reshape(len(thetas), -1),
        ):
            for col in range(series.shape[1]):
                vals = series[:, col]
                assert not np.isnan(vals).any()
                for start in range(len(thetas)):
                    stop = np.searchsorted(thetas, thetas[start] + width)
                    if stop >= len(thetas):
                        break
                    window = vals[start : stop + 1]
                    assert window.max() - window.min() > 1e-6

    def test_profiles_depend_continuously(self):
        poly = open_j2(CANONICAL[JunctureType.II_AEE]())
        prof = dihedral_profiles(sweep(poly, 40), poly)
        eps = prof.epsilon.reshape(40, -1)
        jumps = np.abs(np.diff(eps, axis=0))
        circular = np.minimum(jumps, 2 * math.pi - jumps)  # wedges wrap at 0/2pi
        assert np.nanmax(circular) < 0.5
