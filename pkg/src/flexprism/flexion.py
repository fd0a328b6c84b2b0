"""Realizing frames across the flexion interval and certifying flexibility.

A frame is the full set of vertex coordinates at one value of theta.  The
flexibility claim is measurable: across a sweep, every face keeps all six
of its pairwise vertex distances (rigidity) while the dihedral angles at
the juncture edges and along the parallel edges all vary (non-constancy).
:func:`rigidity_report` and :func:`dihedral_profiles` compute exactly
those quantities from realized coordinates; the dihedral profile also
carries the closed-form prediction for the juncture angles so the two
routes can be compared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .assembly import PolyhedronSpec
from .errors import (
    ClosureError,
    DegenerateGeometryError,
    FlexionRangeError,
    FlexprismError,
)
from .geom import orientation_vectors, wedge_angle
from .juncture import chain_vertices, dihedral_from_angles, symmetric_start
from .params import JunctureType

__all__ = [
    "Frame",
    "realize",
    "sweep",
    "RigidityReport",
    "rigidity_report",
    "DihedralProfile",
    "dihedral_profiles",
]


@dataclass(frozen=True)
class Frame:
    """All vertex coordinates of a polyhedron at one flexion angle.

    ``rings`` has shape (R, N, 3); ring r, position k is the vertex with
    flat index r*N + k in the topology arrays of the owning
    :class:`PolyhedronSpec`.  ``closure_gap`` is the wrap-around mismatch
    of a genus-1 realization (0.0 for genus 0).
    """

    theta: float
    rings: np.ndarray
    closure_gap: float = 0.0

    @property
    def vertices(self) -> np.ndarray:
        """Vertices flattened to shape (R*N, 3)."""
        return self.rings.reshape(-1, 3)


def _segment_vectors(poly: PolyhedronSpec, theta: float) -> list[np.ndarray]:
    u, w = orientation_vectors(theta)
    return [seg.orient.vector(u, w) * seg.length for seg in poly.segments]


def realize(poly: PolyhedronSpec, theta: float) -> Frame:
    """Vertex coordinates of ``poly`` at flexion angle ``theta``.

    The seed juncture is realized from its parameter set (with the
    family's symmetric start when it has one) and every other ring is a
    translated copy along the accumulated segment vectors.  Deterministic:
    identical inputs give bitwise-identical frames.
    """
    interval = poly.flexion_interval
    if not interval.contains(theta):
        raise FlexionRangeError(
            f"theta = {theta!r} is outside the flexion interval "
            f"[{interval.lo:.6g}, {interval.hi:.6g}]"
            + (" (or its mirror image)" if interval.mirrored else "")
        )
    seed = poly.seed
    if seed.kind in (JunctureType.I_OEE, JunctureType.II_AEE, JunctureType.II_OEE):
        v1 = symmetric_start(seed, theta)
    else:
        v1 = np.zeros(3)
    base = chain_vertices(seed, v1, theta)
    steps = _segment_vectors(poly, theta)

    rings = np.empty((poly.ring_count, poly.n, 3))
    if poly.genus == 0:
        rings[1] = base
        rings[0] = base - steps[0]
        for r in range(2, poly.ring_count):
            rings[r] = rings[r - 1] + steps[r - 1]
        gap = 0.0
    else:
        rings[0] = base
        for r in range(1, poly.ring_count):
            rings[r] = rings[r - 1] + steps[r]
        wrap = rings[poly.ring_count - 1] + steps[0]
        gap = float(np.max(np.linalg.norm(wrap - rings[0], axis=1)))
        if gap > 1e-9 * poly.seed.total_length:
            raise ClosureError(
                f"torus fails to close at theta = {theta!r}: wrap mismatch {gap:.3e}"
            )
    rings.setflags(write=False)
    return Frame(theta=float(theta), rings=rings, closure_gap=gap)


def sweep(poly: PolyhedronSpec, n_samples: int) -> list[Frame]:
    """Frames at ``n_samples`` evenly spaced angles across the interval."""
    return [realize(poly, t) for t in poly.flexion_interval.samples(n_samples)]


# ---------------------------------------------------------------------------
# Rigidity.

@dataclass(frozen=True)
class RigidityReport:
    """Metric deviations across a sweep.

    ``face_deviation[f]`` is the largest spread, over the sweep, of any of
    the six pairwise vertex distances of face f.  ``edge_deviation[e]`` is
    the largest distance, over the sweep, between edge e's measured length
    and its specified length.  The structure is rigid-under-flexion when
    both maxima vanish to tolerance.
    """

    face_deviation: np.ndarray
    edge_deviation: np.ndarray
    edge_labels: tuple[str, ...]
    frame_count: int

    @property
    def max_face_deviation(self) -> float:
        return float(np.max(self.face_deviation))

    @property
    def max_edge_deviation(self) -> float:
        return float(np.max(self.edge_deviation))

    def passed(self, tol: float = 1e-9) -> bool:
        return self.max_face_deviation < tol and self.max_edge_deviation < tol

    def worst_edge(self) -> str:
        return self.edge_labels[int(np.argmax(self.edge_deviation))]

    def summary(self, tol: float = 1e-9) -> str:
        status = "PASS" if self.passed(tol) else "FAIL"
        lines = [
            f"rigidity {status} over {self.frame_count} frames (tolerance {tol:g})",
            f"  max face deviation: {self.max_face_deviation:.3e} "
            f"(face {int(np.argmax(self.face_deviation))})",
            f"  max edge deviation: {self.max_edge_deviation:.3e} ({self.worst_edge()})",
        ]
        if not self.passed(tol):
            bad = np.nonzero(self.edge_deviation >= tol)[0]
            for e in bad[:20]:
                lines.append(f"  edge off-spec: {self.edge_labels[e]} by {self.edge_deviation[e]:.3e}")
            if len(bad) > 20:
                lines.append(f"  ... and {len(bad) - 20} more edges")
        return "\n".join(lines)


_PAIRS = [(a, b) for a in range(4) for b in range(a + 1, 4)]


def rigidity_report(frames: list[Frame], poly: PolyhedronSpec) -> RigidityReport:
    """Measure face and edge metric deviations across realized frames.

    Works from coordinates only, so it can also certify frames re-imported
    from exported meshes.
    """
    if not frames:
        raise FlexprismError("rigidity report needs at least one frame")
    faces = poly.faces()
    edges = poly.edges()
    face_lo = np.full(len(faces) * 6, np.inf)
    face_hi = np.full(len(faces) * 6, -np.inf)
    edge_dev = np.zeros(len(edges))
    ev_a = np.array([e[0] for e in edges])
    ev_b = np.array([e[1] for e in edges])
    ev_len = np.array([e[2] for e in edges])
    for fr in frames:
        verts = fr.vertices
        for i, (a, b) in enumerate(_PAIRS):
            d = np.linalg.norm(verts[faces[:, a]] - verts[faces[:, b]], axis=1)
            face_lo[i::6] = np.minimum(face_lo[i::6], d)
            face_hi[i::6] = np.maximum(face_hi[i::6], d)
        measured = np.linalg.norm(verts[ev_a] - verts[ev_b], axis=1)
        edge_dev = np.maximum(edge_dev, np.abs(measured - ev_len))
    face_dev = (face_hi - face_lo).reshape(len(faces), 6).max(axis=1)
    return RigidityReport(
        face_deviation=face_dev,
        edge_deviation=edge_dev,
        edge_labels=tuple(e[3] for e in edges),
        frame_count=len(frames),
    )


# ---------------------------------------------------------------------------
# Dihedral profiles.

@dataclass(frozen=True)
class DihedralProfile:
    """Juncture and parallel-edge dihedral angles across a sweep.

    ``epsilon[t, j, k]`` is the wedge angle measured from face normals at
    edge k of juncture j (in (0, 2*pi)); ``epsilon_formula`` is the closed
    form folded into [0, pi].  ``delta[t, s, k]`` is the measured wedge
    along parallel edge k of segment s.  Entries are NaN where the wedge is
    undefined (degenerate faces); flat configurations give 0 or pi, not
    NaN.
    """

    thetas: np.ndarray
    epsilon: np.ndarray
    epsilon_formula: np.ndarray
    delta: np.ndarray

    @staticmethod
    def fold(angles: np.ndarray) -> np.ndarray:
        """Fold wedge angles from [0, 2*pi) into [0, pi] for comparisons."""
        return np.minimum(angles, 2.0 * math.pi - angles)


def _face_wedge(
    verts: np.ndarray, edge: tuple[int, int], face_a: np.ndarray, face_b: np.ndarray
) -> float:
    """Wedge between two faces sharing an edge, from realized coordinates."""
    pa, pb = verts[edge[0]], verts[edge[1]]
    mid = (pa + pb) / 2.0
    try:
        return wedge_angle(
            pb - pa,
            verts[face_a].mean(axis=0) - mid,
            verts[face_b].mean(axis=0) - mid,
        )
    except DegenerateGeometryError:
        return math.nan


def dihedral_profiles(frames: list[Frame], poly: PolyhedronSpec) -> DihedralProfile:
    """Measure all dihedral angles across a sweep.

    Juncture angles are measured between the two adjacent trapezoid faces
    and cross-checkable against ``epsilon_formula`` (the closed form fed
    with the juncture's effective angles and local half-angle).  The
    parallel-edge angles have no closed form here and are measured only.
    """
    if not frames:
        raise FlexprismError("dihedral profiles need at least one frame")
    n = poly.n
    faces = poly.faces()
    t_count, j_count, s_count = len(frames), len(poly.junctures), poly.segment_count
    eps = np.full((t_count, j_count, n), np.nan)
    eps_formula = np.full((t_count, j_count, n), np.nan)
    delta = np.full((t_count, s_count, n), np.nan)

    def face_index(s: int, k: int) -> int:
        return s * n + k

    for t, fr in enumerate(frames):
        verts = fr.vertices
        for j in range(j_count):
            s_in, s_out = poly.juncture_pair(j)
            ring = poly.juncture_ring(j)
            t_loc = poly.theta_local(j, fr.theta)
            eff = poly.junctures[j]
            for k in range(n):
                k2 = (k + 1) % n
                edge = (ring * n + k, ring * n + k2)
                eps[t, j, k] = _face_wedge(
                    verts, edge, faces[face_index(s_in, k)], faces[face_index(s_out, k)]
                )
                try:
                    eps_formula[t, j, k] = dihedral_from_angles(
                        eff.angles_u[k], eff.angles_w[k], t_loc
                    )
                except (FlexionRangeError, DegenerateGeometryError):
                    pass
        for s in range(s_count):
            r1, r2 = poly.segment_rings(s)
            for k in range(n):
                km = (k - 1) % n
                edge = (r1 * n + k, r2 * n + k)
                delta[t, s, k] = _face_wedge(
                    verts, edge, faces[face_index(s, km)], faces[face_index(s, k)]
                )
    return DihedralProfile(
        thetas=np.array([fr.theta for fr in frames]),
        epsilon=eps,
        epsilon_formula=eps_formula,
        delta=delta,
    )
