"""File formats: build configs, solved spec files, OBJ frames, CSV profiles.

Three formats live here:

* **config** (INI, human-written): family tag plus free parameters in
  degrees, and the segment list.  Parsed and solved into a
  :class:`~flexprism.assembly.PolyhedronSpec`.
* **spec** (plain text, machine-written): the fully solved polyhedron with
  every dependent length filled in and sign patterns chosen.  Angles are
  stored in radians with shortest round-trip ``repr`` so that
  generate -> parse -> generate is byte-identical.
* **OBJ / CSV / report**: one mesh per frame (quads, consistent winding,
  9 significant digits), a profile table of all dihedral angles, and a
  plain-text rigidity report.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .assembly import Orientation, PolyhedronSpec, SegmentSpec, build_open, build_torus
from .errors import SpecFormatError
from .flexion import DihedralProfile, Frame, RigidityReport
from .juncture import chain_vertices, flexion_range
from .params import (
    JunctureParams,
    JunctureType,
    juncture_i_oee,
    juncture_ii_aee,
    juncture_ii_oee,
    juncture_iii_oae,
    with_z_signs,
)

__all__ = [
    "RunConfig",
    "load_config",
    "write_spec",
    "read_spec",
    "save_spec",
    "load_spec",
    "write_obj",
    "read_obj",
    "write_profiles_csv",
    "write_rigidity_text",
    "default_truncation",
]

SPEC_HEADER = "flexprism-spec 1"


@dataclass(frozen=True)
class RunConfig:
    """A solved polyhedron plus sweep defaults from a config file."""

    poly: PolyhedronSpec
    samples: int


# ---------------------------------------------------------------------------
# Config (INI) parsing.

def _floats(text: str, name: str) -> list[float]:
    parts = [p for chunk in text.split(",") for p in chunk.split()]
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise SpecFormatError(f"{name}: expected numbers, got {text!r}") from exc


def _build_juncture(sec: configparser.SectionProxy) -> JunctureParams:
    try:
        kind = JunctureType(sec.get("type", "").strip())
    except ValueError:
        raise SpecFormatError(
            f"juncture type must be one of {[t.value for t in JunctureType]}, "
            f"got {sec.get('type')!r}"
        ) from None

    if kind is JunctureType.III_OAE:
        for key in ("n", "l_idx", "beta", "b", "odd_lengths", "even_lengths"):
            if key not in sec:
                raise SpecFormatError(f"III_OAE juncture config requires '{key}'")
        return juncture_iii_oae(
            n=sec.getint("n"),
            l_idx=sec.getint("l_idx"),
            beta=math.radians(sec.getfloat("beta")),
            b=math.radians(sec.getfloat("b")),
            odd_lengths=_floats(sec["odd_lengths"], "odd_lengths"),
            even_lengths=_floats(sec["even_lengths"], "even_lengths"),
        )

    if "beta" not in sec or "lengths" not in sec:
        raise SpecFormatError(f"{kind.value} juncture config requires 'beta' and 'lengths'")
    beta = [math.radians(v) for v in _floats(sec["beta"], "beta")]
    lengths = _floats(sec["lengths"], "lengths")
    if kind is JunctureType.I_OEE:
        return juncture_i_oee(beta, lengths)
    if kind is JunctureType.II_AEE:
        return juncture_ii_aee(beta, lengths)
    if "b" not in sec:
        raise SpecFormatError("II_OEE juncture config requires 'b' (w-side angles)")
    b = [math.radians(v) for v in _floats(sec["b"], "b")]
    return juncture_ii_oee(beta, b, lengths)


def default_truncation(seed: JunctureParams) -> float:
    """Default export length for unbounded end segments.

    Twice the largest pairwise vertex distance of the juncture polygon at
    the midpoint of its flexion interval.
    """
    rng = flexion_range(seed)
    verts = chain_vertices(seed, np.zeros(3), (rng.lo + rng.hi) / 2.0)
    diam = max(
        float(np.linalg.norm(verts[i] - verts[j]))
        for i in range(len(verts))
        for j in range(i + 1, len(verts))
    )
    return 2.0 * diam


def load_config(path: str | Path) -> RunConfig:
    """Parse and solve a build config file."""
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    text = Path(path).read_text()
    try:
        cp.read_string(text, source=str(path))
    except configparser.Error as exc:
        raise SpecFormatError(f"cannot parse config {path}: {exc}") from exc
    for section in ("polyhedron", "juncture", "segments"):
        if section not in cp:
            raise SpecFormatError(f"config is missing the [{section}] section")

    poly_sec = cp["polyhedron"]
    genus = poly_sec.getint("genus", fallback=-1)
    if genus not in (0, 1):
        raise SpecFormatError(f"genus must be 0 or 1, got {poly_sec.get('genus')!r}")
    samples = poly_sec.getint("samples", fallback=50)
    if samples < 1:
        raise SpecFormatError(f"samples must be >= 1, got {samples}")

    seed = _build_juncture(cp["juncture"])

    seg_sec = cp["segments"]
    try:
        order = sorted(seg_sec, key=int)
    except ValueError:
        raise SpecFormatError("[segments] keys must be integers 1..J") from None
    if [int(k) for k in order] != list(range(1, len(order) + 1)):
        raise SpecFormatError("[segments] keys must be consecutive integers starting at 1")
    segments = []
    for key in order:
        parts = [p.strip() for p in seg_sec[key].split(",")]
        if len(parts) != 2:
            raise SpecFormatError(
                f"segment {key} must be 'orient, length' (e.g. '-u, 2.0'), got {seg_sec[key]!r}"
            )
        orient = Orientation.parse(parts[0])
        if parts[1].lower() == "auto":
            idx = int(key) - 1
            if genus != 0 or idx not in (0, len(order) - 1):
                raise SpecFormatError(
                    f"segment {key}: 'auto' length applies only to the end "
                    "segments of a genus-0 polyhedron"
                )
            length = default_truncation(seed)
        else:
            try:
                length = float(parts[1])
            except ValueError:
                raise SpecFormatError(f"segment {key}: bad length {parts[1]!r}") from None
        segments.append(SegmentSpec(orient=orient, length=length))

    builder = build_open if genus == 0 else build_torus
    return RunConfig(poly=builder(seed, segments), samples=samples)


# ---------------------------------------------------------------------------
# Solved spec files.

def write_spec(poly: PolyhedronSpec, samples: int = 50) -> str:
    """Serialize a solved polyhedron, losslessly, to spec text."""
    seed = poly.seed
    lines = [
        SPEC_HEADER,
        f"genus {poly.genus}",
        f"n {seed.n}",
        f"samples {int(samples)}",
        f"kind {seed.kind.value if seed.kind else 'custom'}",
    ]
    if seed.l_idx is not None:
        lines.append(f"l-idx {seed.l_idx}")
    lines.append("angles-u " + " ".join(repr(float(v)) for v in seed.angles_u))
    lines.append("angles-w " + " ".join(repr(float(v)) for v in seed.angles_w))
    lines.append("lengths " + " ".join(repr(float(v)) for v in seed.lengths))
    lines.append("z-signs " + " ".join(str(int(v)) for v in seed.z_signs))
    for seg in poly.segments:
        lines.append(f"segment {seg.orient} {repr(float(seg.length))}")
    return "\n".join(lines) + "\n"


def _rebuild_seed(
    kind_text: str,
    n: int,
    l_idx: int | None,
    angles_u: np.ndarray,
    angles_w: np.ndarray,
    lengths: np.ndarray,
    z_signs: np.ndarray,
) -> JunctureParams:
    kind = None if kind_text == "custom" else JunctureType(kind_text)
    if kind is JunctureType.III_OAE:
        # Rebuild through the family constructor so the supplement structure
        # of the cosines is exact again; then check the file's arrays agree.
        if l_idx is None:
            raise SpecFormatError("III_OAE spec requires an l-idx line")
        odd = [float(lengths[i]) for i in range(0, n, 2)]
        even = [float(lengths[i]) for i in range(1, n, 2)]
        rebuilt = juncture_iii_oae(
            n, l_idx, float(angles_u[0]), float(angles_w[0]), odd, even
        )
        if not (
            np.array_equal(rebuilt.angles_u, angles_u)
            and np.array_equal(rebuilt.angles_w, angles_w)
        ):
            raise SpecFormatError(
                "angle arrays in the spec file do not match the III_OAE pattern "
                "for the stored l-idx and leading angles"
            )
        return with_z_signs(rebuilt, z_signs)
    return JunctureParams(
        n=n,
        angles_u=angles_u,
        angles_w=angles_w,
        lengths=lengths,
        kind=kind,
        z_signs=z_signs,
        l_idx=l_idx,
    )


def read_spec(text: str) -> tuple[PolyhedronSpec, int]:
    """Parse spec text back into a polyhedron and its sweep default."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0] != SPEC_HEADER:
        raise SpecFormatError(f"not a flexprism spec file (expected '{SPEC_HEADER}' first)")
    fields: dict[str, str] = {}
    segments: list[SegmentSpec] = []
    for ln in lines[1:]:
        key, _, rest = ln.partition(" ")
        if key == "segment":
            parts = rest.split()
            if len(parts) != 2:
                raise SpecFormatError(f"bad segment line: {ln!r}")
            segments.append(SegmentSpec(Orientation.parse(parts[0]), float(parts[1])))
        elif key in fields:
            raise SpecFormatError(f"duplicate key {key!r} in spec file")
        else:
            fields[key] = rest
    try:
        genus = int(fields["genus"])
        n = int(fields["n"])
        samples = int(fields["samples"])
        kind_text = fields["kind"]
        angles_u = np.array([float(v) for v in fields["angles-u"].split()])
        angles_w = np.array([float(v) for v in fields["angles-w"].split()])
        lengths = np.array([float(v) for v in fields["lengths"].split()])
        z_signs = np.array([int(v) for v in fields["z-signs"].split()])
    except KeyError as exc:
        raise SpecFormatError(f"spec file is missing the {exc.args[0]!r} line") from exc
    except ValueError as exc:
        raise SpecFormatError(f"malformed spec value: {exc}") from exc
    l_idx = int(fields["l-idx"]) if "l-idx" in fields else None
    seed = _rebuild_seed(kind_text, n, l_idx, angles_u, angles_w, lengths, z_signs)
    builder = build_open if genus == 0 else build_torus
    return builder(seed, segments), samples


def save_spec(path: str | Path, poly: PolyhedronSpec, samples: int = 50) -> None:
    Path(path).write_text(write_spec(poly, samples))


def load_spec(path: str | Path) -> tuple[PolyhedronSpec, int]:
    return read_spec(Path(path).read_text())


# ---------------------------------------------------------------------------
# OBJ frames.

def write_obj(path: str | Path, frame: Frame, poly: PolyhedronSpec) -> None:
    """Write one frame as a quad-face OBJ mesh (9 significant digits)."""
    lines = [f"# flexprism frame theta={frame.theta!r}"]
    for v in frame.vertices:
        lines.append(f"v {v[0]:.9g} {v[1]:.9g} {v[2]:.9g}")
    for quad in poly.faces():
        lines.append("f " + " ".join(str(i + 1) for i in quad))
    Path(path).write_text("\n".join(lines) + "\n")


def read_obj(path: str | Path) -> tuple[np.ndarray, np.ndarray]:
    """Read back vertices and quad faces from an OBJ written here."""
    verts: list[list[float]] = []
    faces: list[list[int]] = []
    for ln in Path(path).read_text().splitlines():
        parts = ln.split()
        if not parts:
            continue
        if parts[0] == "v":
            if len(parts) != 4:
                raise SpecFormatError(f"bad vertex line: {ln!r}")
            verts.append([float(p) for p in parts[1:]])
        elif parts[0] == "f":
            if len(parts) != 5:
                raise SpecFormatError(f"expected quad faces, got: {ln!r}")
            faces.append([int(p.split("/")[0]) - 1 for p in parts[1:]])
    return np.asarray(verts, dtype=float), np.asarray(faces, dtype=int)


# ---------------------------------------------------------------------------
# Profiles and reports.

def write_profiles_csv(path: str | Path, profile: DihedralProfile, poly: PolyhedronSpec) -> None:
    """Dihedral profiles as CSV.

    Columns: theta, then the juncture angles eps_j{j}_k{k} (junctures
    ascending, chain positions ascending), then the parallel-edge angles
    del_s{s}_k{k} in the same order.  Radians; undefined entries are nan.
    """
    n = poly.n
    header = ["theta"]
    header += [f"eps_j{j}_k{k}" for j in range(len(poly.junctures)) for k in range(n)]
    header += [f"del_s{s}_k{k}" for s in range(poly.segment_count) for k in range(n)]
    rows = [",".join(header)]
    for t in range(len(profile.thetas)):
        vals = [profile.thetas[t]]
        vals += list(profile.epsilon[t].reshape(-1))
        vals += list(profile.delta[t].reshape(-1))
        rows.append(",".join(f"{v:.12g}" for v in vals))
    Path(path).write_text("\n".join(rows) + "\n")


def write_rigidity_text(
    path: str | Path,
    report: RigidityReport,
    frames: Sequence[Frame],
    poly: PolyhedronSpec,
    tol: float = 1e-9,
) -> None:
    """Plain-text rigidity report for a sweep."""
    lines = [
        f"frames: {len(frames)}",
        f"theta range: [{frames[0].theta!r}, {frames[-1].theta!r}]",
        report.summary(tol),
    ]
    if poly.genus == 1:
        worst = max(fr.closure_gap for fr in frames)
        lines.append(f"max torus closure gap: {worst:.3e}")
    if poly.genus == 0:
        lines.append(
            "end segments truncated at lengths "
            f"{poly.segments[0].length:.6g} and {poly.segments[-1].length:.6g}"
        )
    Path(path).write_text("\n".join(lines) + "\n")
