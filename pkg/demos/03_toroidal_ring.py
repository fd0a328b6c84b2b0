"""Close four segments into a flexing torus.

With an even number of segments whose signed lengths cancel in both
direction families, the tube closes into a genus-1 ring.  The wrap seam is
re-checked at every sampled theta: the ring stays closed throughout the
motion, faces stay congruent, and the Euler count V - E + F = 0 confirms
the toroidal topology.
"""

import math
from pathlib import Path

import numpy as np

from flexprism import (
    SegmentSpec,
    build_torus,
    euler_counts,
    juncture_i_oee,
    rigidity_report,
    sweep,
    variant_tag,
    write_obj,
)

DEG = math.pi / 180.0
OUT = Path(__file__).resolve().parent / "output" / "torus"
OUT.mkdir(parents=True, exist_ok=True)

seed = juncture_i_oee(np.array([80, 100, 110, 75]) * DEG, [1.0])
poly = build_torus(
    seed,
    [
        SegmentSpec("+u", 2.5),
        SegmentSpec("+w", 2.5),
        SegmentSpec("-u", 2.5),
        SegmentSpec("-w", 2.5),
    ],
)

v, e, f = euler_counts(poly)
print(f"torus: {poly.segment_count} segments, V={v} E={e} F={f}, V-E+F={v - e + f}")

for j in range(len(poly.junctures)):
    s_in, s_out = poly.juncture_pair(j)
    tag = variant_tag(poly.segments[s_in].orient, poly.segments[s_out].orient)
    print(f"  juncture {j}: segments {s_in} -> {s_out}, carries the {tag} reflection")

frames = sweep(poly, 20)
gap = max(fr.closure_gap for fr in frames)
print(f"worst wrap-seam mismatch over {len(frames)} frames: {gap:.2e}")

report = rigidity_report(frames, poly)
print(report.summary())

for i, fr in enumerate(frames):
    write_obj(OUT / f"frame_{i:04d}.obj", fr, poly)
print(f"wrote {len(frames)} OBJ frames to {OUT}")
