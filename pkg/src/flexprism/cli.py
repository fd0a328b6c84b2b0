"""Command-line interface.

Subcommands:

* ``generate``  solve a config into a spec file
* ``validate``  run continuity/closure/rigidity/count checks on a spec
* ``flex``      sweep theta and export OBJ frames + dihedral CSV + report
* ``range``     print the flexion interval
* ``info``      print a structural summary

Exit codes: 0 success, 1 validation failure, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__
from .assembly import PolyhedronSpec, euler_counts, variant_tag
from .errors import FlexprismError
from .flexion import dihedral_profiles, realize, rigidity_report, sweep
from .io import (
    load_config,
    load_spec,
    save_spec,
    write_obj,
    write_profiles_csv,
    write_rigidity_text,
)
from .juncture import closure_residual
from .params import continuity_residual

__all__ = ["main"]


def _deg(x: float) -> float:
    return math.degrees(x)


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 2


def _apply_truncation(poly: PolyhedronSpec, truncate: float | None) -> PolyhedronSpec:
    if truncate is None or poly.genus != 0:
        return poly
    segs = list(poly.segments)
    segs[0] = replace(segs[0], length=float(truncate))
    segs[-1] = replace(segs[-1], length=float(truncate))
    return replace(poly, segments=tuple(segs))


def _cmd_generate(args: argparse.Namespace) -> int:
    try:
        cfg = load_config(args.config)
    except FlexprismError as exc:
        return _fail(str(exc))
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    spec_path = out_dir / "polyhedron.spec"
    save_spec(spec_path, cfg.poly, cfg.samples)
    seed = cfg.poly.seed
    print(f"wrote {spec_path}")
    print(f"kind: {seed.kind.value if seed.kind else 'custom'}   n: {seed.n}   "
          f"genus: {cfg.poly.genus}   segments: {cfg.poly.segment_count}")
    print("solved angles-u (deg):", " ".join(f"{_deg(a):.6g}" for a in seed.angles_u))
    print("solved angles-w (deg):", " ".join(f"{_deg(a):.6g}" for a in seed.angles_w))
    print("solved lengths:       ", " ".join(f"{v:.9g}" for v in seed.lengths))
    print("z-signs:              ", " ".join(f"{int(v):+d}" for v in seed.z_signs))
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    try:
        poly, samples = load_spec(args.spec)
    except (FlexprismError, OSError) as exc:
        return _fail(str(exc))
    n_samples = args.samples or samples
    tol = args.tolerance
    scale = poly.seed.total_length
    ok = True

    def check(name: str, passed: bool, detail: str) -> None:
        nonlocal ok
        ok &= passed
        print(f"{'PASS' if passed else 'FAIL'}: {name} ({detail})")

    sets = [("seed", poly.seed)] + [
        (f"juncture[{j}]", p) for j, p in enumerate(poly.junctures)
    ]
    worst = max(max(map(abs, continuity_residual(p))) for _, p in sets)
    check("continuity", worst <= tol * scale, f"max residual {worst:.3e}")

    try:
        thetas = poly.flexion_interval.samples(n_samples)
        worst_closure = 0.0
        for t in thetas:
            worst_closure = max(
                worst_closure, float(np.linalg.norm(closure_residual(poly.seed, t)))
            )
            for j, p in enumerate(poly.junctures):
                t_loc = poly.theta_local(j, t)
                worst_closure = max(
                    worst_closure, float(np.linalg.norm(closure_residual(p, t_loc)))
                )
        check("chain closure", worst_closure <= tol * scale, f"max |residual| {worst_closure:.3e}")

        frames = sweep(poly, n_samples)
        report = rigidity_report(frames, poly)
        check(
            "rigidity",
            report.passed(tol),
            f"max face dev {report.max_face_deviation:.3e}, "
            f"max edge dev {report.max_edge_deviation:.3e}",
        )
        if poly.genus == 1:
            gap = max(fr.closure_gap for fr in frames)
            check("torus closure", gap <= tol * scale, f"max wrap gap {gap:.3e}")
    except FlexprismError as exc:
        check("realization", False, str(exc))

    v, e, f = euler_counts(poly)
    expect = 2 if poly.genus == 0 else 0
    check("euler counts", v - e + f == expect, f"V={v} E={e} F={f}, V-E+F={v - e + f}")

    return 0 if ok else 1


def _cmd_flex(args: argparse.Namespace) -> int:
    try:
        poly, samples = load_spec(args.spec)
        poly = _apply_truncation(poly, args.truncate)
    except (FlexprismError, OSError) as exc:
        return _fail(str(exc))
    out_dir = Path(args.out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        return _fail(f"cannot create output directory {out_dir}: {exc}")
    try:
        if args.theta is not None:
            frames = [realize(poly, math.radians(args.theta))]
        else:
            frames = sweep(poly, args.samples or samples)
    except FlexprismError as exc:
        return _fail(str(exc))
    for i, fr in enumerate(frames):
        write_obj(out_dir / f"frame_{i:04d}.obj", fr, poly)
    profile = dihedral_profiles(frames, poly)
    write_profiles_csv(out_dir / "profiles.csv", profile, poly)
    report = rigidity_report(frames, poly)
    write_rigidity_text(out_dir / "rigidity.txt", report, frames, poly, args.tolerance)
    print(f"wrote {len(frames)} frame(s), profiles.csv and rigidity.txt to {out_dir}")
    print(report.summary(args.tolerance))
    return 0 if report.passed(args.tolerance) else 1


def _cmd_range(args: argparse.Namespace) -> int:
    try:
        poly, _ = load_spec(args.spec)
        rng = poly.flexion_interval
    except (FlexprismError, OSError) as exc:
        return _fail(str(exc))
    lo_br = "[" if rng.closed_lo else "("
    hi_br = "]" if rng.closed_hi else ")"
    print(f"flexion interval (deg): {lo_br}{_deg(rng.lo):.6g}, {_deg(rng.hi):.6g}{hi_br}")
    if rng.mirrored:
        print("the mirror-image interval (negated) is feasible as well")
    if rng.closed_lo and rng.lo > 0 or rng.closed_hi:
        print("closed endpoints are flat configurations (some z-step vanishes)")
    return 0


def _cmd_info(args: argparse.Namespace) -> int:
    try:
        poly, samples = load_spec(args.spec)
    except (FlexprismError, OSError) as exc:
        return _fail(str(exc))
    seed = poly.seed
    v, e, f = euler_counts(poly)
    print(f"kind: {seed.kind.value if seed.kind else 'custom'}   n: {seed.n}   "
          f"genus: {poly.genus}   segments: {poly.segment_count}   sweep samples: {samples}")
    if seed.l_idx is not None:
        print(f"l-idx: {seed.l_idx}")
    print(f"counts: V={v} E={e} F={f}  (V-E+F={v - e + f})")
    print("angles-u (deg):", " ".join(f"{_deg(a):.6g}" for a in seed.angles_u))
    print("angles-w (deg):", " ".join(f"{_deg(a):.6g}" for a in seed.angles_w))
    print("lengths:       ", " ".join(f"{x:.9g}" for x in seed.lengths))
    print("z-signs:       ", " ".join(f"{int(v):+d}" for v in seed.z_signs))
    for s, seg in enumerate(poly.segments):
        print(f"segment[{s}]: orient {seg.orient}  length {seg.length:.9g}")
    for j in range(len(poly.junctures)):
        i_in, i_out = poly.juncture_pair(j)
        tag = variant_tag(poly.segments[i_in].orient, poly.segments[i_out].orient)
        print(f"juncture[{j}]: between segment {i_in} and {i_out}  (variant {tag})")
    return _cmd_range(args)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="flexprism",
        description="Construct flexible prismatic polyhedra and certify their motion.",
    )
    parser.add_argument("--version", action="version", version=f"flexprism {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="solve a config into a spec file")
    p_gen.add_argument("--config", required=True, help="build config (INI)")
    p_gen.add_argument("--out", default=".", help="output directory")
    p_gen.set_defaults(func=_cmd_generate)

    p_val = sub.add_parser("validate", help="check a spec end to end")
    p_val.add_argument("spec", help="spec file from 'generate'")
    p_val.add_argument("--samples", type=int, default=None, help="theta samples")
    p_val.add_argument("--tolerance", type=float, default=1e-9)
    p_val.set_defaults(func=_cmd_validate)

    p_flex = sub.add_parser("flex", help="sweep theta and export frames")
    p_flex.add_argument("spec")
    p_flex.add_argument("--out", required=True, help="output directory")
    p_flex.add_argument("--samples", type=int, default=None)
    p_flex.add_argument("--theta", type=float, default=None,
                        help="single-frame mode: flexion angle in degrees")
    p_flex.add_argument("--truncate", type=float, default=None,
                        help="override the end-segment truncation length")
    p_flex.add_argument("--tolerance", type=float, default=1e-9)
    p_flex.set_defaults(func=_cmd_flex)

    p_rng = sub.add_parser("range", help="print the flexion interval")
    p_rng.add_argument("spec")
    p_rng.set_defaults(func=_cmd_range)

    p_info = sub.add_parser("info", help="print a structural summary")
    p_info.add_argument("spec")
    p_info.set_defaults(func=_cmd_info)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
