"""Shared fixtures: canonical junctures and randomized feasible draws."""

from __future__ import annotations

import math

import numpy as np
import pytest

from flexprism import (
    JunctureParams,
    JunctureType,
    SegmentSpec,
    build_open,
    build_torus,
    flexion_range,
    juncture_i_oee,
    juncture_ii_aee,
    juncture_ii_oee,
    juncture_iii_oae,
)

DEG = math.pi / 180.0


# ---------------------------------------------------------------------------
# Canonical (deterministic) junctures, one per family, with wide intervals.

def canonical_i_oee() -> JunctureParams:
    return juncture_i_oee(np.array([80, 100, 110, 75]) * DEG, [1.0])


def canonical_ii_aee() -> JunctureParams:
    return juncture_ii_aee(np.array([100, 70, 50, 120]) * DEG, [1.0])


def canonical_ii_oee() -> JunctureParams:
    return juncture_ii_oee(
        np.array([75, 130, 70]) * DEG, np.array([60, 105, 95]) * DEG, [1.0]
    )


def canonical_iii_oae() -> JunctureParams:
    return juncture_iii_oae(6, 3, 75 * DEG, 100 * DEG, [2.0, 0.8], [1.5, 0.6])


CANONICAL = {
    JunctureType.I_OEE: canonical_i_oee,
    JunctureType.II_AEE: canonical_ii_aee,
    JunctureType.II_OEE: canonical_ii_oee,
    JunctureType.III_OAE: canonical_iii_oae,
}


def right_angle_juncture(n: int = 4, length: float = 1.0) -> JunctureParams:
    """All face angles 90 degrees: the chain runs straight up and down."""
    half_pi = np.full(n, math.pi / 2)
    return JunctureParams(
        n=n,
        angles_u=half_pi,
        angles_w=half_pi.copy(),
        lengths=np.full(n, length),
        kind=JunctureType.I_OEE,
    )


# ---------------------------------------------------------------------------
# Standard assemblies.

def open_j2(seed: JunctureParams) -> "PolyhedronSpec":
    return build_open(seed, [SegmentSpec("-u", 2.0), SegmentSpec("+w", 2.0)])


def open_j3(seed: JunctureParams) -> "PolyhedronSpec":
    return build_open(
        seed, [SegmentSpec("-u", 2.0), SegmentSpec("+w", 2.0), SegmentSpec("+u", 2.0)]
    )


def torus_j4(seed: JunctureParams, s: float = 2.5) -> "PolyhedronSpec":
    return build_torus(
        seed,
        [
            SegmentSpec("+u", s),
            SegmentSpec("+w", s),
            SegmentSpec("-u", s),
            SegmentSpec("-w", s),
        ],
    )


# ---------------------------------------------------------------------------
# Randomized feasible parameter draws (seeded; retry until feasible).

def _feasible(p: JunctureParams, min_width: float) -> bool:
    try:
        rng = flexion_range(p)
    except Exception:
        return False
    return rng.width >= min_width and float(np.min(p.lengths)) > 0.05


def random_juncture(
    kind: JunctureType,
    n: int,
    rng: np.random.Generator,
    min_width: float = 0.15,
    l_idx: int | None = None,
) -> JunctureParams:
    """Draw a random feasible parameter set of the given family and size."""
    m = n // 2
    for _ in range(500):
        try:
            if kind is JunctureType.I_OEE:
                beta = rng.uniform(0.4, math.pi - 0.4, n)
                p = juncture_i_oee(beta, rng.uniform(0.5, 1.5, m - 1))
            elif kind is JunctureType.II_AEE:
                beta = rng.uniform(0.4, math.pi - 0.4, n)
                p = juncture_ii_aee(beta, rng.uniform(0.5, 1.5, m - 1))
            elif kind is JunctureType.II_OEE:
                if m == 2:
                    # The two continuity rows must be proportional with a
                    # positive length ratio: pick three angles, solve the
                    # fourth, and supply both lengths explicitly.
                    b1 = rng.uniform(0.4, math.pi / 2 - 0.15)
                    b2 = rng.uniform(math.pi / 2 + 0.15, math.pi - 0.4)
                    w1 = rng.uniform(math.pi / 2 - 0.35, math.pi / 2 + 0.35)
                    c = math.cos(b2) * math.cos(w1) / math.cos(b1)
                    if abs(c) > 0.9:
                        continue
                    l1 = rng.uniform(0.5, 1.5)
                    l2 = -math.cos(b1) / math.cos(b2) * l1
                    p = juncture_ii_oee([b1, b2], [w1, math.acos(c)], [l1, l2])
                else:
                    beta = rng.uniform(0.4, math.pi - 0.4, m)
                    b = rng.uniform(0.4, math.pi - 0.4, m)
                    p = juncture_ii_oee(beta, b, rng.uniform(0.5, 1.5, m - 2))
            elif kind is JunctureType.III_OAE:
                li = l_idx if l_idx is not None else int(rng.integers(3, max(3, n - 2) + 1))
                # Free lengths below the split index are drawn large so the
                # solved class balances stay positive most of the time.
                def draw_class(first_index: int) -> np.ndarray:
                    idx = [i for i in range(first_index, n + 1, 2)][: m - 1]
                    return np.array(
                        [
                            rng.uniform(2.0, 4.0) if i < li else rng.uniform(0.2, 0.8)
                            for i in idx
                        ]
                    )
                p = juncture_iii_oae(
                    n,
                    li,
                    rng.uniform(0.4, math.pi - 0.4),
                    rng.uniform(0.4, math.pi - 0.4),
                    draw_class(1),
                    draw_class(2),
                )
            else:
                raise AssertionError(kind)
        except Exception:
            continue
        if _feasible(p, min_width):
            return p
    raise AssertionError(f"could not draw a feasible {kind} set with n={n}")


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
