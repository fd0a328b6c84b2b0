"""Juncture parameter sets: the four constructible families and their solvers.

A juncture is the closed chain of N edges where two prismatic tube segments
meet.  It is described by, for each vertex k:

* ``lengths[k]``   -- the juncture edge length between vertex k and k+1,
* ``angles_u[k]``  -- face angle between that edge and the u-side parallel
  edges of the adjacent trapezoid,
* ``angles_w[k]``  -- same against the w-side parallel edges,
* ``z_signs[k]``   -- the branch chosen for the out-of-plane step.

Four families admit a one-parameter flexion.  Their tags name the geometric
characteristic that defines them (Opposite/Adjacent Edges Equal, Opposite
Angles Equal), and each family fixes half of the parameters in terms of the
other half plus one or two lengths solved from the walk-around continuity
constraint

    sum_k lengths[k] * cos(angles_u[k]) = 0
    sum_k lengths[k] * cos(angles_w[k]) = 0.

Cosines of the stored angles are computed once at construction and carried
on the parameter set.  The constructors build them by copying and negating
a single evaluation per free angle, so the exact cancellations that make
the chain close survive floating point even at flat configurations, where
the z-step square root amplifies any last-ulp disagreement.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .errors import (
    FlexprismError,
    InfeasibleLengthError,
    SingularConstraintError,
)
from .geom import check_face_angle

__all__ = [
    "JunctureType",
    "JunctureParams",
    "sign_pattern",
    "continuity_residual",
    "juncture_i_oee",
    "juncture_ii_aee",
    "juncture_ii_oee",
    "juncture_iii_oae",
    "alternate_params",
    "with_z_signs",
]

# A solve coefficient smaller than this leaves the dependent length
# undetermined; cosines are O(1) so the threshold is absolute.
SINGULAR_TOL = 1e-9

# Relative tolerance on the continuity sums for a set to be accepted.
CONTINUITY_TOL = 1e-9


class JunctureType(enum.Enum):
    """Tags of the four flexible juncture families."""

    I_OEE = "I_OEE"
    II_AEE = "II_AEE"
    II_OEE = "II_OEE"
    III_OAE = "III_OAE"


def _as_float_array(values: Sequence[float], name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float).copy()
    if arr.ndim != 1:
        raise FlexprismError(f"{name} must be a flat sequence")
    if not np.all(np.isfinite(arr)):
        raise FlexprismError(f"{name} must be finite, got {values!r}")
    return arr


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class JunctureParams:
    """A validated juncture parameter set.

    Instances are immutable; their arrays are read-only.  Build them with
    the family constructors below, or directly for hand-made sets (the
    all-right-angle juncture, fault-injection tests), in which case
    ``z_signs`` must be supplied unless ``kind`` determines it.
    """

    n: int
    angles_u: np.ndarray
    angles_w: np.ndarray
    lengths: np.ndarray
    kind: JunctureType | None = None
    z_signs: np.ndarray | None = None
    l_idx: int | None = None
    cos_u: np.ndarray = field(default=None, repr=False)  # type: ignore[assignment]
    cos_w: np.ndarray = field(default=None, repr=False)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        n = int(self.n)
        if n < 4 or n % 2 != 0:
            raise FlexprismError(f"vertex count n must be even and >= 4, got {n}")
        au = _as_float_array(self.angles_u, "angles_u")
        aw = _as_float_array(self.angles_w, "angles_w")
        ls = _as_float_array(self.lengths, "lengths")
        if not (len(au) == len(aw) == len(ls) == n):
            raise FlexprismError(
                f"angles_u, angles_w, lengths must all have length n={n}, got "
                f"{len(au)}, {len(aw)}, {len(ls)}"
            )
        for k in range(n):
            check_face_angle(au[k], f"angles_u[{k}]")
            check_face_angle(aw[k], f"angles_w[{k}]")
        if np.any(ls <= 0.0):
            bad = int(np.argmin(ls))
            raise InfeasibleLengthError(
                f"lengths must be positive; lengths[{bad}] = {ls[bad]!r}"
            )
        cu = self.cos_u if self.cos_u is not None else np.cos(au)
        cw = self.cos_w if self.cos_w is not None else np.cos(aw)
        cu = _as_float_array(cu, "cos_u")
        cw = _as_float_array(cw, "cos_w")

        zs = self.z_signs
        if zs is None:
            if self.kind is None:
                raise FlexprismError("z_signs are required when kind is None")
            zs = sign_pattern(self.kind, n, self.l_idx)
        zs = np.asarray(zs, dtype=int).copy()
        if len(zs) != n or not np.all(np.abs(zs) == 1):
            raise FlexprismError("z_signs must be n entries of +1 or -1")

        if self.kind is JunctureType.III_OAE:
            if self.l_idx is None:
                raise FlexprismError("III_OAE sets require l_idx")
            _check_l_idx(n, self.l_idx)

        object.__setattr__(self, "n", n)
        object.__setattr__(self, "angles_u", _freeze(au))
        object.__setattr__(self, "angles_w", _freeze(aw))
        object.__setattr__(self, "lengths", _freeze(ls))
        object.__setattr__(self, "cos_u", _freeze(cu))
        object.__setattr__(self, "cos_w", _freeze(cw))
        object.__setattr__(self, "z_signs", _freeze(zs))

        ru, rw = continuity_residual(self)
        scale = float(np.sum(ls))
        if max(abs(ru), abs(rw)) > CONTINUITY_TOL * scale:
            raise FlexprismError(
                "continuity violated: sum(L cos angle) must vanish on both "
                f"sides, got ({ru:.3e}, {rw:.3e}) for total length {scale:.3g}"
            )

    @property
    def m(self) -> int:
        return self.n // 2

    @property
    def total_length(self) -> float:
        return float(np.sum(self.lengths))

    # Complementary face angles on the far side of each parallel edge;
    # derived on demand, never stored.
    @property
    def co_angles_u(self) -> np.ndarray:
        return np.pi - self.angles_u

    @property
    def co_angles_w(self) -> np.ndarray:
        return np.pi - self.angles_w


def _check_l_idx(n: int, l_idx: int) -> int:
    # The valid range is [3, n-2]; n = 4 keeps its single classic case
    # l_idx = 3 (the opposite vertex).
    hi = max(3, n - 2)
    if not (3 <= l_idx <= hi):
        raise FlexprismError(
            f"l_idx must lie in [3, n-2] (l_idx=3 when n=4); got l_idx={l_idx} for n={n}"
        )
    return l_idx


def sign_pattern(
    kind: JunctureType | "JunctureParams",
    n: int | None = None,
    l_idx: int | None = None,
    free: Sequence[int] | None = None,
) -> np.ndarray:
    """Default z-step sign pattern for a family.

    The families fix only an antisymmetry; the remaining signs are free and
    default to +1.  ``free`` supplies the free half for I/II families (m
    entries) or the two per-parity-class flips for III_OAE.  The first
    argument may be a JunctureParams, in which case n and l_idx are taken
    from it.
    """
    if isinstance(kind, JunctureParams):
        if kind.kind is None:
            raise FlexprismError("sign_pattern needs a family tag; this set has none")
        n, l_idx, kind = kind.n, kind.l_idx, kind.kind
    if n is None:
        raise FlexprismError("sign_pattern requires n when given a bare family tag")
    m = n // 2
    zs = np.ones(n, dtype=int)
    if kind in (JunctureType.I_OEE, JunctureType.II_OEE):
        f = np.asarray(free if free is not None else np.ones(m), dtype=int)
        zs[:m] = f
        zs[m:] = -f
    elif kind is JunctureType.II_AEE:
        f = np.asarray(free if free is not None else np.ones(m), dtype=int)
        for k in range(m):
            zs[k] = f[k]
            zs[n - 1 - k] = -f[k]
    elif kind is JunctureType.III_OAE:
        if l_idx is None:
            raise FlexprismError("III_OAE sign pattern requires l_idx")
        flips = np.asarray(free if free is not None else (1, 1), dtype=int)
        for k in range(n):
            base = 1 if (k + 1) < l_idx else -1
            zs[k] = base * flips[k % 2]
    else:
        raise FlexprismError(f"unknown juncture kind {kind!r}")
    if not np.all(np.abs(zs) == 1):
        raise FlexprismError("free signs must be +1 or -1")
    return zs


def continuity_residual(p: JunctureParams) -> tuple[float, float]:
    """The two walk-around sums (sum L cos(angles_u), sum L cos(angles_w)).

    Both vanish for every valid parameter set; they are the x/y part of the
    chain closing on itself.
    """
    return (
        float(np.sum(p.lengths * p.cos_u)),
        float(np.sum(p.lengths * p.cos_w)),
    )


def _solve_single(
    free_lengths: np.ndarray, coeffs: np.ndarray, what: str
) -> np.ndarray:
    """Solve the last length of a half-set from sum(L_k * coeffs_k) = 0."""
    m = len(coeffs)
    if len(free_lengths) == m:
        return free_lengths
    if len(free_lengths) != m - 1:
        raise FlexprismError(
            f"{what}: expected {m - 1} free lengths (solve) or {m} (validate), "
            f"got {len(free_lengths)}"
        )
    coef = coeffs[m - 1]
    if abs(coef) < SINGULAR_TOL:
        raise SingularConstraintError(
            f"{what}: coefficient of the dependent length is ~0 "
            f"({coef:.3e}); the length is undetermined. Supply all {m} lengths "
            "explicitly if the constraint is degenerate."
        )
    solved = -float(np.sum(free_lengths * coeffs[: m - 1])) / float(coef)
    if solved <= 0.0:
        raise InfeasibleLengthError(
            f"{what}: solved dependent length is {solved:.6g} <= 0"
        )
    return np.concatenate([free_lengths, [solved]])


def juncture_i_oee(beta: Sequence[float], lengths: Sequence[float]) -> JunctureParams:
    """Opposite-edges-equal family, first kind.

    Parameters
    ----------
    beta:
        All n = 2m u-side face angles, radians.  The w-side angles are the
        same values shifted by half a turn around the chain.
    lengths:
        Either m-1 free lengths (the m-th is solved from continuity) or all
        m, which are then validated.  Edge lengths repeat with period m.
    """
    beta_arr = _as_float_array(beta, "beta")
    n = len(beta_arr)
    if n < 4 or n % 2:
        raise FlexprismError(f"beta must have even length >= 4, got {n}")
    m = n // 2
    cu = np.cos(beta_arr)
    coeffs = cu[:m] + cu[m:]
    half = _solve_single(_as_float_array(lengths, "lengths"), coeffs, "I_OEE continuity")
    full_lengths = np.concatenate([half, half])
    angles_w = np.concatenate([beta_arr[m:], beta_arr[:m]])
    cw = np.concatenate([cu[m:], cu[:m]])
    return JunctureParams(
        n=n,
        angles_u=beta_arr,
        angles_w=angles_w,
        lengths=full_lengths,
        kind=JunctureType.I_OEE,
        cos_u=cu,
        cos_w=cw,
    )


def juncture_ii_aee(beta: Sequence[float], lengths: Sequence[float]) -> JunctureParams:
    """Adjacent-edges-equal family, second kind.

    ``beta`` holds all n u-side angles; the w-side angles are the same
    values in reversed order, and edge lengths are palindromic.  ``lengths``
    follows the same m-1 (solve) / m (validate) convention as
    :func:`juncture_i_oee`.
    """
    beta_arr = _as_float_array(beta, "beta")
    n = len(beta_arr)
    if n < 4 or n % 2:
        raise FlexprismError(f"beta must have even length >= 4, got {n}")
    m = n // 2
    cu = np.cos(beta_arr)
    coeffs = cu[:m] + cu[::-1][:m]
    half = _solve_single(_as_float_array(lengths, "lengths"), coeffs, "II_AEE continuity")
    full_lengths = np.concatenate([half, half[::-1]])
    return JunctureParams(
        n=n,
        angles_u=beta_arr,
        angles_w=beta_arr[::-1].copy(),
        lengths=full_lengths,
        kind=JunctureType.II_AEE,
        cos_u=cu,
        cos_w=cu[::-1].copy(),
    )


def juncture_ii_oee(
    beta: Sequence[float],
    b: Sequence[float],
    lengths: Sequence[float],
) -> JunctureParams:
    """Opposite-edges-equal family, second kind.

    All three parameter arrays repeat with period m, so only the first half
    is supplied: ``beta`` and ``b`` are the m u-side and w-side angles.
    ``lengths`` is either all m half-lengths (validated) or m-2 free ones;
    the last two are solved from the pair of continuity sums, which are
    independent for this family.

    When the 2x2 solve is singular but consistent (a dependent length drops
    out of both sums, or the system is homogeneous with a positive ray),
    the undetermined length defaults to 1.0.
    """
    beta_arr = _as_float_array(beta, "beta")
    b_arr = _as_float_array(b, "b")
    m = len(beta_arr)
    if m < 2 or len(b_arr) != m:
        raise FlexprismError("beta and b must both have length m >= 2")
    cu_h = np.cos(beta_arr)
    cw_h = np.cos(b_arr)
    ls = _as_float_array(lengths, "lengths")

    if len(ls) == m:
        half = ls
    elif len(ls) == m - 2:
        half = np.concatenate([ls, _solve_pair(ls, cu_h, cw_h)])
    else:
        raise FlexprismError(
            f"II_OEE: expected {m - 2} free lengths (solve) or {m} (validate), got {len(ls)}"
        )
    return JunctureParams(
        n=2 * m,
        angles_u=np.concatenate([beta_arr, beta_arr]),
        angles_w=np.concatenate([b_arr, b_arr]),
        lengths=np.concatenate([half, half]),
        kind=JunctureType.II_OEE,
        cos_u=np.concatenate([cu_h, cu_h]),
        cos_w=np.concatenate([cw_h, cw_h]),
    )


def _solve_pair(free: np.ndarray, cu: np.ndarray, cw: np.ndarray) -> np.ndarray:
    """Solve the last two half-lengths from the two continuity sums."""
    m = len(cu)
    a = np.array([[cu[m - 2], cu[m - 1]], [cw[m - 2], cw[m - 1]]])
    rhs = -np.array(
        [float(np.sum(free * cu[: m - 2])), float(np.sum(free * cw[: m - 2]))]
    )
    det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    if abs(det) >= SINGULAR_TOL:
        sol = np.linalg.solve(a, rhs)
        if np.min(sol) <= 0.0:
            raise InfeasibleLengthError(
                f"II_OEE: solved lengths ({sol[0]:.6g}, {sol[1]:.6g}) not positive"
            )
        return sol

    col1, col2 = a[:, 0], a[:, 1]
    n1, n2 = np.max(np.abs(col1)), np.max(np.abs(col2))

    if n1 < SINGULAR_TOL and n2 < SINGULAR_TOL:
        # Both dependents drop out of both sums: right angles.
        if np.max(np.abs(rhs)) > SINGULAR_TOL:
            raise SingularConstraintError(
                "II_OEE: both dependent lengths drop out but the free lengths "
                "do not balance the continuity sums"
            )
        return np.array([1.0, 1.0])

    if n1 < SINGULAR_TOL or n2 < SINGULAR_TOL:
        # One dependent drops out; the other is overdetermined and must be
        # consistent across the two sums.
        live, dead = (1, 0) if n1 < SINGULAR_TOL else (0, 1)
        col = a[:, live]
        vals = [rhs[i] / col[i] for i in range(2) if abs(col[i]) >= SINGULAR_TOL]
        if max(vals) - min(vals) > 1e-9 * max(1.0, abs(vals[0])):
            raise SingularConstraintError(
                f"II_OEE: the two continuity sums demand conflicting values "
                f"({vals[0]:.6g} vs {vals[-1]:.6g}) for the same dependent length"
            )
        solved = float(np.mean(vals))
        if solved <= 0.0:
            raise InfeasibleLengthError(
                f"II_OEE: solved dependent length is {solved:.6g} <= 0"
            )
        out = np.empty(2)
        out[live] = solved
        out[dead] = 1.0
        return out

    # Proportional rows: the pair is determined at best up to scale.
    raise SingularConstraintError(
        "II_OEE: the continuity rows are proportional; the dependent length "
        "pair is undetermined. Supply all lengths explicitly instead."
    )


def juncture_iii_oae(
    n: int,
    l_idx: int,
    beta: float,
    b: float,
    odd_lengths: Sequence[float],
    even_lengths: Sequence[float],
) -> JunctureParams:
    """Opposite-angles-equal family, third kind.

    Two vertices (index 1 and index ``l_idx``) carry supplementary opposite
    angles; everywhere else opposite angles are equal, which leaves exactly
    two free angles ``beta`` and ``b``.  Every face angle is one of beta, b
    or their supplements, assigned by position parity relative to ``l_idx``.

    Lengths split into the odd- and even-index classes (1-based).  Each
    class balances across ``l_idx``:

        sum of lengths at indices < l_idx  =  sum at indices >= l_idx

    ``odd_lengths`` / ``even_lengths`` list each class in index order,
    either complete (validated) or with the largest index omitted (solved).
    """
    if n < 4 or n % 2:
        raise FlexprismError(f"n must be even and >= 4, got {n}")
    _check_l_idx(n, l_idx)
    m = n // 2
    beta = check_face_angle(float(beta), "beta")
    b = check_face_angle(float(b), "b")
    kx = l_idx // 2

    cb, cB = math.cos(beta), math.cos(b)
    angles_u = np.empty(n)
    angles_w = np.empty(n)
    cos_u = np.empty(n)
    cos_w = np.empty(n)
    # Odd 1-based positions 2k-1, k = 1..m.
    for k in range(1, m + 1):
        i = 2 * k - 2
        if k <= kx:
            angles_u[i], angles_w[i] = beta, b
            cos_u[i], cos_w[i] = cb, cB
        else:
            angles_u[i], angles_w[i] = math.pi - beta, math.pi - b
            cos_u[i], cos_w[i] = -cb, -cB
    # Even 1-based positions 2k; the split index differs by parity of l_idx.
    even_cut = kx - 1 if l_idx % 2 == 0 else kx
    for k in range(1, m + 1):
        i = 2 * k - 1
        if k <= even_cut:
            angles_u[i], angles_w[i] = math.pi - b, math.pi - beta
            cos_u[i], cos_w[i] = -cB, -cb
        else:
            angles_u[i], angles_w[i] = b, beta
            cos_u[i], cos_w[i] = cB, cb

    lengths = np.empty(n)
    for parity, supplied in ((1, odd_lengths), (0, even_lengths)):
        cls = [i for i in range(1, n + 1) if i % 2 == parity]  # 1-based
        name = "odd_lengths" if parity else "even_lengths"
        vals = _as_float_array(supplied, name)
        if len(vals) == len(cls):
            for i, v in zip(cls, vals):
                lengths[i - 1] = v
        elif len(vals) == len(cls) - 1:
            dep = cls[-1]
            for i, v in zip(cls[:-1], vals):
                lengths[i - 1] = v
            below = sum(lengths[i - 1] for i in cls if i < l_idx)
            above = sum(lengths[i - 1] for i in cls[:-1] if i >= l_idx)
            solved = below - above
            if solved <= 0.0:
                raise InfeasibleLengthError(
                    f"{name}: solved dependent length L_{dep} = {solved:.6g} <= 0; "
                    "the class cannot balance across l_idx"
                )
            lengths[dep - 1] = solved
        else:
            raise FlexprismError(
                f"{name}: expected {len(cls) - 1} free lengths (solve) or "
                f"{len(cls)} (validate), got {len(vals)}"
            )
        below = sum(lengths[i - 1] for i in cls if i < l_idx)
        above = sum(lengths[i - 1] for i in cls if i >= l_idx)
        if abs(below - above) > 1e-9 * (below + above):
            raise FlexprismError(
                f"{name}: class does not balance across l_idx={l_idx}: "
                f"{below:.6g} vs {above:.6g}"
            )

    return JunctureParams(
        n=n,
        angles_u=angles_u,
        angles_w=angles_w,
        lengths=lengths,
        kind=JunctureType.III_OAE,
        l_idx=l_idx,
        cos_u=cos_u,
        cos_w=cos_w,
    )


def alternate_params(p: JunctureParams, variant: str) -> JunctureParams:
    """One of the three reflected parameter sets of a juncture.

    Reflecting the tube on one or both sides of the juncture replaces the
    corresponding face angles by their supplements:

        A: (angles_u, pi - angles_w)
        B: (pi - angles_u, pi - angles_w)
        C: (pi - angles_u, angles_w)

    Continuity and closure survive (cosines only flip sign column-wise, and
    the z-step pairings are unchanged), so the reflected juncture flexes
    too, though generally over a different interval.  The result keeps the
    source's z_signs but drops the family tag: reflections usually leave
    the named family.
    """
    v = str(variant).upper()
    if v not in ("A", "B", "C"):
        raise FlexprismError(f"variant must be one of 'A', 'B', 'C', got {variant!r}")
    flip_u = v in ("B", "C")
    flip_w = v in ("A", "B")
    return JunctureParams(
        n=p.n,
        angles_u=(np.pi - p.angles_u) if flip_u else p.angles_u.copy(),
        angles_w=(np.pi - p.angles_w) if flip_w else p.angles_w.copy(),
        lengths=p.lengths.copy(),
        kind=None,
        z_signs=p.z_signs.copy(),
        l_idx=p.l_idx,
        cos_u=(-p.cos_u) if flip_u else p.cos_u.copy(),
        cos_w=(-p.cos_w) if flip_w else p.cos_w.copy(),
    )


def with_z_signs(p: JunctureParams, z_signs: Sequence[int]) -> JunctureParams:
    """Copy of a parameter set with a different z-step sign choice."""
    return replace(p, z_signs=np.asarray(z_signs, dtype=int))
