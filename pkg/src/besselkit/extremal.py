"""Construction of families attaining equality in the sharp disk bounds.

Equality in either sharp bound forces every coefficient onto the disk
boundary, ``z_j = center + radius * exp(i theta_j)``, and pins the sum of
the boundary phases: writing ``S = sum_j exp(i theta_j)``, the mean-vector
characterisation translates into

* ``S = -n * radius * center / (2 |center|^2)`` for ``theorem21``,
* ``S = -n * radius * center / |center|^2`` for ``theorem22``.

These closed forms are derived here, not quoted from anywhere; the test
suite validates them through the residual oracles before they are trusted
as fixtures.  ``solve_phases`` realises a prescribed ``S`` with at most two
distinct angles around ``arg(S)``, and ``build`` lifts the resulting
boundary values to an actual family with ``inner(x, y_j) = z_j``.

Feasibility is narrower than ``|S| <= n``.  Equality in the sqrt-form
bound also forces ``Re[(conj(Gamma) + conj(gamma)) inner(x, sum y_j)]`` to
be non-negative (it must equal its own modulus in the proof chain), and
under the boundary and energy constraints that real part equals
``n/4 * (8 |center|^2 - 4 radius^2)``.  The sqrt-form target is therefore
attainable only for ``radius <= sqrt(2) |center|``; in the remaining band
up to ``2 |center|`` the mean characterisation can be satisfied while the
bound stays strict, so such requests are refused.  The squared-form target
is always attainable under its ``Re(Gamma conj(gamma)) > 0`` hypothesis.
``n = 1`` additionally needs ``|S| = 1`` exactly, since a single unit
phase cannot have modulus below one.  Infeasible requests fail loudly; no
best-effort family is returned.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    BesselkitError,
    DimensionMismatch,
    Family,
    ParameterError,
    as_vector,
    lift_gram_values,
    project_orthogonal,
)
from .sharp import Disk

__all__ = [
    "ExtremalTarget",
    "ExtremalSpec",
    "InfeasibleConstruction",
    "plan",
    "solve_phases",
    "build",
]

_FEAS_TOL = 1e-12


class InfeasibleConstruction(BesselkitError, ValueError):
    """No family can attain equality for the requested parameters."""


class ExtremalTarget(enum.Enum):
    THM21 = "thm21"
    THM22 = "thm22"


@dataclass(frozen=True)
class ExtremalSpec:
    """Resolved equality construction: phase-sum target and feasibility."""

    target: ExtremalTarget
    n: int
    disk: Disk
    phase_sum: complex
    feasible: bool
    infeasible_reason: str = ""


def plan(target: ExtremalTarget, n: int, d: Disk) -> ExtremalSpec:
    """Compute the phase-sum target and decide feasibility.

    Raises ``ParameterError`` for parameters the parent bounds exclude
    (``Gamma = -gamma`` for ``theorem21``, ``Re(Gamma conj(gamma)) <= 0``
    for ``theorem22``); infeasibility of the equality case itself is
    reported through the ``feasible`` flag.
    """
    target = ExtremalTarget(target)
    if n < 1:
        raise ParameterError(f"family size must be >= 1, got {n}")
    center, radius = d.center, d.radius
    if target is ExtremalTarget.THM21:
        if abs(center) == 0.0:
            raise ParameterError("Gamma = -gamma gives a centerless constraint; not allowed")
        phase_sum = -n * radius * center / (2.0 * abs(center) ** 2)
    else:
        if d.re_product <= 0.0:
            raise ParameterError(
                f"Re(Gamma * conj(gamma)) must be positive, got {d.re_product}"
            )
        phase_sum = -n * radius * center / abs(center) ** 2
    s = abs(phase_sum)
    feasible, reason = True, ""
    if radius == 0.0:
        pass  # all boundary points coincide with the center; phases are free
    elif target is ExtremalTarget.THM21 and radius > np.sqrt(2.0) * abs(center) * (
        1.0 + _FEAS_TOL
    ):
        # equality would force a negative real part where the proof chain
        # needs a modulus; no family attains the bound in this band
        feasible = False
        reason = (
            f"radius {radius} exceeds sqrt(2) |center| = {np.sqrt(2.0) * abs(center)}; "
            "the sqrt-form bound is strict for every admissible family"
        )
    elif n == 1:
        if abs(s - 1.0) > _FEAS_TOL:
            feasible = False
            reason = (
                f"n = 1 needs |phase sum| = 1 exactly, got {s}; "
                "a single unit phase cannot realise it"
            )
    elif s > n * (1.0 + _FEAS_TOL):
        feasible = False
        reason = f"|phase sum| = {s} exceeds n = {n}"
    return ExtremalSpec(target, n, d, phase_sum, feasible, reason)


def solve_phases(spec: ExtremalSpec) -> np.ndarray:
    """Angles ``theta_j`` with ``sum exp(i theta_j) = spec.phase_sum``.

    Writing ``s = |phase_sum|`` and ``phi = arg(phase_sum)`` (``phi = 0``
    when the sum vanishes): even n places half the phases at ``phi + alpha``
    and half at ``phi - alpha`` with ``cos(alpha) = s / n``; odd n anchors
    one phase at ``phi`` and splits the rest into symmetric pairs with
    ``cos(beta) = (s - 1) / (n - 1)``.  For a zero-radius disk the returned
    zero vector is arbitrary: all boundary points equal the center and the
    phase sum never enters the construction.
    """
    if not spec.feasible:
        raise InfeasibleConstruction(spec.infeasible_reason or "infeasible specification")
    n = spec.n
    if spec.disk.radius == 0.0:
        return np.zeros(n)
    s = abs(spec.phase_sum)
    phi = float(np.angle(spec.phase_sum)) if s > 0.0 else 0.0
    if n == 1:
        return np.array([phi])
    if n % 2 == 0:
        alpha = float(np.arccos(np.clip(s / n, -1.0, 1.0)))
        half = n // 2
        return np.concatenate([np.full(half, phi + alpha), np.full(half, phi - alpha)])
    beta = float(np.arccos(np.clip((s - 1.0) / (n - 1.0), -1.0, 1.0)))
    pairs = (n - 1) // 2
    return np.concatenate(
        [[phi], np.full(pairs, phi + beta), np.full(pairs, phi - beta)]
    )


def build(
    target: ExtremalTarget,
    x,
    n: int,
    d: Disk,
    ws: Sequence | None = None,
) -> Family:
    """Return a family attaining equality in the requested sharp bound.

    Coefficients are ``center + radius * exp(i theta_j)`` with phases from
    ``solve_phases``, lifted against ``x``.  Optional free components ``ws``
    are projected onto the orthogonal complement of ``x`` and must then sum
    to zero, otherwise the mean-vector characterisation would be destroyed;
    violating inputs are rejected.
    """
    xa = as_vector(x)
    spec = plan(target, n, d)
    if not spec.feasible:
        raise InfeasibleConstruction(spec.infeasible_reason)
    thetas = solve_phases(spec)
    zs = d.center + d.radius * np.exp(1j * thetas)
    if ws is not None:
        warr = np.asarray(ws, dtype=np.complex128)
        if warr.shape != (n, xa.size):
            raise DimensionMismatch(
                f"ws must have shape {(n, xa.size)}, got {warr.shape}"
            )
        projected = np.stack([project_orthogonal(w, xa) for w in warr])
        drift = float(np.linalg.norm(projected.sum(axis=0)))
        scale = max(1.0, float(np.abs(warr).max()))
        if drift > 1e-9 * scale:
            raise ValueError(
                "orthogonal components must sum to zero after projection; "
                f"got residual norm {drift:.3g}"
            )
        ys = lift_gram_values(xa, zs, warr)
    else:
        ys = lift_gram_values(xa, zs)
    return Family(xa, ys)
