"""Reproducible randomized verification of every bound in the package.

Instance generation is a pure function of ``(master_seed, index)``: each
instance derives its own generator from that pair through numpy's
``SeedSequence``, so results never depend on execution order or on the
number of workers.  Aggregation merges fixed-size index chunks in index
order, which keeps floating-point accumulations byte-stable as well.

Three samplers are provided: unconstrained families, families whose
coefficients are placed inside a sampled disk (so the sharp bounds apply
by construction), and orthonormal families paired with a disk that
contains their coefficients.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .classical import (
    _cor2_report,
    _dragomir04_branch2,
    boas_bellman,
    bombieri,
    dragomir03,
    dragomir04,
    dragomir04_corollaries,
    dragomir_pq,
    heilbronn,
    pecaric,
    selberg,
)
from .core import Family, ParameterError, PreconditionError, lift_gram_values
from .extremal import ExtremalTarget, plan, solve_phases
from .report import DEFAULT_TOLERANCE, BoundReport, evaluated, skipped
from .sharp import (
    Disk,
    lemma_eq6,
    orthonormal_remark,
    theorem21,
    theorem22,
    triangle_reverse_l2,
    triangle_reverse_sq,
)

__all__ = [
    "DEFAULT_P_VALUES",
    "DiskSampler",
    "FuzzConfig",
    "FuzzSummary",
    "TightnessRow",
    "sample_family",
    "sample_disk_family",
    "sample_orthonormal_family",
    "check_all",
    "fuzz",
    "tightness_compare",
]

DEFAULT_P_VALUES = (1.5, 3.0)

# ids competing as upper bounds for the Bessel sum, in tie-break priority
# order; theorem21 competes through its squared right side
_COMPETING = ("boas_bellman", "bombieri", "dragomir03", "theorem21", "theorem22")

_CHUNK = 256  # fixed chunk size; must not depend on the worker count


@dataclass(frozen=True)
class DiskSampler:
    """Parameters for drawing (gamma, Gamma) pairs and in-disk coefficients.

    ``boundary_fraction`` is the per-coefficient probability of placing a
    value exactly on the disk boundary; ``extremal_fraction`` is the
    per-instance probability of using the equality-case phase allocation
    instead of independent draws (complex mode only).
    """

    scale: float = 1.0
    boundary_fraction: float = 0.25
    extremal_fraction: float = 0.0

    def __post_init__(self) -> None:
        if self.scale <= 0.0:
            raise ValueError("scale must be positive")
        for name in ("boundary_fraction", "extremal_fraction"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")


@dataclass(frozen=True)
class FuzzConfig:
    master_seed: int = 0
    instances: int = 1000
    n_range: tuple[int, int] = (1, 12)
    d_range: tuple[int, int] = (1, 8)
    field_mode: str = "complex"
    disk_sampler: DiskSampler = field(default_factory=DiskSampler)
    p_values: tuple[float, ...] = DEFAULT_P_VALUES
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self) -> None:
        if self.instances < 0:
            raise ValueError("instances must be >= 0")
        for name, (lo, hi) in (("n_range", self.n_range), ("d_range", self.d_range)):
            if lo < 1 or hi < lo:
                raise ValueError(f"{name} must be a non-empty range of integers >= 1")
        if self.field_mode not in ("real", "complex"):
            raise ValueError(f"field_mode must be 'real' or 'complex', got {self.field_mode!r}")
        if any(p <= 1.0 for p in self.p_values):
            raise ValueError("all p values must exceed 1")
        if self.tolerance <= 0.0:
            raise ValueError("tolerance must be positive")

    def as_dict(self) -> dict:
        d = asdict(self)
        d["n_range"] = list(self.n_range)
        d["d_range"] = list(self.d_range)
        d["p_values"] = list(self.p_values)
        return d


def _rng(cfg: FuzzConfig, index: int, lane: int) -> np.random.Generator:
    seed = cfg.master_seed & 0xFFFFFFFFFFFFFFFF
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(index, lane))
    return np.random.Generator(np.random.PCG64(ss))


def _draw_matrix(rng: np.random.Generator, n: int, d: int, mode: str) -> np.ndarray:
    if mode == "real":
        return rng.standard_normal((n, d)).astype(np.complex128)
    re = rng.standard_normal((n, d))
    im = rng.standard_normal((n, d))
    return (re + 1j * im) / np.sqrt(2.0)


def _draw_sizes(rng: np.random.Generator, cfg: FuzzConfig) -> tuple[int, int]:
    n = int(rng.integers(cfg.n_range[0], cfg.n_range[1] + 1))
    d = int(rng.integers(cfg.d_range[0], cfg.d_range[1] + 1))
    return n, d


def _sample_family_impl(rng: np.random.Generator, cfg: FuzzConfig) -> Family:
    n, d = _draw_sizes(rng, cfg)
    x = _draw_matrix(rng, 1, d, cfg.field_mode)[0]
    ys = _draw_matrix(rng, n, d, cfg.field_mode)
    return Family(x, ys, cfg.field_mode)


def sample_family(cfg: FuzzConfig, index: int) -> Family:
    """Unconstrained family, deterministic in ``(master_seed, index)``."""
    if index >= cfg.instances:
        raise ValueError(f"index {index} out of range for {cfg.instances} instances")
    return _sample_family_impl(_rng(cfg, index, 0), cfg)


def _draw_disk(rng: np.random.Generator, cfg: FuzzConfig, want_positive_re: bool) -> Disk:
    scale = cfg.disk_sampler.scale
    while True:
        if cfg.field_mode == "real":
            g = complex(scale * rng.standard_normal())
            G = complex(scale * rng.standard_normal())
        else:
            vals = _draw_matrix(rng, 1, 2, "complex")[0] * scale
            g, G = complex(vals[0]), complex(vals[1])
        d = Disk(g, G)
        if abs(d.center) <= 1e-6 * max(1.0, scale):
            continue
        if want_positive_re and d.re_product <= 0.0:
            continue
        return d


def _draw_disk_points(
    rng: np.random.Generator, d: Disk, n: int, boundary_fraction: float, mode: str
) -> np.ndarray:
    # draw all randomness unconditionally so the stream layout is fixed
    on_boundary = rng.random(n) < boundary_fraction
    if mode == "real":
        interior = rng.uniform(-1.0, 1.0, n)
        signs = rng.integers(0, 2, n) * 2.0 - 1.0
        t = np.where(on_boundary, signs, interior)
        return d.center + d.radius * t.astype(np.complex128)
    u = rng.random(n)
    ang = rng.uniform(0.0, 2.0 * np.pi, n)
    rho = d.radius * np.where(on_boundary, 1.0, np.sqrt(u))
    return d.center + rho * np.exp(1j * ang)


def _sample_disk_impl(
    rng: np.random.Generator, cfg: FuzzConfig, index: int
) -> tuple[Family, Disk]:
    n, d_dim = _draw_sizes(rng, cfg)
    while True:
        x = _draw_matrix(rng, 1, d_dim, cfg.field_mode)[0]
        if np.linalg.norm(x) > 0.0:
            break
    disk = _draw_disk(rng, cfg, want_positive_re=(index % 2 == 0))
    use_extremal = rng.random() < cfg.disk_sampler.extremal_fraction
    zs = None
    if use_extremal and cfg.field_mode == "complex" and disk.re_product > 0.0:
        target = ExtremalTarget.THM21 if (index // 2) % 2 == 0 else ExtremalTarget.THM22
        spec = plan(target, n, disk)
        if spec.feasible:
            zs = disk.center + disk.radius * np.exp(1j * solve_phases(spec))
    if zs is None:
        zs = _draw_disk_points(rng, disk, n, cfg.disk_sampler.boundary_fraction, cfg.field_mode)
    ws = _draw_matrix(rng, n, d_dim, cfg.field_mode)
    ys = lift_gram_values(x, zs, ws)
    return Family(x, ys, cfg.field_mode), disk


def sample_disk_family(cfg: FuzzConfig, index: int) -> tuple[Family, Disk]:
    """Family whose coefficients lie in a sampled disk, plus that disk.

    The disk center is never zero, and even-indexed instances force
    ``Re(Gamma conj(gamma)) > 0`` so both sharp bounds are exercised.
    Free components orthogonal to ``x`` are added to every test vector.
    """
    if index >= cfg.instances:
        raise ValueError(f"index {index} out of range for {cfg.instances} instances")
    return _sample_disk_impl(_rng(cfg, index, 1), cfg, index)


def sample_orthonormal_family(cfg: FuzzConfig, index: int) -> tuple[Family, Disk]:
    """Orthonormal family with coefficients confined to a valid disk.

    The disk always satisfies ``Re(Gamma conj(gamma)) > 0`` so that both
    specialised orthonormal bounds apply.  The reference vector is built
    from prescribed in-disk coefficients plus a component outside the span.
    """
    if index >= cfg.instances:
        raise ValueError(f"index {index} out of range for {cfg.instances} instances")
    rng = _rng(cfg, index, 4)
    n, d_draw = _draw_sizes(rng, cfg)
    dim = max(d_draw, n)
    disk = _draw_disk(rng, cfg, want_positive_re=True)
    coeffs = _draw_disk_points(rng, disk, n, cfg.disk_sampler.boundary_fraction, cfg.field_mode)
    if cfg.field_mode == "real":
        # QR in real arithmetic keeps imaginary parts exactly zero
        q, _ = np.linalg.qr(rng.standard_normal((dim, n)))
        es = q.T.astype(np.complex128)
    else:
        q, _ = np.linalg.qr(_draw_matrix(rng, dim, n, "complex"))
        es = q.T.copy()  # rows are orthonormal
    x = coeffs @ es
    if dim > n:
        extra = _draw_matrix(rng, 1, dim, cfg.field_mode)[0]
        extra = extra - (es.conj() @ extra) @ es
        x = x + extra
    return Family(x, es, cfg.field_mode), disk


def _instance_inputs(
    cfg: FuzzConfig, index: int
) -> tuple[Family, np.ndarray, Family, Disk, np.ndarray]:
    """Both samplers plus weight draws, two generator constructions total.

    The weight vectors are drawn from the same per-lane streams, after the
    family draws, so the public samplers observe identical prefixes.
    """
    rng0 = _rng(cfg, index, 0)
    fam = _sample_family_impl(rng0, cfg)
    c_gen = _draw_matrix(rng0, 1, fam.n, cfg.field_mode)[0]
    rng1 = _rng(cfg, index, 1)
    disk_fam, disk = _sample_disk_impl(rng1, cfg, index)
    c_disk = _draw_matrix(rng1, 1, disk_fam.n, cfg.field_mode)[0]
    return fam, c_gen, disk_fam, disk, c_disk


def _special_coefficient_choices(f: Family) -> np.ndarray:
    """The three classical weight choices, stacked, zero entries guarded."""
    a = f.coefficients
    abs_a = f.abs_coefficients
    conj_a = np.conj(a)
    row = f.gram_row_sums
    safe_row = np.where(row == 0.0, 1.0, row)
    safe_abs = np.where(abs_a == 0.0, 1.0, abs_a)
    return np.stack(
        [
            conj_a,
            np.where(row == 0.0, 0.0, conj_a / safe_row),
            np.where(abs_a == 0.0, 1.0 + 0.0j, conj_a / safe_abs),
        ]
    )


def _pecaric_reports(f: Family, c: np.ndarray) -> list[BoundReport]:
    res = pecaric(f, c)
    return [
        evaluated("pecaric_first", res.lhs, res.rhs_first),
        evaluated("pecaric_second", res.lhs, res.rhs_second),
    ]


def _pecaric_batch_reports(f: Family, choices: np.ndarray) -> list[BoundReport]:
    """Same numbers as ``pecaric`` per row of ``choices``, one matmul each."""
    lhs = np.abs(choices @ f.coefficients) ** 2
    c2 = choices.real**2 + choices.imag**2
    rhs_first = f.x_norm_sq * (c2 @ f.gram_row_sums)
    rhs_second = f.x_norm_sq * c2.sum(axis=1) * f.max_row_sum
    reports = []
    for k in range(choices.shape[0]):
        reports.append(evaluated("pecaric_first", lhs[k], rhs_first[k]))
        reports.append(evaluated("pecaric_second", lhs[k], rhs_second[k]))
    return reports


def check_all(
    f: Family,
    d: Disk | None = None,
    c: Sequence[complex] | None = None,
    p_values: Sequence[float] = DEFAULT_P_VALUES,
    tol: float = DEFAULT_TOLERANCE,
) -> list[BoundReport]:
    """Evaluate every applicable bound on one family.

    Bounds whose preconditions fail are reported with
    ``preconditions_met = False`` instead of raising.  The disk-based
    bounds run only when ``d`` is given; the weighted bounds only when the
    coefficient list ``c`` is given; the orthonormal specialisations only
    when the family is detected to be orthonormal.
    """
    p_values = tuple(p for p in p_values if p > 1.0)
    reports = [boas_bellman(f), bombieri(f), selberg(f), dragomir03(f)]
    for p in p_values:
        reports.append(dragomir_pq(f, p))
    reports.append(heilbronn(f))
    if c is not None:
        carr = np.asarray(c, dtype=np.complex128)
        reports.extend(_pecaric_reports(f, carr))
        first = dragomir04(f, carr, p_values[0] if p_values else None)
        reports.append(evaluated("dragomir04_b1", first.lhs, first.rhs_branch1))
        if first.rhs_branch2 is not None:
            reports.append(evaluated("dragomir04_b2", first.lhs, first.rhs_branch2))
        for p in p_values[1:]:
            rhs2 = _dragomir04_branch2(f, np.abs(carr), p)
            reports.append(evaluated("dragomir04_b2", first.lhs, rhs2))
        reports.append(evaluated("dragomir04_b3", first.lhs, first.rhs_branch3))
    cor1, cor2, cor3 = dragomir04_corollaries(f, p_values[0] if p_values else None)
    reports.extend([cor1, cor2])
    for p in p_values[1:]:
        reports.append(_cor2_report(f, p))
    reports.append(cor3)
    if d is not None:
        for fn, bid in ((theorem21, "theorem21"), (theorem22, "theorem22")):
            try:
                reports.append(fn(f, d, tol))
            except ParameterError as exc:
                reports.append(skipped(bid, str(exc)))
        try:
            lhs, rhs = lemma_eq6(f, d, tol)
            reports.append(evaluated("lemma_eq6", lhs, rhs))
        except (ParameterError, PreconditionError) as exc:
            reports.append(skipped("lemma_eq6", str(exc)))
        zs = f.coefficients
        for fn, bid in (
            (triangle_reverse_l2, "triangle_reverse_l2"),
            (triangle_reverse_sq, "triangle_reverse_sq"),
        ):
            try:
                reports.append(fn(zs, d, tol))
            except ParameterError as exc:
                reports.append(skipped(bid, str(exc)))
        if f.n <= f.dim and float(np.abs(f.gram - np.eye(f.n)).max()) <= 1e-9:
            rem = orthonormal_remark(f.x, f.ys, d, tol)
            reports.extend([rem.report30, rem.report31])
    return reports


@dataclass
class FuzzSummary:
    """Aggregated outcome of a fuzz run; a pure function of its config."""

    config: FuzzConfig
    checked: dict[str, int]
    violations: list[dict]
    min_slack: dict[str, float]
    tight: dict[str, int]
    tightness_wins: dict[str, int]

    def as_dict(self) -> dict:
        return {
            "config": self.config.as_dict(),
            "checked": dict(self.checked),
            "violations": list(self.violations),
            "min_slack": dict(self.min_slack),
            "tight": dict(self.tight),
            "tightness_wins": dict(self.tightness_wins),
        }


class _FuzzPartial(NamedTuple):
    checked: dict
    violations: list
    min_slack: dict
    tight: dict
    wins: dict


def _tightness_winner(reports: Iterable[BoundReport]) -> str | None:
    by_id = {r.bound_id: r for r in reports if r.preconditions_met}
    best_id, best_val = None, None
    for bid in _COMPETING:
        rep = by_id.get(bid)
        if rep is None:
            continue
        val = rep.rhs**2 if bid == "theorem21" else rep.rhs
        if best_val is None or val < best_val:
            best_id, best_val = bid, val
    return best_id


def _instance_reports(cfg: FuzzConfig, index: int) -> list[tuple[str, list[BoundReport]]]:
    fam, c_gen, disk_fam, disk, c_disk = _instance_inputs(cfg, index)
    generic = check_all(fam, None, c_gen, cfg.p_values, cfg.tolerance)
    generic.extend(_pecaric_batch_reports(fam, _special_coefficient_choices(fam)))
    constrained = check_all(disk_fam, disk, c_disk, cfg.p_values, cfg.tolerance)
    constrained.extend(
        _pecaric_batch_reports(disk_fam, _special_coefficient_choices(disk_fam))
    )
    return [("generic", generic), ("disk", constrained)]


def _fuzz_chunk(args: tuple[FuzzConfig, int, int]) -> _FuzzPartial:
    cfg, start, stop = args
    checked: dict[str, int] = {}
    violations: list[dict] = []
    min_slack: dict[str, float] = {}
    tight: dict[str, int] = {}
    wins: dict[str, int] = {}
    for index in range(start, stop):
        for sampler, reports in _instance_reports(cfg, index):
            for rep in reports:
                rel = rep.relative_slack()
                if rel is None:
                    continue
                checked[rep.bound_id] = checked.get(rep.bound_id, 0) + 1
                prev = min_slack.get(rep.bound_id)
                if prev is None or rel < prev:
                    min_slack[rep.bound_id] = rel
                if rel < -cfg.tolerance:
                    violations.append(
                        {
                            "bound_id": rep.bound_id,
                            "sampler": sampler,
                            "instance_seed": index,
                            "slack": rel,
                        }
                    )
                elif abs(rel) <= cfg.tolerance:
                    tight[rep.bound_id] = tight.get(rep.bound_id, 0) + 1
            winner = _tightness_winner(reports)
            if winner is not None:
                wins[winner] = wins.get(winner, 0) + 1
    return _FuzzPartial(checked, violations, min_slack, tight, wins)


def _chunks(instances: int) -> list[tuple[int, int]]:
    return [(a, min(a + _CHUNK, instances)) for a in range(0, instances, _CHUNK)]


def _map_chunks(fn, cfg: FuzzConfig, workers: int) -> list:
    tasks = [(cfg, a, b) for a, b in _chunks(cfg.instances)]
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def fuzz(cfg: FuzzConfig, workers: int = 1) -> FuzzSummary:
    """Check every bound over all seeded instances of both samplers.

    Violations are recorded, never raised.  The summary is identical for
    any ``workers`` value because instances are independent and chunk
    results merge in index order.
    """
    checked: dict[str, int] = {}
    violations: list[dict] = []
    min_slack: dict[str, float] = {}
    tight: dict[str, int] = {}
    wins: dict[str, int] = {}
    for part in _map_chunks(_fuzz_chunk, cfg, workers):
        for key, val in part.checked.items():
            checked[key] = checked.get(key, 0) + val
        violations.extend(part.violations)
        for key, val in part.min_slack.items():
            if key not in min_slack or val < min_slack[key]:
                min_slack[key] = val
        for key, val in part.tight.items():
            tight[key] = tight.get(key, 0) + val
        for key, val in part.wins.items():
            wins[key] = wins.get(key, 0) + val
    violations.sort(key=lambda v: (v["instance_seed"], v["sampler"], v["bound_id"]))
    return FuzzSummary(cfg, checked, violations, min_slack, tight, wins)


class TightnessRow(NamedTuple):
    bound_id: str
    wins: int
    mean_ratio: float


def _competing_reports(f: Family, d: Disk | None, tol: float) -> list[BoundReport]:
    reports = [boas_bellman(f), bombieri(f), dragomir03(f)]
    if d is not None:
        for fn, bid in ((theorem21, "theorem21"), (theorem22, "theorem22")):
            try:
                reports.append(fn(f, d, tol))
            except ParameterError as exc:
                reports.append(skipped(bid, str(exc)))
    return reports


def _compare_chunk(args: tuple[FuzzConfig, int, int, str]) -> dict:
    cfg, start, stop, ensemble = args
    wins = {bid: 0 for bid in _COMPETING}
    ratio_sum = {bid: 0.0 for bid in _COMPETING}
    ratio_count = {bid: 0 for bid in _COMPETING}
    for index in range(start, stop):
        if ensemble == "generic":
            f, d = sample_family(cfg, index), None
        elif ensemble == "disk":
            f, d = sample_disk_family(cfg, index)
        elif ensemble == "orthonormal":
            f, d = sample_orthonormal_family(cfg, index)
        else:
            raise ValueError(f"unknown ensemble {ensemble!r}")
        reports = _competing_reports(f, d, cfg.tolerance)
        winner = _tightness_winner(reports)
        if winner is not None:
            wins[winner] += 1
        for rep in reports:
            if rep.preconditions_met and rep.rhs > 0.0:
                ratio_sum[rep.bound_id] += rep.ratio
                ratio_count[rep.bound_id] += 1
    return {"wins": wins, "ratio_sum": ratio_sum, "ratio_count": ratio_count}


def tightness_compare(
    cfg: FuzzConfig, ensemble: str = "generic", workers: int = 1
) -> list[TightnessRow]:
    """Which bound gives the smallest Bessel-sum right side, per instance.

    Ties go to the earlier entry of the fixed priority order, so the sharp
    bounds only win when strictly smallest.  Returns one row per competing
    bound with its win count and mean tightness ratio (NaN when the bound
    never applied).
    """
    tasks = [(cfg, a, b, ensemble) for a, b in _chunks(cfg.instances)]
    if workers <= 1 or len(tasks) <= 1:
        parts = [_compare_chunk(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_compare_chunk, tasks))
    wins = {bid: 0 for bid in _COMPETING}
    ratio_sum = {bid: 0.0 for bid in _COMPETING}
    ratio_count = {bid: 0 for bid in _COMPETING}
    for part in parts:
        for bid in _COMPETING:
            wins[bid] += part["wins"][bid]
            ratio_sum[bid] += part["ratio_sum"][bid]
            ratio_count[bid] += part["ratio_count"][bid]
    rows = []
    for bid in _COMPETING:
        mean = ratio_sum[bid] / ratio_count[bid] if ratio_count[bid] else float("nan")
        rows.append(TightnessRow(bid, wins[bid], mean))
    return rows
