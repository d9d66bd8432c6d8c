"""Frequency spectrum search as determinant root finding over K.

The boundary determinant is scanned on a K grid (augmented with closed-form
uncracked eigenvalues as guide nodes), sign changes are bisected to the
requested tolerance, and near-singular systems yield the mode-shape
coefficients through a null-vector extraction. Everything is deterministic:
the same problem and configuration produce bit-identical spectra.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from . import kernel
from .errors import NoRootsInRange
from .model import ArchProblem

# Log-magnitude drop (natural log) that flags a suspected even-multiplicity root.
_DIP_DECADES = 6.0
_DIP_THRESHOLD = _DIP_DECADES * math.log(10.0)
# Relative offset of the closed-form guide nodes inserted around each K_n.
_GUIDE_OFFSET = 1e-6
_MAX_BISECTIONS = 200


@dataclass(frozen=True)
class SearchConfig:
    """Knobs of the determinant scan.

    ``k_max=None`` defaults to ten times the closed-form fifth eigenvalue of
    the uncracked problem, which comfortably covers five modes even when a
    crack shifts roots downward.
    """

    k_min: float = 1e-6
    k_max: float | None = None
    grid_points: int = 2000
    refine_tol: float = 1e-10
    max_modes: int = 5

    def __post_init__(self):
        if self.k_min < 0:
            raise ValueError("k_min must be nonnegative")
        if self.k_max is not None and self.k_max <= self.k_min:
            raise ValueError("k_max must exceed k_min")
        if self.grid_points < 16:
            raise ValueError("grid_points must be at least 16")
        if not 0.0 < self.refine_tol < 1e-3:
            raise ValueError("refine_tol must lie in (0, 1e-3)")
        if self.max_modes < 1:
            raise ValueError("max_modes must be at least 1")


class RootFlag(enum.Enum):
    BRACKETED = "Bracketed"
    SUSPECTED_DOUBLE = "SuspectedDouble"


@dataclass(frozen=True)
class Root:
    """One spectrum entry: eigenvalue, null-space coefficients, quality flag."""

    K: float
    coefficients: tuple[float, ...]
    flag: RootFlag
    min_pivot: float


@dataclass(frozen=True)
class Spectrum:
    roots: tuple[Root, ...]

    @property
    def K_values(self) -> tuple[float, ...]:
        return tuple(r.K for r in self.roots)

    def __len__(self) -> int:
        return len(self.roots)


@dataclass(frozen=True)
class ScanResult:
    """Sign-change brackets plus dip locations without a sign change."""

    brackets: tuple[tuple[float, float], ...]
    suspects: tuple[float, ...]


def boundary_matrix(problem: ArchProblem, K: float) -> kernel.BoundaryMatrix:
    """Assembled boundary/matching system of the problem at a trial K."""
    coeffs = kernel.characteristic_coefficients(K, problem.eta_nd)
    basis = kernel.quartic_roots(coeffs, phi_max=problem.beta)
    if problem.crack is None:
        return kernel.assemble_uncracked(basis, problem.beta)
    return kernel.assemble_cracked(
        basis, problem.beta, problem.crack.alpha, problem.crack.theta_c
    )


def boundary_determinant(problem: ArchProblem, K: float) -> tuple[int, float]:
    return kernel.det_sign_logmag(boundary_matrix(problem, K))


def _resolved(problem: ArchProblem, cfg: SearchConfig | None) -> SearchConfig:
    cfg = cfg if cfg is not None else SearchConfig()
    if cfg.k_max is None:
        estimate = kernel.uncracked_K_closed_form(5, problem.beta, problem.eta_nd)
        cfg = replace(cfg, k_max=10.0 * max(estimate, 1.0e-3))
    return cfg


def _grid_nodes(problem: ArchProblem, cfg: SearchConfig) -> list[float]:
    """Uniform K grid plus guide nodes straddling each closed-form K_n.

    The uncracked closed-form values are used even for cracked problems: a
    crack only shifts roots downward, so tight nodes around each K_n either
    bracket the uncracked root directly or add resolution where the shifted
    root must be.
    """
    k_min, k_max = cfg.k_min, cfg.k_max
    span = k_max - k_min
    m = cfg.grid_points - 1
    nodes = [k_min + span * i / m for i in range(cfg.grid_points)]
    n = 1
    while n <= 10000:
        kn = kernel.uncracked_K_closed_form(n, problem.beta, problem.eta_nd)
        lam = n * math.pi / problem.beta
        if kn > k_max and lam > 1.0:
            break
        for guide in (kn * (1.0 - _GUIDE_OFFSET), kn * (1.0 + _GUIDE_OFFSET)):
            if k_min < guide < k_max:
                nodes.append(guide)
        n += 1
    nodes.sort()
    dedup = [nodes[0]]
    for x in nodes[1:]:
        if x - dedup[-1] > 1e-15 * max(1.0, x):
            dedup.append(x)
    return dedup


def scan_and_bracket(problem: ArchProblem, cfg: SearchConfig | None = None) -> ScanResult:
    """Locate determinant sign changes (and dips) over the configured K range.

    Raises :class:`NoRootsInRange` when the scan yields neither a bracket nor
    a suspected-double candidate.
    """
    cfg = _resolved(problem, cfg)
    nodes = _grid_nodes(problem, cfg)
    signs: list[int] = []
    logs: list[float] = []
    for x in nodes:
        s, lm = boundary_determinant(problem, x)
        signs.append(s)
        logs.append(lm)

    brackets: list[tuple[float, float]] = []
    for i in range(len(nodes) - 1):
        if signs[i] == 0:
            if not brackets or brackets[-1][1] != nodes[i]:
                brackets.append((nodes[i], nodes[i]))
        elif signs[i + 1] != 0 and signs[i] * signs[i + 1] < 0:
            brackets.append((nodes[i], nodes[i + 1]))
    if signs and signs[-1] == 0:
        if not brackets or brackets[-1][1] != nodes[-1]:
            brackets.append((nodes[-1], nodes[-1]))

    suspects: list[float] = []
    for i in range(1, len(nodes) - 1):
        if signs[i - 1] == signs[i] == signs[i + 1] != 0:
            if logs[i] <= min(logs[i - 1], logs[i + 1]) - _DIP_THRESHOLD:
                suspects.append(nodes[i])

    if not brackets and not suspects:
        raise NoRootsInRange(
            f"no determinant roots in K range [{cfg.k_min}, {cfg.k_max}]"
        )
    return ScanResult(brackets=tuple(brackets), suspects=tuple(suspects))


def refine_root(
    bracket: tuple[float, float],
    problem: ArchProblem,
    cfg: SearchConfig | None = None,
) -> float:
    """Bisect a sign-change bracket down to refine_tol * max(1, K).

    A determinant sign of exactly zero at an endpoint terminates early with
    that endpoint as the root. Deterministic: identical inputs bisect through
    identical midpoints.
    """
    cfg = cfg if cfg is not None else SearchConfig()
    lo, hi = bracket
    if lo == hi:
        return lo
    s_lo, _ = boundary_determinant(problem, lo)
    if s_lo == 0:
        return lo
    s_hi, _ = boundary_determinant(problem, hi)
    if s_hi == 0:
        return hi
    if s_lo * s_hi != -1:
        raise ValueError(f"bracket {bracket} does not straddle a sign change")
    for _ in range(_MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        if hi - lo <= cfg.refine_tol * max(1.0, mid):
            break
        s_mid, _ = boundary_determinant(problem, mid)
        if s_mid == 0:
            return mid
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def find_frequencies(problem: ArchProblem, cfg: SearchConfig | None = None) -> Spectrum:
    """First ``max_modes`` eigenvalues in ascending order with coefficients.

    The K = 0 inextensional artifact is excluded by ``k_min``; suspected
    even-multiplicity roots are reported with their dip location and flag
    rather than silently dropped.
    """
    cfg = _resolved(problem, cfg)
    scan = scan_and_bracket(problem, cfg)
    found: list[tuple[float, RootFlag]] = [
        (refine_root(b, problem, cfg), RootFlag.BRACKETED) for b in scan.brackets
    ]
    found.extend((k, RootFlag.SUSPECTED_DOUBLE) for k in scan.suspects)
    found.sort(key=lambda t: t[0])

    distinct: list[tuple[float, RootFlag]] = []
    for k, flag in found:
        if distinct and k - distinct[-1][0] <= 1e-9 * max(1.0, k):
            continue
        distinct.append((k, flag))

    roots = []
    for k, flag in distinct[: cfg.max_modes]:
        vec, minpiv = kernel.null_vector(boundary_matrix(problem, k))
        roots.append(
            Root(K=k, coefficients=tuple(vec), flag=flag, min_pivot=minpiv)
        )
    return Spectrum(roots=tuple(roots))


def _polish(problem: ArchProblem, root: Root) -> float:
    """Re-tighten a bracketed root to ~1e-13 relative before shape sampling.

    The stored eigenvalue honors the search tolerance; boundary values of the
    sampled shape improve with a sharper root, so a short local bisection is
    run first. Falls back to the stored value when no sign change is found
    nearby (suspected doubles).
    """
    if root.flag is not RootFlag.SUSPECTED_DOUBLE:
        k = root.K
        for rel in (1e-10, 1e-9, 1e-8, 1e-7, 1e-6):
            delta = rel * max(1.0, k)
            lo, hi = k - delta, k + delta
            if lo <= 0:
                continue
            s_lo, _ = boundary_determinant(problem, lo)
            if s_lo == 0:
                return lo
            s_hi, _ = boundary_determinant(problem, hi)
            if s_hi == 0:
                return hi
            if s_lo * s_hi == -1:
                tight = SearchConfig(refine_tol=1e-13)
                return refine_root((lo, hi), problem, tight)
    return root.K


def mode_shape(problem: ArchProblem, root: Root, samples: int = 201) -> np.ndarray:
    """Sample the spatial mode X on a uniform grid over [0, beta].

    Returns an array of shape (samples, 2) with columns (phi, X), normalized
    so the largest sample is exactly 1. For cracked problems the first four
    coefficients describe the segment left of the crack, the last four the
    right segment; a compliant crack shows up as a slope discontinuity.
    """
    if samples < 2:
        raise ValueError("samples must be at least 2")
    k = _polish(problem, root)
    vec, _ = kernel.null_vector(boundary_matrix(problem, k))
    coeffs = kernel.characteristic_coefficients(k, problem.eta_nd)
    basis = kernel.quartic_roots(coeffs, phi_max=problem.beta)

    beta = problem.beta
    alpha = problem.crack.alpha if problem.crack is not None else None
    phis = [beta * i / (samples - 1) for i in range(samples)]
    values = []
    for phi in phis:
        row = basis.derivative_rows(phi, nrows=1)[0]
        if alpha is None:
            x = sum(vec[j] * row[j] for j in range(4))
        else:
            offset = 0 if phi < alpha else 4
            x = sum(vec[offset + j] * row[j] for j in range(4))
        values.append(x)

    im = 0
    big = abs(values[0])
    for i, v in enumerate(values):
        if abs(v) > big:
            big = abs(v)
            im = i
    peak = values[im]
    values = [v / peak for v in values]
    return np.column_stack([phis, values])
