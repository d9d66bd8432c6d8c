"""Characteristic roots, mode-shape basis and boundary determinant.

The transverse vibration of the arch reduces to the fourth-order equation

    X'''' + (2 + K*eta) X'' + (1 - K) X = 0,       K = omega^2 mu R^4 / (E I),

whose exponential ansatz gives the bi-quadratic lam^4 + p2 lam^2 + p0 = 0 with
p2 = 2 + K*eta and p0 = 1 - K. This module builds the four fundamental
solutions for a trial K, evaluates their derivatives analytically, assembles
the simply supported boundary (and crack matching) matrix, and provides a
numerically safe sign/log-magnitude determinant for root bracketing.

Basis conventions
-----------------
For each root mu of the quadratic in lam^2 the even/odd solution pair is

    e(mu, phi) = cos(a*phi)   or cosh(a*phi),   a = sqrt(|mu|)
    o(mu, phi) = sin(a*phi)/a or sinh(a*phi)/a

which are entire in mu (o -> phi, e -> 1 as mu -> 0), so the determinant is a
continuous function of K across branch switches. Once a hyperbolic argument
exceeds a couple of units, cosh and sinh coincide to exponential accuracy and
their columns would make the boundary matrix artificially rank-deficient;
there the pair is represented instead by the bounded decaying exponentials

    exp(-a*phi)  and  exp(a*(phi - phi_max)),

a change of basis with positive determinant (+2a*exp(-a*phi_max), recorded as
a column scale), so determinant sign changes are unaffected, every entry stays
within [0, 1], and the root signal survives at any wavenumber.

The basis function order is [e(mu1), o(mu1), e(mu2), o(mu2)] where mu1 is the
always-negative (trigonometric) root and mu2 carries the branch dependence.
For a repeated root the second pair is replaced by the mu-derivatives of the
first, which span the classical phi*cos/phi*sin solutions.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DegenerateSegment

# Degeneracy window for branch switching, relative to max(1, p2^2).
DEGENERACY_TOL = 1e-10
# A pivot at or below this fraction of the normalized row scale zeroes the sign.
PIVOT_ZERO_TOL = 1e-13
# Minimum admissible crack segment length, rad.
SEGMENT_TOL = 1e-9
# Hyperbolic pairs switch to the decaying-exponential representation here.
_EXP_SWITCH = 2.0

_LOG_NEG_INF = float("-inf")


@dataclass(frozen=True)
class CharCoeffs:
    """Coefficients of the characteristic bi-quadratic at a trial eigenvalue."""

    K: float
    eta_nd: float
    p2: float  # = 2 + K * eta_nd
    p0: float  # = 1 - K


def characteristic_coefficients(K: float, eta_nd: float) -> CharCoeffs:
    if K < 0:
        raise ValueError("trial eigenvalue K must be nonnegative")
    if eta_nd < 0:
        raise ValueError("nonlocal parameter must be nonnegative")
    return CharCoeffs(K=K, eta_nd=eta_nd, p2=2.0 + K * eta_nd, p0=1.0 - K)


class Branch(enum.Enum):
    TWO_TRIG = "TwoTrig"
    TRIG_PLUS_HYPERBOLIC = "TrigPlusHyperbolic"
    DEGENERATE_ZERO_ROOT = "DegenerateZeroRoot"
    DEGENERATE_REPEATED = "DegenerateRepeated"


def _pair_values(mu: float, phi: float) -> tuple[float, float]:
    """Even/odd solution pair (e, o) for one quadratic root mu at angle phi."""
    if mu == 0.0:
        return 1.0, phi
    if mu < 0.0:
        a = math.sqrt(-mu)
        t = a * phi
        return math.cos(t), math.sin(t) / a
    a = math.sqrt(mu)
    t = a * phi
    return math.cosh(t), math.sinh(t) / a


def _repeated_extra(mu: float, phi: float, e: float, o: float) -> tuple[float, float]:
    """mu-derivatives (g, h) = (d e/d mu, d o/d mu) for the repeated-root basis."""
    g = 0.5 * phi * o
    t2 = abs(mu) * phi * phi
    if t2 < 0.01:
        # Series for h; direct (phi*e - o)/(2 mu) cancels at small arguments.
        p2_ = phi * phi
        term = phi * p2_ / 6.0
        h = term
        kfac = (
            (2, 120.0),
            (3, 5040.0),
            (4, 362880.0),
            (5, 39916800.0),
        )
        mupow = 1.0
        for k, fact in kfac:
            mupow *= mu
            h += k * mupow * phi * p2_**k / fact
        return g, h
    return g, (phi * e - o) / (2.0 * mu)


@dataclass(frozen=True)
class ModeBasis:
    """Four fundamental solutions at a trial K with analytic derivatives.

    ``derivative_rows(phi)`` returns rows of basis-function derivatives:
    row k holds the k-th derivative of each of the four functions at phi.
    When ``exp_pair`` is set, the hyperbolic pair is represented by the
    bounded exponentials exp(-a*phi) and exp(a*(phi - phi_max)).
    """

    coeffs: CharCoeffs
    branch: Branch
    mu1: float  # always <= -1: trigonometric pair
    mu2: float  # second root; > 0 hyperbolic, 0 polynomial, < 0 trigonometric
    exp_pair: bool = False
    phi_max: float | None = None

    @property
    def wavenumbers(self) -> tuple[float, float]:
        return math.sqrt(-self.mu1), math.sqrt(abs(self.mu2))

    def derivative_rows(self, phi: float, nrows: int = 4) -> list[tuple[float, ...]]:
        if not 1 <= nrows <= 5:
            raise ValueError("nrows must be between 1 and 5")
        mu1 = self.mu1
        e1, o1 = _pair_values(mu1, phi)
        if self.branch is Branch.DEGENERATE_REPEATED:
            g, h = _repeated_extra(mu1, phi, e1, o1)
            rows = [
                (e1, o1, g, h),
                (mu1 * o1, e1, o1 + mu1 * h, g),
                (mu1 * e1, mu1 * o1, e1 + mu1 * g, o1 + mu1 * h),
                (mu1 * mu1 * o1, mu1 * e1, 2.0 * mu1 * o1 + mu1 * mu1 * h, e1 + mu1 * g),
                (
                    mu1 * mu1 * e1,
                    mu1 * mu1 * o1,
                    2.0 * mu1 * e1 + mu1 * mu1 * g,
                    2.0 * mu1 * o1 + mu1 * mu1 * h,
                ),
            ]
        elif self.exp_pair:
            mu2 = self.mu2
            a = math.sqrt(mu2)
            f3 = math.exp(-a * phi)
            f4 = math.exp(a * (phi - self.phi_max))
            rows = [
                (e1, o1, f3, f4),
                (mu1 * o1, e1, -a * f3, a * f4),
                (mu1 * e1, mu1 * o1, mu2 * f3, mu2 * f4),
                (mu1 * mu1 * o1, mu1 * e1, -a * mu2 * f3, a * mu2 * f4),
                (mu1 * mu1 * e1, mu1 * mu1 * o1, mu2 * mu2 * f3, mu2 * mu2 * f4),
            ]
        else:
            mu2 = self.mu2
            e2, o2 = _pair_values(mu2, phi)
            rows = [
                (e1, o1, e2, o2),
                (mu1 * o1, e1, mu2 * o2, e2),
                (mu1 * e1, mu1 * o1, mu2 * e2, mu2 * o2),
                (mu1 * mu1 * o1, mu1 * e1, mu2 * mu2 * o2, mu2 * e2),
                (mu1 * mu1 * e1, mu1 * mu1 * o1, mu2 * mu2 * e2, mu2 * mu2 * o2),
            ]
        return rows[:nrows]

    def column_scale_logs(self) -> tuple[float, float, float, float]:
        """Log of the factor each basis function was scaled down by.

        Only the growing exponential of the ``exp_pair`` representation
        carries one: exp(a*(phi - phi_max)) is the natural solution exp(a*phi)
        divided by exp(a*phi_max).
        """
        if self.exp_pair:
            return (0.0, 0.0, 0.0, math.sqrt(self.mu2) * self.phi_max)
        return (0.0, 0.0, 0.0, 0.0)


def quartic_roots(
    coeffs: CharCoeffs,
    tol: float = DEGENERACY_TOL,
    phi_max: float | None = None,
) -> ModeBasis:
    """Solve lam^4 + p2 lam^2 + p0 = 0 and build the solution basis.

    The branch follows the sign of the lam^2 roots; ``tol`` (relative to
    max(1, p2^2)) resolves the zero-root and repeated-root degeneracies.
    ``phi_max`` bounds the evaluation interval; pass the central angle when
    assembling boundary matrices so that large hyperbolic arguments switch to
    the well-conditioned exponential representation.
    """
    p2, p0 = coeffs.p2, coeffs.p0
    scale = max(1.0, p2 * p2)
    disc = p2 * p2 - 4.0 * p0
    if disc < -tol * scale:
        # Not reachable for K >= 0, eta >= 0; kept as a hard guard.
        raise ValueError(f"negative discriminant {disc} for coefficients {coeffs}")

    if abs(p0) <= tol * scale:
        branch, mu1, mu2 = Branch.DEGENERATE_ZERO_ROOT, -p2, 0.0
    elif abs(disc) <= tol * scale:
        branch = Branch.DEGENERATE_REPEATED
        mu1 = mu2 = -0.5 * p2
    else:
        sq = math.sqrt(max(disc, 0.0))
        mu1 = -0.5 * (p2 + sq)
        mu2 = p0 / mu1  # Vieta; avoids cancellation in (-p2 + sq)/2
        branch = Branch.TWO_TRIG if p0 > 0.0 else Branch.TRIG_PLUS_HYPERBOLIC

    exp_pair = (
        mu2 > 0.0
        and phi_max is not None
        and math.sqrt(mu2) * phi_max > _EXP_SWITCH
    )
    return ModeBasis(
        coeffs=coeffs,
        branch=branch,
        mu1=mu1,
        mu2=mu2,
        exp_pair=exp_pair,
        phi_max=phi_max,
    )


def uncracked_K_closed_form(n: int, beta: float, eta_nd: float) -> float:
    """Exact eigenvalue of the simply supported uncracked arch for mode n.

    Substituting X = sin(n*pi*phi/beta) gives
    K_n = (lam^2 - 1)^2 / (1 + eta*lam^2) with lam = n*pi/beta.
    """
    if n < 1:
        raise ValueError("mode index must be >= 1")
    if beta <= 0:
        raise ValueError("central angle must be positive")
    if eta_nd < 0:
        raise ValueError("nonlocal parameter must be nonnegative")
    lam2 = (n * math.pi / beta) ** 2
    return (lam2 - 1.0) ** 2 / (1.0 + eta_nd * lam2)


@dataclass(frozen=True)
class BoundaryMatrix:
    """Dense boundary/matching matrix with its column scale factors.

    ``entries[i][j]`` applies boundary condition i to basis function j. The
    recorded ``column_scale_logs`` allow recovering the determinant of the
    unscaled system: log|det_unscaled| = log|det| + sum(column_scale_logs).
    """

    order: int
    entries: tuple[tuple[float, ...], ...]
    column_scale_logs: tuple[float, ...]


def assemble_uncracked(basis: ModeBasis, beta: float) -> BoundaryMatrix:
    """4x4 simply supported boundary system.

    Row order: [X(0), X''(0), X(beta), X''(beta)], realizing zero transverse
    displacement and zero bending moment at both supports.
    """
    if beta <= 0:
        raise ValueError("central angle must be positive")
    at0 = basis.derivative_rows(0.0, nrows=3)
    atb = basis.derivative_rows(beta, nrows=3)
    return BoundaryMatrix(
        order=4,
        entries=(at0[0], at0[2], atb[0], atb[2]),
        column_scale_logs=basis.column_scale_logs(),
    )


def assemble_cracked(
    basis: ModeBasis, beta: float, alpha: float, theta_c: float
) -> BoundaryMatrix:
    """8x8 two-segment system with a rotational spring at the crack.

    Unknowns are four coefficients per segment, [0, alpha] then [alpha, beta].
    Row order: [X1(0), X1''(0), X2(beta), X2''(beta), X1(a)-X2(a),
    X1''(a)-X2''(a), X1'''(a)-X2'''(a), X2'(a)-X1'(a)-theta_c*X1''(a)].
    At theta_c = 0 the last four rows enforce C3 continuity, so the zero set
    in K coincides with the 4x4 system's.
    """
    if theta_c < 0:
        raise ValueError("crack compliance must be nonnegative")
    if alpha <= SEGMENT_TOL or beta - alpha <= SEGMENT_TOL:
        raise DegenerateSegment(
            f"crack at alpha={alpha} leaves a vanishing segment of beta={beta}"
        )
    at0 = basis.derivative_rows(0.0, nrows=3)
    ata = basis.derivative_rows(alpha, nrows=4)
    atb = basis.derivative_rows(beta, nrows=3)
    zero = (0.0, 0.0, 0.0, 0.0)

    def row(left: tuple[float, ...], right: tuple[float, ...]) -> tuple[float, ...]:
        return left + right

    neg = lambda r: tuple(-x for x in r)
    jump = tuple(-ata[1][j] - theta_c * ata[2][j] for j in range(4))
    entries = (
        row(at0[0], zero),
        row(at0[2], zero),
        row(zero, atb[0]),
        row(zero, atb[2]),
        row(ata[0], neg(ata[0])),
        row(ata[2], neg(ata[2])),
        row(ata[3], neg(ata[3])),
        row(jump, ata[1]),
    )
    logs = basis.column_scale_logs()
    return BoundaryMatrix(order=8, entries=entries, column_scale_logs=logs + logs)


def _as_rows(matrix) -> list[list[float]]:
    if isinstance(matrix, BoundaryMatrix):
        return [list(r) for r in matrix.entries]
    return [[float(x) for x in row] for row in matrix]


def _lu_inplace(a: list[list[float]]):
    """LU factorization with partial pivoting, multipliers stored in place.

    Expects rows pre-normalized to unit max norm, so pivot magnitudes are
    directly comparable to 1. Returns (swaps, parity, degenerate,
    log_pivot_sum, min_pivot) where parity carries both permutation parity
    and pivot signs and ``degenerate`` is set when a pivot falls at or below
    PIVOT_ZERO_TOL.
    """
    n = len(a)
    swaps: list[tuple[int, int]] = []
    sign = 1
    degenerate = False
    logsum = 0.0
    minpiv = math.inf
    for k in range(n):
        p = k
        best = abs(a[k][k])
        for i in range(k + 1, n):
            v = abs(a[i][k])
            if v > best:
                best = v
                p = i
        if p != k:
            a[k], a[p] = a[p], a[k]
            swaps.append((k, p))
            sign = -sign
        row_k = a[k]
        piv = row_k[k]
        apiv = abs(piv)
        if apiv < minpiv:
            minpiv = apiv
        if apiv <= PIVOT_ZERO_TOL:
            degenerate = True
        if apiv == 0.0:
            return swaps, sign, True, _LOG_NEG_INF, minpiv
        if piv < 0.0:
            sign = -sign
        logsum += math.log(apiv)
        inv = 1.0 / piv
        for i in range(k + 1, n):
            row_i = a[i]
            f = row_i[k] * inv
            row_i[k] = f
            if f != 0.0:
                for j in range(k + 1, n):
                    row_i[j] -= f * row_k[j]
    return swaps, sign, degenerate, logsum, minpiv


def _normalize_rows(a: list[list[float]]) -> float | None:
    """Scale each row to unit max norm; returns the log of the scale product."""
    total = 0.0
    for row in a:
        m = 0.0
        for x in row:
            v = abs(x)
            if v > m:
                m = v
        if m == 0.0:
            return None
        if m != 1.0:
            inv = 1.0 / m
            for j in range(len(row)):
                row[j] *= inv
        total += math.log(m)
    return total


def det_sign_logmag(matrix) -> tuple[int, float]:
    """Determinant sign and log-magnitude of a small dense matrix.

    Rows are normalized to unit max norm, then factored by LU with partial
    pivoting; the sign comes from pivot signs times permutation parity and is
    reported as 0 when any pivot falls at or below PIVOT_ZERO_TOL of the unit
    row scale. The log magnitude refers to the matrix as given (the row
    scaling is added back), so it spans the full dynamic range of the raw
    determinant.
    """
    a = _as_rows(matrix)
    for row in a:
        for x in row:
            if not math.isfinite(x):
                raise ValueError("matrix entries must be finite")
    log_norm = _normalize_rows(a)
    if log_norm is None:
        return 0, _LOG_NEG_INF
    _, sign, degenerate, logsum, _ = _lu_inplace(a)
    if logsum == _LOG_NEG_INF:
        return 0, _LOG_NEG_INF
    return (0 if degenerate else sign), logsum + log_norm


def null_vector(matrix) -> tuple[list[float], float]:
    """Approximate null vector of a (nearly) rank-deficient matrix.

    Back-substitutes through the smallest-pivot column of the row-normalized
    LU, then applies one inverse-iteration step and normalizes so the largest
    component is exactly 1. Returns (vector, smallest scaled pivot).
    """
    a = _as_rows(matrix)
    n = len(a)
    _normalize_rows(a)
    b = [row[:] for row in a]
    swaps, _, _, _, minpiv = _lu_inplace(b)

    def _safe(d: float) -> float:
        if abs(d) < 1e-30:
            return math.copysign(1e-30, d if d != 0.0 else 1.0)
        return d

    k_star = min(range(n), key=lambda k: abs(b[k][k]))
    x = [0.0] * n
    x[k_star] = 1.0
    for i in range(k_star - 1, -1, -1):
        acc = 0.0
        for j in range(i + 1, k_star + 1):
            acc += b[i][j] * x[j]
        x[i] = -acc / _safe(b[i][i])

    # One inverse-iteration step: solve (LU) z = P x.
    rhs = x[:]
    for i, j in swaps:
        rhs[i], rhs[j] = rhs[j], rhs[i]
    for i in range(n):
        acc = rhs[i]
        row = b[i]
        for j in range(i):
            acc -= row[j] * rhs[j]
        rhs[i] = acc
    for i in range(n - 1, -1, -1):
        acc = rhs[i]
        row = b[i]
        for j in range(i + 1, n):
            acc -= row[j] * rhs[j]
        rhs[i] = acc / _safe(row[i])

    im = 0
    big = abs(rhs[0])
    for i in range(1, n):
        v = abs(rhs[i])
        if v > big:
            big = v
            im = i
    pivot_component = rhs[im]
    return [v / pivot_component for v in rhs], minpiv
