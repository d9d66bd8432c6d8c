"""Shared helpers: an independent determinant oracle and problem builders."""

from __future__ import annotations

import math

from arch_resonance import ArchProblem, CrackJoint


def cofactor_det(m) -> float:
    """Determinant by first-row cofactor expansion; independent of the LU path."""
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0.0
    sign = 1.0
    for j in range(n):
        if m[0][j] != 0.0:
            minor = [[row[k] for k in range(n) if k != j] for row in m[1:]]
            total += sign * m[0][j] * cofactor_det(minor)
        sign = -sign
    return total


def make_problem(
    beta: float = 1.0,
    eta: float = 0.0,
    alpha: float | None = None,
    theta: float | None = None,
) -> ArchProblem:
    crack = None
    if alpha is not None:
        crack = CrackJoint(alpha=alpha, theta_c=theta if theta is not None else 0.0)
    return ArchProblem(beta=beta, eta_nd=eta, crack=crack)


def rel_err(value: float, reference: float) -> float:
    return abs(value - reference) / abs(reference)


PI = math.pi
