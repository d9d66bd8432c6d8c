"""Input types and unit bookkeeping for curved-nanotube vibration problems.

Chirality indices, tube geometry and material presets live here, together
with the reduction of a dimensional tube description to the dimensionless
:class:`ArchProblem` the solver consumes, and the reverse conversion from the
dimensionless eigenvalue K back to an angular frequency. Internal units are
SI; the few helpers that speak nanometers say so explicitly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Mapping

from . import crack as crack_models
from .errors import InvalidPreset, MissingPreset

DEFAULT_BOND_LENGTH_NM = 0.142


class ChiralityClass(enum.Enum):
    ARMCHAIR = "armchair"
    ZIGZAG = "zigzag"
    CHIRAL = "chiral"


@dataclass(frozen=True)
class ChiralitySpec:
    """Roll-up indices (n, m) of the graphene sheet, canonicalized to m <= n."""

    n: int
    m: int
    bond_length: float = DEFAULT_BOND_LENGTH_NM  # nm

    def __post_init__(self):
        n, m = int(self.n), int(self.m)
        if m > n:
            n, m = m, n
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)
        if n < 1:
            raise ValueError(f"roll-up index n must be >= 1, got ({self.n}, {self.m})")
        if m < 0:
            raise ValueError("roll-up index m must be >= 0")
        if self.bond_length <= 0:
            raise ValueError("bond length must be positive")


def classify_chirality(spec: ChiralitySpec) -> ChiralityClass:
    """Armchair when n == m, zigzag when m == 0, chiral otherwise."""
    if spec.n == spec.m:
        return ChiralityClass.ARMCHAIR
    if spec.m == 0:
        return ChiralityClass.ZIGZAG
    return ChiralityClass.CHIRAL


def tube_diameter(spec: ChiralitySpec) -> float:
    """Tube diameter in nm from the standard roll-up geometry.

    d = (sqrt(3) * a_cc / pi) * sqrt(n^2 + n*m + m^2)
    """
    n, m = spec.n, spec.m
    return (math.sqrt(3.0) * spec.bond_length / math.pi) * math.sqrt(
        n * n + n * m + m * m
    )


@dataclass(frozen=True)
class PhysicalTube:
    """Dimensional description of one tube bent into an arch (SI units).

    ``mass_per_length`` folds the density-thickness product into a single
    effective inertia parameter. The second moment of area is always
    recomputed from the diameter, never stored.
    """

    youngs_modulus: float  # Pa
    radius: float  # arch radius, m
    diameter: float  # tube cross-section diameter, m
    wall_thickness: float  # m
    mass_per_length: float  # kg/m

    def __post_init__(self):
        for name in (
            "youngs_modulus",
            "radius",
            "diameter",
            "wall_thickness",
            "mass_per_length",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.diameter >= 2.0 * self.radius:
            raise ValueError("tube diameter must be smaller than twice the arch radius")

    @property
    def moment_of_inertia(self) -> float:
        """I = pi d^4 / 64, in m^4."""
        return math.pi * self.diameter**4 / 64.0


@dataclass(frozen=True)
class CrackSpec:
    """Physical crack description: position angle, depth ratio, compliance model."""

    position_angle: float  # rad, measured like phi from the left support
    depth_ratio: float  # psi = c/h in [0, 1)
    compliance_model: crack_models.ComplianceModel

    def __post_init__(self):
        if not 0.0 <= self.depth_ratio < 1.0:
            raise ValueError("depth ratio must lie in [0, 1)")
        if self.position_angle <= 0:
            raise ValueError("crack position angle must be positive")


@dataclass(frozen=True)
class CrackJoint:
    """Crack reduced to its dimensionless form: position plus spring compliance."""

    alpha: float  # rad
    theta_c: float  # dimensionless, >= 0


@dataclass(frozen=True)
class ArchProblem:
    """Complete nondimensional problem: central angle, nonlocal parameter, crack."""

    beta: float  # central angle, rad
    eta_nd: float  # dimensionless nonlocal parameter
    crack: CrackJoint | None = None

    def __post_init__(self):
        if not 0.0 < self.beta <= 2.0 * math.pi:
            raise ValueError("central angle must lie in (0, 2*pi]")
        if self.eta_nd < 0:
            raise ValueError("nonlocal parameter must be nonnegative")
        if self.crack is not None:
            if not 0.0 < self.crack.alpha < self.beta:
                raise ValueError("crack angle must lie strictly inside (0, beta)")
            if self.crack.theta_c < 0:
                raise ValueError("crack compliance must be nonnegative")


_PRESET_KEYS = (
    "youngs_modulus_tpa",
    "wall_thickness_nm",
    "mass_per_length_kg_per_m",
    "arch_radius_nm",
)


def resolve_preset(
    chirality: ChiralityClass,
    preset_table: Mapping[str, Mapping[str, float]],
) -> PhysicalTube:
    """Build a :class:`PhysicalTube` from a presets table.

    The table maps the lowercase class name to a flat entry with keys
    ``youngs_modulus_tpa``, ``wall_thickness_nm``, ``mass_per_length_kg_per_m``,
    ``arch_radius_nm`` and either ``diameter_nm`` or roll-up indices ``n``/``m``
    (plus optional ``bond_length_nm``).
    """
    try:
        entry = preset_table[chirality.value]
    except KeyError:
        raise MissingPreset(f"no preset entry for {chirality.value!r}") from None

    def _get(key: str) -> float:
        try:
            return float(entry[key])
        except KeyError:
            raise InvalidPreset(
                f"preset {chirality.value!r} is missing key {key!r}"
            ) from None

    if "diameter_nm" in entry:
        d_nm = float(entry["diameter_nm"])
    elif "n" in entry and "m" in entry:
        bond = float(entry.get("bond_length_nm", DEFAULT_BOND_LENGTH_NM))
        try:
            spec = ChiralitySpec(int(entry["n"]), int(entry["m"]), bond)
        except ValueError as exc:
            raise InvalidPreset(str(exc)) from None
        d_nm = tube_diameter(spec)
    else:
        raise InvalidPreset(
            f"preset {chirality.value!r} needs either 'diameter_nm' or 'n'/'m'"
        )

    values = dict(
        youngs_modulus=_get("youngs_modulus_tpa") * 1e12,
        radius=_get("arch_radius_nm") * 1e-9,
        diameter=d_nm * 1e-9,
        wall_thickness=_get("wall_thickness_nm") * 1e-9,
        mass_per_length=_get("mass_per_length_kg_per_m"),
    )
    try:
        return PhysicalTube(**values)
    except ValueError as exc:
        raise InvalidPreset(f"preset {chirality.value!r}: {exc}") from None


def with_radius(tube: PhysicalTube, radius: float) -> PhysicalTube:
    """Copy of ``tube`` bent to a different arch radius (m)."""
    return replace(tube, radius=radius)


def nondimensionalize(
    tube: PhysicalTube,
    eta_physical: float,
    crack: CrackSpec | None = None,
    *,
    beta: float,
) -> ArchProblem:
    """Reduce a dimensional description to an :class:`ArchProblem`.

    ``eta_physical`` is the small-scale material constant in m^2; the
    dimensionless parameter entering the governing equation is
    ``eta_physical / R^2``. A crack's depth ratio is converted to a spring
    compliance through its model, scaled by the tube's h/R.
    """
    if eta_physical < 0:
        raise ValueError("physical nonlocal parameter must be nonnegative")
    joint = None
    if crack is not None:
        theta = crack_models.compliance(
            crack.compliance_model,
            crack.depth_ratio,
            (tube.wall_thickness, tube.radius),
        )
        joint = CrackJoint(alpha=crack.position_angle, theta_c=theta)
    return ArchProblem(
        beta=beta,
        eta_nd=eta_physical / tube.radius**2,
        crack=joint,
    )


def omega_from_K(K: float, tube: PhysicalTube) -> float:
    """Angular frequency in rad/s for a dimensionless eigenvalue K.

    omega = sqrt(K * E * I / (mu * R^4)).
    """
    if K < 0:
        raise ValueError("K must be nonnegative")
    stiffness = tube.youngs_modulus * tube.moment_of_inertia
    return math.sqrt(K * stiffness / (tube.mass_per_length * tube.radius**4))


def omega_nd(K: float, beta: float) -> float:
    """Dimensionless frequency sqrt(K) * beta^2.

    This scale reduces to the classical simply supported beam frequency
    parameter in the straight limit beta -> 0, which makes it convenient for
    comparing against straight-beam references.
    """
    if K < 0:
        raise ValueError("K must be nonnegative")
    return math.sqrt(K) * beta * beta
