"""Physical inputs, dimensionless groups, and the scaling maps between them.

Everything downstream (closed-form fields, finite-difference oracle,
verification) works in the dimensionless variables held by
:class:`FlowParameters` and :class:`EvalPoint`. The dimensional layer exists
so that laboratory-style inputs can be mapped onto those variables.

A caveat on the Grashof-style groups: the plate is started with velocity
``v = v0 * t'**2``, and the scalings below use ``(nu * v0)**(1/3)``
denominators. For ``v0`` carrying units of m/s^3 those groups are not
strictly dimensionless, so :func:`nondimensionalize` should be treated as a
convenience layer; all solver-critical computation happens directly in the
dimensionless parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Field selectors accepted by profile/trend/CLI operations.
FIELD_KINDS = ("velocity", "temperature", "concentration")


class ParameterError(ValueError):
    """A physical or dimensionless parameter is outside its valid range."""


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ParameterError(message)


@dataclass(frozen=True)
class DimensionalInputs:
    """Dimensional problem definition.

    Attributes
    ----------
    g : gravitational acceleration [m/s^2]
    beta : thermal expansion coefficient [1/K]
    beta_star : concentration expansion coefficient [1/(kg/m^3)]
    nu : kinematic viscosity [m^2/s]
    rho : density [kg/m^3]
    cp : specific heat [J/(kg K)]
    k : thermal conductivity [W/(m K)]
    d_mass : mass diffusivity [m^2/s]
    v0 : plate-start coefficient in ``v = v0 * t'**2`` [m/s^3]
    theta_w, theta_inf : wall / ambient temperature [K]
    c_w, c_inf : wall / ambient concentration [kg/m^3]
    """

    g: float
    beta: float
    beta_star: float
    nu: float
    rho: float
    cp: float
    k: float
    d_mass: float
    v0: float
    theta_w: float
    theta_inf: float
    c_w: float
    c_inf: float

    def __post_init__(self) -> None:
        for name in ("nu", "rho", "cp", "k", "d_mass", "v0"):
            _require(getattr(self, name) > 0, f"{name} must be > 0")
        _require(self.theta_w != self.theta_inf,
                 "theta_w == theta_inf leaves the temperature ratio undefined")
        _require(self.c_w != self.c_inf,
                 "c_w == c_inf leaves the concentration ratio undefined")


@dataclass(frozen=True)
class DimensionalPoint:
    """Wall-normal distance y [m] and time t' [s] before scaling."""

    y: float
    t_prime: float

    def __post_init__(self) -> None:
        _require(self.y >= 0, "y must be >= 0")


@dataclass(frozen=True)
class FlowParameters:
    """Dimensionless problem definition.

    ``alpha`` is the plate inclination in radians; the CLI accepts degrees.
    ``alpha >= pi/2`` is rejected because the buoyancy forcing vanishes or
    reverses there, outside the regime this model covers. Negative ``gr`` or
    ``gc`` (opposing buoyancy) are accepted.
    """

    gr: float
    gc: float
    pr: float
    sc: float
    alpha: float = 0.0

    def __post_init__(self) -> None:
        _require(self.pr > 0, "pr must be > 0")
        _require(self.sc > 0, "sc must be > 0")
        _require(math.isfinite(self.gr), "gr must be finite")
        _require(math.isfinite(self.gc), "gc must be finite")
        _require(0 <= self.alpha < math.pi / 2,
                 "alpha must lie in [0, pi/2) radians")


@dataclass(frozen=True)
class EvalPoint:
    """Dimensionless evaluation point (Y, t)."""

    y_hat: float
    t_hat: float

    def __post_init__(self) -> None:
        _require(self.y_hat >= 0, "y_hat must be >= 0")


@dataclass(frozen=True, eq=False)
class Profile:
    """A sampled field curve at fixed dimensionless time.

    ``y_hat`` is strictly increasing and ``values`` are finite; both are
    1-d arrays of equal length.
    """

    t_hat: float
    y_hat: np.ndarray
    values: np.ndarray
    field_kind: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "y_hat", np.asarray(self.y_hat, dtype=float))
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        _require(self.field_kind in FIELD_KINDS,
                 f"field_kind must be one of {FIELD_KINDS}")
        _require(self.y_hat.ndim == 1 and self.y_hat.size == self.values.size,
                 "y_hat and values must be 1-d arrays of equal length")
        if self.y_hat.size > 1:
            _require(bool(np.all(np.diff(self.y_hat) > 0)),
                     "y_hat must be strictly increasing")
        _require(bool(np.all(np.isfinite(self.values))),
                 "profile values must be finite")

    @property
    def samples(self) -> list[tuple[float, float]]:
        """(y_hat, value) pairs, in grid order."""
        return list(zip(self.y_hat.tolist(), self.values.tolist()))


def nondimensionalize(dim: DimensionalInputs, alpha: float = 0.0) -> FlowParameters:
    """Map dimensional inputs onto the dimensionless groups.

    ``Gr = g*beta*(theta_w - theta_inf) / (nu*v0)**(1/3)``,
    ``Gc = g*beta_star*(c_w - c_inf) / (nu*v0)**(1/3)``,
    ``Pr = (rho*nu)*cp / k``, ``Sc = nu / d_mass``. The inclination ``alpha``
    (radians) has no dimensional counterpart and is passed through.
    """
    scale = (dim.nu * dim.v0) ** (1.0 / 3.0)
    return FlowParameters(
        gr=dim.g * dim.beta * (dim.theta_w - dim.theta_inf) / scale,
        gc=dim.g * dim.beta_star * (dim.c_w - dim.c_inf) / scale,
        pr=dim.rho * dim.nu * dim.cp / dim.k,
        sc=dim.nu / dim.d_mass,
        alpha=alpha,
    )


def to_eval_point(dim_pt: DimensionalPoint, dim: DimensionalInputs) -> EvalPoint:
    """Scale a dimensional (y, t') point to dimensionless (Y, t).

    ``Y = y * (v0/nu**2)**(1/3)`` and ``t = (v0**2/nu)**(1/3) * t'``.
    """
    return EvalPoint(
        y_hat=dim_pt.y * (dim.v0 / dim.nu**2) ** (1.0 / 3.0),
        t_hat=(dim.v0**2 / dim.nu) ** (1.0 / 3.0) * dim_pt.t_prime,
    )


def similarity_eta(pt: EvalPoint) -> float:
    """Similarity variable ``eta = Y / (2*sqrt(t))``.

    Only defined for ``t > 0``; fields at ``t <= 0`` are identically zero and
    callers must branch before computing ``eta``.
    """
    _require(pt.t_hat > 0, "similarity_eta requires t_hat > 0")
    return pt.y_hat / (2.0 * math.sqrt(pt.t_hat))
