"""Closed-form temperature, concentration, and velocity fields.

The fields solve the dimensionless system

    dV/dt  = Gr*T*cos(alpha) + Gc*phi*cos(alpha) + d2V/dY2
    Pr * dT/dt   = d2T/dY2
    Sc * dphi/dt = d2phi/dY2

with V = t^2, T = 1, phi = 1 at the wall for t > 0, zero initial data, and
decay at infinity. Temperature and concentration are single erfc profiles in
the similarity variable ``eta = Y/(2 sqrt(t))``; the velocity combines the
plate-driven quartic-in-eta block with two buoyancy blocks weighted by the
coefficients ``a = -Gr cos(alpha)/(Pr - 1)`` and ``b = -Gc cos(alpha)/(Sc - 1)``.

All evaluators return exactly 0 for ``t <= 0`` (the initial condition) and
never form ``eta`` there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import EvalPoint, FlowParameters, ParameterError, Profile
from .special import SQRT_PI, erfc

#: |Pr - 1| or |Sc - 1| below this band makes a or b blow up: the closed
#: form is invalid there and callers must use the finite-difference oracle.
SINGULAR_GUARD = 1e-9


class SingularPrandtl(ParameterError):
    """Pr is within the guard band of 1, where the closed form is singular."""


class SingularSchmidt(ParameterError):
    """Sc is within the guard band of 1, where the closed form is singular."""


@dataclass(frozen=True)
class SolutionCoefficients:
    a: float
    b: float


@dataclass(frozen=True)
class AppendixTerms:
    """The twelve building blocks of the velocity solution at a given eta."""

    l00: float
    l01: float
    l02: float
    l03: float
    l04: float
    l05: float
    l1: float
    l2: float
    l3: float
    l4: float
    l5: float
    l6: float


def coefficients(params: FlowParameters) -> SolutionCoefficients:
    """Buoyancy weights ``a`` and ``b`` of the velocity solution.

    Raises :class:`SingularPrandtl` / :class:`SingularSchmidt` inside the
    guard band, signalling that the finite-difference oracle must be used.
    """
    if abs(params.pr - 1.0) <= SINGULAR_GUARD:
        raise SingularPrandtl(
            f"velocity closed form is singular at pr={params.pr}; "
            "use the finite-difference oracle (freeconv.fdm.solve) instead")
    if abs(params.sc - 1.0) <= SINGULAR_GUARD:
        raise SingularSchmidt(
            f"velocity closed form is singular at sc={params.sc}; "
            "use the finite-difference oracle (freeconv.fdm.solve) instead")
    cos_a = math.cos(params.alpha)
    return SolutionCoefficients(
        a=-params.gr * cos_a / (params.pr - 1.0),
        b=-params.gc * cos_a / (params.sc - 1.0),
    )


def appendix_terms(eta: float, pr: float, sc: float) -> AppendixTerms:
    """Evaluate all twelve solution terms at one ``eta``."""
    if eta < 0:
        raise ParameterError("eta must be >= 0")
    if pr <= 0 or sc <= 0:
        raise ParameterError("pr and sc must be > 0")
    e2 = eta * eta
    return AppendixTerms(
        l00=eta / SQRT_PI,
        l01=1.0 + 2.0 * e2,
        l02=1.0 + 2.0 * e2 * pr,
        l03=1.0 + 2.0 * e2 * sc,
        l04=10.0 + 4.0 * e2,
        l05=3.0 + 12.0 * e2 + 4.0 * e2 * e2,
        l1=float(erfc(eta)),
        l2=float(erfc(eta * math.sqrt(pr))),
        l3=float(erfc(eta * math.sqrt(sc))),
        l4=math.exp(-e2),
        l5=math.exp(-e2 * pr),
        l6=math.exp(-e2 * sc),
    )


def _eta(t: float, y: np.ndarray) -> np.ndarray:
    return y / (2.0 * math.sqrt(t))


def _buoyancy_bracket(eta: np.ndarray, m: float) -> np.ndarray:
    # (1 + 2 m eta^2) erfc(eta sqrt(m)) - (2 eta sqrt(m)/sqrt(pi)) exp(-m eta^2),
    # i.e. 4*i2erfc(eta*sqrt(m)); equals exactly 1 at eta = 0.
    em = eta * math.sqrt(m)
    return (1.0 + 2.0 * em * em) * erfc(em) - (2.0 * em / SQRT_PI) * np.exp(-(em * em))


def _temperature_values(params: FlowParameters, t: float, y: np.ndarray) -> np.ndarray:
    if t <= 0:
        return np.zeros_like(y)
    return np.asarray(erfc(_eta(t, y) * math.sqrt(params.pr)), dtype=float)


def _concentration_values(params: FlowParameters, t: float, y: np.ndarray) -> np.ndarray:
    if t <= 0:
        return np.zeros_like(y)
    return np.asarray(erfc(_eta(t, y) * math.sqrt(params.sc)), dtype=float)


def _velocity_values(params: FlowParameters, t: float, y: np.ndarray) -> np.ndarray:
    if t <= 0:
        return np.zeros_like(y)
    coef = coefficients(params)
    eta = _eta(t, y)
    e2 = eta * eta
    with np.errstate(under="ignore"):
        plate = (erfc(eta) * (3.0 + 12.0 * e2 + 4.0 * e2 * e2)
                 - np.exp(-e2) * (eta / SQRT_PI) * (10.0 + 4.0 * e2))
        base = _buoyancy_bracket(eta, 1.0)
        # The buoyancy blocks are grouped as differences against the m=1
        # bracket so they vanish identically at the wall, keeping
        # V(0, t) = t^2 exact even when |a| or |b| is huge.
        buoy = (coef.a * (_buoyancy_bracket(eta, params.pr) - base)
                + coef.b * (_buoyancy_bracket(eta, params.sc) - base))
    # plate/3 is exactly 1 at the wall, so V(0, t) = t*t to the last bit
    return (t * t) * (plate / 3.0) + t * buoy


_FIELD_EVALUATORS = {
    "velocity": _velocity_values,
    "temperature": _temperature_values,
    "concentration": _concentration_values,
}


def temperature(params: FlowParameters, pt: EvalPoint) -> float:
    """Dimensionless temperature ``T = erfc(eta*sqrt(Pr))`` (0 for t <= 0)."""
    return float(_temperature_values(params, pt.t_hat, np.asarray([pt.y_hat]))[0])


def concentration(params: FlowParameters, pt: EvalPoint) -> float:
    """Dimensionless concentration ``phi = erfc(eta*sqrt(Sc))`` (0 for t <= 0)."""
    return float(_concentration_values(params, pt.t_hat, np.asarray([pt.y_hat]))[0])


def velocity(params: FlowParameters, pt: EvalPoint) -> float:
    """Dimensionless velocity at one point (0 for t <= 0).

    Equals ``t**2`` exactly at the wall and decays to 0 in the far field.
    Raises :class:`SingularPrandtl` / :class:`SingularSchmidt` when the
    buoyancy coefficients are undefined.
    """
    return float(_velocity_values(params, pt.t_hat, np.asarray([pt.y_hat]))[0])


def profile(params: FlowParameters, t: float, y_grid, field_kind: str) -> Profile:
    """Sample one field on an increasing Y grid at fixed time."""
    try:
        evaluate = _FIELD_EVALUATORS[field_kind]
    except KeyError:
        raise ParameterError(
            f"field_kind must be one of {tuple(_FIELD_EVALUATORS)}") from None
    y = np.asarray(y_grid, dtype=float)
    if y.ndim != 1 or y.size == 0:
        raise ParameterError("y_grid must be a non-empty 1-d array")
    if y[0] < 0 or (y.size > 1 and not np.all(np.diff(y) > 0)):
        raise ParameterError("y_grid must be strictly increasing with y_grid[0] >= 0")
    return Profile(t_hat=t, y_hat=y, values=evaluate(params, t, y),
                   field_kind=field_kind)
