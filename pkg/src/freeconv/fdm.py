"""Finite-difference oracle for the dimensionless system.

An independent check on the closed-form fields: the same equations are
advanced by a theta-weighted (default Crank-Nicolson) scheme on a truncated
domain [0, y_max] with homogeneous Dirichlet data at the outer edge. Each
implicit step solves its tridiagonal system by direct elimination; see
``_kernels`` for the two backend implementations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from .analytic import _FIELD_EVALUATORS, coefficients
from .model import FlowParameters, ParameterError

#: Truncation default adequate for all parameter sets used in the trend and
#: comparison suites (outer-boundary influence below 1e-8 at Y <= y_max/2).
DEFAULT_Y_MAX = 20.0


class NonFiniteField(RuntimeError):
    """The march produced non-finite values (instability or misconfiguration)."""


class OutOfDomain(ValueError):
    """Requested sample lies outside the stored grid."""


@dataclass(frozen=True)
class FdmConfig:
    """Grid specification for :func:`solve`.

    ``ny`` counts interior nodes, so the spacing is ``y_max/(ny + 1)``.
    ``theta`` is the implicitness weight (0.5 = Crank-Nicolson). For
    ``theta < 0.5`` the explicit part is only conditionally stable and the
    parameter-dependent bound is enforced by :meth:`validate_for`.
    ``store_every`` thins the stored history; level 0 and the final level
    are always kept.
    """

    ny: int
    dt: float
    t_end: float
    y_max: float = DEFAULT_Y_MAX
    theta: float = 0.5
    store_every: int = 1

    def __post_init__(self) -> None:
        if self.y_max <= 0:
            raise ParameterError("y_max must be > 0")
        if self.ny < 16:
            raise ParameterError("ny must be >= 16")
        if self.dt <= 0:
            raise ParameterError("dt must be > 0")
        if self.t_end <= 0:
            raise ParameterError("t_end must be > 0")
        if not 0.0 <= self.theta <= 1.0:
            raise ParameterError("theta must lie in [0, 1]")
        if self.store_every < 1:
            raise ParameterError("store_every must be >= 1")

    @property
    def delta_y(self) -> float:
        return self.y_max / (self.ny + 1)

    @property
    def n_steps(self) -> int:
        # t_end is rounded to a whole number of steps; dt is the resolution
        # contract, so sub-step accuracy at t_end is not promised.
        return max(1, int(round(self.t_end / self.dt)))

    def validate_for(self, params: FlowParameters) -> None:
        """Reject configurations that violate the explicit-part stability rule."""
        if self.theta < 0.5:
            limit = self.delta_y**2 * min(1.0, params.pr, params.sc) / 2.0
            if self.dt > limit:
                raise ParameterError(
                    f"theta={self.theta} < 0.5 requires dt <= {limit:.3e} "
                    f"(dy^2 * min(1, Pr, Sc) / 2); got dt={self.dt}")


@dataclass(frozen=True, eq=False)
class FdmSolution:
    """Discrete fields indexed ``(stored time, node)``."""

    y_grid: np.ndarray
    times: np.ndarray
    v_field: np.ndarray
    t_field: np.ndarray
    phi_field: np.ndarray


def solve(params: FlowParameters, cfg: FdmConfig) -> FdmSolution:
    """Advance all three fields to ``t_end`` and return the stored history."""
    cfg.validate_for(params)
    cos_a = math.cos(params.alpha)
    times, v, t, phi = _kernels.march(
        params.pr, params.sc, params.gr * cos_a, params.gc * cos_a,
        cfg.y_max, cfg.ny, cfg.dt, cfg.n_steps, cfg.theta, cfg.store_every)
    if not (np.isfinite(v).all() and np.isfinite(t).all() and np.isfinite(phi).all()):
        raise NonFiniteField(
            "finite-difference march produced non-finite values; "
            "check dt/theta against the stability rule")
    y_grid = np.linspace(0.0, cfg.y_max, cfg.ny + 2)
    return FdmSolution(y_grid=y_grid, times=times, v_field=v,
                       t_field=t, phi_field=phi)


def sample_at(sol: FdmSolution, y: float, t: float) -> tuple[float, float, float]:
    """Sample ``(V, T, phi)`` at a point.

    Linear interpolation in space, at the nearest stored time level at or
    after ``t``.
    """
    if not 0.0 <= y <= sol.y_grid[-1]:
        raise OutOfDomain(f"y={y} outside [0, {sol.y_grid[-1]}]")
    if not 0.0 <= t <= sol.times[-1] * (1.0 + 1e-12):
        raise OutOfDomain(f"t={t} outside [0, {sol.times[-1]}]")
    level = int(np.searchsorted(sol.times, t * (1.0 - 1e-12)))
    level = min(level, len(sol.times) - 1)
    return (
        float(np.interp(y, sol.y_grid, sol.v_field[level])),
        float(np.interp(y, sol.y_grid, sol.t_field[level])),
        float(np.interp(y, sol.y_grid, sol.phi_field[level])),
    )


@dataclass(frozen=True)
class ConvergenceLevel:
    """One refinement level of :func:`convergence_study`.

    ``order_*`` is ``log2(e_prev / e_this)``, None on the coarsest level.
    """

    delta_y: float
    dt: float
    err_v: float
    err_t: float
    err_phi: float
    order_v: float | None = None
    order_t: float | None = None
    order_phi: float | None = None


def convergence_study(params: FlowParameters, base_cfg: FdmConfig,
                      levels: int) -> list[ConvergenceLevel]:
    """Max-norm error against the closed form under grid refinement.

    Each level halves ``delta_y`` and quarters ``dt`` so both error
    components shrink at the same rate; the observed order should sit near 2.
    Requires the closed form, so Pr and Sc must be outside the singular
    guard band.
    """
    if levels < 2:
        raise ParameterError("convergence_study requires at least two levels")
    coefficients(params)  # fail fast near the Pr/Sc singularities

    rows: list[ConvergenceLevel] = []
    prev: ConvergenceLevel | None = None
    for k in range(levels):
        ny = (base_cfg.ny + 1) * 2**k - 1
        dt = base_cfg.dt / 4**k
        cfg = replace(base_cfg, ny=ny, dt=dt,
                      store_every=max(1, int(round(base_cfg.t_end / dt))))
        sol = solve(params, cfg)
        t_final = float(sol.times[-1])
        errs = {}
        for name, field in (("velocity", sol.v_field), ("temperature", sol.t_field),
                            ("concentration", sol.phi_field)):
            exact = _FIELD_EVALUATORS[name](params, t_final, sol.y_grid)
            errs[name] = float(np.max(np.abs(field[-1] - exact)))
        row = ConvergenceLevel(
            delta_y=cfg.delta_y, dt=dt,
            err_v=errs["velocity"], err_t=errs["temperature"],
            err_phi=errs["concentration"],
            order_v=None if prev is None else math.log2(prev.err_v / errs["velocity"]),
            order_t=None if prev is None else math.log2(prev.err_t / errs["temperature"]),
            order_phi=None if prev is None else math.log2(prev.err_phi / errs["concentration"]),
        )
        rows.append(row)
        prev = row
    return rows
