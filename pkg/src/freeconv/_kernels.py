"""Time-march kernels for the theta-weighted finite-difference solver.

Two interchangeable implementations of the same discretization:

* ``march_numba`` — loop kernel compiled with ``numba.njit`` (when available).
  Per step it runs one precomputed Thomas elimination per field.
* ``march_numpy`` — vectorized fallback; assembles each right-hand side with
  array slicing and solves the banded systems with LAPACK via
  ``scipy.linalg.solve_banded``.

Both advance T and phi first (scalar diffusion with diffusivities 1/Pr and
1/Sc), then V with the buoyancy source taken at the same theta weighting.
Dirichlet data: V = t^2, T = 1, phi = 1 at Y = 0 and zero at Y = y_max. The
grid has ``ny`` interior nodes, spacing ``dy = y_max/(ny + 1)``.

Field history is stored every ``store_every`` steps (level 0 and the final
level are always stored). Returns ``(times, v, t_field, phi_field)`` with the
field arrays indexed ``(stored time, node)``.

A cross-validation test asserts both paths agree; results are bit-identical
across runs within one path, but not across paths (different elimination
orderings).
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import solve_banded

from .accel import HAVE_NUMBA


def _n_stored(n_steps: int, store_every: int) -> int:
    extra = 1 if n_steps % store_every != 0 else 0
    return n_steps // store_every + 1 + extra


def _march_loops(pr, sc, gr_cos, gc_cos, y_max, ny, dt, n_steps, theta, store_every):
    n = ny + 2
    dy = y_max / (ny + 1)
    r_t = dt / (pr * dy * dy)
    r_p = dt / (sc * dy * dy)
    r_v = dt / (dy * dy)

    ns = n_steps // store_every + 1
    if n_steps % store_every != 0:
        ns += 1
    times = np.zeros(ns)
    v_out = np.zeros((ns, n))
    t_out = np.zeros((ns, n))
    p_out = np.zeros((ns, n))

    # Thomas elimination factors for the three constant tridiagonal systems
    # (sub = super = -theta*r, diag = 1 + 2*theta*r).
    cp_t = np.empty(ny)
    cp_p = np.empty(ny)
    cp_v = np.empty(ny)
    inv_t = np.empty(ny)
    inv_p = np.empty(ny)
    inv_v = np.empty(ny)
    for which in range(3):
        if which == 0:
            r, cp, inv = r_t, cp_t, inv_t
        elif which == 1:
            r, cp, inv = r_p, cp_p, inv_p
        else:
            r, cp, inv = r_v, cp_v, inv_v
        off = -theta * r
        diag = 1.0 + 2.0 * theta * r
        inv[0] = 1.0 / diag
        cp[0] = off * inv[0]
        for i in range(1, ny):
            inv[i] = 1.0 / (diag - off * cp[i - 1])
            cp[i] = off * inv[i]

    T = np.zeros(n)
    P = np.zeros(n)
    V = np.zeros(n)
    rhs = np.empty(ny)
    w = np.empty(ny)
    s_old = np.empty(n)

    ex_t = (1.0 - theta) * r_t
    ex_p = (1.0 - theta) * r_p
    ex_v = (1.0 - theta) * r_v

    cursor = 1
    for step in range(n_steps):
        t_new = (step + 1) * dt

        for j in range(n):
            s_old[j] = gr_cos * T[j] + gc_cos * P[j]

        # temperature
        for i in range(ny):
            j = i + 1
            rhs[i] = T[j] + ex_t * (T[j + 1] - 2.0 * T[j] + T[j - 1])
        rhs[0] += theta * r_t * 1.0
        off = -theta * r_t
        w[0] = rhs[0] * inv_t[0]
        for i in range(1, ny):
            w[i] = (rhs[i] - off * w[i - 1]) * inv_t[i]
        T[ny] = w[ny - 1]
        for i in range(ny - 2, -1, -1):
            w[i] = w[i] - cp_t[i] * w[i + 1]
            T[i + 1] = w[i]
        T[0] = 1.0
        T[n - 1] = 0.0

        # concentration
        for i in range(ny):
            j = i + 1
            rhs[i] = P[j] + ex_p * (P[j + 1] - 2.0 * P[j] + P[j - 1])
        rhs[0] += theta * r_p * 1.0
        off = -theta * r_p
        w[0] = rhs[0] * inv_p[0]
        for i in range(1, ny):
            w[i] = (rhs[i] - off * w[i - 1]) * inv_p[i]
        P[ny] = w[ny - 1]
        for i in range(ny - 2, -1, -1):
            w[i] = w[i] - cp_p[i] * w[i + 1]
            P[i + 1] = w[i]
        P[0] = 1.0
        P[n - 1] = 0.0

        # velocity, with the source at the same theta weighting
        for i in range(ny):
            j = i + 1
            s_new = gr_cos * T[j] + gc_cos * P[j]
            rhs[i] = (V[j] + ex_v * (V[j + 1] - 2.0 * V[j] + V[j - 1])
                      + dt * ((1.0 - theta) * s_old[j] + theta * s_new))
        rhs[0] += theta * r_v * (t_new * t_new)
        off = -theta * r_v
        w[0] = rhs[0] * inv_v[0]
        for i in range(1, ny):
            w[i] = (rhs[i] - off * w[i - 1]) * inv_v[i]
        V[ny] = w[ny - 1]
        for i in range(ny - 2, -1, -1):
            w[i] = w[i] - cp_v[i] * w[i + 1]
            V[i + 1] = w[i]
        V[0] = t_new * t_new
        V[n - 1] = 0.0

        if (step + 1) % store_every == 0 or step + 1 == n_steps:
            times[cursor] = t_new
            for j in range(n):
                v_out[cursor, j] = V[j]
                t_out[cursor, j] = T[j]
                p_out[cursor, j] = P[j]
            cursor += 1

    return times, v_out, t_out, p_out


if HAVE_NUMBA:
    import numba

    march_numba = numba.njit(cache=True)(_march_loops)
else:  # pragma: no cover - exercised via FREECONV_DISABLE_NUMBA runs
    march_numba = None


def march_numpy(pr, sc, gr_cos, gc_cos, y_max, ny, dt, n_steps, theta, store_every):
    n = ny + 2
    dy = y_max / (ny + 1)
    r_t = dt / (pr * dy * dy)
    r_p = dt / (sc * dy * dy)
    r_v = dt / (dy * dy)

    ns = _n_stored(n_steps, store_every)
    times = np.zeros(ns)
    v_out = np.zeros((ns, n))
    t_out = np.zeros((ns, n))
    p_out = np.zeros((ns, n))

    def banded(r):
        ab = np.zeros((3, ny))
        ab[0, 1:] = -theta * r
        ab[1, :] = 1.0 + 2.0 * theta * r
        ab[2, :-1] = -theta * r
        return ab

    ab_t, ab_p, ab_v = banded(r_t), banded(r_p), banded(r_v)

    T = np.zeros(n)
    P = np.zeros(n)
    V = np.zeros(n)

    # non-finite propagation is the documented failure mode (solve raises
    # NonFiniteField), so the intermediate overflow warnings are noise
    cursor = 1
    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(n_steps):
            t_new = (step + 1) * dt
            s_old = gr_cos * T + gc_cos * P

            rhs = T[1:-1] + (1.0 - theta) * r_t * (T[2:] - 2.0 * T[1:-1] + T[:-2])
            rhs[0] += theta * r_t
            T[1:-1] = solve_banded((1, 1), ab_t, rhs, check_finite=False)
            T[0], T[-1] = 1.0, 0.0

            rhs = P[1:-1] + (1.0 - theta) * r_p * (P[2:] - 2.0 * P[1:-1] + P[:-2])
            rhs[0] += theta * r_p
            P[1:-1] = solve_banded((1, 1), ab_p, rhs, check_finite=False)
            P[0], P[-1] = 1.0, 0.0

            s_new = gr_cos * T + gc_cos * P
            rhs = (V[1:-1] + (1.0 - theta) * r_v * (V[2:] - 2.0 * V[1:-1] + V[:-2])
                   + dt * ((1.0 - theta) * s_old[1:-1] + theta * s_new[1:-1]))
            rhs[0] += theta * r_v * (t_new * t_new)
            V[1:-1] = solve_banded((1, 1), ab_v, rhs, check_finite=False)
            V[0], V[-1] = t_new * t_new, 0.0

            if (step + 1) % store_every == 0 or step + 1 == n_steps:
                times[cursor] = t_new
                v_out[cursor] = V
                t_out[cursor] = T
                p_out[cursor] = P
                cursor += 1

    return times, v_out, t_out, p_out


def march(pr, sc, gr_cos, gc_cos, y_max, ny, dt, n_steps, theta, store_every):
    """Run the march on the active backend."""
    args = (float(pr), float(sc), float(gr_cos), float(gc_cos), float(y_max),
            int(ny), float(dt), int(n_steps), float(theta), int(store_every))
    if march_numba is not None:
        return march_numba(*args)
    return march_numpy(*args)
