"""Independent finite-difference evolution of the 1-D and radial diffusion
equations.

This module is the package's referee: it evolves initial profiles with a
Crank-Nicolson scheme and shares *no* special-function code with the analytic
modules, so agreement between an evolved profile and an analytic formula is
genuine evidence rather than a tautology.

The interior linear system is symmetric positive definite and constant over a
run, so it is factorized once (banded Cholesky) and each time step is a single
tridiagonal solve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.linalg import cho_solve_banded, cholesky_banded

from .gel3d import RadialField
from .similarity1d import Profile

__all__ = [
    "Grid1D",
    "EvolveSpec",
    "default_domain",
    "evolve_1d",
    "evolve_radial",
    "pde_residual",
]

DEFAULT_N_POINTS = 4001


@dataclass(frozen=True)
class Grid1D:
    """Uniform 1-D grid description."""

    x_min: float
    x_max: float
    n_points: int = DEFAULT_N_POINTS

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ValueError("x_min must be < x_max")
        if self.n_points < 3:
            raise ValueError("need at least 3 grid points")

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)


@dataclass(frozen=True)
class EvolveSpec:
    """Evolution window, step size, and boundary-condition kind.

    ``t_start = 0`` is allowed so that sharp initial data (e.g. the injection
    condition) can be evolved from their preparation time.  The implicit
    Crank-Nicolson scheme is stable for any dt; the default choice downstream
    is D dt / dx^2 = 1.
    """

    d_coeff: float
    t_start: float
    t_end: float
    dt: float
    bc: str = "dirichlet_from_callable"

    def __post_init__(self):
        if not self.d_coeff > 0.0:
            raise ValueError("d_coeff must be positive")
        if not (self.t_start >= 0.0 and self.t_end > self.t_start):
            raise ValueError("need 0 <= t_start < t_end")
        if not self.dt > 0.0:
            raise ValueError("dt must be positive")
        if self.bc not in ("dirichlet_from_callable", "zero"):
            raise ValueError("bc must be 'dirichlet_from_callable' or 'zero'")


def default_domain(d_coeff: float, t_end: float) -> float:
    """Half-width L of the truncated 1-D domain: max(40, 20 sqrt(D t_end)).

    Wide enough that the frozen or analytically supplied boundary values err
    at most at O(D t / L^2), far below the scheme's own error.
    """
    return max(40.0, 20.0 * math.sqrt(d_coeff * t_end))


def _uniform_spacing(x: np.ndarray) -> float:
    dx = np.diff(x)
    if dx.size == 0 or abs(dx.max() - dx.min()) > 1e-9 * dx.min():
        raise ValueError("evolution requires a uniform grid")
    return float(dx.mean())


def _steps(spec: EvolveSpec) -> tuple:
    span = spec.t_end - spec.t_start
    n_steps = max(1, round(span / spec.dt))
    return n_steps, span / n_steps


def _resolve_bc(spec: EvolveSpec, bc_values):
    if spec.bc == "zero":
        return lambda x, t: 0.0
    if bc_values is None:
        raise ValueError("dirichlet_from_callable requires bc_values")
    return bc_values


def evolve_1d(
    initial: Profile,
    spec: EvolveSpec,
    bc_values: Optional[Callable[[float, float], float]] = None,
) -> Profile:
    """Crank-Nicolson evolution of a 1-D diffusion profile.

    Second-order accurate in space and time.  Both boundary values are pinned
    each step to ``bc_values(x_boundary, t_new)`` (or to zero for the ``zero``
    boundary kind).

    Parameters
    ----------
    initial : Profile
        Field sampled on a uniform grid at ``spec.t_start``.
    spec : EvolveSpec
        Evolution window and step size.
    bc_values : callable, optional
        Boundary-value function ``(x, t) -> value``.

    Returns
    -------
    Profile
        The evolved field at ``spec.t_end`` on the same grid.
    """
    x = initial.grid
    if x.size < 3:
        raise ValueError("need at least 3 grid points to evolve")
    dx = _uniform_spacing(x)
    n_steps, dt = _steps(spec)
    lam = spec.d_coeff * dt / (dx * dx)
    bc = _resolve_bc(spec, bc_values)

    m = x.size - 2  # interior unknowns
    bands = np.zeros((2, m))
    bands[0, 1:] = -0.5 * lam
    bands[1, :] = 1.0 + lam
    factor = cholesky_banded(bands, lower=False)

    u = initial.values.copy()
    t = spec.t_start
    for _ in range(n_steps):
        t_new = t + dt
        rhs = u[1:-1] + 0.5 * lam * (u[:-2] - 2.0 * u[1:-1] + u[2:])
        g_left = bc(float(x[0]), t_new)
        g_right = bc(float(x[-1]), t_new)
        rhs[0] += 0.5 * lam * g_left
        rhs[-1] += 0.5 * lam * g_right
        u[1:-1] = cho_solve_banded((factor, False), rhs)
        u[0] = g_left
        u[-1] = g_right
        t = t_new
    return Profile(grid=x, values=u, time=spec.t_end, family=initial.family)


def evolve_radial(
    initial: RadialField,
    spec: EvolveSpec,
    bc_values: Optional[Callable[[float, float], float]] = None,
) -> RadialField:
    """Crank-Nicolson evolution of a radial displacement field.

    Evolves ``W = r U`` under ``dW/dt = D (W_rr - 2 W / r^2)``.  The grid must
    start at ``r = dr`` (never 0); regularity at the origin is imposed through
    a ghost value ``W(0) = 0``, which is exact for the regular small-r mode
    ``W = c r^2``, so the inner boundary introduces no first-order error.  The
    outer boundary is pinned to ``bc_values(r_max, t)``.

    The diagonal reaction term is split evenly between the implicit and
    explicit halves, keeping the system symmetric positive definite.
    """
    r = initial.radii
    if r.size < 3:
        raise ValueError("need at least 3 grid points to evolve")
    dr = _uniform_spacing(r)
    if abs(r[0] - dr) > 1e-9 * dr:
        raise ValueError("radial grid must start at r = dr (one spacing from 0)")
    if initial.kind != "displacement":
        raise ValueError("evolve_radial expects a displacement field")
    n_steps, dt = _steps(spec)
    lam = spec.d_coeff * dt / (dr * dr)
    bc = _resolve_bc(spec, bc_values)

    react = spec.d_coeff * dt / (r * r)  # CN half of the 2 D / r^2 term
    m = r.size - 1  # all nodes except the pinned outer boundary
    bands = np.zeros((2, m))
    bands[0, 1:] = -0.5 * lam
    bands[1, :] = 1.0 + lam + react[:m]
    factor = cholesky_banded(bands, lower=False)

    w = r * initial.values
    t = spec.t_start
    for _ in range(n_steps):
        t_new = t + dt
        w_left = np.concatenate(([0.0], w[:-1]))  # ghost W(0) = 0
        lap = w_left - 2.0 * w + np.concatenate((w[1:], [0.0]))
        rhs_full = w + 0.5 * lam * lap - react * w
        rhs = rhs_full[:m].copy()
        g_outer = bc(float(r[-1]), t_new) * r[-1]
        rhs[-1] += 0.5 * lam * g_outer
        w[:m] = cho_solve_banded((factor, False), rhs)
        w[-1] = g_outer
        t = t_new
    return RadialField(radii=r, values=w / r, time=spec.t_end, kind="displacement")


def pde_residual(
    profile_fn: Callable[[float, float], float],
    x: float,
    t: float,
    h: float = 1e-3,
    d_coeff: float = 1.0,
) -> float:
    """Finite-difference residual of  du/dt - D d^2u/dx^2  for a callable field.

    Fourth-order central differences in both variables; ``t`` must exceed
    ``2h`` so the time stencil stays at positive times.  Near zero for any
    exact solution of the diffusion equation (the radial density equation in
    its ``r * field`` form included).
    """
    if not h > 0.0:
        raise ValueError("finite-difference step h must be positive")
    if t <= 2.0 * h:
        raise ValueError("need t > 2h to place the time stencil")
    ft = [profile_fn(x, t + k * h) for k in (-2, -1, 1, 2)]
    u_t = (ft[0] - 8.0 * ft[1] + 8.0 * ft[2] - ft[3]) / (12.0 * h)
    fx = [profile_fn(x + k * h, t) for k in (-2, -1, 0, 1, 2)]
    u_xx = (
        -fx[0] + 16.0 * fx[1] - 30.0 * fx[2] + 16.0 * fx[3] - fx[4]
    ) / (12.0 * h * h)
    return u_t - d_coeff * u_xx
