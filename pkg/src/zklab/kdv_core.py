"""Closed-form line-soliton objects of the KdV/ZK family.

The line soliton u_c(xi) = c sech^2(sqrt(c) xi) travels at speed 4c in the
frame xi = x - 4ct - x0.  This module collects everything about it that is
known in closed form: the soliton profile and its derivatives in xi and c,
the three bound states of the Hessian (Schrodinger) operator

    L_c = -d^2/dxi^2 + 4c - 12 c sech^2(sqrt(c) xi),

the neutral pair (psi, eta) at the critical speed c* = 1/5 where the first
transverse mode loses stability, the mass/momentum functionals M(c) = 2 sqrt(c)
and P(c) = (2/3) c^(3/2), plus the uniform grids and trapezoid quadrature
used by every other module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

#: Critical soliton speed: the k=1 transverse mode with period 2*pi is
#: neutrally stable exactly at c = 1/5 (threshold c_k = k^2/5).
C_STAR = 0.2


class GridMismatchError(ValueError):
    """Raised when two fields living on different grids are combined."""


def sech(u):
    """Overflow-safe sech; valid for any real argument."""
    v = np.exp(-np.abs(u))
    return 2.0 * v / (1.0 + v * v)


def _gd(u):
    # Gudermannian function, gd(u) = arctan(sinh(u)), without sinh overflow.
    return 2.0 * np.arctan(np.tanh(0.5 * u))


@dataclass(frozen=True)
class SolitonParams:
    """Speed c > 0 and translation x0 of a line soliton."""

    c: float
    x0: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.c) and np.isfinite(self.x0)):
            raise ValueError("soliton parameters must be finite")
        if self.c <= 0:
            raise ValueError(f"soliton speed must be positive, got c={self.c}")


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid on [-L, L] with composite-trapezoid weights.

    n is odd so that xi = 0 is a node; h = 2L/(n-1); the weights sum to 2L.
    """

    L: float
    n: int

    def __post_init__(self):
        if self.L <= 0:
            raise ValueError("half width must be positive")
        if self.n < 3 or self.n % 2 == 0:
            raise ValueError("node count must be odd and >= 3")

    @property
    def h(self) -> float:
        return 2.0 * self.L / (self.n - 1)

    @cached_property
    def nodes(self) -> np.ndarray:
        x = np.linspace(-self.L, self.L, self.n)
        x.flags.writeable = False
        return x

    @cached_property
    def weights(self) -> np.ndarray:
        w = np.full(self.n, self.h)
        w[0] = w[-1] = 0.5 * self.h
        w.flags.writeable = False
        return w

    @classmethod
    def default(cls) -> "Grid1D":
        # L = 50 puts the soliton tail at ~exp(-2 sqrt(c*) L) ~ 1e-20;
        # h = 0.025 is fine enough for 1e-4-level coefficient targets.
        return cls(L=50.0, n=4001)


@dataclass
class Field1D:
    """Real-valued samples of a profile on a Grid1D."""

    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.grid.n,):
            raise ValueError("field length does not match grid")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("field contains non-finite values")

    def norm(self) -> float:
        """Discrete L2 norm, sqrt(sum w_j f_j^2)."""
        return float(np.sqrt(np.dot(self.grid.weights, self.values**2)))


@dataclass
class EigenPair:
    eigenvalue: float
    eigenfunction: Field1D
    residual_norm: float


def inner(fa: Field1D, fb: Field1D) -> float:
    """Trapezoid L2 inner product sum_j w_j fa_j fb_j (grids must match)."""
    ga, gb = fa.grid, fb.grid
    if ga is not gb and (ga.L != gb.L or ga.n != gb.n):
        raise GridMismatchError(f"grid mismatch: ({ga.L},{ga.n}) vs ({gb.L},{gb.n})")
    return float(np.dot(ga.weights, fa.values * fb.values))


# ---------------------------------------------------------------------------
# soliton profile family (all closed forms, valid for any c > 0)

def line_soliton(c: float, xi) -> np.ndarray:
    """u_c(xi) = c sech^2(sqrt(c) xi); the caller supplies the co-moving xi."""
    return c * sech(np.sqrt(c) * np.asarray(xi, dtype=float)) ** 2


def eval_line_soliton(p: SolitonParams, xi) -> np.ndarray:
    """Soliton profile for a parameter record; xi already co-moving."""
    return line_soliton(p.c, xi)


def soliton_dxi(c: float, xi) -> np.ndarray:
    """d u_c / d xi = -2 c^(3/2) sech^2 tanh."""
    u = np.sqrt(c) * np.asarray(xi, dtype=float)
    return -2.0 * c ** 1.5 * sech(u) ** 2 * np.tanh(u)


def soliton_dc(c: float, xi) -> np.ndarray:
    """d u_c / d c = sech^2(u) - u sech^2(u) tanh(u), with u = sqrt(c) xi."""
    u = np.sqrt(c) * np.asarray(xi, dtype=float)
    s2 = sech(u) ** 2
    return s2 - u * s2 * np.tanh(u)


def soliton_dc_antiderivative(c: float, xi) -> np.ndarray:
    """Antiderivative from -infinity of d u_c / d c.

    Integrating the closed form termwise gives
    (1/(2 sqrt(c))) * (1 + tanh(u) + u sech^2(u)); it tends to 0 as
    xi -> -inf and to M'(c) = 1/sqrt(c) as xi -> +inf.
    """
    u = np.sqrt(c) * np.asarray(xi, dtype=float)
    return (1.0 + np.tanh(u) + u * sech(u) ** 2) / (2.0 * np.sqrt(c))


def hessian_potential(c: float, xi) -> np.ndarray:
    """Potential part of L_c: 4c - 12 c sech^2(sqrt(c) xi)."""
    return 4.0 * c - 12.0 * c * sech(np.sqrt(c) * np.asarray(xi, dtype=float)) ** 2


def hessian_potential_dc(c: float, xi) -> np.ndarray:
    """d L_c / d c, a multiplication operator:

    4 - 12 sech^2(u) + 12 u sech^2(u) tanh(u),  u = sqrt(c) xi.
    """
    u = np.sqrt(c) * np.asarray(xi, dtype=float)
    s2 = sech(u) ** 2
    return 4.0 - 12.0 * s2 + 12.0 * u * s2 * np.tanh(u)


# ---------------------------------------------------------------------------
# the neutral pair at the critical speed

def neutral_mode_profile(xi) -> np.ndarray:
    """sech^3(sqrt(c*) xi): kernel of L_{c*} + 1 (the k=1 neutral mode)."""
    return sech(np.sqrt(C_STAR) * np.asarray(xi, dtype=float)) ** 3


def neutral_mode_antiderivative(xi) -> np.ndarray:
    """Antiderivative from -infinity of the neutral mode, in closed form.

    With u = sqrt(c*) xi:
        (1/sqrt(c*)) * [ (sech(u) tanh(u) + gd(u)) / 2 + pi/4 ],
    which avoids the accumulation error of cumulative quadrature.  It is
    bounded (-> pi/(2 sqrt(c*)) as xi -> +inf) but does not decay.
    """
    u = np.sqrt(C_STAR) * np.asarray(xi, dtype=float)
    return (0.5 * (sech(u) * np.tanh(u) + _gd(u)) + 0.25 * np.pi) / np.sqrt(C_STAR)


def psi_star(grid: Grid1D) -> Field1D:
    """The neutral mode sampled on a grid."""
    return Field1D(grid, neutral_mode_profile(grid.nodes))


def eta_star(grid: Grid1D) -> Field1D:
    """The adjoint (antiderivative) partner of the neutral mode on a grid."""
    return Field1D(grid, neutral_mode_antiderivative(grid.nodes))


# ---------------------------------------------------------------------------
# mass and momentum functionals

def mass_M(c: float) -> float:
    """M(c) = integral of u_c = 2 sqrt(c)."""
    return 2.0 * np.sqrt(c)


def momentum_P(c: float) -> float:
    """P(c) = (1/2) integral of u_c^2 = (2/3) c^(3/2)."""
    return (2.0 / 3.0) * c ** 1.5


def mass_slope(c: float) -> float:
    """M'(c) = 1/sqrt(c)."""
    return 1.0 / np.sqrt(c)


def momentum_slope(c: float) -> float:
    """P'(c) = sqrt(c)."""
    return float(np.sqrt(c))


def mass_quadrature(c: float, grid: Grid1D) -> float:
    """M(c) by trapezoid quadrature of the sampled soliton."""
    return float(np.dot(grid.weights, line_soliton(c, grid.nodes)))


def momentum_quadrature(c: float, grid: Grid1D) -> float:
    """P(c) by trapezoid quadrature of u_c^2 / 2."""
    return 0.5 * float(np.dot(grid.weights, line_soliton(c, grid.nodes) ** 2))


# ---------------------------------------------------------------------------
# applying L_c to sampled profiles

def second_derivative(values: np.ndarray, h: float, order: int = 4) -> np.ndarray:
    """Finite-difference d^2/dxi^2 on a uniform grid.

    Central stencils inside (3-point for order 2, 5-point for order 4);
    near the edges the formula falls back to the widest centered/one-sided
    variant that fits.  Edge rows are lower order, which only matters for
    profiles that have not decayed at the boundary.
    """
    f = values
    d2 = np.empty_like(f)
    if order == 2:
        d2[1:-1] = f[:-2] - 2.0 * f[1:-1] + f[2:]
    elif order == 4:
        d2[2:-2] = (-f[:-4] + 16.0 * f[1:-3] - 30.0 * f[2:-2] + 16.0 * f[3:-1] - f[4:]) / 12.0
        d2[1] = f[0] - 2.0 * f[1] + f[2]
        d2[-2] = f[-3] - 2.0 * f[-2] + f[-1]
    else:
        raise ValueError(f"unsupported stencil order {order}")
    d2[0] = f[0] - 2.0 * f[1] + f[2]
    d2[-1] = f[-1] - 2.0 * f[-2] + f[-3]
    return d2 / h**2


def apply_hessian(f: Field1D, c: float, order: int = 4) -> Field1D:
    """Apply L_c = -d^2/dxi^2 + V_c to a sampled field."""
    d2 = second_derivative(f.values, f.grid.h, order=order)
    v = hessian_potential(c, f.grid.nodes)
    return Field1D(f.grid, -d2 + v * f.values)


def eigenpairs(c: float, grid: Grid1D) -> tuple[EigenPair, EigenPair, EigenPair]:
    """The three bound states of L_c, sampled with a residual certificate.

    Closed forms:
        lambda_1 = -5c,  phi_1 = sech^3(u)
        lambda_2 =  0,   phi_2 = sech^2(u) tanh(u)
        lambda_3 =  3c,  phi_3 = 4 sech(u) - 5 sech^3(u)
    with u = sqrt(c) xi.  residual_norm is the discrete L2 norm of
    (L_c - lambda) phi computed with the 4th-order stencil.
    """
    if c <= 0:
        raise ValueError("speed must be positive")
    u = np.sqrt(c) * grid.nodes
    s = sech(u)
    triples = [
        (-5.0 * c, s**3),
        (0.0, s**2 * np.tanh(u)),
        (3.0 * c, 4.0 * s - 5.0 * s**3),
    ]
    out = []
    for lam, vals in triples:
        f = Field1D(grid, vals)
        r = apply_hessian(f, c).values - lam * vals
        out.append(EigenPair(lam, f, Field1D(grid, r).norm()))
    return tuple(out)
