"""The isometric conformal transformation and its derivative operators.

The map is z_i = x_i, s = t - i (hbar/E) [a ln r + (r/b)^lambda]; its
derivative operators are applied in x-space through their chain-rule
expansions, so the map's role is analytic bookkeeping:

    d_z_i     = d/dx_i + i A_i(x) d/dt
    d_zstar_i = d/dx_i - i A_i(x) d/dt
    A_i(x)    = (x_i / r^2) [a + lambda (r/b)^lambda] (hbar / E)

The composition sum_i d_zstar_i d_z_i (d_z applied first; the order
fixes the sign of the first-order time coupling) expands to

    laplacian + i (div A) d/dt + (sum_i A_i^2) d^2/dt^2

with the mixed x-t terms cancelling, which is what `dzstar_dz` applies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import dual
from .core import (
    ComplexField,
    ComplexPoint,
    DomainError,
    SpaceTimePoint,
    UnitSystem,
    natural_units,
    ConfigError,
)
from .diffengine import DerivativeRequest, DiffConfig, T_AXIS, _diff
from .report import CaseResult, ResidualReport


def _pow_lam(w, lam: float):
    if float(lam).is_integer():
        return w ** int(lam)
    return dual.powr(w, lam)


@dataclass(frozen=True)
class ConformalMap:
    """Parameters (a, b, lambda, E) of the transformation.

    b may be math.inf, in which case the power term drops and (with
    a = 0) the map is the identity.  E is the per-eigenstate energy
    constant; the map is state-dependent.
    """

    a: float
    b: float
    lam: float
    E: float
    units: UnitSystem

    def __post_init__(self):
        if self.b <= 0:
            raise ConfigError("map scale length b must be positive")
        if self.E <= 0:
            raise ConfigError("map energy E must be positive")
        if self.lam <= 0:
            raise ConfigError("map exponent lambda must be positive")

    @classmethod
    def identity(cls, E: float = 1.0, units: UnitSystem = None) -> "ConformalMap":
        return cls(a=0.0, b=math.inf, lam=2.0, E=E, units=units or natural_units())

    @property
    def is_identity(self) -> bool:
        return self.a == 0.0 and math.isinf(self.b)

    def bracket(self, r):
        """a ln r + (r/b)^lambda, generic over floats and hyperduals."""
        term = _pow_lam(r / self.b, self.lam) if not math.isinf(self.b) else 0.0
        if self.a != 0.0:
            term = term + self.a * dual.log(r)
        return term

    def tau(self, r):
        """Imaginary time displacement tau(r) = -(hbar/E) [a ln r + (r/b)^lam]."""
        return -(self.units.hbar / self.E) * self.bracket(r)

    # -- chain-rule coefficients ----------------------------------------

    def time_coupling(self, x, r):
        """Per-component A_i = (x_i/r^2)[a + lam (r/b)^lam](hbar/E)."""
        if self.is_identity:
            return (0.0, 0.0, 0.0)
        w = _pow_lam(r / self.b, self.lam) if not math.isinf(self.b) else 0.0
        g = (self.a + self.lam * w) / (r * r) * (self.units.hbar / self.E)
        return tuple(xi * g for xi in x)

    def time_coupling_divergence(self, r):
        """sum_i dA_i/dx_i = (hbar/E)[a + lam(lam+1)(r/b)^lam] / r^2."""
        if self.is_identity:
            return 0.0
        w = _pow_lam(r / self.b, self.lam) if not math.isinf(self.b) else 0.0
        return (self.units.hbar / self.E) * (self.a + self.lam * (self.lam + 1.0) * w) / (r * r)

    def time_coupling_sq_sum(self, r):
        """sum_i A_i^2 = (hbar/E)^2 [a + lam (r/b)^lam]^2 / r^2."""
        if self.is_identity:
            return 0.0
        w = _pow_lam(r / self.b, self.lam) if not math.isinf(self.b) else 0.0
        return ((self.units.hbar / self.E) * (self.a + self.lam * w)) ** 2 / (r * r)


def forward(cmap: ConformalMap, p: SpaceTimePoint) -> ComplexPoint:
    """z = x, s = t - i (hbar/E) [a ln r + (r/b)^lam]; |z| = |x| exactly."""
    r = p.r
    if r == 0.0 and cmap.a != 0.0:
        raise DomainError("forward map undefined at r = 0 when a != 0 (ln r)")
    s = p.t - 1j * (cmap.units.hbar / cmap.E) * cmap.bracket(r) if not cmap.is_identity else complex(p.t)
    return ComplexPoint(z=p.x, s=s)


def inverse(cmap: ConformalMap, q: ComplexPoint) -> SpaceTimePoint:
    """x = z, t = s + i (hbar/E) [a ln r_z + (r_z/b)^lam]."""
    r = q.r
    if r == 0.0 and cmap.a != 0.0:
        raise DomainError("inverse map undefined at r_z = 0 when a != 0")
    t = q.s + 1j * (cmap.units.hbar / cmap.E) * cmap.bracket(r)
    return SpaceTimePoint(x=q.z, t=t.real)


def inverse_conjugate(cmap: ConformalMap, q_star: ComplexPoint) -> SpaceTimePoint:
    """Conjugate-representation inverse: x = z*, t = s* - i (hbar/E)[...]."""
    r = q_star.r
    if r == 0.0 and cmap.a != 0.0:
        raise DomainError("inverse map undefined at r_z = 0 when a != 0")
    t = q_star.s - 1j * (cmap.units.hbar / cmap.E) * cmap.bracket(r)
    return SpaceTimePoint(x=q_star.z, t=t.real)


def _require_off_origin(cmap: ConformalMap, p: SpaceTimePoint):
    if p.r == 0.0 and not cmap.is_identity:
        raise DomainError("operator coefficients singular at r = 0")


def d_z(cmap: ConformalMap, fld: ComplexField, p: SpaceTimePoint, cfg: DiffConfig, axis=None):
    """d/dz_i = d/dx_i + i A_i d/dt, per component or as a 3-vector."""
    return _first_order(cmap, fld, p, cfg, axis, +1.0)


def d_zstar(cmap: ConformalMap, fld: ComplexField, p: SpaceTimePoint, cfg: DiffConfig, axis=None):
    """d/dz_i* = d/dx_i - i A_i d/dt (sign of the imaginary term flipped)."""
    return _first_order(cmap, fld, p, cfg, axis, -1.0)


def _first_order(cmap, fld, p, cfg, axis, sign):
    _require_off_origin(cmap, p)
    a_coef = cmap.time_coupling(p.x, p.r)
    dt = _diff(DerivativeRequest(fld, p, (T_AXIS,)), cfg)[0]
    def component(i):
        dxi = _diff(DerivativeRequest(fld, p, (i,)), cfg)[0]
        return dxi + sign * 1j * a_coef[i] * dt
    if axis is not None:
        return component(axis)
    return tuple(component(i) for i in range(3))


#: term descriptors of the z-representation second-order operator; there is
#: deliberately no term multiplying the field by the oscillator or Coulomb
#: potential (structural invariant of the transformed equation).
ZFORM_TERMS = ("laplacian", "time-coupling-divergence", "time-coupling-squared")


def dzstar_dz(cmap: ConformalMap, fld: ComplexField, p: SpaceTimePoint, cfg: DiffConfig):
    """sum_i d_zstar_i (d_z_i f), returned as (value, error_estimate)."""
    _require_off_origin(cmap, p)
    r = p.r
    lap = 0.0
    err = 0.0
    for i in range(3):
        v, e = _diff(DerivativeRequest(fld, p, (i, i)), cfg)
        lap += v
        err += e
    dt, e_t = _diff(DerivativeRequest(fld, p, (T_AXIS,)), cfg)
    dtt, e_tt = _diff(DerivativeRequest(fld, p, (T_AXIS, T_AXIS)), cfg)
    div_a = cmap.time_coupling_divergence(r)
    sq = cmap.time_coupling_sq_sum(r)
    value = lap + 1j * div_a * dt + sq * dtt
    err = err + abs(div_a) * e_t + abs(sq) * e_tt
    return value, err


def dz_dzstar(cmap: ConformalMap, fld: ComplexField, p: SpaceTimePoint, cfg: DiffConfig):
    """Reversed composition sum_i d_z_i (d_zstar_i f); the sign of the
    first-order time coupling flips.  Kept for the order-sensitivity probe."""
    value, err = dzstar_dz(cmap, fld, p, cfg)
    r = p.r
    dt = _diff(DerivativeRequest(fld, p, (T_AXIS,)), cfg)[0]
    return value - 2j * cmap.time_coupling_divergence(r) * dt, err


def _laplacian(fld: ComplexField, p: SpaceTimePoint, cfg: DiffConfig):
    lap = 0.0
    err = 0.0
    for i in range(3):
        v, e = _diff(DerivativeRequest(fld, p, (i, i)), cfg)
        lap += v
        err += e
    return lap, err


def qprop_identity_residual(cmap: ConformalMap, fld: ComplexField, p: SpaceTimePoint, cfg: DiffConfig):
    """Oscillator operator identity on an energy eigenfield:

        -sum_i d_zstar_i d_z_i + 3 Omega/(hbar c) = -laplacian + (Omega/(hbar c))^2 x^2

    with Omega/(hbar c) = 2/b^2 for the lambda = 2, a = 0 map.  Returns
    (|lhs - rhs|, |rhs|, error_estimate) at the point.
    """
    omega_hc = 2.0 / (cmap.b * cmap.b)
    f = complex(fld.at(p))
    ddz, e1 = dzstar_dz(cmap, fld, p, cfg)
    lap, e2 = _laplacian(fld, p, cfg)
    lhs = -ddz + 3.0 * omega_hc * f
    rhs = -lap + omega_hc**2 * (p.r**2) * f
    return abs(lhs - rhs), abs(rhs), e1 + e2


def d2z_identity_residual(cmap: ConformalMap, fld: ComplexField, p: SpaceTimePoint, cfg: DiffConfig):
    """Coulomb operator identity on an energy eigenfield (lambda = 1 map):

        sum_i d_zstar_i d_z_i = laplacian + a(1-a)/r^2 + 2(1-a)/(b r) - 1/b^2

    Returns (|lhs - rhs|, |rhs|, error_estimate) at the point.
    """
    r = p.r
    f = complex(fld.at(p))
    ddz, e1 = dzstar_dz(cmap, fld, p, cfg)
    lap, e2 = _laplacian(fld, p, cfg)
    coef = cmap.a * (1.0 - cmap.a) / (r * r) + 2.0 * (1.0 - cmap.a) / (cmap.b * r) - 1.0 / (cmap.b * cmap.b)
    rhs = lap + coef * f
    return abs(ddz - rhs), abs(rhs), e1 + e2


def independence_check(
    cmap: ConformalMap,
    cfg: DiffConfig,
    points,
    tolerance: float = 1e-10,
) -> ResidualReport:
    """Verify ds/dz_i = 0 and dz_i/ds = 0 numerically on the given points.

    ds/dz_i applies the d_z operator to the scalar field s(x, t); dz_i/ds
    applies d/ds = d/dt to the coordinate fields z_i(x, t) = x_i.
    """
    s_field = ComplexField(
        fn=lambda x1, x2, x3, t: t + 1j * cmap.tau(dual.norm3(x1, x2, x3)),
        label="s(x,t)",
        singular_at_origin=cmap.a != 0.0,
    )
    max_ds_dz = 0.0
    max_dz_ds = 0.0
    err = 0.0
    for p in points:
        comps = d_z(cmap, s_field, p, cfg)
        max_ds_dz = max(max_ds_dz, max(abs(c) for c in comps))
        for i in range(3):
            z_field = ComplexField(fn=lambda x1, x2, x3, t, _i=i: (x1, x2, x3)[_i], label=f"z{i + 1}")
            v, e = _diff(DerivativeRequest(z_field, p, (T_AXIS,)), cfg)
            max_dz_ds = max(max_dz_ds, abs(v))
            err = max(err, e)
    cases = (
        CaseResult("ds/dz", max_ds_dz, err, tolerance),
        CaseResult("dz/ds", max_dz_ds, err, tolerance),
    )
    return ResidualReport(suite="map-independence", mode=cfg.mode, cases=cases)


def holomorphy_residual(
    f_of_t_tau,
    t_window: tuple[float, float],
    tau_window: tuple[float, float],
    cfg: DiffConfig,
    tolerance: float = 1e-10,
    samples: int = 7,
    name: str = "holomorphy",
) -> ResidualReport:
    """Max of |d2f/dt2 + d2f/dtau2| / max|f| over a (t, tau) rectangle.

    ``f_of_t_tau`` is a callable (t, tau) -> complex, generic over
    hyperdual arguments so the exact-forward mode applies.
    """
    wrapped = ComplexField(fn=lambda u, v, _x3, _t: f_of_t_tau(u, v), label=name)
    t_lo, t_hi = t_window
    tau_lo, tau_hi = tau_window
    max_res = 0.0
    max_f = 0.0
    err = 0.0
    for i in range(samples):
        for j in range(samples):
            t = t_lo + (t_hi - t_lo) * i / max(samples - 1, 1)
            tau = tau_lo + (tau_hi - tau_lo) * j / max(samples - 1, 1)
            p = SpaceTimePoint(x=(t, tau, 0.0), t=0.0)
            dtt, e1 = _diff(DerivativeRequest(wrapped, p, (0, 0)), cfg)
            dqq, e2 = _diff(DerivativeRequest(wrapped, p, (1, 1)), cfg)
            max_res = max(max_res, abs(dtt + dqq))
            max_f = max(max_f, abs(complex(f_of_t_tau(t, tau))))
            err = max(err, e1 + e2)
    scale = max_f if max_f > 0.0 else 1.0
    case = CaseResult(name, max_res / scale, err / scale, tolerance)
    return ResidualReport(suite="holomorphy", mode=cfg.mode, cases=(case,))
