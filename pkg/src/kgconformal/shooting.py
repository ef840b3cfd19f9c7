"""Independent shooting-method eigenvalue oracle for the Coulomb sector.

Solves the radial reduction of the Klein-Gordon Coulomb equation as a
boundary-value problem, with no reference to the closed-form spectrum.
With u = r R and x = alpha r (natural length of the problem) the ODE is

    u'' = [ (l(l+1) - alpha^2)/x^2 - 2 Ebar / x + eps ] u

where Ebar = E / (m0 c^2) and eps = (1 - Ebar^2) / alpha^2 is the
dimensionless binding parameter (eps ~ 1/N^2 nonrelativistically,
N = n + l + 1).  The regular solution behaves as u ~ x^sigma at the
origin with sigma the positive indicial root of
sigma (sigma - 1) = l(l+1) - alpha^2.  An eigenvalue is a zero of the
large-x miss function u(x_max), isolated by scanning eps over the
window that brackets the N-th level and bisecting.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import solve_ivp

from .core import ConfigError, UnitSystem, natural_units


def _indicial_sigma(l: int, alpha: float) -> float:
    return 0.5 + math.sqrt((l + 0.5) ** 2 - alpha * alpha)


def _shoot(eps: float, l: int, alpha: float, x_lo: float, x_hi: float, dense: bool = False):
    sigma = _indicial_sigma(l, alpha)
    ll = l * (l + 1) - alpha * alpha
    ebar = math.sqrt(max(1.0 - eps * alpha * alpha, 0.0))

    def rhs(x, y):
        u, up = y
        return (up, (ll / (x * x) - 2.0 * ebar / x + eps) * u)

    y0 = (x_lo**sigma, sigma * x_lo ** (sigma - 1.0))
    t_eval = np.linspace(x_lo, x_hi, 400) if dense else None
    sol = solve_ivp(
        rhs, (x_lo, x_hi), y0, method="DOP853", rtol=1e-12, atol=1e-300, t_eval=t_eval
    )
    if not sol.success:
        raise ConfigError(f"shooting integration failed: {sol.message}")
    return sol


def shooting_eigenvalue(
    n: int,
    l: int,
    alpha: float,
    units: UnitSystem = None,
    x_span_per_nu: tuple[float, float] = (1e-3, 40.0),
) -> float:
    """Eigenvalue E of the (n, l) bound state (Sommerfeld-branch ordering).

    Returns the energy in the given unit system.
    """
    units = units or natural_units()
    big_n = n + l + 1
    nu = float(big_n)
    x_lo = x_span_per_nu[0] * nu
    x_hi = x_span_per_nu[1] * nu
    # nonrelativistic spacing isolates the N-th level inside this window
    eps_lo = 1.0 / (big_n + 0.49) ** 2
    eps_hi = 1.0 / (big_n - 0.49) ** 2

    def miss(eps):
        return _shoot(eps, l, alpha, x_lo, x_hi).y[0][-1]

    # bracket the sign change; for the radial ODE at this l the scan window
    # contains exactly one level (nonrelativistic spacing), whose radial
    # quantum number is n, so a unique bracket identifies the state
    grid = np.linspace(eps_lo, eps_hi, 41)
    vals = [miss(e) for e in grid]
    brackets = [
        (grid[i], grid[i + 1])
        for i in range(len(grid) - 1)
        if vals[i] * vals[i + 1] < 0.0
    ]
    if len(brackets) != 1:
        raise ConfigError(
            f"expected exactly one eigenvalue bracket for (n, l) = ({n}, {l}), "
            f"found {len(brackets)}"
        )
    a, b = brackets[0]
    fa = miss(a)
    for _ in range(200):
        mid = 0.5 * (a + b)
        if mid == a or mid == b:
            break
        fm = miss(mid)
        if fa * fm <= 0.0:
            b = mid
        else:
            a, fa = mid, fm
    eps_star = 0.5 * (a + b)
    ebar = math.sqrt(1.0 - eps_star * alpha * alpha)
    return ebar * units.rest_energy
