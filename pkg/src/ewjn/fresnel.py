"""Reflection coefficients of the vacuum-metal interface.

Local coefficients are the classical Fresnel forms with the Drude (or
any supplied) permittivity. Nonlocal coefficients are the quasistatic
forms driven by the wavevector-resolved epsilon_l, epsilon_t: r_p
through the surface impedance integral I_p, r_s to leading order in
(omega/c p)^2 through J_p. The kappa-integrals decay as kappa^-2 (r_p)
and kappa^-4 (r_s) and are evaluated with the power-law tail map, never
a hard cutoff.

Branch policy: the vacuum normal wavevector q is real >= 0 for
propagating waves and +i|q| for evanescent ones; the metal-side root is
taken with Im >= 0 so fields decay into the absorbing half-space.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import math

import numpy as np

from .errors import DomainError
from .materials import C_LIGHT, Material, epsilon_l, epsilon_t
from .quadrature import QuadratureConfig, integrate_semi_infinite_decaying


class ReflectionPair(NamedTuple):
    r_s: complex
    r_p: complex
    p: float
    omega: float


def vacuum_normal_wavevector(p, omega):
    """q = sqrt(omega^2/c^2 - p^2): real for propagating, +i|q| evanescent."""
    if np.any(np.asarray(p) < 0):
        raise DomainError("p must be >= 0")
    if omega <= 0:
        raise DomainError("omega must be > 0")
    arg = np.asarray((omega / C_LIGHT) ** 2 - np.asarray(p, dtype=float) ** 2)
    q = np.sqrt(arg.astype(complex))
    # principal sqrt of a negative real lands on +i|q| already; this
    # guards the convention against any -0.0j corner
    return np.where(q.imag < 0, -q, q)[()]


def _metal_root(eps, p, omega):
    qm = np.sqrt(eps * (omega / C_LIGHT) ** 2 - np.asarray(p, dtype=float) ** 2)
    return np.where(qm.imag < 0, -qm, qm)


def local_reflection(p, omega, eps) -> ReflectionPair:
    """Classical Fresnel r_s, r_p for a half-space of permittivity eps.

    Vectorized over p; the returned pair then carries arrays.
    """
    q1 = vacuum_normal_wavevector(p, omega)
    qm = _metal_root(eps, p, omega)
    r_s = (q1 - qm) / (q1 + qm)
    r_p = (eps * q1 - qm) / (eps * q1 + qm)
    return ReflectionPair(r_s=r_s, r_p=r_p, p=p, omega=omega)


def _scales(material: Material):
    # screening and collision wavevector scales of the nonlocal response;
    # used only to seed quadrature panels
    k_star = math.sqrt(3.0) * material.plasma_frequency / material.fermi_velocity
    k_nu = material.collision_rate / material.fermi_velocity
    return k_nu, k_star


def _check_p_omega(p, omega):
    if not (p > 0):
        raise DomainError("p must be > 0")
    if not (omega > 0):
        raise DomainError("omega must be > 0")


def nonlocal_rp_quasistatic(
    material: Material,
    p: float,
    omega: float,
    cfg: QuadratureConfig | None = None,
    eps_l_fn: Callable | None = None,
) -> complex:
    """Quasistatic p-polarized reflection from the nonlocal half-space.

    r_p = (1 - I_p)/(1 + I_p),
    I_p = (2p/pi) Integral_0^inf dkappa / (k^2 eps_l(k, omega)),
    k^2 = p^2 + kappa^2.

    eps_l_fn(k, omega) overrides the material response (used by the
    constant-epsilon limit checks, where I_p = 1/eps analytically); it
    must broadcast over an array k.
    """
    _check_p_omega(p, omega)
    cfg = cfg or QuadratureConfig()
    if eps_l_fn is None:
        eps_l_fn = lambda k, w: epsilon_l(material, k, w)
    k_nu, k_star = _scales(material)

    def integrand(kappa):
        k2 = p * p + kappa * kappa
        return 1.0 / (k2 * eps_l_fn(np.sqrt(k2), omega))

    scale = max(p, k_star)
    breaks = [x for x in (0.3 * p, p, 3.0 * p, k_nu, k_star, 3.0 * k_star) if x > 0]
    value, _ = integrate_semi_infinite_decaying(
        integrand, 0.0, scale, cfg, tail="power", breakpoints=breaks
    )
    i_p = (2.0 * p / math.pi) * value
    return complex((1.0 - i_p) / (1.0 + i_p))


def nonlocal_rs_quasistatic(
    material: Material,
    p: float,
    omega: float,
    cfg: QuadratureConfig | None = None,
    eps_t_fn: Callable | None = None,
) -> complex:
    """Quasistatic s-polarized reflection, leading order in omega^2/(p c)^2.

    r_s = (omega^2/(4 p^2 c^2)) (J_p - 1),
    J_p = (4 p^3/pi) Integral_0^inf dkappa eps_t(k, omega)/k^4.

    With constant eps_t the integral gives J_p = eps, reproducing the
    local quasistatic expansion (eps - 1) omega^2/(4 p^2 c^2).
    """
    _check_p_omega(p, omega)
    cfg = cfg or QuadratureConfig()
    if eps_t_fn is None:
        eps_t_fn = lambda k, w: epsilon_t(material, k, w)
    k_nu, k_star = _scales(material)

    def integrand(kappa):
        k2 = p * p + kappa * kappa
        return eps_t_fn(np.sqrt(k2), omega) / (k2 * k2)

    scale = max(p, k_star)
    breaks = [x for x in (0.3 * p, p, 3.0 * p, k_nu, k_star, 3.0 * k_star) if x > 0]
    value, _ = integrate_semi_infinite_decaying(
        integrand, 0.0, scale, cfg, tail="power", breakpoints=breaks
    )
    j_p = (4.0 * p**3 / math.pi) * value
    return complex(omega**2 / (4.0 * p**2 * C_LIGHT**2) * (j_p - 1.0))
