"""Spin precession and dephasing of the electron-hole pair.

Two engines produce the Kerr-rotation signal theta_K(t) = S_z(t) of the
electron:

* ``evolve_master`` / ``kerr_trace_master`` integrate the Lindblad equation
  for the full 4x4 pair state with fixed-step RK4,
* ``kerr_trace_closed_form`` evaluates the analytic solution of the same
  model.

They are implemented independently so each can serve as an oracle for the
other.

Sense convention: both spins precess about the field axis, and only the
product of (initial transverse spin sign) x (rotation sense) is observable
in S_z.  This package fixes the sense so that for a negative g-factor in a
positive field the D+ pump, excited through the lower-energy hole line,
rises toward +S_z first: a spin started at +y reaches +z after a quarter
period.  Concretely the rotation rate about +x is -omega, with omega the
signed Larmor angular frequency g mu_B B / hbar.  Reversing the field flips
this sense and simultaneously swaps the hole-line assignment, which leaves
every signal unchanged.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import HBAR_EV_PS, MU_B_EV_PER_T
from .errors import StepSizeError
from .polarization import PhotonPolarization, stokes_of
from .quantum import SIGMA_X, require_density_matrix
from .transfer import SpectralWeights

MAX_STEPS = 10 ** 6

_I2 = np.eye(2, dtype=complex)
_I4 = np.eye(4, dtype=complex)
_I16 = np.eye(16, dtype=complex)

# Electron x operator and the hole field-axis operator in the storage basis
# (the hole operator is diagonal there because the basis is its eigenbasis).
_ELECTRON_X = np.kron(SIGMA_X, _I2)
_HOLE_AXIS = np.kron(_I2, np.diag([1.0, -1.0]).astype(complex))


def larmor_omega(g_factor: float, bx_tesla: float) -> float:
    """Signed Larmor angular frequency g mu_B B / hbar in rad/ps."""
    return g_factor * MU_B_EV_PER_T * bx_tesla / HBAR_EV_PS


def quarter_period_ps(omega: float) -> float:
    """Time of a quarter precession turn, (pi/2)/|omega|; inf at zero field."""
    if omega == 0.0:
        return math.inf
    return 0.5 * math.pi / abs(omega)


@dataclass(frozen=True)
class DynamicsParams:
    """Rates and frequencies entering the pair master equation.

    omega_e and omega_lh are signed Larmor angular frequencies (rad/ps);
    gamma_e = 1/T2* and gamma_h = 1/tau_h are pure dephasing rates (1/ps),
    acting in the electron x eigenbasis and the hole storage basis.
    """

    omega_e: float
    omega_lh: float
    gamma_e: float
    gamma_h: float

    def __post_init__(self):
        for name in ("omega_e", "omega_lh", "gamma_e", "gamma_h"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite")
        if self.gamma_e < 0.0 or self.gamma_h < 0.0:
            raise ValueError("dephasing rates must be >= 0")


@dataclass(frozen=True)
class KerrTrace:
    """Sampled Kerr-rotation signal theta_K on a strictly increasing time grid."""

    t_ps: np.ndarray
    theta_k: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t_ps, dtype=float)
        th = np.asarray(self.theta_k, dtype=float)
        if t.ndim != 1 or t.size == 0 or th.shape != t.shape:
            raise ValueError("t_ps and theta_k must be matching non-empty 1d arrays")
        if t.size > 1 and not np.all(np.diff(t) > 0.0):
            raise ValueError("time grid must be strictly increasing")
        t.flags.writeable = False
        th.flags.writeable = False
        object.__setattr__(self, "t_ps", t)
        object.__setattr__(self, "theta_k", th)


def _max_step_ps(d: DynamicsParams) -> float:
    """Fixed RK4 step bound: resolves the fastest precession and keeps the
    dissipative eigenvalues inside the stability region."""
    h = 0.01
    if d.omega_lh != 0.0:
        h = min(h, 0.01 / abs(d.omega_lh))
    gmax = max(d.gamma_e, d.gamma_h)
    if gmax > 0.0:
        h = min(h, 1.0 / gmax)
    return h


def _liouvillian(d: DynamicsParams) -> np.ndarray:
    """16x16 generator acting on the row-major vectorized pair state."""
    # Rotation rates about +x per the module sense convention.
    om_e = -d.omega_e
    om_h = -d.omega_lh
    ham = 0.5 * om_e * _ELECTRON_X + 0.5 * om_h * _HOLE_AXIS
    gen = -1j * (np.kron(ham, _I4) - np.kron(_I4, ham.T))
    gen += 0.5 * d.gamma_e * (np.kron(_ELECTRON_X, _ELECTRON_X.T) - _I16)
    gen += 0.5 * d.gamma_h * (np.kron(_HOLE_AXIS, _HOLE_AXIS.T) - _I16)
    return gen


def _rk4_step_matrix(gen: np.ndarray, h: float) -> np.ndarray:
    """One-step RK4 propagator for the linear generator.

    For a linear autonomous system the classical RK4 update is exactly the
    degree-4 Taylor polynomial of exp(h L); evaluating it once as a matrix
    and applying it per step is the same method without the per-step
    right-hand-side calls.
    """
    hL = h * gen
    m = _I16 + 0.25 * hL
    m = _I16 + (hL / 3.0) @ m
    m = _I16 + 0.5 * hL @ m
    m = _I16 + hL @ m
    return m


def _substeps(span_ps: float, h_max: float) -> int:
    n = int(math.ceil(span_ps / h_max - 1e-12))
    return max(n, 1)


def _segment_propagator(d: DynamicsParams, gen: np.ndarray, span_ps: float) -> np.ndarray:
    n = _substeps(span_ps, _max_step_ps(d))
    if n > MAX_STEPS:
        raise StepSizeError(f"segment of {span_ps} ps needs {n} steps (limit {MAX_STEPS})")
    step = _rk4_step_matrix(gen, span_ps / n)
    return np.linalg.matrix_power(step, n)


def evolve_master(rho0: np.ndarray, t_ps: float, d: DynamicsParams) -> np.ndarray:
    """Propagate a pair state for t_ps under precession plus pure dephasing.

    The model is drho/dt = -i[H, rho]/hbar + D_e(rho) + D_h(rho) with the
    electron and hole Zeeman terms along x and pure dephasing channels as in
    :class:`DynamicsParams`.  Dephasing preserves the spin component along
    the field axis and damps the two transverse components at the full rate.
    """
    rho0 = require_density_matrix(rho0, 4, psd_tol=1e-10)
    t_ps = float(t_ps)
    if not math.isfinite(t_ps) or t_ps < 0.0:
        raise ValueError("t_ps must be finite and >= 0")
    if t_ps == 0.0:
        out = rho0.copy()
        out.flags.writeable = False
        return out
    gen = _liouvillian(d)
    prop = _segment_propagator(d, gen, t_ps)
    rho = (prop @ rho0.reshape(16)).reshape(4, 4)
    rho = 0.5 * (rho + rho.conj().T)
    rho.flags.writeable = False
    return rho


def _electron_sz(rho_vec: np.ndarray) -> float:
    return float((rho_vec[0] + rho_vec[5] - rho_vec[10] - rho_vec[15]).real)


def kerr_trace_master(rho0: np.ndarray, d: DynamicsParams, t_grid) -> KerrTrace:
    """Integrate the master equation and sample theta_K = S_z on t_grid.

    The grid must be non-negative and strictly increasing; propagation
    starts from t = 0.  One RK4 segment propagator is reused across grid
    intervals of equal length.
    """
    rho0 = require_density_matrix(rho0, 4, psd_tol=1e-10)
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise ValueError("t_grid must be a non-empty 1d array")
    if t[0] < 0.0 or (t.size > 1 and not np.all(np.diff(t) > 0.0)):
        raise ValueError("t_grid must be non-negative and strictly increasing")

    gen = _liouvillian(d)
    h_max = _max_step_ps(d)
    spans = np.diff(np.concatenate(([0.0], t)))
    total = sum(_substeps(s, h_max) for s in spans if s > 0.0)
    if total > MAX_STEPS:
        raise StepSizeError(f"trace needs {total} steps (limit {MAX_STEPS})")

    cache: dict[float, np.ndarray] = {}
    vec = rho0.reshape(16).copy()
    theta = np.empty(t.size, dtype=float)
    for i, span in enumerate(spans):
        if span > 0.0:
            prop = cache.get(span)
            if prop is None:
                n = _substeps(span, h_max)
                prop = np.linalg.matrix_power(_rk4_step_matrix(gen, span / n), n)
                cache[span] = prop
            vec = prop @ vec
        theta[i] = _electron_sz(vec)
    return KerrTrace(t, theta)


def kerr_trace_closed_form(
    pol: PhotonPolarization, w: SpectralWeights, d: DynamicsParams, t_grid
) -> KerrTrace:
    """Analytic theta_K(t) for light-hole excitation.

    The electron starts at Bloch vector (D px, D py, pz) with D the channel
    imbalance of w, precesses about x at rate -omega_e (module sense
    convention) and loses its transverse components at gamma_e:

        theta_K(t) = exp(-gamma_e t) (pz cos(W t) + D py sin(W t)),  W = |omega_e|

    written here with the signed rotation rate so that a field reversal,
    which also flips D, reproduces the identical trace.  For H and V pumps
    py = pz = 0 and the signal vanishes identically.
    """
    t = np.asarray(t_grid, dtype=float)
    _, py, pz = stokes_of(pol)
    om_rot = -d.omega_e
    env = np.exp(-d.gamma_e * t)
    theta = env * (pz * np.cos(om_rot * t) + w.imbalance * py * np.sin(om_rot * t))
    return KerrTrace(t, theta)


def kerr_trace_closed_form_hh(pol: PhotonPolarization, d: DynamicsParams, t_grid) -> KerrTrace:
    """Analytic theta_K(t) for heavy-hole excitation.

    The electron marginal starts at (0, 0, -pz) (see
    :func:`polspin.transfer.excite_hh`), so only the cosine quadrature
    survives and equal-weight circular superpositions give no signal.
    """
    t = np.asarray(t_grid, dtype=float)
    pz = stokes_of(pol).pz
    om_rot = -d.omega_e
    theta = -pz * np.exp(-d.gamma_e * t) * np.cos(om_rot * t)
    return KerrTrace(t, theta)
