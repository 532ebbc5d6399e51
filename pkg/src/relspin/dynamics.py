"""Trajectory integration under the Dirac-bracket flow.

The generator is H = c P^0 + e A^0 and the flow of any phase function
is its Dirac bracket with H, so the raw equations of motion are

    zdot = J grad H + ( {T4,H} J grad T3 - {T3,H} J grad T4 ) / {T3,T4}

with x^0 slaved to the evolution parameter (dx^0/dt = c) and p^0 a
spectator equal to H/c, exactly conserved in stationary backgrounds.

The continuous flow preserves all four constraints: T3 and T4 by
construction of the bracket, T2 and T5 because {T2,T3} = -T3 and its
three siblings vanish on the surface.  Numerical drift is removed by a
minimal-norm Gauss-Newton projection of the (omega, pi) block, which
also pins S.S = 8 alpha since that is a consequence of T2 = T5 = 0.

Spinless states follow the plain Lorentz force; the correction terms
vanish identically at omega = pi = 0 so the reduced branch is an exact
shortcut, not an approximation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .phase import (PhaseState, dipole_vector, field_data, kinetic_momentum,
                    obs_t2, obs_t3, obs_t4, obs_t5, spin_square, spin_vector,
                    symplectic_apply, pair_gradients, _p0_and_grad, _t34_grad,
                    t2, t3, t4, t5)

# ---------------------------------------------------------------------------
# right-hand sides


def _grad_h(z, model, fd, g_p0):
    gh = model.c * g_p0.copy()
    gh[1:4] += model.e * fd.dA[0, 1:]
    return gh


def dirac_rhs(vec, model, spinless=False):
    """d(vec)/dt for the 16-component state; t is laboratory time."""
    z = PhaseState(vec=np.asarray(vec, dtype=float), spinless=spinless)
    fd = field_data(model, z.x)
    P, g_p0 = _p0_and_grad(z, model, fd)
    gh = _grad_h(z, model, fd, g_p0)
    zdot = symplectic_apply(gh)
    if not spinless:
        g_t3 = _t34_grad(z, model, fd, z.w, 8)
        g_t4 = _t34_grad(z, model, fd, z.pi, 12)
        t34 = pair_gradients(g_t3, g_t4)
        h3 = pair_gradients(g_t3, gh)
        h4 = pair_gradients(g_t4, gh)
        zdot += (h4 / t34) * symplectic_apply(g_t3)
        zdot -= (h3 / t34) * symplectic_apply(g_t4)
    zdot[0] = model.c
    zdot[4] = 0.0
    return zdot


# ---------------------------------------------------------------------------
# constraint projection


_CONSTRAINT_OBS = (obs_t2(), obs_t3(), obs_t4(), obs_t5())


def project_state(z, model, tol_scale=1e-14, max_iter=12):
    """Gauss-Newton projection onto T2 = T3 = T4 = T5 = 0.

    Minimal-norm correction of the full (omega, pi) block with the
    exact constraint gradients; x and p are untouched, so projection
    never moves the orbit.  (A reduced parametrization by omega^0,
    pi^0 and two overall scales is singular at rest-like states where
    omega and pi are spatial and orthogonal, so all eight spin slots
    participate.)  If the iteration fails to improve, the input state
    is returned unchanged rather than a half-projected one.
    """
    if z.spinless:
        return z
    tol = tol_scale * (1.0 + (model.m * model.c) ** 2)

    def residual(zz):
        return np.array([ob(zz, model) for ob in _CONSTRAINT_OBS])

    best_vec = z.vec
    best_err = np.max(np.abs(residual(z)))
    vec = z.vec.copy()
    for _ in range(max_iter):
        zz = PhaseState(vec=vec)
        r = residual(zz)
        err = np.max(np.abs(r))
        if err < best_err:
            best_vec, best_err = vec.copy(), err
        if err < tol:
            break
        J = np.stack([ob.grad(zz, model)[8:16] for ob in _CONSTRAINT_OBS])
        step, *_ = np.linalg.lstsq(J, r, rcond=None)
        # damp absurd steps so a bad linearization cannot destroy the state
        cap = 0.25 * max(np.linalg.norm(vec[8:16]), 1.0)
        nrm = np.linalg.norm(step)
        if nrm > cap:
            step *= cap / nrm
        vec = vec.copy()
        vec[8:16] -= step
    return PhaseState(vec=best_vec.copy(), spinless=False)


# ---------------------------------------------------------------------------
# integrators


def _rk4_step(f, y, h):
    k1 = f(y)
    k2 = f(y + 0.5 * h * k1)
    k3 = f(y + 0.5 * h * k2)
    k4 = f(y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


@dataclass
class Trajectory:
    t: np.ndarray
    Z: np.ndarray
    model: object
    spinless: bool
    stats: dict = field(default_factory=dict)

    def state(self, k):
        return PhaseState(vec=self.Z[k].copy(), spinless=self.spinless)

    def channels(self):
        """Named scalar time series for output and diagnostics (cached)."""
        if getattr(self, "_channels", None) is not None:
            return self._channels
        n = len(self.t)
        out = {"t": self.t}
        Z = self.Z
        for i, nm in enumerate(("x1", "x2", "x3")):
            out[nm] = Z[:, 1 + i]
        P = np.empty((n, 4))
        H = np.empty(n)
        S3 = np.zeros((n, 3))
        D3 = np.zeros((n, 3))
        res = {k: np.zeros(n) for k in ("T2", "T3", "T4", "T5", "spin2")}
        for k in range(n):
            z = self.state(k)
            fd = field_data(self.model, z.x)
            P[k] = kinetic_momentum(z, self.model, fd)
            H[k] = self.model.c * P[k, 0] + self.model.e * fd.A[0]
            if not self.spinless:
                S3[k] = spin_vector(z)
                D3[k] = dipole_vector(z)
                res["T2"][k] = t2(z)
                res["T3"][k] = t3(z, self.model)
                res["T4"][k] = t4(z, self.model)
                res["T5"][k] = t5(z, self.model)
                res["spin2"][k] = spin_square(z) - 8.0 * self.model.alpha
        for mu in range(4):
            out[f"P{mu}"] = P[:, mu]
        for i, nm in enumerate(("S1", "S2", "S3")):
            out[nm] = S3[:, i]
        for i, nm in enumerate(("D1", "D2", "D3")):
            out[nm] = D3[:, i]
        out["H"] = H
        for k, v in res.items():
            out[k] = v
        self._channels = out
        return out

    def energy_drift(self):
        H = self.channels()["H"]
        return float(np.max(np.abs(H - H[0])) / abs(H[0]))

    def constraint_drift(self):
        ch = self.channels()
        return {k: float(np.max(np.abs(ch[k])))
                for k in ("T2", "T3", "T4", "T5", "spin2")}


def integrate(model, z0, t_final, dt, t0=0.0, record_every=1,
              method="rk4", project=True, project_every=25,
              rtol=1e-10, atol=1e-12):
    """Advance z0 from t0 to t_final, recording every record_every steps.

    method "rk4" is the deterministic fixed-step workhorse; "dop853"
    delegates the stepping to scipy between recording times.  Both
    apply the Newton projection at recording times (rk4 additionally
    every project_every internal steps).
    """
    spinless = z0.spinless
    f = lambda y: dirac_rhs(y, model, spinless)
    n_steps = int(round((t_final - t0) / dt))
    ts = [t0]
    zs = [z0.vec.copy()]
    stats = {"method": method, "n_steps": n_steps, "projections": 0}

    if method == "rk4":
        y = z0.vec.copy()
        z_cur = z0
        for k in range(1, n_steps + 1):
            y = _rk4_step(f, y, dt)
            need_proj = project and (k % project_every == 0 or k % record_every == 0)
            if need_proj or k % record_every == 0 or k == n_steps:
                z_cur = PhaseState(vec=y, spinless=spinless)
                if need_proj:
                    z_cur = project_state(z_cur, model)
                    stats["projections"] += 1
                    y = z_cur.vec.copy()
            if k % record_every == 0 or k == n_steps:
                ts.append(t0 + k * dt)
                zs.append(y.copy())
    elif method == "dop853":
        t_eval = t0 + dt * record_every * np.arange(1, n_steps // record_every + 1)
        if len(t_eval) == 0 or t_eval[-1] < t_final - 1e-12 * abs(t_final):
            t_eval = np.append(t_eval, t_final)
        y = z0.vec.copy()
        t_prev = t0
        rhs = lambda t, y: f(y)
        for t_next in t_eval:
            sol = solve_ivp(rhs, (t_prev, t_next), y, method="DOP853",
                            rtol=rtol, atol=atol, dense_output=False)
            if not sol.success:
                raise RuntimeError(f"dop853 failed at t={t_prev}: {sol.message}")
            y = sol.y[:, -1]
            if project:
                zc = project_state(PhaseState(vec=y.copy(), spinless=spinless), model)
                y = zc.vec
                stats["projections"] += 1
            ts.append(t_next)
            zs.append(y.copy())
            t_prev = t_next
    else:
        raise ValueError(f"unknown method {method!r}")

    return Trajectory(t=np.array(ts), Z=np.array(zs), model=model,
                      spinless=spinless, stats=stats)


# ---------------------------------------------------------------------------
# diagnostics


def unwrapped_angle(y, x):
    return np.unwrap(np.arctan2(y, x))


def linear_rate(t, angle):
    """Least-squares slope; robust readout of a secular precession."""
    A = np.vstack([t, np.ones_like(t)]).T
    slope, _ = np.linalg.lstsq(A, angle, rcond=None)[0]
    return float(slope)


def spin_plane_rate(traj, i=0, j=1):
    """Secular rotation rate of the spin projection in the (i,j) plane."""
    ch = traj.channels()
    names = ("S1", "S2", "S3")
    ang = unwrapped_angle(ch[names[j]], ch[names[i]])
    return linear_rate(traj.t, ang)


def orbit_plane_rate(traj, center=(0.0, 0.0), i=0, j=1):
    ch = traj.channels()
    names = ("x1", "x2", "x3")
    ang = unwrapped_angle(ch[names[j]] - center[1], ch[names[i]] - center[0])
    return linear_rate(traj.t, ang)


def orbit_averages(traj):
    """Time-averaged 1/r^3 and L_z = (x cross P)_3 along the run."""
    ch = traj.channels()
    r = np.sqrt(ch["x1"] ** 2 + ch["x2"] ** 2 + ch["x3"] ** 2)
    Lz = ch["x1"] * ch["P2"] - ch["x2"] * ch["P1"]
    return {"inv_r3": float(np.mean(r ** -3)), "Lz": float(np.mean(Lz)),
            "r_min": float(np.min(r)), "r_max": float(np.max(r))}


def cyclotron_reference(model, p_perp, B):
    """Relativistic orbit radius and period for a spinless charge."""
    P0 = np.sqrt(p_perp**2 + (model.m * model.c) ** 2)
    omega = model.e * B / P0
    return {"radius": model.c * p_perp / (model.e * B),
            "period": 2.0 * np.pi / abs(omega), "P0": P0}


def larmor_reference(model, B):
    """Low-speed spin precession rate, g e B / (2 m c)."""
    return model.g * model.e * B / (2.0 * model.m * model.c)
