"""One-phase Whitham modulation solved by hodograph inversion.

The modulation system for the branch points 0 > beta1 > beta2 > beta3 > -1
is integrated implicitly through x = v_i t + w_i, where the characteristic
speeds are

    v_i = 4 prod_{k != i} (beta_i - beta_k) / (beta_i + alpha) + 2 sum beta_k,
    alpha = -beta1 + (beta1 - beta3) E/K,  m = (beta2 - beta3)/(beta1 - beta3),

and w_i = (v_i - 2 sum beta_k)/2 * dq/dbeta_i + q with the phase

    q = 1/(2 sqrt(2) pi) int int f_-((1+mu)/2 ((1+nu)/2 b1 + (1-nu)/2 b2)
                                  + (1-mu)/2 b3) / (sqrt(1-mu) sqrt(1-nu^2)).

The double integral is evaluated by nested weighted Chebyshev quadrature
(inner 1/sqrt(1-nu^2) weight by orthogonality, outer 1/sqrt(1-mu) by the
square-root substitution) and differentiated under the integral sign.  Two
companion evaluation paths keep spectral accuracy where that integrand loses
smoothness: a transformed gap-integral form for beta3 near the hump bottom
(the inverse branches behave like sqrt(1+y) there), and the post-hump form
in which the increasing branch enters once u0(X3) = beta3 has X3 > 0.

Zone solves at distinct times are independent of one another (the edge
tracks are cached per solver instance); within one time the x-continuation
is sequential from the leading edge, while all evaluation functions are
pure.

Near the zone boundaries the hodograph system degenerates; the solver works
with the edge-regularized residuals

    S1 = [(v1-v2) t + w1 - w2] / ((beta1-beta2) K),
    S2 = v3 t + w3 - x,
    S3 = [(v2-v3) t + w2 - w3] / (beta2-beta3),

which stay finite through both degenerations.  Leading edge, trailing edge,
and the hump-crossing time solve their own reduced systems built from the
kernel Phi; all solves minimize summed squared residuals with the simplex
search, seeded by continuation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .chebyshev import cheb_fit, cheb_nodes
from .elliptic import EllipticPair, elliptic_KE
from .simplex import solve_least_squares

__all__ = ["WhithamTriple", "EdgePoint", "HumpCrossing", "PhaseFunction",
           "WhithamSolver", "speeds", "edge_asymptotics"]

HUMP_SAFE_MARGIN = 0.05  # q switches to the transformed path below -1 + this


# ---------------------------------------------------------------------------
# records

@dataclass(frozen=True)
class WhithamTriple:
    """Ordered branch points at one (x, t) with derived elliptic data."""

    beta1: float
    beta2: float
    beta3: float
    x: float
    t: float
    q: float = float("nan")
    regime: str = "pre_hump"
    residual: float = float("nan")

    @property
    def beta(self):
        return (self.beta1, self.beta2, self.beta3)

    @property
    def m(self) -> float:
        """Squared elliptic modulus s^2."""
        return (self.beta2 - self.beta3) / (self.beta1 - self.beta3)

    @property
    def pair(self) -> EllipticPair:
        return elliptic_KE(self.m)

    @property
    def alpha(self) -> float:
        if self.m >= 1.0:      # soliton edge: K diverges, E/K -> 0
            return -self.beta1
        p = self.pair
        return -self.beta1 + (self.beta1 - self.beta3) * p.E / p.K

    @property
    def u_bar(self) -> float:
        return self.beta1 + self.beta2 + self.beta3 + 2.0 * self.alpha


@dataclass(frozen=True)
class EdgePoint:
    kind: str            # "leading" (beta2 = beta3) or "trailing" (beta1 = beta2)
    t: float
    x_edge: float
    beta_outer: float    # beta1 at leading, beta3 at trailing
    beta_double: float   # the merged pair value
    residual: float


@dataclass(frozen=True)
class HumpCrossing:
    T: float
    x_T: float
    beta1_at_T: float
    residual: float


# ---------------------------------------------------------------------------
# speeds

def speeds(b1: float, b2: float, b3: float):
    """Characteristic speeds (v1, v2, v3); stable at both degenerations.

    The denominators beta_i + alpha are expanded through K - E so no
    cancellation occurs for m near 0 or 1.
    """
    if not b1 > b2 > b3:
        raise ValueError("need beta1 > beta2 > beta3")
    span = b1 - b3
    m = (b2 - b3) / span
    p = elliptic_KE(m)
    s2 = 2.0 * (b1 + b2 + b3)
    v1 = 4.0 * (b1 - b2) * p.K / p.E + s2
    den2 = (b2 - b3) - span * p.k_minus_e / p.K   # beta2 + alpha
    if den2 == 0.0:
        raise ZeroDivisionError("degenerate denominator beta2 + alpha")
    v2 = -4.0 * (b1 - b2) * (b2 - b3) / den2 + s2
    if p.k_minus_e == 0.0:
        raise ZeroDivisionError("degenerate denominator beta3 + alpha")
    v3 = -4.0 * (b2 - b3) * p.K / p.k_minus_e + s2
    return v1, v2, v3


# ---------------------------------------------------------------------------
# quadrature weights

@lru_cache(maxsize=8)
def _quad_weights(n: int):
    """Nodes plus linear weights for int_{-1}^1 f dy and for pi*a0."""
    nodes = cheb_nodes(n)
    w_int = np.empty(n + 1)
    for i in range(n + 1):
        e = np.zeros(n + 1)
        e[i] = 1.0
        w_int[i] = cheb_fit(e).integral()
    w_cw = np.full(n + 1, math.pi / n)
    w_cw[0] *= 0.5
    w_cw[-1] *= 0.5
    return nodes, w_int, w_cw


# ---------------------------------------------------------------------------
# phase function

class PhaseFunction:
    """q(beta1, beta2, beta3), its gradient, and the Hessian row sums."""

    def __init__(self, profile, n: int = 64):
        self.profile = profile
        self.n = n
        self.nodes, self.w_int, self.w_cw = _quad_weights(n)
        # outer substitution mu = 1 - (1+y)^2/2 absorbs the 1/sqrt(1-mu) weight
        self.mu = 1.0 - (1.0 + self.nodes) ** 2 / 2.0
        nu = self.nodes
        self.c1 = np.outer(0.5 * (1.0 + self.mu), 0.5 * (1.0 + nu))
        self.c2 = np.outer(0.5 * (1.0 + self.mu), 0.5 * (1.0 - nu))
        self.c3 = np.outer(0.5 * (1.0 - self.mu), np.ones(n + 1))
        # theta grid for the w-substituted inner integrals
        self.theta_full = 0.25 * math.pi * (1.0 + self.nodes)
        self.sin_full = np.sin(self.theta_full)
        self.cos_full = np.cos(self.theta_full)

    # -- symmetric double-integral path (plain pre-hump) ---------------------

    def _x_matrix(self, b1, b2, b3):
        x = b1 * self.c1 + b2 * self.c2 + b3 * self.c3
        return np.maximum(x, -1.0 + 1e-14)

    def _sym_integral(self, vals):
        return float(self.w_int @ (vals @ self.w_cw)) / (2.0 * math.pi)

    def q_sym(self, b1, b2, b3, fn=None):
        """Symmetric double integral of fn (default f_-) at the triple."""
        fn = fn or self.profile.f_minus
        return self._sym_integral(fn(self._x_matrix(b1, b2, b3)))

    def dq_sym(self, b1, b2, b3, fn=None):
        fn = fn or self.profile.fp_minus
        fp = fn(self._x_matrix(b1, b2, b3))
        return tuple(self._sym_integral(fp * c) for c in (self.c1, self.c2, self.c3))

    def d2q_sym(self, b1, b2, b3):
        fpp = self.profile.fpp_minus(self._x_matrix(b1, b2, b3))
        cs = (self.c1, self.c2, self.c3)
        return [[self._sym_integral(fpp * cs[i] * cs[j]) for j in range(3)]
                for i in range(3)]

    # -- gap-integral building blocks ----------------------------------------

    def _gap_nodes(self, b1, b2):
        lam = 0.5 * (b1 + b2) + 0.5 * (b1 - b2) * self.nodes
        return lam, np.sqrt(1.0 + lam)

    def _gap_outer(self, rows, b3, lam):
        """(1/2pi) * integral over the gap of rows/sqrt(lam - b3) with the
        two-endpoint square-root weight absorbed in the nu variable."""
        return float((rows / np.sqrt(lam - b3)) @ self.w_cw) / (2.0 * math.pi)

    def _lam_rows(self, rows_dlam, rows_db3):
        g1 = float(((0.5 * (1.0 + self.nodes)) * rows_dlam) @ self.w_cw)
        g2 = float(((0.5 * (1.0 - self.nodes)) * rows_dlam) @ self.w_cw)
        g3 = float(rows_db3 @ self.w_cw)
        c = 1.0 / (2.0 * math.pi)
        return g1 * c, g2 * c, g3 * c

    def _int_var_upper(self, Wlam, f_w):
        """int_{-1}^{lam} f(y)/sqrt(lam - y) dy at every gap node."""
        w = Wlam[:, None] * self.sin_full[None, :]
        return 0.25 * math.pi * ((f_w(w) * 2.0 * w) @ self.w_int)

    def _int_var_upper_deriv(self, Wlam, fp_2w):
        """int_{-1}^{lam} f'(y)/sqrt(lam - y) dy at every gap node."""
        w = Wlam[:, None] * self.sin_full[None, :]
        return 0.25 * math.pi * (fp_2w(w) @ self.w_int)

    def _int_fixed(self, Wlam, W3, f_w, power):
        """int_{-1}^{beta3} f(y) (lam - y)^(-power) dy, power 0.5 or 1.5."""
        w = W3 * self.sin_full
        base = f_w(w) * 2.0 * w * (W3 * self.cos_full)
        denom = Wlam[:, None] ** 2 - (w**2)[None, :]
        vals = base[None, :] / (np.sqrt(denom) if power == 0.5 else denom**1.5)
        return 0.25 * math.pi * (vals @ self.w_int)

    def _int_from_b3(self, Wlam, W3, f_w):
        """int_{beta3}^{lam} f(y)/sqrt(lam - y) dy at every gap node."""
        th3 = np.arcsin(np.minimum(W3 / Wlam, 1.0))
        span = 0.5 * math.pi - th3
        theta = th3[:, None] + span[:, None] * 0.5 * (1.0 + self.nodes)[None, :]
        w = Wlam[:, None] * np.sin(theta)
        return 0.5 * span * ((f_w(w) * 2.0 * w) @ self.w_int), theta, span

    # -- pre-hump, beta3 near -1 ----------------------------------------------

    def _diff_w(self, w):
        return self.profile.f_plus_w(w) - self.profile.f_minus_w(w)

    def _ddiff_2w(self, w):
        return self.profile.fp_plus_2w(w) - self.profile.fp_minus_2w(w)

    def _q_pre_safe(self, b1, b2, b3):
        lam, Wlam = self._gap_nodes(b1, b2)
        W3 = math.sqrt(max(1.0 + b3, 0.0))
        P, _, _ = self._int_from_b3(Wlam, W3, self._diff_w)
        correction = self._gap_outer(P, b3, lam)
        sym = 0.0
        if not getattr(self.profile, "even_hump", False):
            prof = self.profile
            sym = self.q_sym(b1, b2, b3,
                             fn=lambda y: prof.f_plus(y) + prof.f_minus(y))
        return 0.5 * sym - 0.5 * correction

    def _dq_pre_safe(self, b1, b2, b3):
        prof = self.profile
        lam, Wlam = self._gap_nodes(b1, b2)
        W3 = math.sqrt(max(1.0 + b3, 0.0))
        sq = np.sqrt(lam - b3)
        P, theta, span = self._int_from_b3(Wlam, W3, self._diff_w)
        w = Wlam[:, None] * np.sin(theta)
        dP_dlam = (float(self._diff_w(np.asarray(W3))) / sq
                   + 0.5 * span * (self._ddiff_2w(w) @ self.w_int))
        rows_dlam = dP_dlam / sq - 0.5 * P / sq**3
        rows_db3 = (-float(self._diff_w(np.asarray(W3))) / sq / sq
                    + 0.5 * P / sq**3)
        g1, g2, g3 = self._lam_rows(rows_dlam, rows_db3)
        if getattr(prof, "even_hump", False):
            s1 = s2 = s3 = 0.0
        else:
            s1, s2, s3 = self.dq_sym(
                b1, b2, b3, fn=lambda y: prof.fp_plus(y) + prof.fp_minus(y))
        return 0.5 * s1 - 0.5 * g1, 0.5 * s2 - 0.5 * g2, 0.5 * s3 - 0.5 * g3

    # -- post-hump ---------------------------------------------------------------

    def _q_post(self, b1, b2, b3):
        prof = self.profile
        lam, Wlam = self._gap_nodes(b1, b2)
        W3 = math.sqrt(1.0 + b3)
        G = (self._int_var_upper(Wlam, prof.f_minus_w)
             - self._int_fixed(Wlam, W3, prof.f_plus_w, power=0.5))
        return self._gap_outer(G, b3, lam)

    def _dq_post(self, b1, b2, b3):
        prof = self.profile
        lam, Wlam = self._gap_nodes(b1, b2)
        W3 = math.sqrt(1.0 + b3)
        sq = np.sqrt(lam - b3)
        G = (self._int_var_upper(Wlam, prof.f_minus_w)
             - self._int_fixed(Wlam, W3, prof.f_plus_w, power=0.5))
        Gp = (self._int_var_upper_deriv(Wlam, prof.fp_minus_2w)
              + 0.5 * self._int_fixed(Wlam, W3, prof.f_plus_w, power=1.5))
        f3 = float(prof.f_plus_w(np.asarray(W3)))
        rows_dlam = Gp / sq - 0.5 * G / sq**3
        rows_db3 = -f3 / sq / sq + 0.5 * G / sq**3
        return self._lam_rows(rows_dlam, rows_db3)

    # -- public dispatch ------------------------------------------------------------

    def q(self, b1, b2, b3, regime="pre_hump"):
        if regime == "post_hump":
            return self._q_post(b1, b2, b3)
        if b3 < -1.0 + HUMP_SAFE_MARGIN:
            return self._q_pre_safe(b1, b2, b3)
        return self.q_sym(b1, b2, b3)

    def dq(self, b1, b2, b3, regime="pre_hump"):
        if regime == "post_hump":
            return self._dq_post(b1, b2, b3)
        if b3 < -1.0 + HUMP_SAFE_MARGIN:
            return self._dq_pre_safe(b1, b2, b3)
        return self.dq_sym(b1, b2, b3)

    def dQ_sum(self, b1, b2, b3, regime="pre_hump"):
        """Gradient of Q = sum_j dq/dbeta_j (enters the x-derivatives)."""
        if regime == "pre_hump" and b3 >= -1.0 + HUMP_SAFE_MARGIN:
            h = self.d2q_sym(b1, b2, b3)
            return tuple(sum(h[i][j] for j in range(3)) for i in range(3))
        out = []
        step = 1e-6
        for i in range(3):
            up = [b1, b2, b3]
            dn = [b1, b2, b3]
            up[i] += step
            dn[i] -= step
            if dn[2] <= -1.0:   # keep beta3 in domain: one-sided stencil
                dn[i] = [b1, b2, b3][i]
                gp = self.dq(*up, regime=regime)
                gm = self.dq(*dn, regime=regime)
                out.append((sum(gp) - sum(gm)) / step)
            else:
                gp = self.dq(*up, regime=regime)
                gm = self.dq(*dn, regime=regime)
                out.append((sum(gp) - sum(gm)) / (2.0 * step))
        return tuple(out)


# ---------------------------------------------------------------------------
# hodograph pieces

def w_from_phase(b1, b2, b3, q_val, grad):
    """Hodograph coefficients w_i and speeds v_i from the phase data."""
    v = speeds(b1, b2, b3)
    twice_sum = 2.0 * (b1 + b2 + b3)
    w = tuple(0.5 * (v[i] - twice_sum) * grad[i] + q_val for i in range(3))
    return w, v


class WhithamSolver:
    """Edge systems, hump time, and zone solves for one profile."""

    def __init__(self, profile, n_quad: int = 64, precision: bool = True):
        self.profile = profile
        self.phase = PhaseFunction(profile, n=n_quad)
        self.precision = precision
        self.stop = 1e-26 if precision else 1e-12
        self.nodes, self.w_int, _ = _quad_weights(n_quad)
        self._edge_tracks = {"leading": {}, "trailing": {}}
        self._hump = None

    # -- residuals ----------------------------------------------------------------

    def hodograph_residual(self, triple, x, t, regime="pre_hump"):
        b1, b2, b3 = triple
        q_val = self.phase.q(b1, b2, b3, regime)
        grad = self.phase.dq(b1, b2, b3, regime)
        (w1, w2, w3), (v1, v2, v3) = w_from_phase(b1, b2, b3, q_val, grad)
        K = elliptic_KE((b2 - b3) / (b1 - b3)).K
        s1 = ((v1 - v2) * t + w1 - w2) / ((b1 - b2) * K)
        s2 = v3 * t + w3 - x
        s3 = ((v2 - v3) * t + w2 - w3) / (b2 - b3)
        return np.array([s1, s2, s3])

    # -- edge systems ----------------------------------------------------------------

    def _leading_residual(self, t):
        prof = self.profile

        def res(p):
            x, b1, b3 = p
            if not (-1.0 < b3 < b1 < 0.0):
                return np.array([1e3, 1e3, 1e3])
            return np.array([
                6.0 * t * b1 + float(prof.f_minus(b1)) - x,
                prof.phi_kernel(b3, b1) + 6.0 * t,
                prof.phi_xi(b3, b1),
            ])

        return res

    def _trailing_s2(self, b1, b3, t):
        """Integral of sqrt(lam - b3) (Phi + 6t) over (b3, b1), mapped so the
        square-root factor is resolved exactly."""
        prof = self.profile
        lam = b3 + (b1 - b3) * (1.0 + self.nodes) ** 2 / 4.0
        lam[0] = b1
        factor = (b1 - b3) * (1.0 + self.nodes) / 2.0
        vals = np.empty_like(lam)
        vals[:-1] = (np.sqrt(lam[:-1] - b3)
                     * (prof.phi_kernel(lam[:-1], b3, "pre_hump") + 6.0 * t))
        vals[-1] = 0.0   # the map factor vanishes at lam = b3 anyway
        return cheb_fit(vals * factor).integral()

    def _trailing_residual(self, t, regime):
        prof = self.profile
        if regime == "post_hump":
            # beta2 -> beta1 limit of the scaled hodograph system expressed
            # through the phase gradient (the gap-integral form evaluates the
            # degenerate gap exactly):
            #   (d1 q + d2 q) + 4t = 0,   d3 q + 2t = 0,
            #   x = 6 t beta3 + f_+(beta3).
            def res(p):
                x, b1, b3 = p
                if not (-1.0 < b3 < b1 < 0.0):
                    return np.array([1e3, 1e3, 1e3])
                g = self.phase._dq_post(b1, b1, b3)
                return np.array([
                    g[0] + g[1] + 4.0 * t,
                    g[2] + 2.0 * t,
                    -x + 6.0 * t * b3 + float(prof.f_plus(b3)),
                ])

            return res

        def res(p):
            x, b1, b3 = p
            if not (-1.0 < b3 < b1 < 0.0):
                return np.array([1e3, 1e3, 1e3])
            phi_edge = prof.phi_kernel(b1, b3, "pre_hump")
            s2 = self._trailing_s2(b1, b3, t)
            branch = float(prof.f_minus(b3))
            return np.array([phi_edge + 6.0 * t, s2, -x + 6.0 * t * b3 + branch])

        return res

    def hump_time(self) -> HumpCrossing:
        """Time and place at which beta3 first reaches the hump bottom."""
        if self._hump is not None:
            return self._hump
        prof = self.profile
        nodes = self.nodes

        def res(p):
            T, b1 = p
            if not (-1.0 < b1 < 0.0) or T <= 0.0:
                return np.array([1e3, 1e3])
            lam = -1.0 + (b1 + 1.0) * (1.0 + nodes) ** 2 / 4.0
            lam[0] = b1
            factor = (b1 + 1.0) * (1.0 + nodes) / 2.0
            vals = np.empty_like(lam)
            vals[:-1] = (np.sqrt(lam[:-1] + 1.0)
                         * (prof.phi_kernel(lam[:-1], -1.0, "pre_hump") + 6.0 * T))
            vals[-1] = 0.0
            s2 = cheb_fit(vals * factor).integral()
            return np.array([prof.phi_kernel(b1, -1.0) + 6.0 * T, s2])

        cp = prof.critical_point()
        sol = solve_least_squares(res, [1.4 * cp.t_c, 0.4 * cp.u_c],
                                  step=[0.02, 0.05], stop_value=self.stop,
                                  max_iter=4000)
        if sol.value > max(self.stop, 1e-18):
            raise RuntimeError(f"hump-time solve stalled at {sol.value:.2e}")
        T, b1 = map(float, sol.point)
        self._hump = HumpCrossing(T=T, x_T=-6.0 * T, beta1_at_T=b1,
                                  residual=math.sqrt(sol.value))
        return self._hump

    # -- edge tracking ------------------------------------------------------------------

    def _seed_first(self, t, kind):
        # Taylor expansion of the edge systems around the catastrophe point:
        # leading   beta1 = u_c + delta,  beta2 = beta3 = u_c - delta/4,
        #           delta = 6 sqrt(2 tau / |f'''|);
        # trailing  beta1 = beta2 = u_c + P, beta3 = u_c - 4P/3,
        #           P = sqrt(22.5 tau / |f'''|).
        cp = self.profile.critical_point()
        tau = max(t - cp.t_c, 1e-12)
        fppp = abs(float(self.profile.fppp_minus(cp.u_c)))
        common = cp.x_c + 6.0 * cp.u_c * tau
        if kind == "leading":
            delta = 6.0 * math.sqrt(2.0 * tau / fppp)
            return [common - 36.0 * math.sqrt(2.0 / fppp) * tau**1.5,
                    cp.u_c + delta, cp.u_c - 0.25 * delta]
        peak = math.sqrt(22.5 * tau / fppp)
        return [common + 4.0 * math.sqrt(10.0) / (3.0 * math.sqrt(fppp)) * tau**1.5,
                cp.u_c + peak, cp.u_c - 4.0 * peak / 3.0]

    def _edge_times(self, t):
        cp = self.profile.critical_point()
        tau = t - cp.t_c
        taus = []
        g = 1e-4
        while g < min(tau, 0.02):
            taus.append(g)
            g *= 2.0
        lin = 0.02
        while lin < tau:
            taus.append(lin)
            lin += 0.01
        taus.append(tau)
        return [cp.t_c + v for v in taus]

    def _solve_edge(self, t, kind):
        track = self._edge_tracks[kind]
        if t in track:
            return track[t]
        cp = self.profile.critical_point()
        if t <= cp.t_c:
            raise ValueError("edges exist only for t > t_c")
        if t - cp.t_c <= 0.02:
            # near breakup the Taylor expansion of the edge system seeds
            # directly (the solution moves like sqrt(t - t_c), so stepping
            # from a coarser time is unreliable there)
            seed = self._seed_first(t, kind)
        else:
            done = [s for s in sorted(track) if s < t]
            if not (done and t - done[-1] < 0.015):
                for s in self._edge_times(t)[:-1]:
                    if s not in track and s < t:
                        self._solve_edge(s, kind)
                done = [s for s in sorted(track) if s < t]
            seed = list(track[done[-1]][:3]) if done else self._seed_first(t, kind)
        if kind == "leading":
            res = self._leading_residual(t)
        else:
            regime = "post_hump" if t > self.hump_time().T else "pre_hump"
            res = self._trailing_residual(t, regime)
        scale = max(1e-7, 1e-3 * math.sqrt(t - cp.t_c))
        sol = solve_least_squares(res, seed, step=scale,
                                  stop_value=self.stop, max_iter=4000)
        if sol.value > max(self.stop, 1e-16):
            raise RuntimeError(f"{kind}-edge solve stalled at t={t}: "
                               f"{sol.value:.2e}")
        track[t] = (*map(float, sol.point), math.sqrt(sol.value))
        return track[t]

    def leading_edge(self, t) -> EdgePoint:
        x, b1, b3, r = self._solve_edge(t, "leading")
        return EdgePoint("leading", t, x, beta_outer=b1, beta_double=b3,
                         residual=r)

    def trailing_edge(self, t) -> EdgePoint:
        x, b1, b3, r = self._solve_edge(t, "trailing")
        return EdgePoint("trailing", t, x, beta_outer=b3, beta_double=b1,
                         residual=r)

    # -- zone solve ---------------------------------------------------------------------

    def _zone_grid(self, xm, xp, nx):
        width = xp - xm
        n_edge = nx // 3
        wc = 0.12 * width
        s = (np.arange(1, n_edge + 1) / n_edge) ** 2
        left = xm + wc * s
        right = xp - wc * s[::-1]
        middle = np.linspace(xm + wc, xp - wc, nx - 2 * n_edge + 2)[1:-1]
        return np.concatenate([left, middle, right])

    def _solve_point(self, x, t, seed, regime):
        def res(p):
            b1, b2, b3 = p
            if not (-1.0 <= b3 < b2 < b1 < 0.0):
                return np.array([1e3, 1e3, 1e3])
            return self.hodograph_residual((b1, b2, b3), x, t, regime)

        step = max(1e-10, min(1e-5, 0.01 * (seed[0] - seed[1]),
                              0.01 * (seed[1] - seed[2])))
        return solve_least_squares(res, seed, step=step, stop_value=self.stop,
                                   max_iter=6000)

    def _leading_split_seed(self, lead, t, d0):
        """Seed just inside the leading edge: beta2/3 split like sqrt(d0)."""
        h = 1e-4
        phi_vv = (self.profile.phi_xi(lead.beta_double + h, lead.beta_outer)
                  - self.profile.phi_xi(lead.beta_double - h, lead.beta_outer)
                  ) / (2.0 * h)
        amp2 = 1.0 / abs((lead.beta_double - lead.beta_outer) * phi_vv)
        split = math.sqrt(amp2 * d0)
        slope1 = 1.0 / (6.0 * t + float(self.profile.fp_minus(lead.beta_outer)))
        return [lead.beta_outer + slope1 * d0,
                lead.beta_double + split,
                lead.beta_double - split]

    def solve_zone(self, t, nx=300):
        """Branch points on a graded grid across [x^-(t), x^+(t)].

        One third of the points cluster at each edge (uniform in the square
        root of the distance, matching how the branch points open).  Returns
        WhithamTriple rows including both edges and, for t > T, the crossing
        row where beta3 touches -1.
        """
        lead = self.leading_edge(t)
        trail = self.trailing_edge(t)
        post = t > self.hump_time().T
        grid = self._zone_grid(lead.x_edge, trail.x_edge, nx)

        rows = [WhithamTriple(lead.beta_outer, lead.beta_double,
                              lead.beta_double, lead.x_edge, t,
                              q=self.phase.q(lead.beta_outer, lead.beta_double,
                                             lead.beta_double, "pre_hump"),
                              regime="pre_hump", residual=lead.residual)]
        seed = self._leading_split_seed(lead, t, grid[0] - lead.x_edge)
        regime = "pre_hump"
        x_T_row = None
        i = 0
        last_pre = None
        while i < len(grid):
            x = float(grid[i])
            sol = self._solve_point(x, t, seed, regime)
            b1, b2, b3 = map(float, sol.point)
            failed = sol.value > max(self.stop, 1e-16)
            if post and regime == "pre_hump" and (failed or b3 <= -1.0 + 1e-7):
                x_T_row = self._solve_crossing(t, seed)
                regime = "post_hump"
                ref = last_pre or (x_T_row.x - 1e-3, -1.0 + 1e-6)
                curv = (ref[1] + 1.0) / (x_T_row.x - ref[0]) ** 2
                seed = [x_T_row.beta1, x_T_row.beta2,
                        -1.0 + max(curv * (x - x_T_row.x) ** 2, 1e-10)]
                continue
            if failed:
                raise RuntimeError(f"zone solve stalled at x={x}: "
                                   f"{sol.value:.2e}")
            q_val = self.phase.q(b1, b2, b3, regime)
            rows.append(WhithamTriple(b1, b2, b3, x, t, q=q_val, regime=regime,
                                      residual=math.sqrt(sol.value)))
            if regime == "pre_hump":
                last_pre = (x, b3)
            seed = [b1, b2, b3]
            i += 1

        trail_regime = "post_hump" if post else "pre_hump"
        rows.append(WhithamTriple(trail.beta_double, trail.beta_double,
                                  trail.beta_outer, trail.x_edge, t,
                                  q=self.phase.q(trail.beta_double,
                                                 trail.beta_double * (1 - 1e-12),
                                                 trail.beta_outer, trail_regime),
                                  regime=trail_regime, residual=trail.residual))
        if x_T_row is not None:
            rows = sorted(rows + [x_T_row], key=lambda r: r.x)
        return rows

    def _solve_crossing(self, t, seed):
        """Point where beta3 = -1 inside the zone (t > T)."""
        hump = self.hump_time()

        def res(p):
            x, b1, b2 = p
            if not (-1.0 < b2 < b1 < 0.0):
                return np.array([1e3, 1e3, 1e3])
            return self.hodograph_residual((b1, b2, -1.0), x, t, "pre_hump")

        v3 = speeds(seed[0], seed[1], -1.0)[2]
        start = [hump.x_T + v3 * (t - hump.T), seed[0], seed[1]]
        sol = solve_least_squares(res, start, step=[1e-3, 1e-4, 1e-4],
                                  stop_value=self.stop, max_iter=6000)
        if sol.value > max(self.stop, 1e-14):
            raise RuntimeError(f"crossing solve stalled: {sol.value:.2e}")
        x, b1, b2 = map(float, sol.point)
        return WhithamTriple(b1, b2, -1.0, x, t,
                             q=self.phase.q(b1, b2, -1.0, "pre_hump"),
                             regime="crossing", residual=math.sqrt(sol.value))

    # -- x-derivatives ---------------------------------------------------------------------

    def beta_x_derivatives(self, b1, b2, b3, regime="pre_hump"):
        """(d beta_i/dx) along the hodograph solution at fixed t.

        The normalization (the 1/2) is fixed by consistency with both the
        full hodograph solution and the edge law d beta1/dx ->
        1/(6t + f_-'(beta1)).
        """
        tr = WhithamTriple(b1, b2, b3, 0.0, 0.0)
        alpha = tr.alpha
        dQ = self.phase.dQ_sum(b1, b2, b3, regime)
        prods = [(b1 - b2) * (b1 - b3), (b2 - b1) * (b2 - b3),
                 (b3 - b1) * (b3 - b2)]
        return tuple((alpha + b) / (2.0 * prods[i] * dQ[i])
                     for i, b in enumerate((b1, b2, b3)))


# ---------------------------------------------------------------------------
# edge asymptotics near breakup

def edge_asymptotics(profile, t):
    """Semi-cubic approximations (x^-_app, x^+_app) of the edge tracks.

    Valid for t >= t_c; the coefficients use |f_-'''(u_c)| computed by finite
    differences.
    """
    cp = profile.critical_point()
    if t < cp.t_c:
        raise ValueError("asymptotics apply for t >= t_c")
    tau = t - cp.t_c
    fppp = abs(float(profile.fppp_minus(cp.u_c)))
    common = cp.x_c + 6.0 * cp.u_c * tau
    xm = common - 36.0 * math.sqrt(2.0) / math.sqrt(fppp) * tau**1.5
    xp = common + 4.0 * math.sqrt(10.0) / (3.0 * math.sqrt(fppp)) * tau**1.5
    return xm, xp
