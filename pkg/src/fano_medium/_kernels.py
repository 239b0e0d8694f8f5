"""Compiled inner loops with a pure-NumPy fallback.

The principal-value transforms, the exact segment sums for piecewise
polynomials, the discrete-bath susceptibility sum and the Filon-type
oscillatory integrals dominate runtime.  Each has two implementations:

  * a numba ``@njit(parallel=True)`` kernel (default), parallel across
    output points with a fixed sequential summation order inside each
    point, so results are bit-stable regardless of thread count;
  * a vectorized NumPy twin, selected with ``FANO_MEDIUM_NO_NUMBA=1`` or
    automatically when numba is unavailable.

``FANO_MEDIUM_THREADS`` caps the numba thread pool.  ``benchmarks/``
compares the two paths.
"""

from __future__ import annotations

import math
import os

import numpy as np

__all__ = [
    "USING_NUMBA",
    "pv_panels",
    "pv_poly_segments",
    "discrete_chi",
    "filon_transform",
]

_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)

_disable = os.environ.get("FANO_MEDIUM_NO_NUMBA", "").strip() not in ("", "0")
USING_NUMBA = False
if not _disable:
    try:
        import numba
        from numba import njit, prange

        _threads = os.environ.get("FANO_MEDIUM_THREADS", "").strip()
        if _threads:
            numba.set_num_threads(max(1, min(int(_threads), numba.config.NUMBA_NUM_THREADS)))
        USING_NUMBA = True
    except ImportError:  # pragma: no cover - exercised via env flag instead
        USING_NUMBA = False

# spectrum family codes (mirror of medium.py; kernels cannot import it)
_LORENTZIAN = 0
_FLAT_BAND = 1


# ---------------------------------------------------------------------------
# principal-value transform of an analytic family, panel layout in Python
# ---------------------------------------------------------------------------

def pv_layout(targets, landmarks, scale, w_tail, n_shell=20):
    """Per-target panel edges for the singular quadrature.

    For each target a: a symmetric window [a-delta, a+delta] handled by
    singularity subtraction, geometric shells growing away from it on both
    sides, and outer panels split at the family landmarks, ending at the
    per-target tail start W(a).  Returns (edges, n_edges, win_lo_index)
    with rows padded by +inf.
    """
    targets = np.asarray(targets, dtype=float)
    nt = targets.size
    rows = []
    win_idx = np.empty(nt, dtype=np.int64)
    for i, a in enumerate(targets):
        W = w_tail(a)
        d = min(a / 2.0, (W - a) / 2.0, 8.0 * scale)
        delta = max(d * 2.0 ** (-n_shell), 1e-12 * max(a, 1.0))
        shells = d * 2.0 ** (-np.arange(n_shell, dtype=float))  # d, d/2, ..., 2*delta
        left = a - shells
        right = a + shells[::-1]
        outer_left = a - d * 4.0 ** np.arange(1, 12, dtype=float)
        outer_left = outer_left[outer_left > 0.0]
        outer_right = a + d * 4.0 ** np.arange(1, 12, dtype=float)
        outer_right = outer_right[outer_right < W]
        lms = landmarks[(landmarks > 0) & (landmarks < W)]
        lms = lms[np.abs(lms - a) > 2 * delta]  # keep the subtraction panel clean
        edges = np.concatenate([
            [0.0, W, a - delta, a + delta], left, right,
            outer_left, outer_right, lms,
        ])
        edges = np.unique(edges[(edges >= 0.0) & (edges <= W)])
        rows.append(edges)
        win_idx[i] = int(np.searchsorted(edges, a - delta))
    me = max(r.size for r in rows)
    out = np.full((nt, me), np.inf)
    n_edges = np.empty(nt, dtype=np.int64)
    for i, r in enumerate(rows):
        out[i, : r.size] = r
        n_edges[i] = r.size
    return out, n_edges, win_idx


def _s_eval_np(family, params, w):
    w = np.abs(w)
    if family == _LORENTZIAN:
        c, g, wt = params[0], params[1], params[2]
        return wt * (g / np.pi) * (1.0 / ((w - c) ** 2 + g * g) + 1.0 / ((w + c) ** 2 + g * g))
    lo, hi, h = params[0], params[1], params[2]
    return np.where((w >= lo) & (w <= hi), h, 0.0)


def _lor_tail_np(c, g, W, a):
    """Exact int_W^inf (g/pi)/((x-c)^2+g^2)/(x-a) dx for W > max(a, c)."""
    X = W - c
    b = a - c
    return (g / np.pi) / (b * b + g * g) * (
        0.5 * np.log((X * X + g * g) / (X - b) ** 2)
        + (b / g) * (np.arctan(X / g) - np.pi / 2.0)
    )


def _pv_panels_numpy(family, params, p, parity, targets, edges, n_edges, win_idx):
    nt = targets.size
    out = np.empty(nt)
    for i in range(nt):
        a = targets[i]
        e = edges[i, : n_edges[i]]
        lo = e[:-1]
        hi = e[1:]
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        nodes = mid[:, None] + half[:, None] * _GL_X[None, :]
        s = _s_eval_np(family, params, nodes)
        gval = s * nodes**p if p else s
        wi = win_idx[i]
        ker = 1.0 / (nodes - a) - parity / (nodes + a)
        contrib = gval * ker
        # subtraction panel: [g(x)-g(a)]/(x-a); symmetric => zero log term
        ga = float(_s_eval_np(family, params, np.array([a]))[0]) * a**p
        contrib[wi] = (gval[wi] - ga) / (nodes[wi] - a) - parity * gval[wi] / (nodes[wi] + a)
        total = float(np.sum(np.sum(contrib * _GL_W[None, :], axis=1) * half))
        if family == _LORENTZIAN and p == 0:
            c, g, wt = params[0], params[1], params[2]
            W = e[-1]
            for cc in (c, -c):
                total += wt * (_lor_tail_np(cc, g, W, a) - parity * _lor_tail_np(cc, g, W, -a))
        out[i] = total
    return out


# ---------------------------------------------------------------------------
# exact PV of piecewise polynomials (degree <= 5 after the omega^p weight)
# ---------------------------------------------------------------------------

def _segment_numerators(xs, coeffs, p):
    """Expand q_j(t) * (t + x_j)^p into degree-(3+p) coefficients per segment.

    ``coeffs`` is scipy PPoly layout (4, nseg): c0 t^3 + c1 t^2 + c2 t + c3.
    Returns (6, nseg) in descending powers t^5..t^0.
    """
    nseg = coeffs.shape[1]
    N = np.zeros((6, nseg))
    N[2:6, :] = coeffs
    if p == 0:
        return N
    if p != 2:
        raise ValueError("only p in {0, 2} supported")
    out = np.zeros((6, nseg))
    xj = xs[:-1]
    # multiply descending-power poly (t^5..t^0, top 2 zero) by (t+xj)^2
    base = N[2:6, :]  # t^3..t^0
    out[0:4, :] += base
    out[1:5, :] += 2.0 * xj[None, :] * base
    out[2:6, :] += (xj * xj)[None, :] * base
    return out


_SERIES_J = 26  # 1/tau expansion order; |t/tau| <= 1/4 gives ~4^-26 truncation


def _segment_moments(xs, N):
    """mu[j, seg] = int_0^h t^j N(t) dt for j = 0.._SERIES_J (far-field series)."""
    h = np.diff(xs)
    nseg = h.size
    mu = np.empty((_SERIES_J + 1, nseg))
    hp = np.empty((6 + _SERIES_J + 1, nseg))  # h^(k+1)/(k+1) ladder
    acc = h.copy()
    for k in range(hp.shape[0]):
        hp[k] = acc / (k + 1)
        acc = acc * h
    # N descending powers t^5..t^0 -> int t^j N = sum_i N_i h^{6-i+j}/(6-i+j)
    for j in range(_SERIES_J + 1):
        s = np.zeros(nseg)
        for i in range(6):
            s += N[i] * hp[5 - i + j]
        mu[j] = s
    return mu


def _pv_poly_numpy(xs, N, parity, targets, block=256):
    nt = targets.size
    nseg = xs.size - 1
    out = np.zeros(nt)
    a = targets
    h_all = np.diff(xs)
    mu = _segment_moments(xs, N)
    for s0 in range(0, nseg, block):
        s1 = min(s0 + block, nseg)
        xj = xs[s0:s1][None, :]
        h = h_all[s0:s1][None, :]
        tau = a[:, None] - xj          # singular kernel offset
        taum = -a[:, None] - xj        # mirror kernel offset (never in [0, h])
        Nc = N[:, s0:s1]
        muc = mu[:, s0:s1]
        for t_off, sgn in ((tau, 1.0), (taum, -parity)):
            if sgn == 0.0:
                continue
            far = np.abs(t_off) > 4.0 * h
            # near field: exact division + PV log (cancellation-safe, |tau| ~ h)
            q0 = np.broadcast_to(Nc[0], t_off.shape).copy()
            q1 = Nc[1] + t_off * q0
            q2 = Nc[2] + t_off * q1
            q3 = Nc[3] + t_off * q2
            q4 = Nc[4] + t_off * q3
            rem = Nc[5] + t_off * q4
            quad_int = (q0 * h**5 / 5.0 + q1 * h**4 / 4.0 + q2 * h**3 / 3.0
                        + q3 * h**2 / 2.0 + q4 * h)
            num = np.abs(h - t_off)
            den = np.abs(t_off)
            tiny = 1e-14 * h
            logterm = np.where(num > tiny, np.log(np.maximum(num, 1e-300)), 0.0) \
                - np.where(den > tiny, np.log(np.maximum(den, 1e-300)), 0.0)
            near_val = quad_int + rem * logterm
            # far field: int N/(t-tau) = -sum_j mu_j / tau^{j+1}
            with np.errstate(divide="ignore", invalid="ignore"):
                inv = 1.0 / t_off
                series = np.zeros_like(t_off)
                for j in range(_SERIES_J, -1, -1):
                    series = (series + muc[j]) * inv
            out += sgn * np.sum(np.where(far, -series, near_val), axis=1)
    return out


# ---------------------------------------------------------------------------
# discrete-bath susceptibility
# ---------------------------------------------------------------------------

def _discrete_chi_numpy(freqs, weights, etas, targets):
    om = targets[:, None]
    z1 = 1.0 / (freqs[None, :] - om - 1j * etas[None, :])
    z2 = 1.0 / (freqs[None, :] + om + 1j * etas[None, :])
    return 0.5 * np.sum(weights[None, :] * (z1 - z2), axis=1)


# ---------------------------------------------------------------------------
# Filon-type oscillatory transform of a complex piecewise cubic
# ---------------------------------------------------------------------------

def _moments_numpy(tau, h):
    """m_n(tau, h) = int_0^h t^n e^{-i tau t} dt for n = 0..3 (vector in h)."""
    z = tau * h
    m = np.empty((4,) + h.shape, dtype=complex)
    small = np.abs(z) < 0.5
    if np.any(small):
        hs = h[small]
        zs = -1j * tau * hs
        for n in range(4):
            term = hs ** (n + 1) / (n + 1)
            acc = term.astype(complex)
            fac = np.ones_like(hs, dtype=complex)
            for k in range(1, 22):
                fac = fac * zs / k
                acc = acc + fac * hs ** (n + 1) / (n + k + 1)
            m[n][small] = acc
    big = ~small
    if np.any(big):
        hb = h[big]
        E = np.exp(-1j * tau * hb)
        itau = 1j * tau
        prev = (1.0 - E) / itau
        m[0][big] = prev
        for n in range(1, 4):
            prev = (n * prev - hb**n * E) / itau
            m[n][big] = prev
    return m


def _filon_numpy(xs, cre, cim, taus):
    h = np.diff(xs)
    xj = xs[:-1]
    c = cre + 1j * cim
    out = np.empty(taus.size, dtype=complex)
    for i, tau in enumerate(taus):
        if tau == 0.0:
            m = np.stack([h**(n + 1) / (n + 1) for n in range(4)]).astype(complex)
            phase = np.ones_like(h, dtype=complex)
        else:
            m = _moments_numpy(tau, h)
            phase = np.exp(-1j * tau * xj)
        out[i] = np.sum(phase * (c[0] * m[3] + c[1] * m[2] + c[2] * m[1] + c[3] * m[0]))
    return out


# ---------------------------------------------------------------------------
# numba twins
# ---------------------------------------------------------------------------

if USING_NUMBA:

    @njit(cache=True)
    def _s_eval_nb(family, params, w):
        w = abs(w)
        if family == _LORENTZIAN:
            c = params[0]; g = params[1]; wt = params[2]
            return wt * (g / np.pi) * (1.0 / ((w - c) ** 2 + g * g)
                                       + 1.0 / ((w + c) ** 2 + g * g))
        lo = params[0]; hi = params[1]; h = params[2]
        if lo <= w <= hi:
            return h
        return 0.0

    @njit(cache=True)
    def _lor_tail_nb(c, g, W, a):
        X = W - c
        b = a - c
        return (g / np.pi) / (b * b + g * g) * (
            0.5 * math.log((X * X + g * g) / ((X - b) * (X - b)))
            + (b / g) * (math.atan(X / g) - np.pi / 2.0)
        )

    @njit(cache=True, parallel=True)
    def _pv_panels_nb(family, params, p, parity, targets, edges, n_edges, win_idx,
                      glx, glw):
        nt = targets.size
        out = np.empty(nt)
        for i in prange(nt):
            a = targets[i]
            ne = n_edges[i]
            wi = win_idx[i]
            ga = _s_eval_nb(family, params, a)
            if p == 2:
                ga *= a * a
            total = 0.0
            for j in range(ne - 1):
                lo = edges[i, j]; hi = edges[i, j + 1]
                mid = 0.5 * (lo + hi); half = 0.5 * (hi - lo)
                acc = 0.0
                for q in range(glx.size):
                    x = mid + half * glx[q]
                    s = _s_eval_nb(family, params, x)
                    gv = s * x * x if p == 2 else s
                    if j == wi:
                        val = (gv - ga) / (x - a) - parity * gv / (x + a)
                    else:
                        val = gv * (1.0 / (x - a) - parity / (x + a))
                    acc += glw[q] * val
                total += acc * half
            if family == _LORENTZIAN and p == 0:
                c = params[0]; g = params[1]; wt = params[2]
                W = edges[i, ne - 1]
                total += wt * (_lor_tail_nb(c, g, W, a) - parity * _lor_tail_nb(c, g, W, -a))
                total += wt * (_lor_tail_nb(-c, g, W, a) - parity * _lor_tail_nb(-c, g, W, -a))
            out[i] = total
        return out

    @njit(cache=True, parallel=True)
    def _pv_poly_nb(xs, N, mu, parity, targets):
        nt = targets.size
        nseg = xs.size - 1
        nj = mu.shape[0]
        out = np.empty(nt)
        for i in prange(nt):
            a = targets[i]
            total = 0.0
            for j in range(nseg):
                xj = xs[j]
                h = xs[j + 1] - xj
                tiny = 1e-14 * h
                for branch in range(2):
                    if branch == 0:
                        toff = a - xj
                        sgn = 1.0
                    else:
                        toff = -a - xj
                        sgn = -parity
                        if sgn == 0.0:
                            continue
                    if abs(toff) > 4.0 * h:
                        inv = 1.0 / toff
                        series = 0.0
                        for jj in range(nj - 1, -1, -1):
                            series = (series + mu[jj, j]) * inv
                        total += sgn * (-series)
                        continue
                    q0 = N[0, j]
                    q1 = N[1, j] + toff * q0
                    q2 = N[2, j] + toff * q1
                    q3 = N[3, j] + toff * q2
                    q4 = N[4, j] + toff * q3
                    rem = N[5, j] + toff * q4
                    quad_int = (q0 * h**5 / 5.0 + q1 * h**4 / 4.0 + q2 * h**3 / 3.0
                                + q3 * h**2 / 2.0 + q4 * h)
                    num = abs(h - toff)
                    den = abs(toff)
                    logterm = 0.0
                    if num > tiny:
                        logterm += math.log(num)
                    if den > tiny:
                        logterm -= math.log(den)
                    total += sgn * (quad_int + rem * logterm)
            out[i] = total
        return out

    @njit(cache=True, parallel=True)
    def _discrete_chi_nb(freqs, weights, etas, targets):
        nt = targets.size
        out = np.empty(nt, dtype=np.complex128)
        for i in prange(nt):
            om = targets[i]
            acc = 0.0 + 0.0j
            for j in range(freqs.size):
                acc += weights[j] * (1.0 / (freqs[j] - om - 1j * etas[j])
                                     - 1.0 / (freqs[j] + om + 1j * etas[j]))
            out[i] = 0.5 * acc
        return out

    @njit(cache=True)
    def _moments_nb(tau, h, m):
        z = tau * h
        if abs(z) < 0.5:
            zs = -1j * tau * h
            for n in range(4):
                acc = h ** (n + 1) / (n + 1) + 0j
                fac = 1.0 + 0j
                for k in range(1, 22):
                    fac = fac * zs / k
                    acc = acc + fac * h ** (n + 1) / (n + k + 1)
                m[n] = acc
        else:
            E = np.exp(-1j * z)
            itau = 1j * tau
            m[0] = (1.0 - E) / itau
            for n in range(1, 4):
                m[n] = (n * m[n - 1] - h**n * E) / itau

    @njit(cache=True, parallel=True)
    def _filon_nb(xs, cre, cim, taus):
        nseg = xs.size - 1
        out = np.empty(taus.size, dtype=np.complex128)
        for i in prange(taus.size):
            tau = taus[i]
            acc = 0.0 + 0.0j
            m = np.empty(4, dtype=np.complex128)
            for j in range(nseg):
                h = xs[j + 1] - xs[j]
                if tau == 0.0:
                    for n in range(4):
                        m[n] = h ** (n + 1) / (n + 1)
                    phase = 1.0 + 0.0j
                else:
                    _moments_nb(tau, h, m)
                    phase = np.exp(-1j * tau * xs[j])
                c0 = cre[0, j] + 1j * cim[0, j]
                c1 = cre[1, j] + 1j * cim[1, j]
                c2 = cre[2, j] + 1j * cim[2, j]
                c3 = cre[3, j] + 1j * cim[3, j]
                acc += phase * (c0 * m[3] + c1 * m[2] + c2 * m[1] + c3 * m[0])
            out[i] = acc
        return out


# ---------------------------------------------------------------------------
# dispatching wrappers
# ---------------------------------------------------------------------------

def pv_panels(family, params, p, parity, targets, edges, n_edges, win_idx):
    """Sum of GL16 panels with singularity subtraction plus exact family tail."""
    targets = np.ascontiguousarray(targets, dtype=float)
    if USING_NUMBA:
        return _pv_panels_nb(family, np.asarray(params, float), p, float(parity),
                             targets, edges, n_edges, win_idx, _GL_X, _GL_W)
    return _pv_panels_numpy(family, np.asarray(params, float), p, float(parity),
                            targets, edges, n_edges, win_idx)


def pv_poly_segments(xs, coeffs, p, parity, targets):
    """Exact P int (w^p * poly(w)) [1/(w-a) - parity/(w+a)] dw over the breakpoints.

    ``coeffs`` in scipy PPoly layout (4, nseg).  Targets may sit on interior
    breakpoints: the paired log singularities cancel exactly and are skipped.
    """
    xs = np.ascontiguousarray(xs, dtype=float)
    coeffs = np.ascontiguousarray(coeffs, dtype=float)
    targets = np.ascontiguousarray(targets, dtype=float)
    N = _segment_numerators(xs, coeffs, p)
    if USING_NUMBA:
        mu = _segment_moments(xs, N)
        return _pv_poly_nb(xs, np.ascontiguousarray(N),
                           np.ascontiguousarray(mu), float(parity), targets)
    return _pv_poly_numpy(xs, N, float(parity), targets)


def discrete_chi(freqs, weights, etas, targets):
    freqs = np.ascontiguousarray(freqs, dtype=float)
    weights = np.ascontiguousarray(weights, dtype=float)
    etas = np.ascontiguousarray(etas, dtype=float)
    targets = np.ascontiguousarray(targets, dtype=float)
    if USING_NUMBA:
        return _discrete_chi_nb(freqs, weights, etas, targets)
    return _discrete_chi_numpy(freqs, weights, etas, targets)


def filon_transform(xs, cre, cim, taus):
    """I(tau) = int_x0^xn p(w) e^{-i w tau} dw for a complex piecewise cubic."""
    xs = np.ascontiguousarray(xs, dtype=float)
    cre = np.ascontiguousarray(cre, dtype=float)
    cim = np.ascontiguousarray(cim, dtype=float)
    taus = np.ascontiguousarray(taus, dtype=float)
    if USING_NUMBA:
        return _filon_nb(xs, cre, cim, taus)
    return _filon_numpy(xs, cre, cim, taus)
