# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled angle-sweep kernel.

For a square complex matrix B, the rotated Hermitian family is

    H(t) = (e^{it} B + e^{-it} B*) / 2.

The numerical radius of B is the maximum over t of the top eigenvalue of
H(t); the signed Crawford support is the maximum over t of the bottom
eigenvalue.  This module evaluates both curves on a uniform grid and
refines every surviving local maximum with golden-section search.

Matrices are held as split real/imaginary double arrays so the inner
loops stay in plain scalar arithmetic.  Extremal eigenvalues come from
closed forms for dimensions 1-3; above that the matrix is reduced to
real tridiagonal form by Givens similarity and the two extreme
eigenvalues are located by Sturm-count bisection.
"""

from libc.math cimport cos, sin, sqrt, acos, fabs, M_PI
from libc.stdlib cimport malloc, free

import numpy as np

from .errors import ConvergenceFailure, DimensionMismatch

name = "compiled"

cdef int MAX_BRACKETS = 256
cdef double INVPHI = 0.6180339887498949
cdef double TWO_THIRDS_PI = 2.0943951023931953
cdef double DBL_EPS = 2.220446049250313e-16


cdef void _build_rotated(const double* br, const double* bi, int r,
                         double theta, double* hr, double* hi) noexcept nogil:
    """hr + i*hi = (e^{i theta} B + conj transpose) / 2."""
    cdef double cr = cos(theta)
    cdef double ci = sin(theta)
    cdef int i, j, ij, ji
    cdef double xr, xi, yr, yi
    for i in range(r):
        for j in range(r):
            ij = i * r + j
            ji = j * r + i
            # e^{it} B[i,j]
            xr = cr * br[ij] - ci * bi[ij]
            xi = cr * bi[ij] + ci * br[ij]
            # conj(e^{it} B[j,i])
            yr = cr * br[ji] - ci * bi[ji]
            yi = cr * bi[ji] + ci * br[ji]
            hr[ij] = 0.5 * (xr + yr)
            hi[ij] = 0.5 * (xi - yi)


cdef void _similarity_rotation(double* hr, double* hi, int r, int p, int q,
                               double c, double s, double pr,
                               double pi_) noexcept nogil:
    """Apply H <- J* H J in the (p, q) plane.

    J[p,p] = c, J[p,q] = s, J[q,p] = -s e^{-i phi}, J[q,q] = c e^{-i phi}
    with phase e^{i phi} = pr + i pi_ and real c, s.
    """
    cdef int k, pk, qk, kp, kq
    cdef double a, b, u, v, e, f
    for k in range(r):
        pk = p * r + k
        qk = q * r + k
        a = hr[pk]; b = hi[pk]
        u = hr[qk]; v = hi[qk]
        e = pr * u - pi_ * v
        f = pr * v + pi_ * u
        hr[pk] = c * a - s * e
        hi[pk] = c * b - s * f
        hr[qk] = s * a + c * e
        hi[qk] = s * b + c * f
    for k in range(r):
        kp = k * r + p
        kq = k * r + q
        a = hr[kp]; b = hi[kp]
        u = hr[kq]; v = hi[kq]
        e = pr * u + pi_ * v
        f = pr * v - pi_ * u
        hr[kp] = c * a - s * e
        hi[kp] = c * b - s * f
        hr[kq] = s * a + c * e
        hi[kq] = s * b + c * f


cdef void _tridiagonalize(double* hr, double* hi, int r,
                          double* diag, double* off) noexcept nogil:
    """Reduce Hermitian (hr, hi) to real tridiagonal by Givens similarity.

    Fills diag[0..r-1] and the subdiagonal magnitudes off[0..r-2]; the
    input buffers are destroyed.
    """
    cdef int k, i, p, pk, ik
    cdef double ar, ai, brr, bii, na, nb, t, c, s, pr, pi_
    for k in range(r - 2):
        p = k + 1
        for i in range(k + 2, r):
            ik = i * r + k
            brr = hr[ik]; bii = hi[ik]
            nb = sqrt(brr * brr + bii * bii)
            if nb == 0.0:
                continue
            pk = p * r + k
            ar = hr[pk]; ai = hi[pk]
            na = sqrt(ar * ar + ai * ai)
            if na == 0.0:
                c = 0.0
                s = 1.0
                pr = 1.0
                pi_ = 0.0
            else:
                t = nb / na
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                # phase = -(a/|a|) * conj(b)/|b| makes the target cancel
                pr = -(ar * brr + ai * bii) / (na * nb)
                pi_ = -(ai * brr - ar * bii) / (na * nb)
            _similarity_rotation(hr, hi, r, p, i, c, s, pr, pi_)
            hr[ik] = 0.0; hi[ik] = 0.0
            hr[k * r + i] = 0.0; hi[k * r + i] = 0.0
    for k in range(r):
        diag[k] = hr[k * r + k]
    for k in range(r - 1):
        pk = (k + 1) * r + k
        off[k] = sqrt(hr[pk] * hr[pk] + hi[pk] * hi[pk])


cdef int _tql1(double* d, double* e, int n) noexcept nogil:
    """Implicit-QL eigenvalues of a real symmetric tridiagonal matrix.

    ``d`` holds the diagonal and returns the (unsorted) eigenvalues;
    ``e`` holds the subdiagonal in e[0..n-2] and is destroyed.  Returns
    0 on success, 1 if some eigenvalue needs more than 50 shifts.
    """
    cdef int l, m, i, it, inner_ok
    cdef double dd, g, rr, s, c, p, f, b
    e[n - 1] = 0.0
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = fabs(d[m]) + fabs(d[m + 1])
                if fabs(e[m]) <= DBL_EPS * dd:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > 50:
                return 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            rr = sqrt(g * g + 1.0)
            g = d[m] - d[l] + e[l] / (g + (rr if g >= 0.0 else -rr))
            s = 1.0
            c = 1.0
            p = 0.0
            inner_ok = 1
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                rr = sqrt(f * f + g * g)
                e[i + 1] = rr
                if rr == 0.0:
                    # underflow guard: split here and restart
                    d[i + 1] -= p
                    e[m] = 0.0
                    inner_ok = 0
                    break
                s = f / rr
                c = g / rr
                g = d[i + 1] - p
                rr = (d[i] - g) * s + 2.0 * c * b
                p = s * rr
                d[i + 1] = g + p
                g = c * rr - b
                i -= 1
            if inner_ok:
                d[l] -= p
                e[l] = g
                e[m] = 0.0
    return 0


cdef int _extremes(double* hr, double* hi, int r, double* scratch,
                   double* lo, double* hi_out) noexcept nogil:
    """Extremal eigenvalues of Hermitian (hr, hi); destroys the buffers.

    ``scratch`` must hold 2*r doubles.  Returns 0 on success.
    """
    cdef double a, b, c, mid, disc
    cdef double q, p1, p2, p, aa, bb, cc, detb, rr, phi
    cdef double dr, di, er, ei, fr, fi
    cdef int k
    if r == 1:
        lo[0] = hr[0]
        hi_out[0] = hr[0]
        return 0
    if r == 2:
        a = hr[0]
        c = hr[3]
        mid = 0.5 * (a + c)
        disc = sqrt(0.25 * (a - c) * (a - c) + hr[1] * hr[1] + hi[1] * hi[1])
        lo[0] = mid - disc
        hi_out[0] = mid + disc
        return 0
    if r == 3:
        # trigonometric closed form for the 3x3 Hermitian eigenvalues
        a = hr[0]; b = hr[4]; c = hr[8]
        dr = hr[1]; di = hi[1]
        er = hr[2]; ei = hi[2]
        fr = hr[5]; fi = hi[5]
        q = (a + b + c) / 3.0
        p1 = dr * dr + di * di + er * er + ei * ei + fr * fr + fi * fi
        aa = a - q; bb = b - q; cc = c - q
        p2 = aa * aa + bb * bb + cc * cc + 2.0 * p1
        if p2 <= 0.0:
            lo[0] = q
            hi_out[0] = q
            return 0
        p = sqrt(p2 / 6.0)
        # det((H - q I) / p) = aa*bb*cc - aa|f|^2 - bb|e|^2 - cc|d|^2
        #                      + 2 Re(d f conj(e)), scaled by p^-3
        detb = (aa * bb * cc
                - aa * (fr * fr + fi * fi)
                - bb * (er * er + ei * ei)
                - cc * (dr * dr + di * di)
                + 2.0 * ((dr * fr - di * fi) * er + (dr * fi + di * fr) * ei)
                ) / (p * p * p)
        rr = 0.5 * detb
        if rr < -1.0:
            rr = -1.0
        elif rr > 1.0:
            rr = 1.0
        phi = acos(rr) / 3.0
        hi_out[0] = q + 2.0 * p * cos(phi)
        lo[0] = q + 2.0 * p * cos(phi + TWO_THIRDS_PI)
        return 0
    _tridiagonalize(hr, hi, r, scratch, scratch + r)
    if _tql1(scratch, scratch + r, r):
        return 1
    aa = scratch[0]
    bb = scratch[0]
    for k in range(1, r):
        if scratch[k] < aa:
            aa = scratch[k]
        if scratch[k] > bb:
            bb = scratch[k]
    lo[0] = aa
    hi_out[0] = bb
    return 0


cdef double _eval_side(const double* br, const double* bi, int r, double theta,
                       int side, double* hr, double* hi, double* scratch,
                       int* status) noexcept nogil:
    """Top (side=1) or bottom (side=0) eigenvalue of H(theta)."""
    cdef double lo = 0.0, hi_v = 0.0
    _build_rotated(br, bi, r, theta, hr, hi)
    if _extremes(hr, hi, r, scratch, &lo, &hi_v):
        status[0] = 1
    return hi_v if side else lo


cdef double _golden_max(const double* br, const double* bi, int r, int side,
                        double a, double b, double hint,
                        double refine_tol, int max_iters,
                        double* hr, double* hi, double* scratch,
                        int* status) noexcept nogil:
    """Golden-section maximization of the side curve on [a, b]."""
    cdef double x1, x2, f1, f2, best
    cdef int it
    x1 = b - INVPHI * (b - a)
    x2 = a + INVPHI * (b - a)
    f1 = _eval_side(br, bi, r, x1, side, hr, hi, scratch, status)
    f2 = _eval_side(br, bi, r, x2, side, hr, hi, scratch, status)
    best = hint
    if f1 > best:
        best = f1
    if f2 > best:
        best = f2
    for it in range(max_iters):
        if b - a <= refine_tol:
            break
        if f1 >= f2:
            b = x2
            x2 = x1
            f2 = f1
            x1 = b - INVPHI * (b - a)
            f1 = _eval_side(br, bi, r, x1, side, hr, hi, scratch, status)
            if f1 > best:
                best = f1
        else:
            a = x1
            x1 = x2
            f1 = f2
            x2 = a + INVPHI * (b - a)
            f2 = _eval_side(br, bi, r, x2, side, hr, hi, scratch, status)
            if f2 > best:
                best = f2
    return best


cdef double _refine_side(const double* br, const double* bi, int r, int side,
                         const double* curve, int m, double prune_gap,
                         double refine_tol, int max_iters,
                         double* hr, double* hi, double* scratch,
                         int* status) noexcept nogil:
    """Refine local maxima of a sampled curve; returns the global maximum."""
    cdef double h = 2.0 * M_PI / m
    cdef double best, gmax, v
    cdef int k, prev, nxt, kmax, nbr
    cdef int* brackets

    gmax = curve[0]
    kmax = 0
    for k in range(1, m):
        if curve[k] > gmax:
            gmax = curve[k]
            kmax = k
    best = gmax

    brackets = <int*> malloc(m * sizeof(int))
    if brackets == NULL:
        status[0] = 2
        return best
    nbr = 0
    # strict rise then non-drop picks one index per peak; an everywhere-flat
    # curve yields none and falls back to the plain argmax bracket
    for k in range(m):
        prev = k - 1 if k > 0 else m - 1
        nxt = k + 1 if k < m - 1 else 0
        v = curve[k]
        if v > curve[prev] and v >= curve[nxt] and v >= gmax - prune_gap:
            if nbr < MAX_BRACKETS:
                brackets[nbr] = k
                nbr += 1
    if nbr == 0:
        brackets[0] = kmax
        nbr = 1
    for k in range(nbr):
        v = _golden_max(br, bi, r, side, brackets[k] * h - h, brackets[k] * h + h,
                        curve[brackets[k]], refine_tol, max_iters,
                        hr, hi, scratch, status)
        if v > best:
            best = v
    free(brackets)
    return best


def extremal_eigenvalues(H):
    """Smallest and largest eigenvalue of a Hermitian matrix."""
    A = np.ascontiguousarray(H, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise DimensionMismatch("matrix must be square and nonempty")
    cdef double[:, ::1] hrv = np.ascontiguousarray(A.real)
    cdef double[:, ::1] hiv = np.ascontiguousarray(A.imag)
    cdef int r = hrv.shape[0]
    cdef double lo = 0.0, hi_v = 0.0
    cdef int bad
    cdef double* scratch = <double*> malloc(2 * r * sizeof(double))
    if scratch == NULL:
        raise MemoryError()
    with nogil:
        bad = _extremes(&hrv[0, 0], &hiv[0, 0], r, scratch, &lo, &hi_v)
    free(scratch)
    if bad:
        raise ConvergenceFailure("eigenvalue iteration did not converge")
    return lo, hi_v


def sweep_extremes(B, int grid_points, double refine_tol, int max_refine_iters):
    """Maximum of the top curve and maximum of the bottom curve of H(theta).

    Returns ``(w, s)``: ``w`` is the numerical radius of B and ``s`` the
    signed Crawford support (clamp at zero for the Crawford number).
    """
    A = np.ascontiguousarray(B, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise DimensionMismatch("matrix must be square and nonempty")
    if grid_points < 16:
        raise ValueError("grid_points must be at least 16")

    cdef double[:, ::1] brv = np.ascontiguousarray(A.real)
    cdef double[:, ::1] biv = np.ascontiguousarray(A.imag)
    cdef int r = brv.shape[0]
    cdef int m = grid_points
    cdef double* hr
    cdef double* hi
    cdef double* scratch
    cdef double* top
    cdef double* bot
    cdef double lo, hi_v, bnorm, prune_gap, w, s
    cdef int k, status

    hr = <double*> malloc(r * r * sizeof(double))
    hi = <double*> malloc(r * r * sizeof(double))
    scratch = <double*> malloc(2 * r * sizeof(double))
    top = <double*> malloc(m * sizeof(double))
    bot = <double*> malloc(m * sizeof(double))
    if hr == NULL or hi == NULL or scratch == NULL or top == NULL or bot == NULL:
        free(hr); free(hi); free(scratch); free(top); free(bot)
        raise MemoryError()

    status = 0
    w = 0.0
    s = 0.0
    lo = 0.0
    hi_v = 0.0
    with nogil:
        bnorm = _frob2(&brv[0, 0], &biv[0, 0], r)
        for k in range(m):
            _build_rotated(&brv[0, 0], &biv[0, 0], r, (2.0 * M_PI * k) / m, hr, hi)
            if _extremes(hr, hi, r, scratch, &lo, &hi_v):
                status = 1
                break
            top[k] = hi_v
            bot[k] = lo
        if status == 0:
            # the curves are Lipschitz with constant ||B||; anything further
            # than one grid step's worth of slope below the max cannot win
            prune_gap = 2.0 * bnorm * (2.0 * M_PI / m)
            w = _refine_side(&brv[0, 0], &biv[0, 0], r, 1, top, m, prune_gap,
                             refine_tol, max_refine_iters, hr, hi, scratch,
                             &status)
            s = _refine_side(&brv[0, 0], &biv[0, 0], r, 0, bot, m, prune_gap,
                             refine_tol, max_refine_iters, hr, hi, scratch,
                             &status)

    free(hr); free(hi); free(scratch); free(top); free(bot)
    if status == 1:
        raise ConvergenceFailure("eigenvalue iteration failed during sweep")
    if status == 2:
        raise MemoryError()
    return w, s


cdef double _frob2(const double* xr, const double* xi, int r) noexcept nogil:
    cdef double acc = 0.0
    cdef int k
    for k in range(r * r):
        acc += xr[k] * xr[k] + xi[k] * xi[k]
    return sqrt(acc)
