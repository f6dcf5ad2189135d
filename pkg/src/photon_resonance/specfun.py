"""Complex special functions: E1, J0, Y0, Hankel H0, and the Struve combination K0.

Everything here is double precision and vectorized over numpy arrays of
complex arguments.  Each function switches between evaluation regimes at
fixed crossover radii; the radii below were chosen by sweeping relative
accuracy against extended-precision oracles on dense grids:

* ``exp_integral_e1``: Maclaurin-type series for |z| < 4, modified-Lentz
  continued fraction for |z| >= 4.
* ``bessel_j0`` / ``bessel_y0``: power series for |z| <= 8, Miller backward
  recurrence for 8 < |z| < 17 (and near the negative real axis), Hankel
  asymptotic expansion beyond.
* ``struve_k0``: power series for |z| <= 10, rotated-contour Laplace
  integral for 10 < |z| < 40, asymptotic series for |z| >= 40; arguments in
  the left half plane are reflected into the right half plane first.

Arguments on the closed negative real axis (the principal branch cut of
E1, Y0 and K0) are rejected rather than continued from one side.
"""

from __future__ import annotations

import numpy as np

EULER_GAMMA = 0.5772156649015328606065120900824024

E1_SERIES_RADIUS = 4.0
BESSEL_SERIES_RADIUS = 8.0
BESSEL_ASYMPTOTIC_RADIUS = 17.0
BESSEL_ASYMPTOTIC_MAX_ARG = 2.2  # |arg z| beyond which Miller replaces asymptotics
STRUVE_SERIES_RADIUS = 10.0
STRUVE_ASYMPTOTIC_RADIUS = 40.0


class SpecialFunctionDomainError(ValueError):
    """Argument on a branch cut or otherwise outside a function's domain."""


def _asfarray_complex(z):
    a = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(a)):
        raise SpecialFunctionDomainError("non-finite argument")
    return a


def _reject_cut(z, name):
    on_cut = (z.imag == 0.0) & (z.real <= 0.0)
    if np.any(on_cut):
        bad = np.asarray(z)[on_cut].ravel()[0]
        raise SpecialFunctionDomainError(
            f"{name}: argument {bad} lies on the closed negative real axis"
        )


def _maybe_scalar(out, z):
    return out[()] if np.isscalar(z) or np.ndim(z) == 0 else out


# ----------------------------------------------------------------------
# exponential integral E1
# ----------------------------------------------------------------------

def _e1_series(z):
    # E1(z) = -log z - gamma + sum_{n>=1} (-1)^{n+1} z^n / (n n!)
    s = np.zeros_like(z)
    term = np.ones_like(z)
    for n in range(1, 500):
        term = term * (-z) / n
        s += term / n
        if np.max(np.abs(term)) < 1e-18 * max(np.max(np.abs(s)), 1e-30):
            break
    return -np.log(z) - EULER_GAMMA - s


def _e1_continued_fraction(z, maxit=10000):
    # even-contracted Lentz form: E1 = e^{-z} / (z+1 - 1/(z+3 - 4/(z+5 - ...)))
    tiny = 1e-300
    b = z + 1.0
    c = np.full_like(z, 1.0 / tiny)
    d = 1.0 / b
    h = d.copy()
    active = np.ones(z.shape, dtype=bool)
    for i in range(1, maxit):
        a = -float(i * i)
        b = b + 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h[active] = h[active] * delta[active]
        active &= np.abs(delta - 1.0) >= 1e-16
        if not np.any(active):
            return np.exp(-z) * h
    raise RuntimeError("E1 continued fraction did not converge")


def exp_integral_e1(z):
    """Principal-branch exponential integral E1(z) for z off (-inf, 0]."""
    za = _asfarray_complex(z)
    _reject_cut(za, "exp_integral_e1")
    out = np.empty_like(za)
    # the continued fraction stalls near the cut, but there E1 is
    # exponentially large and the series keeps full relative accuracy
    series = (np.abs(za) < E1_SERIES_RADIUS) | \
        ((za.real < 0.0) & (np.abs(za.imag) < 0.5 * np.abs(za.real)))
    if np.any(series):
        out[series] = _e1_series(za[series])
    if np.any(~series):
        out[~series] = _e1_continued_fraction(za[~series])
    return _maybe_scalar(out, z)


# ----------------------------------------------------------------------
# Bessel J0 / Y0 and Hankel functions
# ----------------------------------------------------------------------

def _j0_series(z):
    s = np.ones_like(z)
    term = np.ones_like(z)
    q = -(z * z) / 4.0
    for n in range(1, 80):
        term = term * q / (n * n)
        s += term
        if np.max(np.abs(term)) < 1e-18 * max(np.max(np.abs(s)), 1e-30):
            break
    return s


def _y0_series(z):
    # Y0 = (2/pi)[(ln(z/2)+gamma) J0 + sum_{k>=1} (-1)^{k+1} H_k (z^2/4)^k/(k!)^2]
    s = np.zeros_like(z)
    term = np.ones_like(z)
    q = -(z * z) / 4.0
    H = 0.0
    for k in range(1, 80):
        term = term * q / (k * k)
        H += 1.0 / k
        s -= term * H  # (-1)^{k+1} (z^2/4)^k/(k!)^2 == -term
        if np.max(np.abs(term)) < 1e-18:
            break
    return (2.0 / np.pi) * ((np.log(z / 2.0) + EULER_GAMMA) * _j0_series(z) + s)


def _jy0_miller(z):
    """J0 and Y0 by backward recurrence, elementwise over a 1-d array."""
    j0 = np.empty_like(z)
    y0 = np.empty_like(z)
    for idx, zz in enumerate(z):
        N = int(abs(zz)) + 50
        jj = np.empty(N + 1, dtype=complex)
        fp = 0.0 + 0.0j
        f = 1e-30 + 0.0j
        jj[N] = f
        for n in range(N, 0, -1):
            fm = (2.0 * n / zz) * f - fp
            fp = f
            f = fm
            jj[n - 1] = f
        even = jj[2::2]
        if abs(zz.imag) > 2.0:
            # cos-normalized sum avoids the e^{|Im z|} cancellation of the
            # identity normalization J0 + 2*sum J_{2k} = 1
            signs = (-1.0) ** np.arange(1, even.size + 1)
            norm = (jj[0] + 2.0 * np.sum(signs * even)) / np.cos(zz)
        else:
            norm = jj[0] + 2.0 * np.sum(even)
        jj /= norm
        ks = np.arange(1, even.size + 1)
        ssum = np.sum(((-1.0) ** (ks + 1)) * jj[2::2] / ks)
        j0[idx] = jj[0]
        y0[idx] = (2.0 / np.pi) * ((np.log(zz / 2.0) + EULER_GAMMA) * jj[0] + 2.0 * ssum)
    return j0, y0


def _h0_asymptotic(z, kind):
    # H0^(1,2)(z) ~ sqrt(2/(pi z)) e^{+-i(z - pi/4)} sum_k (+-i)^k a_k / z^k,
    # a_0 = 1, a_{k+1} = -a_k (2k+1)^2 / (8(k+1)); truncated at the smallest term
    sgn = 1.0 if kind == 1 else -1.0
    s = np.zeros_like(z)
    best = np.full(z.shape, np.inf)
    done = np.zeros(z.shape, dtype=bool)
    a = 1.0
    zpow = np.ones_like(z)
    for k in range(0, 60):
        term = a * zpow
        mag = np.abs(term)
        done |= mag > best
        best = np.where(done, best, mag)
        s = np.where(done, s, s + (sgn * 1j) ** k * term)
        if np.all(done) or np.max(mag) < 1e-18:
            break
        a *= -((2 * k + 1) ** 2) / (8.0 * (k + 1))
        zpow = zpow / z
    return np.sqrt(2.0 / (np.pi * z)) * np.exp(sgn * 1j * (z - np.pi / 4.0)) * s


def _jy0(z):
    out_j = np.empty_like(z)
    out_y = np.empty_like(z)
    az = np.abs(z)
    small = az <= BESSEL_SERIES_RADIUS
    asym = (az >= BESSEL_ASYMPTOTIC_RADIUS) & (np.abs(np.angle(z)) <= BESSEL_ASYMPTOTIC_MAX_ARG)
    mid = ~(small | asym)
    if np.any(small):
        out_j[small] = _j0_series(z[small])
        out_y[small] = _y0_series(z[small])
    if np.any(mid):
        j0m, y0m = _jy0_miller(z[mid].ravel())
        out_j[mid] = j0m
        out_y[mid] = y0m
    if np.any(asym):
        h1 = _h0_asymptotic(z[asym], 1)
        h2 = _h0_asymptotic(z[asym], 2)
        out_j[asym] = 0.5 * (h1 + h2)
        out_y[asym] = (h1 - h2) / 2j
    return out_j, out_y


def _h0_recessive_integral(w, n_panels=6, n_quad=28):
    # exact representation, valid for Re w > 0, Im w >= 0:
    #   H0^(1)(w) = (4/(i pi)) e^{iw} int_0^inf e^{i w v^2} (v^2+2)^{-1/2} dv
    # integrated along the ray v = e^{i pi/8} s so the exponent decays for
    # every w in the first quadrant.  Used where H0^(1) is recessive and the
    # J0 + iY0 composition would cancel catastrophically.
    rot = np.exp(1j * np.pi / 8)
    out = np.empty_like(w)
    xs, ws = np.polynomial.legendre.leggauss(n_quad)
    for idx, ww in enumerate(w):
        decay = -(1j * ww * rot * rot).real
        L = 9.0 / np.sqrt(decay)
        brk = np.concatenate(([0.0], L * np.geomspace(2.0 ** (1 - n_panels), 1.0, n_panels)))
        tot = 0.0 + 0.0j
        for i in range(n_panels):
            a, b = brk[i], brk[i + 1]
            s = 0.5 * (b - a) * xs + 0.5 * (b + a)
            v = 0.5 * (b - a) * ws
            vv = rot * s
            tot += np.sum(v * np.exp(1j * ww * vv * vv) / np.sqrt(vv * vv + 2.0)) * rot
        out[idx] = (4.0 / (1j * np.pi)) * np.exp(1j * ww) * tot
    return out


def _h0(z, kind):
    """Hankel function with a cancellation-safe path for recessive cases."""
    out = np.empty_like(z)
    az = np.abs(z)
    asym = (az >= BESSEL_ASYMPTOTIC_RADIUS) & (np.abs(np.angle(z)) <= BESSEL_ASYMPTOTIC_MAX_ARG)
    imag = z.imag if kind == 1 else -z.imag
    recessive = ~asym & (imag > 6.0) & (z.real > 0.0) & (az > 6.0)
    rest = ~(asym | recessive)
    if np.any(asym):
        out[asym] = _h0_asymptotic(z[asym], kind)
    if np.any(recessive):
        zr = z[recessive].ravel()
        if kind == 1:
            vals = _h0_recessive_integral(zr)
        else:
            vals = np.conj(_h0_recessive_integral(np.conj(zr)))
        out[recessive] = vals.reshape(z[recessive].shape)
    if np.any(rest):
        j0, y0 = _jy0(z[rest])
        out[rest] = j0 + 1j * y0 if kind == 1 else j0 - 1j * y0
    return out


def bessel_j0(z):
    """J0(z) for any finite complex z (entire function, no cut)."""
    za = _asfarray_complex(z)
    j0, _ = _jy0(np.where(za == 0.0, 1.0, za))  # avoid log in Y0 path; J0(0)=1
    out = np.where(za == 0.0, 1.0 + 0.0j, j0)
    return _maybe_scalar(out, z)


def bessel_y0(z):
    """Principal-branch Y0(z) for z off the closed negative real axis."""
    za = _asfarray_complex(z)
    _reject_cut(za, "bessel_y0")
    _, y0 = _jy0(za)
    return _maybe_scalar(y0, z)


def hankel0(z, kind=1):
    """H0^(1)(z) or H0^(2)(z), composed as J0 +- i Y0."""
    if kind not in (1, 2):
        raise ValueError("kind must be 1 or 2")
    za = _asfarray_complex(z)
    _reject_cut(za, "hankel0")
    out = _h0(za, kind)
    return _maybe_scalar(out, z)


# ----------------------------------------------------------------------
# Struve functions
# ----------------------------------------------------------------------

def _struve_h0_series(z):
    # H0(z) = sum_n (-1)^n (z/2)^{2n+1} / Gamma(n+3/2)^2
    t = (z / 2.0) * (4.0 / np.pi)  # 1/Gamma(3/2)^2 = 4/pi
    s = np.zeros_like(z)
    n = 0
    while True:
        s += t
        n += 1
        t = t * (-((z / 2.0) ** 2)) / ((n + 0.5) ** 2)
        if np.max(np.abs(t)) < 1e-18 * max(np.max(np.abs(s)), 1e-30) or n > 200:
            break
    return s


def _k0_laplace(z, n_panels=12, n_quad=24):
    # K0(z) = (2/pi) int_0^inf e^{-z t} (1+t^2)^{-1/2} dt for Re z > 0,
    # integrated along the rotated ray t = e^{i theta} s to keep the decay
    # rate bounded below near the imaginary axis.
    theta = -0.5 * np.angle(z)
    theta = np.clip(theta, -np.pi / 3, np.pi / 3)
    w = z * np.exp(1j * theta)
    L = 40.0 / w.real
    xs, ws = np.polynomial.legendre.leggauss(n_quad)
    brk = np.concatenate(([0.0], L * np.geomspace(2.0 ** (1 - n_panels), 1.0, n_panels)))
    total = np.zeros((), dtype=complex)
    for i in range(n_panels):
        a, b = brk[i], brk[i + 1]
        s = 0.5 * (b - a) * xs + 0.5 * (b + a)
        v = 0.5 * (b - a) * ws
        t = np.exp(1j * theta) * s
        total = total + np.sum(v * np.exp(-z * t) / np.sqrt(1.0 + t * t)) * np.exp(1j * theta)
    return (2.0 / np.pi) * total


def _k0_asymptotic(z):
    # K0(z) ~ (2/(pi z)) [1 - 1/z^2 + 9/z^4 - 225/z^6 + ...]
    s = np.zeros_like(z)
    term = np.ones_like(z)
    best = np.full(z.shape, np.inf)
    done = np.zeros(z.shape, dtype=bool)
    for k in range(0, 60):
        mag = np.abs(term)
        done |= mag > best
        best = np.where(done, best, mag)
        s = np.where(done, s, s + term)
        if np.all(done) or np.max(mag) < 1e-18:
            break
        term = term * (-((2 * k + 1) ** 2)) / (z * z)
    return (2.0 / (np.pi * z)) * s


def _k0_right_half(z):
    """K0 on |arg z| <= pi/2 (array input)."""
    out = np.empty_like(z)
    az = np.abs(z)
    small = az <= STRUVE_SERIES_RADIUS
    large = az >= STRUVE_ASYMPTOTIC_RADIUS
    mid = ~(small | large)
    if np.any(small):
        zs = z[small]
        out[small] = _struve_h0_series(zs) - _y0_series(zs)
    if np.any(mid):
        vals = [_k0_laplace(zz) for zz in z[mid].ravel()]
        out[mid] = np.asarray(vals).reshape(z[mid].shape)
    if np.any(large):
        out[large] = _k0_asymptotic(z[large])
    return out


def struve_k0(z):
    """The combination K0(z) = H0(z) - Y0(z) (Struve minus Bessel), z off the cut.

    Decays like 2/(pi z) for large |z| even though H0 and Y0 separately
    oscillate; this combination is what the two-dimensional Green's
    function needs.
    """
    za = _asfarray_complex(z)
    _reject_cut(za, "struve_k0")
    if np.any(za == 0.0):
        raise SpecialFunctionDomainError("struve_k0: argument must be nonzero")
    out = np.empty_like(za)
    left = za.real < 0.0
    right = ~left
    if np.any(right):
        out[right] = _k0_right_half(za[right])
    if np.any(left):
        # reflection into the right half plane:
        #   Im z > 0:  K0(z) = -K0(-z) - 2i H0^(2)(-z)
        #   Im z < 0:  K0(z) = -K0(-z) + 2i H0^(1)(-z)
        zl = za[left]
        zp = -zl
        k0p = _k0_right_half(zp)
        upper = zl.imag > 0
        # the reflected Hankel term is recessive exactly when the K0 part is
        # dominant; _h0 keeps it accurate either way
        refl = np.where(upper, -k0p - 2j * _h0(zp, 2), -k0p + 2j * _h0(zp, 1))
        out[left] = refl
    return _maybe_scalar(out, z)


def struve_h0(z):
    """Struve function H0(z), via the K0 combination plus Y0."""
    return struve_k0(z) + bessel_y0(z)
