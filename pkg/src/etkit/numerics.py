"""Scalar numerical substrate: bracketing, 1D extrema, quadrature, erfc.

Everything here is a pure function of its arguments and safe for
concurrent use.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import AccuracyError, NumericalDomainError

__all__ = [
    "Bracket",
    "ExtremumResult",
    "scan_brackets",
    "brackets_from_samples",
    "minimize_1d",
    "maximize_1d",
    "integrate",
    "erfc",
]

_GOLDEN = 0.3819660112501051  # 2 - golden ratio


@dataclass(frozen=True)
class Bracket:
    """Three abscissae lo < mid < hi enclosing an extremum."""

    lo: float
    mid: float
    hi: float

    def __post_init__(self):
        if not (self.lo < self.mid < self.hi):
            raise ValueError(f"bracket must satisfy lo < mid < hi, got {self}")


@dataclass(frozen=True)
class ExtremumResult:
    x: float
    fx: float
    iterations: int
    converged: bool


def brackets_from_samples(xs, ys):
    """Brackets around strict interior extrema of sampled values.

    ``xs`` must be ascending. Returns a list of (Bracket, kind) with kind
    'min' or 'max', in ascending x order.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if not np.all(np.isfinite(ys)):
        raise NumericalDomainError("non-finite function value in scan")
    left, mid, right = ys[:-2], ys[1:-1], ys[2:]
    is_min = (mid < left) & (mid < right)
    is_max = (mid > left) & (mid > right)
    found = [
        (i + 1, "min" if is_min[i] else "max")
        for i in np.flatnonzero(is_min | is_max)
    ]
    return [
        (Bracket(xs[i - 1], xs[i], xs[i + 1]), kind) for i, kind in found
    ]


def scan_brackets(f, lo, hi, n_grid):
    """Sample f on a uniform grid and bracket every strict interior extremum."""
    if n_grid < 3:
        raise ValueError(f"n_grid must be >= 3, got {n_grid}")
    if not lo < hi:
        raise ValueError(f"need lo < hi, got {lo}, {hi}")
    xs = np.linspace(lo, hi, n_grid)
    ys = np.array([f(x) for x in xs], dtype=float)
    return brackets_from_samples(xs, ys)


def minimize_1d(f, bracket, tol_x=1e-10, max_iter=200):
    """Refine a minimum bracket to width <= tol_x (Brent's method).

    Combines golden-section steps with parabolic interpolation. Returns
    ``converged=False`` if the iteration cap is hit first.
    """
    if tol_x <= 0:
        raise ValueError(f"tol_x must be positive, got {tol_x}")
    a, b = bracket.lo, bracket.hi
    x = w = v = bracket.mid
    fx = fw = fv = f(x)
    d = e = 0.0
    for it in range(1, max_iter + 1):
        m = 0.5 * (a + b)
        tol1 = 0.5 * tol_x
        tol2 = 2.0 * tol1
        if abs(x - m) <= tol2 - 0.5 * (b - a):
            return ExtremumResult(x, fx, it, True)
        use_golden = True
        if abs(e) > tol1:
            # trial parabolic fit through (v, w, x)
            r = (x - w) * (fx - fv)
            q = (x - v) * (fx - fw)
            p = (x - v) * q - (x - w) * r
            q = 2.0 * (q - r)
            if q > 0.0:
                p = -p
            q = abs(q)
            e_prev, e = e, d
            if abs(p) < abs(0.5 * q * e_prev) and q * (a - x) < p < q * (b - x):
                d = p / q
                u = x + d
                if u - a < tol2 or b - u < tol2:
                    d = tol1 if x < m else -tol1
                use_golden = False
        if use_golden:
            e = (b if x < m else a) - x
            d = _GOLDEN * e
        u = x + d if abs(d) >= tol1 else x + (tol1 if d > 0 else -tol1)
        fu = f(u)
        if fu <= fx:
            if u >= x:
                a = x
            else:
                b = x
            v, w, x = w, x, u
            fv, fw, fx = fw, fx, fu
        else:
            if u < x:
                a = u
            else:
                b = u
            if fu <= fw or w == x:
                v, w = w, u
                fv, fw = fw, fu
            elif fu <= fv or v == x or v == w:
                v, fv = u, fu
    return ExtremumResult(x, fx, max_iter, False)


def maximize_1d(f, bracket, tol_x=1e-10, max_iter=200):
    """Refine a maximum bracket; identical search applied to -f."""
    res = minimize_1d(lambda t: -f(t), bracket, tol_x=tol_x, max_iter=max_iter)
    return ExtremumResult(res.x, -res.fx, res.iterations, res.converged)


def _simpson(fa, fm, fb, h):
    return (h / 6.0) * (fa + 4.0 * fm + fb)


def integrate(f, a, b, rel_tol=1e-9, abs_tol=1e-300, max_depth=60):
    """Adaptive Simpson quadrature of f on [a, b].

    The estimated error is kept below max(rel_tol*|result|, abs_tol).
    Raises AccuracyError (carrying the best estimate) if the recursion
    depth cap is exceeded.
    """
    if not a < b:
        raise ValueError(f"need a < b, got {a}, {b}")
    if rel_tol <= 0 or abs_tol <= 0:
        raise ValueError("tolerances must be positive")
    m = 0.5 * (a + b)
    fa, fm, fb = f(a), f(m), f(b)
    whole = _simpson(fa, fm, fb, b - a)
    tol = max(abs_tol, rel_tol * abs(whole))
    failed_on = []

    def recurse(a, fa, m, fm, b, fb, whole, tol, depth):
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = _simpson(fa, flm, fm, m - a)
        right = _simpson(fm, frm, fb, b - m)
        delta = left + right - whole
        if abs(delta) <= 15.0 * tol:
            return left + right + delta / 15.0
        if depth >= max_depth:
            failed_on.append((a, b))
            return left + right + delta / 15.0
        half = 0.5 * tol
        return recurse(a, fa, lm, flm, m, fm, left, half, depth + 1) + recurse(
            m, fm, rm, frm, b, fb, right, half, depth + 1
        )

    total = recurse(a, fa, m, fm, b, fb, whole, tol, 0)
    if failed_on:
        lo, hi = failed_on[0]
        raise AccuracyError(
            f"adaptive quadrature exceeded depth {max_depth} on "
            f"{len(failed_on)} subinterval(s), first [{lo}, {hi}]",
            best_estimate=total,
        )
    return total


_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)


def _erf_series(x):
    # Maclaurin series of erf; used for |x| < 2 where it is well conditioned.
    term = x
    total = x
    n = 0
    x2 = x * x
    while True:
        n += 1
        term *= -x2 / n
        inc = term / (2 * n + 1)
        total += inc
        if abs(inc) <= 1e-18 * abs(total) or n > 200:
            return _TWO_OVER_SQRT_PI * total


def _erfc_cf(x):
    # Continued fraction erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + 1/2/(x + 1/(x + 3/2/(x + ...))))
    # evaluated by the modified Lentz algorithm; accurate for x >= 2.
    tiny = 1e-300
    f = x if x != 0 else tiny
    c = f
    d = 0.0
    n = 0
    while n < 300:
        n += 1
        a_n = 0.5 * n
        d = x + a_n * d
        if d == 0.0:
            d = tiny
        c = x + a_n / c
        if c == 0.0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-17:
            break
    return math.exp(-x * x) / (math.sqrt(math.pi) * f)


def erfc(x):
    """Complementary error function.

    Relative accuracy better than 1e-12 for |x| <= 10; underflows to 0
    (absolute error below 1e-300) for very large arguments.
    """
    if not math.isfinite(x):
        raise NumericalDomainError(f"erfc requires finite x, got {x}")
    if x < 0.0:
        return 2.0 - erfc(-x)
    if x < 2.0:
        return 1.0 - _erf_series(x)
    if x > 27.0:
        return 0.0
    return _erfc_cf(x)
