"""Adaptive Gauss-Legendre quadrature on finite and half-infinite intervals.

Spectral integrals here have smooth integrands with an exponentially small
tail of the form ``C t**p exp(-pi t)``; :func:`integrate_exp_tail` cuts the
half-line where the modelled tail drops below tolerance and adds the model's
remainder.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import QuadratureError

__all__ = ["integrate", "integrate_exp_tail", "exp_tail_cutoff"]


_MIN_TOL = 1e-15


@lru_cache(maxsize=8)
def _rule(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _panel(f, a, b, order):
    x, w = _rule(order)
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    vals = np.asarray(f(mid + half * x))
    return half * np.tensordot(w, vals, axes=(0, 0))


def integrate(f, a: float, b: float, tol: float = 1e-12, order: int = 16, max_panels: int = 4000):
    """Integrate a vectorized ``f`` over ``[a, b]`` by panel bisection.

    Each panel's Gauss-Legendre value is compared against the sum over its
    two halves; a panel is accepted once the difference is within its share
    of ``tol * max(1, |integral|)``.  ``f`` maps an array of nodes to an
    array of values (real or complex, optionally with trailing axes).

    Returns
    -------
    value, error_estimate
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise QuadratureError("integrate needs finite limits")
    if not tol >= _MIN_TOL:
        raise QuadratureError(f"tolerance {tol:g} is below what double precision can resolve")
    if a == b:
        return 0.0 * _panel(f, a, a + 1.0, order), 0.0
    whole = _panel(f, a, b, order)
    stack = [(a, b, whole)]
    total = 0.0 * whole
    err_total = 0.0
    length = abs(b - a)
    scale = max(1.0, float(np.max(np.abs(whole))))
    panels = 0
    while stack:
        lo, hi, coarse = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _panel(f, lo, mid, order)
        right = _panel(f, mid, hi, order)
        fine = left + right
        err = float(np.max(np.abs(fine - coarse)))
        panels += 1
        if err <= tol * scale * abs(hi - lo) / length or abs(hi - lo) < 1e-12 * length:
            total = total + fine
            err_total += err
            continue
        if panels > max_panels:
            raise QuadratureError(f"adaptive quadrature exceeded {max_panels} panels")
        stack.append((mid, hi, right))
        stack.append((lo, mid, left))
    return total, err_total


def exp_tail_cutoff(g, power: float, tol: float, start: float = 4.0, rate: float = math.pi):
    """Cut-off T and tail estimate for ``int_T^inf g`` with ``g ~ C t^power e^{-rate t}``.

    ``g`` is evaluated at scalar points.  T is increased until the modelled
    tail ``|g(T)| / (rate - power/T)`` drops below ``tol``.
    """
    t = max(start, 2.0 * max(power, 0.0) / rate + 1.0)
    for _ in range(200):
        gt = g(t)
        decay = rate - power / t
        if decay > 0.5 * rate:
            tail = gt / decay
            if np.max(np.abs(tail)) <= tol:
                return t, tail
        t *= 1.25
    raise QuadratureError("no cut-off found for the exponential tail")


def integrate_exp_tail(f, power: float, tol: float = 1e-12, rate: float = math.pi, order: int = 16):
    """Integrate ``f`` over ``[0, inf)`` for an integrand with an exponential tail.

    ``f`` is vectorized; the tail beyond the cut-off is added from the model
    ``C t^power e^{-rate t}``.
    """
    if not tol >= _MIN_TOL:
        raise QuadratureError(f"tolerance {tol:g} is below what double precision can resolve")
    cut, tail = exp_tail_cutoff(lambda t: f(np.array([t]))[0], power, 1e-3 * tol, rate=rate)
    # fixed-width blocks keep panel scales comparable along the decaying tail
    edges = np.unique(np.concatenate([np.arange(0.0, cut, 2.0), [cut]]))
    total, err = 0.0, 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, e = integrate(f, float(lo), float(hi), tol=tol, order=order)
        total = total + val
        err += e
    return total + tail, err + float(np.max(np.abs(tail)))
