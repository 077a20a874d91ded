"""Flat heat kernels, their derivative polynomials, and the regularized propagator.

Sign conventions: the kernel solves d/dt K + D K = 0 with D the positive
Laplacian (-sum of second derivatives), and the true first derivative is

    dK_t/dx_i = -((x_i - y_i)/2t) K_t.

The source lemma for the derivative polynomials displays the opposite sign on
that atom; the combinatorial F-sequence sum is kept (and cross-checked) with
the corrected sign rather than patched silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "kernel_rn",
    "kernel_hn",
    "KernelDerivative",
    "derivative_poly",
    "derivative_poly_from_sequences",
    "propagator",
    "compositions",
]


def kernel_rn(t, x, y, n: int):
    """(4 pi t)^{-n/2} exp(-|x-y|^2/4t); x, y arrays of shape (..., n)."""
    if np.any(np.asarray(t) <= 0):
        raise ValueError("t must be positive")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    d2 = np.sum((x - y) ** 2, axis=-1)
    return (4 * math.pi * t) ** (-n / 2) * np.exp(-d2 / (4 * t))


def _reflect(y):
    y = np.array(y, dtype=float, copy=True)
    y[..., -1] = -y[..., -1]
    return y


def kernel_hn(t, x, y, n: int):
    """Dirichlet kernel on the upper half space by the method of images; the
    normal coordinate is the last one and must be nonnegative."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x[..., -1] < 0) or np.any(y[..., -1] < 0):
        raise ValueError("normal coordinates must be nonnegative on the half space")
    return kernel_rn(t, x, y, n) - kernel_rn(t, x, _reflect(y), n)


# ---------------------------------------------------------------------------
# derivative polynomials: d^k K / dx_i^k = P_{i,k}(delta, 1/t) K


@dataclass(frozen=True)
class KernelDerivative:
    """P_{i,k} as an exact polynomial in delta = x_i - y_i and tau = 1/t."""

    i: int
    k: int
    poly: tuple  # ((delta_pow, tau_pow, Fraction), ...) sorted

    def degree_in_inv_t(self) -> int:
        return max((tp for (_d, tp, _c) in self.poly), default=0)

    def leading_inv_t_term(self):
        """The monomial carrying the top 1/t power."""
        top = self.degree_in_inv_t()
        return tuple((d, tp, c) for (d, tp, c) in self.poly if tp == top)

    def eval_coeff(self, t, delta):
        return sum(float(c) * delta**d * (1.0 / t) ** tp for (d, tp, c) in self.poly)

    def eval(self, t, x, y, n: int, xi, yi):
        """Value of d^k K/dx_i^k at full points x, y (xi, yi their i-th coords)."""
        return self.eval_coeff(t, xi - yi) * kernel_rn(t, x, y, n)


def _poly_mul_atom(poly):
    """Multiply by the atom a = -delta*tau/2."""
    return {(d + 1, tp + 1): -c / 2 for (d, tp), c in poly.items()}


def _poly_diff_delta(poly):
    out = {}
    for (d, tp), c in poly.items():
        if d:
            out[(d - 1, tp)] = out.get((d - 1, tp), Fraction(0)) + c * d
    return out


def _poly_add(a, b):
    out = dict(a)
    for key, c in b.items():
        out[key] = out.get(key, Fraction(0)) + c
    return {k: v for k, v in out.items() if v}


def derivative_poly(i: int, k: int, max_order: int = 12) -> KernelDerivative:
    """P_{i,k} by direct recursion P_{k+1} = dP_k/d(delta) + a * P_k."""
    if k > max_order:
        raise ValueError(f"order {k} exceeds cap {max_order}")
    poly = {(0, 0): Fraction(1)}
    for _ in range(k):
        poly = _poly_add(_poly_diff_delta(poly), _poly_mul_atom(poly))
    items = tuple(sorted((d, tp, c) for (d, tp), c in poly.items()))
    return KernelDerivative(i, k, items)


def compositions(k: int):
    """All ordered tuples of positive integers summing to k."""
    if k == 0:
        yield ()
        return
    for first in range(1, k + 1):
        for rest in compositions(k - first):
            yield (first,) + rest


def _f_sequence_poly(s):
    """The nested alternating expression F_{s_1..s_k'} with the corrected atom:
    odd length starts with an atom power, even length with a derivative block."""
    if not s:
        return {(0, 0): Fraction(1)}
    if len(s) % 2 == 1:
        inner = _f_sequence_poly(s[1:])
        out = inner
        for _ in range(s[0]):
            out = _poly_mul_atom(out)
        return out
    inner = _f_sequence_poly(s[1:])
    out = inner
    for _ in range(s[0]):
        out = _poly_diff_delta(out)
    return out


def derivative_poly_from_sequences(i: int, k: int) -> KernelDerivative:
    """P_{i,k} as the sum over compositions of k of the F-sequence terms; the
    combinatorial cross-check for derivative_poly."""
    total: dict = {}
    for s in compositions(k):
        total = _poly_add(total, _f_sequence_poly(s))
    items = tuple(sorted((d, tp, c) for (d, tp), c in total.items()))
    return KernelDerivative(i, k, items)


# ---------------------------------------------------------------------------
# regularized propagator


def propagator(eps: float, L: float, x, y, n: int, geometry: str = "plane",
               rel_tol: float = 1e-10):
    """P_eps^L(x, y) = integral_eps^L K_t(x, y) dt by adaptive quadrature."""
    from scipy import integrate

    if not (0 < eps < L):
        raise ValueError("need 0 < eps < L")
    if geometry == "plane":
        f = lambda t: float(kernel_rn(t, x, y, n))
    elif geometry == "halfspace":
        f = lambda t: float(kernel_hn(t, x, y, n))
    else:
        raise ValueError(f"unknown geometry {geometry!r}")
    val, _err = integrate.quad(f, eps, L, epsabs=0.0, epsrel=rel_tol, limit=400)
    return val
