"""Compactly supported test fields with exactly computable derivatives.

Each 1D factor is a polynomial times (1-x^2)^q on its support interval and
zero outside, giving a C^{q-1} function whose derivatives, Taylor
coefficients, and integrals are exact rational arithmetic.  n-dimensional
fields are products of 1D factors, so everything factorizes per coordinate.

The error-bound machinery needs C^p norms with p up to ~10, so q = 12 by
default; Taylor remainders beyond order q - 1 are meaningless and the field
classes refuse them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = ["PiecewisePoly1D", "TestField", "field_library", "bump_poly", "poly_mul"]


def poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return out


def _poly_pow(a, n):
    out = [Fraction(1)]
    for _ in range(n):
        out = poly_mul(out, a)
    return out


def _poly_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    return [x + (b[i] if i < len(b) else Fraction(0)) for i, x in enumerate(a)]


def _poly_compose_affine(p, a, b):
    """p(a*x + b) coefficients."""
    out = [Fraction(0)]
    powe = [Fraction(1)]  # (a x + b)^j
    for c in p:
        out = _poly_add(out, [x * c for x in powe])
        powe = poly_mul(powe, [b, a])
    return out


@dataclass(frozen=True)
class PiecewisePoly1D:
    """P(x) on the open interval (lo, hi), zero outside; C^{smoothness} overall."""

    coeffs: tuple
    lo: Fraction
    hi: Fraction
    smoothness: int

    def eval_float(self, x):
        x = np.asarray(x, dtype=float)
        inside = (x > float(self.lo)) & (x < float(self.hi))
        acc = np.zeros_like(x)
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return np.where(inside, acc, 0.0)

    def eval_exact(self, x: Fraction) -> Fraction:
        if not (self.lo < x < self.hi):
            return Fraction(0)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "PiecewisePoly1D":
        if self.smoothness < 1:
            raise ValueError("derivative would not be continuous")
        d = tuple(c * (i + 1) for i, c in enumerate(self.coeffs[1:]))
        return PiecewisePoly1D(d if d else (Fraction(0),), self.lo, self.hi,
                               self.smoothness - 1)

    def taylor_at(self, x0: Fraction, order: int):
        """Exact coefficients c_j with P(x) = sum c_j (x - x0)^j on the support
        piece containing x0.  Orders beyond the smoothness budget are exact for
        the polynomial piece but say nothing across the support boundary;
        truncation-error bounds must respect `smoothness` separately."""
        # shift: evaluate successive derivatives / j!
        out = []
        cur = list(self.coeffs)
        fact = 1
        for j in range(order + 1):
            acc = Fraction(0)
            for c in reversed(cur):
                acc = acc * x0 + c
            out.append(acc / fact if self.lo < x0 < self.hi else Fraction(0))
            cur = [c * (i + 1) for i, c in enumerate(cur[1:])]
            fact *= j + 1
        return out

    def poly_degree(self) -> int:
        return max((i for i, c in enumerate(self.coeffs) if c), default=0)

    def integral(self) -> Fraction:
        """Exact integral over the support."""
        total = Fraction(0)
        for i, c in enumerate(self.coeffs):
            total += c * (self.hi ** (i + 1) - self.lo ** (i + 1)) / (i + 1)
        return total

    def moment(self, k: int) -> Fraction:
        """Exact integral of x^k P(x) over the support."""
        total = Fraction(0)
        for i, c in enumerate(self.coeffs):
            total += c * (self.hi ** (i + k + 1) - self.lo ** (i + k + 1)) / (i + k + 1)
        return total

    def sup_norm(self, order: int = 0, grid: int = 4001) -> float:
        p = self
        for _ in range(order):
            p = p.derivative()
        xs = np.linspace(float(p.lo), float(p.hi), grid)[1:-1]
        return float(np.max(np.abs(p.eval_float(xs))))


def bump_poly(p_coeffs, q: int = 12, support=(-1, 1)) -> PiecewisePoly1D:
    """p(s) * (1 - s^2)^q mapped affinely from s in (-1,1) onto the support."""
    lo, hi = Fraction(support[0]), Fraction(support[1])
    base = poly_mul([Fraction(c) for c in p_coeffs],
                    _poly_pow([Fraction(1), Fraction(0), Fraction(-1)], q))
    # substitute s = (2x - lo - hi)/(hi - lo)
    a = Fraction(2) / (hi - lo)
    b = -(lo + hi) / (hi - lo)
    coeffs = _poly_compose_affine(base, a, b)
    return PiecewisePoly1D(tuple(coeffs), lo, hi, q - 1)


@dataclass(frozen=True)
class TestField:
    """Product field: phi(x) = prod_axes factor_i(x_i)."""

    name: str
    axes: tuple

    @property
    def n(self) -> int:
        return len(self.axes)

    def eval_float(self, pts):
        pts = np.asarray(pts, dtype=float)
        out = np.ones(pts.shape[:-1])
        for i, ax in enumerate(self.axes):
            out = out * ax.eval_float(pts[..., i])
        return out

    def derivative(self, multi_index) -> "TestField":
        axes = []
        for ax, k in zip(self.axes, multi_index):
            for _ in range(k):
                ax = ax.derivative()
            axes.append(ax)
        return TestField(self.name + "'" , tuple(axes))

    def c_norm(self, p: int) -> float:
        """max over |I| <= p of sup |d^I phi| (product structure)."""
        per_axis = [[ax.sup_norm(j) for j in range(p + 1)] for ax in self.axes]
        best = 0.0
        import itertools
        for orders in itertools.product(range(p + 1), repeat=self.n):
            if sum(orders) > p:
                continue
            val = 1.0
            for i, j in enumerate(orders):
                val *= per_axis[i][j]
            best = max(best, val)
        return best

    def smoothness(self) -> int:
        return min(ax.smoothness for ax in self.axes)


_FACTOR_SPECS = [
    ("f0", [Fraction(1)]),
    ("f1", [Fraction(0), Fraction(1)]),
    ("f2", [Fraction(1), Fraction(1, 2)]),
    ("f3", [Fraction(-1, 3), Fraction(0), Fraction(1)]),
    ("f4", [Fraction(1, 2), Fraction(-1), Fraction(0), Fraction(1, 6)]),
]


def field_library(n: int, geometry: str = "plane", q: int = 12):
    """Five fields; for the half space the normal (last) axis is supported on
    (0, 1), tangential axes on (-1, 1)."""
    out = {}
    for idx, (name, _p) in enumerate(_FACTOR_SPECS):
        axes = []
        for axis in range(n):
            spec = _FACTOR_SPECS[(idx + axis) % len(_FACTOR_SPECS)][1]
            if geometry == "halfspace" and axis == n - 1:
                axes.append(bump_poly(spec, q=q, support=(0, 1)))
            else:
                axes.append(bump_poly(spec, q=q, support=(-1, 1)))
        out[name] = TestField(name, tuple(axes))
    return out
