"""Gaussian moment engines.

Everything here evaluates integrals of monomials against exponentials of
quadratic forms: the 1D interval moments with boundary terms, the
inhomogeneous 1D generalization, pairing sums on R^n, the recursive
polytope reduction, and the compact-simplex integrals that appear on the
upper half space.

Exponent convention: the engine normalizes every quadratic form to
exp(-Q/2), i.e. the 1D atom is exp(-alpha*x^2/2 + beta*x).  Callers
working with exp(-a*x^2) forms supply alpha = 2a at the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

__all__ = [
    "WickDomainError",
    "SqrtValue",
    "WickDecomposition1D",
    "QuadraticFormND",
    "double_factorial",
    "wick_interval",
    "wick_r",
    "wick_rplus",
    "wick_general",
    "wick_general_symbolic",
    "wick_rn",
    "wick_polytope",
    "wick_simplex_pu",
    "pairings",
    "fraction_det",
    "fraction_inverse",
    "rank_one_update_det",
    "fourier_motzkin",
]

NEG_INF = float("-inf")
POS_INF = float("inf")


class WickDomainError(ValueError):
    """Parameters outside the integrable/valid domain (alpha <= 0, a > b, ...)."""


def double_factorial(n: int) -> int:
    """n!! with the conventions (-1)!! = 0!! = 1."""
    if n <= 0:
        return 1
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def _is_inf(x) -> bool:
    return isinstance(x, float) and math.isinf(x)


def _as_frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12)
    raise TypeError(f"expected rational-like, got {type(x)!r}")


# ---------------------------------------------------------------------------
# exact values of the form coef * sqrt(rad * pi**pi_pow)


@dataclass(frozen=True)
class SqrtValue:
    """Exact value coef * sqrt(rad * pi**pi_pow), coef/rad rational, rad > 0."""

    coef: Fraction
    rad: Fraction = Fraction(1)
    pi_pow: int = 0

    def __post_init__(self):
        if self.rad <= 0:
            raise ValueError("radicand must be positive")

    @staticmethod
    def zero() -> "SqrtValue":
        return SqrtValue(Fraction(0))

    def __float__(self) -> float:
        return float(self.coef) * math.sqrt(float(self.rad) * math.pi ** self.pi_pow)

    def to_mpf(self, dps: int = 50) -> mpmath.mpf:
        with mpmath.workdps(dps):
            return mpmath.mpf(self.coef.numerator) / self.coef.denominator * mpmath.sqrt(
                mpmath.mpf(self.rad.numerator) / self.rad.denominator * mpmath.pi ** self.pi_pow
            )

    def __mul__(self, other):
        if isinstance(other, SqrtValue):
            return SqrtValue(self.coef * other.coef, self.rad * other.rad,
                             self.pi_pow + other.pi_pow)
        return SqrtValue(self.coef * _as_frac(other), self.rad, self.pi_pow)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SqrtValue):
            return NotImplemented
        if self.coef == 0 or other.coef == 0:
            return self.coef == other.coef
        return (
            (self.coef > 0) == (other.coef > 0)
            and self.pi_pow == other.pi_pow
            and self.coef**2 * self.rad == other.coef**2 * other.rad
        )

    def __hash__(self):
        if self.coef == 0:
            return hash(0)
        return hash((self.coef > 0, self.pi_pow, self.coef**2 * self.rad))


# ---------------------------------------------------------------------------
# numeric atoms I0 and J


def _to_mpf(x) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def _erf(x, prec=None):
    if prec is None:
        if _is_inf(x):
            return 1.0 if x > 0 else -1.0
        return math.erf(x)
    with mpmath.workdps(prec):
        return mpmath.erf(x)


def _i0_numeric(alpha, beta, a, b, prec=None):
    """integral_a^b exp(-alpha x^2/2 + beta x) dx for alpha > 0."""
    if prec is None:
        alpha_f, beta_f = float(alpha), float(beta)
        sq = math.sqrt(alpha_f / 2.0)
        shift = beta_f / alpha_f
        amp = math.exp(beta_f**2 / (2 * alpha_f)) * math.sqrt(math.pi / (2 * alpha_f))
        lo = -1.0 if _is_inf(a) and a < 0 else _erf(sq * (float(a) - shift))
        hi = 1.0 if _is_inf(b) and b > 0 else _erf(sq * (float(b) - shift))
        return amp * (hi - lo)
    with mpmath.workdps(prec):
        alpha_f, beta_f = _to_mpf(alpha), _to_mpf(beta)
        sq = mpmath.sqrt(alpha_f / 2)
        shift = beta_f / alpha_f
        amp = mpmath.exp(beta_f**2 / (2 * alpha_f)) * mpmath.sqrt(mpmath.pi / (2 * alpha_f))
        lo = mpmath.mpf(-1) if _is_inf(a) and a < 0 else mpmath.erf(sq * (_to_mpf(a) - shift))
        hi = mpmath.mpf(1) if _is_inf(b) and b > 0 else mpmath.erf(sq * (_to_mpf(b) - shift))
        return amp * (hi - lo)


def _j_numeric(m, alpha, beta, endpoint, prec=None):
    """x^m exp(-alpha x^2/2 + beta x) at one endpoint; infinite endpoints give 0
    by rule when alpha > 0 (no reliance on floating underflow)."""
    if _is_inf(endpoint):
        if alpha > 0:
            return 0.0 if prec is None else mpmath.mpf(0)
        if alpha == 0 and (beta * (1 if endpoint > 0 else -1)) < 0:
            return 0.0 if prec is None else mpmath.mpf(0)
        raise WickDomainError("divergent boundary term: alpha <= 0 with infinite endpoint")
    if prec is None:
        x = float(endpoint)
        return x**m * math.exp(-float(alpha) * x**2 / 2 + float(beta) * x)
    with mpmath.workdps(prec):
        x = _to_mpf(endpoint)
        return x**m * mpmath.exp(-_to_mpf(alpha) * x**2 / 2 + _to_mpf(beta) * x)


# ---------------------------------------------------------------------------
# Wick on an interval: I_{m,alpha}(a,b) decomposed over I0 and J_l atoms


@dataclass(frozen=True)
class WickDecomposition1D:
    """I_{m,alpha}(a,b) = i0_coefficient * I_{0,alpha}(a,b)
                          + sum over (l, c) in boundary_terms of c * J_{l,alpha}(a,b).

    i0_coefficient is C_m / alpha^{m/2} (zero for odd m, (m-1)!! for even m);
    boundary powers l have parity opposite to m and l < m.
    """

    m: int
    alpha: Fraction
    i0_coefficient: Fraction
    boundary_terms: tuple  # ((l, coefficient), ...)

    def value(self, a, b, prec=None):
        if a > b:
            raise WickDomainError("a > b")
        if prec is None:
            total = float(self.i0_coefficient) * _i0_numeric(self.alpha, 0, a, b)
            for l, c in self.boundary_terms:
                jv = _j_numeric(l, self.alpha, 0, b) - _j_numeric(l, self.alpha, 0, a)
                total += float(c) * jv
            return total
        with mpmath.workdps(prec):
            total = _to_mpf(self.i0_coefficient) * _i0_numeric(self.alpha, 0, a, b, prec=prec)
            for l, c in self.boundary_terms:
                jv = _j_numeric(l, self.alpha, 0, b, prec=prec) - _j_numeric(l, self.alpha, 0, a, prec=prec)
                total += _to_mpf(c) * jv
            return total


def wick_interval(m: int, alpha, a, b, prec=None):
    """Moments of exp(-alpha x^2/2) over (a, b): returns (decomposition, value)."""
    if m < 0:
        raise WickDomainError("m must be nonnegative")
    alpha = _as_frac(alpha)
    if alpha <= 0:
        raise WickDomainError("alpha must be positive")
    if a > b:
        raise WickDomainError("a > b")
    if m % 2 == 0:
        i0c = Fraction(double_factorial(m - 1)) / alpha ** (m // 2)
    else:
        i0c = Fraction(0)
    terms = []
    dblm = double_factorial(m - 1)
    for i in range((m - 1) // 2 + 1):
        l = m - 1 - 2 * i
        ctil = Fraction(dblm, double_factorial(m - 1 - 2 * i))
        terms.append((l, -ctil / alpha ** (i + 1)))
    dec = WickDecomposition1D(m, alpha, i0c, tuple(terms))
    return dec, dec.value(a, b, prec=prec)


def wick_r(m: int, alpha) -> SqrtValue:
    """Closed form on the whole line: sqrt(2 pi) (2k)!/(k! 2^k) alpha^{-(2k+1)/2} for m = 2k, else 0."""
    alpha = _as_frac(alpha)
    if alpha <= 0:
        raise WickDomainError("alpha must be positive")
    if m % 2 == 1:
        return SqrtValue.zero()
    k = m // 2
    return SqrtValue(Fraction(double_factorial(m - 1)) / alpha**k, Fraction(2) / alpha, 1)


def wick_rplus(m: int, alpha) -> SqrtValue:
    """Closed form on (0, inf): half the line value for even m, 2^k k! / alpha^{k+1} for m = 2k+1."""
    alpha = _as_frac(alpha)
    if alpha <= 0:
        raise WickDomainError("alpha must be positive")
    if m % 2 == 0:
        full = wick_r(m, alpha)
        return SqrtValue(full.coef / 2, full.rad, full.pi_pow)
    k = (m - 1) // 2
    return SqrtValue(Fraction(2**k * math.factorial(k)) / alpha ** (k + 1))


# ---------------------------------------------------------------------------
# generalized (inhomogeneous) 1D moments


def _symbolic_recursion(m: int, alpha: Fraction, beta: Fraction) -> dict:
    """Coefficients over the atoms {('I0',), ('J', l)} via the three-term recursion."""
    table = [dict() for _ in range(m + 1)]
    table[0] = {("I0",): Fraction(1)}
    if m >= 1:
        table[1] = {k: v for k, v in
                    {("J", 0): -1 / alpha, ("I0",): beta / alpha}.items() if v != 0}
    for j in range(2, m + 1):
        out: dict = {("J", j - 1): -1 / alpha}
        for key, c in table[j - 1].items():
            out[key] = out.get(key, Fraction(0)) + beta / alpha * c
        for key, c in table[j - 2].items():
            out[key] = out.get(key, Fraction(0)) + Fraction(j - 1) / alpha * c
        table[j] = {k: v for k, v in out.items() if v != 0}
    return table[m]


def _symbolic_closed_form(m: int, alpha: Fraction, beta: Fraction) -> dict:
    """Same coefficients via the sum over {1,2}-sequences, evaluated by dynamic
    programming over the prefix sum (the raw sum is exponential in m)."""
    out: dict = {}
    # boundary part: sequences with sum i, step 1 contributes beta/alpha, step 2
    # at prefix sum s contributes (m - 1 + s - i)/alpha; one extra 1/alpha overall
    for i in range(m):
        dp = [Fraction(0)] * (i + 1)
        dp[0] = Fraction(1)
        for s in range(1, i + 1):
            acc = dp[s - 1] * beta / alpha
            if s >= 2:
                acc += dp[s - 2] * Fraction(m - 1 + s - i) / alpha
            dp[s] = acc
        coeff = -dp[i] / alpha
        if coeff != 0:
            key = ("J", m - i - 1)
            out[key] = out.get(key, Fraction(0)) + coeff
    # I0 part: sequences with sum m, step 2 at prefix sum s contributes (s-1)/alpha
    dp = [Fraction(0)] * (m + 1)
    dp[0] = Fraction(1)
    for s in range(1, m + 1):
        acc = dp[s - 1] * beta / alpha
        if s >= 2:
            acc += dp[s - 2] * Fraction(s - 1) / alpha
        dp[s] = acc
    if dp[m] != 0:
        out[("I0",)] = dp[m]
    return {k: v for k, v in out.items() if v != 0}


def wick_general_symbolic(m: int, alpha, beta, method: str = "both") -> dict:
    """Atom decomposition of I_{m,alpha,beta}; 'both' asserts recursion == closed form."""
    alpha = _as_frac(alpha)
    beta = _as_frac(beta)
    if alpha <= 0:
        raise WickDomainError("alpha must be positive")
    if method == "recursion":
        return _symbolic_recursion(m, alpha, beta)
    if method == "closed":
        return _symbolic_closed_form(m, alpha, beta)
    rec = _symbolic_recursion(m, alpha, beta)
    clo = _symbolic_closed_form(m, alpha, beta)
    if rec != clo:
        raise AssertionError(f"recursion/closed-form mismatch at m={m}: {rec} vs {clo}")
    return rec


def _poly_exp_integral(m: int, beta, a, b, prec=None):
    """integral_a^b x^m exp(beta x) dx, needed when the quadratic part degenerates."""
    if _is_inf(a) or _is_inf(b):
        bf = float(beta)
        if not ((not _is_inf(a) or bf > 0) and (not _is_inf(b) or bf < 0)):
            raise WickDomainError("divergent: alpha = 0 with non-damped infinite endpoint")
    if beta == 0:
        if _is_inf(a) or _is_inf(b):
            raise WickDomainError("divergent: alpha = beta = 0 on unbounded interval")
        if prec is None:
            av, bv = float(a), float(b)
            return (bv ** (m + 1) - av ** (m + 1)) / (m + 1)
        with mpmath.workdps(prec):
            return (_to_mpf(b) ** (m + 1) - _to_mpf(a) ** (m + 1)) / (m + 1)

    def anti(x):
        # e^{beta x} * sum_j (-1)^j m!/(m-j)! x^{m-j} / beta^{j+1}
        if _is_inf(x):
            return 0.0 if prec is None else mpmath.mpf(0)
        if prec is None:
            xb, bb = float(x), float(beta)
            s = 0.0
            c = 1.0
            for j in range(m + 1):
                s += ((-1) ** j) * c * xb ** (m - j) / bb ** (j + 1)
                c *= m - j
            return math.exp(bb * xb) * s
        with mpmath.workdps(prec):
            xb, bb = _to_mpf(x), _to_mpf(beta)
            s = mpmath.mpf(0)
            c = mpmath.mpf(1)
            for j in range(m + 1):
                s += ((-1) ** j) * c * xb ** (m - j) / bb ** (j + 1)
                c *= m - j
            return mpmath.exp(bb * xb) * s

    return anti(b) - anti(a)


def wick_general(m: int, alpha, beta, a, b, method: str = "both", prec=None):
    """integral_a^b x^m exp(-alpha x^2/2 + beta x) dx.

    alpha > 0 uses the symbolic decomposition (recursion and closed form agree
    exactly); alpha = 0 needs a damped or finite interval.
    """
    if a > b:
        raise WickDomainError("a > b")
    if alpha == 0:
        return _poly_exp_integral(m, beta, a, b, prec=prec)
    alpha = _as_frac(alpha)
    beta = _as_frac(beta)
    if alpha < 0:
        raise WickDomainError("alpha must be nonnegative")
    coeffs = wick_general_symbolic(m, alpha, beta, method=method)

    def accumulate():
        total = 0.0 if prec is None else mpmath.mpf(0)
        for key, c in coeffs.items():
            cf = float(c) if prec is None else _to_mpf(c)
            if key == ("I0",):
                total += cf * _i0_numeric(alpha, beta, a, b, prec=prec)
            else:
                _, l = key
                jv = _j_numeric(l, alpha, beta, b, prec=prec) - _j_numeric(l, alpha, beta, a, prec=prec)
                total += cf * jv
        return total

    if prec is None:
        return accumulate()
    with mpmath.workdps(prec):
        return accumulate()


# ---------------------------------------------------------------------------
# exact rational linear algebra (small matrices)


def fraction_det(mat: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(mat)
    a = [[_as_frac(x) for x in row] for row in mat]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def fraction_inverse(mat: Sequence[Sequence[Fraction]]):
    n = len(mat)
    a = [[_as_frac(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise WickDomainError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def rank_one_update_det(a_diag, alpha_n, d):
    """det(A + alpha_n d d^T) two ways for diagonal A: by direct elimination and
    by det(A)(1 + alpha_n d^T A^{-1} d); both exact rationals, asserted equal."""
    n = len(d)
    a_diag = [_as_frac(x) for x in a_diag]
    alpha_n = _as_frac(alpha_n)
    d = [_as_frac(x) for x in d]
    full = [[(a_diag[i] if i == j else Fraction(0)) + alpha_n * d[i] * d[j]
             for j in range(n)] for i in range(n)]
    direct = fraction_det(full)
    via_identity = math.prod(a_diag, start=Fraction(1)) * (
        1 + alpha_n * sum(d[i] * d[i] / a_diag[i] for i in range(n))
    )
    if direct != via_identity:
        raise AssertionError("rank-one determinant identity failed")
    return direct


# ---------------------------------------------------------------------------
# Wick's theorem on R^n


@dataclass(frozen=True)
class QuadraticFormND:
    """Q(x) = <x, A x> (+ <b, x> + c).  A is checked for exact symmetry; the
    nondegeneracy flag is computed, never assumed."""

    matrix: tuple
    linear: tuple | None = None
    constant: Fraction = Fraction(0)

    @staticmethod
    def from_rows(rows, linear=None, constant=0) -> "QuadraticFormND":
        mat = tuple(tuple(_as_frac(x) for x in row) for row in rows)
        n = len(mat)
        for row in mat:
            if len(row) != n:
                raise ValueError("matrix must be square")
        for i in range(n):
            for j in range(n):
                if mat[i][j] != mat[j][i]:
                    raise ValueError("matrix must be exactly symmetric")
        lin = tuple(_as_frac(x) for x in linear) if linear is not None else None
        return QuadraticFormND(mat, lin, _as_frac(constant))

    @property
    def n(self) -> int:
        return len(self.matrix)

    @property
    def nondegenerate(self) -> bool:
        return fraction_det(self.matrix) != 0

    def is_positive_definite(self) -> bool:
        # leading principal minors, exact
        for k in range(1, self.n + 1):
            if fraction_det([row[:k] for row in self.matrix[:k]]) <= 0:
                return False
        return True


def pairings(indices: Sequence[int]):
    """All partitions of a list of slots into unordered pairs (by slot position)."""
    idx = list(range(len(indices)))

    def rec(rest):
        if not rest:
            yield []
            return
        first, rest = rest[0], rest[1:]
        for i in range(len(rest)):
            for tail in rec(rest[:i] + rest[i + 1:]):
                yield [(first, rest[i])] + tail

    yield from rec(idx)


def wick_rn(form: QuadraticFormND | Sequence[Sequence], monomial: Sequence[int]) -> SqrtValue:
    """integral_{R^n} x_{m_1} ... x_{m_k} exp(-<x,Ax>/2) dx as the pairing sum
    (sqrt((2 pi)^n / det A)) * sum over pairings of products of A^{-1} entries."""
    if not isinstance(form, QuadraticFormND):
        form = QuadraticFormND.from_rows(form)
    if form.linear is not None or form.constant != 0:
        raise WickDomainError("wick_rn takes a homogeneous form")
    if not form.is_positive_definite():
        raise WickDomainError("form must be positive definite")
    n = form.n
    k = len(monomial)
    for m in monomial:
        if not 0 <= m < n:
            raise WickDomainError("monomial index out of range")
    det = fraction_det(form.matrix)
    if k % 2 == 1:
        return SqrtValue.zero()
    inv = fraction_inverse(form.matrix)
    total = Fraction(0)
    for pr in pairings(monomial):
        prod = Fraction(1)
        for i, j in pr:
            prod *= inv[monomial[i]][monomial[j]]
        total += prod
    return SqrtValue(total, Fraction(2**n) / det, n)


# ---------------------------------------------------------------------------
# polytopes: recursive reduction, innermost variable analytic


def fourier_motzkin(halfspaces, var: int):
    """Eliminate variable `var` from a list of (coeffs, const) constraints
    sum_i c_i x_i <= const.  Returns constraints on the remaining variables
    (same indexing, with coefficient 0 at `var`)."""
    uppers, lowers, rest = [], [], []
    for coeffs, const in halfspaces:
        c = coeffs[var]
        if c > 0:
            uppers.append((coeffs, const))
        elif c < 0:
            lowers.append((coeffs, const))
        else:
            rest.append((coeffs, const))
    out = list(rest)
    for cu, du in uppers:
        for cl, dl in lowers:
            s, t = cu[var], -cl[var]
            coeffs = tuple(t * a + s * b for a, b in zip(cu, cl))
            out.append((coeffs, t * du + s * dl))
    return out


def _var_bounds(halfspaces, var, point):
    """Numeric (lo, hi) for x_var given the values of the other variables."""
    lo, hi = NEG_INF, POS_INF
    for coeffs, const in halfspaces:
        c = coeffs[var]
        if c == 0:
            continue
        acc = float(const) - sum(float(coeffs[i]) * point[i] for i in range(len(point)) if i != var and coeffs[i])
        bound = acc / float(c)
        if c > 0:
            hi = min(hi, bound)
        else:
            lo = max(lo, bound)
    return lo, hi


def wick_polytope(alphas, halfspaces, monomial, rel_tol: float = 1e-10) -> float:
    """integral_P x^monomial exp(-sum_i alpha_i x_i^2 / 2) dx over the polytope
    {x : <c, x> <= d for (c, d) in halfspaces}.

    The last variable is integrated in closed form (wick_interval atoms with
    piecewise-linear bounds); outer variables by adaptive quadrature over the
    Fourier--Motzkin projections.  Separable (box) constraints short-circuit to
    the exact product of 1D values.
    """
    from scipy import integrate

    n = len(alphas)
    if len(monomial) != n:
        raise WickDomainError("monomial length must match dimension")
    for a in alphas:
        if a < 0:
            raise WickDomainError("alphas must be nonnegative")

    if all(sum(1 for c in coeffs if c != 0) <= 1 for coeffs, _ in halfspaces):
        # box: exact separable product
        out = 1.0
        for i in range(n):
            lo, hi = NEG_INF, POS_INF
            for coeffs, const in halfspaces:
                if coeffs[i] > 0:
                    hi = min(hi, float(const) / float(coeffs[i]))
                elif coeffs[i] < 0:
                    lo = max(lo, float(const) / float(coeffs[i]))
            if lo > hi:
                return 0.0
            if alphas[i] == 0:
                out *= _poly_exp_integral(monomial[i], 0, lo, hi)
            else:
                out *= wick_interval(monomial[i], alphas[i], lo, hi)[1]
        return out

    # precompute the projection chain: chain[j] constrains variables 0..j
    chain = [list(halfspaces)]
    for var in range(n - 1, 0, -1):
        chain.append(fourier_motzkin(chain[-1], var))
    chain.reverse()  # chain[j] involves variables 0..j

    def level(j, point):
        lo, hi = _var_bounds(chain[j], j, point + [0.0] * (n - len(point)))
        if lo > hi:
            return 0.0
        if j == n - 1:
            if alphas[j] == 0:
                if _is_inf(lo) or _is_inf(hi):
                    raise WickDomainError("unbounded face with degenerate induced form")
                return _poly_exp_integral(monomial[j], 0, lo, hi)
            return wick_interval(monomial[j], alphas[j], lo, hi)[1]
        if alphas[j] == 0 and (_is_inf(lo) or _is_inf(hi)):
            raise WickDomainError("unbounded face with degenerate induced form")

        def f(x):
            w = math.exp(-float(alphas[j]) * x * x / 2) * x ** monomial[j]
            return w * level(j + 1, point + [x])

        val, _ = integrate.quad(f, lo, hi, epsabs=1e-14, epsrel=rel_tol, limit=200)
        return val

    return level(0, [])


# ---------------------------------------------------------------------------
# compact simplex P_u (upper-half-space counterterms)


def wick_simplex_pu(a, b, u, kprime, rel_tol: float = 1e-10, prec=None):
    """integral_{P_u} exp(-Q(z,u)) z^kprime dz with
    Q(z, u) = sum_{ij} a[i][j] z_i z_j + sum_i b[i] u z_i over the simplex

        -u <= z_1 <= (m-1) u,   z_{j-1} - u <= z_j <= (m-j) u,

    m = len(kprime) + 1.  The homogeneous part may be degenerate (the domain is
    compact).  Note the exp(-Q) convention here follows the source form; the 1D
    engine's alpha is 2*a_ii.
    """
    from scipy import integrate

    if u <= 0:
        raise WickDomainError("u must be positive")
    mdim = len(kprime)  # z-dimension = |V| - 1
    if mdim == 0:
        return 1.0 if prec is None else mpmath.mpf(1)
    a = [[_as_frac(x) for x in row] for row in a]
    b = [_as_frac(x) for x in b]
    for i in range(mdim):
        for j in range(mdim):
            if a[i][j] != a[j][i]:
                raise WickDomainError("a must be symmetric")

    def bounds(j, z):
        lo = z[j - 1] - u if j > 0 else -u
        hi = (mdim - j) * u
        return lo, hi

    def inner(j, z, prefix_exp):
        lo, hi = bounds(j, z)
        if lo > hi:
            return 0.0 if prec is None else mpmath.mpf(0)
        alpha = 2 * a[j][j]
        beta = -(b[j] * _as_frac(u) + 2 * sum(a[i][j] * _as_frac(z[i]) for i in range(j)))
        if j == mdim - 1:
            val = wick_general(kprime[j], alpha, beta, lo, hi, method="recursion", prec=prec)
            return prefix_exp * val

        def f(x):
            w = math.exp(-float(alpha) * x * x / 2 + float(beta) * x) * x ** kprime[j]
            return w * inner(j + 1, z + [x], 1.0)

        val, _ = integrate.quad(f, float(lo), float(hi), epsabs=1e-14, epsrel=rel_tol, limit=200)
        return prefix_exp * val

    return inner(0, [], 1.0 if prec is None else mpmath.mpf(1))
