"""Finite-dimensional toy model of the graph expansion.

Functionals are polynomials in d variables with exact rational coefficients,
graded by powers of hbar.  V(P, I) = exp(hbar d_P) exp(I/hbar) genuinely
contains negative hbar powers, so truncation cannot cut on the hbar power
alone: the multiplicatively consistent filter is the charge c = 2h + deg
(additive, invariant under hbar*d_P, and nonnegative on everything generated
from O+ functionals).  Windows therefore carry (degree_max, charge_max), and
hbar cuts are applied only when *viewing* coefficients.

The graph sum V(P,I) = sum over stable graphs of hbar^{g-C} w_gamma / |Aut|
is checked exactly against the direct expansion; disconnected graphs enter as
multisets of connected ones with the k! |Aut|^k multiplicities.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import graphs as graphlib

__all__ = [
    "Window",
    "FormalFunctional",
    "ToyPropagator",
    "contract",
    "v_direct",
    "v_graphs",
    "w_graphs",
    "w_gamma_finite",
    "expansion_graph_set",
]


class ExpansionError(ValueError):
    pass


@dataclass(frozen=True)
class Window:
    """Truncation window: keep charge c = 2h + deg up to charge_max.

    Charge is the only cut applied during arithmetic: it is additive under
    multiplication (and all factors built from O+ data have nonnegative
    charge), and invariant under hbar*d_P.  Cutting on degree would lose
    terms, since d_P maps high-degree terms back into any degree window.
    Within charge <= C everything is intrinsically finite (h >= -C,
    deg <= 3C).  hbar/degree restrictions are view-level filters.
    """

    d: int
    charge_max: int

    def keeps(self, h: int, deg: int) -> bool:
        return 2 * h + deg <= self.charge_max


@dataclass(frozen=True)
class ToyPropagator:
    matrix: tuple  # symmetric d x d of Fractions

    @staticmethod
    def from_rows(rows) -> "ToyPropagator":
        mat = tuple(tuple(Fraction(x) for x in row) for row in rows)
        for i in range(len(mat)):
            for j in range(len(mat)):
                if mat[i][j] != mat[j][i]:
                    raise ExpansionError("propagator must be exactly symmetric")
        return ToyPropagator(mat)

    @property
    def d(self) -> int:
        return len(self.matrix)

    def __add__(self, other: "ToyPropagator") -> "ToyPropagator":
        return ToyPropagator(tuple(tuple(a + b for a, b in zip(r1, r2))
                                   for r1, r2 in zip(self.matrix, other.matrix)))


class FormalFunctional:
    """Truncated element of O(E)((hbar)): {(h, monomial): coefficient}."""

    __slots__ = ("window", "terms")

    def __init__(self, window: Window, terms=None):
        self.window = window
        self.terms = {}
        for (h, mono), c in (terms or {}).items():
            if c and window.keeps(h, sum(mono)):
                self.terms[(h, tuple(mono))] = Fraction(c)

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(window: Window) -> "FormalFunctional":
        return FormalFunctional(window)

    @staticmethod
    def one(window: Window) -> "FormalFunctional":
        return FormalFunctional(window, {(0, (0,) * window.d): Fraction(1)})

    @staticmethod
    def monomial(window, h, mono, coeff=1) -> "FormalFunctional":
        return FormalFunctional(window, {(h, tuple(mono)): Fraction(coeff)})

    # -- inspection ----------------------------------------------------------

    def coefficient(self, h, mono) -> Fraction:
        return self.terms.get((h, tuple(mono)), Fraction(0))

    def component(self, i: int, k: int) -> dict:
        """The (hbar^i, degree-k) homogeneous part as {monomial: coeff}."""
        return {mono: c for (h, mono), c in self.terms.items()
                if h == i and sum(mono) == k}

    def vertex_types(self):
        return sorted({(h, sum(mono)) for (h, mono) in self.terms})

    def is_oplus(self) -> bool:
        for (h, mono) in self.terms:
            deg = sum(mono)
            if h == 0 and deg < 3:
                return False
            if h == 1 and deg == 0:
                return False
        return True

    def restrict(self, hbar_max=None, degree_max=None) -> dict:
        out = {}
        for (h, mono), c in self.terms.items():
            if hbar_max is not None and h > hbar_max:
                continue
            if degree_max is not None and sum(mono) > degree_max:
                continue
            out[(h, mono)] = c
        return out

    def __eq__(self, other):
        return isinstance(other, FormalFunctional) and self.window == other.window \
            and self.terms == other.terms

    def __repr__(self):
        items = sorted(self.terms.items())[:8]
        body = ", ".join(f"h^{h} x^{mono}: {c}" for (h, mono), c in items)
        more = "" if len(self.terms) <= 8 else f" ... ({len(self.terms)} terms)"
        return f"<FormalFunctional {body}{more}>"

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, Fraction(0)) + c
        return FormalFunctional(self.window, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "FormalFunctional":
        c = Fraction(c)
        return FormalFunctional(self.window, {k: v * c for k, v in self.terms.items()})

    def shift_hbar(self, delta: int) -> "FormalFunctional":
        return FormalFunctional(self.window,
                                {(h + delta, mono): c for (h, mono), c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, FormalFunctional):
            return self.scale(other)
        window = self.window
        out = {}
        for (h1, m1), c1 in self.terms.items():
            for (h2, m2), c2 in other.terms.items():
                h = h1 + h2
                mono = tuple(a + b for a, b in zip(m1, m2))
                if not window.keeps(h, sum(mono)):
                    continue
                key = (h, mono)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return FormalFunctional(window, out)

    __rmul__ = __mul__

    def exp(self) -> "FormalFunctional":
        """exp of a functional all of whose terms have positive charge."""
        for (h, mono) in self.terms:
            if 2 * h + sum(mono) <= 0:
                raise ExpansionError("exp needs strictly positive charge terms")
        out = FormalFunctional.one(self.window)
        power = FormalFunctional.one(self.window)
        fact = 1
        for j in range(1, self.window.charge_max + 1):
            power = power * self
            fact *= j
            if not power.terms:
                break
            out = out + power.scale(Fraction(1, fact))
        return out

    def log(self) -> "FormalFunctional":
        """log of 1 + (positive-charge part); requires constant term 1."""
        one_key = (0, (0,) * self.window.d)
        if self.terms.get(one_key) != 1:
            raise ExpansionError("log needs constant term exactly 1")
        x = FormalFunctional(self.window,
                             {k: c for k, c in self.terms.items() if k != one_key})
        for (h, mono) in x.terms:
            if 2 * h + sum(mono) <= 0:
                raise ExpansionError("log needs strictly positive charge remainder")
        out = FormalFunctional.zero(self.window)
        power = FormalFunctional.one(self.window)
        for j in range(1, self.window.charge_max + 1):
            power = power * x
            if not power.terms:
                break
            out = out + power.scale(Fraction((-1) ** (j + 1), j))
        return out


def contract(P: ToyPropagator, F: FormalFunctional) -> FormalFunctional:
    """d_P = (1/2) sum_ab P_ab d_a d_b, applied coefficient-wise."""
    window = F.window
    out = {}
    for (h, mono), c in F.terms.items():
        for a in range(window.d):
            for b in range(window.d):
                p = P.matrix[a][b]
                if not p:
                    continue
                if a == b:
                    if mono[a] < 2:
                        continue
                    fact = mono[a] * (mono[a] - 1)
                    new = list(mono)
                    new[a] -= 2
                else:
                    if mono[a] < 1 or mono[b] < 1:
                        continue
                    fact = mono[a] * mono[b]
                    new = list(mono)
                    new[a] -= 1
                    new[b] -= 1
                key = (h, tuple(new))
                out[key] = out.get(key, Fraction(0)) + c * p * fact / 2
    return FormalFunctional(window, out)


def v_direct(P: ToyPropagator, I: FormalFunctional) -> FormalFunctional:
    """exp(hbar d_P) exp(I/hbar), computed directly; the multinomial expansion
    of exp(I/hbar) is the expansion lemma's inner sum over {n_ik} and the
    operator series supplies the sum over j.  This is the oracle."""
    if not I.is_oplus():
        raise ExpansionError("interaction must lie in O+ (no h^0 deg<3, no h^1 const)")
    E = I.shift_hbar(-1).exp()
    out = FormalFunctional.zero(I.window)
    term = E
    m = 0
    while term.terms:
        out = out + term
        term = contract(P, term).shift_hbar(1).scale(Fraction(1, m + 1))
        m += 1
        if m > 2 * I.window.charge_max + 4:
            break
    return out


# ---------------------------------------------------------------------------
# graph side


def w_gamma_finite(gamma, P: ToyPropagator, I: FormalFunctional) -> dict:
    """Contraction of the product of symmetrized vertex tensors S^k I_{g,k}
    along the edges of gamma, tails left open: returns {monomial: coeff} in
    the d ambient variables (no hbar factor attached).

    Computed with one variable block per vertex: apply the per-edge operator
    sum_ab P_ab d_a^{(v1)} d_b^{(v2)} to prod_v I_{g_v,k_v}(x^{(v)}), then set
    all blocks equal; the symmetrized-tensor normalization contributes a
    factor (number of tails at v)! per vertex."""
    d = I.window.d
    nv = gamma.n_vertices
    # vertex polynomials
    vert_polys = []
    loops, mult, tails = gamma.structure()
    for v in range(nv):
        comp = I.component(gamma.genus[v], gamma.valence(v))
        if not comp:
            raise ExpansionError(
                f"interaction has no (genus={gamma.genus[v]}, valence={gamma.valence(v)}) part")
        vert_polys.append(comp)
    # product over blocks: monomial = tuple of length nv*d
    prod: dict = {(0,) * (nv * d): Fraction(1)}
    for v, comp in enumerate(vert_polys):
        new = {}
        for mono, c in prod.items():
            for vm, vc in comp.items():
                key = list(mono)
                for a in range(d):
                    key[v * d + a] += vm[a]
                key = tuple(key)
                new[key] = new.get(key, Fraction(0)) + c * vc
        prod = new

    def edge_op(poly, v1, v2):
        out = {}
        for mono, c in poly.items():
            for a in range(d):
                for b in range(d):
                    p = P.matrix[a][b]
                    if not p:
                        continue
                    i1, i2 = v1 * d + a, v2 * d + b
                    m = list(mono)
                    if i1 == i2:
                        if m[i1] < 2:
                            continue
                        f = m[i1] * (m[i1] - 1)
                        m[i1] -= 2
                    else:
                        if m[i1] < 1 or m[i2] < 1:
                            continue
                        f = m[i1] * m[i2]
                        m[i1] -= 1
                        m[i2] -= 1
                    key = tuple(m)
                    out[key] = out.get(key, Fraction(0)) + c * p * f
        return out

    for e in range(gamma.n_edges):
        v1, v2 = gamma.edge_vertices(e)
        prod = edge_op(prod, v1, v2)
        if not prod:
            break
    # collapse blocks and apply the tails! normalization
    norm = 1
    for v in range(nv):
        norm *= math.factorial(tails[v])
    out: dict = {}
    for mono, c in prod.items():
        col = [0] * d
        for v in range(nv):
            for a in range(d):
                col[a] += mono[v * d + a]
        key = tuple(col)
        out[key] = out.get(key, Fraction(0)) + c * norm
    return {k: v for k, v in out.items() if v}


def expansion_graph_set(I: FormalFunctional, charge_max: int):
    """Connected stable graphs over I's vertex types with graph charge
    2(g-1)+T <= charge_max (so T <= charge_max + 2), plus |Aut| data."""
    pool = [(h, k) for (h, k) in I.vertex_types()]
    # O+ discipline for the pool (other parts cannot sit on stable vertices)
    pool = [(g, k) for (g, k) in pool
            if not (g == 0 and k < 3) and not (g == 1 and k < 1)]
    out = []
    for n_tails in range(0, charge_max + 3):
        gmax = (charge_max - n_tails) // 2 + 1
        if gmax < 0:
            continue
        emax = gmax + charge_max  # E = b + V - 1 <= g + V - 1, V <= charge
        for g_obj in graphlib.enumerate_connected(pool, n_tails, emax, gmax):
            charge = 2 * (graphlib.genus(g_obj) - 1) + n_tails
            if charge > charge_max or charge < 1:
                continue
            out.append({
                "graph": g_obj,
                "genus": graphlib.genus(g_obj),
                "tails": n_tails,
                "charge": charge,
                "aut": graphlib.automorphism_order_structural(g_obj),
            })
    return out


def v_graphs(P: ToyPropagator, I: FormalFunctional, graph_set=None) -> FormalFunctional:
    """sum over stable graphs (disconnected included as multisets of connected
    ones with multiplicity 1/(k! |Aut|^k)) of hbar^{g - C} w_gamma / |Aut|."""
    window = I.window
    if graph_set is None:
        graph_set = expansion_graph_set(I, window.charge_max)
    entries = []
    for rec in graph_set:
        w = w_gamma_finite(rec["graph"], P, I)
        if not w:
            continue
        f = FormalFunctional(window, {(rec["genus"] - 1, mono): c for mono, c in w.items()})
        entries.append((rec["charge"], rec["aut"], f))
    one = FormalFunctional.one(window)
    total = one  # the empty multiset

    def extend(idx, budget, acc):
        # multisets in index order, each connected class with multiplicity k
        # carrying the Cor-proof factor 1/(k! |Aut|^k)
        nonlocal total
        for i in range(idx, len(entries)):
            charge, aut, f = entries[i]
            piece = acc
            k = 1
            while k * charge <= budget:
                piece = piece * f
                if not piece.terms:
                    break
                contrib = piece.scale(Fraction(1, math.factorial(k) * aut**k))
                total = total + contrib
                extend(i + 1, budget - k * charge, contrib)
                k += 1

    extend(0, window.charge_max, one)
    return total


def w_graphs(P: ToyPropagator, I: FormalFunctional, graph_set=None):
    """Connected-graph sum sum_conn hbar^{g} w_gamma / |Aut|, plus the exact
    identity check exp(W/hbar) = V.  Returns (W, report).

    A graph of charge c contributes to W at charge c + 2 (hbar^g, not
    hbar^{g-1}), so W is held in a window two charges wider; it is complete
    there exactly when the graph set covers charge <= charge_max."""
    window = I.window
    if graph_set is None:
        graph_set = expansion_graph_set(I, window.charge_max)
    wide = Window(window.d, window.charge_max + 2)
    W = FormalFunctional.zero(wide)
    for rec in graph_set:
        w = w_gamma_finite(rec["graph"], P, I)
        if not w:
            continue
        W = W + FormalFunctional(wide,
                                 {(rec["genus"], mono): c / rec["aut"] for mono, c in w.items()})
    V = v_direct(P, I)
    w_over_h = FormalFunctional(window, {(h - 1, mono): c for (h, mono), c in W.terms.items()})
    expWh = w_over_h.exp()
    mismatch = None
    keys = set(expWh.terms) | set(V.terms)
    for key in sorted(keys):
        if expWh.terms.get(key, Fraction(0)) != V.terms.get(key, Fraction(0)):
            mismatch = (key, expWh.terms.get(key, Fraction(0)), V.terms.get(key, Fraction(0)))
            break
    report = {
        "exp_identity_ok": mismatch is None,
        "first_mismatch": mismatch,
        "w_in_oplus": W.is_oplus(),
    }
    return W, report
