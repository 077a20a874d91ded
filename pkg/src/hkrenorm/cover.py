"""Covering machinery for the time cube (0, infinity)^k.

Within the sorted sector t_1 < ... < t_k the building blocks are

    B_rho^j     : t_j < t_{j+1}^rho
    C_rho^{i,j} : t_j^rho < t_i          (i < j)
    D_rho^{i,j} : t_i < t_j^rho

and a region is indexed by a strictly increasing sequence I = (i_0 < ... < i_m)
together with an exponent schedule: level j contributes C and D factors at
exponent R^{s_j}, and a terminal B factor at R^{s_{m+1}} when i_m < k.  The
default schedule is s_j = 2^{j-1}.

Membership comparisons run in log space with an arbitrary-precision fallback
near boundaries.  A deterministic constructive assignment (the cover theorem's
procedure) gives the half-open partition used for integration.

Refined chains: when the cascade B-stops at e < k, the cascade is re-run on the
remaining variables (t_{e+1}, ..., t_k) with a reset schedule.  Read literally,
the source's chains (second link starting AT the shared endpoint) intersect the
first link's B set in a boundary-only set, so they cannot cover; the semantics
implemented here reproduce exactly the working set used by the inductive-step
proof: t_{e_j}^{R_j} <= t_{l_j} and t_{e_j} <= t_{e_j+1}^{R_j} per segment.
Labels are still reported in the endpoint-matching notation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

__all__ = [
    "CoverRegion",
    "ChainLink",
    "CoverChain",
    "build_cover",
    "regions_for_sector",
    "member",
    "assign",
    "assign_chain",
    "verify_cover",
    "verify_disjoint",
    "containing_A",
    "refined_cover",
    "sample_in_region",
    "default_schedule",
]

_BOUNDARY_EPS = 1e-12


class CoverParameterError(ValueError):
    pass


def default_schedule(k: int):
    """s_0 = 1 and s_j = 2^{j-1} for j >= 1; index 0 is kept for alignment."""
    return tuple([1] + [2 ** (j - 1) for j in range(1, k + 1)])


def _pow_lt(t, a, p, b, q, closed):
    """t_a^p < t_b^q on positive reals, decided in log space; mpmath fallback
    when the margin is within 1e-12 of zero."""
    la, lb = math.log(t[a - 1]), math.log(t[b - 1])
    lhs, rhs = p * la, q * lb
    diff = lhs - rhs
    if abs(diff) < _BOUNDARY_EPS * max(1.0, abs(lhs), abs(rhs)):
        with mpmath.workdps(60):
            d = mpmath.mpf(p) * mpmath.log(mpmath.mpf(t[a - 1])) - \
                mpmath.mpf(q) * mpmath.log(mpmath.mpf(t[b - 1]))
            if d == 0:
                return closed
            return d < 0
    return diff < 0


@dataclass(frozen=True)
class CoverRegion:
    """E_R^I within a sector.  Positions are 1-based ranks in the sorted order;
    `sector[p-1]` is the coordinate holding rank p."""

    k: int
    sector: tuple
    index_sequence: tuple
    R: float
    exponent_schedule: tuple
    start: int = 1

    def __post_init__(self):
        if self.R <= 1:
            raise CoverParameterError("R must exceed 1")
        seq = self.index_sequence
        if seq[0] != self.start or list(seq) != sorted(set(seq)) or seq[-1] > self.k:
            raise CoverParameterError(f"bad index sequence {seq}")

    def constraints(self):
        """Inequalities (a, p, b, q) meaning t_a^p < t_b^q, positions 1-based."""
        return _region_constraints(self.k, self.start, self.index_sequence,
                                   self.R, self.exponent_schedule)

    @property
    def m(self) -> int:
        return len(self.index_sequence) - 1


def _region_constraints(k, start, seq, R, schedule):
    out = []
    m = len(seq) - 1
    if k - start + 1 == 1:
        return out  # single variable: trivial region
    if m == 0:
        rho = float(R) ** schedule[1]
        out.append((seq[0], 1.0, seq[0] + 1, rho))  # B^{i0}
        return out
    for j in range(1, m + 1):
        rho = float(R) ** schedule[j]
        out.append((seq[j], rho, seq[j - 1], 1.0))          # C^{i_{j-1}, i_j}
        if not (j == m and seq[j] == k):
            out.append((seq[j - 1], 1.0, seq[j] + 1, rho))  # D^{i_{j-1}, i_j + 1}
    if seq[m] != k:
        rho = float(R) ** schedule[m + 1]
        out.append((seq[m], 1.0, seq[m] + 1, rho))          # terminal B^{i_m}
    return out


def member(t, region: CoverRegion, closed: bool = False) -> bool:
    """Membership of a positive vector, strict or closed per the flag; the
    sector ordering is part of the region."""
    if any(x <= 0 for x in t):
        raise CoverParameterError("coordinates must be strictly positive")
    ts = [t[i] for i in region.sector]
    for p in range(len(ts) - 1):
        if ts[p] == ts[p + 1]:
            if not closed:
                return False
        elif ts[p] > ts[p + 1]:
            return False
    for (a, p, b, q) in region.constraints():
        if not _pow_lt(ts, a, p, b, q, closed):
            return False
    return True


def regions_for_sector(k, R, sector, schedule=None):
    if R <= 1:
        raise CoverParameterError("R must exceed 1")
    schedule = schedule or default_schedule(k)
    out = []
    if k == 1:
        out.append(CoverRegion(1, tuple(sector), (1,), float(R), tuple(schedule)))
        return out
    import itertools
    for r in range(k):
        for rest in itertools.combinations(range(2, k + 1), r):
            seq = (1,) + rest
            out.append(CoverRegion(k, tuple(sector), seq, float(R), tuple(schedule)))
    return out


def build_cover(k, R, schedule=None):
    """All regions, grouped by sector: {sector tuple: [CoverRegion, ...]}."""
    import itertools
    return {tuple(s): regions_for_sector(k, R, s, schedule)
            for s in itertools.permutations(range(k))}


def _sector_of(t):
    return tuple(sorted(range(len(t)), key=lambda i: (t[i], i)))


def _cascade(ts, k, R, schedule, start):
    """The constructive assignment on positions [start..k] (closed comparisons):
    returns the index sequence; ends either at k or with a B-stop."""
    seq = [start]
    m = 0
    while True:
        cur = seq[-1]
        if cur == k:
            return tuple(seq), True
        rho = float(R) ** schedule[m + 1]
        # B-stop: t_cur <= t_{cur+1}^rho
        if not _pow_lt(ts, cur + 1, rho, cur, 1.0, False):
            return tuple(seq), False
        # capture the largest i with t_i^rho <= t_cur (cur+1 qualifies here)
        best = cur + 1
        for i in range(cur + 1, k + 1):
            if not _pow_lt(ts, cur, 1.0, i, rho, False):
                best = i
        seq.append(best)
        m += 1


def assign(t, R, schedule=None):
    """Deterministic region assignment: the closure of the returned region
    contains t (theorem's constructive procedure = half-open partition rule)."""
    k = len(t)
    schedule = schedule or default_schedule(k)
    sector = _sector_of(t)
    ts = [t[i] for i in sector]
    seq, _terminal = _cascade(ts, k, R, schedule, 1)
    return CoverRegion(k, sector, seq, float(R), tuple(schedule))


# ---------------------------------------------------------------------------
# verification reports


def verify_cover(k, R, sample_count=10_000, rng_seed=0, schedule=None):
    """Sample points, assign each, check closed membership of the assigned
    region.  Report dict with failure list (expected empty)."""
    schedule = schedule or default_schedule(k)
    rng = np.random.default_rng(rng_seed)
    failures = []
    # mix of scales: broad log-uniform plus tight near-boundary clusters
    logs = rng.uniform(math.log(1e-12), 0.0, size=(sample_count, k))
    squash = rng.uniform(0.0, 1.0, size=sample_count) < 0.3
    logs[squash] *= 1e-3  # near the all-equal diagonal
    for row in range(sample_count):
        t = tuple(math.exp(x) for x in logs[row])
        reg = assign(t, R, schedule)
        if not member(t, reg, closed=True):
            failures.append((t, reg.index_sequence, reg.sector))
    # stress case from the spec: t = (eps, eps^{1/R^2}, ...)
    eps = 1e-10
    t = tuple(eps ** (1.0 / float(R) ** (2 * i)) for i in range(k))
    reg = assign(t, R, schedule)
    if not member(t, reg, closed=True):
        failures.append((t, reg.index_sequence, reg.sector))
    return {"k": k, "R": R, "samples": sample_count + 1, "failures": failures}


def _sequences(k):
    import itertools
    if k == 1:
        return [(1,)]
    out = []
    for r in range(k):
        for rest in itertools.combinations(range(2, k + 1), r):
            out.append((1,) + rest)
    return out


def verify_disjoint(k, R, sample_count=10_000, rng_seed=0, schedule=None):
    """Pairwise disjointness: each pair of distinct index sequences is
    discharged by one of the two contradiction lemmas (C cap D empty when the
    sequences first differ; B cap C empty for proper prefixes), plus a sampling
    check that no point lies strictly inside two regions of its sector."""
    schedule = schedule or default_schedule(k)
    seqs = _sequences(k)
    cases = []
    for ai in range(len(seqs)):
        for bi in range(ai + 1, len(seqs)):
            I, J = seqs[ai], seqs[bi]
            lvl = next((l for l in range(min(len(I), len(J))) if I[l] != J[l]), None)
            if lvl is not None:
                lo, hi = sorted((I[lvl], J[lvl]))
                # C^{prefix, hi} cap D^{prefix, lo+1} at the same exponent: empty
                # by the C/D contradiction since lo + 1 <= hi
                assert lo + 1 <= hi and I[lvl - 1] == J[lvl - 1]
                cases.append({"pair": (I, J), "kind": "C∩D", "level": lvl,
                              "witness": (I[lvl - 1], lo + 1, hi)})
            else:
                S, L = (I, J) if len(I) < len(J) else (J, I)
                m = len(S) - 1
                assert S[m] == L[m] and S[m] != k  # extension impossible past k
                # B^{S_m} cap C^{S_m, L_{m+1}} at exponent R^{s_{m+1}}: empty
                cases.append({"pair": (I, J), "kind": "B∩C", "level": m + 1,
                              "witness": (S[m], L[m + 1])})
    rng = np.random.default_rng(rng_seed)
    double_hits = []
    id_sector = tuple(range(k))
    regions = regions_for_sector(k, R, id_sector, schedule)
    for _ in range(sample_count):
        logs = sorted(rng.uniform(math.log(1e-12), 0.0, size=k))
        t = tuple(math.exp(x) for x in logs)
        hits = [r.index_sequence for r in regions if member(t, r, closed=False)]
        if len(hits) > 1:
            double_hits.append((t, hits))
    return {"k": k, "R": R, "cases": cases, "double_memberships": double_hits}


def containing_A(region: CoverRegion):
    """The containment E_R^I ⊆ A^{i_m} at exponent R^{2^m}; only for the
    specialized schedule s_j = 2^{j-1}."""
    if tuple(region.exponent_schedule) != default_schedule(region.k):
        raise CoverParameterError("containment requires the default schedule")
    m = region.m
    return region.index_sequence[-1], float(region.R) ** (2 ** m)


def a_set_constraints(k, start, i_m, rho):
    """A^{i_m}_rho relative to `start`: C^{start,i_m} and (if i_m < k) B^{i_m}."""
    out = []
    if i_m > start:
        out.append((i_m, rho, start, 1.0))
    if i_m < k:
        out.append((i_m, 1.0, i_m + 1, rho))
    return out


def sample_in_region(region: CoverRegion, rng, width_decades=18.0):
    """A point strictly inside the region (positions sampled descending with
    the region's monomial bounds; sector mapped at the end).

    Deep capture chains raise lower positions to products of the level
    exponents, so each position's log is floored to keep the final values
    above underflow."""
    k = region.k
    cons = region.constraints()
    total_expo = 1.0
    for (_a, p, _b, q) in cons:
        total_expo *= max(p, q)
    floor = -300.0 / total_expo
    logt = [None] * (k + 1)  # 1-based
    for pos in range(k, 0, -1):
        hi = 0.0 if pos == k else logt[pos + 1]
        for (a, p, b, q) in cons:
            # t_a^p < t_b^q bounds position a from above
            if a == pos and logt[b] is not None:
                hi = min(hi, q * logt[b] / p)
        lo = max(hi - width_decades * math.log(10.0), min(floor, hi * 2))
        for (a, p, b, q) in cons:
            # ... and position b from below; through the sector ordering a
            # lower bound on any lower position pushes this one up as well
            if b <= pos and logt[a] is not None and a > pos:
                lo = max(lo, p * logt[a] / q)
        if lo >= hi:
            raise CoverParameterError(f"empty sampling interval in region {region.index_sequence}")
        margin = (hi - lo) * 1e-3
        logt[pos] = rng.uniform(lo + margin, hi - margin)
    t = [0.0] * k
    for pos in range(1, k + 1):
        t[region.sector[pos - 1]] = math.exp(logt[pos])
    return tuple(t)


# ---------------------------------------------------------------------------
# refined chains


@dataclass(frozen=True)
class ChainLink:
    start: int
    sequence: tuple
    terminal: bool  # reached k (or trivial single-variable link)

    @property
    def end(self) -> int:
        return self.sequence[-1]

    @property
    def m(self) -> int:
        return len(self.sequence) - 1


@dataclass(frozen=True)
class CoverChain:
    k: int
    R: float
    sector: tuple
    links: tuple
    exponent_schedule: tuple

    @property
    def labels(self):
        """Endpoint-matching display: later links are prefixed by the previous
        link's endpoint, e.g. (1) ∘ (1, 2) for k = 2."""
        out = [self.links[0].sequence]
        for i in range(1, len(self.links)):
            out.append((self.links[i - 1].end,) + self.links[i].sequence)
        return tuple(out)

    @property
    def segments(self):
        """(start, end, A-exponent R^{2^m}) per link, for the error bounds."""
        return tuple((ln.start, ln.end, float(self.R) ** (2 ** ln.m)) for ln in self.links)

    def constraints(self):
        out = []
        for ln in self.links:
            out.extend(_region_constraints(self.k, ln.start, ln.sequence,
                                           self.R, self.exponent_schedule))
        return out

    def member(self, t, closed=False):
        ts = [t[i] for i in self.sector]
        for p in range(len(ts) - 1):
            if ts[p] == ts[p + 1]:
                if not closed:
                    return False
            elif ts[p] > ts[p + 1]:
                return False
        return all(_pow_lt(ts, a, p, b, q, closed) for (a, p, b, q) in self.constraints())


def _chains_from(k, start):
    """All chains of cascade links covering positions [start..k]."""
    import itertools
    if start == k:
        return [[ChainLink(k, (k,), True)]]
    out = []
    for r in range(k - start + 1):
        for rest in itertools.combinations(range(start + 1, k + 1), r):
            seq = (start,) + rest
            if seq[-1] == k:
                out.append([ChainLink(start, seq, True)])
            else:
                for tail in _chains_from(k, seq[-1] + 1):
                    out.append([ChainLink(start, seq, False)] + tail)
    return out


def refined_cover(k, R, sector=None, schedule=None):
    """All refined chains for one sector (default: the identity sector)."""
    if R <= 1:
        raise CoverParameterError("R must exceed 1")
    schedule = schedule or default_schedule(k)
    sector = tuple(sector) if sector is not None else tuple(range(k))
    return [CoverChain(k, float(R), sector, tuple(links), tuple(schedule))
            for links in _chains_from(k, 1)]


def assign_chain(t, R, schedule=None):
    """Deterministic chain assignment: run the cascade, and after every B-stop
    at e < k re-run it on positions e+1..k with a reset schedule."""
    k = len(t)
    schedule = schedule or default_schedule(k)
    sector = _sector_of(t)
    ts = [t[i] for i in sector]
    links = []
    start = 1
    while True:
        seq, terminal = _cascade(ts, k, R, schedule, start)
        links.append(ChainLink(start, seq, terminal or seq[-1] == k))
        if seq[-1] == k:
            break
        start = seq[-1] + 1
    return CoverChain(k, float(R), sector, tuple(links), tuple(schedule))
