import math

import numpy as np
import pytest

from hkrenorm import cover


class TestMembership:
    def test_b1_closure_example(self):
        regs = cover.regions_for_sector(2, 2.0, (0, 1))
        b1 = next(r for r in regs if r.index_sequence == (1,))
        # 0.1 <= 0.5^2 = 0.25
        assert cover.member((0.1, 0.5), b1, closed=True)
        assert cover.member((0.1, 0.5), b1, closed=False)

    def test_c12_example(self):
        regs = cover.regions_for_sector(2, 2.0, (0, 1))
        c12 = next(r for r in regs if r.index_sequence == (1, 2))
        # 0.5^2 = 0.25 < 0.3
        assert cover.member((0.3, 0.5), c12)

    def test_tie_is_boundary(self):
        regs = cover.regions_for_sector(2, 2.0, (0, 1))
        t = (0.4, 0.4)
        strict = [r.index_sequence for r in regs if cover.member(t, r)]
        closed = [r.index_sequence for r in regs if cover.member(t, r, closed=True)]
        assert strict == []
        assert closed  # at least one closure

    def test_rejects_nonpositive(self):
        regs = cover.regions_for_sector(2, 2.0, (0, 1))
        with pytest.raises(cover.CoverParameterError):
            cover.member((0.0, 0.5), regs[0])


class TestBuildCover:
    def test_k1_trivial(self):
        regs = cover.regions_for_sector(1, 4.0, (0,))
        assert len(regs) == 1 and regs[0].constraints() == []

    def test_k2_sequences(self):
        regs = cover.regions_for_sector(2, 4.0, (0, 1))
        assert sorted(r.index_sequence for r in regs) == [(1,), (1, 2)]

    def test_k3_sequences(self):
        regs = cover.regions_for_sector(3, 4.0, (0, 1, 2))
        assert sorted(r.index_sequence for r in regs) == [(1,), (1, 2), (1, 2, 3), (1, 3)]

    def test_all_sectors_present(self):
        cov = cover.build_cover(3, 4.0)
        assert len(cov) == 6
        for sector, regs in cov.items():
            assert len(regs) == 4

    def test_r_must_exceed_one(self):
        with pytest.raises(cover.CoverParameterError):
            cover.build_cover(2, 1.0)


class TestVerifyCover:
    def test_no_failures_small(self):
        for k in (2, 3, 4):
            rep = cover.verify_cover(k, 4.0, sample_count=2000, rng_seed=3)
            assert rep["failures"] == []

    def test_assignment_deterministic(self):
        t = (1e-8, 2e-3, 0.7)
        a = cover.assign(t, 4.0)
        b = cover.assign(t, 4.0)
        assert a == b

    def test_deep_b_point_assignment(self):
        # t1 = t2^{2R} satisfies t1 <= t2^R, so the cascade B-stops: the point
        # is deep inside B^1 and is assigned there, reproducibly
        R = 2.0
        t = (0.5 ** (2 * R), 0.5)
        reg = cover.assign(t, R)
        assert reg.index_sequence == (1,)
        assert cover.member(t, reg, closed=True)
        assert cover.assign(t, R) == reg

    def test_deep_c_point_assignment(self):
        # t2^R < t1: capture to the C chain
        R = 2.0
        t = (0.5 ** (R / 2), 0.5)
        reg = cover.assign(t, R)
        assert reg.index_sequence == (1, 2)
        assert cover.member(t, reg, closed=True)


class TestVerifyDisjoint:
    def test_case_discharge_k3(self):
        rep = cover.verify_disjoint(3, 4.0, sample_count=2000, rng_seed=5)
        kinds = {tuple(sorted(c["pair"])): c["kind"] for c in rep["cases"]}
        assert kinds[((1, 2), (1, 3))] == "C∩D"
        assert kinds[((1, 2), (1, 2, 3))] == "B∩C"
        assert rep["double_memberships"] == []

    def test_every_pair_discharged(self):
        for k in (2, 3, 4):
            rep = cover.verify_disjoint(k, 4.0, sample_count=500, rng_seed=1)
            n = 2 ** (k - 1)
            assert len(rep["cases"]) == n * (n - 1) // 2


class TestContainment:
    def test_m0_is_b1(self):
        regs = cover.regions_for_sector(3, 4.0, (0, 1, 2))
        r = next(x for x in regs if x.index_sequence == (1,))
        assert cover.containing_A(r) == (1, 4.0)

    def test_terminal_pair(self):
        regs = cover.regions_for_sector(3, 4.0, (0, 1, 2))
        r = next(x for x in regs if x.index_sequence == (1, 3))
        assert cover.containing_A(r) == (3, 16.0)  # R^{2^1}

    def test_sampled_containment(self):
        rng = np.random.default_rng(11)
        for k in (2, 3, 4):
            for r in cover.regions_for_sector(k, 4.0, tuple(range(k))):
                i_m, rho = cover.containing_A(r)
                for _ in range(200):
                    t = cover.sample_in_region(r, rng)
                    assert cover.member(t, r)
                    ts = sorted(t)
                    if i_m > 1:
                        assert rho * math.log(ts[i_m - 1]) <= math.log(ts[0]) + 1e-9
                    if i_m < k:
                        assert math.log(ts[i_m - 1]) <= rho * math.log(ts[i_m]) + 1e-9

    def test_requires_default_schedule(self):
        r = cover.CoverRegion(2, (0, 1), (1, 2), 4.0, (1, 3, 5))
        with pytest.raises(cover.CoverParameterError):
            cover.containing_A(r)


class TestSetAlgebraProperties:
    def setup_method(self):
        self.rng = np.random.default_rng(23)

    def _sorted_sample(self, k, lo=-25.0):
        logs = sorted(self.rng.uniform(lo, 0.0, size=k))
        return [math.exp(x) for x in logs]

    def test_c_transitivity(self):
        # t in C_R^{1,2} cap C_S^{2,3} implies t in C_{RS}^{1,3}
        R, S = 3.0, 2.0
        hits = 0
        for _ in range(400):
            lt3 = self.rng.uniform(-4, -0.5)
            lt2 = self.rng.uniform(S * lt3, S * lt3 * 0.3)   # t3^S < t2
            lt1 = self.rng.uniform(R * lt2, R * lt2 * 0.3)   # t2^R < t1
            if not (lt1 < lt2 < lt3):
                continue
            assert S * lt3 < lt2 and R * lt2 < lt1  # constructed memberships
            hits += 1
            assert (R * S) * lt3 <= lt1 + 1e-12
        assert hits > 50

    def test_d_transitivity(self):
        R, S = 3.0, 2.0
        hits = 0
        for _ in range(500):
            t = self._sorted_sample(3)
            in_d12 = math.log(t[0]) < R * math.log(t[1])
            in_d23 = math.log(t[1]) < S * math.log(t[2])
            if in_d12 and in_d23:
                hits += 1
                assert math.log(t[0]) < R * S * math.log(t[2]) + 1e-12
        assert hits > 20

    def test_c_monotone_in_j(self):
        R = 4.0
        for _ in range(500):
            t = self._sorted_sample(4)
            if R * math.log(t[3]) < math.log(t[0]):  # C^{1,4}
                for j in (1, 2):
                    assert R * math.log(t[j]) <= math.log(t[0]) + 1e-12

    def test_tilde_forms_equal(self):
        # membership in B^j / C^{i,j} implies the extended tilde inequality
        # lists (and trivially conversely, since the defining pair is in the
        # list).  B: t_a < t_b^R for a <= j < b.  C: t_b^R < t_a for
        # i <= a < b <= j -- the source's displayed index ranges for C are
        # inverted (as displayed the set would be all of the sector).
        R = 4.0
        for _ in range(500):
            t = self._sorted_sample(4)
            k = 4
            for j in range(1, k):
                if math.log(t[j - 1]) < R * math.log(t[j]):  # B^j
                    for al in range(1, j + 1):
                        for be in range(j + 1, k + 1):
                            assert math.log(t[al - 1]) <= R * math.log(t[be - 1]) + 1e-12
            for i in range(1, k + 1):
                for j in range(i + 1, k + 1):
                    if R * math.log(t[j - 1]) < math.log(t[i - 1]):  # C^{i,j}
                        for al in range(i, j + 1):
                            for be in range(al + 1, j + 1):
                                assert R * math.log(t[be - 1]) <= math.log(t[al - 1]) + 1e-12

    def test_unique_strict_region_per_sector(self):
        R = 4.0
        for k in (2, 3):
            regs = cover.regions_for_sector(k, R, tuple(range(k)))
            for _ in range(300):
                t = tuple(self._sorted_sample(k))
                strict = [r.index_sequence for r in regs if cover.member(t, r)]
                closed = [r.index_sequence for r in regs if cover.member(t, r, closed=True)]
                assert len(strict) <= 1
                assert len(closed) >= 1


class TestRefinedChains:
    def test_k2_chain_labels(self):
        labels = sorted(c.labels for c in cover.refined_cover(2, 4.0))
        assert labels == [((1,), (1, 2)), ((1, 2),)]

    def test_chain_region_inside_member_intersection(self):
        # definitional: the chain set is the intersection of its links' sets
        rng = np.random.default_rng(4)
        chains = cover.refined_cover(3, 4.0)
        for ch in chains:
            cons = ch.constraints()
            for _ in range(50):
                logs = sorted(rng.uniform(-20, 0, size=3))
                t = tuple(math.exp(x) for x in logs)
                if ch.member(t):
                    for (a, p, b, q) in cons:
                        assert p * math.log(t[a - 1]) < q * math.log(t[b - 1]) + 1e-12

    def test_chain_cover_and_uniqueness(self):
        rng = np.random.default_rng(9)
        for k in (2, 3, 4):
            chains = cover.refined_cover(k, 4.0)
            for _ in range(400):
                logs = sorted(rng.uniform(-18, 0, size=k))
                t = tuple(math.exp(x) for x in logs)
                assigned = cover.assign_chain(t, 4.0)
                assert assigned.member(t, closed=True)
                strict_hits = [c.labels for c in chains if c.member(t)]
                assert len(strict_hits) <= 1
                if strict_hits:
                    assert strict_hits[0] == assigned.labels

    def test_chain_segments_give_proof_inequalities(self):
        # inside a chain: t_{e_j}^{R_j} <= t_{l_j} and t_{e_j} <= t_{e_j+1}^{R_j}
        rng = np.random.default_rng(14)
        for _ in range(800):
            logs = sorted(rng.uniform(-22, 0, size=3))
            t = tuple(math.exp(x) for x in logs)
            ch = cover.assign_chain(t, 4.0)
            for (l, e, rho) in ch.segments:
                assert rho * math.log(t[e - 1]) <= math.log(t[l - 1]) + 1e-9
                if e < 3:
                    assert math.log(t[e - 1]) <= rho * math.log(t[e]) + 1e-9
