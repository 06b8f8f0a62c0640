"""Information measures: MI, TMI, averaged profiles, classification."""

import math
from itertools import combinations

import numpy as np
import pytest

from qdarwin.infometrics import (
    FragmentSample,
    MIProfile,
    PartitionSample,
    ProfileThresholds,
    averaged_mi_profile,
    averaged_tmi,
    averaged_tmi_detail,
    classify_profile,
    mutual_information,
    redundancy_fraction,
    sample_combinations,
    sample_partitions,
    subsystem_entropy,
    tmi,
    tmi_over_partitions,
    _unrank_combination,
)
from qdarwin.model import (
    CollisionConfig,
    CouplingSpec,
    RegisterLayout,
    branching_state,
    initial_state,
    run_collisions,
    scrambled_example_state,
)
from qdarwin.qcore import StateVector

from oracles import random_state, svd_mutual_information

H_037 = -(0.3 * math.log2(0.3) + 0.7 * math.log2(0.7))  # 0.8812908992306927

BELL = StateVector(np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2))


def ghz(n):
    amps = np.zeros(1 << n, dtype=complex)
    amps[0] = amps[-1] = 1 / math.sqrt(2)
    return StateVector(amps)


def make_profile(values, h_s, num_ancillas=None):
    values = np.asarray(values, dtype=float)
    n = num_ancillas if num_ancillas is not None else len(values) - 1
    return MIProfile(
        num_ancillas=n,
        h_s=h_s,
        sizes=np.arange(len(values)),
        values=values,
        n_samples=np.ones(len(values), dtype=np.int64),
        enumerated=np.ones(len(values), dtype=bool),
        seed=0,
    )


class TestMutualInformation:
    def test_bell_pair(self):
        assert abs(mutual_information(BELL, [0], [1]) - 2.0) < 1e-12

    def test_product_state(self):
        sv = StateVector(np.kron([1, 0], [0, 1]).astype(complex))
        assert mutual_information(sv, [0], [1]) == 0.0

    def test_branching_state_flat_at_branch_entropy(self):
        state = branching_state(
            [math.sqrt(0.3), math.sqrt(0.7)], num_ancillas=4
        )
        for size in (1, 2, 3):
            for subset in combinations(range(1, 5), size):
                got = mutual_information(state, [0], subset)
                assert abs(got - H_037) < 1e-9

    def test_rejects_overlap(self):
        with pytest.raises(ValueError, match="overlap"):
            mutual_information(BELL, [0], [0, 1])

    def test_matches_svd_oracle_on_random_states(self):
        rng = np.random.default_rng(53)
        for _ in range(10):
            amps = random_state(6, rng)
            sv = StateVector(amps)
            a = [0, 3]
            b = [1, 4]
            got = mutual_information(sv, a, b)
            want = svd_mutual_information(amps, a, b, 6)
            assert abs(got - want) < 1e-9

    def test_subadditivity_bound(self):
        rng = np.random.default_rng(59)
        for _ in range(10):
            sv = StateVector(random_state(6, rng))
            got = mutual_information(sv, [0, 1], [2])
            assert 0.0 <= got <= 2.0 + 1e-9


class TestTmi:
    def test_pure_tripartition_vanishes(self):
        # I3 of any pure state split into exactly three parts is zero
        assert abs(tmi(ghz(3), [0], [1], [2])) < 1e-9
        rng = np.random.default_rng(61)
        sv = StateVector(random_state(5, rng))
        assert abs(tmi(sv, [0, 1], [2], [3, 4])) < 1e-9

    def test_ghz_with_traced_bystander_is_branch_entropy(self):
        # tracing one GHZ qubit leaves perfectly redundant branches
        assert abs(tmi(ghz(4), [0], [1], [2]) - 1.0) < 1e-9

    def test_product_state_zero(self):
        sv = StateVector(np.kron(np.kron([1, 0], [1, 0]), [0, 1]).astype(complex))
        assert abs(tmi(sv, [0], [1], [2])) < 1e-12

    def test_paired_bells_zero(self):
        # A-D and B-C Bell pairs: A shares nothing with B, C or BC
        bell = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
        amps = np.kron(bell, bell).reshape(2, 2, 2, 2).transpose(0, 2, 3, 1).reshape(-1)
        sv = StateVector(amps)  # order (A, B, C, D) with A-D and B-C entangled
        assert abs(tmi(sv, [0], [1], [2])) < 1e-12

    def test_branching_weights_give_positive_value(self):
        state = branching_state([math.sqrt(0.3), math.sqrt(0.7)], num_ancillas=4)
        got = tmi(state, [0], [1], [2, 3])
        assert abs(got - H_037) < 1e-9

    def test_scrambled_example_regression_anchors(self):
        # coherent branches keep single fragments informative (positive TMI);
        # recording the branch flips the partition TMI negative.
        coherent = scrambled_example_state(6)
        recorded = scrambled_example_state(6, record_branch=True)
        got_coherent = tmi(coherent, [0], [1], [2, 3])
        got_recorded = tmi(recorded, [0], [1], [2, 3])
        assert abs(got_coherent - 0.329688784898) < 1e-9
        assert abs(got_recorded - (-0.049639518355)) < 1e-9

    def test_rejects_overlap(self):
        with pytest.raises(ValueError, match="disjoint"):
            tmi(ghz(3), [0], [1], [1, 2])


class TestSampling:
    def test_unrank_matches_lexicographic_order(self):
        pool = (1, 2, 3, 4, 5, 6)
        want = list(combinations(pool, 3))
        got = [_unrank_combination(r, pool, 3) for r in range(len(want))]
        assert got == want

    def test_enumeration_when_budget_covers(self):
        rng = np.random.default_rng(0)
        subsets, enumerated = sample_combinations((1, 2, 3, 4), 2, budget=6, rng=rng)
        assert enumerated
        assert subsets == list(combinations((1, 2, 3, 4), 2))

    def test_sampling_without_replacement(self):
        rng = np.random.default_rng(1)
        subsets, enumerated = sample_combinations(tuple(range(1, 11)), 4, 20, rng)
        assert not enumerated
        assert len(subsets) == 20
        assert len(set(subsets)) == 20
        for s in subsets:
            assert all(1 <= x <= 10 for x in s) and list(s) == sorted(s)

    def test_sampling_deterministic_in_seed(self):
        a, _ = sample_combinations(tuple(range(12)), 5, 30, np.random.default_rng(42))
        b, _ = sample_combinations(tuple(range(12)), 5, 30, np.random.default_rng(42))
        assert a == b

    def test_partition_enumeration(self):
        rng = np.random.default_rng(2)
        parts, enumerated = sample_partitions(5, 2, budget=1000, rng=rng)
        assert enumerated and len(parts) == 5 * math.comb(4, 2)
        for p in parts:
            assert len(p.c) == 2 and len(p.d) == 2
        assert len(set((p.b, p.c) for p in parts)) == len(parts)

    def test_partition_restricted_b(self):
        rng = np.random.default_rng(3)
        parts, _ = sample_partitions(6, 2, 1000, rng, restrict_b_to_first=True)
        assert all(p.b == 1 for p in parts)
        assert len(parts) == math.comb(5, 2)

    def test_partition_sampling(self):
        rng = np.random.default_rng(4)
        parts, enumerated = sample_partitions(8, 3, budget=40, rng=rng)
        assert not enumerated and len(parts) == 40
        assert len(set((p.b, p.c) for p in parts)) == 40

    def test_partition_l_bounds(self):
        rng = np.random.default_rng(5)
        with pytest.raises(ValueError, match="1 <= l <= N-2"):
            sample_partitions(5, 4, 10, rng)
        with pytest.raises(ValueError, match="1 <= l <= N-2"):
            sample_partitions(5, 0, 10, rng)

    def test_fragment_and_partition_types_validate(self):
        with pytest.raises(ValueError):
            FragmentSample(ancillas=(1, 1), num_ancillas=4)
        with pytest.raises(ValueError):
            FragmentSample(ancillas=(0,), num_ancillas=4)
        assert FragmentSample(ancillas=(2, 1), num_ancillas=4).fraction == 0.5
        with pytest.raises(ValueError, match="overlap"):
            PartitionSample(b=1, c=(1, 2), d=(3,))
        with pytest.raises(ValueError, match="cover"):
            PartitionSample(b=1, c=(2, 3), d=(5,))


class TestAveragedProfile:
    def test_initial_collision_state_is_linear(self):
        layout = RegisterLayout(system_size=1, num_ancillas=6)
        state = initial_state("dephasing-1q", layout)
        profile = averaged_mi_profile(state, layout, seed=0)
        for k in range(7):
            assert abs(profile.value(k) - 2.0 * k / 6.0) < 1e-12
        assert (profile.enumerated).all()
        assert profile.n_samples[2] == math.comb(6, 2)

    def test_branching_state_plateau(self):
        state = branching_state([math.sqrt(0.3), math.sqrt(0.7)], num_ancillas=5)
        layout = RegisterLayout(system_size=1, num_ancillas=5)
        profile = averaged_mi_profile(state, layout, seed=0)
        assert abs(profile.h_s - H_037) < 1e-9
        for k in range(1, 5):
            assert abs(profile.value(k) - H_037) < 1e-9
        assert abs(profile.value(5) - 2 * H_037) < 1e-9

    def test_antisymmetry_for_pure_states(self):
        cfg = CollisionConfig(
            layout=RegisterLayout(system_size=1, num_ancillas=5),
            couplings=CouplingSpec.exchange(j=1.0, epsilon=1.0),
            duration=0.6,
            initial_state_preset="exchange-1q",
        )
        state = run_collisions(cfg)
        profile = averaged_mi_profile(state, cfg.layout, seed=0)
        for k in range(6):
            total = profile.value(k) + profile.value(5 - k)
            assert abs(total - 2 * profile.h_s) < 1e-9

    def test_max_size_restriction(self):
        layout = RegisterLayout(system_size=1, num_ancillas=6)
        state = initial_state("dephasing-1q", layout)
        profile = averaged_mi_profile(state, layout, seed=0, max_size=3)
        assert profile.max_size == 3
        assert not profile.has_size(4)

    def test_deterministic_under_sampling(self):
        rng = np.random.default_rng(71)
        layout = RegisterLayout(system_size=1, num_ancillas=7)
        state = StateVector(random_state(8, rng))
        a = averaged_mi_profile(state, layout, budget=5, seed=99)
        b = averaged_mi_profile(state, layout, budget=5, seed=99)
        np.testing.assert_array_equal(a.values, b.values)
        assert not a.enumerated[3]
        assert a.n_samples[3] == 5

    def test_profile_rejects_nonzero_origin(self):
        with pytest.raises(ValueError, match="vanish"):
            make_profile([0.5, 1.0], h_s=1.0)


class TestAveragedTmi:
    def test_product_state_zero(self):
        layout = RegisterLayout(system_size=1, num_ancillas=4)
        amps = np.zeros(32, dtype=complex)
        amps[0] = 1.0
        assert abs(averaged_tmi(StateVector(amps), layout, 2, seed=0)) < 1e-12

    def test_matches_manual_enumeration_exactly(self):
        cfg = CollisionConfig(
            layout=RegisterLayout(system_size=1, num_ancillas=4),
            couplings=CouplingSpec.dephasing(j=1.0, epsilon=1.0),
            duration=0.7,
            initial_state_preset="dephasing-1q",
        )
        state = run_collisions(cfg)
        layout = cfg.layout
        got = averaged_tmi(state, layout, 2, seed=5)
        vals = []
        for b in range(1, 5):
            others = [a for a in range(1, 5) if a != b]
            for c in combinations(others, 2):
                vals.append(
                    tmi(
                        state,
                        layout.system_qubits,
                        (layout.ancilla_qubit(b),),
                        tuple(layout.ancilla_qubit(a) for a in c),
                    )
                )
        assert got == float(np.mean(vals))

    def test_two_code_paths_agree(self):
        rng = np.random.default_rng(73)
        layout = RegisterLayout(system_size=1, num_ancillas=6)
        state = StateVector(random_state(7, rng))
        value, count, enumerated = averaged_tmi_detail(state, layout, 2, seed=11)
        assert enumerated and count == 6 * math.comb(5, 2)
        parts, _ = sample_partitions(
            6, 2, 1000, np.random.default_rng(0)
        )
        direct = tmi_over_partitions(state, layout, parts)
        assert abs(value - direct) < 1e-12

    def test_restricted_b(self):
        layout = RegisterLayout(system_size=1, num_ancillas=5)
        state = initial_state("dephasing-1q", layout)
        value, count, _ = averaged_tmi_detail(
            state, layout, 2, seed=0, restrict_b_to_first=True
        )
        assert count == math.comb(4, 2)
        assert np.isfinite(value)

    def test_monotone_mutual_information(self):
        # I(S:BC) >= I(S:B) on every partition of evolved states
        cfg = CollisionConfig(
            layout=RegisterLayout(system_size=1, num_ancillas=5),
            couplings=CouplingSpec.exchange(j=1.0, epsilon=1.0),
            duration=1.1,
            initial_state_preset="exchange-1q",
        )
        state = run_collisions(cfg)
        layout = cfg.layout
        parts, _ = sample_partitions(5, 2, 1000, np.random.default_rng(0))
        for p in parts:
            b = (layout.ancilla_qubit(p.b),)
            bc = b + tuple(layout.ancilla_qubit(a) for a in p.c)
            assert (
                mutual_information(state, layout.system_qubits, bc)
                >= mutual_information(state, layout.system_qubits, b) - 1e-9
            )


class TestRedundancyFraction:
    def test_perfect_plateau(self):
        profile = make_profile([0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 2.0], h_s=1.0)
        assert redundancy_fraction(profile, 0.1) == pytest.approx(1 / 6)

    def test_linear_profile_even_n(self):
        values = [2.0 * k / 6.0 for k in range(7)]
        profile = make_profile(values, h_s=1.0)
        # smallest k with 2k/6 >= 0.9 is k = 3
        assert redundancy_fraction(profile, 0.1) == pytest.approx(0.5)

    def test_linear_profile_n10(self):
        values = [2.0 * k / 10.0 for k in range(11)]
        profile = make_profile(values, h_s=1.0)
        assert redundancy_fraction(profile, 0.1) == pytest.approx(0.5)

    def test_antiredundant_profile_returns_sentinel(self):
        state = scrambled_example_state(5, record_branch=True)
        layout = RegisterLayout(system_size=1, num_ancillas=5)
        profile = averaged_mi_profile(state, layout, seed=0)
        assert redundancy_fraction(profile, 0.1) is None

    def test_domain_errors(self):
        profile = make_profile([0.0, 1.0, 2.0], h_s=1.0)
        with pytest.raises(ValueError, match="delta"):
            redundancy_fraction(profile, 1.5)
        degenerate = make_profile([0.0, 0.0, 0.0], h_s=0.0)
        with pytest.raises(ValueError, match="H_S = 0"):
            redundancy_fraction(degenerate, 0.1)


class TestClassifyProfile:
    def test_branching_state_is_plateau(self):
        state = branching_state([math.sqrt(0.3), math.sqrt(0.7)], num_ancillas=5)
        layout = RegisterLayout(system_size=1, num_ancillas=5)
        profile = averaged_mi_profile(state, layout, seed=0)
        assert classify_profile(profile) == "plateau"

    def test_linear_profile_is_independent(self):
        layout = RegisterLayout(system_size=1, num_ancillas=6)
        state = initial_state("dephasing-1q", layout)
        profile = averaged_mi_profile(state, layout, seed=0)
        assert classify_profile(profile) == "independent"

    @pytest.mark.parametrize("n", [5, 6, 7])
    def test_branch_recorded_scrambled_state_is_encoding(self, n):
        state = scrambled_example_state(n, record_branch=True)
        layout = RegisterLayout(system_size=1, num_ancillas=n)
        profile = averaged_mi_profile(state, layout, seed=0)
        assert classify_profile(profile) == "encoding"

    def test_coherent_scrambled_state_is_not_encoding(self):
        state = scrambled_example_state(6)
        layout = RegisterLayout(system_size=1, num_ancillas=6)
        profile = averaged_mi_profile(state, layout, seed=0)
        assert classify_profile(profile) == "independent"

    def test_threshold_overrides(self):
        values = [0.0, 0.92, 1.0, 1.0, 1.08, 2.0]
        profile = make_profile(values, h_s=1.0)
        assert classify_profile(profile) == "plateau"
        strict = ProfileThresholds(delta=0.05, plateau_max_fraction=0.2)
        assert classify_profile(profile, strict) == "independent"

    def test_degenerate_entropy_rejected(self):
        degenerate = make_profile([0.0, 0.0, 0.0, 0.0], h_s=0.0)
        with pytest.raises(ValueError, match="H_S = 0"):
            classify_profile(degenerate)


class TestSubsystemEntropyCache:
    def test_cache_hits_preserve_values(self):
        rng = np.random.default_rng(83)
        sv = StateVector(random_state(5, rng))
        cache = {}
        first = subsystem_entropy(sv, [0, 2], cache)
        assert (0, 2) in cache
        again = subsystem_entropy(sv, [2, 0], cache)
        assert first == again

    def test_complement_side_used_for_large_subsets(self):
        rng = np.random.default_rng(89)
        sv = StateVector(random_state(6, rng))
        big = subsystem_entropy(sv, [0, 1, 2, 3, 4])
        small = subsystem_entropy(sv, [5])
        assert abs(big - small) < 1e-9
