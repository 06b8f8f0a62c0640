"""Entropy-based information measures over environment fragments.

Quantum mutual information ``I(A:B) = H_A + H_B - H_AB`` and tripartite
mutual information ``I_3(A:B:C) = I(A:B) + I(A:C) - I(A:BC)`` in bits, plus
the averaged quantities the figures are built from: the fragment-size
profile of I(system : fragment) and the partition-averaged TMI with
``|B| = 1``, ``|C| = l``, ``|D| = N - l - 1 >= 1``.

Averages enumerate all fragments/partitions whenever the count fits the
budget, and otherwise draw a without-replacement sample whose randomness is
derived purely from ``(seed, kind, size)``, so results never depend on
worker scheduling.

All global states here are pure, so subsystem entropies are evaluated on
whichever side of the bipartition is smaller (pure-state complementarity);
this keeps the reduced matrices at or below 2^(n/2) in dimension.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .model import RegisterLayout
from .qcore import StateVector, partial_trace, vn_entropy

PROFILE_CLASSES = ("plateau", "independent", "encoding")

# SeedSequence tags keeping fragment and partition streams independent.
_FRAGMENT_STREAM = 1
_PARTITION_STREAM = 2


@dataclass(frozen=True)
class FragmentSample:
    """A fragment: subset of ancilla labels (1-based) out of N."""

    ancillas: tuple[int, ...]
    num_ancillas: int

    def __post_init__(self):
        labels = tuple(sorted(self.ancillas))
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate ancilla labels in {self.ancillas}")
        if labels and (labels[0] < 1 or labels[-1] > self.num_ancillas):
            raise ValueError(
                f"ancilla labels {labels} outside 1..{self.num_ancillas}"
            )
        object.__setattr__(self, "ancillas", labels)

    @property
    def fraction(self) -> float:
        return len(self.ancillas) / self.num_ancillas


@dataclass(frozen=True)
class PartitionSample:
    """Partition of the N ancillas into B = {b}, C (size l) and the rest D."""

    b: int
    c: tuple[int, ...]
    d: tuple[int, ...]

    def __post_init__(self):
        c = tuple(sorted(self.c))
        d = tuple(sorted(self.d))
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        everything = (self.b,) + c + d
        if len(set(everything)) != len(everything):
            raise ValueError("partition blocks overlap")
        if sorted(everything) != list(range(1, len(everything) + 1)):
            raise ValueError("partition blocks must cover 1..N exactly")


def subsystem_entropy(state: StateVector, qubits: Iterable[int], cache=None) -> float:
    """Entropy (bits) of a qubit subset of a pure global state.

    Uses the complement when that side is smaller.  ``cache`` is a plain
    dict keyed by the sorted subset, useful when many overlapping subsets
    are evaluated against the same state.
    """
    key = tuple(sorted(set(int(q) for q in qubits)))
    if cache is not None and key in cache:
        return cache[key]
    n = state.num_qubits
    side = key
    if len(key) > n - len(key):
        chosen = set(key)
        side = tuple(q for q in range(n) if q not in chosen)
    value = vn_entropy(partial_trace(state, side))
    if cache is not None:
        cache[key] = value
    return value


def mutual_information(
    state: StateVector, part_a: Iterable[int], part_b: Iterable[int], cache=None
) -> float:
    """I(A:B) = H_A + H_B - H_AB in bits; raises on overlapping parts."""
    a = tuple(sorted(set(int(q) for q in part_a)))
    b = tuple(sorted(set(int(q) for q in part_b)))
    if set(a) & set(b):
        raise ValueError(f"parts overlap: {set(a) & set(b)}")
    value = (
        subsystem_entropy(state, a, cache)
        + subsystem_entropy(state, b, cache)
        - subsystem_entropy(state, a + b, cache)
    )
    if value < -1e-9:
        raise ValueError(f"mutual information {value!r} below zero tolerance")
    return max(value, 0.0)


def tmi(
    state: StateVector,
    part_a: Iterable[int],
    part_b: Iterable[int],
    part_c: Iterable[int],
    cache=None,
) -> float:
    """I_3(A:B:C) = I(A:B) + I(A:C) - I(A:BC) in bits; negative = scrambled."""
    a = tuple(sorted(set(int(q) for q in part_a)))
    b = tuple(sorted(set(int(q) for q in part_b)))
    c = tuple(sorted(set(int(q) for q in part_c)))
    if (set(a) & set(b)) or (set(a) & set(c)) or (set(b) & set(c)):
        raise ValueError("TMI parts must be pairwise disjoint")
    return (
        mutual_information(state, a, b, cache)
        + mutual_information(state, a, c, cache)
        - mutual_information(state, a, b + c, cache)
    )


def _unrank_combination(rank: int, pool: Sequence[int], size: int) -> tuple[int, ...]:
    """The combination of ``pool`` at lexicographic index ``rank``."""
    n = len(pool)
    out = []
    start = 0
    remaining = size
    for _ in range(size):
        for candidate in range(start, n):
            block = comb(n - 1 - candidate, remaining - 1)
            if rank < block:
                out.append(pool[candidate])
                start = candidate + 1
                remaining -= 1
                break
            rank -= block
    return tuple(out)


def sample_combinations(
    pool: Sequence[int], size: int, budget: int, rng: np.random.Generator
) -> tuple[list[tuple[int, ...]], bool]:
    """All ``size``-subsets of ``pool`` if they fit the budget, else a
    uniform without-replacement sample of ``budget`` of them.

    Returns ``(subsets, enumerated)``.
    """
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    total = comb(len(pool), size)
    if total <= budget:
        return list(itertools.combinations(pool, size)), True
    ranks = np.sort(rng.choice(total, size=budget, replace=False))
    return [_unrank_combination(int(r), pool, size) for r in ranks], False


def sample_partitions(
    num_ancillas: int,
    l: int,
    budget: int,
    rng: np.random.Generator,
    restrict_b_to_first: bool = False,
) -> tuple[list[PartitionSample], bool]:
    """Partitions (B={b}, C of size l, D the rest) with D nonempty.

    B ranges over every ancilla unless ``restrict_b_to_first`` pins B = E_1.
    Enumerates exhaustively when the count fits the budget.
    """
    if not 1 <= l <= num_ancillas - 2:
        raise ValueError(
            f"l must satisfy 1 <= l <= N-2 (D nonempty); got l={l}, N={num_ancillas}"
        )
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    labels = range(1, num_ancillas + 1)
    bs = (1,) if restrict_b_to_first else tuple(labels)
    per_b = comb(num_ancillas - 1, l)
    total = len(bs) * per_b

    def build(b: int, c: tuple[int, ...]) -> PartitionSample:
        used = {b, *c}
        d = tuple(a for a in labels if a not in used)
        return PartitionSample(b=b, c=c, d=d)

    if total <= budget:
        out = []
        for b in bs:
            others = tuple(a for a in labels if a != b)
            for c in itertools.combinations(others, l):
                out.append(build(b, c))
        return out, True

    ranks = np.sort(rng.choice(total, size=budget, replace=False))
    out = []
    for rank in ranks:
        rank = int(rank)
        b = bs[rank // per_b]
        others = tuple(a for a in labels if a != b)
        out.append(build(b, _unrank_combination(rank % per_b, others, l)))
    return out, False


@dataclass(frozen=True, eq=False)
class MIProfile:
    """Fragment-size profile of averaged I(system : fragment), in bits."""

    num_ancillas: int
    h_s: float
    sizes: np.ndarray
    values: np.ndarray
    n_samples: np.ndarray
    enumerated: np.ndarray
    seed: int

    def __post_init__(self):
        sizes = np.asarray(self.sizes, dtype=np.int64)
        values = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "n_samples", np.asarray(self.n_samples, dtype=np.int64))
        object.__setattr__(self, "enumerated", np.asarray(self.enumerated, dtype=bool))
        index = {int(k): i for i, k in enumerate(sizes)}
        object.__setattr__(self, "_index", index)
        if 0 in index and abs(values[index[0]]) > 1e-12:
            raise ValueError("profile must vanish at fragment size 0")

    def value(self, size: int) -> float:
        return float(self.values[self._index[size]])

    def normalized(self, size: int) -> float:
        """I / H_S at the given fragment size."""
        return self.value(size) / self.h_s

    def has_size(self, size: int) -> bool:
        return size in self._index

    @property
    def max_size(self) -> int:
        return int(self.sizes.max())


@dataclass(frozen=True, eq=False)
class TMISeries:
    """Averaged TMI versus collision duration."""

    t_values: np.ndarray
    i3_values: np.ndarray
    l: int
    n_partitions: np.ndarray
    enumerated: np.ndarray
    seed: int


def _fragment_rng(seed: int, size: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), _FRAGMENT_STREAM, size]))


def _partition_rng(seed: int, l: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), _PARTITION_STREAM, l]))


def averaged_mi_profile(
    state: StateVector,
    layout: RegisterLayout,
    budget: int = 1000,
    seed: int = 0,
    max_size: int | None = None,
    cache=None,
) -> MIProfile:
    """Average I(system : fragment) over fragments of each size 0 .. N.

    Sizes whose subset count fits the budget are enumerated exhaustively;
    larger ones are sampled without replacement.  ``max_size`` truncates the
    profile (used for the large-N runs, where antisymmetry makes sizes above
    N/2 redundant).
    """
    n = layout.num_ancillas
    top = n if max_size is None else int(max_size)
    if not 0 <= top <= n:
        raise ValueError(f"max_size {max_size} outside 0..{n}")
    if cache is None:
        cache = {}
    system = layout.system_qubits
    h_s = subsystem_entropy(state, system, cache)
    labels = tuple(range(1, n + 1))

    sizes = np.arange(top + 1)
    values = np.zeros(top + 1)
    counts = np.zeros(top + 1, dtype=np.int64)
    enumerated = np.zeros(top + 1, dtype=bool)
    counts[0] = 1
    enumerated[0] = True
    for k in range(1, top + 1):
        subsets, was_enumerated = sample_combinations(
            labels, k, budget, _fragment_rng(seed, k)
        )
        mis = [
            mutual_information(
                state,
                system,
                tuple(layout.ancilla_qubit(a) for a in subset),
                cache,
            )
            for subset in subsets
        ]
        values[k] = float(np.mean(mis))
        counts[k] = len(subsets)
        enumerated[k] = was_enumerated
    return MIProfile(
        num_ancillas=n,
        h_s=h_s,
        sizes=sizes,
        values=values,
        n_samples=counts,
        enumerated=enumerated,
        seed=int(seed),
    )


def tmi_over_partitions(
    state: StateVector,
    layout: RegisterLayout,
    partitions: Sequence[PartitionSample],
    cache=None,
) -> float:
    """Mean TMI(system : B : C) over explicit partitions, in bits."""
    if cache is None:
        cache = {}
    system = layout.system_qubits
    vals = [
        tmi(
            state,
            system,
            (layout.ancilla_qubit(p.b),),
            tuple(layout.ancilla_qubit(a) for a in p.c),
            cache,
        )
        for p in partitions
    ]
    return float(np.mean(vals))


def averaged_tmi_detail(
    state: StateVector,
    layout: RegisterLayout,
    l: int,
    budget: int = 1000,
    seed: int = 0,
    restrict_b_to_first: bool = False,
    cache=None,
) -> tuple[float, int, bool]:
    """Averaged TMI plus (partition count, enumerated flag)."""
    partitions, enumerated = sample_partitions(
        layout.num_ancillas, l, budget, _partition_rng(seed, l), restrict_b_to_first
    )
    return tmi_over_partitions(state, layout, partitions, cache), len(partitions), enumerated


def averaged_tmi(
    state: StateVector,
    layout: RegisterLayout,
    l: int,
    budget: int = 1000,
    seed: int = 0,
    restrict_b_to_first: bool = False,
    cache=None,
) -> float:
    """Averaged TMI(system : B : C) over partitions with |B|=1, |C|=l."""
    value, _, _ = averaged_tmi_detail(
        state, layout, l, budget, seed, restrict_b_to_first, cache
    )
    return value


def redundancy_fraction(profile: MIProfile, delta: float) -> float | None:
    """Smallest f = k/N with averaged I(k) >= (1 - delta) H_S, or None.

    Only fragments up to half the environment count as redundancy; if no
    k <= N/2 reaches the threshold the profile is antiredundant and the
    sentinel ``None`` ("no redundancy") is returned.
    """
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    if profile.h_s <= 1e-12:
        raise ValueError("redundancy fraction is undefined for H_S = 0")
    half = profile.num_ancillas // 2
    if profile.max_size < half:
        raise ValueError(
            f"profile only reaches size {profile.max_size}, need {half} (N/2)"
        )
    threshold = (1.0 - delta) * profile.h_s
    for k in range(1, half + 1):
        if profile.value(k) >= threshold - 1e-12:
            return k / profile.num_ancillas
    return None


@dataclass(frozen=True)
class ProfileThresholds:
    """Artifact conventions for profile classification (paper gives none)."""

    delta: float = 0.1
    plateau_max_fraction: float | None = None  # None -> 2/N
    # 0.02: the deepest below-diagonal margin the N=5 two-qubit exchange run
    # ever reaches is 0.0217 (k=2 sits next to the antisymmetry center), so
    # anything larger would never fire on the scrambling window.
    encoding_margin: float = 0.02

    def plateau_cut(self, num_ancillas: int) -> float:
        if self.plateau_max_fraction is not None:
            return self.plateau_max_fraction
        return 2.0 / num_ancillas


def classify_profile(
    profile: MIProfile, thresholds: ProfileThresholds = ProfileThresholds()
) -> str:
    """Classify a profile as ``plateau``, ``independent`` or ``encoding``.

    Plateau: the redundancy fraction at delta exists and is <= 2/N.
    Encoding: I(k)/H_S sits below the independent-environment diagonal
    2k/N by at least the margin for every k < N/2.  Anything else is
    ``independent``.
    """
    if profile.h_s <= 1e-12:
        raise ValueError("cannot classify a profile with H_S = 0")
    n = profile.num_ancillas
    fraction = redundancy_fraction(profile, thresholds.delta)
    if fraction is not None and fraction <= thresholds.plateau_cut(n) + 1e-12:
        return "plateau"
    ks = list(range(1, (n + 1) // 2))  # every integer k < N/2
    if ks and all(
        profile.normalized(k) < 2.0 * k / n - thresholds.encoding_margin for k in ks
    ):
        return "encoding"
    return "independent"
