import random

import pytest

from conftest import CORPUS_TYPES, atlas_for
from oracles import closed_symmetric_subsets
from strata.root_systems import build_root_system, mask_indices, mask_of, weyl_order
from strata.subsystems import (
    CapabilityError,
    closure,
    conjugacy_classes,
    dim_top,
    embedding_number,
    enumerate_subsystems,
    is_closed,
    is_saturated,
    is_subsystem,
    is_symmetric,
    popcount,
    weyl_index,
    weyl_orbit,
)

ORACLE_TYPES = ["A1", "A2", "B2", "G2", "A1^2", "B3", "C3", "A3"]

# subsystem counts, frozen from the brute-force oracle (rank <= 3) and the build (rank 4)
SUBSYSTEM_COUNTS = {
    "A1": 2, "A2": 5, "A3": 15, "A4": 52, "B2": 7, "B3": 31, "B4": 164,
    "C3": 31, "C4": 164, "D4": 75, "F4": 447, "G2": 12,
}


def _long(rs):
    return [i for i in range(len(rs.roots)) if rs.is_long(i)]


def test_closure_examples():
    rs = build_root_system("G2")
    assert closure(rs, []) == 0
    for a in range(12):
        assert closure(rs, [a]) == mask_of([a, rs.negation[a]])
    long_ = [i for i in _long(rs) if i < rs.n_positive]
    # two positive long roots at 120 degrees: one is not the other's negative and their sum is not a root
    a, b = next((x, y) for x in long_ for y in long_ if x != y and rs.pairing[x][y] == -1)
    six = closure(rs, [a, b])
    assert popcount(six) == 6
    assert six == mask_of(_long(rs))

    rs = build_root_system("B2")
    short = [i for i in range(rs.n_positive) if not rs.is_long(i)]
    assert len(short) == 2
    assert closure(rs, short) == rs.full_mask


@pytest.mark.parametrize("name", CORPUS_TYPES)
def test_closure_idempotent_and_sign_blind(name):
    rs = build_root_system(name)
    rng = random.Random(name)
    N = len(rs.roots)
    for _ in range(1000):
        S = rng.sample(range(N), rng.randint(0, min(N, 5)))
        c = closure(rs, S)
        assert closure(rs, mask_indices(c)) == c
        flipped = [rs.negation[i] if rng.random() < 0.5 else i for i in S]
        assert closure(rs, flipped) == c
        assert all(c >> i & 1 for i in S)


@pytest.mark.parametrize("name", ORACLE_TYPES)
def test_enumeration_matches_oracle(name):
    rs = build_root_system(name)
    assert sorted(enumerate_subsystems(rs)) == sorted(closed_symmetric_subsets(rs))


@pytest.mark.parametrize("name,count", sorted(SUBSYSTEM_COUNTS.items()))
def test_subsystem_counts(name, count):
    atlas = atlas_for(name)
    assert len(atlas.subsystems) == count
    assert len(set(atlas.subsystems)) == count
    for psi in atlas.subsystems:
        assert is_symmetric(atlas.rs, psi)
        assert is_closed(atlas.rs, psi)
        assert is_saturated(atlas.rs, psi)
        assert is_subsystem(atlas.rs, psi)


def test_enumeration_examples():
    assert len(enumerate_subsystems(build_root_system("A1"))) == 2
    rs = build_root_system("B2")
    subs = enumerate_subsystems(rs)
    assert [popcount(m) for m in subs] == [0, 2, 2, 2, 2, 4, 8]
    rs = build_root_system("G2")
    subs = enumerate_subsystems(rs)
    sizes = sorted(popcount(m) for m in subs)
    assert sizes == [0, 2, 2, 2, 2, 2, 2, 4, 4, 4, 6, 12]


def test_rank_limit():
    with pytest.raises(CapabilityError):
        enumerate_subsystems(build_root_system("E6"))
    with pytest.raises(CapabilityError):
        enumerate_subsystems(build_root_system("B3"), max_rank=2)


def test_orbit_examples():
    rs = build_root_system("G2")
    assert weyl_orbit(rs, 0) == {0}
    assert weyl_orbit(rs, rs.full_mask) == {rs.full_mask}
    a1sq = [m for m in enumerate_subsystems(rs) if popcount(m) == 4]
    assert len(a1sq) == 3
    assert weyl_orbit(rs, a1sq[0]) == set(a1sq)


def _by_label(classes):
    out = {}
    for c in classes:
        out.setdefault(str(c.label), []).append(c.embedding_number)
    return {k: sorted(v) for k, v in out.items()}


def test_classes_g2():
    rs = build_root_system("G2")
    classes, class_of = conjugacy_classes(rs)
    assert _by_label(classes) == {"G2": [1], "A2": [2], "A1^2": [9], "A1": [18, 18], "0": [12]}
    assert len(class_of) == 12
    # the two A1 classes are the long and the short roots
    reps = [c.representative for c in classes if str(c.label) == "A1"]
    assert sorted(rs.is_long(mask_indices(r)[0]) for r in reps) == [False, True]


def test_classes_a2():
    classes, _ = conjugacy_classes(build_root_system("A2"))
    assert _by_label(classes) == {"A2": [1], "A1": [9], "0": [6]}


def test_embedding_numbers():
    rs = build_root_system("G2")
    assert embedding_number(rs, rs.full_mask) == 1
    assert embedding_number(rs, 0) == 12
    a1sq = next(m for m in enumerate_subsystems(rs) if popcount(m) == 4)
    assert weyl_index(rs, a1sq) == 3
    assert len(weyl_orbit(rs, a1sq)) == 3
    assert embedding_number(rs, a1sq) == 9


def test_dim_top():
    rs = build_root_system("G2")
    assert dim_top(rs, 0) == 0
    assert dim_top(rs, mask_of([0, rs.negation[0]])) == 4
    assert dim_top(rs, rs.full_mask) == 40


@pytest.mark.parametrize("name", CORPUS_TYPES)
def test_class_bookkeeping(name):
    atlas = atlas_for(name)
    rs = atlas.rs
    W = weyl_order(rs.spec)
    assert sum(c.orbit_size for c in atlas.classes) == len(atlas.subsystems)
    assert sum(c.embedding_number for c in atlas.classes) == sum(weyl_index(rs, m) for m in atlas.subsystems)
    for c in atlas.classes:
        assert W % c.orbit_size == 0
        assert c.embedding_number == c.weyl_index * c.orbit_size
        assert c.weyl_index * weyl_order(c.label.components) == W
        assert c.dim_top == 4 * (c.size - c.rank)
    # class ids are ordered by (dim desc, label, representative)
    keys = [(-c.dim_top, str(c.label), c.representative) for c in atlas.classes]
    assert keys == sorted(keys)
    # the mask -> class map is a function on distinct masks
    assert set(atlas.class_of) == set(atlas.subsystems)
