import pytest
from hypothesis import given
from hypothesis import strategies as st

from modcurve.levels import (
    LevelStructure,
    SubgroupKind,
    group_order,
    local_index,
    psl2_index,
)

B = SubgroupKind.BOREL
S = SubgroupKind.SPLIT_CARTAN_NORMALIZER
NS = SubgroupKind.NONSPLIT_CARTAN_NORMALIZER
E7 = SubgroupKind.E7
FULL = SubgroupKind.FULL


@pytest.mark.parametrize(
    "p,kind,expected",
    [
        (3, FULL, 48),
        (5, FULL, 480),
        (7, FULL, 2016),
        (3, B, 12),
        (5, B, 80),
        (7, B, 252),
        (3, S, 8),
        (5, S, 32),
        (7, S, 72),
        (3, NS, 16),
        (5, NS, 48),
        (7, NS, 96),
        (7, E7, 48),
    ],
)
def test_group_orders(p, kind, expected):
    assert group_order(p, kind) == expected


def test_e7_only_at_seven():
    with pytest.raises(ValueError):
        group_order(5, E7)
    with pytest.raises(ValueError):
        LevelStructure({5: E7})


def test_non_prime_rejected():
    with pytest.raises(ValueError):
        group_order(6, B)
    with pytest.raises(ValueError):
        LevelStructure({4: B})


@pytest.mark.parametrize(
    "p,kind,expected",
    [
        (3, B, 4),
        (5, B, 6),
        (7, B, 8),
        (3, S, 6),
        (7, NS, 21),
        (7, E7, 42),
        (3, FULL, 1),
        (5, FULL, 1),
    ],
)
def test_local_index(p, kind, expected):
    assert local_index(p, kind) == expected


def test_all_orders_divide_full():
    for p in (3, 5, 7):
        full = group_order(p, FULL)
        for kind in SubgroupKind:
            if kind is E7 and p != 7:
                continue
            assert full % group_order(p, kind) == 0


@pytest.mark.parametrize(
    "structure,expected",
    [
        ({3: B, 5: B, 7: B}, 192),
        ({3: S, 5: B, 7: B}, 288),
        ({3: B, 5: B, 7: NS}, 504),
        ({3: B, 5: B, 7: E7}, 1008),
        ({3: S, 5: B, 7: E7}, 1512),
    ],
)
def test_psl2_index_curve_table(structure, expected):
    assert psl2_index(LevelStructure(structure)) == expected


def test_full_entries_are_omittable():
    assert psl2_index(LevelStructure({3: B})) == 4
    assert psl2_index(LevelStructure({3: B, 5: FULL})) == 4
    assert psl2_index(LevelStructure({})) == 1


def test_every_kind_contains_minus_identity():
    assert all(kind.contains_minus_identity for kind in SubgroupKind)


_kinds = st.sampled_from([B, S, NS, FULL])
_structures = st.dictionaries(st.sampled_from([3, 5, 11, 13, 17]), _kinds, max_size=5)


@given(_structures, _structures)
def test_index_multiplicative_over_disjoint_supports(left, right):
    right = {p: k for p, k in right.items() if p not in left}
    combined = psl2_index(LevelStructure({**left, **right}))
    assert combined == psl2_index(LevelStructure(left)) * psl2_index(
        LevelStructure(right)
    )
