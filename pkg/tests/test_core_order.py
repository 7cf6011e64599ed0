import pytest
from hypothesis import given, settings, strategies as st

from qlattice.core_order import (YES, NO, BOT, BOOL_VALUES, InputError,
                                 StateSpace, bool_space, bool_meet, bool_join,
                                 bool_bullet, bool_bar, bool_leq,
                                 bool_meet_all, bool_bullet_all)
from qlattice.realspaces import spin_space, simplex_space


def test_meet_table():
    expect = {
        (YES, YES): YES, (YES, NO): BOT, (YES, BOT): BOT,
        (NO, YES): BOT, (NO, NO): NO, (NO, BOT): BOT,
        (BOT, YES): BOT, (BOT, NO): BOT, (BOT, BOT): BOT,
    }
    for pair, value in expect.items():
        assert bool_meet(*pair) == value


def test_bullet_table():
    expect = {
        (YES, YES): YES, (YES, NO): NO, (YES, BOT): BOT,
        (NO, YES): NO, (NO, NO): NO, (NO, BOT): NO,
        (BOT, YES): BOT, (BOT, NO): NO, (BOT, BOT): BOT,
    }
    for pair, value in expect.items():
        assert bool_bullet(*pair) == value


def test_bar_table():
    assert bool_bar(YES) == NO
    assert bool_bar(NO) == YES
    assert bool_bar(BOT) == BOT
    for x in BOOL_VALUES:
        assert bool_bar(bool_bar(x)) == x


def test_join_partiality():
    assert bool_join(YES, NO) is None
    assert bool_join(BOT, NO) == NO
    assert bool_join(YES, YES) == YES


def test_bullet_monoid_laws():
    for x in BOOL_VALUES:
        assert bool_bullet(YES, x) == x
        assert bool_bullet(NO, x) == NO
        for y in BOOL_VALUES:
            assert bool_bullet(x, y) == bool_bullet(y, x)
            for z in BOOL_VALUES:
                assert bool_bullet(bool_bullet(x, y), z) == \
                    bool_bullet(x, bool_bullet(y, z))


def test_meet_all_and_bullet_all():
    assert bool_meet_all([YES, YES]) == YES
    assert bool_meet_all([YES, NO]) == BOT
    assert bool_bullet_all([]) == YES
    assert bool_bullet_all([YES, BOT, NO]) == NO
    with pytest.raises(InputError):
        bool_meet_all([])


def test_bool_space_shape():
    space = bool_space()
    assert space.n == 3
    assert sorted(space.names) == ["BOT", "N", "Y"]
    bot = space.bottom
    assert all(space.leq[bot, i] for i in range(3))
    assert len(space.pures()) == 2


def test_bool_leq_matches_space():
    space = bool_space()
    for x in BOOL_VALUES:
        for y in BOOL_VALUES:
            assert bool_leq(x, y) == bool(space.leq[space.index(x),
                                                    space.index(y)])


def test_from_relation_rejects_missing_meet():
    # two tops over two incomparable mids: meet(a, b) is not unique
    names = ["bot", "x", "y", "a", "b"]
    pairs = [("bot", "x"), ("bot", "y"),
             ("x", "a"), ("x", "b"), ("y", "a"), ("y", "b")]
    with pytest.raises(InputError):
        StateSpace.from_relation(names, pairs)


def test_from_relation_rejects_missing_bottom():
    with pytest.raises(InputError):
        StateSpace.from_relation(["a", "b"], [])


def test_covers_and_pures():
    space = simplex_space(3).space
    assert len(space.pures()) == 3
    for p in space.pures():
        assert not space.upper_covers(p)
    bot = space.bottom
    for i in range(space.n):
        if i != bot:
            assert space.leq[bot, i]


def test_json_roundtrip():
    space = spin_space(2).space
    again = StateSpace.from_json(space.to_json())
    assert list(again.names) == list(space.names)
    assert (again.leq == space.leq).all()


def test_dot_export_mentions_all_names():
    space = bool_space()
    dot = space.to_dot()
    assert dot.startswith("digraph")
    for name in space.names:
        assert name in dot


_SPACE = spin_space(3).space


@settings(max_examples=200, deadline=None)
@given(st.integers(0, _SPACE.n - 1), st.integers(0, _SPACE.n - 1),
       st.integers(0, _SPACE.n - 1))
def test_meet_is_semilattice(i, j, k):
    m = _SPACE.meet(i, j)
    assert _SPACE.meet(j, i) == m
    assert _SPACE.meet(i, i) == i
    assert _SPACE.meet(_SPACE.meet(i, j), k) == _SPACE.meet(i, _SPACE.meet(j, k))
    assert _SPACE.leq[m, i] and _SPACE.leq[m, j]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, _SPACE.n - 1), min_size=1, max_size=5))
def test_meet_all_is_greatest_lower_bound(ids):
    m = _SPACE.meet_all(ids)
    for i in ids:
        assert _SPACE.leq[m, i]
    for c in range(_SPACE.n):
        if all(_SPACE.leq[c, i] for i in ids):
            assert _SPACE.leq[c, m]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, _SPACE.n - 1), min_size=1, max_size=4))
def test_sup_is_least_upper_bound(ids):
    if not _SPACE.bounded(ids):
        return
    s = _SPACE.sup(ids)
    for i in ids:
        assert _SPACE.leq[i, s]
    for c in range(_SPACE.n):
        if all(_SPACE.leq[i, c] for i in ids):
            assert _SPACE.leq[s, c]
