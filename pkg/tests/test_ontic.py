import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from qlattice.realspaces import spin_space, simplex_space
from qlattice.ontic import (closure, closure_step, is_star_free,
                            is_unbounded_star_free, is_admissible,
                            build_completion, lift_morphism)
from qlattice.verify import counterexample_lattice


def test_preclosure_counterexample_sets():
    space = counterexample_lattice()
    u = tuple(space.index(n) for n in ("u1", "u2", "u3"))
    once = closure(space, u, mode="pre")
    assert sorted(space.names[i] for i in once) == ["w", "y", "z"]
    twice = closure_step(space, once)
    assert sorted(space.names[i] for i in twice) == ["w", "x", "y", "z"]
    # the full closure reaches the fixed point
    full = closure(space, u)
    assert tuple(sorted(full)) == tuple(sorted(twice))


def test_closure_keeps_only_maximal_elements():
    space = simplex_space(3).space
    pures = space.pures()
    out = closure(space, [pures[0], space.meet(pures[0], pures[1])])
    assert list(out) == [pures[0]]


def test_star_freeness():
    rs = spin_space(2)
    a = rs.space.index("a")
    b = rs.space.index("b")
    assert is_star_free(rs, (a, b))
    assert not is_star_free(rs, (a, rs.star_of(a)))
    assert is_unbounded_star_free(rs, (a, b))


def test_completion_z2_shape(z2, z2_completion):
    comp = z2_completion
    assert len(comp) == 9
    hidden = [i for i in range(comp.space.n) if comp.is_hidden(i)]
    assert len(hidden) == 4
    got = {frozenset(z2.space.names[e] for e in comp.components(i))
           for i in hidden}
    assert got == {frozenset(p) for p in
                   (("a", "b"), ("a", "b*"), ("a*", "b"), ("a*", "b*"))}


def test_sharpening(z2, z2_completion):
    comp = z2_completion
    a, b = z2.space.index("a"), z2.space.index("b")
    chi = comp.sharpening([a, b])
    assert chi is not None and comp.is_hidden(chi)
    assert sorted(comp.components(chi)) == sorted((a, b))
    # a star pair is inadmissible
    assert comp.sharpening([a, z2.star_of(a)]) is None
    # a single real sharpens to its own embedding
    assert comp.sharpening([a]) == comp.embed(a)


def test_galois_law(z2, z2_completion):
    # sharpening of the real trace of chi is chi again, and more generally
    # sharpening(J) <= chi iff J is inside the trace of chi
    comp = z2_completion
    space = z2.space
    reals = list(range(space.n))

    def trace(chi):
        return frozenset(s for s in reals
                         if comp.space.leq[comp.embed(s), chi])

    for chi in range(comp.space.n):
        assert comp.sharpening(sorted(trace(chi))) == chi
    pairs = 0
    for chi in range(comp.space.n):
        tr = trace(chi)
        for r in range(1, len(reals) + 1):
            for j in combinations(reals, r):
                lam = comp.sharpening(list(j))
                if lam is None:
                    continue
                pairs += 1
                assert bool(comp.space.leq[lam, chi]) == \
                    (frozenset(j) <= tr)
    assert pairs > 0


def test_meet_join_against_order_oracle(z2_completion):
    comp = z2_completion
    space = comp.space
    n = space.n
    for i in range(n):
        for j in range(n):
            m = comp.meet(i, j)
            below = [c for c in range(n) if space.leq[c, i]
                     and space.leq[c, j]]
            assert all(space.leq[c, m] for c in below)
            ups = [c for c in range(n) if space.leq[i, c]
                   and space.leq[j, c]]
            jn = comp.join(i, j)
            if ups:
                assert jn is not None
                assert all(space.leq[jn, c] for c in ups)
            else:
                assert jn is None


def test_embedding_preserves_order(z2, z2_completion):
    comp = z2_completion
    space = z2.space
    for i in range(space.n):
        for j in range(space.n):
            assert bool(space.leq[i, j]) == \
                bool(comp.space.leq[comp.embed(i), comp.embed(j)])


def test_lift_identity(z2, z2_completion):
    comp = z2_completion
    lifted = lift_morphism(comp, comp, lambda i: i)
    assert lifted == list(range(comp.space.n))


def test_admissibility_on_tensor_reals(two_qubit):
    ts, _ = two_qubit
    rs = ts.real_space
    rng = random.Random(11)
    others = [i for i in range(rs.space.n) if i != rs.space.bottom]
    for _ in range(50):
        sub = rng.sample(others, rng.randint(1, 4))
        if is_admissible(rs, sub):
            assert is_star_free(rs, closure(rs.space, sub))


_SPACE = spin_space(3).space


_NONBOT = [i for i in range(_SPACE.n) if i != _SPACE.bottom]


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from(_NONBOT), min_size=1, max_size=5))
def test_closure_idempotent_property(ids):
    first = closure(_SPACE, ids)
    assert closure(_SPACE, first) == first
    # extensivity up to domination by the closure antichain
    for i in ids:
        assert any(_SPACE.leq[i, m] for m in first)
