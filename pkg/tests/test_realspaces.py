import pytest
from hypothesis import given, settings, strategies as st

from qlattice.core_order import InputError
from qlattice.realspaces import (make_space, bool_real_space, simplex_space,
                                 spin_space, is_deterministic,
                                 is_completely_indeterministic,
                                 ortho_matrix, ortho_complement,
                                 orthoclosure, orthoclosed_sets)
from qlattice.ontic import build_completion


def test_bool_real_space_shape():
    rs = bool_real_space()
    assert rs.space.n == 3
    y, n = rs.space.index("Y"), rs.space.index("N")
    assert rs.star_of(y) == n and rs.star_of(n) == y


def test_simplex_sizes():
    # free meet-semilattice on n pures has 2^n - 1 elements
    for n in (2, 3, 4):
        assert simplex_space(n).space.n == 2 ** n - 1
        assert len(simplex_space(n).space.pures()) == n


def test_spin_sizes():
    # n axes give 2n pures sharing a single bottom
    for n in (2, 3):
        rs = spin_space(n)
        assert rs.space.n == 2 * n + 1
        assert len(rs.space.pures()) == 2 * n


def test_star_is_a_fixpoint_free_involution():
    rs = spin_space(3)
    for p in rs.space.pures():
        q = rs.star_of(p)
        assert q != p
        assert rs.star_of(q) == p


def test_star_pairs_meet_at_bottom():
    rs = spin_space(2)
    for p in rs.space.pures():
        assert rs.space.meet(p, rs.star_of(p)) == rs.space.bottom


def test_classification():
    assert is_deterministic(bool_real_space())
    assert is_deterministic(simplex_space(3))
    assert not is_deterministic(spin_space(2))
    assert is_completely_indeterministic(spin_space(2))


def test_make_space_kinds():
    assert make_space("bool").space.n == 3
    assert make_space("Z", 3).space.n == 7
    assert make_space("Zprime", 2).space.n == 5
    with pytest.raises(InputError):
        make_space("nosuch")


def test_json_roundtrip():
    rs = spin_space(2)
    from qlattice.realspaces import RealSpace
    again = RealSpace.from_json(rs.to_json())
    assert list(again.space.names) == list(rs.space.names)
    for p in rs.space.pures():
        assert again.star_of(p) == rs.star_of(p)


# -- orthoclosure on the completed two-axis space ----------------------------

@pytest.fixture(scope="module")
def emb(z2_completion):
    return z2_completion.embedding


def test_orthoclosed_family_size(emb):
    assert len(orthoclosed_sets(emb)) == 16


def test_double_orthocomplement(emb):
    orth = ortho_matrix(emb)
    n = orth.shape[0]
    for bits in range(1 << n):
        subset = frozenset(i for i in range(n) if bits >> i & 1)
        perp = ortho_complement(emb, subset, orth)
        # one complement already lands on a closed set
        assert ortho_complement(emb, ortho_complement(emb, perp, orth),
                                orth) == perp


def test_double_orthogonal_is_a_closure(emb):
    orth = ortho_matrix(emb)
    n = orth.shape[0]
    for bits in range(1 << n):
        subset = frozenset(i for i in range(n) if bits >> i & 1)
        one, two = orthoclosure(emb, subset, orth)
        assert subset <= two
        # closing again changes nothing
        assert ortho_complement(emb, two, orth) == one


def test_closed_sets_disjoint_from_their_complement(emb):
    orth = ortho_matrix(emb)
    for closed in orthoclosed_sets(emb, orth):
        assert not (closed & ortho_complement(emb, closed, orth))


_Z2C = build_completion(spin_space(2))
_EMB = _Z2C.embedding
_ORTH = ortho_matrix(_EMB)
_N = _ORTH.shape[0]


@settings(max_examples=150, deadline=None)
@given(st.sets(st.integers(0, _N - 1)), st.sets(st.integers(0, _N - 1)))
def test_orthocomplement_is_antitone(a, b):
    small, large = frozenset(a), frozenset(a | b)
    pa = ortho_complement(_EMB, small, _ORTH)
    pb = ortho_complement(_EMB, large, _ORTH)
    assert pb <= pa
