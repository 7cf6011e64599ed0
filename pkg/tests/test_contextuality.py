from qlattice import chu
from qlattice.realspaces import simplex_space, spin_space
from qlattice.ontic import build_completion
from qlattice.contextuality import (find_joint_morphism, maximal_contexts,
                                    coherent_descriptions, verify_model_iso)


def test_model_iso_on_completed_spin_pair(z2_completion):
    report = verify_model_iso(z2_completion)
    assert report["descriptions"] == 9
    assert report["states"] == 9
    assert report["bijective"]
    assert report["meet_homomorphism"]
    assert report["contextual"]


def test_simplex_model_is_noncontextual():
    comp = build_completion(simplex_space(3))
    report = verify_model_iso(comp)
    assert report["bijective"]
    assert not report["contextual"]


def test_maximal_context_count(z2_completion):
    assert len(maximal_contexts(z2_completion)) == 6


def test_contexts_cover_every_sharp_effect(z2, z2_completion):
    cover = maximal_contexts(z2_completion)
    sharp = set()
    for p in z2.space.pures():
        l = chu.make_effect(z2.space, p, z2.star_of(p))
        sharp.add((l.yes, l.no))
    covered = set()
    for ctx in cover:
        for l in ctx.effects:
            covered.add((l.yes, l.no))
    assert sharp <= covered


def test_no_joint_morphism_for_incompatible_pair(z2, z2_completion):
    a, b = z2.space.index("a"), z2.space.index("b")
    la = chu.make_effect(z2.space, a, z2.star_of(a))
    lb = chu.make_effect(z2.space, b, z2.star_of(b))
    assert find_joint_morphism(z2_completion, [la, lb]) is None


def test_joint_morphism_exists_on_a_simplex():
    z3 = simplex_space(3)
    comp = build_completion(z3)
    pures = z3.space.pures()
    effects = [chu.make_effect(z3.space, p, z3.star_of(p)) for p in pures[:2]]
    assert find_joint_morphism(comp, effects) is not None


def test_coherent_descriptions_count(z2_completion):
    cover, descs = coherent_descriptions(z2_completion)
    assert len(descs) == 9
