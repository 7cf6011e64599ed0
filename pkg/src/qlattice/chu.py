"""Effects over a state space, the evaluation map, and two-sided morphisms.

An effect is a pair of optional elements (yes part, no part).  Evaluating an
effect at a state answers Y when the yes part lies below the state, N when
the no part does, and BOT otherwise; a missing part never matches.  A valid
two-sided effect has unbounded parts, so the two answers can never fire at
once.

Morphisms come in adjoint pairs: a meet-preserving forward map on states
determines a unique dual map on effects and vice versa.
"""

from dataclasses import dataclass

from .core_order import (BOT, NO, YES, InputError, CapExceeded,
                         bool_meet, bool_bar, StateSpace, bool_space)


@dataclass(frozen=True)
class Effect(object):
    """yes/no parts are element ids; None encodes an absent part."""
    yes: object = None
    no: object = None

    def serialize(self, space):
        return {"yes": None if self.yes is None else space.names[self.yes],
                "no": None if self.no is None else space.names[self.no]}


BOTTOM_EFFECT = Effect(None, None)


def make_effect(space, yes=None, no=None):
    if yes is not None and no is not None and space.bounded((yes, no)):
        raise InputError("effect parts %r, %r share an upper bound"
                         % (space.names[yes], space.names[no]))
    return Effect(yes, no)


def yes_effect(space):
    """The trivially-true effect: yes part bottom, no part absent."""
    return Effect(space.bottom, None)


def effect_bar(l):
    return Effect(l.no, l.yes)


def evaluate(space, l, sigma):
    if l.yes is not None and space.leq[l.yes, sigma]:
        return YES
    if l.no is not None and space.leq[l.no, sigma]:
        return NO
    return BOT


def effect_profile(space, l):
    return tuple(evaluate(space, l, s) for s in range(space.n))


def _part_meet(space, x, y):
    # absent absorbs; a bounded pair joins, an unbounded pair degrades to absent
    if x is None or y is None:
        return None
    return space.join(x, y)


def effect_meet(space, l1, l2):
    return Effect(_part_meet(space, l1.yes, l2.yes),
                  _part_meet(space, l1.no, l2.no))


def effect_meet_all(space, effects):
    out = yes_effect(space)
    for l in effects:
        out = effect_meet(space, out, l)
    return out


def _part_sup(space, x, y):
    # absent is the unit here
    if x is None:
        return y
    if y is None:
        return x
    return space.meet(x, y)


def effect_sup(space, l1, l2):
    """Least common refinement of two effects, or None when they clash."""
    yes = _part_sup(space, l1.yes, l2.yes)
    no = _part_sup(space, l1.no, l2.no)
    if yes is not None and no is not None and space.bounded((yes, no)):
        return None
    return Effect(yes, no)


def all_effects(space, cap=4096):
    """Every valid effect, bottom effect first, then one- and two-sided
    ones in element order."""
    if space.n * space.n > cap:
        raise CapExceeded("effect enumeration over %d candidate pairs (cap %d)"
                          % (space.n * space.n, cap))
    out = [BOTTOM_EFFECT]
    out.extend(Effect(i, None) for i in range(space.n))
    out.extend(Effect(None, i) for i in range(space.n))
    for i in range(space.n):
        for j in range(space.n):
            if not space.bounded((i, j)):
                out.append(Effect(i, j))
    return out


def check_extensionality(space, effects=None):
    """Distinct effects must evaluate differently somewhere, and distinct
    states must be told apart by some effect."""
    effects = all_effects(space) if effects is None else effects
    profiles = {}
    for l in effects:
        p = effect_profile(space, l)
        if p in profiles and profiles[p] != l:
            return False, (profiles[p], l)
        profiles[p] = l
    columns = {}
    for s in range(space.n):
        col = tuple(evaluate(space, l, s) for l in effects)
        if col in columns:
            return False, (space.names[columns[col]], space.names[s])
        columns[col] = s
    return True, None


def check_morphism(source, target, forward):
    """True iff the map preserves all pairwise meets; otherwise returns the
    first violating pair in id order."""
    for i in range(source.n):
        for j in range(i, source.n):
            if forward[source.meet(i, j)] != target.meet(forward[i], forward[j]):
                return False, (source.names[i], source.names[j])
    return True, None


class ChuMorphism(object):
    """A meet-preserving state map together with its derived effect dual."""

    def __init__(self, source, target, forward):
        forward = tuple(int(f) for f in forward)
        if len(forward) != source.n:
            raise InputError("forward map covers %d of %d elements"
                             % (len(forward), source.n))
        ok, witness = check_morphism(source, target, forward)
        if not ok:
            raise InputError("not a homomorphism: meet of %r, %r not preserved"
                             % witness)
        self.source = source
        self.target = target
        self.forward = forward
        self._source_profiles = None

    def apply(self, i):
        return self.forward[i]

    def dual(self, l):
        """The unique source effect evaluating like l after the forward map."""
        if self._source_profiles is None:
            self._source_profiles = {effect_profile(self.source, m): m
                                     for m in all_effects(self.source)}
        wanted = tuple(evaluate(self.target, l, self.forward[s])
                       for s in range(self.source.n))
        try:
            return self._source_profiles[wanted]
        except KeyError:
            raise InputError("no dual effect matches profile of %r" % (l,))

    def compose(self, other):
        """self after other."""
        if other.target is not self.source:
            raise InputError("composition endpoint mismatch")
        return ChuMorphism(other.source, self.target,
                           [self.forward[other.forward[i]]
                            for i in range(other.source.n)])

    def pointwise_meet(self, other):
        if other.source is not self.source or other.target is not self.target:
            raise InputError("pointwise meet endpoint mismatch")
        return ChuMorphism(self.source, self.target,
                           [self.target.meet(self.forward[i], other.forward[i])
                            for i in range(self.source.n)])


def measurement(space, l, bool3=None):
    """The two-outcome observation of an effect, as a morphism into the
    three-outcome domain."""
    bool3 = bool_space() if bool3 is None else bool3
    forward = [bool3.index(evaluate(space, l, s)) for s in range(space.n)]
    return ChuMorphism(space, bool3, forward)


def state_from_effect_map(space, effects, b):
    """Recover the unique state whose evaluations realize the outcome
    assignment b over the given effects."""
    l_b = effect_meet_all(space, (l for l in effects if b(l) == YES))
    candidates = [s for s in range(space.n) if evaluate(space, l_b, s) == YES]
    if not candidates:
        raise InputError("no state realizes the YES class")
    sigma = space.meet_all(candidates)
    for l in effects:
        if evaluate(space, l, sigma) != b(l):
            raise InputError("not a homomorphism: effect %r disagrees at %r"
                             % (l, space.names[sigma]))
    return sigma
