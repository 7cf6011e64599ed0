"""Completion of a real structure by hidden states.

A hidden state is represented by the antichain of maximal real states lying
below it.  The pre-closure of a set U of real elements collects the maximal
least upper bounds reachable from below U; iterating it to a fixed point
yields the canonical antichain.  An antichain is admissible when its closure
never puts a starred element below another member; the completed space
consists of exactly the canonical admissible antichains, ordered by
"every member refines into some member".
"""

import numpy as np

from .core_order import InputError, CapExceeded, StateSpace
from .realspaces import RealSpace, RealStructureEmbedding


class LiftError(InputError):
    """A morphism image fails admissibility and cannot be lifted."""


def _max_subset(space, ids):
    ids = sorted(set(ids))
    return tuple(a for a in ids
                 if not any(b != a and space.leq[a, b] for b in ids))


def closure_step(space, members):
    """One application of the pre-closure: maximal elements z that are the
    least upper bound of their own trace below the input set."""
    leq = space.leq
    n = space.n
    down = np.zeros(n, dtype=bool)
    for u in members:
        down |= leq[:, u]
    idx = np.flatnonzero(down)
    inside = leq[idx, :].astype(np.float32)
    outside = (~leq[idx, :]).astype(np.float32)
    misses = inside.T @ outside          # misses[z, c] = |{x in trace(z), x not below c}|
    ub = misses == 0
    score = np.where(ub, space._down_sizes[None, :], n + 1)
    least = score.argmin(axis=1)
    fixed = np.flatnonzero(least == np.arange(n))
    sub = leq[np.ix_(fixed, fixed)] & ~np.eye(len(fixed), dtype=bool)
    keep = sub.sum(axis=1) == 0
    return tuple(int(z) for z in fixed[keep])


def closure(space, members, mode="full"):
    """Pre-closure (mode "pre") or its iterated fixed point (mode "full")."""
    members = sorted(set(int(m) for m in members))
    if not members:
        raise InputError("closure of an empty set")
    if space.bottom in members and len(members) > 1:
        raise InputError("bottom element inside a closure argument")
    if members == [space.bottom]:
        return (space.bottom,)
    if mode == "pre":
        return closure_step(space, members)
    if mode != "full":
        raise InputError("unknown closure mode %r" % (mode,))
    current = tuple(members)
    for _ in range(space.n + 1):
        nxt = closure_step(space, current)
        if nxt == current:
            return current
        current = nxt
    raise InputError("closure failed to stabilize")


def is_star_free(rs, members):
    """No member's star sits below another member."""
    for x in members:
        for y in members:
            if rs.space.leq[rs.star_of(x), y]:
                return False
    return True


def is_unbounded_star_free(rs, members):
    """Star-free and pairwise unbounded: the shape every member of the
    maximal candidate family has."""
    members = list(members)
    if not is_star_free(rs, members):
        return False
    for i, x in enumerate(members):
        for y in members[i + 1:]:
            if rs.space.bounded((x, y)):
                return False
    return True


def is_admissible(rs, members):
    members = [m for m in members if m != rs.space.bottom]
    if not members:
        return True
    return is_star_free(rs, closure(rs.space, members))


class OnticCompletion(object):
    """The completed space over a real structure, fully enumerated.

    Elements are canonical admissible antichains of non-bottom reals; the
    bottom is the singleton of the real bottom.  The enumeration closes the
    real singletons under binary joins, which reaches every canonical
    antichain (each one is the join of its own members).
    """

    def __init__(self, rs, cap=10 ** 6):
        if not isinstance(rs, RealSpace):
            raise InputError("completion needs a RealSpace")
        self.base = rs
        real = rs.space
        singles = [(i,) for i in range(real.n) if i != real.bottom]
        elements = {(real.bottom,)}
        elements.update(singles)
        self._join_cache = {}
        frontier = list(elements)
        candidates = 0
        while frontier:
            fresh = []
            for u in frontier:
                if u == (real.bottom,):
                    continue
                for s in singles:
                    if any(real.leq[s[0], x] for x in u):
                        continue
                    candidates += 1
                    if candidates > cap:
                        raise CapExceeded(
                            "completion candidate cap hit after %d elements"
                            % len(elements))
                    j = self._join_antichains(u, s)
                    if j is not None and j not in elements:
                        elements.add(j)
                        fresh.append(j)
            frontier = fresh
        order = sorted(elements, key=lambda u: (len(u), u))
        self.elements = order
        self._elem_index = {u: k for k, u in enumerate(order)}
        names = [self._name(u) for u in order]
        n = len(order)
        leq = np.zeros((n, n), dtype=bool)
        for i, u in enumerate(order):
            for j, v in enumerate(order):
                leq[i, j] = self._below(u, v)
        self.space = StateSpace(names, leq)
        real_ids = [self._elem_index[(i,)] for i in range(real.n)
                    if i != real.bottom]
        bottom_id = self._elem_index[(real.bottom,)]
        star = {}
        for i in range(real.n):
            if i != real.bottom:
                star[self._elem_index[(i,)]] = self._elem_index[(rs.star_of(i),)]
        self.embedding = RealStructureEmbedding(
            self.space, real_ids + [bottom_id], star)

    def _name(self, u):
        real = self.base.space
        if len(u) == 1:
            return real.names[u[0]]
        return "{" + ",".join(real.names[i] for i in u) + "}"

    def _below(self, u, v):
        real = self.base.space
        if u == (real.bottom,):
            return True
        return all(any(real.leq[x, y] for y in v) for x in u)

    def _join_antichains(self, u, v):
        """Canonical join, or None when the union is inadmissible."""
        real = self.base.space
        merged = sorted(set(u) | set(v))
        merged = tuple(m for m in merged if m != real.bottom)
        if not merged:
            return (real.bottom,)
        cache = getattr(self, "_join_cache", None)
        if cache is not None and merged in cache:
            return cache[merged]
        out = closure(real, merged)
        if not is_star_free(self.base, out):
            out = None
        if cache is not None:
            cache[merged] = out
        return out

    # -- queries -----------------------------------------------------------

    def embed(self, real_id):
        return self._elem_index[(int(real_id),)] \
            if real_id != self.base.space.bottom \
            else self._elem_index[(self.base.space.bottom,)]

    def components(self, idx):
        """The canonical antichain of maximal reals below an element."""
        return self.elements[idx]

    def element_of(self, members):
        """Completion element for a canonical antichain of real ids."""
        key = tuple(sorted(set(int(m) for m in members)))
        try:
            return self._elem_index[key]
        except KeyError:
            raise InputError("no completion element with components %r" % (key,))

    def sharpening(self, members):
        """Least element dominating a set of reals, or None if inadmissible."""
        merged = [m for m in members if m != self.base.space.bottom]
        if not merged:
            return self._elem_index[(self.base.space.bottom,)]
        out = closure(self.base.space, sorted(set(merged)))
        if not is_star_free(self.base, out):
            return None
        return self._elem_index[out]

    def real_id(self, idx):
        """The base element for a real completion element, else None."""
        u = self.elements[idx]
        if len(u) == 1:
            return u[0]
        return None

    def is_hidden(self, idx):
        return not self.embedding.is_real(idx)

    def meet(self, i, j):
        return self.space.meet(i, j)

    def join(self, i, j):
        """Canonical join, or None when the union is inadmissible."""
        u = self._join_antichains(self.elements[i], self.elements[j])
        return None if u is None else self._elem_index[u]

    def serialize_element(self, idx):
        return sorted(self.base.space.names[i] for i in self.elements[idx])

    def __len__(self):
        return len(self.elements)


def build_completion(rs, cap=10 ** 6):
    return OnticCompletion(rs, cap=cap)


def lift_morphism(comp_a, comp_b, f):
    """Lift a meet-preserving real map f (base-A id -> base-B id) to the
    completions; raises LiftError when some image antichain is inadmissible."""
    real_b = comp_b.base.space
    forward = []
    for idx in range(len(comp_a.elements)):
        image = [f(w) for w in comp_a.components(idx)]
        target = comp_b.sharpening(image)
        if target is None:
            raise LiftError(
                "image of %r is inadmissible" % comp_a.space.names[idx])
        forward.append(target)
    return forward
