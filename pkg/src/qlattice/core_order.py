"""Finite bounded meet-semilattices and the three-valued outcome domain.

The outcome domain has three values Y, N and BOT, ordered so that BOT sits
below the two definite answers.  On top of the meet that comes with this
order it carries a commutative "and"-like product (Y is the unit, N is
absorbing) and an involution swapping Y and N.

`StateSpace` is a finite meet-semilattice with a bottom element, stored as a
dense boolean order matrix.  Everything downstream (real structures, ontic
completions, tensors) is built out of these.
"""

import json

import numpy as np

YES = "Y"
NO = "N"
BOT = "BOT"
BOOL_VALUES = (YES, NO, BOT)


class InputError(ValueError):
    """Malformed or inconsistent input data."""


class CapExceeded(RuntimeError):
    """A configured size cap was hit before the computation finished."""


def bool_leq(x, y):
    return x == y or x == BOT


def bool_meet(x, y):
    return x if x == y else BOT


def bool_join(x, y):
    """Least upper bound, or None for the unbounded pair {Y, N}."""
    if x == y:
        return x
    if x == BOT:
        return y
    if y == BOT:
        return x
    return None


def bool_bullet(x, y):
    # commutative monoid: Y is the unit, N absorbs, BOT*BOT = BOT
    if x == NO or y == NO:
        return NO
    if x == YES:
        return y
    if y == YES:
        return x
    return BOT


def bool_bar(x):
    if x == YES:
        return NO
    if x == NO:
        return YES
    return BOT


def bool_meet_all(values):
    out = None
    for v in values:
        out = v if out is None else bool_meet(out, v)
    if out is None:
        raise InputError("meet of an empty family of outcomes")
    return out


def bool_bullet_all(values):
    out = YES
    for v in values:
        out = bool_bullet(out, v)
    return out


def _closure(mat):
    """Reflexive-transitive closure of a boolean relation matrix."""
    n = mat.shape[0]
    out = mat | np.eye(n, dtype=bool)
    while True:
        nxt = out | (out @ out)
        if (nxt == out).all():
            return out
        out = nxt


class StateSpace(object):
    """A finite meet-semilattice with bottom, over named elements.

    The order matrix `leq` is indexed so that leq[i, j] means element i lies
    below element j.  Validation is eager: antisymmetry, a unique bottom and
    the existence of a unique greatest common lower bound for every pair are
    all checked at construction time, and the first offending pair (in id
    order) is named in the error.
    """

    def __init__(self, names, leq):
        names = list(names)
        if len(set(names)) != len(names):
            dupes = sorted(n for n in set(names) if names.count(n) > 1)
            raise InputError("duplicate element names: %s" % dupes[0])
        leq = np.asarray(leq, dtype=bool)
        if leq.shape != (len(names), len(names)):
            raise InputError("order matrix shape %s does not match %d elements"
                             % (leq.shape, len(names)))
        self.names = names
        self.n = len(names)
        self.leq = leq
        self.leq.setflags(write=False)
        self._index = {name: i for i, name in enumerate(names)}
        self._validate()
        self._down_sizes = leq.sum(axis=0)
        self.bottom = int(np.flatnonzero(leq.sum(axis=1) == self.n)[0])
        strict = leq & ~np.eye(self.n, dtype=bool)
        self._cover_mat = strict & ~(strict @ strict)
        self._cover_mat.setflags(write=False)
        self.maximals = tuple(int(i) for i in np.flatnonzero(strict.sum(axis=1) == 0))
        self._meet_table = self._build_meet_table()

    def _validate(self):
        leq = self.leq
        n = self.n
        if not leq.diagonal().all():
            i = int(np.flatnonzero(~leq.diagonal())[0])
            raise InputError("order not reflexive at %r" % self.names[i])
        bad = leq & leq.T & ~np.eye(n, dtype=bool)
        if bad.any():
            i, j = np.argwhere(bad)[0]
            raise InputError("antisymmetry fails for %r, %r"
                             % (self.names[int(i)], self.names[int(j)]))
        trans = leq @ leq
        if (trans & ~leq).any():
            i, j = np.argwhere(trans & ~leq)[0]
            raise InputError("transitivity fails for %r, %r"
                             % (self.names[int(i)], self.names[int(j)]))
        if not (leq.sum(axis=1) == n).any():
            raise InputError("no bottom element")

    def _build_meet_table(self):
        n = self.n
        leq = self.leq
        sizes = leq.sum(axis=0)
        table = np.empty((n, n), dtype=np.int32)
        neg = np.int64(-1)
        for i in range(n):
            common = leq[:, i:i + 1] & leq            # column j: lower bounds of {i, j}
            score = np.where(common, sizes[:, None], neg)
            cand = score.argmax(axis=0)
            ok = ~(common & ~leq[:, cand]).any(axis=0)
            if not ok.all():
                j = int(np.flatnonzero(~ok)[0])
                raise InputError("no meet for %r, %r" % (self.names[i], self.names[j]))
            table[i] = cand
        table.setflags(write=False)
        return table

    # -- queries ---------------------------------------------------------

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise InputError("unknown element %r" % (name,))

    def below(self, i, j):
        return bool(self.leq[i, j])

    def meet(self, i, j):
        return int(self._meet_table[i, j])

    def meet_all(self, indices):
        it = iter(indices)
        try:
            out = next(it)
        except StopIteration:
            raise InputError("meet of an empty family")
        for k in it:
            out = self._meet_table[out, k]
        return int(out)

    def upper_bound_mask(self, indices):
        mask = np.ones(self.n, dtype=bool)
        for i in indices:
            mask &= self.leq[i]
        return mask

    def bounded(self, indices):
        return bool(self.upper_bound_mask(indices).any())

    def sup(self, indices):
        """Least upper bound, or None when the family has no upper bound."""
        ubs = np.flatnonzero(self.upper_bound_mask(indices))
        if ubs.size == 0:
            return None
        return self.meet_all(int(k) for k in ubs)

    def join(self, i, j):
        return self.sup((i, j))

    def down_mask(self, i):
        return self.leq[:, i]

    def up_mask(self, i):
        return self.leq[i]

    def upper_covers(self, i):
        return [int(j) for j in np.flatnonzero(self._cover_mat[i])]

    def lower_covers(self, i):
        return [int(j) for j in np.flatnonzero(self._cover_mat[:, i])]

    def covered_by(self, i, j):
        return bool(self._cover_mat[i, j])

    def pures(self):
        """Maximal elements; in every space here these are exactly the
        completely meet-irreducible ones."""
        return list(self.maximals)

    def pures_above(self, i):
        return [m for m in self.maximals if self.leq[i, m]]

    def generated_by_pures(self):
        return all(self.meet_all(self.pures_above(i)) == i
                   for i in range(self.n) if self.pures_above(i))

    def is_distributive(self):
        """Every element above a meet splits as a meet of elements above
        the two arguments."""
        for s1 in range(self.n):
            up1 = np.flatnonzero(self.leq[s1])
            for s2 in range(self.n):
                up2 = np.flatnonzero(self.leq[s2])
                reachable = np.zeros(self.n, dtype=bool)
                reachable[self._meet_table[np.ix_(up1, up2)].ravel()] = True
                need = self.leq[self.meet(s1, s2)].copy()
                need[s1] = need[s2] = False
                if (need & ~reachable).any():
                    return False
        return True

    def has_finite_rank(self):
        """Each bounded family contains a finite subfamily with the same
        least upper bound; automatic in a finite space, checked on pairs."""
        return all(self.sup((i,)) == i for i in range(self.n))

    def structure_report(self):
        return {
            "elements": self.n,
            "bottom": self.names[self.bottom],
            "pures": [self.names[i] for i in self.maximals],
            "generated_by_pures": self.generated_by_pures(),
            "distributive": self.is_distributive(),
            "finite_rank": self.has_finite_rank(),
        }

    # -- construction ----------------------------------------------------

    @classmethod
    def from_relation(cls, names, pairs):
        """Build from a list of (below, above) name pairs; the reflexive
        transitive closure is taken automatically."""
        names = list(names)
        idx = {name: i for i, name in enumerate(names)}
        mat = np.zeros((len(names), len(names)), dtype=bool)
        for a, b in pairs:
            if a not in idx or b not in idx:
                raise InputError("leq pair (%r, %r) uses an unknown element" % (a, b))
            mat[idx[a], idx[b]] = True
        return cls(names, _closure(mat))

    @classmethod
    def from_json(cls, text):
        data = json.loads(text) if isinstance(text, str) else text
        try:
            names = data["elements"]
            pairs = data["leq"]
        except (KeyError, TypeError):
            raise InputError("space JSON needs 'elements' and 'leq' keys")
        space = cls.from_relation(names, pairs)
        bottom = data.get("bottom")
        if bottom is not None and space.names[space.bottom] != bottom:
            raise InputError("declared bottom %r is not the least element" % bottom)
        return space

    def to_json_dict(self):
        pairs = [[self.names[int(i)], self.names[int(j)]]
                 for i, j in np.argwhere(self._cover_mat)]
        pairs.sort()
        return {"elements": list(self.names),
                "leq": pairs,
                "bottom": self.names[self.bottom]}

    def to_json(self):
        return json.dumps(self.to_json_dict(), indent=2)

    def to_dot(self, graph_name="space"):
        lines = ["digraph %s {" % graph_name, "  rankdir=BT;"]
        for name in self.names:
            lines.append('  "%s";' % name)
        for i, j in sorted(map(tuple, np.argwhere(self._cover_mat))):
            lines.append('  "%s" -> "%s";' % (self.names[int(i)], self.names[int(j)]))
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return "StateSpace(%d elements, bottom=%r)" % (self.n, self.names[self.bottom])


def bool_space():
    """The three-outcome domain as a StateSpace."""
    names = [YES, NO, BOT]
    pairs = [(BOT, YES), (BOT, NO)]
    return StateSpace.from_relation(names, pairs)
