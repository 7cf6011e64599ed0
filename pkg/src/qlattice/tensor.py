"""Minimal tensor product of two real spaces.

An element of the product is canonically represented by its cover set: the
set of pure tensors lying above it.  Order is reverse inclusion of cover
sets.  Whether a list of generating pairs sits below a given pure tensor is
decided by the expansion formula: the full left meet must refine the left
target, the full right meet the right target, and for every proper split of
the index set one of the two sides must already refine its target.

A pair of simplex factors takes a fast path where every nonempty set of pure
tensors is an element; `SimplexPower` extends that to n-fold powers as plain
bitmasks without ever materializing a dense order matrix.
"""

from itertools import product

import numpy as np

from .core_order import InputError, CapExceeded, StateSpace, bool_meet_all, bool_bullet
from . import chu
from .realspaces import RealSpace, is_deterministic, real_effects


def _reduce_generators(space_a, space_b, gens):
    """Drop duplicate pairs and pairs refined componentwise by another."""
    gens = sorted(set((int(a), int(b)) for a, b in gens))
    return [(a, b) for a, b in gens
            if not any((x, y) != (a, b)
                       and space_a.leq[x, a] and space_b.leq[y, b]
                       for x, y in gens)]


class TensorSpace(object):
    """The minimal tensor of two real spaces, fully enumerated."""

    def __init__(self, left, right, cap=10 ** 5):
        self.left = left
        self.right = right
        la, lb = left.space, right.space
        self.pure_pairs = [(pa, pb) for pa in la.pures() for pb in lb.pures()]
        self._pair_index = {pp: k for k, pp in enumerate(self.pure_pairs)}
        self._pure_a = sorted(la.pures())
        self._pure_b = sorted(lb.pures())
        self._ta = np.array([pp[0] for pp in self.pure_pairs])
        self._tb = np.array([pp[1] for pp in self.pure_pairs])
        self._norm_cache = {}
        if is_deterministic(left) and is_deterministic(right):
            self._enumerate_simplex(cap)
        else:
            self._enumerate_meets(cap)
        self._install_space()

    # -- the expansion-formula order test ---------------------------------

    def normalize(self, gens):
        """Cover set (as a frozenset of pure-pair indices) of the meet of
        the given generating pairs."""
        gens = _reduce_generators(self.left.space, self.right.space, gens)
        key = tuple(gens)
        hit = self._norm_cache.get(key)
        if hit is not None:
            return hit
        out = frozenset(int(k) for k in np.flatnonzero(self._dominated_targets(gens)))
        self._norm_cache[key] = out
        return out

    def _dominated_targets(self, gens):
        la, lb = self.left.space, self.right.space
        n = len(gens)
        if n == 0:
            raise InputError("empty generator list")
        if n > 20:
            raise CapExceeded("expansion formula over %d generators" % n)
        size = 1 << n
        lm = np.zeros(size, dtype=np.int64)
        rm = np.zeros(size, dtype=np.int64)
        for b in range(n):
            half = 1 << b
            lm[half:2 * half] = la._meet_table[lm[:half], gens[b][0]]
            rm[half:2 * half] = lb._meet_table[rm[:half], gens[b][1]]
            lm[half] = gens[b][0]
            rm[half] = gens[b][1]
        l_ok = la.leq[lm[1:]][:, self._ta]
        r_ok = lb.leq[rm[1:]][:, self._tb]
        ok = l_ok[-1] & r_ok[-1]
        if n > 1:
            ok &= (l_ok[:-1] | r_ok[:-1][::-1]).all(axis=0)
        return ok

    def dominates(self, gens, target_pair):
        gens = _reduce_generators(self.left.space, self.right.space, gens)
        k = self._pair_index[tuple(target_pair)]
        return bool(self._dominated_targets(gens)[k])

    # -- enumeration -------------------------------------------------------

    def _enumerate_simplex(self, cap):
        count = (1 << len(self.pure_pairs)) - 1
        if count > cap:
            raise CapExceeded("simplex tensor needs %d elements (cap %d)"
                              % (count, cap))
        p = len(self.pure_pairs)
        self._covers = [frozenset(k for k in range(p) if mask >> k & 1)
                        for mask in range(1, count + 1)]

    def _enumerate_meets(self, cap):
        gens_of = {}
        queue = []
        for k, pp in enumerate(self.pure_pairs):
            u = frozenset([k])
            gens_of[u] = [pp]
            queue.append(u)
        seen_pairs = set()
        while queue:
            u = queue.pop()
            known = list(gens_of.keys())
            for v in known:
                if u == v:
                    continue
                pair_key = frozenset((u, v))
                if pair_key in seen_pairs:
                    continue
                seen_pairs.add(pair_key)
                w = self.normalize(gens_of[u] + gens_of[v])
                if w not in gens_of:
                    if len(gens_of) + 1 > cap:
                        raise CapExceeded(
                            "tensor enumeration cap %d hit" % cap)
                    gens_of[w] = _reduce_generators(
                        self.left.space, self.right.space,
                        gens_of[u] + gens_of[v])
                    queue.append(w)
        self._covers = sorted(gens_of.keys(), key=lambda s: (len(s), sorted(s)))

    def _install_space(self):
        covers = self._covers
        self._cover_index = {u: i for i, u in enumerate(covers)}
        n = len(covers)
        p = len(self.pure_pairs)
        masks = np.zeros((n, p), dtype=bool)
        for i, u in enumerate(covers):
            masks[i, list(u)] = True
        # reverse inclusion of cover sets
        leq = np.zeros((n, n), dtype=bool)
        for i in range(n):
            leq[i] = (~masks[i] & masks).sum(axis=1) == 0
        names = [self._label(u) for u in covers]
        space = StateSpace(names, leq)
        star = {}
        bottom = self._cover_index[frozenset(range(p))]
        star_cover = [self._pure_pair_star_cover(k) for k in range(p)]
        for i, u in enumerate(covers):
            if i == bottom:
                continue
            s = frozenset.intersection(*[star_cover[k] for k in u])
            star[i] = self._cover_index[s]
        self.space = space
        self.real_space = RealSpace(space, star)
        self._masks = masks

    def _pure_pair_star_cover(self, k):
        pa, pb = self.pure_pairs[k]
        sa = self.left.star_of(pa)
        sb = self.right.star_of(pb)
        la, lb = self.left.space, self.right.space
        out = set()
        for j, (qa, qb) in enumerate(self.pure_pairs):
            if la.leq[sa, qa] or lb.leq[sb, qb]:
                out.add(j)
        return frozenset(out)

    # -- labels ------------------------------------------------------------

    def _rectangles(self, u):
        """Maximal closed rectangles inside a cover set, as (x, y) pairs of
        factor elements."""
        la, lb = self.left.space, self.right.space
        rects = []
        for x in range(la.n):
            ax = [p for p in self._pure_a if la.leq[x, p]]
            for y in range(lb.n):
                by = [q for q in self._pure_b if lb.leq[y, q]]
                rect = frozenset(self._pair_index[(p, q)]
                                 for p in ax for q in by)
                if rect and rect <= u:
                    rects.append(((x, y), rect))
        out = []
        for (xy, rect) in rects:
            if not any(rect < other for _, other in rects):
                out.append((xy, rect))
        return out

    def _label(self, u):
        la, lb = self.left.space, self.right.space
        rects = sorted(xy for xy, _ in self._rectangles(u))
        terms = ["%s⊗%s" % (la.names[x], lb.names[y]) for x, y in rects]
        return " ⊓ ".join(terms)

    # -- queries -----------------------------------------------------------

    def index_of(self, gens):
        """Element id of the meet of the given generating pairs."""
        u = self.normalize(gens)
        return self._cover_index[u]

    def cover_set(self, idx):
        return self._covers[idx]

    def pure_tensor(self, pa, pb):
        return self._cover_index[frozenset([self._pair_index[(pa, pb)]])]

    def pure_pair_of(self, idx):
        u = self._covers[idx]
        if len(u) == 1:
            return self.pure_pairs[next(iter(u))]
        return None

    def meet(self, i, j):
        return self.space.meet(i, j)

    def join(self, i, j):
        """Meet of the shared cover pures, absent when none are shared."""
        u = self._covers[i] & self._covers[j]
        if not u:
            return None
        return self.index_of([self.pure_pairs[k] for k in u])

    def partial_trace(self, idx, side):
        if side not in (1, 2):
            raise InputError("trace side must be 1 or 2")
        u = self._covers[idx]
        factor = self.left.space if side == 1 else self.right.space
        return factor.meet_all(self.pure_pairs[k][side - 1] for k in u)

    def star(self, idx):
        return self.real_space.star_of(idx)

    def serialize_element(self, idx):
        la, lb = self.left.space, self.right.space
        return sorted([la.names[self.pure_pairs[k][0]],
                       lb.names[self.pure_pairs[k][1]]]
                      for k in self._covers[idx])

    def __len__(self):
        return len(self._covers)


def build_tensor(rs_a, rs_b, cap=10 ** 5):
    return TensorSpace(rs_a, rs_b, cap=cap)


def nfold_tensor(factors, cap=10 ** 5):
    """Left fold of pairwise products; returns the final TensorSpace."""
    if len(factors) < 2:
        raise InputError("n-fold tensor needs at least two factors")
    out = build_tensor(factors[0], factors[1], cap=cap)
    for f in factors[2:]:
        out = build_tensor(out.real_space, f, cap=cap)
    return out


def indeterministic_tensor(rs_a, rs_b, cap=10 ** 6):
    """Ontic completion of the minimal tensor."""
    from .ontic import OnticCompletion
    ts = build_tensor(rs_a, rs_b)
    return ts, OnticCompletion(ts.real_space, cap=cap)


def congruence_oracle(ts, gens1, gens2, effect_cap=4096):
    """Brute-force check that two generator sets define the same element:
    equality of the bullet-meet evaluation against every real effect pair."""
    effects_a = real_effects(ts.left)
    effects_b = real_effects(ts.right)
    if len(effects_a) * len(effects_b) > effect_cap:
        raise CapExceeded("congruence oracle over %d effect pairs"
                          % (len(effects_a) * len(effects_b)))
    for la in effects_a:
        for lb in effects_b:
            v1 = bool_meet_all(
                bool_bullet(chu.evaluate(ts.left.space, la, a),
                            chu.evaluate(ts.right.space, lb, b))
                for a, b in gens1)
            v2 = bool_meet_all(
                bool_bullet(chu.evaluate(ts.left.space, la, a),
                            chu.evaluate(ts.right.space, lb, b))
                for a, b in gens2)
            if v1 != v2:
                return False
    return True


def tensor_map(src, dst, f, g):
    """Componentwise image map between tensor spaces: the meet of the pairs
    (f(a), g(b)) over any generator list; f, g are real-element maps."""
    def apply(idx):
        gens = [(f(a), g(b))
                for a, b in (src.pure_pairs[k] for k in src.cover_set(idx))]
        return dst.index_of(gens)
    return apply


class SimplexPower(object):
    """n-fold tensor power of simplex factors, as bitmasks over pure tuples.

    Element masks are nonzero ints; bit t is set when pure tuple t lies
    above the element.  Order is mask superset, meet is bitwise or, join is
    bitwise and when nonzero, star is complement.
    """

    def __init__(self, factors):
        self.factors = list(factors)
        self.pure_lists = [sorted(f.space.pures()) for f in self.factors]
        self.tuples = list(product(*self.pure_lists))
        self._tuple_index = {t: k for k, t in enumerate(self.tuples)}
        self.count = len(self.tuples)
        if self.count > 30:
            raise CapExceeded("simplex power over %d pure tuples" % self.count)
        self.full = (1 << self.count) - 1

    def pure_mask(self, t):
        return 1 << self._tuple_index[tuple(t)]

    def leq(self, x, y):
        return x | y == x

    def meet(self, x, y):
        return x | y

    def join(self, x, y):
        z = x & y
        return z if z else None

    def star(self, x):
        if x == self.full:
            raise InputError("star of the bottom element")
        return self.full ^ x

    def embed_factors(self, masks_per_factor):
        """Tensor of one per-factor pure set each: the product mask."""
        out = 0
        for k, t in enumerate(self.tuples):
            if all(t[i] in masks_per_factor[i] for i in range(len(self.factors))):
                out |= 1 << k
        return out

    def project(self, mask, coords):
        """Partial trace onto the chosen coordinates, as a mask of the
        corresponding SimplexPower."""
        sub = SimplexPower([self.factors[i] for i in coords])
        out = 0
        for k, t in enumerate(self.tuples):
            if mask >> k & 1:
                out |= sub.pure_mask(tuple(t[i] for i in coords))
        return out

    def closure(self, masks):
        """Canonical antichain: close under bounded joins, keep maxima."""
        current = set(masks)
        while True:
            extra = set()
            for x in current:
                for y in current:
                    z = x & y
                    if z and z not in current:
                        extra.add(z)
            if not extra:
                break
            current |= extra
        out = [x for x in current
               if not any(y != x and self.leq(x, y) for y in current)]
        return sorted(out)

    def is_admissible(self, masks):
        closed = self.closure(masks)
        for x in closed:
            for y in closed:
                if x != self.full and self.leq(y, self.full ^ x):
                    return False
        return True

    def name(self, mask):
        parts = []
        for k, t in enumerate(self.tuples):
            if mask >> k & 1:
                parts.append("⊗".join(self.factors[i].space.names[t[i]]
                                      for i in range(len(self.factors))))
        return "{" + ",".join(parts) + "}"
