"""No-broadcasting and Bell non-locality on completed tensor spaces.

The broadcast question asks for a real morphism copying every real state
into both legs of the self-tensor.  Simplex-like (deterministic) spaces
admit the diagonal copy map; any indeterministic space is blocked by a
forced-value clash at the bottom, replayed here explicitly.

The Bell pipeline builds the hidden state

    Sigma = (s1 (x) t1  meet  s2 (x) t2)  join  (s1* (x) bot  meet  bot (x) t1*),

computes its four measurement marginals in the boolean tensor square, and
scans the whole fourfold boolean simplex power for a global state matching
all four at once.  Absence of such a state is Bell non-locality.
"""

import numpy as np

from .core_order import YES, NO, BOT, InputError
from . import chu
from .realspaces import bool_real_space, spin_space, is_deterministic
from .tensor import build_tensor, indeterministic_tensor, SimplexPower
from .ontic import closure, build_completion
from .contextuality import find_joint_morphism

BOOL_ID = {YES: 0, NO: 1, BOT: 2}


# -- broadcasting -----------------------------------------------------------

def diagonal_broadcast(rs, cap=10 ** 5):
    """The copy morphism on a deterministic space: each real state goes to
    the meet of w (x) w over the pures w above it.  Returns the self-tensor
    and the forward map; raises when a trace identity fails."""
    ts = build_tensor(rs, rs, cap=cap)
    space = rs.space
    forward = []
    for sigma in range(space.n):
        ups = sorted(space.pures_above(sigma))
        forward.append(ts.index_of([(w, w) for w in ups]))
    for sigma in range(space.n):
        for side in (1, 2):
            if ts.partial_trace(forward[sigma], side) != sigma:
                raise InputError("diagonal broadcast fails the trace "
                                 "identity at %r" % space.names[sigma])
    return ts, forward


def _indeterministic_pair(rs):
    """Pures s1, s2 with s2 outside {s1, s1*}, in name order."""
    space = rs.space
    pures = sorted(space.pures())
    for s1 in pures:
        for s2 in pures:
            if s2 != s1 and s2 != rs.star_of(s1):
                return s1, s2
    return None


def broadcast_obstruction(rs, confirm_cap=12):
    """Decide broadcastability of a real space.

    Deterministic spaces get the diagonal copy map, trace-verified.  For an
    indeterministic space the no-broadcasting proof is replayed: two sharp
    measurements force the images of s1, s1* and s2*, and the two ways of
    reaching the bottom disagree.  On small spaces the obstruction is
    confirmed by an exhaustive joint-morphism search.
    """
    space = rs.space
    if is_deterministic(rs):
        ts, forward = diagonal_broadcast(rs)
        return {
            "broadcasts": True,
            "witness": {
                "kind": "diagonal",
                "map": {space.names[s]: ts.space.names[forward[s]]
                        for s in range(space.n)},
            },
        }
    s1, s2 = _indeterministic_pair(rs)
    s1s, s2s = rs.star_of(s1), rs.star_of(s2)
    bb = build_tensor(bool_real_space(), bool_real_space())
    y, n, bot = 0, 1, 2
    forced = {
        space.names[s1]: bb.index_of([(y, bot)]),
        space.names[s1s]: bb.index_of([(n, bot)]),
        space.names[s2s]: bb.index_of([(bot, n)]),
    }
    via_pair = bb.meet(bb.index_of([(y, bot)]), bb.index_of([(n, bot)]))
    via_cross = bb.meet(bb.index_of([(n, bot)]), bb.index_of([(bot, n)]))
    witness = {
        "kind": "obstruction",
        "measurements": [space.names[s1], space.names[s2]],
        "forced": {k: bb.space.names[v] for k, v in forced.items()},
        "bottom_images": [bb.space.names[via_pair], bb.space.names[via_cross]],
    }
    out = {"broadcasts": False, "witness": witness}
    if space.n <= confirm_cap:
        comp = build_completion(rs)
        l1 = chu.make_effect(space, s1, s1s)
        l2 = chu.make_effect(space, s2, s2s)
        out["joint_morphism_absent"] = \
            find_joint_morphism(comp, [l1, l2]) is None
    return out


# -- the Bell scenario ------------------------------------------------------

class BellScenario(object):
    """A bipartite completed tensor with the candidate non-local state and
    the two pairs of sharp measurements l(s, s*) on each side."""

    def __init__(self, left, right, s1, s2, t1, t2, ts=None, completion=None):
        self.left = left
        self.right = right
        if ts is None or completion is None:
            ts, completion = indeterministic_tensor(left, right)
        self.ts = ts
        self.completion = completion
        ls, rsp = left.space, right.space
        for p, sp in ((s1, ls), (s2, ls), (t1, rsp), (t2, rsp)):
            if p not in sp.pures():
                raise InputError("scenario states must be pure")
        if s1 in (s2, left.star_of(s2)):
            raise InputError("left pures must avoid the star pair")
        if t1 in (t2, right.star_of(t2)):
            raise InputError("right pures must avoid the star pair")
        self.s1, self.s2, self.t1, self.t2 = s1, s2, t1, t2
        m1 = ts.index_of([(s1, t1), (s2, t2)])
        m2 = ts.index_of([(left.star_of(s1), rsp.bottom),
                          (ls.bottom, right.star_of(t1))])
        sigma = completion.sharpening([m1, m2])
        if sigma is None or not completion.is_hidden(sigma):
            raise InputError("the Bell join did not produce a hidden state")
        self.sigma = sigma
        self.phi = (chu.make_effect(ls, s1, left.star_of(s1)),
                    chu.make_effect(ls, s2, left.star_of(s2)))
        self.rho = (chu.make_effect(rsp, t1, right.star_of(t1)),
                    chu.make_effect(rsp, t2, right.star_of(t2)))

    def components(self):
        return self.completion.components(self.sigma)

    def serialize_sigma(self):
        return self.completion.serialize_element(self.sigma)


def bell_scenario(na=2, nb=2):
    """The paper's default scenario on the spin pair (a, b) of each side."""
    left, right = spin_space(na), spin_space(nb)
    return BellScenario(left, right,
                        left.space.index("a"), left.space.index("b"),
                        right.space.index("a"), right.space.index("b"))


def _bool_image(rs, l):
    """Pure-to-boolean value table of a sharp measurement."""
    return {p: BOOL_ID[chu.evaluate(rs.space, l, p)]
            for p in rs.space.pures()}


def measurement_image(scenario, l_left, l_right, xi=None, bb=None):
    """(f (x) g)(xi) for two sharp measurements: map every component of xi
    generator-by-generator into the boolean tensor square, then take the
    canonical antichain there.  Returns a single boolean tensor element."""
    ts = scenario.ts
    comp = scenario.completion
    if xi is None:
        xi = scenario.sigma
    if bb is None:
        bb = build_tensor(bool_real_space(), bool_real_space())
    fmap = _bool_image(scenario.left, l_left)
    gmap = _bool_image(scenario.right, l_right)
    images = []
    for member in comp.components(xi):
        gens = [(fmap[p], gmap[q])
                for p, q in (ts.pure_pairs[k] for k in ts.cover_set(member))]
        images.append(bb.index_of(gens))
    members = [m for m in images if m != bb.space.bottom]
    if not members:
        return bb.space.bottom
    anti = closure(bb.space, members)
    if len(anti) != 1:
        raise InputError("measurement image is not a single boolean "
                         "tensor element")
    return anti[0]


def bell_marginals(scenario, bb=None):
    """The four pairwise marginals Phi_13, Phi_14, Phi_23, Phi_24."""
    if bb is None:
        bb = build_tensor(bool_real_space(), bool_real_space())
    out = {}
    for a in (1, 2):
        for b in (3, 4):
            out["%d%d" % (a, b)] = measurement_image(
                scenario, scenario.phi[a - 1], scenario.rho[b - 3],
                bb=bb)
    return out


# -- the global-state scan --------------------------------------------------

def _pair_mask(bb, idx, sub_power):
    """A boolean tensor element as a pure-pair bitmask of the 2-factor
    simplex power."""
    mask = 0
    for k in bb.cover_set(idx):
        mask |= sub_power.pure_mask(bb.pure_pairs[k])
    return mask


def lambda_search(phi13, phi14, phi23, phi24, bb=None):
    """Exhaustive scan of the fourfold boolean simplex power for a state
    whose four pairwise traces match the given marginals.  Returns the
    smallest matching mask, or None."""
    brs = bool_real_space()
    if bb is None:
        bb = build_tensor(brs, brs)
    power = SimplexPower([brs] * 4)
    sub = SimplexPower([brs, brs])
    targets = {
        (0, 2): _pair_mask(bb, phi13, sub),
        (0, 3): _pair_mask(bb, phi14, sub),
        (1, 2): _pair_mask(bb, phi23, sub),
        (1, 3): _pair_mask(bb, phi24, sub),
    }
    count = power.count
    masks = np.arange(1, power.full + 1, dtype=np.uint32)
    bits = (masks[:, None] >> np.arange(count)[None, :]) & 1
    ok = np.ones(len(masks), dtype=bool)
    for coords, want in targets.items():
        table = [sub.pure_mask(tuple(t[i] for i in coords))
                 for t in power.tuples]
        proj = np.zeros(len(masks), dtype=np.uint32)
        for k in range(count):
            proj |= np.where(bits[:, k] == 1, np.uint32(table[k]),
                             np.uint32(0))
        ok &= proj == want
    hits = np.flatnonzero(ok)
    if len(hits) == 0:
        return None
    return int(masks[hits[0]])


def constructive_lambda(scenario, xi, power=None):
    """The paper's witness for a real bipartite state: the meet over the
    state's pure-pair generators of f1(w) (x) f2(w) (x) g1(w') (x) g2(w')."""
    ts = scenario.ts
    comp = scenario.completion
    rid = comp.real_id(xi)
    if rid is None:
        raise InputError("constructive witness needs a real state")
    if power is None:
        power = SimplexPower([bool_real_space()] * 4)
    maps = [_bool_image(scenario.left, scenario.phi[0]),
            _bool_image(scenario.left, scenario.phi[1]),
            _bool_image(scenario.right, scenario.rho[0]),
            _bool_image(scenario.right, scenario.rho[1])]
    bool_pures = ({0}, {1}, {0, 1})
    mask = 0
    for k in ts.cover_set(rid):
        p, q = ts.pure_pairs[k]
        values = (maps[0][p], maps[1][p], maps[2][q], maps[3][q])
        mask |= power.embed_factors([bool_pures[v] for v in values])
    return mask


def bell_report(scenario, bb=None):
    """JSON-ready summary: the state, its marginals, and the scan verdict."""
    if bb is None:
        bb = build_tensor(bool_real_space(), bool_real_space())
    phi = bell_marginals(scenario, bb=bb)
    lam = lambda_search(phi["13"], phi["14"], phi["23"], phi["24"], bb=bb)
    power = SimplexPower([bool_real_space()] * 4)
    return {
        "sigma": scenario.serialize_sigma(),
        "phi": {k: bb.space.names[v] for k, v in sorted(phi.items())},
        "lambda": None if lam is None else power.name(lam),
        "nonlocal": lam is None,
    }
