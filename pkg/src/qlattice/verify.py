"""The theorem suite: one named check per headline result.

Each check returns a JSON-ready dict with a "pass" flag and enough detail
to locate a failure; run_suite collects them under stable slugs.  The suite
is the single source of truth behind the command-line `verify` verb and the
acceptance tests.
"""

import random
from itertools import combinations, product

from .core_order import (YES, NO, BOT, BOOL_VALUES, InputError, StateSpace,
                         bool_space, bool_meet, bool_bullet, bool_bar)
from . import chu
from .realspaces import (bool_real_space, simplex_space, spin_space,
                         ortho_matrix, ortho_complement, orthoclosed_sets)
from .ontic import (closure, closure_step, is_admissible,
                    is_unbounded_star_free, build_completion)
from .tensor import build_tensor, indeterministic_tensor, congruence_oracle
from .contextuality import verify_model_iso
from .geometry import (build_geometry, verify_projective, verify_ortho,
                       verify_invariants, covering_preservation_report)
from . import quantum

SCHEMA_VERSION = 1


# -- 1. boolean domain tables ------------------------------------------------

_MEET_TABLE = {
    (YES, YES): YES, (YES, NO): BOT, (YES, BOT): BOT,
    (NO, YES): BOT, (NO, NO): NO, (NO, BOT): BOT,
    (BOT, YES): BOT, (BOT, NO): BOT, (BOT, BOT): BOT,
}
_BULLET_TABLE = {
    (YES, YES): YES, (YES, NO): NO, (YES, BOT): BOT,
    (NO, YES): NO, (NO, NO): NO, (NO, BOT): NO,
    (BOT, YES): BOT, (BOT, NO): NO, (BOT, BOT): BOT,
}
_BAR_TABLE = {YES: NO, NO: YES, BOT: BOT}


def check_bool_tables():
    bad = []
    for x, y in product(BOOL_VALUES, BOOL_VALUES):
        if bool_meet(x, y) != _MEET_TABLE[(x, y)]:
            bad.append(("meet", x, y))
        if bool_bullet(x, y) != _BULLET_TABLE[(x, y)]:
            bad.append(("bullet", x, y))
    for x in BOOL_VALUES:
        if bool_bar(x) != _BAR_TABLE[x]:
            bad.append(("bar", x))
    return {"pass": not bad, "failures": bad, "entries": 21}


# -- 2. pre-closure counterexample -------------------------------------------

def counterexample_lattice():
    """The ten-element semilattice on which one pre-closure step is not
    enough: three mid points pairwise joined below a common top layer."""
    names = ["BOT", "u1", "u2", "u3", "v1", "v2", "w", "x", "y", "z"]
    pairs = [("BOT", n) for n in names[1:]]
    pairs += [("u1", "w"), ("u1", "y"), ("u2", "y"), ("u2", "z"),
              ("u3", "w"), ("u3", "z"), ("v1", "w"), ("v1", "x"),
              ("v2", "z"), ("v2", "x")]
    return StateSpace.from_relation(names, pairs)


def check_preclosure_counterexample():
    space = counterexample_lattice()
    u = [space.index(n) for n in ("u1", "u2", "u3")]
    once = closure(space, u, mode="pre")
    twice = closure_step(space, once)
    got_once = sorted(space.names[i] for i in once)
    got_twice = sorted(space.names[i] for i in twice)
    ok = got_once == ["w", "y", "z"] and got_twice == ["w", "x", "y", "z"]
    return {"pass": ok, "once": got_once, "twice": got_twice}


# -- 3. closure idempotency ----------------------------------------------------

def _idempotent_on(space, members):
    first = closure(space, members)
    return closure(space, first) == first


def check_closure_idempotency(samples=1000, seed=20240901):
    spaces = [("bool", bool_space()),
              ("simplex2", simplex_space(2).space),
              ("simplex3", simplex_space(3).space),
              ("zprime2", spin_space(2).space),
              ("zprime3", spin_space(3).space)]
    z2 = spin_space(2)
    comp = build_completion(z2)
    spaces.append(("zprime2-completion", comp.space))
    ts = build_tensor(z2, z2)
    big = ts.space
    bad = []
    checked = 0
    for tag, space in spaces:
        others = [i for i in range(space.n) if i != space.bottom]
        for r in range(1, len(others) + 1):
            for sub in combinations(others, r):
                checked += 1
                if not _idempotent_on(space, sub):
                    bad.append((tag, sub))
    rng = random.Random(seed)
    others = [i for i in range(big.n) if i != big.bottom]
    for _ in range(samples):
        sub = rng.sample(others, rng.randint(1, 6))
        checked += 1
        if not _idempotent_on(big, sub):
            bad.append(("tensor-z2z2", tuple(sorted(sub))))
    return {"pass": not bad, "failures": bad[:5], "checked": checked}


# -- 4. simplex tensor ---------------------------------------------------------

def _is_simplex_tensor(ts):
    """Free meet-semilattice on the pure tensors, with unique pure
    decomposition for every element."""
    space = ts.space
    p = len(ts.pure_pairs)
    if space.n != (1 << p) - 1:
        return False
    seen = set()
    for idx in range(space.n):
        ups = frozenset(ts.cover_set(idx))
        if ups in seen:
            return False
        seen.add(ups)
        if ts.index_of([ts.pure_pairs[k] for k in ups]) != idx:
            return False
    return True


def check_simplex_tensor():
    bb = build_tensor(bool_real_space(), bool_real_space())
    z23 = build_tensor(simplex_space(2), simplex_space(3))
    return {
        "pass": len(bb) == 15 and _is_simplex_tensor(bb)
                and _is_simplex_tensor(z23),
        "bool_pair_size": len(bb),
        "bool_pair_simplex": _is_simplex_tensor(bb),
        "z2z3_simplex": _is_simplex_tensor(z23),
    }


# -- 5. completion of the two-axis spin space ----------------------------------

def _real_trace(comp, chi):
    base = comp.base.space
    return frozenset(r for r in range(base.n)
                     if comp.space.leq[comp.embed(r), chi])


def check_completion_z2():
    z2 = spin_space(2)
    comp = build_completion(z2)
    n = len(comp.elements)
    hidden = sum(1 for i in range(n) if comp.is_hidden(i))
    traces = [_real_trace(comp, chi) for chi in range(n)]
    galois_bad = []
    for j, trace in enumerate(traces):
        lam = comp.sharpening(trace)
        for chi in range(n):
            left = lam is not None and comp.space.leq[lam, chi]
            right = trace <= traces[chi]
            if left != right:
                galois_bad.append((j, chi))
    order_bad = []
    leq = comp.space.leq
    for i in range(n):
        for j in range(n):
            lower = [k for k in range(n) if leq[k, i] and leq[k, j]]
            best = [k for k in lower
                    if all(leq[m, k] for m in lower)]
            if len(best) != 1 or best[0] != comp.meet(i, j):
                order_bad.append(("meet", i, j))
            upper = [k for k in range(n) if leq[i, k] and leq[j, k]]
            least = [k for k in upper if all(leq[k, m] for m in upper)]
            want = least[0] if len(least) == 1 else None
            if not upper:
                want = None
            if comp.join(i, j) != want:
                order_bad.append(("join", i, j))
    ok = (n == 9 and hidden == 4 and not galois_bad and not order_bad)
    return {"pass": ok, "elements": n, "hidden": hidden,
            "galois_pairs": n * n, "galois_failures": galois_bad[:5],
            "order_failures": order_bad[:5]}


# -- 6. tensor order oracle ------------------------------------------------------

def check_tensor_congruence(max_size=3):
    z2 = spin_space(2)
    ts = build_tensor(z2, z2)
    gen_sets = []
    for r in range(1, max_size + 1):
        gen_sets.extend(combinations(ts.pure_pairs, r))
    classes = {}
    for gens in gen_sets:
        classes.setdefault(ts.index_of(list(gens)), []).append(list(gens))
    bad = []
    checked = 0
    for idx, members in classes.items():
        rep = members[0]
        for other in members[1:]:
            checked += 1
            if not congruence_oracle(ts, rep, other):
                bad.append(("within", idx))
    reps = sorted(classes.items())
    for (i1, m1), (i2, m2) in combinations(reps, 2):
        checked += 1
        if congruence_oracle(ts, m1[0], m2[0]):
            bad.append(("across", i1, i2))
    return {"pass": not bad, "failures": bad[:5],
            "generator_sets": len(gen_sets), "classes": len(classes),
            "oracle_calls": checked}


# -- 7. Bell pipeline --------------------------------------------------------------

def check_bell():
    scenario = quantum.bell_scenario(2, 2)
    bb = build_tensor(bool_real_space(), bool_real_space())
    y, n, bot = 0, 1, 2
    want = {
        "13": bb.index_of([(n, bot), (y, n)]),
        "14": bb.index_of([(y, bot), (n, y)]),
        "23": bb.index_of([(y, n), (bot, y)]),
        "24": bb.index_of([(bot, bot)]),
    }
    phi = quantum.bell_marginals(scenario, bb=bb)
    marginals_ok = phi == want
    lam = quantum.lambda_search(phi["13"], phi["14"], phi["23"], phi["24"],
                                bb=bb)
    ts, comp = scenario.ts, scenario.completion
    real_bad = []
    for rid in range(ts.space.n):
        xi = comp.embed(rid)
        m = {}
        for a in (1, 2):
            for b in (3, 4):
                m["%d%d" % (a, b)] = quantum.measurement_image(
                    scenario, scenario.phi[a - 1], scenario.rho[b - 3],
                    xi=xi, bb=bb)
        found = quantum.lambda_search(m["13"], m["14"], m["23"], m["24"],
                                      bb=bb)
        if found is None:
            real_bad.append(rid)
    ok = marginals_ok and lam is None and not real_bad
    return {"pass": ok, "marginals_match": marginals_ok,
            "lambda_absent": lam is None,
            "real_states_scanned": ts.space.n,
            "real_failures": real_bad[:5]}


# -- 8. broadcasting ----------------------------------------------------------------

def check_broadcasting():
    reports = {
        "zprime2": quantum.broadcast_obstruction(spin_space(2)),
        "zprime3": quantum.broadcast_obstruction(spin_space(3)),
        "bool": quantum.broadcast_obstruction(bool_real_space()),
        "simplex2": quantum.broadcast_obstruction(simplex_space(2)),
        "simplex3": quantum.broadcast_obstruction(simplex_space(3)),
    }
    ok = (not reports["zprime2"]["broadcasts"]
          and not reports["zprime3"]["broadcasts"]
          and reports["zprime2"]["witness"]["bottom_images"][0]
          != reports["zprime2"]["witness"]["bottom_images"][1]
          and all(reports[k]["broadcasts"]
                  for k in ("bool", "simplex2", "simplex3")))
    return {"pass": ok,
            "verdicts": {k: v["broadcasts"] for k, v in reports.items()},
            "zprime2_clash": reports["zprime2"]["witness"]["bottom_images"]}


# -- 9. contextuality ---------------------------------------------------------------

def check_contextuality():
    comp2 = build_completion(spin_space(2))
    rep2 = verify_model_iso(comp2)
    comp3 = build_completion(simplex_space(3))
    rep3 = verify_model_iso(comp3)
    ok = (rep2["bijective"] and rep2["meet_homomorphism"]
          and rep2["states"] == 9 and rep2["contextual"]
          and rep3["bijective"] and not rep3["contextual"])
    return {"pass": ok, "zprime2": rep2, "simplex3": rep3}


# -- 10. orthoclosure ----------------------------------------------------------------

def check_orthoclosure():
    comp = build_completion(spin_space(2))
    emb = comp.embedding
    orth = ortho_matrix(emb)
    family = orthoclosed_sets(emb, orth)
    n = comp.space.n
    bad = []
    for h in family:
        perp = ortho_complement(emb, h, orth)
        if ortho_complement(emb, perp, orth) != h:
            bad.append(("double", sorted(h)))
        if h & perp:
            bad.append(("overlap", sorted(h)))
    subsets = [frozenset(s) for r in range(n + 1)
               for s in combinations(range(n), r)]
    for a in subsets:
        for b in subsets:
            if a <= b and not (ortho_complement(emb, b, orth)
                               <= ortho_complement(emb, a, orth)):
                bad.append(("antitone", sorted(a), sorted(b)))
    return {"pass": not bad, "failures": bad[:5],
            "closed_sets": len(family), "subset_pairs": len(subsets) ** 2}


# -- 11/12. geometry and covering preservation ---------------------------------------

def check_geometry():
    z2 = spin_space(2)
    ts, comp = indeterministic_tensor(z2, z2)
    wide = build_geometry(comp, ts, variant="check")
    narrow = build_geometry(comp, ts, variant="widecheck")
    inv = verify_invariants(wide, samples=400, seed=7)
    proj = verify_projective(wide)
    orth = verify_ortho(narrow, wide=wide)
    ok = inv["pass"] and proj["pass"] and orth["pass"]
    return {"pass": ok, "invariants": inv, "projective": proj,
            "ortho": orth}


def check_covering_preservation():
    z2 = spin_space(2)
    ts = build_tensor(z2, z2)
    return covering_preservation_report(ts.real_space)


# -- 13. non-completeness --------------------------------------------------------------

def check_non_completeness():
    z2 = spin_space(2)
    ts = build_tensor(z2, z2)
    rs = ts.real_space
    space = rs.space
    pures = sorted(space.pures())
    for p, q in combinations(pures, 2):
        if space.meet(p, q) == space.bottom:
            continue
        if not is_unbounded_star_free(rs, (p, q)):
            continue
        if is_admissible(rs, (p, q)):
            continue
        chain = [tuple(sorted((p, q)))]
        current = chain[0]
        for _ in range(space.n):
            nxt = closure_step(space, current)
            if nxt == current:
                break
            chain.append(nxt)
            current = nxt
        return {"pass": True,
                "witness": [space.names[p], space.names[q]],
                "growth_chain": [[space.names[i] for i in step]
                                 for step in chain]}
    return {"pass": False, "witness": None, "growth_chain": []}


# -- suite --------------------------------------------------------------------------------

CHECKS = [
    ("bool-tables", "outcome-domain tables", check_bool_tables),
    ("preclosure-counterexample", "pre-closure is not a closure",
     check_preclosure_counterexample),
    ("closure-idempotency", "iterated closure is idempotent",
     check_closure_idempotency),
    ("simplex-tensor", "tensor of simplexes is a simplex",
     check_simplex_tensor),
    ("completion-zprime2", "two-axis completion and its Galois law",
     check_completion_z2),
    ("tensor-congruence", "normalize agrees with the evaluation oracle",
     check_tensor_congruence),
    ("bell", "Bell marginals and the global-state scan", check_bell),
    ("broadcasting", "broadcast dichotomy", check_broadcasting),
    ("contextuality", "descriptions-states isomorphism",
     check_contextuality),
    ("orthoclosure", "orthoclosure laws", check_orthoclosure),
    ("geometry", "projective and orthogonality axioms", check_geometry),
    ("covering-preservation", "pure meets are covered",
     check_covering_preservation),
    ("non-completeness", "the completion is not complete",
     check_non_completeness),
]

SUITES = {
    "closure": ["preclosure-counterexample", "closure-idempotency"],
    "tensor": ["simplex-tensor", "tensor-congruence",
               "covering-preservation"],
    "completion": ["completion-zprime2", "non-completeness"],
    "quantum": ["bell", "broadcasting"],
    "geometry": ["geometry"],
    "all": [slug for slug, _, _ in CHECKS],
}


def run_suite(names=None):
    """Run the named checks (default all); returns the versioned report."""
    if names is None:
        names = [slug for slug, _, _ in CHECKS]
    by_slug = {slug: (anchor, fn) for slug, anchor, fn in CHECKS}
    unknown = [n for n in names if n not in by_slug]
    if unknown:
        raise InputError("unknown checks: %s" % ", ".join(unknown))
    out = {"version": SCHEMA_VERSION, "checks": {}}
    for slug in names:
        anchor, fn = by_slug[slug]
        report = fn()
        report["anchor"] = anchor
        out["checks"][slug] = report
    out["pass"] = all(c["pass"] for c in out["checks"].values())
    return out
