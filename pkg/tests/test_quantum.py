import random

import pytest

from qlattice.core_order import InputError
from qlattice.realspaces import (bool_real_space, simplex_space, spin_space)
from qlattice.tensor import SimplexPower
from qlattice import quantum


def test_broadcast_dichotomy_verdicts():
    assert quantum.broadcast_obstruction(bool_real_space())["broadcasts"]
    assert quantum.broadcast_obstruction(simplex_space(3))["broadcasts"]
    report = quantum.broadcast_obstruction(spin_space(2))
    assert not report["broadcasts"]
    assert report["joint_morphism_absent"]


def test_broadcast_obstruction_witness_shape():
    report = quantum.broadcast_obstruction(spin_space(2))
    w = report["witness"]
    assert w["kind"] == "obstruction"
    assert w["measurements"] == ["a", "b"]
    # the two routes to bottom force different images
    first, second = w["bottom_images"]
    assert first != second


def test_diagonal_map_is_total():
    rs = simplex_space(2)
    report = quantum.broadcast_obstruction(rs)
    assert len(report["witness"]["map"]) == rs.space.n


def test_sigma_is_hidden_with_three_components(scenario, z2):
    comp = scenario.completion
    ts = scenario.ts
    assert comp.is_hidden(scenario.sigma)
    a, b = z2.space.index("a"), z2.space.index("b")
    astar = z2.star_of(a)
    want = sorted([ts.index_of([(a, a), (b, b)]),
                   ts.index_of([(a, astar), (astar, b)]),
                   ts.index_of([(b, astar), (astar, a)])])
    assert sorted(comp.components(scenario.sigma)) == want


def test_marginals_are_the_expected_elements(scenario, bool_square):
    bb = bool_square
    y, n, bot = 0, 1, 2
    phi = quantum.bell_marginals(scenario, bb)
    assert phi["13"] == bb.index_of([(n, bot), (y, n)])
    assert phi["14"] == bb.index_of([(y, bot), (n, y)])
    assert phi["23"] == bb.index_of([(y, n), (bot, y)])
    assert phi["24"] == bb.space.bottom
    # two of the marginals coincide as elements
    assert phi["14"] == phi["23"]


def test_no_global_state_for_the_bell_marginals(scenario, bool_square):
    phi = quantum.bell_marginals(scenario, bool_square)
    lam = quantum.lambda_search(phi["13"], phi["14"], phi["23"], phi["24"],
                                bb=bool_square)
    assert lam is None


def test_bell_report_is_nonlocal(scenario, bool_square):
    report = quantum.bell_report(scenario, bb=bool_square)
    assert report["nonlocal"]
    assert report["lambda"] is None
    assert len(report["sigma"]) == 3


def test_real_states_admit_global_states(scenario, bool_square):
    bb = bool_square
    ts = scenario.ts
    power = SimplexPower([bool_real_space()] * 4)
    rng = random.Random(9)
    sample = rng.sample(range(ts.space.n), 12)
    for rid in sample:
        xi = scenario.completion.embed(rid)
        phi = {}
        for a in (1, 2):
            for b in (3, 4):
                phi["%d%d" % (a, b)] = quantum.measurement_image(
                    scenario, scenario.phi[a - 1], scenario.rho[b - 3],
                    xi=xi, bb=bb)
        lam = quantum.lambda_search(phi["13"], phi["14"], phi["23"],
                                    phi["24"], bb=bb)
        assert lam is not None
        built = quantum.constructive_lambda(scenario, xi, power)
        # the constructive witness reproduces all four marginals too
        sub = SimplexPower([bool_real_space()] * 2)
        for coords, key in (((0, 2), "13"), ((0, 3), "14"),
                            ((1, 2), "23"), ((1, 3), "24")):
            want = quantum._pair_mask(bb, phi[key], sub)
            assert power.project(built, coords) == want


def test_constructive_lambda_rejects_hidden_states(scenario):
    with pytest.raises(InputError):
        quantum.constructive_lambda(scenario, scenario.sigma)


def test_scenario_validation(z2, scenario):
    a = z2.space.index("a")
    with pytest.raises(InputError):
        quantum.BellScenario(z2, z2, a, z2.star_of(a), a, a,
                             ts=scenario.ts, completion=scenario.completion)
