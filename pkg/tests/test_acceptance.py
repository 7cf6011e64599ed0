"""End-to-end acceptance run: one timed pass/fail line per criterion.

Each criterion calls the corresponding suite check, which was written
against an independent oracle, and additionally pins the headline numbers
directly so a silent change in the check itself cannot slip through.
"""

import time

from qlattice import verify
from qlattice.realspaces import bool_real_space, spin_space
from qlattice.tensor import build_tensor
from qlattice.ontic import build_completion


def _timed(fn):
    t0 = time.perf_counter()
    report = fn()
    return report, time.perf_counter() - t0


def _emit(num, label, ok, elapsed, budget):
    verdict = "PASS" if ok and elapsed < budget else "FAIL"
    print("%s criterion %02d %s (%.3fs, budget %gs)"
          % (verdict, num, label, elapsed, budget))
    assert ok, label
    assert elapsed < budget, "%s exceeded %gs (%.3fs)" % (label, budget,
                                                          elapsed)


def test_criterion_01_bool_tables():
    report, dt = _timed(verify.check_bool_tables)
    _emit(1, "outcome-domain tables", report["pass"], dt, 0.001)


def test_criterion_02_preclosure_counterexample():
    report, dt = _timed(verify.check_preclosure_counterexample)
    _emit(2, "one closure step is not idempotent", report["pass"], dt, 60)


def test_criterion_03_closure_idempotency():
    report, dt = _timed(verify.check_closure_idempotency)
    _emit(3, "iterated closure is idempotent", report["pass"], dt, 60)


def test_criterion_04_simplex_tensor():
    report, dt = _timed(verify.check_simplex_tensor)
    bb = build_tensor(bool_real_space(), bool_real_space())
    ok = report["pass"] and bb.space.n == 15
    _emit(4, "tensor of simplexes is a simplex", ok, dt, 5)


def test_criterion_05_completion():
    report, dt = _timed(verify.check_completion_z2)
    comp = build_completion(spin_space(2))
    hidden = sum(comp.is_hidden(i) for i in range(comp.space.n))
    ok = report["pass"] and comp.space.n == 9 and hidden == 4
    _emit(5, "two-axis completion and its Galois law", ok, dt, 5)


def test_criterion_06_tensor_congruence():
    report, dt = _timed(verify.check_tensor_congruence)
    _emit(6, "normalize agrees with the evaluation oracle",
          report["pass"], dt, 120)


def test_criterion_07_bell():
    report, dt = _timed(verify.check_bell)
    _emit(7, "Bell marginals and the global-state scan",
          report["pass"], dt, 60)


def test_criterion_08_broadcasting():
    report, dt = _timed(verify.check_broadcasting)
    _emit(8, "broadcast dichotomy", report["pass"], dt, 10)


def test_criterion_09_contextuality():
    report, dt = _timed(verify.check_contextuality)
    _emit(9, "descriptions-states isomorphism", report["pass"], dt, 60)


def test_criterion_10_orthoclosure():
    report, dt = _timed(verify.check_orthoclosure)
    _emit(10, "orthoclosure laws", report["pass"], dt, 5)


def test_criterion_11_geometry():
    report, dt = _timed(verify.check_geometry)
    proj = report["projective"]
    ok = (report["pass"]
          and proj["nondegeneracy"]["configs"] == 6912
          and proj["vy3_restricted"]["configs"] == 192
          and report["ortho"]["irreducibility"]["failures_are_antipodal"])
    _emit(11, "projective and orthogonality axioms", ok, dt, 600)


def test_criterion_12_covering_preservation():
    report, dt = _timed(verify.check_covering_preservation)
    _emit(12, "pure meets are covered", report["pass"], dt, 60)


def test_criterion_13_non_completeness():
    report, dt = _timed(verify.check_non_completeness)
    ok = report["pass"] and len(report["growth_chain"]) > 1
    _emit(13, "the completion is not complete", ok, dt, 10)
