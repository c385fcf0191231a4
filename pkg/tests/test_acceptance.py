"""Acceptance suite: one test per acceptance criterion, each printing a
PASS/FAIL line (visible even with output capture on)."""
import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from mlineq import cli, harness
from mlineq import functions as fn
from mlineq import inequalities as iq
from mlineq import linalg as la
from mlineq import maps as mp
from mlineq import means as mn
from mlineq.checks import run_check
from mlineq.linalg import Interval

from scalar_oracle import INSTANCES, disagreements

TOL = 1e-8


@contextmanager
def criterion(capsys, number, title):
    notes = []
    start = time.perf_counter()
    try:
        yield notes
    except BaseException as exc:
        line = f"criterion {number} FAIL  {title}: {type(exc).__name__}: {str(exc)[:300]}"
        raise
    else:
        line = f"criterion {number} PASS  {title}"
    finally:
        extra = "; ".join(notes)
        with capsys.disabled():
            print(f"\n{line} [{time.perf_counter() - start:.1f}s]" + (f" ({extra})" if extra else ""))


def _congruence(q=3, k=2):
    rng = la.trial_rng(42, 1, 0)
    return mp.congruence_transformed(mp.hadamard_map(q, k), [la.random_positive(q, Interval(0.5, 2), rng) for _ in range(k)])


def test_criterion_1_cdj_suite(capsys):
    with criterion(capsys, 1, "CDJ suite over tensor/Hadamard/congruence, 500 trials") as notes:
        start = time.perf_counter()
        worst = math.inf
        for phi in (mp.tensor_map(3), mp.hadamard_map(3), _congruence()):
            for r in (0.5, 2.0, -1.0):
                direction = "concave" if 0 <= r <= 1 else "convex"
                res = iq.check_cdj(phi, fn.power(r), direction, 500, 42, TOL, spectrum=Interval(0.5, 2))
                assert res.error is None
                assert res.worst_margin >= -TOL, f"{res.name}: {res.worst_margin}"
                worst = min(worst, res.worst_margin)
        elapsed = time.perf_counter() - start
        notes.append(f"worst margin {worst:.3e}, {elapsed:.1f}s")
        assert elapsed < 30


def test_criterion_2_catalog(capsys, tmp_path):
    with criterion(capsys, 2, "counterexample catalog reproduces margin -2") as notes:
        entry = [c for c in iq.catalog() if c.family == "cdj"][0]
        res = run_check(entry, 1, 42, TOL)
        assert abs(res.worst_margin - (-2.0)) <= 1e-10
        assert not res.holds and res.as_expected
        report = harness.run_suite(harness.SuiteConfig(checks=["cdj", "catalog"], trials=20))
        assert report.aggregate
        notes.append(f"margin {res.worst_margin!r}, aggregate {report.aggregate}")


def test_criterion_3_constants(capsys):
    with criterion(capsys, 3, "Kantorovich/alpha/beta constant oracles"):
        assert abs(mn.kantorovich_constant(1, 2, 2) - 1.125) <= 1e-12
        for m, M in [(1, 2), (1, 4)]:
            for r in (-1, 2, 3):
                assert abs(mn.alpha_bound(m, M, fn.power(r)) - mn.kantorovich_constant(m, M, r)) <= 1e-9
        assert abs(mn.beta_bound(1, 4, fn.sqrt()) - 4 / (3 * math.sqrt(2))) <= 1e-9


def _rotated_pair():
    th = math.pi / 4
    R = np.eye(3, dtype=complex)
    R[:2, :2] = [[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]]
    A = R @ np.diag([1.0, 2.0, 2.0]) @ R.T
    return A, A


def test_criterion_4_reverse_cdj(capsys):
    with criterion(capsys, 4, "reverse CDJ r=2,-1 on Hadamard with K(m^k,M^k,r); tight at extremal inputs") as notes:
        phi = mp.hadamard_map(3)
        spec = Interval(1, 2)
        diag = np.diag([1.0, 2.0, 2.0]).astype(complex)
        extremal = {2.0: (diag, diag), -1.0: _rotated_pair()}
        for r in (2.0, -1.0):
            ineq = iq.ReverseCDJ(phi=phi, f=fn.power(r), direction="convex", spectrum=spec)
            assert ineq.constant == pytest.approx(mn.kantorovich_constant(1, 4, r), abs=1e-15)
            res = run_check(ineq, 500, 42, TOL)
            assert res.worst_margin >= -TOL, res.worst_margin
            A, B = extremal[r]
            (_, lesser, greater), = ineq.sides({"A": [A, B]})
            ratio = la.psd_margin(greater - lesser) / la.opnorm(greater)
            assert -TOL <= ratio <= 0.05
            notes.append(f"r={r:g}: worst {res.worst_margin:.3e}, extremal gap {ratio:.2e}")


def test_criterion_5_solvers(capsys):
    with criterion(capsys, 5, "power/Karcher solver residuals and limits") as notes:
        worst_p = worst_k = worst_g = 0.0
        for trial in range(100):
            rng = la.trial_rng(42, 5, trial)
            mats = [la.random_positive(3, Interval(1, 2), rng) for _ in range(3)]
            w = la.random_weights(3, rng)
            for t in (1.0, 0.5, 0.1, -0.5, -1.0):
                X = mn.power_mean(t, w, mats)
                worst_p = max(worst_p, mn.power_mean_residual(t, w, mats, X) / la.opnorm(X))
            G = mn.karcher_mean(w, mats)
            worst_k = max(worst_k, mn.karcher_residual(w, mats, G))
            A, B = mats[:2]
            G2 = mn.karcher_mean([0.5, 0.5], [A, B])
            worst_g = max(worst_g, la.opnorm(G2 - mn.geometric()(A, B)) / max(1, la.opnorm(G2)))
        assert worst_p <= 1e-10 and worst_k <= 1e-10 and worst_g <= 1e-8
        for trial in range(20):
            rng = la.trial_rng(42, 55, trial)
            mats = [la.random_positive(3, Interval(1, 2), rng) for _ in range(3)]
            w = la.random_weights(3, rng)
            G = mn.karcher_mean(w, mats)
            gaps = [la.opnorm(G - mn.power_mean(t, w, mats)) for t in (0.1, 0.01, 0.001)]
            assert gaps[0] > gaps[1] > gaps[2], gaps
        notes.append(f"power residual {worst_p:.1e}, Karcher residual {worst_k:.1e}, two-point gap {worst_g:.1e}")


def test_criterion_6_information_monotonicity(capsys):
    with criterion(capsys, 6, "information monotonicity, Hadamard q=2 n=k=2, 100 trials") as notes:
        start = time.perf_counter()
        phi, spec = mp.hadamard_map(2), Interval(1, 2)
        checks = [iq.InfoMonotonicityPower(phi=phi, t=t, n=2, spectrum=spec) for t in (0.5, 1.0, -0.5, -1.0)]
        checks.append(iq.InfoMonotonicityKarcher(phi=phi, n=2, spectrum=spec))
        for ineq in checks:
            res = run_check(ineq, 100, 42, TOL)
            assert res.worst_margin >= -TOL, f"{res.name}: {res.worst_margin}"
            notes.append(f"{res.name} {res.worst_margin:.2e}")
        assert time.perf_counter() - start < 60


def test_criterion_7_scalar_oracle(capsys):
    with criterion(capsys, 7, "q=1 checkers agree with scalar arithmetic on 1000 draws") as notes:
        total = 0
        for ineq in INSTANCES:
            bad = disagreements(ineq, draws=1000)
            assert bad == [], f"{ineq.name}: {bad[:3]}"
            total += 1000
        notes.append(f"{len(INSTANCES)} checkers, {total} draws, 0 disagreements")


def test_criterion_8_block_lemma(capsys):
    with criterion(capsys, 8, "block positivity equals Schur condition on 500 instances") as notes:
        agree = positives = 0
        for i in range(500):
            rng = la.trial_rng(42, 8, i)
            dim = int(rng.integers(1, 5))
            A = la.random_positive(dim, Interval(0.2, 3), rng)
            B = la.random_positive(dim, Interval(0.2, 3), rng)
            if i < 50:
                # boundary: X B^{-1} X* = A exactly
                X = la.sqrtm_pair(A)[0] @ la.haar_unitary(dim, rng) @ la.sqrtm_pair(B)[0]
            else:
                X = rng.uniform(0.2, 2.0) * la.random_contraction(dim, rng) @ la.sqrtm_pair(A)[0]
            block, schur = la.block2x2_psd_check(A, B, X)
            assert block == schur, f"instance {i}"
            if i < 50:
                assert block and schur
            agree += 1
            positives += block
        notes.append(f"{agree} agreements, {positives} positive")


def test_criterion_9_determinism(capsys, tmp_path):
    with criterion(capsys, 9, "default suite twice: identical reports, exit 0") as notes:
        texts = []
        for run in range(2):
            out = tmp_path / f"report{run}.json"
            code = cli.main(["--out", str(out), "--witness-dir", str(tmp_path / "witnesses")])
            assert code == 0
            texts.append(harness.strip_timing(out.read_text()))
        assert texts[0] == texts[1]
        n_checks = texts[0].count('"name"')
        notes.append(f"{n_checks} checks")
