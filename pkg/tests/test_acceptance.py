"""Exit criteria for the package; each test prints one PASS/FAIL line."""

import random
import time

from blockedbraid.braid import (
    belt_trick_certificate,
    braid_equal,
    p_word,
    q_word,
    torsion,
    verify_torsion_identities,
)
from blockedbraid.groups import make_group
from blockedbraid.presentation import (
    bb_candidate_presentation,
    candidate_table,
    structure_report,
    todd_coxeter,
)
from blockedbraid.trel import (
    full_twist_fixedpoint_check,
    hurwitz_act,
    make_probes,
    random_admissible,
    separate_blocked,
    sigma1_class_check,
    sigma1_tower_check,
)
from blockedbraid.words import BraidWord, invert

from conftest import random_word

FINITE = ("sym3", "q8", "cyc4")


def relation_pair(rng, n):
    """w A u and w B u where A = B is one braid relation."""
    i = rng.randint(1, n - 1)
    j = rng.choice([k for k in range(1, n) if abs(k - i) >= 2] or [None])
    if j is not None and rng.random() < 0.5:
        a, b = (i, j), (j, i)
    else:
        i = min(i, n - 2)
        a, b = (i, i + 1, i), (i + 1, i, i + 1)
    if rng.random() < 0.5:
        a, b = tuple(-x for x in reversed(a)), tuple(-x for x in reversed(b))
    w, u = random_word(rng, n, 8), random_word(rng, n, 8)
    return w * BraidWord(n, a) * u, w * BraidWord(n, b) * u


def report(n, name, ok, elapsed):
    print(f"\nACCEPTANCE {n:>2} {name}: {'PASS' if ok else 'FAIL'} ({elapsed:.3f}s)")


def timed(fn):
    start = time.perf_counter()
    ok = fn()
    return ok, time.perf_counter() - start


def test_01_candidate_quotient_orders():
    def check():
        t2 = todd_coxeter(bb_candidate_presentation(2), 100)
        t3 = todd_coxeter(bb_candidate_presentation(3), 100)
        return t2.order == 2 and t3.order == 12

    ok, dt = timed(check)
    report(1, "candidate quotient orders 2 and 12", ok and dt < 1, dt)
    assert ok and dt < 1


def test_02_order_12_structure():
    def check():
        claims = structure_report(todd_coxeter(bb_candidate_presentation(3), 100))
        return len(claims) == 6 and all(c.passed for c in claims)

    ok, dt = timed(check)
    report(2, "order-12 structure (Z3 x| Z4)", ok and dt < 1, dt)
    assert ok and dt < 1


def test_03_torsion_identities():
    def check():
        results = verify_torsion_identities(8)
        steps = {(r.k, r.i) for r in results if r.name == "theorem4-step" and r.passed}
        full = all(
            any(r.name == name and r.k == k and r.passed for r in results)
            for k in range(2, 9)
            for name in ("other-torsion", "theorem4", "prop-Q", "prop-P")
        )
        return full and steps == {(k, i) for k in range(2, 9) for i in range(1, k)} and all(
            r.passed for r in results
        )

    ok, dt = timed(check)
    report(3, "torsion identities k=2..8", ok and dt < 30, dt)
    assert ok and dt < 30


def test_04_belt_trick_certificates():
    def check():
        for n in range(2, 7):
            cert = belt_trick_certificate(n)
            cert.verify()
            core = p_word(n) * q_word(n)
            if cert.target != torsion(n) ** 4 or cert.relator != core:
                return False
            if not braid_equal(cert.product(), torsion(n) ** 4):
                return False
        return True

    ok, dt = timed(check)
    report(4, "belt trick certificates n=2..6", ok and dt < 30, dt)
    assert ok and dt < 30


def test_05_belt_trick_in_quotient():
    def check():
        return candidate_table(3).trace((torsion(3) ** 4).letters) == 1

    ok, dt = timed(check)
    report(5, "T_3^4 is the identity coset", ok, dt)
    assert ok


def test_06_infiniteness_certificate():
    def check():
        pairs = sigma1_class_check(20, 4)
        classes_ok = len(pairs) == 210 and all(
            p.dimension <= 1 and p.status == "no" for p in pairs
        )
        return classes_ok and sigma1_tower_check(64).passed

    ok, dt = timed(check)
    report(6, "SL2(Z) classes of sigma_1^k pairwise distinct, k<=20; tower(64)", ok and dt < 10, dt)
    assert ok and dt < 10


def test_07_full_twist_fixed_point():
    def check():
        ok = True
        for spec in FINITE:
            g = make_group(spec)
            for n in (2, 3, 4):
                rep = full_twist_fixedpoint_check(n, g, trials=200, seed=100 + n)
                ok &= rep.passed and rep.trials == 200
        return ok

    ok, dt = timed(check)
    report(7, "full twist fixes admissible tuples", ok and dt < 10, dt)
    assert ok and dt < 10


def test_08_representation_soundness():
    def check():
        rng = random.Random(8)
        ok = True
        for spec in FINITE:
            g = make_group(spec)
            for _ in range(100):
                n = rng.randint(2, 5)
                t = random_admissible(g, n, rng)
                w = random_word(rng, n, 12)
                ok &= hurwitz_act(w, t).product() == t.product()
        sym3 = make_group("sym3")
        yb1, yb2 = BraidWord(3, (1, 2, 1)), BraidWord(3, (2, 1, 2))
        for _ in range(500):
            t = random_admissible(sym3, 3, rng)
            ok &= hurwitz_act(yb1, t) == hurwitz_act(yb2, t)
        for spec in FINITE:
            g = make_group(spec)
            for _ in range(100):
                lhs, rhs = relation_pair(rng, 4)
                if not braid_equal(lhs, rhs):
                    return False
                t = random_admissible(g, 4, rng)
                ok &= hurwitz_act(lhs, t) == hurwitz_act(rhs, t)
        return ok

    ok, dt = timed(check)
    report(8, "representation soundness properties", ok, dt)
    assert ok


def test_09_negative_control():
    def check():
        s, one = BraidWord(3, (1, 1)), BraidWord.identity(3)
        return all(not separate_blocked(s, one, make_probes(spec, 3)).distinct for spec in FINITE)

    ok, dt = timed(check)
    report(9, "sigma_1^2 vs 1 indistinguishable on 3 strands", ok, dt)
    assert ok


def test_10_oracle_calibration():
    def check():
        ok = True
        for n in range(2, 9):
            for i in range(1, n):
                for j in range(i + 2, n):
                    ok &= braid_equal(BraidWord(n, (i, j)), BraidWord(n, (j, i)))
                if i + 1 < n:
                    ok &= braid_equal(BraidWord(n, (i, i + 1, i)), BraidWord(n, (i + 1, i, i + 1)))
        rng = random.Random(10)
        for _ in range(500):
            n = rng.randint(2, 8)
            w = random_word(rng, n, 24)
            ok &= braid_equal(w * invert(w), BraidWord.identity(n))
        return ok

    ok, dt = timed(check)
    report(10, "oracle calibration (relations, w w^-1)", ok, dt)
    assert ok
