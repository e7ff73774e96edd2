import random

import pytest
import sympy

from blockedbraid.braid import artin_images, braid_equal, torsion
from blockedbraid.errors import (
    InadmissibleBase,
    IndexOutOfRange,
    LengthMismatch,
    StrandMismatch,
)
from blockedbraid.groups import (
    E,
    MAT_W,
    MAT_X,
    MAT_Y,
    MAT_Z,
    SL2,
    Mat2Z,
    cyclic,
    make_group,
    mat_inv,
    quaternion8,
    symmetric,
)
from blockedbraid.trel import (
    GTuple,
    Probe,
    admissible_tuples,
    check_witness,
    commutation_system,
    conjugate,
    full_twist_fixedpoint_check,
    hurwitz_act,
    make_probes,
    orbit_invariant,
    random_admissible,
    separate_blocked,
    sigma1_class_check,
    sigma1_tower_check,
    sl2_base,
    sl2_simultaneous_conjugacy,
    twist_at,
    untwist_at,
)
from blockedbraid.words import BraidWord, invert

from conftest import random_word

PROBE_GROUPS = [symmetric(3), quaternion8(), cyclic(4)]


def m(*words):
    out = E
    for g in words:
        out = out @ g
    return out


X, Y, Z, W = MAT_X, MAT_Y, MAT_Z, MAT_W
Xi, Yi = mat_inv(X), mat_inv(Y)


def test_twist_matches_listed_sequence():
    t = sl2_base(4)
    assert twist_at(1, t).entries == (m(X, Y, Xi), X, Z, W)
    s1 = BraidWord(4, (1,))
    assert hurwitz_act(s1 * s1, t).entries == (m(X, Y, X, Yi, Xi), m(X, Y, Xi), Z, W)
    s1cubed = hurwitz_act(BraidWord(4, (1, 1, 1)), t).entries
    assert s1cubed[:2] == (m(X, Y, X, Y, Xi, Yi, Xi), m(X, Y, X, Yi, Xi))


def test_twist_untwist_inverse(rng):
    for group in PROBE_GROUPS:
        for _ in range(50):
            t = random_admissible(group, 5, rng)
            i = rng.randint(1, 4)
            assert untwist_at(i, twist_at(i, t)) == t
            assert twist_at(i, untwist_at(i, t)) == t
            assert twist_at(i, t).product() == t.product()
    with pytest.raises(IndexOutOfRange):
        twist_at(4, sl2_base(4))


def test_twist_fixes_identity_neighbour():
    g = symmetric(3)
    a = g.parse_element("231")
    t = GTuple(g, (a, g.identity(), g.inv(a)))
    assert twist_at(1, t).entries == (g.identity(), a, g.inv(a))


def test_hurwitz_empty_and_mismatch():
    t = sl2_base(4)
    assert hurwitz_act(BraidWord.identity(4), t) == t
    with pytest.raises(StrandMismatch):
        hurwitz_act(BraidWord.identity(3), t)


def evaluate(word, tuple_):
    G = tuple_.group
    out = G.identity()
    for x in word.letters:
        g = tuple_.entries[abs(x) - 1]
        out = G.mul(out, g if x > 0 else G.inv(g))
    return out


def test_hurwitz_is_artin_evaluated(rng):
    g = quaternion8()
    for _ in range(50):
        w = random_word(rng, 4, 10)
        t = random_admissible(g, 4, rng)
        assert hurwitz_act(w, t).entries == tuple(evaluate(im, t) for im in artin_images(w))


def test_yang_baxter_on_sym3(rng):
    g = symmetric(3)
    for _ in range(500):
        t = GTuple(g, tuple(rng.randrange(6) for _ in range(3)))
        assert hurwitz_act(BraidWord(3, (1, 2, 1)), t) == hurwitz_act(BraidWord(3, (2, 1, 2)), t)


def test_action_properties(rng):
    for group in PROBE_GROUPS:
        for _ in range(60):
            n = rng.randint(2, 5)
            w1, w2 = random_word(rng, n, 8), random_word(rng, n, 8)
            t = random_admissible(group, n, rng)
            image = hurwitz_act(w1, t)
            assert image.product() == t.product() and image.admissible
            assert hurwitz_act(w1 * w2, t) == hurwitz_act(w2, hurwitz_act(w1, t))
            assert hurwitz_act(invert(w1), image) == t


def test_equal_braids_act_identically(rng):
    far = BraidWord(5, (1, 3, -1, -3))
    braid_rel = BraidWord(5, (2, 3, 2, -3, -2, -3))
    for group in PROBE_GROUPS:
        for _ in range(100):
            w = random_word(rng, 5, 8)
            u = random_word(rng, 5, 3)
            lhs, rhs = w * u, w * far * braid_rel * u
            assert braid_equal(lhs, rhs)
            t = random_admissible(group, 5, rng)
            assert hurwitz_act(lhs, t) == hurwitz_act(rhs, t)


def test_orbit_invariant_examples(rng):
    g = symmetric(3)
    e = g.identity()
    assert orbit_invariant(GTuple(g, (e, e, e))) == (e, e, e)
    a, b = g.parse_element("231"), g.parse_element("312")
    assert orbit_invariant(GTuple(g, (a, g.inv(a)))) == orbit_invariant(GTuple(g, (b, g.inv(b))))
    for group in PROBE_GROUPS:
        for _ in range(50):
            t = random_admissible(group, 4, rng)
            h = rng.randrange(group.order)
            assert orbit_invariant(conjugate(t, h)) == orbit_invariant(t)


def test_orbit_invariant_separates_distinct_orbits():
    g = symmetric(3)
    t1 = GTuple(g, (g.parse_element("213"), g.parse_element("213")))
    t2 = GTuple(g, (g.parse_element("213"), g.parse_element("132")))
    assert orbit_invariant(t1) != orbit_invariant(t2)


def sympy_dimension(t1, t2):
    return len(sympy.Matrix(commutation_system(t1.entries, t2.entries)).nullspace())


def test_sl2_conjugacy_examples():
    zw = GTuple(SL2, (Z, W))
    ans = sl2_simultaneous_conjugacy(zw, zw)
    assert ans.status == "yes" and ans.dimension == 1 and ans.conjugator in (E, -E)
    base = sl2_base(4)
    moved = hurwitz_act(BraidWord(4, (1,)), base)
    assert sl2_simultaneous_conjugacy(base, moved).status == "no"
    single = GTuple(SL2, (X,))
    ans = sl2_simultaneous_conjugacy(single, single)
    assert (ans.status, ans.dimension) == ("unknown", 2)
    assert sympy_dimension(single, single) == 2
    with pytest.raises(LengthMismatch):
        sl2_simultaneous_conjugacy(single, zw)


def test_sl2_conjugacy_finds_conjugator(rng):
    gens = (X, Y, Z, W)
    found = 0
    for _ in range(200):
        g = E
        for _ in range(rng.randint(1, 8)):
            g = g @ rng.choice(gens)
        t1 = GTuple(SL2, (X, Y))
        t2 = GTuple(SL2, tuple(g @ a @ mat_inv(g) for a in t1.entries))
        ans = sl2_simultaneous_conjugacy(t1, t2)
        assert ans.status == "yes"
        c = ans.conjugator
        assert all(c @ a @ mat_inv(c) == b for a, b in zip(t1.entries, t2.entries))
        assert sympy_dimension(t1, t2) == 1
        found += 1
    assert found == 200


def test_sl2_conjugacy_rejects_wrong_determinant():
    # (x, y) and (w, z) are conjugate by diag(1, -1), which has determinant -1
    ans = sl2_simultaneous_conjugacy(GTuple(SL2, (X, Y)), GTuple(SL2, (W, Z)))
    assert (ans.status, ans.dimension) == ("no", 1)
    # x versus x^2: conjugate only in GL_2(Q), and the solution space is 2-dimensional
    t1, t2 = GTuple(SL2, (X,)), GTuple(SL2, (X @ X,))
    ans = sl2_simultaneous_conjugacy(t1, t2)
    assert (ans.status, ans.dimension) == ("unknown", 2) and sympy_dimension(t1, t2) == 2
    ans = sl2_simultaneous_conjugacy(GTuple(SL2, (X, Z)), GTuple(SL2, (X @ X, Z)))
    assert (ans.status, ans.dimension) == ("no", 0)


def test_separate_examples():
    v = separate_blocked(BraidWord(3, (1,)), BraidWord(3, (2,)))
    assert v.distinct and v.witness.kind == "permutation"
    probes = make_probes("sl2:xyzw", 4)
    for k in range(0, 21, 4):
        for l in range(k + 2, 21, 6):
            w1, w2 = BraidWord(4, (1,) * k), BraidWord(4, (1,) * l)
            v = separate_blocked(w1, w2, probes)
            assert v.distinct
            assert check_witness(w1, w2, v.witness)


def test_negative_control_sigma1_squared_on_three_strands():
    s = BraidWord(3, (1, 1))
    one = BraidWord.identity(3)
    for spec in ("sym3", "q8", "cyc4", "cyc6"):
        assert not separate_blocked(s, one, make_probes(spec, 3)).distinct


def test_sym3_separates_sigma1_squared_on_four_strands():
    """All admissible bases enumerated; the witness orbit is checked by brute force."""
    g = symmetric(3)
    s, one = BraidWord(4, (1, 1)), BraidWord.identity(4)
    v = separate_blocked(s, one, make_probes("sym3", 4))
    assert v.distinct and v.witness.kind == "orbit"
    base = GTuple.from_text(g, v.witness.base)
    assert base.admissible
    image = hurwitz_act(s, base)
    orbit = {conjugate(base, h).entries for h in g.elements()}
    assert image.entries not in orbit


def test_inadmissible_base_rejected():
    g = symmetric(3)
    bad = GTuple(g, (g.parse_element("213"), g.identity(), g.identity()))
    with pytest.raises(InadmissibleBase):
        separate_blocked(BraidWord(3, (1,)), BraidWord(3, (1,)), [Probe("sym3", bad)])


def test_tampered_witness_fails():
    w1, w2 = BraidWord(4, (1, 1)), BraidWord(4, ())
    v = separate_blocked(w1, w2, make_probes("sl2:xyzw", 4))
    wit = v.witness
    assert check_witness(w1, w2, wit)
    assert not check_witness(w1, BraidWord(4, (1, 1)), wit)


def test_sigma1_tower():
    rep = sigma1_tower_check(64)
    assert rep.growth[:2] == [1, 2]
    assert rep.passed
    assert rep.growth[-1] > 2**63  # past fixed-width range


def test_tower_second_entry():
    from blockedbraid.trel import sigma1_tower

    (u1, _), (u2, v2) = sigma1_tower(2)
    assert u1 == X and u2 == Mat2Z(2, -1, 1, 0) and v2 == X


def test_sigma1_classes_pairwise_distinct():
    pairs = sigma1_class_check(20, 4)
    assert len(pairs) == 21 * 20 // 2
    assert all(p.status == "no" and p.dimension <= 1 for p in pairs)
    assert all(p.status == "no" for p in sigma1_class_check(6, 5))


def test_full_twist_fixed_point():
    for group in PROBE_GROUPS:
        for n in (2, 3, 4):
            assert full_twist_fixedpoint_check(n, group, trials=200, seed=n).passed
    for k in range(1, 7):
        for n in (2, 3, 4):
            rep = full_twist_fixedpoint_check(n, cyclic(k), exhaustive=True)
            assert rep.passed and rep.trials == k ** (n - 1) * k


def test_full_twist_fixed_nonadmissible_fails():
    # not a theorem outside admissible tuples: sanity that the check can fail
    g = symmetric(3)
    t = GTuple(g, (g.parse_element("213"), g.parse_element("132"), g.identity()))
    assert not t.admissible
    assert hurwitz_act(torsion(3) ** 2, t) != t


def test_full_twist_exhaustive_q8():
    rep = full_twist_fixedpoint_check(3, quaternion8(), exhaustive=True)
    assert rep.passed and rep.trials == 8 * 8 * 2


def test_admissible_tuples_are_admissible():
    g = make_group("q8")
    ts = list(admissible_tuples(g, 3))
    assert len(ts) == 128 and all(t.admissible for t in ts)


def test_full_twist_not_separated_by_any_probe():
    for n in (2, 3, 4):
        probes = [p for spec in ("sym3", "q8", "cyc4") for p in make_probes(spec, n)]
        if n >= 4:
            probes += make_probes("sl2:xyzw", n)
        v = separate_blocked(torsion(n) ** 2, BraidWord.identity(n), probes)
        assert not v.distinct and v.inconclusive == 0


def test_orbit_budget():
    from blockedbraid.errors import BudgetExceeded

    t = random_admissible(symmetric(4), 5, random.Random(1))
    with pytest.raises(BudgetExceeded):
        orbit_invariant(t, budget=50)
    with pytest.raises(TypeError):
        orbit_invariant(sl2_base(4))
