"""Null-center translations, the R element, and the 81 generators."""

import random

import pytest

from hleech.hquat import EPS, EPS_BAR, HQ, I, J, K, ONE, P, ZERO
from hleech.hlattice import l_leech_h, leech, zbasis_vectors
from hleech.heisen import (
    Translation, cell_roots, central_admissible, central_conjugate,
    central_generation_check, commutator_identity_check, compose,
    compose_law_check, generators81, minimal_admissible_z, orbit_form_check,
    r_block_data, r_conjugation_check, r_element, r_inverse, translation,
    translation_commutator_check,
)

ZB = zbasis_vectors(leech())


def rand_lam(rng):
    v = leech().zero()
    for s in rng.sample(range(24), rng.randrange(0, 4)):
        v = v + ZB[s] * rng.choice([ONE, -ONE, I, J])
    return v


def rand_central(rng):
    while True:
        a, b, c = (rng.randrange(-2, 3) for _ in range(3))
        if (a + b + c) % 2 == 0:
            return HQ(0, 2 * a, 2 * b, 2 * c)


def rand_trans(rng):
    lam = rand_lam(rng)
    return Translation(lam, minimal_admissible_z(lam) + rand_central(rng))


def test_identity_translation():
    t = Translation(leech().zero(), ZERO)
    assert t.matrix.is_identity()


def test_translation_is_isometry():
    rng = random.Random(1)
    lat = l_leech_h()
    for _ in range(5):
        t = rand_trans(rng)
        # spot-check the Gram on images of random lattice vectors
        for _ in range(3):
            v = lat.vec([rng.choice((ZERO, ONE, I)) for _ in range(8)])
            w = lat.vec([rng.choice((ZERO, ONE, J)) for _ in range(8)])
            assert t.matrix.apply(v).inner(t.matrix.apply(w)) == v.inner(w)


def test_compose_law():
    rng = random.Random(2)
    for _ in range(25):
        t1, t2 = rand_trans(rng), rand_trans(rng)
        assert compose_law_check(t1, t2)
        both = compose(t1, t2)
        assert (t1.matrix * t2.matrix) == both.matrix


def test_inverse():
    rng = random.Random(3)
    for _ in range(25):
        t = rand_trans(rng)
        ti = t.inverse()
        assert ti.lam == -t.lam and ti.z == -t.z
        assert (t.matrix * ti.matrix).is_identity()
        assert (ti.matrix * t.matrix).is_identity()


def test_translation_commutator():
    rng = random.Random(4)
    for _ in range(15):
        assert translation_commutator_check(rand_trans(rng), rand_trans(rng))


def test_r_block_data():
    bd = r_block_data()
    assert bd["eps"] == EPS
    assert bd["u"] == HQ(3, -1, 1, -1)
    assert bd["delta"] == HQ(1, -1, 1, 1)
    assert bd["delta"] * P == P * EPS


def _finite_order(m, cap=50):
    acc = m
    for _ in range(cap):
        if acc.is_identity():
            return True
        acc = acc * m
    return False


def test_r_element_is_isometry():
    r = r_element()
    assert (r * r_inverse()).is_identity()
    assert _finite_order(r)


def test_eps_conjugation_table():
    assert EPS * I * EPS_BAR == J
    assert EPS * J * EPS_BAR == -K
    assert EPS * K * EPS_BAR == -I


def test_central_conjugate_values():
    # z' = eps z epsbar - z, against hand evaluation via the table above
    assert central_conjugate(HQ.of(0, 1, 1)) == HQ.of(0, -1, 0, -1)
    assert central_conjugate(HQ.of(0, 1, 0, 1)) == HQ.of(0, -2, 1, -1)
    assert central_conjugate(HQ.of(0, 0, 1, 1)) == HQ.of(0, -1, -1, -2)
    assert central_conjugate(HQ.of(0, 2)) == HQ.of(0, -2, 2)
    assert central_conjugate(HQ.of(0, 0, 2)) == HQ.of(0, 0, -2, -2)
    assert central_conjugate(HQ.of(0, 0, 0, 2)) == HQ.of(0, -2, 0, -2)
    for z in (HQ.of(0, 1, 1), HQ.of(0, 1, 0, 1), HQ.of(0, 2)):
        assert central_conjugate(z) == EPS * z * EPS_BAR - z


def test_r_conjugation_on_translations():
    rng = random.Random(5)
    for _ in range(20):
        assert r_conjugation_check(rand_trans(rng))


def test_commutator_identity():
    assert commutator_identity_check(leech().zero(), HQ.of(0, 2))
    assert commutator_identity_check(leech().zero(), ZERO)
    assert commutator_identity_check(ZB[1], minimal_admissible_z(ZB[1]))
    rng = random.Random(6)
    for _ in range(10):
        t = rand_trans(rng)
        assert commutator_identity_check(t.lam, t.z)


def test_admissible_centrals_form_d3():
    for a in range(-2, 3):
        for b in range(-2, 3):
            for c in range(-2, 3):
                want = (a + b + c) % 2 == 0
                assert central_admissible(HQ(0, 2 * a, 2 * b, 2 * c)) == want
    assert not central_admissible(I)
    assert not central_admissible(HQ.of(2))
    # the named central translations all exist
    for z in (HQ.of(0, 1, 0, 1), HQ.of(0, 0, 1, 1), HQ.of(0, 2),
              HQ.of(0, 0, 2), HQ.of(0, 0, 0, 2)):
        assert central_admissible(z)
        t = Translation(leech().zero(), z)
        assert not t.matrix.is_identity()


def test_inadmissible_pairs_rejected():
    with pytest.raises(ValueError):
        Translation(leech().zero(), I)
    with pytest.raises(ValueError):
        Translation(leech().zero(), HQ.of(2))
    with pytest.raises(ValueError):
        Translation(ZB[0], I)


def test_minimal_admissible_z():
    for lam in ZB:
        assert minimal_admissible_z(lam) == ZERO
    rng = random.Random(7)
    for _ in range(20):
        lam = rand_lam(rng)
        z = minimal_admissible_z(lam)
        Translation(lam, z)
        assert z.is_imag()


def test_translation_factory():
    t = translation(ZB[0], ZERO)
    assert isinstance(t, Translation)
    assert t.lam == ZB[0]


def test_generators():
    gens = generators81()
    assert len(gens) == 81
    assert all(g.norm() == HQ.of(-2) for g in gens)
    assert len({tuple(g.coords) for g in gens}) == 81


def test_generator_images_have_orbit_form():
    r1, r2, r3 = cell_roots()
    assert all(r.norm() == HQ.of(-2) for r in (r1, r2, r3))
    lam = ZB[0]
    img = Translation(lam, ZERO).matrix.apply(r1)
    assert tuple(img.coords) == tuple(lam.coords) + (ONE, P + I)
    rng = random.Random(8)
    for _ in range(20):
        t = rand_trans(rng)
        for r in (r1, r2, r3):
            assert orbit_form_check(t.matrix.apply(r))


def test_orbit_form_rejects():
    lat = l_leech_h()
    bad = lat.vec(tuple(ZB[0].coords) + (ONE, I))
    assert not orbit_form_check(bad)
    bad2 = lat.vec((ZERO,) * 6 + (HQ.of(2), I))
    assert not orbit_form_check(bad2)


def test_central_generation():
    assert central_generation_check() is True
