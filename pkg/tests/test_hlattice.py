"""The five Hermitian lattices, their membership tests, duality, shells."""

import random

import pytest

from hleech.hquat import HQ, I, J, K, OMEGA, ONE, P, PBAR, TWO, ZERO, units
from hleech.hlattice import (
    BB_ROWS, ambient_to_coords, cell, e8, hcoeffs, is_p_modular, l_3e8h,
    l_leech_h, leech, make_lattice, naive_shell_count, real_form_det,
    real_form_gram, real_form_signature, shell_count, shell_enumerate,
    shell_zcoords, standard, vec_encode, vec_parse, vec_zcoords,
    zbasis_vectors, zcoords_to_vec,
)


def test_gram_shapes():
    assert cell().gram == ((ZERO, PBAR), (P, ZERO))
    assert e8().gram == ((HQ.of(-2), P), (PBAR, HQ.of(-2)))
    lam = leech()
    assert lam.rank == 6
    for s in range(6):
        assert lam.gram[s][s] == HQ.of(-4)
        for t in range(6):
            assert lam.gram[s][t].conj() == lam.gram[t][s]
    big = l_3e8h()
    assert big.rank == 8
    for f in range(3):
        for s in range(2):
            for t in range(2):
                assert big.gram[2 * f + s][2 * f + t] == e8().gram[s][t]
    assert big.gram[6][7] == PBAR and big.gram[7][6] == P
    assert l_leech_h().rank == 8


def test_make_lattice_names():
    for name in ("cell", "e8", "leech", "l_3e8h", "l_leech_h"):
        assert make_lattice(name).name == name
    assert make_lattice("standard3").rank == 3
    with pytest.raises(ValueError):
        make_lattice("e7")


def test_bb_rows_membership_and_coords():
    lam = leech()
    for s in range(6):
        assert lam.contains_ambient(BB_ROWS[s])
        coords = ambient_to_coords(lam, BB_ROWS[s])
        assert coords == tuple(ONE if t == s else ZERO for t in range(6))
    assert not lam.contains_ambient((TWO, ZERO, ZERO, ZERO, ZERO, ZERO))


def test_leech_membership_random_combinations():
    rng = random.Random(3)
    lam = leech()
    us = units()
    for _ in range(1000):
        v = lam.zero()
        for s in range(6):
            if rng.random() < 0.5:
                v = v + lam.basis_vec(s) * rng.choice(us) * rng.randrange(1, 3)
        assert lam.contains_ambient(v.ambient())


def test_leech_membership_rejects_corruptions():
    rng = random.Random(4)
    lam = leech()
    rejected = 0
    trials = 0
    while trials < 1000:
        v = lam.basis_vec(rng.randrange(6)) * rng.choice(units())
        amb = list(v.ambient())
        slot = rng.randrange(6)
        bump = rng.choice((ONE, I, J, K))
        amb[slot] = amb[slot] + bump
        if lam.contains_ambient(tuple(amb)):
            # a bump can land back in the lattice; it does not count
            continue
        trials += 1
        rejected += 1
    assert rejected == 1000


def test_ambient_roundtrip_random():
    rng = random.Random(5)
    for lat in (leech(), l_3e8h(), l_leech_h()):
        for _ in range(50):
            v = lat.zero()
            for s in range(lat.rank):
                v = v + lat.basis_vec(s) * rng.choice(units()) * \
                    rng.randrange(-2, 3)
            assert ambient_to_coords(lat, v.ambient()) == v.coords


def test_inner_conjugate_symmetry():
    rng = random.Random(6)
    lat = l_3e8h()
    for _ in range(30):
        x = lat.vec([rng.choice(units()) * rng.randrange(-2, 3)
                     for _ in range(8)])
        y = lat.vec([rng.choice(units()) * rng.randrange(-2, 3)
                     for _ in range(8)])
        assert x.inner(y) == y.inner(x).conj()
        assert x.norm().is_real()


def test_vec_encode_roundtrip():
    lat = l_3e8h()
    v = lat.vec((ONE, P, -K, HQ(1, 1, 1, 1), ZERO, TWO, OMEGA, PBAR))
    assert vec_parse(lat, vec_encode(v)) == v
    with pytest.raises(ValueError):
        vec_parse(lat, "[(0,0,0,0)/2]")


def test_p_modularity():
    for name in ("cell", "e8", "leech", "l_3e8h", "l_leech_h"):
        assert is_p_modular(make_lattice(name)), name
    # a standard negative lattice is not p-modular
    assert not is_p_modular(standard(2))


def test_real_form_signatures():
    assert real_form_signature(cell()) == (4, 4)
    assert real_form_signature(e8()) == (0, 8)
    assert real_form_signature(leech()) == (0, 24)
    assert real_form_signature(l_3e8h()) == (4, 28)
    assert real_form_signature(l_leech_h()) == (4, 28)


def test_real_form_determinants():
    # the real forms are all unimodular at this scaling
    for name in ("cell", "e8", "leech", "l_3e8h", "l_leech_h"):
        assert real_form_det(make_lattice(name)) == 1, name


def test_zbasis_independent():
    lam = leech()
    vecs = zbasis_vectors(lam)
    assert len(vecs) == 24
    assert all(v.norm() == HQ.of(-4) for v in vecs)
    # Z-independence is exactly nonvanishing of the real-form determinant
    g = real_form_gram(lam)
    assert len(g) == 24
    assert real_form_det(lam) != 0


def test_hcoeffs_roundtrip():
    rng = random.Random(7)
    mult = (ONE, I, J, OMEGA)
    for _ in range(200):
        p = rng.randrange(2)
        x = HQ(*(2 * rng.randrange(-9, 10) + p for _ in range(4)))
        n = hcoeffs(x)
        acc = ZERO
        for c, m in zip(n, mult):
            acc = acc + m * c
        assert acc == x


def test_vec_zcoords_roundtrip():
    rng = random.Random(8)
    lam = leech()
    for _ in range(50):
        v = lam.zero()
        for s in range(6):
            v = v + lam.basis_vec(s) * rng.choice(units())
        z = vec_zcoords(v)
        assert len(z) == 24
        assert zcoords_to_vec(lam, z) == v


def test_e8_shell():
    assert shell_count(e8(), -2) == 240
    for v in shell_enumerate(e8(), -2):
        assert v.norm() == HQ.of(-2)
        break


def test_e8_shell_matches_naive():
    # independent bounded brute force over doubled coordinates
    assert naive_shell_count(e8(), -2, 3) == 240


def test_shell_zcoords_canonical_signs():
    zc = shell_zcoords(e8(), -2)
    assert len(zc) == 120
    seen = {tuple(z) for z in zc}
    for z in zc:
        assert tuple(-c for c in z) not in seen


def test_shell_rejects_bad_requests():
    with pytest.raises(ValueError):
        shell_zcoords(e8(), 2)
    with pytest.raises(ValueError):
        shell_zcoords(l_3e8h(), -2)   # indefinite


def test_leech_first_shell_count(shell):
    assert len(shell) == 196560
