"""The 14-root system: incidence, relations, Weyl vector, symmetries."""

from fractions import Fraction

import pytest

from hleech.hquat import HQ, I, ONE, P, PBAR, R2, R2Quat, XI, units
from hleech.reflect import element_order, is_automorphism
from hleech.diagram import (
    ALL_LABELS, LINE_LABELS, POINT_LABELS, collineation_generators,
    collineations, deflate_check, fano_build, fixed_analysis, fixed_subspace,
    heawood_invariants, inner_ext, lift_collineation, m444_subset,
    relation_module_check, roots14, sigma_duality, sigma_matrix, span_check,
    spider_element, weyl_data, _ext_coords,
)


def test_fourteen_roots_norm(roots):
    assert len(ALL_LABELS) == 14
    for lbl in ALL_LABELS:
        assert roots[lbl].norm() == HQ.of(-2), lbl


def test_incidence_inner_products(roots):
    fano = roots.fano
    hits = 0
    for pt in POINT_LABELS:
        for ln in LINE_LABELS:
            ip = roots[pt].inner(roots[ln])
            if fano.incident(pt, ln):
                hits += 1
                assert ip == P, (pt, ln, ip)
            else:
                assert ip.is_zero(), (pt, ln)
    assert hits == 21


def test_points_and_lines_mutually_orthogonal(roots):
    for group in (POINT_LABELS, LINE_LABELS):
        for s, l1 in enumerate(group):
            for l2 in group[s + 1:]:
                assert roots[l1].inner(roots[l2]).is_zero(), (l1, l2)


def test_fano_structure():
    plane = fano_build()
    assert sorted(plane.through_point["a"]) == ["b1", "b2", "b3"]
    for ln in LINE_LABELS:
        assert len(plane.on_line[ln]) == 3
    for pt in POINT_LABELS:
        assert len(plane.through_point[pt]) == 3
    assert heawood_invariants(plane) == (14, 21, 6, True)


def test_line_relations_constant(roots):
    # l pbar + sum of points on l is one and the same vector for all lines
    vals = []
    for ln in LINE_LABELS:
        v = roots[ln] * PBAR
        for pt in roots.fano.on_line[ln]:
            v = v + roots[pt]
        vals.append(v)
    assert all(v == vals[0] for v in vals[1:])
    # and dually with p over the points
    duals = []
    for pt in POINT_LABELS:
        v = roots[pt] * P
        for ln in roots.fano.through_point[pt]:
            v = v + roots[ln]
        duals.append(v)
    assert all(v == duals[0] for v in duals[1:])
    wdl = weyl_data()
    assert wdl.w_p == vals[0]
    assert wdl.w_l == duals[0]


def test_invariant_vectors(wd, roots):
    assert wd.w_p.norm() == HQ.of(2)
    assert wd.w_l.norm() == HQ.of(2)
    for pt in POINT_LABELS:
        assert wd.w_p.inner(roots[pt]).is_zero()
    for ln in LINE_LABELS:
        assert wd.w_l.inner(roots[ln]).is_zero()


def test_weyl_vector_exact_identities(wd, roots):
    lat = roots.lattice
    assert wd.rho_norm2 == R2(2, 3).inverse()
    want = R2Quat(wd.rho_norm2)
    for rs in wd.rho_list:
        assert inner_ext(lat, wd.rho_bar, rs) == want
    half_sqrt2 = R2Quat(R2(0, Fraction(1, 2)))
    assert inner_ext(lat, wd.rho_bar, _ext_coords(wd.w_p)) == half_sqrt2
    ratio = half_sqrt2.c0 / wd.rho_norm2
    assert ratio == R2(3, 1)


def test_rho_list_pairings(wd, roots):
    # rho_s for a point and an incident line meet with real part 1/2
    lat = roots.lattice
    ip = inner_ext(lat, wd.rho_list[1], wd.rho_list[7 + 1])
    assert ip.c0 == R2(Fraction(1, 2))


def test_collineation_group(roots):
    colls = collineations()
    assert len(colls) == 168
    ident = {lbl: lbl for lbl in ALL_LABELS}
    assert ident in colls
    for g in colls[:20]:
        # permutations preserving type and incidence
        assert sorted(g.keys()) == sorted(ALL_LABELS)
        for pt in POINT_LABELS:
            assert g[pt] in POINT_LABELS
        for pt in POINT_LABELS:
            for ln in roots.fano.through_point[pt]:
                assert roots.fano.incident(g[pt], g[ln])


def test_collineation_generators_generate():
    gens = collineation_generators()
    assert len(gens) == 2
    seen = {tuple(sorted(g.items())) for g in [dict((l, l) for l in ALL_LABELS)]}
    frontier = [dict((l, l) for l in ALL_LABELS)]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                e = {l: h[g[l]] for l in ALL_LABELS}
                key = tuple(sorted(e.items()))
                if key not in seen:
                    seen.add(key)
                    nxt.append(e)
        frontier = nxt
    assert len(seen) == 168


def test_lifted_collineations_permute_roots(roots):
    import random
    rng = random.Random(1)
    for g in rng.sample(collineations(), 6):
        m = lift_collineation(g)
        assert is_automorphism(m)
        for lbl in ALL_LABELS:
            assert m.apply(roots[lbl]) == roots[g[lbl]], (lbl, g[lbl])


def test_sigma_swaps_types(roots):
    sig, corr = sigma_duality()
    assert element_order(sig) == 8
    for pt in POINT_LABELS:
        assert corr[pt] in LINE_LABELS
    # sigma hits each root up to a right unit factor
    for lbl in ALL_LABELS:
        img = sig.apply(roots[lbl])
        target = roots[corr[lbl]]
        assert any(img == target * u for u in units()), lbl
    assert sigma_matrix() == sig


def test_fixed_subspace_of_lifted_group():
    gens = [lift_collineation(g) for g in collineation_generators()]
    basis = fixed_subspace(gens)
    assert len(basis) == 2


def test_fixed_analysis_report():
    fa = fixed_analysis()
    assert fa["h_dimension"] == 2
    assert fa["equals_wp_wl_span"] is True
    assert fa["sigma_eigenvalues_ok"] is True
    assert fa["rho_on_plus_line"] is True
    assert fa["sigma_fixes_rho_point"] is True
    assert fa["plus_norm"] == R2(4, 6)
    assert fa["minus_norm"] == R2(4, -6)
    assert fa["plus_norm"].sign() > 0
    assert fa["minus_norm"].sign() < 0


def test_deflate_relation():
    assert deflate_check() is True


def test_spider_order():
    assert element_order(spider_element()) == 40


def test_m444_triangle(roots):
    sub = m444_subset()
    assert len(sub) == 10
    for lbl, v in sub.items():
        assert v.norm() == HQ.of(-2)


def test_relation_module():
    assert relation_module_check() is True


def test_span():
    assert span_check() is True


def test_xi_scaling_consistency(wd, roots):
    # the line contributions enter through xi; undoing the twist returns
    # the plain coordinates
    twisted = wd.rho_list[7]
    plain = _ext_coords(roots["f"])
    assert tuple(c * XI.conj() for c in twisted) == plain
