"""Command line front end: exact checks emitted as JSON certificates.

Every verification subcommand recomputes its claims from scratch and
prints Certificate records.  A certificate carries its inputs in the text
encodings, so "recheck" can revalidate a saved report with no state other
than the report itself.  Exact values are printed in the hquat encodings;
floats appear only in fields named "display".
"""

import argparse
import json
import math
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .diagram import (
    ALL_LABELS, LINE_LABELS, POINT_LABELS, collineation_generators,
    collineations, deflate_check, fano_build, fixed_analysis,
    heawood_invariants, inner_ext, lift_collineation, m444_subset,
    relation_module_check, roots14, span_check, spider_element, weyl_data,
)
from .heightred import (
    bound_report, diagram_match, enumerate_min_height, height, reduce,
)
from .heisen import (
    Translation, central_conjugate, central_generation_check,
    commutator_identity_check, compose_law_check, generators81,
    minimal_admissible_z, r_block_data, r_conjugation_check,
    translation_commutator_check,
)
from .hlattice import (
    l_3e8h, l_leech_h, leech, make_lattice, is_p_modular,
    real_form_signature, shell_count, vec_encode, vec_parse,
    zbasis_vectors,
)
from .hquat import (
    HQ, I, ONE, P, PBAR, R2, R2Quat, XI, XI_BAR, hq_encode, hq_parse,
    norm2_elements, r2_encode, r2quat_encode, units,
)
from .isosearch import (
    change_of_basis, find_3e8_system, first_shell_data, fixture_path,
    hyperbolic_complement, oriented_basis_change, reference_basis_change,
    rows_encode, rows_parse, seeded_pair,
)
from .reflect import AutMatrix, braid_type, element_order, reflection_matrix

SCHEMA = 1

LATTICE_NAMES = ("cell", "e8", "leech", "l_3e8h", "l_leech_h")

_REGISTRY = {}


def _register(cert_id, anchor):
    def wrap(fn):
        _REGISTRY[cert_id] = (anchor, fn)
        return fn
    return wrap


def _resolve(cert_id):
    hit = _REGISTRY.get(cert_id)
    if hit is None:
        head, _, _tail = cert_id.rpartition(".")
        if head:
            hit = _REGISTRY.get(head + ".*")
    if hit is None:
        raise SystemExit(f"unknown certificate id: {cert_id}")
    return hit


def certificate(cert_id, inputs):
    """Run one registered check and wrap the outcome as a record."""
    anchor, fn = _resolve(cert_id)
    t0 = time.perf_counter()
    try:
        ok, witness = fn(inputs)
    except (ValueError, AssertionError, KeyError) as exc:
        ok, witness = False, {"error": str(exc) or type(exc).__name__}
    return {
        "id": cert_id,
        "anchor": anchor,
        "inputs": inputs,
        "verdict": "pass" if ok else "fail",
        "witness": witness,
        "seconds": round(time.perf_counter() - t0, 3),
    }


# --- scalar self-tests ----------------------------------------------------

@_register("scalars.units", "the order has exactly 24 units")
def _c_units(inputs):
    us = units()
    su = set(us)
    closed = all(a * b in su for a in us for b in us)
    conj_closed = all(a.conj() in su for a in us)
    ok = len(us) == 24 and len(su) == 24 and closed and conj_closed
    return ok, {"count": len(su), "closed_under_product": closed,
                "closed_under_conjugation": conj_closed}


@_register("scalars.prime", "the even prime and its 24 associates")
def _c_prime(inputs):
    two = P * PBAR == HQ.of(2) and PBAR * P == HQ.of(2)
    sq = P * P == HQ.of(0, -2)
    n2 = norm2_elements()
    left = {u * P for u in units()}
    right = {P * u for u in units()}
    assoc = set(n2) == left == right
    ok = two and sq and len(n2) == 24 and assoc
    return ok, {"p": hq_encode(P), "p_pbar": hq_encode(P * PBAR),
                "p_squared": hq_encode(P * P), "norm2_count": len(n2),
                "associates_two_sided": assoc}


@_register("scalars.xi", "the extending scalar squares to i")
def _c_xi(inputs):
    sq_ok = XI * XI == R2Quat(R2(0), R2(1))
    mod_ok = XI * XI_BAR == R2Quat(R2(1))
    ok = sq_ok and mod_ok
    return ok, {"xi": r2quat_encode(XI), "xi_squared": r2quat_encode(XI * XI),
                "unit_modulus": mod_ok}


# --- lattice group --------------------------------------------------------

@_register("lattice.pmodular.*", "duality: the dual rescaled by p is the lattice")
def _c_pmodular(inputs):
    lat = make_lattice(inputs["lattice"])
    ok = is_p_modular(lat)
    return ok, {"p_modular": ok}


@_register("lattice.signature.*", "real-form signature of the ambient form")
def _c_signature(inputs):
    sig = list(real_form_signature(make_lattice(inputs["lattice"])))
    ok = sig == list(inputs["expected"])
    return ok, {"signature": sig}


@_register("lattice.shell.*", "vector count on the first shell")
def _c_shell(inputs):
    count = shell_count(make_lattice(inputs["lattice"]), inputs["norm"])
    ok = count == inputs["expected"]
    return ok, {"count": count}


# --- diagram group --------------------------------------------------------

@_register("diagram.roots", "the fourteen roots all have norm -2")
def _c_diagram_roots(inputs):
    roots = roots14()
    ok = all(roots[lbl].norm() == HQ.of(-2) for lbl in ALL_LABELS)
    return ok, {"count": len(ALL_LABELS), "all_norm_minus2": ok}


@_register("diagram.incidence", "pairings realize the incidence graph")
def _c_diagram_incidence(inputs):
    roots = roots14()
    plane = roots.fano
    incident = orthogonal = other = 0
    for s in range(len(ALL_LABELS)):
        for t in range(s + 1, len(ALL_LABELS)):
            x, y = ALL_LABELS[s], ALL_LABELS[t]
            if x in POINT_LABELS and y in LINE_LABELS and plane.incident(x, y):
                q = roots[x].inner(roots[y])
                incident += 1 if q == P else 0
                other += 0 if q == P else 1
            elif roots[x].inner(roots[y]).is_zero():
                orthogonal += 1
            else:
                other += 1
    ok = (incident, orthogonal, other) == (21, 70, 0)
    return ok, {"incident_pairs": incident, "incident_value": hq_encode(P),
                "orthogonal_pairs": orthogonal, "other_pairs": other}


@_register("diagram.heawood", "the incidence graph is the Heawood graph")
def _c_diagram_heawood(inputs):
    vertices, edges, girth, connected = heawood_invariants(fano_build())
    ok = (vertices, edges, girth, connected) == (14, 21, 6, True)
    return ok, {"vertices": vertices, "edges": edges, "girth": girth,
                "connected": connected}


@_register("diagram.balance", "the two balance vectors and their norms")
def _c_diagram_balance(inputs):
    roots = roots14()
    plane = roots.fano
    wp_all = []
    for l in LINE_LABELS:
        v = roots[l] * PBAR
        for x in plane.on_line[l]:
            v = v + roots[x]
        wp_all.append(v)
    wl_all = []
    for x in POINT_LABELS:
        v = roots[x] * P
        for l in plane.through_point[x]:
            v = v + roots[l]
        wl_all.append(v)
    wp_const = all(v == wp_all[0] for v in wp_all)
    wl_const = all(v == wl_all[0] for v in wl_all)
    wp_norm = wp_all[0].norm() == HQ.of(2)
    wl_norm = wl_all[0].norm() == HQ.of(2)
    ok = wp_const and wl_const and wp_norm and wl_norm
    return ok, {"wp": vec_encode(wp_all[0]), "wp_constant": wp_const,
                "wl": vec_encode(wl_all[0]), "wl_constant": wl_const,
                "wp_norm2": wp_norm, "wl_norm2": wl_norm}


@_register("diagram.weyl", "the Weyl vector pairs equally with every root")
def _c_diagram_weyl(inputs):
    wd = weyl_data()
    lat = wd.roots.lattice
    rho_n2 = wd.rho_norm2
    norm_ok = rho_n2 == R2(2, 3).inverse()
    want = R2Quat(rho_n2)
    pair_ok = all(inner_ext(lat, wd.rho_bar, r) == want for r in wd.rho_list)
    a = wd.sigma_p.inner(wd.w_p).to_r2quat()
    b = wd.sigma_l.inner(wd.w_p).to_r2quat()
    val = (a + XI_BAR * b) * R2(Fraction(1, 14))
    wp_ok = val == R2Quat(R2(0, Fraction(1, 2)))
    ratio = val.parts()[0] / rho_n2
    ratio_ok = ratio == R2(3, 1)
    ok = norm_ok and pair_ok and wp_ok and ratio_ok
    return ok, {"rho_norm2": r2_encode(rho_n2),
                "root_pairings_all_equal": pair_ok,
                "rho_wp": r2quat_encode(val), "ratio": r2_encode(ratio)}


@_register("diagram.relation-module", "six line relations span the relation module")
def _c_diagram_relations(inputs):
    ok = relation_module_check()
    return ok, {"kernel_rank_24_and_spanned": ok}


@_register("diagram.span", "the roots generate the lattice over the order")
def _c_diagram_span(inputs):
    ok = span_check()
    return ok, {"span_index_one": ok}


@_register("diagram.deflate", "the six-fold composite folds one root onto another")
def _c_diagram_deflate(inputs):
    ok = deflate_check()
    return ok, {"maps_d2_to_minus_e3": ok}


@_register("diagram.spider", "the nine-letter alternating word has order 40")
def _c_diagram_spider(inputs):
    order = element_order(spider_element())
    ok = order == 40
    return ok, {"order": order}


@_register("diagram.m444", "three braid chains through a common node")
def _c_diagram_m444(inputs):
    labels = list(m444_subset())
    return True, {"labels": labels, "chains_verified": True}


@_register("diagram.collineations", "168 symmetries lift to lattice automorphisms")
def _c_diagram_collineations(inputs):
    count = len(collineations())
    roots = roots14()
    lifted = 0
    for g in collineation_generators():
        m = lift_collineation(g)
        assert all(m.apply(roots[lbl]) == roots[g[lbl]] for lbl in ALL_LABELS)
        lifted += 1
    ok = count == 168 and lifted == 2
    return ok, {"count": count, "generators_lifted": lifted}


@_register("diagram.fixed", "fixed space of the lifted group, cut by duality")
def _c_diagram_fixed(inputs):
    fa = fixed_analysis()
    ok = (fa["h_dimension"] == 2 and fa["equals_wp_wl_span"]
          and fa["sigma_eigenvalues_ok"] and fa["rho_on_plus_line"]
          and fa["sigma_fixes_rho_point"]
          and fa["plus_norm"].sign() > 0 and fa["minus_norm"].sign() < 0)
    return ok, {"h_dimension": fa["h_dimension"],
                "equals_wp_wl_span": fa["equals_wp_wl_span"],
                "sigma_eigenvalues_ok": fa["sigma_eigenvalues_ok"],
                "plus_norm": r2_encode(fa["plus_norm"]),
                "minus_norm": r2_encode(fa["minus_norm"]),
                "rho_on_plus_line": fa["rho_on_plus_line"],
                "sigma_fixes_rho_point": fa["sigma_fixes_rho_point"]}


# --- isomorphism group ----------------------------------------------------

@_register("iso.matrix", "the stored basis change matches the block Gram")
def _c_iso_matrix(inputs):
    rows = rows_parse(inputs["rows"])
    bc, perm = oriented_basis_change(rows)
    target = l_3e8h().gram
    gram_ok = all(bc.rows[s].inner(bc.rows[t]) == target[s][t]
                  for s in range(8) for t in range(8))
    return gram_ok, {"gram_match": gram_ok, "hurwitz_inverse": True,
                     "orientation": list(perm)}


@_register("iso.search.*", "a fresh basis change found from the full shell")
def _c_iso_search(inputs):
    data = first_shell_data()
    count_ok = len(data) == inputs["expected_shell"]
    pair = seeded_pair(inputs["seed"], data)
    system = find_3e8_system(data, pair)
    comp = hyperbolic_complement(system)
    bc = change_of_basis(system, comp)
    return count_ok, {"shell_count": len(data),
                      "rows": rows_encode(bc.rows)}


# --- Heisenberg group -----------------------------------------------------

def _random_translations(seed, count):
    rng = random.Random(seed)
    zb = zbasis_vectors(leech())
    out = []
    for _ in range(count):
        lam = leech().zero()
        for s in rng.sample(range(len(zb)), rng.randrange(0, 4)):
            lam = lam + zb[s] * rng.choice((ONE, -ONE, I))
        while True:
            a, b, c = (rng.randrange(-2, 3) for _ in range(3))
            if (a + b + c) % 2 == 0:
                break
        z = minimal_admissible_z(lam) + HQ(0, 2 * a, 2 * b, 2 * c)
        out.append(Translation(lam, z))
    return out


@_register("heisen.compose", "matrix product agrees with the composition law")
def _c_heisen_compose(inputs):
    ts = _random_translations(inputs["seed"], 2 * inputs["pairs"])
    ok = all(compose_law_check(ts[2 * k], ts[2 * k + 1])
             for k in range(inputs["pairs"]))
    return ok, {"pairs_checked": inputs["pairs"]}


@_register("heisen.inverse", "every translation is inverted exactly")
def _c_heisen_inverse(inputs):
    ts = _random_translations(inputs["seed"], inputs["count"])
    ok = all((t.matrix * t.inverse().matrix).is_identity() for t in ts)
    return ok, {"checked": inputs["count"]}


@_register("heisen.commutator", "commutators are central with doubled pairing")
def _c_heisen_commutator(inputs):
    ts = _random_translations(inputs["seed"], 2 * inputs["pairs"])
    ok = all(translation_commutator_check(ts[2 * k], ts[2 * k + 1])
             for k in range(inputs["pairs"]))
    return ok, {"pairs_checked": inputs["pairs"]}


@_register("heisen.conjugation", "conjugation by the extra automorphism")
def _c_heisen_conjugation(inputs):
    ts = _random_translations(inputs["seed"], inputs["count"])
    ok = all(r_conjugation_check(t) for t in ts)
    return ok, {"checked": inputs["count"]}


@_register("heisen.identity-random", "the mixed commutator identity at random parameters")
def _c_heisen_identity_random(inputs):
    ts = _random_translations(inputs["seed"], inputs["count"])
    ok = all(commutator_identity_check(t.lam, t.z) for t in ts)
    return ok, {"checked": inputs["count"]}


@_register("heisen.rblock", "block data of the extra automorphism")
def _c_heisen_rblock(inputs):
    bd = r_block_data()
    eps_ok = bd["eps"] == HQ(1, -1, -1, 1)
    u_ok = bd["u"] == HQ(3, -1, 1, -1)
    delta_ok = bd["delta"] * P == P * bd["eps"]
    ok = eps_ok and u_ok and delta_ok
    return ok, {"eps": hq_encode(bd["eps"]), "u": hq_encode(bd["u"]),
                "delta": hq_encode(bd["delta"]),
                "delta_p_equals_p_eps": delta_ok}


@_register("heisen.identity.z-ij", "the mixed commutator identity at the first named center")
@_register("heisen.identity.z-ik", "the mixed commutator identity at the second named center")
def _c_heisen_identity_named(inputs):
    z = hq_parse(inputs["z"])
    ok = commutator_identity_check(leech().zero(), z)
    return ok, {"central": hq_encode(central_conjugate(z))}


@_register("heisen.special.z-ij", "tabulated central value at the first named center")
@_register("heisen.special.z-ik", "tabulated central value at the second named center")
def _c_heisen_special(inputs):
    z = hq_parse(inputs["z"])
    computed = hq_encode(central_conjugate(z))
    ok = computed == inputs["printed_central"]
    return ok, {"computed": computed, "printed": inputs["printed_central"],
                "match": ok}


@_register("heisen.central-generation", "named centrals generate the admissible set")
def _c_heisen_central(inputs):
    ok = central_generation_check()
    return ok, {"generates_admissible_centrals": ok}


@_register("heisen.generators", "the 81 generator roots and their norms")
def _c_heisen_generators(inputs):
    gens = generators81()
    norms = all(v.norm() == HQ.of(-2) for v in gens)
    ok = len(gens) == inputs["expected"] and norms
    return ok, {"count": len(gens), "all_norm_minus2": norms}


# --- height group ---------------------------------------------------------

@_register("height.reduce.*", "descent of one generator onto the diagram")
def _c_height_reduce(inputs):
    v = vec_parse(l_3e8h(), inputs["vector"])
    trace = reduce(v)
    lbl, unit = diagram_match(trace.terminal)
    steps = [{"root": s_lbl, "unit": hq_encode(mu), "height2": r2_encode(h2),
              "display": round(math.sqrt(float(h2)), 6)}
             for s_lbl, mu, h2 in trace.steps]
    ok = trace.perturbations <= 1
    return ok, {"start_height2": r2_encode(height(v).squared),
                "steps": steps, "step_count": len(steps),
                "perturbed_at": list(trace.perturbed_at),
                "terminal": vec_encode(trace.terminal),
                "class": {"root": lbl, "unit": hq_encode(unit)}}


@_register("height.enumerate", "exactly the diagram classes at minimal height")
def _c_height_enumerate(inputs):
    reps = enumerate_min_height()
    count_ok = len(reps) == inputs["expected"]
    heights_ok = all(height(r).is_one() for r in reps)
    labels = []
    for r in reps:
        hit = diagram_match(r)
        labels.append(hit[0] if hit else "unmatched")
    match_ok = sorted(labels) == sorted(ALL_LABELS)
    ok = count_ok and heights_ok and match_ok
    return ok, {"count": len(reps), "all_height_one": heights_ok,
                "labels": sorted(labels)}


@_register("height.bounds", "the two hyperbolic distance bounds")
def _c_height_bounds(inputs):
    rep = bound_report()
    rho2 = weyl_data().rho_norm2
    sh2 = rho2 / R2(2)
    ch2 = (R2(4) * rho2).inverse()
    first_ok = abs(rep["first_bound"] - 2.32) <= 0.01
    second_ok = abs(rep["second_bound"] - 2.26) <= 0.01
    ok = (first_ok and second_ok and rep["sinh_identity"]
          and rep["cosh_identity"] and rep["center_self"]
          and rep["first_below_sqrt6"] and rep["second_below_sqrt6"])
    return ok, {"first_display": round(rep["first_bound"], 6),
                "first_exact": r2_encode(rep["first_bound_exact"]),
                "second_display": round(rep["second_bound"], 6),
                "sinh_half_squared": r2_encode(sh2),
                "cosh_half_squared": r2_encode(ch2),
                "sinh_identity": rep["sinh_identity"],
                "cosh_identity": rep["cosh_identity"],
                "center_self_distance_one": rep["center_self"],
                "first_below_sqrt6": rep["first_below_sqrt6"],
                "second_below_sqrt6": rep["second_below_sqrt6"]}


# --- job lists ------------------------------------------------------------

def _scalar_jobs():
    return [("scalars.units", {}), ("scalars.prime", {}), ("scalars.xi", {})]


def _lattice_jobs(quick=False):
    jobs = [(f"lattice.pmodular.{n}", {"lattice": n})
            for n in ("e8", "leech", "l_3e8h", "l_leech_h")]
    jobs += [(f"lattice.signature.{n}", {"lattice": n, "expected": [4, 28]})
             for n in ("l_3e8h", "l_leech_h")]
    jobs.append(("lattice.shell.e8", {"lattice": "e8", "norm": -2,
                                      "expected": 240}))
    if not quick:
        jobs.append(("lattice.shell.leech", {"lattice": "leech", "norm": -4,
                                             "expected": 196560}))
    return jobs


def _diagram_jobs():
    return [(f"diagram.{name}", {}) for name in
            ("roots", "incidence", "heawood", "balance", "weyl",
             "relation-module", "span", "deflate", "spider", "m444",
             "collineations", "fixed")]


def _fixture_matrix_lines():
    with open(fixture_path("basis_change_rows.txt")) as fh:
        return [ln.strip() for ln in fh
                if ln.strip() and not ln.startswith("#")]


def _iso_jobs(quick=False, seeds=(0, 1, 2)):
    jobs = [("iso.matrix", {"rows": _fixture_matrix_lines()})]
    if not quick:
        jobs += [(f"iso.search.{s}", {"seed": s, "expected_shell": 196560})
                 for s in seeds]
    return jobs


def _heisen_jobs(quick=False):
    n = 25 if quick else 100
    return [
        ("heisen.compose", {"seed": 11, "pairs": n}),
        ("heisen.inverse", {"seed": 12, "count": n}),
        ("heisen.commutator", {"seed": 13, "pairs": n}),
        ("heisen.conjugation", {"seed": 14, "count": n}),
        ("heisen.identity-random", {"seed": 15, "count": n}),
        ("heisen.rblock", {}),
        ("heisen.identity.z-ij", {"z": "(0,2,2,0)/2"}),
        ("heisen.identity.z-ik", {"z": "(0,2,0,2)/2"}),
        ("heisen.special.z-ij", {"z": "(0,2,2,0)/2",
                                 "printed_central": "(0,-2,-4,-2)/2"}),
        ("heisen.special.z-ik", {"z": "(0,2,0,2)/2",
                                 "printed_central": "(0,0,-2,-2)/2"}),
        ("heisen.central-generation", {}),
        ("heisen.generators", {"expected": 81}),
    ]


_CONVERTED = None


def converted_generators():
    """The 81 generator roots rewritten in block coordinates, cached."""
    global _CONVERTED
    if _CONVERTED is None:
        bc, _ = reference_basis_change()
        _CONVERTED = tuple(bc.convert(v, "to_3e8h") for v in generators81())
    return _CONVERTED


def _height_jobs(quick=False, generator=None):
    gens = converted_generators()
    if generator is not None:
        picks = [generator]
    else:
        picks = range(9 if quick else len(gens))
    jobs = [(f"height.reduce.{k}", {"generator": k,
                                    "vector": vec_encode(gens[k])})
            for k in picks]
    if generator is None and not quick:
        jobs.append(("height.enumerate", {"expected": 14}))
    if generator is None:
        jobs.append(("height.bounds", {}))
    return jobs


# --- the runner -----------------------------------------------------------

def _prime_caches(jobs):
    # fill the shared caches serially so threads never duplicate big work
    ids = [cert_id for cert_id, _ in jobs]
    if any(s.startswith(("diagram.", "height.")) for s in ids):
        weyl_data()
    if any(s.startswith("height.reduce") for s in ids):
        reduce(roots14()["a"])
    if any(s.startswith("iso.search") or s == "lattice.shell.leech"
           for s in ids):
        first_shell_data()
    if any(s.startswith("iso.") for s in ids):
        reference_basis_change()


def run_jobs(jobs, threads=1):
    _prime_caches(jobs)
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda job: certificate(*job), jobs))
    return [certificate(cert_id, inputs) for cert_id, inputs in jobs]


def _emit_report(certs, args, quick=False):
    doc = {"schema": SCHEMA, "generator": "hleech", "quick": bool(quick),
           "certifying": not quick, "certificates": certs}
    text = json.dumps(doc, indent=2) + "\n"
    output = getattr(args, "output", None)
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for cert in certs:
        print(f"{cert['verdict'].upper():4s} {cert['id']}"
              f" ({cert['seconds']}s)", file=sys.stderr)
    failed = [cert for cert in certs if cert["verdict"] != "pass"]
    if failed:
        print(f"{len(failed)} of {len(certs)} certificates failed",
              file=sys.stderr)
    return 1 if failed else 0


def _write_lines(lines, output):
    text = "\n".join(lines) + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- plain text formats ---------------------------------------------------

def _read_matrix_file(path, rank):
    with open(path) as fh:
        lines = [ln.strip() for ln in fh
                 if ln.strip() and not ln.startswith("#")]
    if len(lines) != rank:
        raise SystemExit(f"expected {rank} matrix rows, got {len(lines)}")
    rows = []
    for ln in lines:
        toks = ln.split()
        if len(toks) != rank:
            raise SystemExit(f"expected {rank} entries per row, got {len(toks)}")
        rows.append(tuple(hq_parse(t) for t in toks))
    return tuple(rows)


def _gram_lines(lat):
    lines = [f"rank {lat.rank}"]
    for row in lat.gram:
        lines.append(" ".join(hq_encode(e) for e in row))
    return lines


def _parse_gram_file(path):
    with open(path) as fh:
        lines = [ln.strip() for ln in fh
                 if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("rank "):
        raise SystemExit("lattice file must start with a rank header")
    rank = int(lines[0].split()[1])
    if len(lines) != rank + 1:
        raise SystemExit(f"expected {rank} Gram rows, got {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != rank:
            raise SystemExit(f"expected {rank} entries per row, got {len(toks)}")
        rows.append(tuple(hq_parse(t) for t in toks))
    return rank, tuple(rows)


# --- subcommand handlers --------------------------------------------------

def _cmd_lattice_verify(args):
    certs = run_jobs(_lattice_jobs(quick=args.quick), threads=args.threads)
    return _emit_report(certs, args, quick=args.quick)


def _cmd_lattice_emit(args):
    lat = make_lattice(args.name)
    _write_lines(_gram_lines(lat), args.output)
    return 0


def _cmd_lattice_read(args):
    rank, rows = _parse_gram_file(args.path)
    match = None
    for name in LATTICE_NAMES:
        lat = make_lattice(name)
        if lat.rank == rank and all(tuple(lat.gram[s]) == rows[s]
                                    for s in range(rank)):
            match = name
            break
    print(f"rank {rank}")
    print(f"known lattice: {match or 'none'}")
    return 0


def _cmd_reflect_apply(args):
    lat = make_lattice(args.lattice)
    m = AutMatrix(lat, _read_matrix_file(args.matrix, lat.rank))
    with open(args.vectors) as fh:
        vecs = [vec_parse(lat, ln) for ln in fh
                if ln.strip() and not ln.startswith("#")]
    _write_lines([vec_encode(m.apply(v)) for v in vecs], args.output)
    return 0


def _cmd_reflect_braid_type(args):
    lat = make_lattice(args.lattice)
    mu = hq_parse(args.unit)
    m1 = reflection_matrix(vec_parse(lat, args.root1), mu)
    m2 = reflection_matrix(vec_parse(lat, args.root2), mu)
    print(braid_type(m1, m2))
    return 0


def _cmd_reflect_order(args):
    lat = make_lattice(args.lattice)
    m = AutMatrix(lat, _read_matrix_file(args.matrix, lat.rank))
    print(element_order(m, cutoff=args.cutoff))
    return 0


def _cmd_diagram_verify(args):
    certs = run_jobs(_diagram_jobs(), threads=args.threads)
    return _emit_report(certs, args)


def _cmd_iso_search(args):
    jobs = [(f"iso.search.{args.seed}",
             {"seed": args.seed, "expected_shell": 196560})]
    certs = run_jobs(jobs, threads=1)
    return _emit_report(certs, args)


def _cmd_iso_verify_matrix(args):
    certs = run_jobs([("iso.matrix", {"rows": _fixture_matrix_lines()})])
    return _emit_report(certs, args)


def _cmd_heisen_check(args):
    certs = run_jobs(_heisen_jobs(quick=args.quick), threads=args.threads)
    return _emit_report(certs, args, quick=args.quick)


def _cmd_heisen_emit(args):
    _write_lines([vec_encode(v) for v in generators81()], args.output)
    return 0


def _cmd_height_reduce(args):
    if not args.all_generators and args.generator is None:
        print("usage: pass --all-generators or --generator N", file=sys.stderr)
        return 2
    generator = None if args.all_generators else args.generator
    certs = run_jobs(_height_jobs(quick=args.quick, generator=generator),
                     threads=args.threads)
    return _emit_report(certs, args, quick=args.quick)


def _cmd_height_enumerate(args):
    certs = run_jobs([("height.enumerate", {"expected": 14})])
    return _emit_report(certs, args)


def _cmd_height_bounds(args):
    certs = run_jobs([("height.bounds", {})])
    return _emit_report(certs, args)


def _cmd_verify_all(args):
    jobs = (_scalar_jobs() + _lattice_jobs(quick=args.quick)
            + _diagram_jobs() + _iso_jobs(quick=args.quick)
            + _heisen_jobs(quick=args.quick) + _height_jobs(quick=args.quick))
    certs = run_jobs(jobs, threads=args.threads)
    return _emit_report(certs, args, quick=args.quick)


def _cmd_recheck(args):
    with open(args.report) as fh:
        doc = json.load(fh)
    certs = doc["certificates"] if isinstance(doc, dict) else doc
    jobs = [(cert["id"], cert["inputs"]) for cert in certs]
    fresh = run_jobs(jobs, threads=args.threads)
    mismatched = []
    for cert, new in zip(certs, fresh):
        same = (new["verdict"] == cert["verdict"]
                and new["witness"] == cert["witness"])
        print(("ok   " if same else "DIFF ") + cert["id"])
        if not same:
            mismatched.append(cert["id"])
    print(f"{len(certs) - len(mismatched)} of {len(certs)} certificates"
          " reproduced")
    return 1 if mismatched else 0


# --- argument parsing -----------------------------------------------------

def _add_report_flags(sp, quick=True):
    sp.add_argument("--output", metavar="PATH",
                    help="write the JSON report here instead of stdout")
    sp.add_argument("--threads", type=int, default=1, metavar="N",
                    help="run independent certificates in a thread pool")
    if quick:
        sp.add_argument("--quick", action="store_true",
                        help="sample instead of exhausting (non-certifying)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hleech",
        description="exact certificates for the quaternionic Lorentzian "
                    "Leech lattice and its reflection group")
    sub = parser.add_subparsers(dest="command", required=True)

    lat = sub.add_parser("lattice", help="lattice-level checks and files")
    lat_sub = lat.add_subparsers(dest="action", required=True)
    sp = lat_sub.add_parser("verify", help="modularity, signature, shells")
    _add_report_flags(sp)
    sp.set_defaults(func=_cmd_lattice_verify)
    sp = lat_sub.add_parser("emit", help="write a Gram file")
    sp.add_argument("name", choices=LATTICE_NAMES)
    sp.add_argument("--output", metavar="PATH")
    sp.set_defaults(func=_cmd_lattice_emit)
    sp = lat_sub.add_parser("read", help="parse a Gram file and identify it")
    sp.add_argument("path")
    sp.set_defaults(func=_cmd_lattice_read)

    ref = sub.add_parser("reflect", help="apply and classify automorphisms")
    ref_sub = ref.add_subparsers(dest="action", required=True)
    sp = ref_sub.add_parser("apply", help="apply a matrix to a vector file")
    sp.add_argument("--lattice", default="l_leech_h", choices=LATTICE_NAMES)
    sp.add_argument("--matrix", required=True, metavar="PATH")
    sp.add_argument("--vectors", required=True, metavar="PATH")
    sp.add_argument("--output", metavar="PATH")
    sp.set_defaults(func=_cmd_reflect_apply)
    sp = ref_sub.add_parser("braid-type", help="commute, braid or other")
    sp.add_argument("root1")
    sp.add_argument("root2")
    sp.add_argument("--lattice", default="l_3e8h", choices=LATTICE_NAMES)
    sp.add_argument("--unit", default="(0,2,0,0)/2",
                    help="reflection unit as a quaternion literal")
    sp.set_defaults(func=_cmd_reflect_braid_type)
    sp = ref_sub.add_parser("order", help="order of a matrix, up to a cutoff")
    sp.add_argument("--lattice", default="l_3e8h", choices=LATTICE_NAMES)
    sp.add_argument("--matrix", required=True, metavar="PATH")
    sp.add_argument("--cutoff", type=int, default=1000)
    sp.set_defaults(func=_cmd_reflect_order)

    dia = sub.add_parser("diagram", help="the 14-root diagram")
    dia_sub = dia.add_subparsers(dest="action", required=True)
    sp = dia_sub.add_parser("verify", help="all diagram-level certificates")
    _add_report_flags(sp, quick=False)
    sp.set_defaults(func=_cmd_diagram_verify)

    iso = sub.add_parser("iso", help="the two coordinate systems")
    iso_sub = iso.add_subparsers(dest="action", required=True)
    sp = iso_sub.add_parser("search", help="find a basis change from a seed")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--output", metavar="PATH")
    sp.set_defaults(func=_cmd_iso_search)
    sp = iso_sub.add_parser("verify-matrix", help="check the stored matrix")
    sp.add_argument("--output", metavar="PATH")
    sp.set_defaults(func=_cmd_iso_verify_matrix)

    hei = sub.add_parser("heisen", help="translations fixing the null point")
    hei_sub = hei.add_subparsers(dest="action", required=True)
    sp = hei_sub.add_parser("check-identities", help="group laws, exactly")
    _add_report_flags(sp)
    sp.set_defaults(func=_cmd_heisen_check)
    sp = hei_sub.add_parser("emit-generators",
                            help="the 81 roots, one vector per line")
    sp.add_argument("--output", metavar="PATH")
    sp.set_defaults(func=_cmd_heisen_emit)

    hei = sub.add_parser("height", help="heights and the descent")
    hei_sub = hei.add_subparsers(dest="action", required=True)
    sp = hei_sub.add_parser("reduce", help="descend generators to the diagram")
    sp.add_argument("--all-generators", action="store_true")
    sp.add_argument("--generator", type=int, metavar="N")
    _add_report_flags(sp)
    sp.set_defaults(func=_cmd_height_reduce)
    sp = hei_sub.add_parser("enumerate-min",
                            help="exhaust the minimal-height classes")
    sp.add_argument("--output", metavar="PATH")
    sp.set_defaults(func=_cmd_height_enumerate)
    sp = hei_sub.add_parser("bounds", help="the two distance bounds")
    sp.add_argument("--output", metavar="PATH")
    sp.set_defaults(func=_cmd_height_bounds)

    sp = sub.add_parser("verify-all", help="every certificate, in order")
    _add_report_flags(sp)
    sp.set_defaults(func=_cmd_verify_all)

    sp = sub.add_parser("recheck", help="revalidate a saved report")
    sp.add_argument("report", metavar="PATH")
    sp.add_argument("--threads", type=int, default=1, metavar="N")
    sp.set_defaults(func=_cmd_recheck)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
