"""In-process exercises of the command line surface.

Every test drives main(argv) directly so stdout, stderr and exit codes
can be checked without spawning a subprocess.  Report-producing commands
write JSON either to stdout or to --output files under tmp_path.
"""

import json

import pytest

from hleech.cli import LATTICE_NAMES, main
from hleech.diagram import ALL_LABELS, roots14
from hleech.heisen import generators81
from hleech.hlattice import (
    BB_ROWS, l_3e8h, l_leech_h, make_lattice, vec_encode, vec_parse,
)
from hleech.hquat import HQ, I, P, hq_encode, hq_parse
from hleech.isosearch import fixture_path
from hleech.reflect import reflection_matrix


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def load_report(path):
    with open(path) as fh:
        doc = json.load(fh)
    assert doc["schema"] == 1
    assert doc["generator"] == "hleech"
    for cert in doc["certificates"]:
        assert set(cert) == {"id", "anchor", "inputs", "verdict", "witness",
                             "seconds"}
        assert cert["verdict"] in ("pass", "fail")
    return doc


def write_matrix_file(path, m):
    entries = m.to_hq_entries()
    assert entries is not None
    lines = ["# matrix rows"] + [" ".join(hq_encode(e) for e in row)
                                 for row in entries]
    path.write_text("\n".join(lines) + "\n")


# --- argparse level -------------------------------------------------------

def test_no_command_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as err:
        main([])
    assert err.value.code == 2


def test_unknown_command_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2


def test_unknown_flag_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as err:
        main(["lattice", "verify", "--bogus"])
    assert err.value.code == 2


def test_missing_subaction_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as err:
        main(["lattice"])
    assert err.value.code == 2


def test_bad_lattice_name_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as err:
        main(["lattice", "emit", "e7"])
    assert err.value.code == 2


# --- lattice emit / read --------------------------------------------------

def test_emit_cell_gram_to_stdout(capsys):
    code, out, _ = run(["lattice", "emit", "cell"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "rank 2"
    rows = [tuple(hq_parse(t) for t in ln.split()) for ln in lines[1:]]
    assert tuple(rows) == tuple(tuple(r) for r in make_lattice("cell").gram)


@pytest.mark.parametrize("name", LATTICE_NAMES)
def test_emit_then_read_identifies_lattice(name, tmp_path, capsys):
    path = tmp_path / f"{name}.gram"
    code, _, _ = run(["lattice", "emit", name, "--output", str(path)], capsys)
    assert code == 0
    code, out, _ = run(["lattice", "read", str(path)], capsys)
    assert code == 0
    rank = make_lattice(name).rank
    assert out.splitlines() == [f"rank {rank}", f"known lattice: {name}"]


def test_read_valid_but_unknown_gram(tmp_path, capsys):
    path = tmp_path / "odd.gram"
    path.write_text("rank 1\n(-4,0,0,0)/2\n")
    code, out, _ = run(["lattice", "read", str(path)], capsys)
    assert code == 0
    assert out.splitlines() == ["rank 1", "known lattice: none"]


def test_read_rejects_missing_header(tmp_path):
    path = tmp_path / "bad.gram"
    path.write_text("(-4,0,0,0)/2\n")
    with pytest.raises(SystemExit) as err:
        main(["lattice", "read", str(path)])
    assert "rank header" in str(err.value.code)


def test_read_rejects_wrong_row_count(tmp_path):
    path = tmp_path / "short.gram"
    path.write_text("rank 2\n(0,0,0,0)/2 (2,2,0,0)/2\n")
    with pytest.raises(SystemExit) as err:
        main(["lattice", "read", str(path)])
    assert "Gram rows" in str(err.value.code)


def test_lattice_verify_quick(tmp_path, capsys):
    path = tmp_path / "lat.json"
    code, _, err = run(
        ["lattice", "verify", "--quick", "--output", str(path)], capsys)
    assert code == 0
    doc = load_report(path)
    assert doc["quick"] is True and doc["certifying"] is False
    assert len(doc["certificates"]) == 7
    assert all(c["verdict"] == "pass" for c in doc["certificates"])
    assert "lattice.shell.e8" in err


# --- reflect --------------------------------------------------------------

def test_braid_type_follows_incidence(capsys):
    roots = roots14()
    lines = [l for l in ALL_LABELS if l not in roots.fano.through_point]
    incident = next(l for l in lines if roots["a"].inner(roots[l]) == P)
    apart = next(l for l in lines if roots["a"].inner(roots[l]).is_zero())
    code, out, _ = run(
        ["reflect", "braid-type",
         vec_encode(roots["a"]), vec_encode(roots[incident])], capsys)
    assert code == 0 and out.strip() == "braid"
    code, out, _ = run(
        ["reflect", "braid-type",
         vec_encode(roots["a"]), vec_encode(roots[apart])], capsys)
    assert code == 0 and out.strip() == "commute"


def test_braid_type_same_root(capsys):
    roots = roots14()
    enc = vec_encode(roots["c1"])
    code, out, _ = run(["reflect", "braid-type", enc, enc], capsys)
    assert code == 0 and out.strip() == "commute"


def test_braid_type_with_explicit_unit(capsys):
    roots = roots14()
    code, out, _ = run(
        ["reflect", "braid-type", vec_encode(roots["a"]),
         vec_encode(roots["c1"]), "--unit", "(0,0,2,0)/2"], capsys)
    assert code == 0 and out.strip() == "commute"


def test_order_of_a_reflection(tmp_path, capsys):
    roots = roots14()
    path = tmp_path / "refl.mat"
    write_matrix_file(path, reflection_matrix(roots["a"], I))
    code, out, _ = run(["reflect", "order", "--matrix", str(path)], capsys)
    assert code == 0 and out.strip() == "4"


def test_order_respects_cutoff(tmp_path, capsys):
    roots = roots14()
    path = tmp_path / "refl.mat"
    write_matrix_file(path, reflection_matrix(roots["a"], I))
    code, out, _ = run(
        ["reflect", "order", "--matrix", str(path), "--cutoff", "3"], capsys)
    assert code == 0 and out.strip() == "exceeds cutoff"


def test_apply_matrix_to_vectors(tmp_path, capsys):
    roots = roots14()
    lat = l_3e8h()
    mat = tmp_path / "neg.mat"
    write_matrix_file(mat, reflection_matrix(roots["a"], HQ.of(-1)))
    vecs = tmp_path / "in.vecs"
    vecs.write_text("# two vectors\n"
                    + vec_encode(roots["a"]) + "\n"
                    + vec_encode(roots["c1"]) + "\n")
    out_path = tmp_path / "out.vecs"
    code, _, _ = run(
        ["reflect", "apply", "--lattice", "l_3e8h", "--matrix", str(mat),
         "--vectors", str(vecs), "--output", str(out_path)], capsys)
    assert code == 0
    got = [vec_parse(lat, ln) for ln in out_path.read_text().splitlines()]
    assert got[0] == roots["a"] * HQ.of(-1)
    assert got[1] == roots["c1"]


def test_matrix_file_shape_errors(tmp_path):
    path = tmp_path / "short.mat"
    path.write_text("(2,0,0,0)/2\n")
    with pytest.raises(SystemExit) as err:
        main(["reflect", "order", "--matrix", str(path)])
    assert "matrix rows" in str(err.value.code)


# --- diagram --------------------------------------------------------------

def test_diagram_verify_all_pass(tmp_path, capsys, wd):
    path = tmp_path / "diagram.json"
    code, _, _ = run(["diagram", "verify", "--output", str(path)], capsys)
    assert code == 0
    doc = load_report(path)
    assert doc["quick"] is False and doc["certifying"] is True
    certs = doc["certificates"]
    assert len(certs) == 12
    assert all(c["verdict"] == "pass" for c in certs)
    ids = [c["id"] for c in certs]
    assert "diagram.weyl" in ids and "diagram.spider" in ids


# --- iso ------------------------------------------------------------------

def test_iso_verify_matrix(tmp_path, capsys):
    path = tmp_path / "iso.json"
    code, _, _ = run(["iso", "verify-matrix", "--output", str(path)], capsys)
    assert code == 0
    certs = load_report(path)["certificates"]
    assert [c["id"] for c in certs] == ["iso.matrix"]
    assert certs[0]["verdict"] == "pass"
    assert certs[0]["witness"]["gram_match"] is True


def test_iso_search_from_seed(tmp_path, capsys, shell):
    path = tmp_path / "seed1.json"
    code, _, _ = run(["iso", "search", "--seed", "1", "--output", str(path)],
                     capsys)
    assert code == 0
    certs = load_report(path)["certificates"]
    assert [c["id"] for c in certs] == ["iso.search.1"]
    assert certs[0]["verdict"] == "pass"
    w = certs[0]["witness"]
    assert w["shell_count"] == 196560
    assert len(w["rows"]) == 8


# --- heisen ---------------------------------------------------------------

def test_emit_generators(tmp_path, capsys):
    path = tmp_path / "gens.vecs"
    code, _, _ = run(["heisen", "emit-generators", "--output", str(path)],
                     capsys)
    assert code == 0
    lat = l_leech_h()
    lines = path.read_text().splitlines()
    assert len(lines) == 81
    got = [vec_parse(lat, ln) for ln in lines]
    assert got == list(generators81())


def test_heisen_check_quick_reports_the_two_table_mismatches(tmp_path, capsys):
    path = tmp_path / "heis.json"
    code, _, err = run(
        ["heisen", "check-identities", "--quick", "--output", str(path)],
        capsys)
    assert code == 1
    certs = load_report(path)["certificates"]
    assert len(certs) == 12
    failing = {c["id"] for c in certs if c["verdict"] == "fail"}
    assert failing == {"heisen.special.z-ij", "heisen.special.z-ik"}
    special = {c["id"]: c["witness"] for c in certs if c["id"] in failing}
    assert special["heisen.special.z-ij"]["computed"] == "(0,-2,0,-2)/2"
    assert special["heisen.special.z-ij"]["printed"] == "(0,-2,-4,-2)/2"
    assert special["heisen.special.z-ik"]["computed"] == "(0,-4,2,-2)/2"
    assert special["heisen.special.z-ik"]["printed"] == "(0,0,-2,-2)/2"
    assert "2 of 12 certificates failed" in err


# --- height ---------------------------------------------------------------

def test_height_reduce_needs_a_target(capsys):
    code, _, err = run(["height", "reduce"], capsys)
    assert code == 2
    assert "--all-generators" in err


def test_height_reduce_single_generator(tmp_path, capsys, shell, refbc):
    path = tmp_path / "g31.json"
    code, _, _ = run(
        ["height", "reduce", "--generator", "31", "--output", str(path)],
        capsys)
    assert code == 0
    certs = load_report(path)["certificates"]
    assert [c["id"] for c in certs] == ["height.reduce.31"]
    assert certs[0]["verdict"] == "pass"
    w = certs[0]["witness"]
    assert w["start_height2"] == "251+168*s2"
    assert w["perturbed_at"] == [28]
    assert w["step_count"] == len(w["steps"])
    assert w["class"]["root"] in ALL_LABELS
    last = w["steps"][-1]
    assert set(last) == {"root", "unit", "height2", "display"}
    assert last["height2"] == "1+0*s2"


def test_height_bounds_command(tmp_path, capsys, wd):
    path = tmp_path / "bounds.json"
    code, _, _ = run(["height", "bounds", "--output", str(path)], capsys)
    assert code == 0
    cert = load_report(path)["certificates"][0]
    assert cert["verdict"] == "pass"
    w = cert["witness"]
    assert abs(w["first_display"] - 2.320377) < 1e-4
    assert abs(w["second_display"] - 2.263469) < 1e-4
    assert w["first_exact"] == "12/7+3/7*s2"


def test_height_enumerate_command(tmp_path, capsys, shell, refbc,
                                  enum_classes):
    path = tmp_path / "enum.json"
    code = main(["height", "enumerate-min", "--output", str(path)])
    assert code == 0
    cert = load_report(path)["certificates"][0]
    assert cert["verdict"] == "pass"
    assert cert["witness"]["count"] == 14
    assert cert["witness"]["labels"] == sorted(ALL_LABELS)


# --- verify-all / recheck -------------------------------------------------

@pytest.fixture(scope="module")
def quick_report(tmp_path_factory):
    base = tmp_path_factory.mktemp("reports")
    paths = []
    for k in range(2):
        path = base / f"quick{k}.json"
        code = main(["verify-all", "--quick", "--output", str(path)])
        assert code == 1
        paths.append(path)
    return paths


def _strip_seconds(doc):
    for cert in doc["certificates"]:
        cert.pop("seconds")
    return doc


def test_verify_all_quick_envelope(quick_report, capsys):
    doc = load_report(quick_report[0])
    assert doc["quick"] is True and doc["certifying"] is False
    certs = doc["certificates"]
    assert len(certs) == 45
    failing = [c["id"] for c in certs if c["verdict"] == "fail"]
    assert failing == ["heisen.special.z-ij", "heisen.special.z-ik"]


def test_verify_all_quick_is_deterministic(quick_report):
    docs = [_strip_seconds(load_report(p)) for p in quick_report]
    assert docs[0] == docs[1]


def test_recheck_reproduces_quick_report(quick_report, capsys):
    code, out, _ = run(["recheck", str(quick_report[0])], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "45 of 45 certificates reproduced"
    assert sum(ln.startswith("ok   ") for ln in lines) == 45


def test_recheck_flags_a_tampered_witness(quick_report, tmp_path, capsys):
    doc = load_report(quick_report[0])
    victim = doc["certificates"][0]["id"]
    doc["certificates"][0]["witness"] = {"tampered": True}
    path = tmp_path / "tampered.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(["recheck", str(path)], capsys)
    assert code == 1
    lines = out.splitlines()
    assert f"DIFF {victim}" in lines
    assert lines[-1] == "44 of 45 certificates reproduced"


def test_verify_all_quick_threads_match(quick_report, tmp_path, capsys):
    path = tmp_path / "threaded.json"
    code = main(["verify-all", "--quick", "--threads", "4",
                 "--output", str(path)])
    capsys.readouterr()
    assert code == 1
    serial = _strip_seconds(load_report(quick_report[0]))
    threaded = _strip_seconds(load_report(path))
    assert serial == threaded


# --- shipped fixture files ------------------------------------------------

def test_fixture_basis_rows_match_the_code(capsys):
    with open(fixture_path("bb_basis.txt")) as fh:
        lines = [ln.strip() for ln in fh
                 if ln.strip() and not ln.startswith("#")]
    assert len(lines) == 6
    rows = [tuple(hq_parse(t) for t in ln.split()) for ln in lines]
    assert tuple(rows) == tuple(tuple(r) for r in BB_ROWS)


def test_fixture_diagram_roots_match_the_code(capsys):
    roots = roots14()
    lat = l_3e8h()
    with open(fixture_path("diagram_roots.txt")) as fh:
        lines = [ln.strip() for ln in fh
                 if ln.strip() and not ln.startswith("#")]
    assert len(lines) == 14
    seen = set()
    for ln in lines:
        lbl, _, enc = ln.partition(" ")
        assert vec_parse(lat, enc) == roots[lbl]
        seen.add(lbl)
    assert seen == set(ALL_LABELS)
