"""Lattices over the Hurwitz quaternions.

A lattice here is a free right H-module with an H-valued Hermitian form,
held as a Gram matrix on a fixed basis.  The module ships the standard
negative-definite lattices, the hyperbolic cell, the quaternionic E8 and
Leech lattices, and the two rank-8 Lorentzian assemblies 3E8+cell and
Leech+cell.  Basis coordinates are the canonical representation; ambient
coordinate descriptions exist for construction, membership oracles, and
fixtures.
"""
from __future__ import annotations

from fractions import Fraction

from .hquat import (HQ, QQ, R2Quat, ZERO, ONE, I, J, K, P, PBAR, OMEGA,
                    cong_p, cong_2, cong_2p2i, hq_encode, hq_parse)
from . import _linalg
from ._linalg import (qmat, qmat_inverse, qmat_vec, fmat_det, sym_signature,
                      fincke_pohst)


def _hq(x):
    return x if isinstance(x, HQ) else HQ.of(x)


class HLattice:
    """A free right H-module with Hermitian Gram matrix.

    ambient_blocks describes the form on ambient coordinate tuples:
    ("neg", nslots, den) contributes -(1/den) * sum conj(x_u) y_u, and
    ("cell",) contributes the two-slot pairing conj(x1) pbar y2 +
    conj(x2) p y1.
    """

    def __init__(self, name, gram, basis_ambient=None, ambient_blocks=None,
                 contains_ambient=None):
        self.name = name
        self.rank = len(gram)
        self.gram = tuple(tuple(_hq(e) for e in row) for row in gram)
        self.basis_ambient = None
        if basis_ambient is not None:
            self.basis_ambient = tuple(tuple(_hq(e) for e in row)
                                       for row in basis_ambient)
        self.ambient_blocks = ambient_blocks
        self._contains_ambient = contains_ambient
        self._cache = {}
        for s in range(self.rank):
            for t in range(self.rank):
                assert self.gram[s][t].conj() == self.gram[t][s], "gram not Hermitian"

    def vec(self, coords):
        return LVec(self, tuple(coords))

    def basis_vec(self, s):
        coords = [ZERO] * self.rank
        coords[s] = ONE
        return self.vec(coords)

    def zero(self):
        return self.vec([ZERO] * self.rank)

    def inner(self, x, y):
        """<x, y> for coordinate tuples; conjugate-linear on the left."""
        acc = None
        for s in range(self.rank):
            xs = x[s]
            if isinstance(xs, HQ) and xs.is_zero():
                continue
            xc = xs.conj()
            for t in range(self.rank):
                yt = y[t]
                if isinstance(yt, HQ) and yt.is_zero():
                    continue
                g = self.gram[s][t]
                if g.is_zero():
                    continue
                term = xc * g * yt
                acc = term if acc is None else acc + term
        return ZERO if acc is None else acc

    def contains_ambient(self, amb):
        if self._contains_ambient is None:
            raise ValueError(f"{self.name} has no ambient membership test")
        return self._contains_ambient(amb)

    def __repr__(self):
        return f"HLattice({self.name}, rank {self.rank})"


class LVec:
    """A vector in basis coordinates; scalars act on the right."""

    __slots__ = ("lattice", "coords")

    def __init__(self, lattice, coords):
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "coords", tuple(coords))
        assert len(self.coords) == lattice.rank

    def __setattr__(self, name, value):
        raise AttributeError("LVec is immutable")

    def __add__(self, other):
        assert self.lattice is other.lattice
        return LVec(self.lattice, tuple(a + b for a, b in
                                        zip(self.coords, other.coords)))

    def __sub__(self, other):
        assert self.lattice is other.lattice
        return LVec(self.lattice, tuple(a - b for a, b in
                                        zip(self.coords, other.coords)))

    def __neg__(self):
        return LVec(self.lattice, tuple(-a for a in self.coords))

    def __mul__(self, scalar):
        return LVec(self.lattice, tuple(a * scalar for a in self.coords))

    def __rmul__(self, scalar):
        if isinstance(scalar, int):
            return self * scalar
        return NotImplemented

    def inner(self, other):
        assert self.lattice is other.lattice
        return self.lattice.inner(self.coords, other.coords)

    def norm(self):
        return self.inner(self)

    def is_zero(self):
        return all(c.is_zero() for c in self.coords)

    def is_integral(self):
        return all(isinstance(c, HQ) for c in self.coords)

    def to_integral(self):
        """Coerce QQ coordinates back to HQ; None if any is not Hurwitz."""
        out = []
        for c in self.coords:
            h = c if isinstance(c, HQ) else c.to_hq()
            if h is None:
                return None
            out.append(h)
        return LVec(self.lattice, tuple(out))

    def ambient(self):
        return coords_to_ambient(self.lattice, self.coords)

    def __eq__(self, other):
        if not isinstance(other, LVec):
            return NotImplemented
        return self.lattice is other.lattice and self.coords == other.coords

    def __hash__(self):
        return hash((id(self.lattice), self.coords))

    def __repr__(self):
        return f"LVec[{self.lattice.name}: " + \
            ", ".join(str(c) for c in self.coords) + "]"


def vec_encode(v):
    return "[" + ", ".join(hq_encode(c) for c in v.coords) + "]"


def vec_parse(lat, text):
    t = text.strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise ValueError(f"bad vector literal: {text!r}")
    parts = t[1:-1].split(",")
    # quaternion literals contain commas; regroup into 4-tuples
    if len(parts) % 4:
        raise ValueError(f"bad vector literal: {text!r}")
    coords = []
    for s in range(0, len(parts), 4):
        coords.append(hq_parse(",".join(parts[s:s + 4])))
    if len(coords) != lat.rank:
        raise ValueError(f"expected rank {lat.rank}, got {len(coords)}")
    return lat.vec(coords)


# --- ambient forms -------------------------------------------------------

def ambient_inner(blocks, x, y):
    """H-valued form on ambient tuples described by the block list."""
    acc = QQ(0)
    pos = 0
    for blk in blocks:
        if blk[0] == "neg":
            _, nslots, den = blk
            for u in range(pos, pos + nslots):
                acc = acc - x[u].conj() * y[u] * Fraction(1, den)
            pos += nslots
        elif blk[0] == "cell":
            acc = acc + x[pos].conj() * PBAR * y[pos + 1] \
                + x[pos + 1].conj() * P * y[pos]
            pos += 2
        else:  # pragma: no cover
            raise ValueError(blk)
    return acc


def coords_to_ambient(lat, coords):
    if lat.basis_ambient is None:
        raise ValueError(f"{lat.name} has no ambient description")
    nslots = len(lat.basis_ambient[0])
    out = []
    for t in range(nslots):
        acc = None
        for s in range(lat.rank):
            b = lat.basis_ambient[s][t]
            if b.is_zero():
                continue
            term = b * coords[s]
            acc = term if acc is None else acc + term
        out.append(ZERO if acc is None else acc)
    return tuple(out)


def ambient_to_coords(lat, amb):
    """Exact basis coordinates of an ambient tuple (entries HQ or QQ)."""
    if lat.name == "e8":
        return _e8_pair_coords(amb[0], amb[1])
    if lat.name == "l_3e8h":
        out = []
        for f in range(3):
            out.extend(_e8_pair_coords(amb[2 * f], amb[2 * f + 1]))
        out.extend(amb[6:8])
        return tuple(out)
    if lat.name == "leech":
        return _leech_coords(amb)
    if lat.name == "l_leech_h":
        return _leech_coords(amb[:6]) + tuple(amb[6:8])
    if lat.name == "cell":
        return tuple(amb)
    if lat.name.startswith("standard"):
        return tuple(amb)
    raise ValueError(f"{lat.name} has no ambient description")


def _e8_pair_coords(y1, y2):
    # (y1, y2) = c u + d v with c = (1,-1), d = (-p,0):
    # y2 = -u and y1 = u - p v, so v = pbar (-y2 - y1) / 2.
    u = -y2
    v = (PBAR.to_qq() * (-y2 - y1).to_qq()) * Fraction(1, 2)
    vh = v.to_hq()
    uh = u if isinstance(u, HQ) else u.to_hq()
    return (uh if uh is not None else u, vh if vh is not None else v)


_LEECH_SOLVE = None


def _leech_coords(amb6):
    global _LEECH_SOLVE
    if _LEECH_SOLVE is None:
        lat = leech()
        # W[t][s] = (bb_s)_t; coordinates solve W q = amb
        W = qmat([[lat.basis_ambient[s][t] for s in range(6)]
                  for t in range(6)])
        _LEECH_SOLVE = qmat_inverse(W)
    q = qmat_vec(_LEECH_SOLVE, [a.to_qq() if isinstance(a, HQ) else a
                                for a in amb6])
    out = []
    for e in q:
        h = e.to_hq()
        out.append(h if h is not None else e)
    return tuple(out)


# --- the standard lattices ----------------------------------------------

_CACHE = {}

BB_ROWS = (
    (HQ.of(2, 2), ZERO, ZERO, ZERO, ZERO, ZERO),
    (HQ.of(2), HQ.of(2), ZERO, ZERO, ZERO, ZERO),
    (ZERO, HQ.of(2), HQ.of(2), ZERO, ZERO, ZERO),
    (HQ.of(0, 1, 1, 1), ONE, ONE, ONE, ONE, ONE),
    (ZERO, ZERO, ONE + K, ONE + J, ONE + J, ONE + K),
    (ZERO, ONE + J, ONE + J, ONE + K, ZERO, ONE + K),
)

E8_BASIS = ((ONE, -ONE), (-P, ZERO))


def e8_contains(amb):
    """Ambient H^2 membership: both Hurwitz and congruent mod p."""
    if any(not isinstance(a, HQ) for a in amb):
        return False
    return cong_p(amb[0], amb[1])


def leech_contains(amb):
    """Ambient H^6 membership by the three congruence families."""
    if any(not isinstance(a, HQ) for a in amb):
        return False
    vinf, v0, v1, v2, v3, v4 = amb
    if not (cong_p(v2, v3) and cong_p(v3, v4)):
        return False
    ob = OMEGA.conj()
    if not cong_2((v1 + v4) * ob + (v2 + v3) * OMEGA, ZERO):
        return False
    if not cong_2((v0 + v1) * OMEGA + (v2 + v4) * ob, ZERO):
        return False
    # -vinf (i+j+k) + sum of the rest, mod 2+2i
    s = v0 + v1 + v2 + v3 + v4 - vinf * HQ.of(0, 1, 1, 1)
    return cong_2p2i(s, ZERO)


def _l3e8h_contains(amb):
    if any(not isinstance(a, HQ) for a in amb):
        return False
    return all(cong_p(amb[2 * f], amb[2 * f + 1]) for f in range(3))


def _lleechh_contains(amb):
    return leech_contains(amb[:6]) and all(isinstance(a, HQ) for a in amb[6:])


def standard(n):
    key = f"standard{n}"
    if key not in _CACHE:
        gram = [[-ONE if s == t else ZERO for t in range(n)] for s in range(n)]
        ident = [[ONE if s == t else ZERO for t in range(n)] for s in range(n)]
        _CACHE[key] = HLattice(key, gram, basis_ambient=ident,
                               ambient_blocks=(("neg", n, 1),),
                               contains_ambient=lambda amb: all(
                                   isinstance(a, HQ) for a in amb))
    return _CACHE[key]


def cell():
    if "cell" not in _CACHE:
        gram = [[ZERO, PBAR], [P, ZERO]]
        ident = [[ONE, ZERO], [ZERO, ONE]]
        _CACHE["cell"] = HLattice("cell", gram, basis_ambient=ident,
                                  ambient_blocks=(("cell",),),
                                  contains_ambient=lambda amb: all(
                                      isinstance(a, HQ) for a in amb))
    return _CACHE["cell"]


def e8():
    if "e8" not in _CACHE:
        blocks = (("neg", 2, 1),)
        gram = [[None, None], [None, None]]
        for s in range(2):
            for t in range(2):
                v = ambient_inner(blocks, E8_BASIS[s], E8_BASIS[t]).to_hq()
                assert v is not None
                gram[s][t] = v
        _CACHE["e8"] = HLattice("e8", gram, basis_ambient=E8_BASIS,
                                ambient_blocks=blocks,
                                contains_ambient=e8_contains)
    return _CACHE["e8"]


def leech():
    if "leech" not in _CACHE:
        blocks = (("neg", 6, 2),)
        gram = []
        for s in range(6):
            row = []
            for t in range(6):
                v = ambient_inner(blocks, BB_ROWS[s], BB_ROWS[t]).to_hq()
                assert v is not None
                row.append(v)
            gram.append(row)
        _CACHE["leech"] = HLattice("leech", gram, basis_ambient=BB_ROWS,
                                   ambient_blocks=blocks,
                                   contains_ambient=leech_contains)
    return _CACHE["leech"]


def _block_diag(name, parts, basis_rows, blocks, contains):
    rank = sum(p.rank for p in parts)
    gram = [[ZERO] * rank for _ in range(rank)]
    pos = 0
    for p in parts:
        for s in range(p.rank):
            for t in range(p.rank):
                gram[pos + s][pos + t] = p.gram[s][t]
        pos += p.rank
    return HLattice(name, gram, basis_ambient=basis_rows,
                    ambient_blocks=blocks, contains_ambient=contains)


def l_3e8h():
    if "l_3e8h" not in _CACHE:
        rows = []
        for f in range(3):
            for b in E8_BASIS:
                row = [ZERO] * 8
                row[2 * f] = b[0]
                row[2 * f + 1] = b[1]
                rows.append(tuple(row))
        rows.append((ZERO,) * 6 + (ONE, ZERO))
        rows.append((ZERO,) * 6 + (ZERO, ONE))
        _CACHE["l_3e8h"] = _block_diag(
            "l_3e8h", [e8(), e8(), e8(), cell()], tuple(rows),
            (("neg", 6, 1), ("cell",)), _l3e8h_contains)
    return _CACHE["l_3e8h"]


def l_leech_h():
    if "l_leech_h" not in _CACHE:
        rows = []
        for s in range(6):
            rows.append(tuple(BB_ROWS[s]) + (ZERO, ZERO))
        rows.append((ZERO,) * 6 + (ONE, ZERO))
        rows.append((ZERO,) * 6 + (ZERO, ONE))
        _CACHE["l_leech_h"] = _block_diag(
            "l_leech_h", [leech(), cell()], tuple(rows),
            (("neg", 6, 2), ("cell",)), _lleechh_contains)
    return _CACHE["l_leech_h"]


def make_lattice(name):
    table = {"cell": cell, "e8": e8, "leech": leech,
             "l_3e8h": l_3e8h, "l_leech_h": l_leech_h}
    if name in table:
        return table[name]()
    if name.startswith("standard"):
        return standard(int(name[len("standard"):] or "1"))
    raise ValueError(f"unknown lattice {name!r}")


# --- duality and real forms ---------------------------------------------

def is_p_modular(lat):
    """True iff L' p = L, tested on the Gram matrix.

    The dual is G^-1 H^n in basis coordinates, so the two inclusions
    reduce to integrality of G^-1 * p (entries right-multiplied) and of
    p^-1 * G (entries left-multiplied); two-sidedness of pH collapses the
    quantifier over H.
    """
    ginv = qmat_inverse(lat.gram)
    pinv = P.inverse()
    for s in range(lat.rank):
        for t in range(lat.rank):
            if (ginv[s][t] * P.to_qq()).to_hq() is None:
                return False
            if (pinv * lat.gram[s][t].to_qq()).to_hq() is None:
                return False
    return True


ZBASIS_MULTIPLIERS = (ONE, I, J, OMEGA)


def zbasis_vectors(lat):
    """The 4n lattice vectors e_s * m, m in {1, i, j, omega}."""
    out = []
    for s in range(lat.rank):
        for m in ZBASIS_MULTIPLIERS:
            out.append(lat.basis_vec(s) * m)
    return out


def hcoeffs(x):
    """Integer coefficients of x over the Z-basis (1, i, j, omega) of H."""
    a, b, c, d = x.doubled()
    # x = n0 + n1 i + n2 j + n3 omega with omega = (-1+i+j+k)/2
    n3 = d
    n0 = (a + d) // 2
    n1 = (b - d) // 2
    n2 = (c - d) // 2
    assert (HQ.of(n0) + I * n1 + J * n2 + ZBASIS_MULTIPLIERS[3] * n3) == x
    return (n0, n1, n2, n3)


def vec_zcoords(v):
    """Z-coordinates of a lattice vector over zbasis_vectors; inverse of
    zcoords_to_vec."""
    out = []
    for c in v.coords:
        out.extend(hcoeffs(c))
    return tuple(out)


def real_form_gram(lat):
    """Integer Gram of the underlying Z-module of rank 4n."""
    n = lat.rank
    mult = ZBASIS_MULTIPLIERS
    out = []
    for s in range(n):
        for a in range(4):
            row = []
            ma = mult[a].conj().to_qq()
            for t in range(n):
                g = ma * lat.gram[s][t].to_qq()
                for b in range(4):
                    v = (g * mult[b].to_qq()).f0
                    assert v.denominator == 1, "real form not integral"
                    row.append(int(v))
            out.append(row)
    return out


def real_form_signature(lat):
    key = "signature"
    if key not in lat._cache:
        lat._cache[key] = sym_signature(real_form_gram(lat))
    return lat._cache[key]


def real_form_det(lat):
    key = "realdet"
    if key not in lat._cache:
        d = fmat_det(real_form_gram(lat))
        assert d.denominator == 1
        lat._cache[key] = int(d)
    return lat._cache[key]


# --- shells --------------------------------------------------------------

def shell_zcoords(lat, norm):
    """Canonical-sign Z-coordinate tuples of the vectors of given norm.

    Only for negative definite lattices; norm is the (negative) quaternion
    norm.  Cached per lattice and norm.
    """
    key = ("shell", norm)
    if key in lat._cache:
        return lat._cache[key]
    if norm >= 0:
        raise ValueError("norm must be negative for a definite lattice")
    B = real_form_gram(lat)
    pos, neg = real_form_signature(lat)
    if pos != 0:
        raise ValueError(f"{lat.name} is not negative definite")
    A = [[-e for e in row] for row in B]
    found = list(fincke_pohst(A, -norm))
    lat._cache[key] = found
    return found


def zcoords_to_vec(lat, z):
    mult = ZBASIS_MULTIPLIERS
    coords = []
    for s in range(lat.rank):
        acc = ZERO
        for b in range(4):
            zc = z[4 * s + b]
            if zc:
                acc = acc + mult[b] * zc
        coords.append(acc)
    return lat.vec(coords)


def shell_enumerate(lat, norm):
    """Yield every lattice vector of the given norm (both signs)."""
    for z in shell_zcoords(lat, norm):
        v = zcoords_to_vec(lat, z)
        yield v
        yield -v


def shell_count(lat, norm):
    return 2 * len(shell_zcoords(lat, norm))


def naive_shell_count(lat, norm, doubled_bound):
    """Brute-force shell count over bounded doubled coordinates.

    Exponential in the rank; meant as an independent oracle for rank-2
    lattices.  The bound must dominate the coordinates of all shell
    vectors, which the caller justifies.
    """
    assert lat.rank == 2
    rng = range(-doubled_bound, doubled_bound + 1)
    count = 0
    target = HQ.of(norm)
    hqs = []
    for a in rng:
        for b in rng:
            for c in rng:
                for d in rng:
                    if (a ^ b) & 1 or (a ^ c) & 1 or (a ^ d) & 1:
                        continue
                    hqs.append(HQ(a, b, c, d))
    for q1 in hqs:
        for q2 in hqs:
            if lat.inner((q1, q2), (q1, q2)) == target:
                count += 1
    return count
