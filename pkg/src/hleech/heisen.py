"""Heisenberg translations of L in Leech-plus-cell coordinates.

A translation T_{lambda,z} fixes the definite factor setwise, shears the
cell, and is an automorphism of L exactly when its matrix has Hurwitz
entries and preserves the form; that operational test defines which
parameter pairs (lambda, z) are admissible.  The module also builds the
special element R (a product of two cell reflections), checks the exact
conjugation and commutator identities against it, and emits the list of
81 generator roots used by the height reduction.
"""

from __future__ import annotations

from .hquat import EPS, EPS_BAR, HQ, I, J, ONE, P, PBAR, ZERO
from ._linalg import (
    int_row_hnf, qmat_conj_t, qmat_eq, qmat_identity, qmat_mul,
)
from .reflect import AutMatrix, reflection_matrix
from .hlattice import l_leech_h, leech, zbasis_vectors


def _pbar_inv(q, den=2):
    """pbar^-1 q / (den/2), i.e. p q / den; None when not Hurwitz."""
    return (P * q).scale_div(den)


def _translation_rows(lam, z):
    """Matrix rows for a parameter pair, or None when not integral."""
    cell = _pbar_inv(z * 2 - lam.norm(), 4)
    if cell is None:
        return None
    rows = [[ONE if s == t else ZERO for t in range(8)] for s in range(8)]
    for s in range(6):
        rows[s][6] = lam.coords[s]
    rows[7][6] = cell
    lam_lat = lam.lattice
    for t in range(6):
        e = _pbar_inv(lam.inner(lam_lat.basis_vec(t)))
        if e is None:
            return None
        rows[7][t] = -e
    return tuple(tuple(r) for r in rows)


class Translation:
    """The automorphism [[I, lambda, 0], [0, 1, 0],
    [-pbar^-1 lambda*, pbar^-1 (z - lambda^2/2), 1]] of L.

    lambda lies in the definite factor, z is an imaginary quaternion;
    lambda* is the row of pairings <lambda, e_t>.  Construction fails
    for inadmissible parameters: the rows and the rows of the inverse
    parameters must be Hurwitz, the form must be preserved, and the two
    matrices must multiply to the identity.
    """

    __slots__ = ("lam", "z", "matrix")

    def __init__(self, lam, z):
        if not isinstance(z, HQ):
            z = HQ.of(z)
        lat = l_leech_h()
        rows = _translation_rows(lam, z)
        if rows is None:
            raise ValueError("not integral / not isometric")
        gram = lat.gram
        if not qmat_eq(qmat_mul(qmat_mul(qmat_conj_t(rows), gram), rows),
                       gram):
            raise ValueError("not integral / not isometric")
        inv_rows = _translation_rows(-lam, -z)
        if inv_rows is None or not qmat_eq(qmat_mul(inv_rows, rows),
                                           qmat_identity(8)):
            raise ValueError("not integral / not isometric")
        self.lam = lam
        self.z = z
        self.matrix = AutMatrix(lat, rows)

    def inverse(self):
        return Translation(-self.lam, -self.z)

    def __eq__(self, other):
        if not isinstance(other, Translation):
            return NotImplemented
        return self.lam == other.lam and self.z == other.z

    def __hash__(self):
        return hash((self.lam, self.z))

    def __repr__(self):
        return f"Translation({self.lam!r}, {self.z!r})"


def translation(lam, z):
    return Translation(lam, z)


def compose(t1, t2):
    """The translation t1 t2 by the composition law (t2 applied first)."""
    return Translation(t1.lam + t2.lam,
                       t1.z + t2.z + t2.lam.inner(t1.lam).im())


def compose_law_check(t1, t2):
    """Matrix product against the composition law, exactly."""
    return t1.matrix * t2.matrix == compose(t1, t2).matrix


def translation_commutator_check(t1, t2):
    """t1^-1 t2^-1 t1 t2 = T_{0, 2 Im <lambda2, lambda1>}, exactly."""
    lhs = t1.inverse().matrix * t2.inverse().matrix * t1.matrix * t2.matrix
    rhs = Translation(t1.lam.lattice.zero(), t2.lam.inner(t1.lam).im() * 2)
    return lhs == rhs.matrix


def cell_roots():
    """The roots r1 = (0^6; 1, i), r2 = (0^6; 1, -1), r3 = (0^6; 1, -eps)."""
    lat = l_leech_h()
    zero6 = (ZERO,) * 6
    return (lat.vec(zero6 + (ONE, I)),
            lat.vec(zero6 + (ONE, -ONE)),
            lat.vec(zero6 + (ONE, -EPS)))


_R = None
_R_INV = None


def r_element():
    """R: the i-reflection in r3 composed after the j-reflection in r2."""
    global _R
    if _R is None:
        _, r2, r3 = cell_roots()
        _R = reflection_matrix(r3, I) * reflection_matrix(r2, J)
    return _R


def r_inverse():
    global _R_INV
    if _R_INV is None:
        _R_INV = r_element().inverse()
    return _R_INV


def r_block_data():
    """The lower-triangular cell block of R: entries eps, u, delta."""
    m = r_element().m
    for s in range(6):
        for t in range(8):
            want = ONE if s == t else ZERO
            assert m[s][t] == want and m[t][s] == want
    assert m[6][7] == ZERO
    return {"eps": m[6][6], "u": m[7][6], "delta": m[7][7]}


def r_conjugation_check(t):
    """R T_{lambda,z} R^-1 = T_{lambda eps_bar, eps z eps_bar}, exactly."""
    lhs = r_element() * t.matrix * r_inverse()
    rhs = Translation(t.lam * EPS_BAR, EPS * t.z * EPS_BAR)
    return lhs == rhs.matrix


def central_conjugate(z):
    """eps z eps_bar - z: the central parameter of T^-1 R T R^-1 at lambda=0."""
    return EPS * z * EPS_BAR - z


def commutator_identity_check(lam, z):
    """T^-1 R T R^-1 = T_{lambda(eps_bar-1), eps z eps_bar - z + Im<lambda eps_bar, -lambda>}."""
    t = Translation(lam, z)
    lhs = t.inverse().matrix * r_element() * t.matrix * r_inverse()
    newlam = lam * (EPS_BAR - ONE)
    newz = central_conjugate(t.z) + (lam * EPS_BAR).inner(-lam).im()
    rhs = Translation(newlam, newz)
    return lhs == rhs.matrix


def central_admissible(z):
    """Whether T_{0,z} is admissible: z imaginary with pbar^-1 z Hurwitz."""
    if not isinstance(z, HQ):
        z = HQ.of(z)
    return z.is_imag() and _pbar_inv(z) is not None


def minimal_admissible_z(lam):
    """Smallest admissible imaginary z for lambda, by norm then lexicographic."""
    for n in range(0, 9):
        for b in range(-2, 3):
            for c in range(-2, 3):
                for d in range(-2, 3):
                    if b * b + c * c + d * d != n:
                        continue
                    z = HQ(0, 2 * b, 2 * c, 2 * d)
                    if _pbar_inv(z * 2 - lam.norm(), 4) is not None:
                        return z
    raise AssertionError("no admissible z in the search ball")


def orbit_form_check(v):
    """Whether v = (lambda; 1, pbar^-1 (beta - 1 - lambda^2/2)), beta imaginary."""
    coords = v.coords
    if coords[6] != ONE:
        return False
    lam = leech().vec(coords[:6])
    half = lam.norm().scale_div(2)
    beta = PBAR * coords[7] + ONE + half
    return beta.is_imag()


def generators81():
    """The 81 roots T_{lambda_s,z_s}(r_t), T_{0,i+j}(r_t), T_{0,i+k}(r_t), r_t."""
    lat = l_leech_h()
    r1, r2, r3 = cell_roots()
    rts = (r1, r2, r3)
    out = []
    for lam in zbasis_vectors(leech()):
        t = Translation(lam, minimal_admissible_z(lam))
        for r in rts:
            out.append(t.matrix.apply(r))
    for z in (HQ(0, 2, 2, 0), HQ(0, 2, 0, 2)):
        t = Translation(leech().zero(), z)
        for r in rts:
            out.append(t.matrix.apply(r))
    out.extend(rts)
    assert len(out) == 81
    assert all(r.norm() == -2 for r in out)
    return out


def central_generation_check():
    """The named central translations arise and span the admissible centrals.

    Finds basis pairs with the three stated pairings, checks the
    commutator identities that produce central translations, and checks
    that the resulting central parameters Z-span the full admissible set
    {ai+bj+ck : a+b+c even}.
    """
    lam_list = zbasis_vectors(leech())
    wanted = {P: None, HQ(2, 0, 2, 0): None, HQ(2, 0, 0, 2): None}
    for lp in lam_list:
        for lm in lam_list:
            q = lp.inner(lm)
            if q in wanted and wanted[q] is None:
                wanted[q] = (lp, lm)
        if all(v is not None for v in wanted.values()):
            break
    if not all(v is not None for v in wanted.values()):
        return False

    centrals = []
    for q, (lp, lm) in wanted.items():
        t1 = Translation(lm, minimal_admissible_z(lm))
        t2 = Translation(lp, minimal_admissible_z(lp))
        if not translation_commutator_check(t1, t2):
            return False
        centrals.append(q.im() * 2)

    r = r_element()
    zero = leech().zero()
    for z in (HQ(0, 2, 2, 0), HQ(0, 2, 0, 2)):
        t = Translation(zero, z)
        value = central_conjugate(z)
        lhs = t.matrix.inverse() * r * t.matrix * r.inverse()
        if lhs != Translation(zero, value).matrix:
            return False
        centrals.append(value)

    rows = []
    for z in centrals:
        _, b, c, d = z.doubled()
        assert b % 2 == 0 and c % 2 == 0 and d % 2 == 0
        rows.append([b // 2, c // 2, d // 2])
    span = int_row_hnf(rows)
    d3 = int_row_hnf([[2, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 0], [1, 0, 1]])
    return _same_zspan(span, d3)


def _same_zspan(h1, h2):
    return all(_hnf_member(h1, v) for v in h2) and all(_hnf_member(h2, v) for v in h1)


def _hnf_member(hnf, vec):
    v = list(vec)
    n = len(v)
    for brow in hnf:
        pc = next(c for c in range(n) if brow[c])
        if v[pc]:
            q, r = divmod(v[pc], brow[pc])
            if r:
                return False
            v = [a - q * b for a, b in zip(v, brow)]
    return not any(v)
