"""Unit reflections of Hurwitz lattices and the matrix calculus around them.

Maps are right-module linear, so a map phi with phi(e_t) = sum_s e_s m_st
acts on coordinate columns as x -> m x, with matrix entries multiplying
from the left and scalar coordinates staying on the right.  A product
written "phi1 phi2" is the matrix product mat(phi1) mat(phi2), which
applies phi2 first.  (The composition order is not forced by anything
upstream; this one is fixed because it makes the nine-reflection spider
word come out with order 40, and it is used consistently everywhere.)
"""

from .hquat import HQ, QQ, ONE, ZERO
from ._linalg import (
    qmat_conj_t,
    qmat_eq,
    qmat_identity,
    qmat_inverse,
    qmat_mul,
    qmat_to_hq,
    qmat_vec,
)
from .hlattice import LVec


class AutMatrix:
    """A rank x rank matrix over the rational quaternions tied to a lattice.

    Instances are cheap wrappers; nothing about the entries is verified at
    construction.  Use is_automorphism for the real test (Gram preserved,
    matrix and inverse integral).
    """

    __slots__ = ("lattice", "m")

    def __init__(self, lattice, m):
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "m", tuple(tuple(row) for row in m))
        assert len(self.m) == lattice.rank
        assert all(len(row) == lattice.rank for row in self.m)

    def __setattr__(self, name, value):
        raise AttributeError("AutMatrix is immutable")

    @staticmethod
    def identity(lattice):
        return AutMatrix(lattice, qmat_identity(lattice.rank))

    def __mul__(self, other):
        """Composition: (self * other)(v) = self(other(v))."""
        assert self.lattice is other.lattice
        return AutMatrix(self.lattice, qmat_mul(self.m, other.m))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        acc = AutMatrix.identity(self.lattice)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base if n > 1 else base
            n >>= 1
        return acc

    def inverse(self):
        return AutMatrix(self.lattice, qmat_inverse(self.m))

    def apply(self, v):
        """Image of a lattice vector; raises if the image is not integral."""
        assert v.lattice is self.lattice
        out = []
        for e in qmat_vec(self.m, v.coords):
            h = e if isinstance(e, HQ) else e.to_hq()
            if h is None:
                raise ValueError("image not in the lattice")
            out.append(h)
        return LVec(self.lattice, out)

    def apply_ext(self, coords):
        """Image of a coordinate tuple over any scalar extension."""
        out = []
        for row in self.m:
            acc = None
            for e, c in zip(row, coords):
                if isinstance(e, HQ) and e.is_zero():
                    continue
                term = e * c
                acc = term if acc is None else acc + term
            out.append(coords[0] - coords[0] if acc is None else acc)
        return tuple(out)

    def is_identity(self):
        return qmat_eq(self.m, qmat_identity(self.lattice.rank))

    def to_hq_entries(self):
        return qmat_to_hq(self.m)

    def __eq__(self, other):
        if not isinstance(other, AutMatrix):
            return NotImplemented
        return self.lattice is other.lattice and qmat_eq(self.m, other.m)

    def __hash__(self):
        return hash((id(self.lattice),
                     tuple(tuple(_key(e) for e in row) for row in self.m)))

    def __repr__(self):
        return f"AutMatrix({self.lattice.name}, {self.lattice.rank}x{self.lattice.rank})"


def _key(e):
    if isinstance(e, HQ):
        return e.doubled()
    return e.parts()


class Reflection:
    """The reflection in a norm -2 root that multiplies the root by mu."""

    __slots__ = ("root", "mu", "matrix")

    def __init__(self, root, mu):
        object.__setattr__(self, "root", root)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "matrix", reflection_matrix(root, mu))

    def __setattr__(self, name, value):
        raise AttributeError("Reflection is immutable")

    def __repr__(self):
        return f"Reflection({self.root!r}, {self.mu})"


def reflection_matrix(r, mu):
    """Matrix of v -> v - r (1-mu) <r,v> / |r|^2 in the lattice basis.

    Requires |r|^2 = -2 and an integral result; with that norm the map is
    v + r (1-mu) <r,v> / 2, so entry (s,t) is delta_st plus half of
    r_s (1-mu) (r* G)_t.
    """
    if not isinstance(mu, HQ) or not mu.is_unit() or mu == ONE:
        raise ValueError("mu must be a unit other than 1")
    lat = r.lattice
    if r.norm() != HQ.of(-2):
        raise ValueError("not a root")
    one_minus_mu = ONE - mu
    # row of pairings (r* G)_t = <r, e_t>
    rg = [lat.inner(r.coords, lat.basis_vec(t).coords) for t in range(lat.rank)]
    rows = []
    for s in range(lat.rank):
        rs = r.coords[s]
        row = []
        for t in range(lat.rank):
            upd = (rs * one_minus_mu * rg[t]).scale_div(2)
            if upd is None:
                raise ValueError("reflection not integral")
            row.append(upd + ONE if s == t else upd)
        rows.append(row)
    return AutMatrix(lat, rows)


def is_automorphism(m):
    """m* G m = G exactly, with m and its inverse HQ-entried."""
    lat = m.lattice
    if qmat_to_hq(m.m) is None:
        return False
    if not qmat_eq(qmat_mul(qmat_mul(qmat_conj_t(m.m), lat.gram), m.m),
                   lat.gram):
        return False
    try:
        inv = qmat_inverse(m.m)
    except ValueError:
        return False
    return qmat_to_hq(inv) is not None


def braid_type(phi1, phi2):
    """Classify a pair of reflections: "commute", "braid" or "other"."""
    m1 = phi1.matrix if isinstance(phi1, Reflection) else phi1
    m2 = phi2.matrix if isinstance(phi2, Reflection) else phi2
    a = m1 * m2
    b = m2 * m1
    if a == b:
        return "commute"
    if a * m1 == b * m2:
        return "braid"
    return "other"


def element_order(m, cutoff=1000):
    """Least n <= cutoff with m^n = 1, else the string "exceeds cutoff"."""
    acc = m
    for n in range(1, cutoff + 1):
        if acc.is_identity():
            return n
        acc = acc * m
    return "exceeds cutoff"
