"""Exact scalar arithmetic for the rest of the package.

Four layers, no floats anywhere:

    HQ      Hurwitz quaternions (a+bi+cj+dk)/2 with a,b,c,d integers of
            equal parity, stored as the doubled coordinate tuple (a,b,c,d).
    QQ      quaternions with Fraction coordinates, used for matrix math
            and exactness checks.
    R2      the real quadratic field Q(sqrt2), totally ordered.
    R2Quat  quaternions with R2 coordinates, used for Weyl-vector work.

Quaternion multiplication follows ij = k, jk = i, ki = j.
"""
from __future__ import annotations

from fractions import Fraction
import math
import re


def _qmul(a, b, c, d, e, f, g, h):
    # components of (a+bi+cj+dk)(e+fi+gj+hk)
    return (
        a * e - b * f - c * g - d * h,
        a * f + b * e + c * h - d * g,
        a * g - b * h + c * e + d * f,
        a * h + b * g - c * f + d * e,
    )


class HQ:
    """A Hurwitz quaternion, kept as doubled integer coordinates."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        if (a ^ b) & 1 or (a ^ c) & 1 or (a ^ d) & 1:
            raise ValueError(f"mixed parity, not Hurwitz: ({a},{b},{c},{d})/2")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("HQ is immutable")

    @staticmethod
    def of(a, b=0, c=0, d=0):
        """Build from whole (not doubled) integer coefficients."""
        return HQ(2 * a, 2 * b, 2 * c, 2 * d)

    def doubled(self):
        return (self.a, self.b, self.c, self.d)

    def __add__(self, other):
        if isinstance(other, HQ):
            return HQ(self.a + other.a, self.b + other.b,
                      self.c + other.c, self.d + other.d)
        if isinstance(other, int):
            return HQ(self.a + 2 * other, self.b, self.c, self.d)
        if isinstance(other, (QQ, Fraction)):
            return self.to_qq() + other
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (HQ, int, QQ, Fraction)):
            return self + (-other if not isinstance(other, int) else -other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return HQ(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        if isinstance(other, HQ):
            A, B, C, D = _qmul(self.a, self.b, self.c, self.d,
                               other.a, other.b, other.c, other.d)
            # the ring is closed, so halving is exact
            assert not ((A | B | C | D) & 1)
            return HQ(A >> 1, B >> 1, C >> 1, D >> 1)
        if isinstance(other, int):
            return HQ(self.a * other, self.b * other,
                      self.c * other, self.d * other)
        if isinstance(other, (QQ, Fraction)):
            return self.to_qq() * other
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        if isinstance(other, Fraction):
            return self.to_qq() * other
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("HQ powers take a nonnegative int")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self):
        return HQ(self.a, -self.b, -self.c, -self.d)

    def norm(self):
        """|q|^2, always a nonnegative integer."""
        s = self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
        assert s % 4 == 0
        return s // 4

    def re2(self):
        """Doubled real part (an integer)."""
        return self.a

    def trace(self):
        """q + conj(q) as an integer."""
        return self.a

    def im(self):
        """Imaginary part, exact; HQ when integral else QQ."""
        if self.a % 2 == 0:
            return HQ(0, self.b, self.c, self.d)
        q = self.to_qq()
        return QQ(Fraction(0), q.f1, q.f2, q.f3)

    def is_zero(self):
        return not (self.a or self.b or self.c or self.d)

    def is_unit(self):
        return self.norm() == 1

    def is_real(self):
        return not (self.b or self.c or self.d)

    def is_imag(self):
        return self.a == 0

    def inv_unit(self):
        if not self.is_unit():
            raise ValueError("inv_unit needs a unit")
        return self.conj()

    def inverse(self):
        """Exact inverse as QQ."""
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.conj().to_qq() * Fraction(1, n)

    def half(self):
        """q/2 if still Hurwitz, else None."""
        return self.scale_div(2)

    def scale_div(self, n):
        """q/n for a positive integer n, if still Hurwitz, else None."""
        if any(v % n for v in (self.a, self.b, self.c, self.d)):
            return None
        a, b, c, d = self.a // n, self.b // n, self.c // n, self.d // n
        if (a ^ b) & 1 or (a ^ c) & 1 or (a ^ d) & 1:
            return None
        return HQ(a, b, c, d)

    def rdiv(self, y):
        """x * y^-1 if Hurwitz, else None."""
        n = y.norm()
        if n == 0:
            raise ZeroDivisionError
        return (self * y.conj()).scale_div(n)

    def ldiv(self, y):
        """y^-1 * x if Hurwitz, else None."""
        n = y.norm()
        if n == 0:
            raise ZeroDivisionError
        return (y.conj() * self).scale_div(n)

    def to_qq(self):
        return QQ(Fraction(self.a, 2), Fraction(self.b, 2),
                  Fraction(self.c, 2), Fraction(self.d, 2))

    def to_r2quat(self):
        return R2Quat(R2(Fraction(self.a, 2)), R2(Fraction(self.b, 2)),
                      R2(Fraction(self.c, 2)), R2(Fraction(self.d, 2)))

    def __eq__(self, other):
        if isinstance(other, HQ):
            return self.doubled() == other.doubled()
        if isinstance(other, int):
            return self == HQ.of(other)
        if isinstance(other, QQ):
            return self.to_qq() == other
        return NotImplemented

    def __hash__(self):
        return hash(("HQ",) + self.doubled())

    def __str__(self):
        if self.is_zero():
            return "0"
        if self.a & 1:
            return f"({self.a}{self.b:+d}i{self.c:+d}j{self.d:+d}k)/2"
        terms = []
        for v, sym in zip((self.a // 2, self.b // 2, self.c // 2, self.d // 2),
                          ("", "i", "j", "k")):
            if v == 0:
                continue
            if sym and abs(v) == 1:
                t = ("-" if v < 0 else "+") + sym
            else:
                t = f"{v:+d}{sym}"
            terms.append(t)
        out = "".join(terms)
        return out[1:] if out.startswith("+") else out

    def __repr__(self):
        return f"HQ[{self}]"


def hq_encode(x):
    """Official text form: "(a,b,c,d)/2" with doubled coordinates."""
    return f"({x.a},{x.b},{x.c},{x.d})/2"


_HQ_RE = re.compile(r"^\(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)/2$")


def hq_parse(text):
    m = _HQ_RE.match(text.strip())
    if not m:
        raise ValueError(f"bad quaternion literal: {text!r}")
    return HQ(*(int(g) for g in m.groups()))


class QQ:
    """A quaternion with Fraction coordinates."""

    __slots__ = ("f0", "f1", "f2", "f3")

    def __init__(self, f0, f1=0, f2=0, f3=0):
        object.__setattr__(self, "f0", Fraction(f0))
        object.__setattr__(self, "f1", Fraction(f1))
        object.__setattr__(self, "f2", Fraction(f2))
        object.__setattr__(self, "f3", Fraction(f3))

    def __setattr__(self, name, value):
        raise AttributeError("QQ is immutable")

    def parts(self):
        return (self.f0, self.f1, self.f2, self.f3)

    @staticmethod
    def _coerce(other):
        if isinstance(other, QQ):
            return other
        if isinstance(other, HQ):
            return other.to_qq()
        if isinstance(other, (int, Fraction)):
            return QQ(other)
        return None

    def __add__(self, other):
        o = QQ._coerce(other)
        if o is None:
            return NotImplemented
        return QQ(self.f0 + o.f0, self.f1 + o.f1, self.f2 + o.f2, self.f3 + o.f3)

    __radd__ = __add__

    def __sub__(self, other):
        o = QQ._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return QQ(-self.f0, -self.f1, -self.f2, -self.f3)

    def __mul__(self, other):
        o = QQ._coerce(other)
        if o is None:
            return NotImplemented
        return QQ(*_qmul(*self.parts(), *o.parts()))

    def __rmul__(self, other):
        o = QQ._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def conj(self):
        return QQ(self.f0, -self.f1, -self.f2, -self.f3)

    def norm(self):
        return sum(f * f for f in self.parts())

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.conj() * Fraction(1, n)

    def is_zero(self):
        return all(f == 0 for f in self.parts())

    def to_hq(self):
        """Exact conversion to HQ, or None if not Hurwitz."""
        doubled = []
        for f in self.parts():
            g = 2 * f
            if g.denominator != 1:
                return None
            doubled.append(g.numerator)
        if (doubled[0] ^ doubled[1]) & 1 or (doubled[0] ^ doubled[2]) & 1 \
                or (doubled[0] ^ doubled[3]) & 1:
            return None
        return HQ(*doubled)

    def to_r2quat(self):
        return R2Quat(R2(self.f0), R2(self.f1), R2(self.f2), R2(self.f3))

    def __eq__(self, other):
        o = QQ._coerce(other)
        if o is None:
            return NotImplemented
        return self.parts() == o.parts()

    def __hash__(self):
        return hash(("QQ",) + self.parts())

    def __repr__(self):
        return f"QQ{self.parts()}"


class R2:
    """An element a + b*sqrt(2) of Q(sqrt2), with the real-embedding order."""

    __slots__ = ("fa", "fb")

    def __init__(self, a, b=0):
        object.__setattr__(self, "fa", Fraction(a))
        object.__setattr__(self, "fb", Fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("R2 is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, R2):
            return other
        if isinstance(other, (int, Fraction)):
            return R2(other)
        return None

    def __add__(self, other):
        o = R2._coerce(other)
        if o is None:
            return NotImplemented
        return R2(self.fa + o.fa, self.fb + o.fb)

    __radd__ = __add__

    def __sub__(self, other):
        o = R2._coerce(other)
        if o is None:
            return NotImplemented
        return R2(self.fa - o.fa, self.fb - o.fb)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return R2(-self.fa, -self.fb)

    def __mul__(self, other):
        o = R2._coerce(other)
        if o is None:
            return NotImplemented
        return R2(self.fa * o.fa + 2 * self.fb * o.fb,
                  self.fa * o.fb + self.fb * o.fa)

    __rmul__ = __mul__

    def galois(self):
        """The conjugate a - b*sqrt(2)."""
        return R2(self.fa, -self.fb)

    def field_norm(self):
        return self.fa * self.fa - 2 * self.fb * self.fb

    def inverse(self):
        n = self.field_norm()
        if n == 0:
            raise ZeroDivisionError("inverse of 0")
        return R2(self.fa / n, -self.fb / n)

    def __truediv__(self, other):
        o = R2._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def sign(self):
        a, b = self.fa, self.fb
        if a == 0 and b == 0:
            return 0
        if a >= 0 and b >= 0:
            return 1
        if a <= 0 and b <= 0:
            return -1
        # opposite strict signs; a^2 = 2 b^2 cannot happen for rationals
        if a > 0:
            return 1 if a * a > 2 * b * b else -1
        return 1 if 2 * b * b > a * a else -1

    def is_rational(self):
        return self.fb == 0

    def __eq__(self, other):
        o = R2._coerce(other)
        if o is None:
            return NotImplemented
        return self.fa == o.fa and self.fb == o.fb

    def __lt__(self, other):
        o = R2._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = R2._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other):
        return not (self <= other)

    def __ge__(self, other):
        return not (self < other)

    def __hash__(self):
        return hash(("R2", self.fa, self.fb))

    def __float__(self):
        return float(self.fa) + float(self.fb) * math.sqrt(2.0)

    def __repr__(self):
        return f"R2[{r2_encode(self)}]"


SQRT2 = R2(0, 1)


def r2_encode(x):
    """Official text form: "a+b*s2" with plain rationals."""
    b = x.fb
    sign = "+" if b >= 0 else "-"
    return f"{x.fa}{sign}{abs(b)}*s2"


_R2_RE = re.compile(
    r"^\s*(-?\d+(?:/\d+)?)\s*([+-])\s*(\d+(?:/\d+)?)\s*\*\s*s2\s*$")


def r2_parse(text):
    m = _R2_RE.match(text)
    if not m:
        raise ValueError(f"bad R2 literal: {text!r}")
    a = Fraction(m.group(1))
    b = Fraction(m.group(3))
    if m.group(2) == "-":
        b = -b
    return R2(a, b)


class R2Quat:
    """A quaternion with R2 coordinates."""

    __slots__ = ("c0", "c1", "c2", "c3")

    def __init__(self, c0, c1=None, c2=None, c3=None):
        zero = R2(0)
        object.__setattr__(self, "c0", c0 if isinstance(c0, R2) else R2(c0))
        for name, v in (("c1", c1), ("c2", c2), ("c3", c3)):
            if v is None:
                v = zero
            object.__setattr__(self, name, v if isinstance(v, R2) else R2(v))

    def __setattr__(self, name, value):
        raise AttributeError("R2Quat is immutable")

    def parts(self):
        return (self.c0, self.c1, self.c2, self.c3)

    @staticmethod
    def _coerce(other):
        if isinstance(other, R2Quat):
            return other
        if isinstance(other, HQ):
            return other.to_r2quat()
        if isinstance(other, QQ):
            return other.to_r2quat()
        if isinstance(other, (R2, int, Fraction)):
            return R2Quat(other)
        return None

    def __add__(self, other):
        o = R2Quat._coerce(other)
        if o is None:
            return NotImplemented
        return R2Quat(*(x + y for x, y in zip(self.parts(), o.parts())))

    __radd__ = __add__

    def __sub__(self, other):
        o = R2Quat._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return R2Quat(*(-x for x in self.parts()))

    def __mul__(self, other):
        o = R2Quat._coerce(other)
        if o is None:
            return NotImplemented
        return R2Quat(*_qmul(*self.parts(), *o.parts()))

    def __rmul__(self, other):
        o = R2Quat._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def conj(self):
        return R2Quat(self.c0, -self.c1, -self.c2, -self.c3)

    def norm(self):
        out = R2(0)
        for x in self.parts():
            out = out + x * x
        return out

    def re(self):
        return self.c0

    def inverse(self):
        n = self.norm()
        return self.conj() * n.inverse()

    def is_zero(self):
        return all(x.sign() == 0 for x in self.parts())

    def to_qq(self):
        """Exact conversion to QQ, or None if any sqrt2 part remains."""
        if any(x.fb for x in self.parts()):
            return None
        return QQ(*(x.fa for x in self.parts()))

    def __eq__(self, other):
        o = R2Quat._coerce(other)
        if o is None:
            return NotImplemented
        return self.parts() == o.parts()

    def __hash__(self):
        return hash(("R2Quat",) + self.parts())

    def __repr__(self):
        return f"R2Quat[{r2quat_encode(self)}]"


def r2quat_encode(x):
    return "(" + "; ".join(r2_encode(c) for c in x.parts()) + ")"


def r2quat_parse(text):
    t = text.strip()
    if not (t.startswith("(") and t.endswith(")")):
        raise ValueError(f"bad R2Quat literal: {text!r}")
    parts = t[1:-1].split(";")
    if len(parts) != 4:
        raise ValueError(f"bad R2Quat literal: {text!r}")
    return R2Quat(*(r2_parse(p) for p in parts))


# Named constants.
ZERO = HQ.of(0)
ONE = HQ.of(1)
I = HQ.of(0, 1)
J = HQ.of(0, 0, 1)
K = HQ.of(0, 0, 0, 1)
TWO = HQ.of(2)
ALPHA = HQ(1, 1, 1, 1)          # (1+i+j+k)/2
ALPHA_BAR = HQ(1, -1, -1, -1)
OMEGA = HQ(-1, 1, 1, 1)         # (-1+i+j+k)/2, a cube root of 1
P = HQ.of(1, -1)                # p = 1-i, the ramified prime over 2
PBAR = HQ.of(1, 1)
EPS = HQ(1, -1, -1, 1)          # (1-i-j+k)/2
EPS_BAR = HQ(1, 1, 1, -1)

# xi = (1+i)/sqrt(2); xi^2 = i
XI = R2Quat(R2(0, Fraction(1, 2)), R2(0, Fraction(1, 2)))
XI_BAR = XI.conj()


def units():
    """The 24 Hurwitz units in a fixed order."""
    out = []
    for s in (1, -1):
        for base in (ONE, I, J, K):
            out.append(base * s)
    for a in (1, -1):
        for b in (1, -1):
            for c in (1, -1):
                for d in (1, -1):
                    out.append(HQ(a, b, c, d))
    return tuple(out)


_UNITS = units()


def norm2_elements():
    """The 24 Hurwitz quaternions of norm 2 (the associates of p)."""
    return tuple(P * u for u in _UNITS)


def in_p(x):
    """Membership in the two-sided ideal pH, by exact division."""
    return (PBAR * x).half() is not None


def in_2(x):
    return x.half() is not None


def in_2p2i(x):
    """Membership in (2+2i)H = p^3 H."""
    return (P * x).scale_div(4) is not None


def cong_p(x, y):
    return in_p(x - y)


def cong_2(x, y):
    return in_2(x - y)


def cong_2p2i(x, y):
    return in_2p2i(x - y)


_P_RESIDUES = (ZERO, ONE, ALPHA, ALPHA_BAR)


def residue_p(x):
    """Canonical representative of x mod pH, one of 0, 1, alpha, conj(alpha)."""
    for rep in _P_RESIDUES:
        if in_p(x - rep):
            return rep
    raise AssertionError("H/pH has four classes")  # pragma: no cover
