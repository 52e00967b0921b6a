"""Exact root heights over Q(sqrt 2) and the descent onto the 14-root diagram.

The height of a root r measures how far its mirror sits from the Weyl
point: ht(r)^2 = |<rho, r>|^2 / |rho|^4, kept exactly in Q(sqrt 2).
With S_P and S_L the sums of the seven point resp. line roots,
28 <rho, v> = 2 <S_P, v> + sqrt(2) p <S_L, v>, so every squared height
is integer quaternion data wrapped in an R2.  On top of the height sit
the greedy descent that pushes an arbitrary root to a unit multiple of
a diagram root, the exhaustive enumeration of all height <= 1 root
classes, and the exact certificates for the two pairing bounds that
make that enumeration complete.
"""

import math
from itertools import combinations_with_replacement, permutations, product

from .hquat import HQ, R2, I, J, K, ONE, P, ZERO, norm2_elements, units
from .hlattice import LVec, l_3e8h
from .diagram import (
    ALL_LABELS,
    POINT_LABELS,
    inner_ext,
    roots14,
    weyl_data,
)
from .reflect import reflection_matrix

# 784 |rho|^4; a root has height exactly 1 when its numerator hits this
TARGET = R2(88, -48)

DESCENT_UNITS = (I, -I, J, -J, K, -K, -ONE)
STEP_CAP = 200


def _state(v):
    """(2 <S_P, v>, p <S_L, v>): the integer pair behind 28 <rho, v>."""
    wd = weyl_data()
    return (wd.sigma_p.inner(v) * 2, P * wd.sigma_l.inner(v))


def _numerator(state):
    """|x + sqrt(2) y|^2 as an exact R2; equals 784 |<rho, v>|^2."""
    x, y = state
    return R2(x.norm() + 2 * y.norm(), (x.conj() * y).re2())


class HeightValue:
    """Exact squared height; the float view is for display only."""

    __slots__ = ("squared",)

    def __init__(self, squared):
        object.__setattr__(self, "squared", squared)

    def __setattr__(self, name, value):
        raise AttributeError("HeightValue is immutable")

    @property
    def display(self):
        return math.sqrt(float(self.squared))

    def is_one(self):
        return self.squared == R2(1)

    def __eq__(self, other):
        if not isinstance(other, HeightValue):
            return NotImplemented
        return self.squared == other.squared

    def __lt__(self, other):
        return self.squared < other.squared

    def __hash__(self):
        return hash(("HeightValue", self.squared))

    def __repr__(self):
        return f"HeightValue(squared={self.squared!r})"


def height(r):
    """Exact height data of a vector in the diagram's coordinate system."""
    return HeightValue(_numerator(_state(r)) / TARGET)


_CAND = None


def _candidates():
    """The 98 descent moves: every diagram root with every non-real unit
    from DESCENT_UNITS, in a fixed enumeration order."""
    global _CAND
    if _CAND is None:
        rts = roots14()
        out = []
        for lbl in ALL_LABELS:
            d = rts[lbl]
            is_point = lbl in POINT_LABELS
            for mu in DESCENT_UNITS:
                out.append((lbl, mu, d, is_point, reflection_matrix(d, mu)))
        _CAND = tuple(out)
    return _CAND


def _moved_state(state, is_point, t):
    """State after v -> v + d (1-mu) <d,v> / 2, with t = (1-mu) <d,v>.

    The point/line sums pair with a point as (-2, 3 pbar) and with a
    line as (3 p, -2); the /2 cancels into those constants.
    """
    x, y = state
    if is_point:
        return (x - t * 2, y + t * 3)
    return (x + P * t * 3, y - P * t)


class ReductionTrace:
    """One full descent run.

    steps holds (label, unit, squared height after the step); heights
    strictly decrease except at the indices listed in perturbed_at.
    """

    __slots__ = ("start", "steps", "terminal", "perturbations",
                 "perturbed_at")

    def __init__(self, start, steps, terminal, perturbed_at):
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "steps", tuple(steps))
        object.__setattr__(self, "terminal", terminal)
        object.__setattr__(self, "perturbed_at", tuple(perturbed_at))
        object.__setattr__(self, "perturbations", len(self.perturbed_at))

    def __setattr__(self, name, value):
        raise AttributeError("ReductionTrace is immutable")

    def __repr__(self):
        return (f"ReductionTrace({len(self.steps)} steps, "
                f"{self.perturbations} perturbations)")


def diagram_match(v):
    """(label, unit) with v = root * unit, or None."""
    rts = roots14()
    for lbl in ALL_LABELS:
        d = rts[lbl]
        for u in units():
            if v == d * u:
                return (lbl, u)
    return None


# unit index -> index of the inverse unit within DESCENT_UNITS
_UNDO = (1, 0, 3, 2, 5, 4, 6)


def _descend(v, ban_first, cap):
    """Pure strict greedy descent; no perturbation.

    Each step scores all 98 moves by the exact squared height of the
    image and takes the strictest decrease, ties going to the first
    candidate in enumeration order; ban_first excludes one move on the
    first step only (used to stop a perturbation from undoing itself).
    Returns (steps, final vector, reached) where reached tells whether
    the final vector has height exactly 1.
    """
    steps = []
    cur = v
    ban = ban_first
    for _ in range(cap):
        state = _state(cur)
        num = _numerator(state)
        if num == TARGET:
            return steps, cur, True
        best = None
        best_idx = -1
        pairings = {}
        for idx, (lbl, mu, d, is_point, _) in enumerate(_candidates()):
            if idx == ban:
                continue
            q = pairings.get(lbl)
            if q is None:
                q = d.inner(cur)
                pairings[lbl] = q
            cand = _numerator(_moved_state(state, is_point, (ONE - mu) * q))
            if cand < num and (best is None or cand < best):
                best, best_idx = cand, idx
        ban = None
        if best is None:
            return steps, cur, False
        lbl, mu, _, _, mat = _candidates()[best_idx]
        cur = mat.apply(cur)
        steps.append((lbl, mu, best / TARGET))
    return steps, cur, False


def reduce(r, step_cap=STEP_CAP):
    """Greedy exact descent of a root onto a unit multiple of a diagram root.

    Strict descent first.  If that gets stuck, exactly one perturbation
    step is inserted: the candidate moves are tried in enumeration order
    and the first whose subsequent pure descent (barred from undoing it)
    terminates is recorded, so a successful trace never has more than
    one non-decreasing step.  No working perturbation, an unrecognized
    height-1 vector, or running past step_cap raises
    ValueError("reduction failed").
    """
    assert r.lattice is l_3e8h()
    assert r.norm() == HQ.of(-2)
    steps, cur, reached = _descend(r, None, step_cap)
    if reached:
        if diagram_match(cur) is None:
            raise ValueError("reduction failed")
        return ReductionTrace(r, steps, cur, ())
    used = len(steps) + 1
    if used >= step_cap:
        raise ValueError("reduction failed")
    for idx, (lbl, mu, d, is_point, mat) in enumerate(_candidates()):
        moved = mat.apply(cur)
        if moved == cur:
            continue
        root_idx, unit_idx = divmod(idx, len(DESCENT_UNITS))
        ban = root_idx * len(DESCENT_UNITS) + _UNDO[unit_idx]
        tail, final, reached = _descend(moved, ban, step_cap - used)
        if reached and diagram_match(final) is not None:
            pstep = (lbl, mu, _numerator(_state(moved)) / TARGET)
            return ReductionTrace(r, steps + [pstep] + tail, final,
                                  (len(steps),))
    raise ValueError("reduction failed")


def unit_class_key(v):
    """Canonical key of the orbit {v u}: least doubled-coordinate tuple."""
    return min(tuple(c.doubled() for c in (v * u).coords) for u in units())


def unit_class_rep(v):
    """The unit multiple of v realizing unit_class_key."""
    best = min(units(),
               key=lambda u: tuple(c.doubled() for c in (v * u).coords))
    return v * best


def candidate_blocks():
    """The seven (w_P-pairing, point-pairing norms) blocks.

    Pairings lie in pH and below sqrt 6 in absolute value, so their
    norms are 0, 2 or 4 (bound_report certifies the bounds); the root
    identity -2 = -sum |<x,r>|^2 / 2 + |<w_P,r>|^2 / 2 then leaves
    exactly these patterns, with the w_P pairing normalized by a unit.
    """
    return (
        (ZERO, (4,)),
        (ZERO, (2, 2)),
        (P, (4, 2)),
        (P, (2, 2, 2)),
        (HQ.of(2), (4, 4)),
        (HQ.of(2), (4, 2, 2)),
        (HQ.of(2), (2, 2, 2, 2)),
    )


def _values(size):
    if size == 4:
        return tuple(HQ.of(2) * u for u in units())
    return norm2_elements()


def _block_multisets(sizes):
    groups = {}
    for s in sizes:
        groups[s] = groups.get(s, 0) + 1
    pools = [combinations_with_replacement(_values(s), n)
             for s, n in sorted(groups.items(), reverse=True)]
    for combo in product(*pools):
        yield tuple(x for part in combo for x in part)


def block_roots(q0, sizes):
    """All height <= 1 roots whose pairing pattern matches one block.

    The height of a reconstructed vector depends only on the value sum
    and q0, so whole multisets of values are rejected before any slot
    arrangement is tried; survivors are rebuilt from
    r = sum -x <x,r> / 2 + w_P <w_P,r> / 2 and kept when integral.
    """
    wd = weyl_data()
    pts = wd.roots.points
    w_p = wd.w_p
    lat = wd.roots.lattice
    out = []
    pad = (ZERO,) * (7 - len(sizes))
    for vals in _block_multisets(sizes):
        total = vals[0]
        for q in vals[1:]:
            total = total + q
        if _numerator((total * 2, q0 * 7 - total * 3)) > TARGET:
            continue
        for arrangement in set(permutations(vals + pad)):
            coords = []
            for c in range(8):
                acc = w_p.coords[c] * q0
                for x, q in zip(pts, arrangement):
                    if not q.is_zero():
                        acc = acc - x.coords[c] * q
                h = acc.scale_div(2)
                if h is None:
                    break
                coords.append(h)
            if len(coords) < 8:
                continue
            rv = LVec(lat, tuple(coords))
            assert rv.norm() == HQ.of(-2)
            out.append(rv)
    return out


def enumerate_min_height():
    """Canonical representatives of every root class with height <= 1.

    Exhaustive over the candidate blocks; the expected outcome is the
    14 diagram-root classes, each of height exactly 1, and nothing of
    height below 1.
    """
    reps = {}
    for q0, sizes in candidate_blocks():
        for rv in block_roots(q0, sizes):
            key = unit_class_key(rv)
            if key not in reps:
                reps[key] = unit_class_rep(rv)
    return [reps[k] for k in sorted(reps)]


def _ext(v):
    return tuple(c.to_r2quat() for c in v.coords)


def bound_report():
    """The two pairing bounds with exact certificates.

    first: |<x, r>| <= 2 cosh(2 asinh(|rho| / sqrt 2)), closed form
    2 + 2 |rho|^2.  second: |<w_P, r>| <= 2 sinh(asinh(|rho| / sqrt 2)
    + acosh(1 / (2 |rho|))).  Both are evaluated in floating point for
    display, re-derived from the exact distance identities
    sinh^2(d(rho, mirror)/2) = |rho|^2 / 2 (true for every diagram
    mirror) and cosh^2(d(rho, w_P)/2) = 1 / (4 |rho|^2), and certified
    below sqrt 6 by exact Q(sqrt 2) inequalities, which is what confines
    the pairing norms to {0, 2, 4}.
    """
    wd = weyl_data()
    lat = wd.roots.lattice
    rho2 = wd.rho_norm2
    one = R2(1)

    first_exact = R2(2) + R2(2) * rho2
    first = 2.0 * math.cosh(2.0 * math.asinh(math.sqrt(float(rho2) / 2.0)))
    sh2 = rho2 / R2(2)                      # sinh^2 of the half distance
    ch2 = (R2(4) * rho2).inverse()          # cosh^2 of the half distance
    second = 2.0 * math.sinh(math.asinh(math.sqrt(float(sh2)))
                             + math.acosh(math.sqrt(float(ch2))))

    sinh_identity = all(
        inner_ext(lat, wd.rho_bar, _ext(wd.roots[lbl])).norm()
        / (R2(2) * rho2) == sh2
        for lbl in ALL_LABELS)
    cosh_identity = (inner_ext(lat, wd.rho_bar, _ext(wd.w_p)).norm()
                     / (rho2 * R2(2)) == ch2)
    center_self = (inner_ext(lat, wd.rho_bar, wd.rho_bar).norm()
                   / (rho2 * rho2) == one)

    first_below_sqrt6 = first_exact * first_exact < R2(6)
    # second^2 = 4 (Y + 2 sqrt(X)); below 6 iff 64 X < (6 - 4 Y)^2 > 0
    x_val = sh2 * ch2 * (one + sh2) * (ch2 - one)
    y_val = sh2 * ch2 + (one + sh2) * (ch2 - one)
    gap = R2(6) - R2(4) * y_val
    second_below_sqrt6 = gap > R2(0) and R2(64) * x_val < gap * gap

    return {
        "first_bound": first,
        "first_bound_exact": first_exact,
        "second_bound": second,
        "sinh_identity": sinh_identity,
        "cosh_identity": cosh_identity,
        "center_self": center_self,
        "first_below_sqrt6": first_below_sqrt6,
        "second_below_sqrt6": second_below_sqrt6,
    }
