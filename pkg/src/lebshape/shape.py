"""Exact similarity-class keys for tetrahedra.

A tetrahedron ABCD is placed with A at the origin, B = (1, 0, 0), C in the
upper half of the xy-plane and D above that plane.  Writing C = (z1, z2, 0)
and D = (w1, w2, t), the class is stored as the rational 5-tuple

    (z1, z2**2, w1, w2*z2, t**2)

which is a rational function of the squared edge lengths, so two classes can
be compared bit-exactly without ever taking a square root.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import permutations
from typing import Iterable, NamedTuple, Sequence

import gmpy2
from gmpy2 import mpq

Rational = type(mpq(0))

# vertex pairs in storage order: 01, 02, 03, 12, 13, 23
PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
PAIR_NAMES = ("01", "02", "03", "12", "13", "23")
_IDX = {}
for _n, (_i, _j) in enumerate(PAIRS):
    _IDX[_i, _j] = _IDX[_j, _i] = _n

# for each ordered labeling (A, B, C, D): positions of AB, AC, AD, BC, BD, CD
_PERMS = tuple(permutations(range(4)))
_PERM_EDGES = tuple(
    (p, tuple(_IDX[p[i], p[j]] for i, j in PAIRS)) for p in _PERMS
)
_EDGES_OF = dict(_PERM_EDGES)

TIE_BREAKS = ("canonical", "adjacent-longest")


class DegenerateInput(ValueError):
    """Raised for flat or otherwise invalid tetrahedra."""


class LabelingInconsistency(RuntimeError):
    """Raised when tied canonical labelings give different keys."""

    def __init__(self, keys):
        self.keys = list(keys)
        super().__init__(
            "tied canonical labelings give %d distinct keys: %s"
            % (len(self.keys), "; ".join(format_key(k) for k in self.keys))
        )


def as_rational(x) -> Rational:
    """Convert an int, Fraction, mpq or ``"p/q"`` string to an exact rational.

    Floats are rejected because they are almost never what is meant.
    """
    if isinstance(x, Rational):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        s = x.strip()
        try:
            f = Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError("malformed rational %r" % x) from exc
        return mpq(f.numerator, f.denominator)
    if type(x).__name__ == "mpz":
        return mpq(x)
    raise TypeError("cannot convert %r to an exact rational" % (x,))


def rational_str(x) -> str:
    """``"p/q"`` (or ``"p"`` for integers)."""
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


class ShapeKey(NamedTuple):
    """Exact key (z1, z2**2, w1, w2*z2, t**2) of a similarity class."""

    z1: Rational
    z2_sq: Rational
    w1: Rational
    w2z2: Rational
    t_sq: Rational

    @classmethod
    def of(cls, *fields) -> "ShapeKey":
        if len(fields) == 1:
            fields = tuple(fields[0])
        if len(fields) != 5:
            raise ValueError("a shape key has five fields, got %d" % len(fields))
        return cls(*(as_rational(f) for f in fields))

    def exact(self) -> tuple:
        return tuple(rational_str(f) for f in self)


class NormalizedPoint(NamedTuple):
    """Floating-point position (z1, z2, w1, w2, t) of a normalized tetrahedron."""

    z1: float
    z2: float
    w1: float
    w2: float
    t: float

    @property
    def z(self) -> complex:
        return complex(self.z1, self.z2)

    @property
    def w(self) -> complex:
        return complex(self.w1, self.w2)


class SquaredLengths(tuple):
    """Six squared edge lengths in the order 01, 02, 03, 12, 13, 23."""

    def __new__(cls, values) -> "SquaredLengths":
        if isinstance(values, dict):
            try:
                values = [values[n] for n in PAIR_NAMES]
            except KeyError as exc:
                raise ValueError("missing edge %s" % exc) from exc
        vals = tuple(as_rational(v) for v in values)
        if len(vals) != 6:
            raise ValueError("need six squared lengths, got %d" % len(vals))
        return super().__new__(cls, vals)

    def edge(self, i: int, j: int) -> Rational:
        return self[_IDX[i, j]]

    def as_dict(self) -> dict:
        return dict(zip(PAIR_NAMES, self))

    def scaled(self, lam) -> "SquaredLengths":
        lam = as_rational(lam)
        return SquaredLengths([lam * v for v in self])

    def relabeled(self, sigma: Sequence[int]) -> "SquaredLengths":
        """Lengths of the same tetrahedron with new vertex i = old vertex sigma[i]."""
        return SquaredLengths([self[_IDX[sigma[i], sigma[j]]] for i, j in PAIRS])

    def __repr__(self) -> str:
        body = ", ".join("%s: %s" % (n, rational_str(v)) for n, v in zip(PAIR_NAMES, self))
        return "SquaredLengths({%s})" % body


Labeling = tuple  # (A, B, C, D) vertex indices


def cayley_menger(s: Sequence) -> Rational:
    """144 * volume**2 from squared edge lengths (exact)."""
    d01, d02, d03, d12, d13, d23 = s
    return (
        d01 * d23 * (d02 + d03 + d12 + d13 - d01 - d23)
        + d02 * d13 * (d01 + d03 + d12 + d23 - d02 - d13)
        + d03 * d12 * (d01 + d02 + d13 + d23 - d03 - d12)
        - d01 * d02 * d12
        - d01 * d03 * d13
        - d02 * d03 * d23
        - d12 * d13 * d23
    )


_FACES = ((0, 1, 3), (0, 2, 4), (1, 2, 5), (3, 4, 5))


def check_lengths(s: Sequence) -> None:
    """Raise DegenerateInput unless ``s`` describes a non-degenerate tetrahedron."""
    if any(v <= 0 for v in s):
        raise DegenerateInput("squared lengths must be positive")
    for i, j, k in _FACES:
        a, b, c = s[i], s[j], s[k]
        # 16 * area**2 by Heron in squared form
        if 2 * (a * b + b * c + c * a) - a * a - b * b - c * c <= 0:
            raise DegenerateInput("face %s is flat" % "/".join(PAIR_NAMES[n] for n in (i, j, k)))
    if cayley_menger(s) <= 0:
        raise DegenerateInput("tetrahedron has zero volume")


def squared_edge_lengths(vertices) -> SquaredLengths:
    """Exact squared edge lengths of four rational points.

    Parameters
    ----------
    vertices : sequence of four 3-sequences
        Coordinates as ints, Fractions or ``"p/q"`` strings.

    Raises
    ------
    DegenerateInput
        If the points are coplanar.
    """
    pts = [[as_rational(c) for c in v] for v in vertices]
    if len(pts) != 4 or any(len(p) != 3 for p in pts):
        raise ValueError("need four points in 3-space")
    s = SquaredLengths(
        [sum((pts[i][k] - pts[j][k]) ** 2 for k in range(3)) for i, j in PAIRS]
    )
    check_lengths(s)
    return s


def _labelings(s: Sequence, tie_break: str = "canonical") -> list:
    # stage (i): AB longest, both orientations
    m = max(s)
    cands = [pe for pe in _PERM_EDGES if s[pe[1][0]] == m]
    if tie_break == "canonical":
        # stage (ii): AC shortest of the four edges touching AB, and globally
        # shortest among all such choices so the base face is fixed
        kept = []
        for pe in cands:
            e = pe[1]
            ac = s[e[1]]
            if ac <= s[e[2]] and ac <= s[e[3]] and ac <= s[e[4]]:
                kept.append(pe)
        best = min(s[e[1]] for _, e in kept)
        kept = [pe for pe in kept if s[pe[1][1]] == best]
        # stage (iii): smallest angle BAC, i.e. largest AB.AC
        dots = [s[e[0]] + s[e[1]] - s[e[3]] for _, e in kept]
        top = max(dots)
        return [p for (p, _), d in zip(kept, dots) if d == top]
    if tie_break == "adjacent-longest":
        # AC longest edge touching AB, ties by the longest closing edge BC
        best = max(s[e[1]] for _, e in cands if s[e[1]] >= max(s[e[2]], s[e[3]], s[e[4]]))
        kept = [pe for pe in cands if s[pe[1][1]] == best]
        top = max(s[e[3]] for _, e in kept)
        return [p for p, e in kept if s[e[3]] == top]
    raise ValueError("unknown tie_break %r (expected one of %s)" % (tie_break, ", ".join(TIE_BREAKS)))


def canonical_labelings(s, tie_break: str = "canonical") -> list:
    """All vertex orders (A, B, C, D) that survive the base-face selection.

    The rule is: AB is a longest edge, AC is a shortest edge touching AB,
    and among what is left the angle BAC is smallest.  The result is in
    lexicographic order of the permutation.
    """
    s = SquaredLengths(s)
    check_lengths(s)
    return _labelings(s, tie_break)


def _key(s: Sequence, e: Sequence) -> ShapeKey:
    # e holds the storage positions of AB, AC, AD, BC, BD, CD
    ab, ac, ad, bc, bd, cd = (s[i] for i in e)
    abac = (ab + ac - bc) / 2
    abad = (ab + ad - bd) / 2
    acad = (ac + ad - cd) / 2
    z1 = abac / ab
    z2_sq = ac / ab - z1 * z1
    w1 = abad / ab
    w2z2 = (acad - abac * abad / ab) / ab
    if z2_sq <= 0:
        raise DegenerateInput("base face is flat")
    t_sq = ad / ab - w1 * w1 - w2z2 * w2z2 / z2_sq
    if t_sq <= 0:
        raise DegenerateInput("tetrahedron has zero volume")
    return ShapeKey(z1, z2_sq, w1, w2z2, t_sq)


def key_for_labeling(s, lab: Labeling) -> ShapeKey:
    """Key obtained by placing the vertices in the given order."""
    s = SquaredLengths(s)
    return _key(s, _EDGES_OF[tuple(lab)])


def labeling_keys(s, tie_break: str = "canonical") -> dict:
    """Map each distinct key reachable from a canonical labeling to its labelings."""
    s = SquaredLengths(s)
    check_lengths(s)
    out: dict = {}
    for p in _labelings(s, tie_break):
        out.setdefault(key_for_labeling(s, p), []).append(p)
    return out


def _normalize_raw(s: Sequence, tie_break: str = "canonical", strict: bool = False) -> ShapeKey:
    labs = _labelings(s, tie_break)
    first = labs[0]
    key = _key(s, _EDGES_OF[first])
    if strict and len(labs) > 1:
        keys = {key}
        for p in labs[1:]:
            keys.add(_key(s, _EDGES_OF[p]))
        if len(keys) > 1:
            raise LabelingInconsistency(sorted(keys))
    return key


def normalize(s, tie_break: str = "canonical", strict: bool = False) -> ShapeKey:
    """Normalized key of a tetrahedron given by its squared edge lengths.

    Parameters
    ----------
    s : SquaredLengths or sequence of six rationals
    tie_break : {"canonical", "adjacent-longest"}
        Base-face rule.  The second one picks the longest edge touching AB
        and is provided for exploration only.
    strict : bool
        When several labelings tie, also evaluate all of them and raise
        LabelingInconsistency if they disagree.  By default the
        lexicographically first labeling is used.

    Returns
    -------
    ShapeKey
    """
    s = SquaredLengths(s)
    check_lengths(s)
    return _normalize_raw(s, tie_break, strict)


def normalize_vertices(vertices, tie_break: str = "canonical", strict: bool = False) -> ShapeKey:
    return normalize(squared_edge_lengths(vertices), tie_break, strict)


def key_to_lengths(k) -> SquaredLengths:
    """Squared lengths of A=(0,0,0), B=(1,0,0), C=(z1,z2,0), D=(w1,w2,t)."""
    z1, z2_sq, w1, w2z2, t_sq = ShapeKey.of(k)
    return SquaredLengths(_lengths_raw(z1, z2_sq, w1, w2z2, t_sq))


def _lengths_raw(z1, z2_sq, w1, w2z2, t_sq) -> tuple:
    w2_sq = w2z2 * w2z2 / z2_sq
    return (
        mpq(1),
        z1 * z1 + z2_sq,
        w1 * w1 + w2_sq + t_sq,
        (z1 - 1) ** 2 + z2_sq,
        (w1 - 1) ** 2 + w2_sq + t_sq,
        (w1 - z1) ** 2 + w2_sq - 2 * w2z2 + z2_sq + t_sq,
    )


def key_to_point(k) -> NormalizedPoint:
    """Floating-point embedding of an exact key."""
    z1, z2_sq, w1, w2z2, t_sq = k
    z2 = math.sqrt(float(z2_sq))
    w2 = float(w2z2 / gmpy2.sqrt(z2_sq)) if w2z2 else 0.0
    return NormalizedPoint(float(z1), z2, float(w1), w2, math.sqrt(float(t_sq)))


def validate_key(k) -> list:
    """Names of the canonical-space constraints violated by ``k`` (empty if valid)."""
    z1, z2_sq, w1, w2z2, t_sq = ShapeKey.of(k)
    bad = []
    if z2_sq <= 0:
        bad.append("z2² > 0")
    if t_sq <= 0:
        bad.append("t² > 0")
    if z1 <= 0:
        bad.append("z1 > 0")
    if z1 > mpq(1, 2):
        bad.append("z1 ≤ 1/2")
    if (z1 - 1) ** 2 + z2_sq > 1:
        bad.append("|z-1|² ≤ 1")
    if z2_sq <= 0:
        return bad
    zz = z1 * z1 + z2_sq
    w2_sq = w2z2 * w2z2 / z2_sq
    ad = w1 * w1 + w2_sq + t_sq
    bd = (w1 - 1) ** 2 + w2_sq + t_sq
    cd = (w1 - z1) ** 2 + (w2z2 / z2_sq - 1) ** 2 * z2_sq + t_sq
    if zz > ad:
        bad.append("|z|² ≤ |w|²+t²")
    if ad > 1:
        bad.append("|w|²+t² ≤ 1")
    if zz > bd:
        bad.append("|z|² ≤ |w-1|²+t²")
    if bd > 1:
        bad.append("|w-1|²+t² ≤ 1")
    if cd > 1:
        bad.append("|w-z|²+t² ≤ 1")
    return bad


def format_key(k) -> str:
    return "(" + ", ".join(rational_str(f) for f in k) + ")"


def parse_key(fields: Iterable) -> ShapeKey:
    return ShapeKey.of(*list(fields))
