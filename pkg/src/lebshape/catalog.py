"""Named tetrahedra with exact data."""
from __future__ import annotations

import difflib
import json
from dataclasses import dataclass
from fractions import Fraction as F
from typing import Optional

from .shape import (
    ShapeKey,
    SquaredLengths,
    as_rational,
    normalize,
    rational_str,
    squared_edge_lengths,
    validate_key,
)
from .orbit import InvalidPerturbation


class UnknownName(KeyError):
    def __init__(self, name, suggestions):
        self.name = name
        self.suggestions = list(suggestions)
        msg = "unknown tetrahedron %r" % name
        if self.suggestions:
            msg += "; did you mean %s?" % ", ".join(self.suggestions)
        super().__init__(msg)

    def __str__(self) -> str:
        return self.args[0]


@dataclass(frozen=True)
class CatalogEntry:
    """A named tetrahedron.

    Exactly one of ``vertices``, ``lengths`` or ``source_key`` is the
    source; ``key`` is its normalized form (or the source key itself,
    which is never renormalized).
    """

    name: str
    note: str
    key: ShapeKey
    vertices: Optional[tuple] = None
    lengths: Optional[SquaredLengths] = None
    source_key: Optional[ShapeKey] = None

    @property
    def source_kind(self) -> str:
        if self.vertices is not None:
            return "vertices"
        if self.lengths is not None:
            return "squared_lengths"
        return "key"

    def to_json(self) -> dict:
        d = {"name": self.name, "note": self.note}
        if self.vertices is not None:
            d["vertices"] = [[rational_str(c) for c in v] for v in self.vertices]
        elif self.lengths is not None:
            d["squared_lengths"] = {n: rational_str(v) for n, v in self.lengths.as_dict().items()}
        else:
            d["key"] = list(self.source_key.exact())
        d["normalized_key"] = list(self.key.exact())
        return d


h = F(1, 2)


def _sq(c, r=1):
    # exact square of c * sqrt(r)
    return F(c) ** 2 * r


def _radical_key(z1, z2, w1, w2, t):
    """Key of a point whose imaginary parts and height are (coef, radicand) pairs.

    z2 and w2 must share a radicand so that w2 * z2 is rational.
    """
    (cz, rz), (cw, rw), (ct, rt) = z2, w2, t
    if cw and rw != rz:
        raise ValueError("w2 and z2 need the same radicand")
    return ShapeKey.of(z1, _sq(cz, rz), w1, F(cw) * F(cz) * rz, _sq(ct, rt))


# normalized forms of six nearly regular tetrahedra, as (coef, radicand)
_NEARLY_REGULAR = {
    "T1": (F(5, 11), (F(1, 22), 274), F(21, 44), (F(49, 6028), 274), (F(1, 6028), 19143421)),
    "T2": (F(3, 7), (F(1, 21), 255), F(10, 21), (F(31, 3570), 255), (F(1, 3570), 7182245)),
    "T3": (F(10, 21), (F(2, 21), 59), h, (F(1, 59), 59), (F(1, 2478), 3331671)),
    "T4": (F(20, 41), (F(1, 41), 1117), F(21, 41), (F(318, 45797), 1117), (F(1, 45797), 1331868354)),
    "T5": (F(99, 200), (F(1, 200), 28599), F(101, 200), (F(9001, 5719800), 28599),
           (F(1, 285990), 53503323789)),
    "T6": (F(99, 200), (F(1, 200), 28199), F(101, 200), (F(8801, 5639800), 28199),
           (F(1, 281990), 52188255887)),
}

# listed vertex coordinates of T1..T4, each coordinate (coef, radicand)
NEARLY_REGULAR_VERTICES = {
    "T1": [((0, 1), (0, 1), (0, 1)), ((1, 22), (0, 1), (0, 1)),
           ((F(5, 11), 22), (F(1, 11), 1507), (0, 1)),
           ((F(21, 44), 22), (F(49, 3014), 1507), (F(1, 548), 3480622))],
    "T2": [((0, 1), (0, 1), (0, 1)), ((1, 21), (0, 1), (0, 1)),
           ((F(3, 7), 21), (F(1, 7), 595), (0, 1)),
           ((F(10, 21), 21), (F(31, 1190), 595), (F(1, 510), 3078105))],
    "T3": [((0, 1), (0, 1), (0, 1)), ((1, 21), (0, 1), (0, 1)),
           ((h, 21), (h, 47), (0, 1)),
           ((F(11, 21), 21), (F(4, 47), 47), (F(2, 987), 2654043))],
    "T4": [((0, 1), (0, 1), (0, 1)), ((1, 41), (0, 1), (0, 1)),
           ((F(20, 41), 41), (F(1, 41), 47478), (0, 1)),
           ((F(21, 41), 41), (F(53, 7913), 47478), (F(1, 193), 935471))],
}


def perturbation_family(family, alpha) -> ShapeKey:
    """One-component perturbation of the halves key (1/2, 1/4, 1/2, 1/4, 1/4).

    ========  ===========================================
    family    perturbed component
    ========  ===========================================
    1         z1 = 1/2 - alpha
    2         z2 = 1/2 + alpha (so w2 * z2 changes too)
    3         w1 = 1/2 - alpha
    4         w2 = 1/2 + alpha
    5         t  = 1/2 + alpha
    ========  ===========================================

    Raises
    ------
    InvalidPerturbation
        If the key leaves the canonical space.
    """
    fam = int(str(family).lower().lstrip("h"))
    a = F(as_rational(alpha).numerator, as_rational(alpha).denominator)
    z1, z2, w1, w2, t = h, h, h, h, h
    if fam == 1:
        z1 = h - a
    elif fam == 2:
        z2 = h + a
    elif fam == 3:
        w1 = h - a
    elif fam == 4:
        w2 = h + a
    elif fam == 5:
        t = h + a
    else:
        raise ValueError("family must be 1..5, got %r" % family)
    if z2 <= 0 or t <= 0:
        raise InvalidPerturbation("alpha=%s makes the tetrahedron flat" % a)
    k = ShapeKey.of(z1, z2 * z2, w1, w2 * z2, t * t)
    bad = validate_key(k)
    if bad:
        raise InvalidPerturbation("alpha=%s violates %s" % (a, ", ".join(bad)))
    return k


def family_template(family):
    """Callable alpha -> key for use with ``orbit.sweep``."""
    return lambda a: perturbation_family(family, a)


def _build() -> dict:
    out = {}

    def add(name, note, vertices=None, lengths=None, key=None):
        if vertices is not None:
            vs = tuple(tuple(as_rational(c) for c in v) for v in vertices)
            k = normalize(squared_edge_lengths(vs))
            out[name] = CatalogEntry(name, note, k, vertices=vs)
        elif lengths is not None:
            s = SquaredLengths(lengths)
            out[name] = CatalogEntry(name, note, normalize(s), lengths=s)
        else:
            k = ShapeKey.of(key)
            out[name] = CatalogEntry(name, note, k, source_key=k)

    add("sommerville", "space-filling tetrahedron with a 4-element orbit",
        vertices=[(-1, 0, 0), (1, 0, 0), (0, -1, 1), (0, 1, 1)])
    add("path", "path tetrahedron, a 3-cycle of the bisection maps",
        vertices=[(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1)])
    add("halves", "first child of the Sommerville tetrahedron", key=(h, F(1, 4), h, F(1, 4), F(1, 4)))
    add("q", "image of the path tetrahedron", key=(h, F(1, 8), h, 0, F(1, 4)))
    add("regular", "regular tetrahedron", lengths=[1] * 6)
    add("cube-corner", "corner of the unit cube",
        vertices=[(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    add("wedge", "flat right-angled wedge",
        vertices=[(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, F(1, 10))])
    # equilateral base of side 1/10 with apex height 1 over its center
    add("needle", "needle over an equilateral base of side 1/10",
        lengths={"01": F(1, 100), "02": F(1, 100), "12": F(1, 100),
                 "03": F(301, 300), "13": F(301, 300), "23": F(301, 300)})
    add("perturbed-sommerville", "Sommerville tetrahedron with one apex raised to 11/10",
        vertices=[(-1, 0, 0), (1, 0, 0), (0, -1, 1), (0, 1, F(11, 10))])
    add("halves-t-1/20", "halves key with t = 1/2 + 1/20", key=perturbation_family(5, F(1, 20)))
    add("tau1", "two-component perturbation of the halves key",
        key=_radical_key(h, (F(1, 40), 442), h, (F(5, 221), 442), (F(11, 442), 442)))
    add("tau-s1", "perturbed Sommerville tetrahedron feeding into tau1",
        key=_radical_key(F(100, 221), (F(5, 221), 926), F(100, 221), (F(105, 102323), 926),
                         (F(220, 102323), 102323)))
    add("tau2", "perturbation of the halves key with a 44-element orbit",
        key=_radical_key(h, (h, 1), F(53, 100), (F(49, 100), 1), (F(3, 5), 1)))
    for name, form in _NEARLY_REGULAR.items():
        add(name, "nearly regular tetrahedron", key=_radical_key(*form))
    return out


ENTRIES = _build()


def _canon(name: str) -> str:
    return name.strip().lower().replace("_", "-")


_BY_CANON = {_canon(n): n for n in ENTRIES}


def names() -> list:
    return list(ENTRIES)


def get(name: str) -> CatalogEntry:
    """Catalog entry by (case-insensitive) name.

    Raises
    ------
    UnknownName
        With close matches as suggestions.
    """
    c = _canon(name)
    if c in _BY_CANON:
        return ENTRIES[_BY_CANON[c]]
    close = difflib.get_close_matches(c, list(_BY_CANON), n=3, cutoff=0.5)
    raise UnknownName(name, [_BY_CANON[x] for x in close])


def export_json(indent: int = 2) -> str:
    """The whole catalog as a JSON document of input records."""
    return json.dumps({"entries": [e.to_json() for e in ENTRIES.values()]}, indent=indent)
