"""Parse normalized points written with fractions and square roots."""
import math
import re
from fractions import Fraction

from lebshape.shape import ShapeKey

_NUM = re.compile(
    r"""\s*(?P<sign>[+-]?)\s*
    (?:
        \\frac\{\s*(?P<fc>\d*)\s*(?:\\sqrt\{(?P<fr>\d+)\})?\s*\}\{(?P<fd>\d+)\}
      | (?P<ic>\d*)\s*\\sqrt\{(?P<ir>\d+)\}
      | (?P<int>\d+)
    )\s*""",
    re.VERBOSE,
)


def parse_number(text):
    """``"\\frac{5 \\sqrt{2}}{3}"`` -> (Fraction(5, 3), 2), meaning (5/3) * sqrt(2)."""
    m = _NUM.fullmatch(text)
    if not m:
        raise ValueError("cannot parse %r" % text)
    if m.group("fd") is not None:
        c = Fraction(int(m.group("fc") or 1), int(m.group("fd")))
        r = int(m.group("fr") or 1)
    elif m.group("ir") is not None:
        c = Fraction(int(m.group("ic") or 1))
        r = int(m.group("ir"))
    else:
        c, r = Fraction(int(m.group("int"))), 1
    return (-c if m.group("sign") == "-" else c), r


def _complex(text):
    text = text.strip()
    if not text.endswith("i"):
        raise ValueError("expected a complex number, got %r" % text)
    body = text[:-1].strip()
    # the real part is the first term; everything after the top-level +/- is imaginary
    m = re.match(r"(\\frac\{[^{}]*(?:\{[^{}]*\}[^{}]*)*\}\{\d+\}|\d+)\s*(\+\s*-|\+|-)\s*(.*)$", body)
    if not m:
        raise ValueError("cannot split %r" % text)
    re_part = parse_number(m.group(1))
    sign = "-" if "-" in m.group(2) else ""
    return re_part, parse_number(sign + m.group(3))


def parse_point(text):
    """Split ``(z, (w, t))`` into five (coef, radicand) pairs."""
    s = text.replace("\\left", "").replace("\\right", "").strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError("expected parentheses around %r" % text)
    z, rest = s[1:-1].split(",", 1)
    rest = rest.strip()[1:-1]
    w, t = rest.rsplit(",", 1)
    (z1, z2), (w1, w2) = _complex(z), _complex(w)
    return z1, z2, w1, w2, parse_number(t)


def to_key(point):
    """Exact key from five (coef, radicand) pairs by squaring."""
    (z1c, z1r), (z2c, z2r), (w1c, w1r), (w2c, w2r), (tc, tr) = point
    if z1r != 1 or w1r != 1:
        raise ValueError("real parts must be rational")
    if w2c and w2r != z2r:
        raise ValueError("w2 and z2 must share a radicand")
    return ShapeKey.of(z1c, z2c * z2c * z2r, w1c, w2c * z2c * z2r, tc * tc * tr)


def to_floats(point):
    return tuple(float(c) * math.sqrt(r) for c, r in point)


def key_of(text):
    return to_key(parse_point(text))
