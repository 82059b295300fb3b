"""Longest-edge bisection acting on normalized keys."""
from __future__ import annotations

from typing import NamedTuple, Sequence

from .shape import (
    ShapeKey,
    SquaredLengths,
    _EDGES_OF,
    _lengths_raw,
    _normalize_raw,
    check_lengths,
)


class ChildPair(NamedTuple):
    left: ShapeKey
    right: ShapeKey


def _split(ab, ac, ad, bc, bd, cd):
    # median lengths from the midpoint M of AB
    am = ab / 4
    mc = (2 * ac + 2 * bc - ab) / 4
    md = (2 * ad + 2 * bd - ab) / 4
    return (am, ac, ad, mc, md, cd), (am, mc, md, bc, bd, cd)


def bisect_lengths(s, lab: Sequence[int]) -> tuple:
    """Cut a tetrahedron through the midpoint of AB and the vertices C, D.

    Parameters
    ----------
    s : SquaredLengths
    lab : labeling (A, B, C, D); AB is the edge that gets cut

    Returns
    -------
    (SquaredLengths, SquaredLengths)
        The left child AMCD and the right child MBCD, each in the vertex
        order written.
    """
    s = SquaredLengths(s)
    e = _EDGES_OF[tuple(lab)]
    left, right = _split(*(s[i] for i in e))
    return SquaredLengths(left), SquaredLengths(right)


def _children(k, tie_break: str = "canonical", strict: bool = False) -> ChildPair:
    # the embedding of a key already has AB as its unit-length longest edge,
    # and for a canonical key the identity order is the first canonical labeling
    left, right = _split(*_lengths_raw(*k))
    return ChildPair(
        _normalize_raw(left, tie_break, strict),
        _normalize_raw(right, tie_break, strict),
    )


def children(k, tie_break: str = "canonical", strict: bool = False) -> ChildPair:
    """Both bisection children of a normalized tetrahedron."""
    k = ShapeKey.of(k)
    check_lengths(_lengths_raw(*k))
    return _children(k, tie_break, strict)


def phi_left(k, tie_break: str = "canonical", strict: bool = False) -> ShapeKey:
    """Normalized left child AMCD."""
    return children(k, tie_break, strict).left


def phi_right(k, tie_break: str = "canonical", strict: bool = False) -> ShapeKey:
    """Normalized right child MBCD."""
    return children(k, tie_break, strict).right


def apply_word(k, word: str, tie_break: str = "canonical") -> list:
    """Keys visited by applying a word over {L, R}, starting with ``k``."""
    out = [ShapeKey.of(k)]
    for ch in word.upper():
        if ch not in "LR":
            raise ValueError("word letters must be L or R, got %r" % ch)
        pair = children(out[-1], tie_break)
        out.append(pair.left if ch == "L" else pair.right)
    return out
