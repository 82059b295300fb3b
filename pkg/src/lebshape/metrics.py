"""Hyperbolic distances on the canonical space and tetrahedron quality."""
from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

from .shape import NormalizedPoint, ShapeKey, key_to_point

REGULAR_VOLUME = math.sqrt(2.0) / 12.0


class DomainError(ValueError):
    """A point is not in the upper half-plane or half-space."""


class EmptyCluster(ValueError):
    pass


class QualityReport(NamedTuple):
    min_dihedral_deg: float
    min_face_deg: float
    norm_volume_pct: float


def _arcosh(x: float) -> float:
    x = max(x, 1.0)
    return math.log(x + math.sqrt(x * x - 1.0))


def h2_distance(za: complex, zb: complex) -> float:
    """Distance between two points of the upper half-plane.

    Uses ``cosh d = 1 + |za - zb|**2 / (2 Im za Im zb)``.
    """
    za, zb = complex(za), complex(zb)
    if za.imag <= 0 or zb.imag <= 0:
        raise DomainError("imaginary parts must be positive")
    return _arcosh(1.0 + abs(za - zb) ** 2 / (2.0 * za.imag * zb.imag))


def h3_distance(a: Sequence, b: Sequence) -> float:
    """Distance between (w, t) points of the upper half-space, w complex, t > 0."""
    (wa, ta), (wb, tb) = a, b
    ta, tb = float(ta), float(tb)
    if ta <= 0 or tb <= 0:
        raise DomainError("heights must be positive")
    return _arcosh((abs(complex(wa) - complex(wb)) ** 2 + ta * ta + tb * tb) / (2.0 * ta * tb))


def _point(p) -> NormalizedPoint:
    if isinstance(p, NormalizedPoint):
        return p
    if isinstance(p, ShapeKey):
        return key_to_point(p)
    return key_to_point(ShapeKey.of(p))


def product_distance(pa, pb) -> float:
    """Product-metric distance sqrt(d_H2**2 + d_H3**2).

    Accepts NormalizedPoint or exact keys.
    """
    a, b = _point(pa), _point(pb)
    d2 = h2_distance(a.z, b.z)
    d3 = h3_distance((a.w, a.t), (b.w, b.t))
    return math.hypot(d2, d3)


def cluster_mean_distance(cluster: Sequence, ref) -> float:
    """Mean product distance from the members of ``cluster`` to ``ref``."""
    if len(cluster) == 0:
        raise EmptyCluster("cluster is empty")
    r = _point(ref)
    return sum(product_distance(c, r) for c in cluster) / len(cluster)


# vertex index triples (edge i-j, opposite k, l) for dihedral angles
_DIHEDRAL = ((0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2), (1, 2, 0, 3), (1, 3, 0, 2), (2, 3, 0, 1))
# face corners (apex, a, b)
_CORNERS = ((0, 1, 2), (1, 0, 2), (2, 0, 1), (0, 1, 3), (1, 0, 3), (3, 0, 1),
            (0, 2, 3), (2, 0, 3), (3, 0, 2), (1, 2, 3), (2, 1, 3), (3, 1, 2))


def _embed(points: np.ndarray) -> np.ndarray:
    # points: (n, 5) -> vertices (n, 4, 3)
    n = points.shape[0]
    v = np.zeros((n, 4, 3))
    v[:, 1, 0] = 1.0
    v[:, 2, 0] = points[:, 0]
    v[:, 2, 1] = points[:, 1]
    v[:, 3, 0] = points[:, 2]
    v[:, 3, 1] = points[:, 3]
    v[:, 3, 2] = points[:, 4]
    return v


def _angle(u: np.ndarray, w: np.ndarray) -> np.ndarray:
    c = np.einsum("ij,ij->i", u, w) / (np.linalg.norm(u, axis=1) * np.linalg.norm(w, axis=1))
    return np.degrees(np.arccos(np.clip(c, -1.0, 1.0)))


def quality_arrays(points) -> tuple:
    """Vectorized quality of many normalized points.

    Parameters
    ----------
    points : array_like, shape (n, 5)
        Rows (z1, z2, w1, w2, t).

    Returns
    -------
    min_dihedral_deg, min_face_deg, norm_volume_pct : ndarray, shape (n,)
    """
    p = np.asarray(points, dtype=float).reshape(-1, 5)
    v = _embed(p)
    face = np.full(len(p), np.inf)
    for a, b, c in _CORNERS:
        face = np.minimum(face, _angle(v[:, b] - v[:, a], v[:, c] - v[:, a]))
    dih = np.full(len(p), np.inf)
    for i, j, k, l in _DIHEDRAL:
        e = v[:, j] - v[:, i]
        e = e / np.linalg.norm(e, axis=1)[:, None]
        # components of the two opposite vertices orthogonal to the edge
        u = v[:, k] - v[:, i]
        w = v[:, l] - v[:, i]
        u = u - np.einsum("ij,ij->i", u, e)[:, None] * e
        w = w - np.einsum("ij,ij->i", w, e)[:, None] * e
        dih = np.minimum(dih, _angle(u, w))
    longest = np.sqrt(np.max([np.sum((v[:, a] - v[:, b]) ** 2, axis=1)
                              for a in range(4) for b in range(a + 1, 4)], axis=0))
    vol = np.abs(p[:, 1] * p[:, 4]) / 6.0 / longest ** 3
    return dih, face, 100.0 * vol / REGULAR_VOLUME


def quality(k) -> QualityReport:
    """Minimum dihedral angle, minimum face angle and normalized volume.

    The volume is reported as a percentage of the regular tetrahedron with
    the same longest edge.
    """
    dih, face, vol = quality_arrays([_point(k)])
    return QualityReport(float(dih[0]), float(face[0]), float(vol[0]))


def orbit_points(g) -> np.ndarray:
    """(n, 5) array of the floating-point points of all orbit nodes."""
    return np.array([key_to_point(k) for k in g.nodes], dtype=float).reshape(-1, 5)


def orbit_quality_series(g, points=None) -> list:
    """Per-iteration minima over the new shapes of each frontier."""
    if points is None:
        points = orbit_points(g)
    dih, face, vol = quality_arrays(points)
    out = []
    for fr in g.frontiers:
        idx = np.asarray(fr)
        out.append(QualityReport(float(dih[idx].min()), float(face[idx].min()), float(vol[idx].min())))
    return out


def running_minimum(series: Sequence[QualityReport]) -> QualityReport:
    """Componentwise minimum of a quality series."""
    return QualityReport(*(min(r[i] for r in series) for i in range(3)))
