"""Breadth-first enumeration of bisection orbits."""
from __future__ import annotations

import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Union

from .leb import _children
from .shape import ShapeKey, as_rational, check_lengths, key_to_point, validate_key, _lengths_raw


class InvalidPerturbation(ValueError):
    """A perturbed key falls outside the canonical space."""


class NotReachable(LookupError):
    pass


@dataclass(frozen=True)
class DedupMode:
    """How two children are judged to be the same shape.

    ``digits=None`` compares exact keys; an integer compares the
    floating-point point rounded to that many decimals.
    """

    digits: Optional[int] = None

    def __post_init__(self):
        if self.digits is not None and (not isinstance(self.digits, int) or self.digits < 1):
            raise ValueError("digits must be a positive integer")

    @classmethod
    def exact(cls) -> "DedupMode":
        return cls(None)

    @classmethod
    def rounded(cls, digits: int = 10) -> "DedupMode":
        return cls(digits)

    @classmethod
    def parse(cls, text: str) -> "DedupMode":
        """Parse ``"exact"``, ``"rounded"`` or ``"rounded:N"``."""
        t = text.strip().lower()
        if t == "exact":
            return cls.exact()
        if t == "rounded":
            return cls.rounded()
        if t.startswith("rounded:"):
            try:
                return cls.rounded(int(t.split(":", 1)[1]))
            except ValueError as exc:
                raise ValueError("bad mode %r" % text) from exc
        raise ValueError("mode must be exact or rounded[:digits], got %r" % text)

    @property
    def is_exact(self) -> bool:
        return self.digits is None

    def identity(self, k):
        if self.digits is None:
            return k
        return rounded_identity(k, self.digits)

    def __str__(self) -> str:
        return "exact" if self.digits is None else "rounded:%d" % self.digits


Exact = DedupMode.exact()


def Rounded(digits: int = 10) -> DedupMode:
    return DedupMode.rounded(digits)


def rounded_identity(k, digits: int = 10) -> tuple:
    """Decimal strings of the point components rounded to ``digits`` places."""
    out = []
    for x in key_to_point(k):
        s = "%.*f" % (digits, x)
        if s.startswith("-") and not s.strip("-0."):
            s = s[1:]
        out.append(s)
    return tuple(out)


@dataclass
class OrbitGraph:
    """Nodes, labeled edges and breadth-first frontiers of an orbit.

    ``edges`` holds (source index, "L" or "R", target index).  Nodes of the
    last frontier of an open orbit have no outgoing edges.
    """

    nodes: list
    edges: list
    frontiers: list
    closed: bool
    mode: DedupMode = field(default_factory=DedupMode)
    index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.index:
            self.index = {self.mode.identity(k): i for i, k in enumerate(self.nodes)}

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def root(self) -> ShapeKey:
        return self.nodes[0]

    def lookup(self, k) -> int:
        """Node index of a key, or KeyError."""
        return self.index[self.mode.identity(ShapeKey.of(k))]

    def __contains__(self, k) -> bool:
        try:
            self.lookup(k)
        except KeyError:
            return False
        return True

    def successors(self, i: int) -> list:
        if not hasattr(self, "_succ"):
            succ = [[] for _ in self.nodes]
            for a, lab, b in self.edges:
                succ[a].append((lab, b))
            for lst in succ:
                lst.sort()
            self._succ = succ
        return self._succ[i]

    def iteration_of(self) -> list:
        """Frontier number of each node."""
        it = [0] * len(self.nodes)
        for n, fr in enumerate(self.frontiers):
            for i in fr:
                it[i] = n
        return it


def _batch(keys, tie_break, digits):
    out = []
    for k in keys:
        ch = _children(k, tie_break)
        if digits is None:
            out.append((ch, None))
        else:
            out.append((ch, (rounded_identity(ch.left, digits), rounded_identity(ch.right, digits))))
    return out


_PARALLEL_MIN = 2048


def explore(root, max_iter: int = 40, mode: DedupMode = Exact,
            tie_break: str = "canonical", threads: int = 1,
            max_nodes: Optional[int] = None) -> OrbitGraph:
    """Enumerate the orbit of ``root`` frontier by frontier.

    Parameters
    ----------
    root : ShapeKey
        Used as given; it is not renormalized.
    max_iter : int
        Number of bisection rounds.  Frontiers 0..max_iter are produced.
    mode : DedupMode
        Exact keys, or rounded floating-point points.
    threads : int
        Worker processes for large frontiers.  The result does not depend on it.
    max_nodes : int, optional
        Stop (with ``closed`` False) once a frontier pushes the node count
        past this budget.

    Returns
    -------
    OrbitGraph
        ``closed`` is True when a frontier came out empty.
    """
    root = ShapeKey.of(root)
    check_lengths(_lengths_raw(*root))
    if max_iter < 0:
        raise ValueError("max_iter must be non-negative")
    digits = mode.digits
    index = {mode.identity(root): 0}
    nodes = [root]
    edges = []
    frontiers = [[0]]
    closed = False
    pool = None
    try:
        for _ in range(max_iter):
            front = frontiers[-1]
            keys = [nodes[i] for i in front]
            if threads > 1 and len(keys) >= _PARALLEL_MIN:
                if pool is None:
                    pool = ProcessPoolExecutor(threads)
                size = -(-len(keys) // (4 * threads))
                parts = [keys[j:j + size] for j in range(0, len(keys), size)]
                results = []
                for r in pool.map(_batch, parts, [tie_break] * len(parts), [digits] * len(parts)):
                    results.extend(r)
            else:
                results = _batch(keys, tie_break, digits)
            new = []
            for src, (pair, ids) in zip(front, results):
                for n, (lab, child) in enumerate((("L", pair.left), ("R", pair.right))):
                    ident = child if ids is None else ids[n]
                    j = index.get(ident)
                    if j is None:
                        j = len(nodes)
                        index[ident] = j
                        nodes.append(child)
                        new.append(j)
                    edges.append((src, lab, j))
            if not new:
                closed = True
                break
            frontiers.append(new)
            if max_nodes is not None and len(nodes) > max_nodes:
                break
    finally:
        if pool is not None:
            pool.shutdown()
    return OrbitGraph(nodes, edges, frontiers, closed, mode, index)


def orbit_length(g: OrbitGraph) -> Union[int, str]:
    """Node count of a closed orbit, otherwise ``"open"``."""
    return len(g.nodes) if g.closed else "open"


def frontier_counts(g: OrbitGraph) -> list:
    """Number of new shapes per iteration; a closed orbit ends with 0."""
    counts = [len(fr) for fr in g.frontiers]
    if g.closed:
        counts.append(0)
    return counts


def find_word(g: OrbitGraph, start, goal) -> str:
    """Shortest L/R word leading from ``start`` to ``goal`` inside ``g``.

    Breadth-first, trying L before R, so the word returned is the
    lexicographically smallest among the shortest ones.
    """
    try:
        a = g.lookup(start)
        b = g.lookup(goal)
    except KeyError as exc:
        raise NotReachable("key not in graph") from exc
    prev = {a: None}
    q = deque([a])
    while q:
        i = q.popleft()
        if i == b:
            break
        for lab, j in g.successors(i):
            if j not in prev:
                prev[j] = (i, lab)
                q.append(j)
    if b not in prev:
        raise NotReachable("no path between the given keys")
    word = []
    i = b
    while prev[i] is not None:
        i, lab = prev[i]
        word.append(lab)
    return "".join(reversed(word))


def cycles(g: OrbitGraph, max_length: Optional[int] = None, limit: int = 100) -> list:
    """Simple directed cycles of the graph as lists of node indices."""
    import networkx as nx

    dg = nx.DiGraph()
    dg.add_nodes_from(range(len(g.nodes)))
    dg.add_edges_from((a, b) for a, _, b in g.edges)
    out = []
    for c in nx.simple_cycles(dg, length_bound=max_length):
        # rotate so the smallest index comes first, for stable output
        m = c.index(min(c))
        out.append(c[m:] + c[:m])
        if len(out) >= limit:
            break
    out.sort(key=lambda c: (len(c), c))
    return out


def sweep(template: Callable, alphas: Iterable, max_iter: int = 100, mode: DedupMode = Exact,
          on_invalid: str = "raise", tie_break: str = "canonical",
          max_nodes: Optional[int] = 20000) -> list:
    """Orbit length for each member of a one-parameter family of keys.

    Parameters
    ----------
    template : callable
        Maps a rational alpha to a key.
    max_nodes : int, optional
        Budget per orbit; an orbit exceeding it is reported as open.
    on_invalid : {"raise", "flag"}
        Raise InvalidPerturbation for a key outside the canonical space,
        or report it as ``"invalid"``.

    Returns
    -------
    list of (alpha, int or "open" or "invalid")
    """
    rows = []
    for a in alphas:
        a = as_rational(a)
        try:
            k = ShapeKey.of(template(a))
            bad = validate_key(k)
            if bad:
                raise InvalidPerturbation("alpha=%s violates %s" % (a, ", ".join(bad)))
        except InvalidPerturbation:
            if on_invalid == "raise":
                raise
            rows.append((a, "invalid"))
            continue
        rows.append((a, orbit_length(explore(k, max_iter, mode, tie_break, max_nodes=max_nodes))))
    return rows


def default_threads() -> int:
    return os.cpu_count() or 1
