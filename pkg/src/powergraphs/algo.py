"""Exact graph algorithms on bitset graphs.

Every function accepts any object with a ``rows`` attribute (a sequence of
``int`` bitsets, as on :class:`~powergraphs.graph.BitGraph`) or the sequence
itself. Results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .config import default_limits
from .errors import ResourceError, UsageError
from .graph import iter_bits

__all__ = [
    "ComponentPartition",
    "DiameterResult",
    "MaximalCliques",
    "UNREACHABLE",
    "connected_components",
    "is_connected",
    "distance",
    "bfs_distances",
    "diameter",
    "clique_number_exact",
    "maximal_cliques",
    "is_complete",
]

UNREACHABLE = None


def _rows(graph) -> Sequence[int]:
    return graph.rows if hasattr(graph, "rows") else graph


def _check_vertex(rows: Sequence[int], v: int) -> None:
    if not 0 <= v < len(rows):
        raise UsageError(f"vertex {v} out of range 0..{len(rows) - 1}")


@dataclass(frozen=True)
class ComponentPartition:
    component_id: tuple[int, ...]
    count: int
    sizes: tuple[int, ...]

    def members(self, cid: int) -> list[int]:
        return [v for v, c in enumerate(self.component_id) if c == cid]


def _reach(rows: Sequence[int], source: int) -> int:
    seen = frontier = 1 << source
    while frontier:
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= rows[u]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def connected_components(graph) -> ComponentPartition:
    """Reachability classes, numbered in order of their smallest vertex."""
    rows = _rows(graph)
    n = len(rows)
    ids = [-1] * n
    sizes = []
    for v in range(n):
        if ids[v] >= 0:
            continue
        comp = _reach(rows, v)
        for u in iter_bits(comp):
            ids[u] = len(sizes)
        sizes.append(comp.bit_count())
    return ComponentPartition(tuple(ids), len(sizes), tuple(sizes))


def is_connected(graph) -> bool:
    """0- and 1-vertex graphs count as connected."""
    rows = _rows(graph)
    return len(rows) <= 1 or _reach(rows, 0).bit_count() == len(rows)


def bfs_distances(graph, source: int) -> list[int | None]:
    rows = _rows(graph)
    _check_vertex(rows, source)
    dist: list[int | None] = [None] * len(rows)
    seen = frontier = 1 << source
    level = 0
    while frontier:
        for u in iter_bits(frontier):
            dist[u] = level
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= rows[u]
        frontier = nxt & ~seen
        seen |= frontier
        level += 1
    return dist


def distance(graph, u: int, v: int) -> int | None:
    """Shortest-path length, or ``UNREACHABLE`` (``None``)."""
    rows = _rows(graph)
    _check_vertex(rows, u)
    _check_vertex(rows, v)
    target = 1 << v
    seen = frontier = 1 << u
    level = 0
    while frontier:
        if frontier & target:
            return level
        nxt = 0
        for w in iter_bits(frontier):
            nxt |= rows[w]
        frontier = nxt & ~seen
        seen |= frontier
        level += 1
    return UNREACHABLE


@dataclass(frozen=True)
class DiameterResult:
    """``value`` is the diameter, or ``None`` when the graph is disconnected."""

    value: int | None
    eccentricity: tuple[int, ...]

    @property
    def connected(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        return "disconnected" if self.value is None else str(self.value)


def _twin_classes(rows: Sequence[int]) -> tuple[list[int], list[int]]:
    """Group vertices with identical closed neighbourhoods.

    Returns the class of each vertex and one representative per class.
    """
    cls_of: dict[int, int] = {}
    labels = []
    reps = []
    for v, row in enumerate(rows):
        key = row | 1 << v
        if key not in cls_of:
            cls_of[key] = len(reps)
            reps.append(v)
        labels.append(cls_of[key])
    return labels, reps


def diameter(graph) -> DiameterResult:
    """All-pairs BFS diameter with per-vertex eccentricity (within each component).

    True twins (equal closed neighbourhoods) are at distance 1 from each other
    and have equal distances to everything else, so BFS runs once per twin
    class on the quotient graph. Power graphs collapse heavily under this.
    """
    rows = _rows(graph)
    n = len(rows)
    if n <= 1:
        return DiameterResult(0, (0,) * n)
    labels, reps = _twin_classes(rows)
    k = len(reps)
    sizes = [0] * k
    for c in labels:
        sizes[c] += 1
    qrows = []
    for c, v in enumerate(reps):
        bits = 0
        for u in iter_bits(rows[v]):
            bits |= 1 << labels[u]
        qrows.append(bits & ~(1 << c))
    qecc = []
    connected = True
    for c in range(k):
        dist = bfs_distances(qrows, c)
        reached = [d for d in dist if d is not None]
        if len(reached) < k:
            connected = False
        e = max(reached)
        if sizes[c] > 1:
            e = max(e, 1)
        qecc.append(e)
    ecc = tuple(qecc[labels[v]] for v in range(n))
    return DiameterResult(max(ecc) if connected else None, ecc)


def is_complete(graph) -> bool:
    rows = _rows(graph)
    full = (1 << len(rows)) - 1
    return all(row | 1 << v == full for v, row in enumerate(rows))


def _color_sort(rows: Sequence[int], cand: int) -> tuple[list[int], list[int]]:
    """Greedy colouring of ``cand``; vertices come out in non-decreasing colour order."""
    order: list[int] = []
    colors: list[int] = []
    uncolored = cand
    color = 0
    while uncolored:
        color += 1
        avail = uncolored
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            avail &= ~rows[v] & ~low
            uncolored &= ~low
            order.append(v)
            colors.append(color)
    return order, colors


def clique_number_exact(graph, cap: int | None = None) -> int:
    """Maximum clique size by branch and bound with a greedy-colouring bound."""
    rows = _rows(graph)
    n = len(rows)
    if cap is None:
        cap = default_limits().clique_vertex_cap
    if n > cap:
        raise ResourceError(
            f"{n} vertices exceeds the exact clique cap of {cap}; use the weight formula instead"
        )
    if n == 0:
        return 0
    best = 0

    def expand(size: int, cand: int) -> None:
        nonlocal best
        order, colors = _color_sort(rows, cand)
        for idx in range(len(order) - 1, -1, -1):
            if size + colors[idx] <= best:
                return
            v = order[idx]
            sub = cand & rows[v]
            if sub:
                expand(size + 1, sub)
            elif size + 1 > best:
                best = size + 1
            cand &= ~(1 << v)

    expand(0, (1 << n) - 1)
    return best


@dataclass(frozen=True)
class MaximalCliques:
    cliques: tuple[tuple[int, ...], ...]
    truncated: bool

    def __len__(self) -> int:
        return len(self.cliques)

    def __iter__(self):
        return iter(self.cliques)


class _Stop(Exception):
    pass


def maximal_cliques(graph, limit: int = 100_000) -> MaximalCliques:
    """All inclusion-maximal cliques (Bron-Kerbosch with Tomita pivoting).

    At most ``limit`` cliques are returned; ``truncated`` is set when more
    exist. Cliques are sorted lexicographically.
    """
    rows = _rows(graph)
    n = len(rows)
    found: list[tuple[int, ...]] = []
    truncated = False

    def bk(r: list[int], p: int, x: int) -> None:
        if not p and not x:
            if len(found) >= limit:
                raise _Stop
            found.append(tuple(sorted(r)))
            return
        pivot_pool = p | x
        pivot = max(iter_bits(pivot_pool), key=lambda u: (rows[u] & p).bit_count())
        for v in iter_bits(p & ~rows[pivot]):
            r.append(v)
            bk(r, p & rows[v], x & rows[v])
            r.pop()
            p &= ~(1 << v)
            x |= 1 << v

    if n:
        try:
            bk([], (1 << n) - 1, 0)
        except _Stop:
            truncated = True
    return MaximalCliques(tuple(sorted(found)), truncated)
