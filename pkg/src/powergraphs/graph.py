"""Power graphs of a finite group and the prime-order linkage graph.

Adjacency is held as one Python ``int`` bitset per vertex position: bit ``v``
of ``rows[u]`` is set iff ``u ~ v`` (or the arc ``u -> v`` for the directed
variant). Vertex positions follow ascending element id.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Sequence

import numpy as np

from .divisors import is_prime
from .errors import UsageError
from .group import Group

__all__ = [
    "Variant",
    "BitGraph",
    "PowerGraph",
    "LinkageGraph",
    "build_power_graph",
    "reduced_power_graph",
    "closed_neighborhood",
    "build_linkage_graph",
    "export_graph",
    "iter_bits",
]


class Variant(str, Enum):
    REDUCED = "reduced"
    FULL = "full"
    CUSTOM = "custom"
    DIRECTED = "directed"


def iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _bool_rows_to_ints(mat: np.ndarray) -> tuple[int, ...]:
    if mat.shape[0] == 0:
        return ()
    packed = np.packbits(mat, axis=1, bitorder="little")
    return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)


@dataclass(frozen=True)
class BitGraph:
    """A plain graph on positions ``0..n-1`` with bitset rows."""

    rows: tuple[int, ...]
    directed: bool = False

    @property
    def n(self) -> int:
        return len(self.rows)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` in lexicographic order; ``u < v`` unless directed."""
        out = []
        for u, row in enumerate(self.rows):
            if not self.directed:
                row >>= u + 1
                out.extend((u, u + 1 + v) for v in iter_bits(row))
            else:
                out.extend((u, v) for v in iter_bits(row))
        return out

    def edge_count(self) -> int:
        total = sum(row.bit_count() for row in self.rows)
        return total if self.directed else total // 2

    def neighbors(self, u: int) -> list[int]:
        return list(iter_bits(self.rows[u]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "BitGraph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise UsageError(f"self-loop at {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(tuple(rows))

    @classmethod
    def complete(cls, n: int) -> "BitGraph":
        full = (1 << n) - 1
        return cls(tuple(full ^ (1 << u) for u in range(n)))

    @classmethod
    def empty(cls, n: int) -> "BitGraph":
        return cls((0,) * n)


@dataclass(frozen=True)
class PowerGraph(BitGraph):
    group: Group | None = field(default=None, compare=False)
    vertices: tuple[int, ...] = ()
    variant: Variant = Variant.REDUCED

    def position(self, element: int) -> int:
        try:
            return self.vertices.index(element)
        except ValueError:
            raise UsageError(f"element {element} is not a vertex of this graph") from None


def build_power_graph(
    G: Group,
    variant: Variant | str = Variant.REDUCED,
    custom_subset: Iterable[int] | None = None,
) -> PowerGraph:
    """Power graph of ``G`` on the vertex set selected by ``variant``.

    ``reduced`` drops the identity, ``full`` keeps every element, ``custom``
    uses ``custom_subset``. ``directed`` has an arc ``x -> y`` iff ``y`` is a
    power of ``x`` and ``x != y``; its vertex set is all of ``G`` unless a
    subset is given.
    """
    try:
        variant = Variant(variant)
    except ValueError:
        raise UsageError(f"unknown variant {variant!r}; expected reduced, full, custom or directed") from None
    if variant is Variant.CUSTOM and custom_subset is None:
        raise UsageError("custom variant needs a vertex subset")
    if custom_subset is not None and variant in (Variant.REDUCED, Variant.FULL):
        raise UsageError(f"{variant.value} variant does not take a vertex subset")
    if custom_subset is not None:
        verts = sorted(set(int(x) for x in custom_subset))
        bad = [x for x in verts if not 0 <= x < G.order]
        if bad:
            raise UsageError(f"subset ids {bad} out of range for {G.name} (order {G.order})")
    elif variant is Variant.REDUCED:
        verts = list(range(1, G.order))
    else:
        verts = list(range(G.order))
    idx = np.array(verts, dtype=np.intp)
    member = G.power_membership[np.ix_(idx, idx)]
    adj = member.copy() if variant is Variant.DIRECTED else (member | member.T)
    np.fill_diagonal(adj, False)
    return PowerGraph(
        rows=_bool_rows_to_ints(adj),
        directed=variant is Variant.DIRECTED,
        group=G,
        vertices=tuple(verts),
        variant=variant,
    )


def reduced_power_graph(G: Group) -> PowerGraph:
    return build_power_graph(G, Variant.REDUCED)


def closed_neighborhood(graph: BitGraph, v: int) -> frozenset[int]:
    if not 0 <= v < graph.n:
        raise UsageError(f"vertex position {v} out of range 0..{graph.n - 1}")
    return frozenset(iter_bits(graph.rows[v] | 1 << v))


@dataclass(frozen=True)
class LinkageGraph(BitGraph):
    """Prime-order cyclic subgroups, joined when a single element of order ``p*q`` contains both.

    ``nodes[i]`` is ``(generator, p)`` with the smallest generator id of the
    subgroup; ``witnesses[(i, j)]`` (``i < j``) is the smallest such element.
    """

    group: Group | None = field(default=None, compare=False)
    nodes: tuple[tuple[int, int], ...] = ()
    witnesses: dict[tuple[int, int], int] = field(default_factory=dict, compare=False)


def build_linkage_graph(G: Group) -> LinkageGraph:
    orders = G.elem_order
    member = G.power_membership
    node_of: dict[int, int] = {}
    nodes: list[tuple[int, int]] = []
    prime_elems = [a for a in range(G.order) if is_prime(int(orders[a]))]
    keyed = sorted(prime_elems, key=lambda a: (int(orders[a]), a))
    for a in keyed:
        if a in node_of:
            continue
        node_of.update({int(x): len(nodes) for x in np.flatnonzero(member[a]) if x != 0})
        nodes.append((a, int(orders[a])))
    witnesses: dict[tuple[int, int], int] = {}
    rows = [0] * len(nodes)
    for z in range(G.order):
        o = int(orders[z])
        if not _small_prime_split(o):
            continue
        inside = sorted({node_of[int(x)] for x in np.flatnonzero(member[z]) if int(x) in node_of})
        for i in range(len(inside)):
            for j in range(i + 1, len(inside)):
                key = (inside[i], inside[j])
                if key not in witnesses:
                    witnesses[key] = z
                    rows[key[0]] |= 1 << key[1]
                    rows[key[1]] |= 1 << key[0]
    return LinkageGraph(rows=tuple(rows), group=G, nodes=tuple(nodes), witnesses=witnesses)


def _small_prime_split(o: int) -> list[int]:
    """``[p, q]`` when ``o == p*q`` for primes ``p <= q``, else ``[]``."""
    for p in range(2, int(o**0.5) + 1):
        if o % p == 0:
            q = o // p
            return [p, q] if is_prime(p) and is_prime(q) else []
    return []


# export -----------------------------------------------------------------------


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def export_graph(graph: PowerGraph, fmt: str) -> bytes:
    """Serialize as ``edgelist``, ``dot`` or ``json``; output is deterministic."""
    edges = graph.edges()
    G = graph.group
    if fmt == "edgelist":
        lines = [f"p {graph.n} {len(edges)}"]
        lines.extend(f"{u} {v}" for u, v in edges)
        return ("\n".join(lines) + "\n").encode()
    if fmt == "dot":
        kind, arrow = ("digraph", "->") if graph.directed else ("graph", "--")
        lines = [f"{kind} G {{"]
        for pos, x in enumerate(graph.vertices):
            label = _dot_escape(G.labels[x])
            lines.append(f'  v{pos} [label="{label} (o={int(G.elem_order[x])})"];')
        lines.extend(f"  v{u} {arrow} v{v};" for u, v in edges)
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    if fmt == "json":
        doc = {
            "group": G.name,
            "variant": graph.variant.value,
            "vertices": [
                {"id": pos, "label": G.labels[x], "order": int(G.elem_order[x])}
                for pos, x in enumerate(graph.vertices)
            ],
            "edges": [[u, v] for u, v in edges],
        }
        return (json.dumps(doc, separators=(",", ":")) + "\n").encode()
    raise UsageError(f"unknown export format {fmt!r}; expected dot, edgelist or json")


def adjacency_by_definition(G: Group, verts: Sequence[int], directed: bool = False) -> list[list[bool]]:
    """Adjacency recomputed by raising every element to every power; slow, for cross-checks."""
    powers = {x: set(G.powers(x)) for x in verts}
    n = len(verts)
    out = [[False] * n for _ in range(n)]
    for i, x in enumerate(verts):
        for j, y in enumerate(verts):
            if i == j:
                continue
            out[i][j] = y in powers[x] if directed else (y in powers[x] or x in powers[y])
    return out
