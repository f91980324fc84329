"""Simple undirected graphs on at most 64 vertices stored as adjacency bitsets.

A :class:`Graph` is immutable; every helper here returns a new graph.  Vertex
``v`` is bit ``1 << v`` of an adjacency row.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64


class GraphError(ValueError):
    """Invalid graph construction or argument."""


class Graph6Error(ValueError):
    """Base class for graph6 decoding failures."""


class MalformedHeaderError(Graph6Error):
    pass


class TruncatedPayloadError(Graph6Error):
    pass


class GraphTooLargeError(Graph6Error):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count must be in 1..{MAX_VERTICES}, got {self.n}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"row {v} has bits outside 0..{self.n - 1}")
            if row >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            rest = row
            while rest:
                low = rest & -rest
                u = low.bit_length() - 1
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")
                rest ^= low

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        out = []
        for u, row in enumerate(self.adj):
            higher = row >> (u + 1)
            v = u + 1
            while higher:
                if higher & 1:
                    out.append((u, v))
                higher >>= 1
                v += 1
        return out

    def neighbours(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def remove_edge(self, u: int, v: int) -> "Graph":
        rows = list(self.adj)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def add_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise GraphError("loops are not allowed")
        rows = list(self.adj)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, relabelled so ``vertices[i]`` becomes ``i``."""
        pos = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            rows.append(sum(1 << pos[u] for u in iter_bits(self.adj[v]) if u in pos))
        return Graph(len(vertices), tuple(rows))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph in which old vertex ``v`` is renamed ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# -- standard families -------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Graph.from_edges(offset, edges)


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


def turan_graph(n: int, r: int) -> Graph:
    """Balanced complete ``r``-partite graph; vertex ``i`` lies in part ``i % r``."""
    if not 1 <= r <= n:
        raise GraphError(f"need 1 <= r <= n, got r={r}, n={n}")
    return Graph.from_edges(n, ((u, v) for u, v in combinations(range(n), 2) if u % r != v % r))


def turan_part_sizes(n: int, r: int) -> list[int]:
    return [len(range(i, n, r)) for i in range(r)]


@dataclass(frozen=True)
class HairySpec:
    base: Graph
    attachments: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "attachments", tuple(self.attachments))
        for a in self.attachments:
            if not 0 <= a < self.base.n:
                raise GraphError(f"attachment index {a} out of range for base on {self.base.n} vertices")


def make_hairy(spec: HairySpec) -> Graph:
    """Add one new pendant vertex per attachment entry."""
    base = spec.base
    n = base.n + len(spec.attachments)
    edges = base.edges() + [(a, base.n + i) for i, a in enumerate(spec.attachments)]
    return Graph.from_edges(n, edges)


# -- structure -----------------------------------------------------------------

def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by smallest vertex."""
    seen = 0
    out = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = 1 << s
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        out.append(list(iter_bits(comp)))
    return out


def component_count(g: Graph) -> int:
    return len(components(g))


def is_connected(g: Graph) -> bool:
    return component_count(g) == 1


def strip_isolated(g: Graph) -> Graph:
    keep = [v for v in range(g.n) if g.adj[v]]
    if not keep:
        raise GraphError("graph has no edges")
    return g.induced(keep)


def is_turan(g: Graph, r: int) -> bool:
    """True iff ``g`` is complete ``r``-partite with part sizes differing by at most one."""
    if not 1 <= r <= g.n:
        return False
    # in a complete multipartite graph the parts are the components of the complement
    parts = components(complement(g))
    if len(parts) != r:
        return False
    sizes = [len(p) for p in parts]
    if max(sizes) - min(sizes) > 1:
        return False
    full = (1 << g.n) - 1
    for p in parts:
        pmask = sum(1 << v for v in p)
        for v in p:
            if g.adj[v] != full & ~pmask:
                return False
    return True


# -- canonical form ------------------------------------------------------------

def _refine(nbrs: list[list[int]], colours: list[int]) -> list[int]:
    """Colour refinement to the coarsest equitable partition finer than ``colours``.

    Colours are ranks of label-independent signatures, so the result is
    equivariant under relabelling.
    """
    cells = len(set(colours))
    while cells < len(nbrs):
        sigs = [(colours[v], tuple(sorted([colours[u] for u in nb]))) for v, nb in enumerate(nbrs)]
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        if len(ranking) == cells:
            break
        colours = [ranking[s] for s in sigs]
        cells = len(ranking)
    return colours


def _leaf_key(g: Graph, colours: list[int]) -> bytes:
    # colours is a discrete partition; vertices are laid out by colour
    n = g.n
    order = sorted(range(n), key=colours.__getitem__)
    bits = 0
    for i in range(n):
        row = g.adj[order[i]]
        for j in range(i + 1, n):
            bits = bits << 1 | (row >> order[j] & 1)
    nbytes = (n * (n - 1) // 2 + 7) // 8
    return bytes([n]) + bits.to_bytes(max(nbytes, 1), "big")


def _twins(g: Graph, u: int, v: int) -> bool:
    mask = ~((1 << u) | (1 << v))
    return (g.adj[u] & mask) == (g.adj[v] & mask)


def _search(g: Graph, nbrs: list[list[int]], colours: list[int]) -> bytes:
    colours = _refine(nbrs, colours)
    n = g.n
    if len(set(colours)) == n:
        return _leaf_key(g, colours)
    sizes: dict[int, list[int]] = {}
    for v, c in enumerate(colours):
        sizes.setdefault(c, []).append(v)
    target = min(c for c, vs in sizes.items() if len(vs) > 1)
    best = b""
    tried: list[int] = []
    for v in sizes[target]:
        # swapping two twins in the same cell is an automorphism fixing the
        # current partition, so their subtrees give the same leaves
        if any(_twins(g, v, u) for u in tried):
            continue
        tried.append(v)
        child = [2 * c + 1 for c in colours]
        child[v] = 2 * target
        key = _search(g, nbrs, child)
        if key > best:
            best = key
    return best


def canonical_form(g: Graph) -> bytes:
    """Isomorphism-invariant byte string: equal iff the graphs are isomorphic."""
    return _search(g, [list(iter_bits(row)) for row in g.adj], [0] * g.n)


def canonical_graph(form: bytes) -> Graph:
    """Graph whose canonical adjacency matrix is encoded by ``form``."""
    n = form[0]
    m = n * (n - 1) // 2
    nbytes = max((m + 7) // 8, 1)
    bits = int.from_bytes(form[1:1 + nbytes], "big")
    edges = []
    k = m - 1
    for i in range(n):
        for j in range(i + 1, n):
            if bits >> k & 1:
                edges.append((i, j))
            k -= 1
    return Graph.from_edges(n, edges)


def nonisomorphic_graphs(n: int, connected: bool = False) -> list[Graph]:
    """One representative per isomorphism class of ``n``-vertex graphs.

    Built by adding a vertex with every possible neighbourhood to each class on
    ``n - 1`` vertices and deduplicating by canonical form; every graph arises
    this way since deleting any vertex gives a smaller class.
    """
    if n < 1:
        raise GraphError("n must be positive")
    level = {canonical_form(empty_graph(1)): empty_graph(1)}
    for m in range(2, n + 1):
        nxt: dict[bytes, Graph] = {}
        for form in sorted(level):
            g = level[form]
            for nbhd in range(1 << (m - 1)):
                rows = [row | ((nbhd >> v & 1) << (m - 1)) for v, row in enumerate(g.adj)]
                h = Graph(m, tuple(rows) + (nbhd,))
                key = canonical_form(h)
                if key not in nxt:
                    nxt[key] = canonical_graph(key)
        level = nxt
    graphs = [level[k] for k in sorted(level)]
    if connected:
        graphs = [g for g in graphs if is_connected(g)]
    return graphs


# -- graph6 and edge-list I/O --------------------------------------------------

def write_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        header = chr(n + 63)
    else:
        header = "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(g.adj[i] >> j & 1)
    bits.extend([0] * (-len(bits) % 6))
    payload = "".join(
        chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return header + payload


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise MalformedHeaderError("empty graph6 string")
    if any(not 63 <= ord(ch) <= 126 for ch in s):
        raise MalformedHeaderError(f"graph6 contains characters outside '?'..'~': {text!r}")
    if s[0] == "~":
        if len(s) >= 2 and s[1] == "~":
            raise GraphTooLargeError("8-byte graph6 headers encode more than 64 vertices")
        if len(s) < 4:
            raise MalformedHeaderError("truncated long-form graph6 header")
        n = 0
        for ch in s[1:4]:
            n = n << 6 | (ord(ch) - 63)
        body = s[4:]
    else:
        n = ord(s[0]) - 63
        body = s[1:]
    if n > MAX_VERTICES:
        raise GraphTooLargeError(f"graph6 encodes {n} vertices; at most {MAX_VERTICES} are supported")
    if n == 0:
        raise MalformedHeaderError("graph6 encodes the null graph, which is not supported")
    m = n * (n - 1) // 2
    need = (m + 5) // 6
    if len(body) < need:
        raise TruncatedPayloadError(f"graph6 payload has {len(body)} bytes, {need} required for n={n}")
    if len(body) > need:
        raise MalformedHeaderError(f"graph6 payload has {len(body) - need} trailing bytes")
    value = 0
    for ch in body:
        value = value << 6 | (ord(ch) - 63)
    value >>= need * 6 - m
    rows = [0] * n
    k = m - 1
    for j in range(1, n):
        for i in range(j):
            if value >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k -= 1
    return Graph(n, tuple(rows))


_EDGE_LINE = re.compile(r"^\s*(\d+)\s+(\d+)\s*$")


def parse_edge_list(text: str, n: int | None = None) -> Graph:
    """Parse ``u v`` lines (0-indexed). Blank lines and ``#`` comments are skipped."""
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0]
        if not line.strip():
            continue
        m = _EDGE_LINE.match(line)
        if m is None:
            raise GraphError(f"line {lineno}: expected 'u v', got {line.strip()!r}")
        edges.append((int(m.group(1)), int(m.group(2))))
    if n is None:
        n = 1 + max((max(e) for e in edges), default=0)
    return Graph.from_edges(n, edges)
