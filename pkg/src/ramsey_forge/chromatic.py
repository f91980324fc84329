"""Chromatic number, exact colouring counts and the colouring-count bounds.

Colour counts exploit the symmetry of the palette: colourings are enumerated
up to renaming colours (a new colour is only ever the next unused one) and each
pattern using ``k`` colours is weighted by ``m (m-1) ... (m-k+1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .graph import Graph, component_count, components, iter_bits


class ChromaticError(ValueError):
    pass


def _bfs_order(g: Graph, vertices: list[int]) -> list[int]:
    """Vertices ordered so each one (after the first per component) has an earlier neighbour."""
    remaining = set(vertices)
    order = []
    while remaining:
        start = max(remaining, key=lambda v: (g.degree(v), -v))
        queue = [start]
        remaining.discard(start)
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in sorted(iter_bits(g.adj[v]), key=lambda u: (-g.degree(u), u)):
                if u in remaining:
                    remaining.discard(u)
                    queue.append(u)
    return order


def _earlier_neighbours(g: Graph, order: list[int]) -> list[list[int]]:
    pos = {v: i for i, v in enumerate(order)}
    return [[pos[u] for u in iter_bits(g.adj[v]) if u in pos and pos[u] < i] for i, v in enumerate(order)]


def _count_component(g: Graph, vertices: list[int], m: int) -> int:
    order = _bfs_order(g, vertices)
    back = _earlier_neighbours(g, order)
    size = len(order)
    colour = [0] * size

    def rec(i: int, used: int) -> int:
        if i == size:
            return 1
        forbidden = 0
        for j in back[i]:
            forbidden |= 1 << colour[j]
        total = 0
        for c in range(used):
            if not forbidden >> c & 1:
                colour[i] = c
                total += rec(i + 1, used)
        if used < m:
            colour[i] = used
            total += (m - used) * rec(i + 1, used + 1)
        return total

    return rec(0, 0)


def count_proper_colourings(g: Graph, m: int) -> int:
    """Number of maps ``V(g) -> [m]`` with no monochromatic edge."""
    if m < 0:
        raise ChromaticError("colour count must be non-negative")
    total = 1
    for comp in components(g):
        total *= _count_component(g, comp, m)
        if total == 0:
            return 0
    return total


def _colourable(g: Graph, m: int) -> bool:
    """DSATUR-ordered backtracking test for a proper ``m``-colouring."""
    n = g.n
    colour = [-1] * n

    def rec(coloured: int, used: int) -> bool:
        if coloured == n:
            return True
        best, best_key = -1, None
        for v in range(n):
            if colour[v] >= 0:
                continue
            sat = len({colour[u] for u in iter_bits(g.adj[v]) if colour[u] >= 0})
            key = (sat, g.degree(v))
            if best_key is None or key > best_key:
                best, best_key = v, key
        forbidden = {colour[u] for u in iter_bits(g.adj[best])}
        for c in range(min(used + 1, m)):
            if c not in forbidden:
                colour[best] = c
                if rec(coloured + 1, max(used, c + 1)):
                    return True
        colour[best] = -1
        return False

    return rec(0, 0)


def chromatic_number(g: Graph) -> int:
    if g.num_edges == 0:
        return 1
    m = 2
    while not _colourable(g, m):
        m += 1
    return m


@dataclass(frozen=True)
class ChromaticProfile:
    chi: int
    crit_edges: tuple[tuple[int, int], ...]

    @property
    def crit(self) -> int:
        return len(self.crit_edges)


def critical_edges(g: Graph) -> ChromaticProfile:
    chi = chromatic_number(g)
    crit = tuple(e for e in g.edges() if chi > 1 and _colourable(g.remove_edge(*e), chi - 1))
    return ChromaticProfile(chi, crit)


def nearly_proper_count(h: Graph) -> int:
    """Colourings ``V(h) -> [chi(h) - 1]`` with exactly one monochromatic edge."""
    chi = chromatic_number(h)
    if chi <= 1:
        raise ChromaticError("nearly proper colourings need chi >= 2")
    r = chi - 1
    order = _bfs_order(h, list(range(h.n)))
    back = _earlier_neighbours(h, order)
    size = len(order)
    colour = [0] * size

    def rec(i: int, used: int, mono: int) -> int:
        if i == size:
            return int(mono == 1)
        total = 0
        for c in range(used):
            hits = mono + sum(1 for j in back[i] if colour[j] == c)
            if hits <= 1:
                colour[i] = c
                total += rec(i + 1, used, hits)
        if used < r:
            colour[i] = used
            total += (r - used) * rec(i + 1, used + 1, mono)
        return total

    return rec(0, 0, 0)


def tomescu_bound(m: int, n: int) -> int:
    """``m! (m-1)^(n-m)``, the maximum number of proper m-colourings of a
    connected m-chromatic graph on n vertices (m != 3)."""
    if m < 1 or n < m:
        raise ChromaticError(f"need 1 <= m <= n, got m={m}, n={n}")
    return factorial(m) * (m - 1) ** (n - m)


def nearly_proper_bound(h: Graph) -> int:
    """Upper bound on :func:`nearly_proper_count` from critical edges.

    For chi != 4: ``crit (chi-2)! (chi-2)^(v-chi-k+1) (chi-1)^k``;
    for chi == 4: ``crit 3^k 2^(v-k-1)``.
    """
    prof = critical_edges(h)
    chi, crit = prof.chi, prof.crit
    if chi < 3:
        raise ChromaticError(f"bound is only defined for chi >= 3, got chi={chi}")
    v, k = h.n, component_count(h)
    if chi == 4:
        return crit * 3 ** k * 2 ** (v - k - 1)
    return crit * factorial(chi - 2) * (chi - 2) ** (v - chi - k + 1) * (chi - 1) ** k
