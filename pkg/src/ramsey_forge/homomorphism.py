"""Exact homomorphism counts and densities.

Two injective densities appear in the objective and must not be confused:

* :func:`inj_density` divides by the falling factorial ``n (n-1) ... (n-v+1)``
  (probability that a random *injective* map is a homomorphism);
* :func:`vertex_contribution` and ``t_density(..., denominator="power")``
  divide by ``n^v`` (probability over *all* maps).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Literal

from .graph import Graph, components, iter_bits


def falling_factorial(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


def _pattern_order(h: Graph, vertices: list[int]) -> tuple[list[int], list[int]]:
    """Connectivity-respecting order of ``vertices`` and, per position, the
    bitmask of earlier positions adjacent to it."""
    remaining = set(vertices)
    order: list[int] = []
    while remaining:
        start = max(remaining, key=lambda v: (h.degree(v), -v))
        remaining.discard(start)
        order.append(start)
        placed = 1 << start
        while True:
            # next: most neighbours already placed, then highest degree
            cands = [v for v in remaining if h.adj[v] & placed]
            if not cands:
                break
            v = max(cands, key=lambda v: ((h.adj[v] & placed).bit_count(), h.degree(v), -v))
            remaining.discard(v)
            order.append(v)
            placed |= 1 << v
    pos = {v: i for i, v in enumerate(order)}
    back = [sum(1 << pos[u] for u in iter_bits(h.adj[v]) if u in pos and pos[u] < i) for i, v in enumerate(order)]
    return order, back


def _count(h: Graph, vertices: list[int], g: Graph, injective: bool, forbidden: int = 0) -> int:
    order, back = _pattern_order(h, vertices)
    size = len(order)
    if size == 0:
        return 1
    full = ((1 << g.n) - 1) & ~forbidden
    back_lists = [list(iter_bits(b)) for b in back]
    image = [0] * size
    adj = g.adj

    def rec(i: int, used: int) -> int:
        cand = full
        for j in back_lists[i]:
            cand &= adj[image[j]]
        if injective:
            cand &= ~used
        if i == size - 1:
            return cand.bit_count()
        total = 0
        while cand:
            low = cand & -cand
            image[i] = low.bit_length() - 1
            total += rec(i + 1, used | low)
            cand ^= low
        return total

    return rec(0, 0)


def hom_count(h: Graph, g: Graph) -> int:
    """Number of maps ``V(h) -> V(g)`` sending edges to edges."""
    total = 1
    for comp in components(h):
        total *= _count(h, comp, g, injective=False)
        if total == 0:
            break
    return total


def inj_hom_count(h: Graph, g: Graph) -> int:
    if h.n > g.n:
        return 0
    return _count(h, list(range(h.n)), g, injective=True)


def hom_density(h: Graph, g: Graph) -> Fraction:
    return Fraction(hom_count(h, g), g.n ** h.n)


def inj_density(h: Graph, g: Graph) -> Fraction:
    """Probability that a uniformly random injection ``V(h) -> V(g)`` is a homomorphism."""
    if h.n > g.n:
        raise ValueError(f"injective density needs v(h) <= v(g), got {h.n} > {g.n}")
    return Fraction(inj_hom_count(h, g), falling_factorial(g.n, h.n))


def t_density(
    h: Graph,
    g: Graph,
    injective: bool = False,
    denominator: Literal["falling", "power"] = "falling",
) -> Fraction:
    """Homomorphism density.

    ``injective=False`` gives ``hom/n^v``.  With ``injective=True`` the count of
    injective homomorphisms is divided by the falling factorial (default) or by
    ``n^v`` when ``denominator="power"``.
    """
    if not injective:
        return hom_density(h, g)
    if denominator == "falling":
        return inj_density(h, g)
    if denominator == "power":
        return Fraction(inj_hom_count(h, g), g.n ** h.n)
    raise ValueError(f"unknown denominator {denominator!r}")


def vertex_contribution(h: Graph, g: Graph, v: int) -> Fraction:
    """Probability that a random map ``V(h) -> V(g)`` is an injective
    homomorphism whose image contains ``v``."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range for graph on {g.n} vertices")
    if h.n > g.n:
        return Fraction(0)
    avoiding = _count(h, list(range(h.n)), g, injective=True, forbidden=1 << v)
    return Fraction(inj_hom_count(h, g) - avoiding, g.n ** h.n)
