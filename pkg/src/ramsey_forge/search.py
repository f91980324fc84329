"""Minimising the weighted objective over n-vertex graphs.

Exhaustive mode scans every labelled graph.  A graph is identified with an
integer whose bit ``k`` is the ``k``-th pair ``(u, v)``, ``u < v``, in
lexicographic order.  An injective map of a pattern into ``K_n`` is a
homomorphism into ``g`` iff the pairs it uses form a subset of ``g``, so each
pattern reduces to a table ``mask -> number of injective maps using mask`` and
the scan is a handful of vectorised subset tests per chunk of graph ids.

Scores are kept as integers ``value * L`` with ``L = lcm((n)_v1, (n)_v2)`` so
comparisons stay exact.
"""

from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import lcm

import numpy as np

from .graph import Graph, canonical_form, canonical_graph, complement, iter_bits, write_graph6
from .homomorphism import falling_factorial, inj_hom_count
from .objective import (
    PairContext,
    SizeError,
    blue_turan,
    is_turan_colouring,
    ratio_str,
    red_turan,
    turan_baseline,
)

log = logging.getLogger(__name__)

DEFAULT_MAX_N = 7
HARD_MAX_N = 8
CHUNK_BITS = 16

ALL_TURAN = "all-turan"
CONTAINS_NON_TURAN = "contains-non-turan"
TURAN_NOT_MINIMAL = "turan-not-minimal"


class BudgetError(ValueError):
    """Requested search exceeds the configured size cap."""


# -- graph ids ---------------------------------------------------------------------

def pair_list(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def graph_from_id(n: int, gid: int) -> Graph:
    pairs = pair_list(n)
    return Graph.from_edges(n, (pairs[k] for k in iter_bits(gid)))


def graph_id(g: Graph) -> int:
    index = {p: k for k, p in enumerate(pair_list(g.n))}
    return sum(1 << index[e] for e in g.edges())


def mask_table(h: Graph, n: int) -> list[tuple[int, int]]:
    """``(mask, multiplicity)`` over all injective maps of ``h`` into ``K_n``."""
    index = {p: k for k, p in enumerate(pair_list(n))}
    edges = h.edges()
    counts: Counter[int] = Counter()
    for image in permutations(range(n), h.n):
        mask = 0
        for u, v in edges:
            a, b = image[u], image[v]
            mask |= 1 << index[(a, b) if a < b else (b, a)]
        counts[mask] += 1
    return sorted(counts.items())


# -- exact integer scoring ---------------------------------------------------------

@dataclass(frozen=True)
class Scorer:
    """Integer-scaled objective for a fixed pair and host size."""

    ctx: PairContext
    n: int
    scale: int = field(init=False)
    red_weight: int = field(init=False)
    blue_weight: int = field(init=False)

    def __post_init__(self) -> None:
        if self.n < self.ctx.min_n:
            raise SizeError(f"n={self.n} is below max(v1, v2)={self.ctx.min_n}")
        d1 = falling_factorial(self.n, self.ctx.v1)
        d2 = falling_factorial(self.n, self.ctx.v2)
        scale = lcm(d1, d2)
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "red_weight", self.ctx.rho1 * (scale // d1))
        object.__setattr__(self, "blue_weight", self.ctx.rho2 * (scale // d2))

    def score(self, g: Graph) -> int:
        return (self.red_weight * inj_hom_count(self.ctx.h1, g)
                + self.blue_weight * inj_hom_count(self.ctx.h2, complement(g)))

    def value(self, score: int) -> Fraction:
        return Fraction(score, self.scale)


# -- reports -----------------------------------------------------------------------

@dataclass(frozen=True)
class SearchReport:
    n: int
    min_value: Fraction
    minimizers: tuple[bytes, ...]
    turan_verdict: str
    graphs_examined: int
    mode: str
    turan_value: Fraction

    def minimizer_graph6(self) -> list[str]:
        return [write_graph6(canonical_graph(f)) for f in self.minimizers]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "min_value": ratio_str(self.min_value),
            "turan_value": ratio_str(self.turan_value),
            "turan_verdict": self.turan_verdict,
            "graphs_examined": self.graphs_examined,
            "minimizers": self.minimizer_graph6(),
        }


def _verdict(ctx: PairContext, forms: tuple[bytes, ...]) -> str:
    if all(is_turan_colouring(ctx, canonical_graph(f)) for f in forms):
        return ALL_TURAN
    return CONTAINS_NON_TURAN


# -- exhaustive ----------------------------------------------------------------------

def _scan_chunk(args: tuple) -> tuple[int, int, list[bytes]]:
    n, red_table, blue_table, red_w, blue_w, start, stop, dtype = args
    ids = np.arange(start, stop, dtype=np.int64)
    full = (1 << (n * (n - 1) // 2)) - 1
    comp = np.int64(full) ^ ids
    red = np.zeros(len(ids), dtype=dtype)
    for mask, mult in red_table:
        red += mult * ((ids & mask) == mask)
    blue = np.zeros(len(ids), dtype=dtype)
    for mask, mult in blue_table:
        blue += mult * ((comp & mask) == mask)
    scores = red * red_w + blue * blue_w
    best = scores.min()
    hits = np.flatnonzero(scores == best)
    forms = sorted({canonical_form(graph_from_id(n, start + int(i))) for i in hits})
    return int(best), stop - start, forms


def exhaustive_minimize(
    ctx: PairContext,
    n: int,
    jobs: int = 1,
    max_n: int = DEFAULT_MAX_N,
) -> SearchReport:
    """Global minimum of the objective over all labelled ``n``-vertex graphs.

    ``max_n`` raises the default cap of 7; nothing above 8 is accepted.
    """
    if n < ctx.min_n:
        raise SizeError(f"n={n} is below max(v1, v2)={ctx.min_n}")
    cap = min(max_n, HARD_MAX_N)
    if n > cap:
        raise BudgetError(
            f"exhaustive search at n={n} exceeds the cap n<={cap}"
            + ("" if cap >= HARD_MAX_N else f"; raise it with --max-n-override (at most {HARD_MAX_N})")
        )
    scorer = Scorer(ctx, n)
    red_table = mask_table(ctx.h1, n)
    blue_table = mask_table(ctx.h2, n)
    # scores stay below (rho1 + rho2) * scale
    fits = (ctx.rho1 + ctx.rho2) * scorer.scale < 2 ** 62
    dtype = np.int64 if fits else object
    total = 1 << (n * (n - 1) // 2)
    step = 1 << CHUNK_BITS
    tasks = [
        (n, red_table, blue_table, scorer.red_weight, scorer.blue_weight, s, min(s + step, total), dtype)
        for s in range(0, total, step)
    ]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_chunk, tasks))
    else:
        results = []
        for i, t in enumerate(tasks):
            results.append(_scan_chunk(t))
            log.info("exhaustive n=%d: chunk %d/%d", n, i + 1, len(tasks))
    best = min(r[0] for r in results)
    forms: set[bytes] = set()
    for score, _, fs in results:
        if score == best:
            forms.update(fs)
    minimizers = tuple(sorted(forms))
    return SearchReport(
        n=n,
        min_value=scorer.value(best),
        minimizers=minimizers,
        turan_verdict=_verdict(ctx, minimizers),
        graphs_examined=sum(r[1] for r in results),
        mode="exhaustive",
        turan_value=turan_baseline(ctx, n).value,
    )


def minimizer_verdict(ctx: PairContext, n: int, jobs: int = 1, max_n: int = DEFAULT_MAX_N) -> str:
    return exhaustive_minimize(ctx, n, jobs=jobs, max_n=max_n).turan_verdict


# -- local search --------------------------------------------------------------------

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class XorShift64Star:
    """xorshift64* generator; state seeded through splitmix64 so it is never zero."""

    def __init__(self, seed: int, stream: int = 0) -> None:
        self.state = splitmix64((seed & MASK64) ^ splitmix64(stream)) or 1

    def next(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK64


def random_graph(n: int, seed: int, stream: int) -> Graph:
    """Each pair is an edge iff the top bit of the next generator output is set."""
    rng = XorShift64Star(seed, stream)
    return Graph.from_edges(n, (p for p in pair_list(n) if rng.next() >> 63))


def clone_move(g: Graph, u: int, w: int) -> Graph:
    """Replace the neighbourhood of ``w`` by that of ``u`` (minus ``w`` itself)."""
    if u == w:
        raise ValueError("clone_move needs distinct vertices")
    if not (0 <= u < g.n and 0 <= w < g.n):
        raise ValueError(f"vertices ({u}, {w}) out of range for n={g.n}")
    target = g.adj[u] & ~(1 << w)
    rows = []
    for v, row in enumerate(g.adj):
        if v == w:
            rows.append(target)
        else:
            row &= ~(1 << w)
            if target >> v & 1:
                row |= 1 << w
            rows.append(row)
    return Graph(g.n, tuple(rows))


def _flip(g: Graph, u: int, v: int) -> Graph:
    return g.remove_edge(u, v) if g.has_edge(u, v) else g.add_edge(u, v)


def _descend(args: tuple) -> tuple[int, bytes, int]:
    ctx, n, start, max_steps, move_set = args
    scorer = Scorer(ctx, n)
    g = start
    cur = scorer.score(g)
    evaluations = 1
    pairs = pair_list(n)
    for _ in range(max_steps):
        best_score, best_graph = cur, None
        if "flip" in move_set:
            for u, v in pairs:
                cand = _flip(g, u, v)
                s = scorer.score(cand)
                evaluations += 1
                if s < best_score:
                    best_score, best_graph = s, cand
        if "clone" in move_set:
            for u in range(n):
                for w in range(n):
                    if u == w:
                        continue
                    cand = clone_move(g, u, w)
                    if cand == g:
                        continue
                    s = scorer.score(cand)
                    evaluations += 1
                    if s < best_score:
                        best_score, best_graph = s, cand
        if best_graph is None:
            break
        g, cur = best_graph, best_score
    return cur, canonical_form(g), evaluations


def local_search(
    ctx: PairContext,
    n: int,
    seed: int = 0,
    restarts: int = 16,
    max_steps: int = 1000,
    move_set: tuple[str, ...] = ("flip", "clone"),
    jobs: int = 1,
) -> SearchReport:
    """Steepest descent from both Turán colourings and ``restarts - 2`` seeded
    random graphs.  Only strict improvements are taken; among equal candidates
    the first in (flips by pair, then clones by ordered pair) order wins."""
    if n < ctx.min_n:
        raise SizeError(f"n={n} is below max(v1, v2)={ctx.min_n}")
    unknown = set(move_set) - {"flip", "clone"}
    if unknown:
        raise ValueError(f"unknown moves: {sorted(unknown)}")
    starts = [red_turan(ctx, n), blue_turan(ctx, n)]
    starts += [random_graph(n, seed, i) for i in range(max(restarts - 2, 0))]
    tasks = [(ctx, n, s, max_steps, tuple(move_set)) for s in starts]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_descend, tasks))
    else:
        results = [_descend(t) for t in tasks]
    scorer = Scorer(ctx, n)
    best = min(r[0] for r in results)
    minimizers = tuple(sorted({f for s, f, _ in results if s == best}))
    baseline = turan_baseline(ctx, n).value
    value = scorer.value(best)
    verdict = TURAN_NOT_MINIMAL if value < baseline else _verdict(ctx, minimizers)
    return SearchReport(
        n=n,
        min_value=value,
        minimizers=minimizers,
        turan_verdict=verdict,
        graphs_examined=sum(r[2] for r in results),
        mode="local",
        turan_value=baseline,
    )


# -- partitions ----------------------------------------------------------------------

PARTITION_MAX_N = 14


@dataclass(frozen=True)
class Partition:
    assignment: tuple[int, ...]
    internal_edges: int

    @property
    def classes(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for v, c in enumerate(self.assignment):
            out.setdefault(c, []).append(v)
        return [out[c] for c in sorted(out)]


def best_partition(g: Graph, r: int) -> Partition:
    """Partition into at most ``r`` classes minimising edges inside classes.

    Exact branch and bound: classes are opened in order (vertex ``i`` may only
    start class ``used``), and branches whose internal count already reaches
    the incumbent are cut.
    """
    if not 1 <= r <= g.n:
        raise ValueError(f"need 1 <= r <= v(g), got r={r}, v(g)={g.n}")
    if g.n > PARTITION_MAX_N:
        raise BudgetError(f"best_partition scans at most {PARTITION_MAX_N} vertices, got {g.n}")
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    pos = {v: i for i, v in enumerate(order)}
    back = [[pos[u] for u in iter_bits(g.adj[v]) if pos[u] < i] for i, v in enumerate(order)]
    size = g.n
    colour = [0] * size
    best_cost = g.num_edges + 1
    best_colour: list[int] = []

    def rec(i: int, used: int, cost: int) -> None:
        nonlocal best_cost, best_colour
        if cost >= best_cost:
            return
        if i == size:
            best_cost, best_colour = cost, colour[:]
            return
        hits = [0] * r
        for j in back[i]:
            hits[colour[j]] += 1
        options = sorted(range(min(used + 1, r)), key=lambda c: (hits[c], c))
        for c in options:
            colour[i] = c
            rec(i + 1, max(used, c + 1), cost + hits[c])
            if best_cost == 0:
                return

    rec(0, 0, 0)
    assignment = [0] * g.n
    for i, v in enumerate(order):
        assignment[v] = best_colour[i]
    return Partition(tuple(assignment), best_cost)
