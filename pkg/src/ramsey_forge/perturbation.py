"""Exact expectations for the randomly thinned Turán construction.

``G(n, eps)`` is the red graph obtained from the disjoint union of cliques on
the ``r = chi2 - 1`` Turán parts (the complement of the Turán graph) by deleting
every edge independently with probability ``eps``.  Its blue graph is the
Turán graph plus the deleted edges.

Red term: an injective map of ``h1`` is a homomorphism into the cliques iff
every component lands inside a single part; it survives with probability
``(1 - eps)^e1`` because distinct pattern edges use distinct host edges.

Blue term: an injective map of ``h2`` whose part pattern ``c`` has ``b``
monochromatic edges is a blue homomorphism with probability ``eps^b``.  The
number of injective maps realising ``c`` is ``prod_i (|A_i|)_(|c^-1(i)|)``, so
colourings are grouped by (class sizes, b).
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Sequence

from .chromatic import nearly_proper_count
from .graph import Graph, components, turan_part_sizes
from .homomorphism import falling_factorial
from .objective import PairContext, SizeError, ratio_str, turan_baseline

PROFILE_MAX_VERTICES = 14
PROFILE_MAX_ASSIGNMENTS = 1 << 24

NOT_MULTIPLICITY_GOOD = "not-multiplicity-good"
INCONCLUSIVE = "inconclusive"

DEFAULT_GRID = tuple(Fraction(k, 100) for k in range(11))


class PerturbationError(ValueError):
    pass


@dataclass(frozen=True)
class MonochromaticProfile:
    """Counts of maps ``V(h) -> [r]`` by number of monochromatic edges.

    ``refined`` further splits each count by the tuple of class sizes.
    """

    r: int
    refined: dict[tuple[tuple[int, ...], int], int]

    @property
    def counts(self) -> dict[int, int]:
        out: Counter[int] = Counter()
        for (_, b), c in self.refined.items():
            out[b] += c
        return dict(sorted(out.items()))

    @property
    def total(self) -> int:
        return sum(self.refined.values())


def _profile_from_prefix(args: tuple) -> dict:
    h, r, prefix = args
    n = h.n
    back = [[u for u in range(v) if h.has_edge(u, v)] for v in range(n)]
    colour = list(prefix) + [0] * (n - len(prefix))
    sizes = [0] * r
    mono = 0
    for v, c in enumerate(prefix):
        sizes[c] += 1
        mono += sum(1 for u in back[v] if colour[u] == c)
    out: Counter = Counter()

    def rec(v: int, mono: int) -> None:
        if v == n:
            out[(tuple(sizes), mono)] += 1
            return
        for c in range(r):
            colour[v] = c
            sizes[c] += 1
            rec(v + 1, mono + sum(1 for u in back[v] if colour[u] == c))
            sizes[c] -= 1

    rec(len(prefix), mono)
    return dict(out)


def monochromatic_profile(h: Graph, r: int, jobs: int = 1) -> MonochromaticProfile:
    if r < 1:
        raise PerturbationError("need at least one class")
    if h.n > PROFILE_MAX_VERTICES or r ** h.n > PROFILE_MAX_ASSIGNMENTS:
        raise SizeError(
            f"profile enumerates {r}^{h.n} colourings; limit is {PROFILE_MAX_VERTICES} "
            f"vertices and {PROFILE_MAX_ASSIGNMENTS} colourings"
        )
    depth = min(2, h.n)
    tasks = [(h, r, p) for p in product(range(r), repeat=depth)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_profile_from_prefix, tasks))
    else:
        parts = [_profile_from_prefix(t) for t in tasks]
    merged: Counter = Counter()
    for part in parts:
        merged.update(part)
    return MonochromaticProfile(r, dict(sorted(merged.items())))


class ThinnedTuranModel:
    """``E[objective(G(n, eps))]`` as an exact function of ``eps`` for fixed ``n``."""

    def __init__(self, ctx: PairContext, n: int, jobs: int = 1) -> None:
        if n < ctx.min_n:
            raise SizeError(f"n={n} is below max(v1, v2)={ctx.min_n}")
        self.ctx = ctx
        self.n = n
        self.r = ctx.chi2 - 1
        self.part_sizes = turan_part_sizes(n, self.r)
        red_maps = 0
        comp_sizes = [len(c) for c in components(ctx.h1)]
        for parts in product(range(self.r), repeat=len(comp_sizes)):
            load = [0] * self.r
            for size, p in zip(comp_sizes, parts):
                load[p] += size
            term = 1
            for a, l in zip(self.part_sizes, load):
                term *= falling_factorial(a, l)
            red_maps += term
        self.red_base = Fraction(ctx.rho1 * red_maps, falling_factorial(n, ctx.v1))
        profile = monochromatic_profile(ctx.h2, self.r, jobs=jobs)
        blue: Counter[int] = Counter()
        for (sizes, b), count in profile.refined.items():
            placements = 1
            for a, s in zip(self.part_sizes, sizes):
                placements *= falling_factorial(a, s)
            blue[b] += count * placements
        denom = falling_factorial(n, ctx.v2)
        # blue_coeffs[b] multiplies eps^b
        self.blue_coeffs = {b: Fraction(ctx.rho2 * c, denom) for b, c in sorted(blue.items()) if c}

    def red_term(self, eps: Fraction) -> Fraction:
        return self.red_base * (1 - eps) ** self.ctx.e1

    def blue_term(self, eps: Fraction) -> Fraction:
        return sum((c * eps ** b for b, c in self.blue_coeffs.items()), Fraction(0))

    def __call__(self, eps: Fraction) -> Fraction:
        eps = Fraction(eps)
        if not 0 <= eps <= 1:
            raise PerturbationError(f"eps must lie in [0, 1], got {eps}")
        return self.red_term(eps) + self.blue_term(eps)


def expected_objective(ctx: PairContext, n: int, eps: Fraction) -> Fraction:
    return ThinnedTuranModel(ctx, n)(eps)


def _require_chi2(ctx: PairContext) -> None:
    if ctx.chi2 < 3:
        raise PerturbationError(f"needs chi(h2) >= 3, got {ctx.chi2}")


def linear_coefficient(ctx: PairContext) -> Fraction:
    """Coefficient of ``eps`` in the large-``n`` limit of the expected objective:
    ``-e1 + K (chi1-1)^(v2-k2) / (chi2-1)^v2`` with ``K`` the nearly proper
    colourings of ``h2``."""
    _require_chi2(ctx)
    k = nearly_proper_count(ctx.h2)
    return -ctx.e1 + Fraction(k * (ctx.chi1 - 1) ** (ctx.v2 - ctx.k2), (ctx.chi2 - 1) ** ctx.v2)


def imbalance_threshold(ctx: PairContext) -> tuple[Fraction, str]:
    """Edge count of ``h1`` above which the pair cannot be multiplicity good."""
    _require_chi2(ctx)
    chi1, chi2, v2, k2, crit = ctx.chi1, ctx.chi2, ctx.v2, ctx.k2, ctx.crit2
    if chi2 == 4:
        t = Fraction(crit * 2 ** (v2 - k2 - 1) * (chi1 - 1) ** (v2 - k2), 3 ** (v2 - k2))
    else:
        t = Fraction(
            crit * factorial(chi2 - 2) * (chi2 - 2) ** (v2 - chi2 - k2 + 1) * (chi1 - 1) ** (v2 - k2),
            (chi2 - 1) ** (v2 - k2),
        )
    verdict = NOT_MULTIPLICITY_GOOD if ctx.e1 > t else INCONCLUSIVE
    return t, verdict


@dataclass(frozen=True)
class SweepPoint:
    epsilon: Fraction
    value: Fraction
    below_baseline: bool


@dataclass(frozen=True)
class PerturbReport:
    n: int
    points: tuple[SweepPoint, ...]
    baseline: Fraction
    linear_coefficient: Fraction
    threshold: Fraction
    verdict: str

    @property
    def any_below_baseline(self) -> bool:
        return any(p.below_baseline for p in self.points)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "baseline": ratio_str(self.baseline),
            "linear_coefficient": ratio_str(self.linear_coefficient),
            "threshold": ratio_str(self.threshold),
            "verdict": self.verdict,
            "any_below_baseline": self.any_below_baseline,
            "points": [
                {"epsilon": ratio_str(p.epsilon), "value": ratio_str(p.value), "below_baseline": p.below_baseline}
                for p in self.points
            ],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["epsilon", "value_num", "value_den", "below_baseline"])
        for p in self.points:
            w.writerow([ratio_str(p.epsilon), p.value.numerator, p.value.denominator, int(p.below_baseline)])
        return buf.getvalue()


def sweep(ctx: PairContext, n: int, grid: Sequence[Fraction] = DEFAULT_GRID, jobs: int = 1) -> PerturbReport:
    grid = [Fraction(e) for e in grid]
    bad = [e for e in grid if not 0 <= e <= 1]
    if bad:
        raise PerturbationError(f"grid values outside [0, 1]: {[str(e) for e in bad]}")
    slope = linear_coefficient(ctx)
    threshold, verdict = imbalance_threshold(ctx)
    model = ThinnedTuranModel(ctx, n, jobs=jobs)
    baseline = turan_baseline(ctx, n).value
    points = []
    for e in grid:
        val = model(e)
        points.append(SweepPoint(e, val, val < baseline))
    return PerturbReport(n, tuple(points), baseline, slope, threshold, verdict)
