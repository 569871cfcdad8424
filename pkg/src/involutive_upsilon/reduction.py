"""Bifiltered Gaussian elimination and the closed-form cone reduction.

`reduce_bifiltered` repeatedly cancels differential entries between
generators of identical bidegree; the result is reduced (every surviving
entry strictly drops the bidegree somewhere), homology-preserving, and
bifiltered homotopy equivalent to the input.  The forward change-of-basis
map is recorded as a certificate.

`closed_form_cone_reduction` is the combinatorial shortcut for the reduced
involutive cone of a symmetric staircase: a single diagonal vertex plus a
half-length staircase tail, in four cases by sign and the parity of the
half-length k.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .complexes import (BifilteredComplex, Chain, FiltrationMode, Generator,
                        homology_rank)
from .staircase import Sign, StaircaseSpec, classify, staircase_complex, staircase_points


@dataclass(frozen=True)
class ReductionResult:
    reduced: BifilteredComplex
    kept_of: Mapping[str, Chain]
    eliminated_pairs: tuple


def _cancellable(gens, cols):
    out = []
    for x, targets in cols.items():
        gx = gens[x]
        for y in targets:
            gy = gens[y]
            if gx.f1 == gy.f1 and gx.f2 == gy.f2:
                out.append((x, y))
    return out


def reduce_bifiltered(C: BifilteredComplex, rng=None) -> ReductionResult:
    """Cancel equal-bidegree differential entries until none remain.

    The pair to cancel is chosen by a deterministic (grading, bidegree, id)
    scan unless `rng` is given, in which case it is drawn at random; the
    homology and all downstream invariants are order-independent.
    """
    gens = {g.id: g for g in C.generators}
    order = {g.id: i for i, g in enumerate(C.generators)}
    cols: dict[str, set] = {g.id: set(C.targets_of(g.id)) for g in C.generators}
    rows: dict[str, set] = {g.id: set() for g in C.generators}
    for x, targets in cols.items():
        for y in targets:
            rows[y].add(x)
    kept: dict[str, set] = {g.id: {g.id} for g in C.generators}
    pairs = []

    def key(pair):
        x, y = pair
        g = gens[x]
        return (g.grading, g.f1, g.f2, order[x], order[y])

    while True:
        candidates = _cancellable(gens, cols)
        if not candidates:
            break
        if rng is None:
            x, y = min(candidates, key=key)
        else:
            candidates.sort(key=key)
            x, y = candidates[rng.randrange(len(candidates))]
        dx = frozenset(cols[x])
        rho = dx - {y}
        # Gaussian elimination: every other source of y absorbs the boundary of x.
        for z in list(rows[y]):
            if z == x:
                continue
            for t in dx:
                if t in cols[z]:
                    cols[z].discard(t)
                    rows[t].discard(z)
                else:
                    cols[z].add(t)
                    rows[t].add(z)
        for gid in (x, y):
            for t in cols[gid]:
                if t in rows:
                    rows[t].discard(gid)
            for sgid in rows[gid]:
                if sgid in cols:
                    cols[sgid].discard(gid)
        for gid in (x, y):
            del cols[gid], rows[gid], gens[gid]
        for gid, chain in kept.items():
            if not (chain & {x, y}):
                continue
            hit_y = y in chain
            chain.discard(x)
            chain.discard(y)
            if hit_y:
                chain ^= rho
        pairs.append((x, y))

    survivors = tuple(g for g in C.generators if g.id in gens)
    arrows = frozenset((x, y) for x, ts in cols.items() for y in ts)
    reduced = BifilteredComplex(survivors, arrows, C.mode)
    kept_of = {gid: Chain(frozenset((0, t) for t in chain))
               for gid, chain in kept.items()}
    return ReductionResult(reduced, kept_of, tuple(pairs))


def is_reduced(C: BifilteredComplex) -> bool:
    for x, y in C.arrows:
        if C.by_id[x].bidegree == C.by_id[y].bidegree:
            return False
    return True


def connected_components(C: BifilteredComplex) -> list[tuple]:
    """Generator ids grouped by arrow connectivity, in generator order."""
    parent = {g.id: g.id for g in C.generators}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x, y in C.arrows:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry
    groups: dict[str, list] = {}
    for g in C.generators:
        groups.setdefault(find(g.id), []).append(g.id)
    idx = C.index
    return [tuple(ids) for ids in sorted(groups.values(), key=lambda ids: idx[ids[0]])]


def subcomplex(C: BifilteredComplex, ids) -> BifilteredComplex:
    keep = set(ids)
    gens = tuple(g for g in C.generators if g.id in keep)
    arrows = frozenset((x, y) for x, y in C.arrows if x in keep and y in keep)
    return BifilteredComplex(gens, arrows, C.mode)


def is_acyclic(C: BifilteredComplex) -> bool:
    # U-localized homology is 2-periodic, so two consecutive gradings decide.
    return C.n == 0 or (homology_rank(C, 0) == 0 and homology_rank(C, 1) == 0)


def strip_acyclic(C: BifilteredComplex) -> BifilteredComplex:
    """Drop the arrow-connected components with vanishing homology."""
    keep = []
    for comp in connected_components(C):
        if not is_acyclic(subcomplex(C, comp)):
            keep.extend(comp)
    return subcomplex(C, keep)


def generator_signature(C: BifilteredComplex) -> tuple:
    """Sorted multiset of (grading, f1, f2) over all generators."""
    return tuple(sorted((g.grading, g.f1, g.f2) for g in C.generators))


def essential_signature(C: BifilteredComplex) -> tuple:
    """Signature of the non-acyclic components only."""
    return generator_signature(strip_acyclic(C))


# -- closed form ------------------------------------------------------------

@dataclass(frozen=True)
class ClosedFormOutput:
    v0_bidegree: tuple
    v0_grading: int
    tail_steps: tuple
    tail_start: tuple
    tail_homology_grading: int


def closed_form_cone_reduction(spec: StaircaseSpec) -> ClosedFormOutput:
    """Reduced involutive cone of a symmetric staircase, by cases.

    With s the sum of the first half of the steps and d the sum of its
    odd-position entries: positive staircases give a grading-1 vertex at
    (d, d) and a grading-0 tail starting at (0, s); negative ones give a
    grading-0 vertex at (-d, -d) and a grading-1 tail starting at (-s, 0).
    The tail keeps k steps when k is even and k - 1 when k is odd.
    """
    cls = classify(spec)
    k = len(spec.steps) // 2
    tail = spec.steps[:k] if k % 2 == 0 else spec.steps[:k - 1]
    if cls.sign is Sign.POSITIVE:
        return ClosedFormOutput((cls.d, cls.d), 1, tail, (0, cls.s), 0)
    return ClosedFormOutput((-cls.d, -cls.d), 0, tail, (-cls.s, 0), 1)


def materialize_closed_form(out: ClosedFormOutput) -> BifilteredComplex:
    """Build the MIN_MAX complex described by a ClosedFormOutput."""
    positive = out.tail_homology_grading == 0
    points = staircase_points(out.tail_steps, out.tail_start,
                              "right" if positive else "down")
    ids = [f"s{i}" for i in range(len(points))]
    tail = staircase_complex(points, source_parity=1 if positive else 0,
                             mode=FiltrationMode.MIN_MAX, ids=ids)
    v0 = Generator("v0", out.v0_grading, *out.v0_bidegree)
    return BifilteredComplex(tail.generators + (v0,), tail.arrows,
                             FiltrationMode.MIN_MAX)
