"""Staircase complexes: construction from step lists, torus-knot parameters,
mirrors, and the symmetric/positive/inward classification.

Conventions fixed here and used everywhere else:

* A positive staircase with steps [a1, ..., an] starts at (0, sum of the
  even-position steps) and alternates moves right (odd positions, f1 += a)
  and down (even positions, f2 -= a).  For a symmetric list this start is
  (0, s) with s = a1 + ... + ak, k = n/2, and the staircase ends at (s, 0).
* Corner generators (even vertex indices) have grading 0 and are cycles;
  connector generators (odd indices) have grading 1 and map onto their two
  neighbours.  The homology has rank one, generated by any corner class in
  grading 0.
* A negative staircase is the mirror of the positive one: gradings and both
  filtration levels negated, arrows reversed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .complexes import BifilteredComplex, FiltrationMode, Generator


class Sign(Enum):
    POSITIVE = "+"
    NEGATIVE = "-"


class Pointing(Enum):
    INWARD = "INWARD"
    OUTWARD = "OUTWARD"


class Parity(Enum):
    EVEN = "EVEN"
    ODD = "ODD"


@dataclass(frozen=True)
class StaircaseSpec:
    """A step-length list plus a sign.

    The empty list is allowed only as the degenerate unknot spec; the
    staircase builder itself requires at least one step.
    """

    steps: tuple
    sign: Sign = Sign.POSITIVE

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        for a in self.steps:
            if not isinstance(a, int) or isinstance(a, bool) or a <= 0:
                raise ValueError(f"steps must be positive integers, got {a!r}")

    @property
    def symmetric(self) -> bool:
        n = len(self.steps)
        return n % 2 == 0 and self.steps == self.steps[::-1]


@dataclass(frozen=True)
class StaircaseClass:
    symmetric: bool
    sign: Sign
    pointing: Pointing
    k_parity: Parity
    s: int
    d: int


def staircase_points(steps, start: tuple, first_move: str) -> list[tuple]:
    """Vertex coordinates of a staircase walk.

    first_move "right" increments f1 on odd positions (1-indexed) and
    decrements f2 on even ones; "down" swaps the roles.
    """
    f1, f2 = start
    pts = [(f1, f2)]
    right_on_odd = first_move == "right"
    for i, a in enumerate(steps):
        odd = i % 2 == 0
        if odd == right_on_odd:
            f1 += a
        else:
            f2 -= a
        pts.append((f1, f2))
    return pts


def staircase_complex(points, source_parity: int, mode=FiltrationMode.ALG_ALEX,
                      ids=None) -> BifilteredComplex:
    """Build a staircase complex from its vertex list.

    Vertices whose index has `source_parity` carry grading 1 and map onto
    their neighbours; the others carry grading 0 and are cycles.
    """
    if ids is None:
        ids = [f"v{i}" for i in range(len(points))]
    gens = []
    arrows = set()
    for i, (f1, f2) in enumerate(points):
        is_source = i % 2 == source_parity
        gens.append(Generator(ids[i], 1 if is_source else 0, f1, f2))
        if is_source:
            if i > 0:
                arrows.add((ids[i], ids[i - 1]))
            if i + 1 < len(points):
                arrows.add((ids[i], ids[i + 1]))
    return BifilteredComplex(tuple(gens), frozenset(arrows), mode)


def staircase_from_steps(spec: StaircaseSpec) -> BifilteredComplex:
    """The staircase complex of a step list, in ALG_ALEX mode.

    Positive staircases are built directly; negative ones are the mirror of
    the positive staircase with the same steps.
    """
    if not spec.steps:
        raise ValueError("staircase needs at least one step (use unknot_complex for the unknot)")
    if spec.sign is Sign.NEGATIVE:
        return mirror(staircase_from_steps(StaircaseSpec(spec.steps, Sign.POSITIVE)))
    start = (0, sum(spec.steps[1::2]))
    points = staircase_points(spec.steps, start, "right")
    return staircase_complex(points, source_parity=1)


def unknot_complex() -> BifilteredComplex:
    """Single generator at (0, 0), grading 0, zero differential."""
    return BifilteredComplex((Generator("u", 0, 0, 0),), frozenset(),
                             FiltrationMode.ALG_ALEX)


def mirror(C: BifilteredComplex) -> BifilteredComplex:
    """Negate gradings and both filtration levels, reverse all arrows."""
    if C.mode is not FiltrationMode.ALG_ALEX:
        raise ValueError("mirror is defined on unfolded (ALG_ALEX) complexes")
    gens = tuple(Generator(g.id, -g.grading, -g.f1, -g.f2) for g in C.generators)
    arrows = frozenset((y, x) for x, y in C.arrows)
    return BifilteredComplex(gens, arrows, FiltrationMode.ALG_ALEX)


def classify(spec: StaircaseSpec) -> StaircaseClass:
    """Classify a symmetric staircase spec.

    s and d sum the first half of the step list: s = sum_{i<=k} a_i and
    d sums the odd-position entries of that half.  Positive staircases
    point inward exactly when the edge count is 0 mod 4, negative ones
    exactly when it is 2 mod 4.
    """
    if not spec.symmetric:
        raise ValueError(f"step list {list(spec.steps)} is not symmetric")
    n = len(spec.steps)
    k = n // 2
    s = sum(spec.steps[:k])
    d = sum(spec.steps[0:k:2])
    if spec.sign is Sign.POSITIVE:
        inward = n % 4 == 0
    else:
        inward = n % 4 == 2
    return StaircaseClass(
        symmetric=True,
        sign=spec.sign,
        pointing=Pointing.INWARD if inward else Pointing.OUTWARD,
        k_parity=Parity.EVEN if k % 2 == 0 else Parity.ODD,
        s=s,
        d=d,
    )


# -- torus knots ------------------------------------------------------------

def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return out


def _poly_divexact(num, den):
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % den[-1]:
            raise ValueError("inexact polynomial division")
        q[i] = c // den[-1]
        if q[i]:
            for j, cd in enumerate(den):
                num[i + j] -= q[i] * cd
    if any(num):
        raise ValueError("inexact polynomial division")
    return q


def steps_from_torus_knot(p: int, q: int) -> StaircaseSpec:
    """Step list of the positive torus knot T(p, q).

    The steps are the successive differences of the exponents appearing in
    (t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1)), whose coefficients alternate
    between +1 and -1 for coprime p < q.
    """
    if not (isinstance(p, int) and isinstance(q, int)) or not (2 <= p < q):
        raise ValueError(f"need integers 2 <= p < q, got p={p!r}, q={q!r}")
    import math
    if math.gcd(p, q) != 1:
        raise ValueError(f"p={p} and q={q} are not coprime")

    def cyc(n):  # t^n - 1
        c = [0] * (n + 1)
        c[0], c[n] = -1, 1
        return c

    delta = _poly_divexact(_poly_mul(cyc(p * q), cyc(1)), _poly_mul(cyc(p), cyc(q)))
    exps = [i for i, c in enumerate(delta) if c]
    exps.reverse()
    for rank_pos, e in enumerate(exps):
        if delta[e] != (1 if rank_pos % 2 == 0 else -1):
            raise ValueError(f"unexpected coefficient pattern for T({p},{q})")
    steps = tuple(exps[i] - exps[i + 1] for i in range(len(exps) - 1))
    spec = StaircaseSpec(steps, Sign.POSITIVE)
    assert spec.symmetric, f"torus knot steps {steps} should be symmetric"
    return spec
