"""deg_t, tower classes, and the exact Upsilon invariants.

For t in [0, 2] the interpolated filtration degree of a translated
generator is deg_t = (t/2) * Max + (1 - t/2) * Min, dropping by 1 per
U power.  The level of a homology class is the minimum of deg_t over its
cycle representatives; Upsilon is -2 times that level, computed exactly
as a piecewise-linear function by enumerating the representative coset
and taking an upper envelope of concave min-of-lines functions.

Variants: CLASSIC applies the same weights verbatim to the (alg, Alex)
pair of an unfolded complex (t/2 on Alex); FOLDED uses the grading-0
tower of the folded complex; UPPER and LOWER use the grading-0 and
grading-1 towers of the involutive mapping cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from . import gf2
from .complexes import (BifilteredComplex, Chain, FiltrationMode, Generator,
                        homology_data, u_window)
from .involutive import ChainMap, fold, fold_map, mapping_cone, staircase_involution
from .plfunction import PLFunction, line_min_envelope, merge_pieces
from .reduction import reduce_bifiltered, strip_acyclic

COSET_GUARD = 24


class UpsilonVariant(Enum):
    CLASSIC = "classic"
    FOLDED = "folded"
    UPPER = "upper"
    LOWER = "lower"


class CosetSizeError(ValueError):
    """Representative coset dimension exceeded the enumeration guard."""


def deg_t(g: Generator, t, u_power: int = 0) -> Fraction:
    """(t/2) * f2 + (1 - t/2) * f1 for the U^u_power translate of g.

    The slots (f1, f2) are read as (Min, Max); on an unfolded complex this
    evaluates the classic convention with the t/2 weight on f2 = Alex.
    """
    t = Fraction(t)
    if not 0 <= t <= 2:
        raise ValueError(f"t={t} outside [0, 2]")
    half = t / 2
    return half * (g.f2 - u_power) + (1 - half) * (g.f1 - u_power)


def chain_deg_t(C: BifilteredComplex, z: Chain, t) -> Fraction:
    """deg_t of a chain: the maximum over its translated generators."""
    if C.mode is not FiltrationMode.MIN_MAX:
        raise ValueError("chain_deg_t needs a folded (MIN_MAX) complex")
    if z.is_zero:
        raise ValueError("deg_t of the zero chain is -infinity")
    return max(deg_t(C.by_id[gid], t, u) for u, gid in z.terms)


@dataclass(frozen=True)
class TowerClassWitness:
    grading: int
    base_cycle: Chain
    boundary_space_basis: tuple


def _strict_tower(C: BifilteredComplex, grading: int):
    """Window, rank-1 base mask and boundary basis masks for one grading."""
    win, reps, boundaries = homology_data(C, grading)
    if len(reps) != 1:
        raise ValueError(
            f"homology rank in grading {grading} is {len(reps)}, need exactly 1")
    pos = {term: i for i, term in enumerate(win)}
    return win, pos, u_window(C, grading + 1), reps[0], boundaries


def _chain(mask: int, win) -> Chain:
    return Chain(frozenset(win[i] for i in range(mask.bit_length()) if mask >> i & 1))


def tower_witness(C: BifilteredComplex, grading: int) -> TowerClassWitness:
    """Base cycle and boundary basis of the rank-1 tower in one grading."""
    win, _, _, base, boundaries = _strict_tower(C, grading)
    return TowerClassWitness(grading, _chain(base, win),
                             tuple(_chain(b, win) for b in boundaries))


def _upsilon_pieces(C: BifilteredComplex, grading: int, *, window_pad: int = 0,
                    coset_guard: int = COSET_GUARD):
    """Upper envelope, in Upsilon units, over the representative coset.

    Each coordinate (a U-translate of a generator) contributes the line
    -2 * (f1 - u) - t * (f2 - f1); a chain's function is the min of its
    coordinate lines and the class takes the pointwise max over the coset.
    Coset elements carrying a line already dominated everywhere by the
    running envelope are skipped; that never changes the maximum.
    """
    win, pos, win_up, base, boundaries = _strict_tower(C, grading)
    coords = list(win)
    coord_pos = dict(pos)
    if window_pad:
        sources = list(win_up)
        for j in range(1, window_pad + 1):
            sources += u_window(C, grading + 1 - 2 * j)
            sources += u_window(C, grading + 1 + 2 * j)
        cols = []
        for u, gid in sources:
            m = 0
            for tgt in C.targets_of(gid):
                key = (u, tgt)
                if key not in coord_pos:
                    coord_pos[key] = len(coords)
                    coords.append(key)
                m |= 1 << coord_pos[key]
            cols.append(m)
        boundaries = gf2.image_basis(cols)
    b = len(boundaries)
    if b > coset_guard:
        raise CosetSizeError(
            f"coset dimension {b} exceeds the guard {coset_guard}")

    lines = []
    for u, gid in coords:
        g = C.by_id[gid]
        lines.append((-(g.f2 - g.f1), -2 * (g.f1 - u)))

    def bits(mask):
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    envelope = None
    dead = 0
    alive = list(range(len(coords)))
    cur = base
    for i in range(1 << b):
        if i:
            cur ^= boundaries[(i & -i).bit_length() - 1]
        if cur & dead:
            continue
        cand = line_min_envelope(lines[c] for c in bits(cur))
        if envelope is None:
            envelope = cand
        else:
            merged = merge_pieces(envelope, cand, True)
            if merged == envelope:
                continue
            envelope = merged
        ts = [t for t, _ in envelope] + [Fraction(2)]
        vals = []
        k = 0
        for t in ts:
            while k + 1 < len(envelope) and envelope[k + 1][0] <= t:
                k += 1
            s, c0 = envelope[k][1]
            vals.append(c0 + s * t)
        still = []
        for c in alive:
            s, c0 = lines[c]
            if all(c0 + s * t <= v for t, v in zip(ts, vals)):
                dead |= 1 << c
            else:
                still.append(c)
        alive = still
    return envelope


def nu_function(C: BifilteredComplex, grading: int, *, window_pad: int = 0,
                coset_guard: int = COSET_GUARD) -> PLFunction:
    """Exact minimal deg_t level of the rank-1 tower class, as a PL function."""
    if C.mode is not FiltrationMode.MIN_MAX:
        raise ValueError("nu_function needs a folded (MIN_MAX) complex")
    pieces = _upsilon_pieces(C, grading, window_pad=window_pad,
                             coset_guard=coset_guard)
    return PLFunction.from_pieces(pieces).scale(Fraction(-1, 2))


def upsilon_pair_from_cone(cone: BifilteredComplex):
    """(upper, lower) Upsilon functions of an involutive cone complex."""
    upper = PLFunction.from_pieces(_upsilon_pieces(cone, 0))
    lower = PLFunction.from_pieces(_upsilon_pieces(cone, 1))
    return upper, lower


def involutive_cone(C_knot: BifilteredComplex, involution: ChainMap | None = None,
                    *, reduce_cone: bool = True,
                    strip: bool = False) -> BifilteredComplex:
    """Fold, cone off (involution + identity), and optionally reduce."""
    if involution is None:
        involution = staircase_involution(C_knot)
    cone = mapping_cone(fold(C_knot), fold_map(involution))
    if reduce_cone:
        cone = reduce_bifiltered(cone).reduced
    if strip:
        cone = strip_acyclic(cone)
    return cone


def upsilon(C_knot: BifilteredComplex, which: UpsilonVariant,
            involution: ChainMap | None = None, *, reduce_cone: bool = True,
            strip: bool = False) -> PLFunction:
    """One of the four Upsilon functions of an unfolded knot complex.

    UPPER and LOWER need an involution; it is derived automatically for
    symmetric staircase complexes and must be supplied otherwise.
    """
    if C_knot.mode is not FiltrationMode.ALG_ALEX:
        raise ValueError("upsilon expects the unfolded (ALG_ALEX) knot complex")
    which = UpsilonVariant(which)
    if which is UpsilonVariant.CLASSIC:
        return PLFunction.from_pieces(_upsilon_pieces(C_knot, 0))
    if which is UpsilonVariant.FOLDED:
        return PLFunction.from_pieces(_upsilon_pieces(fold(C_knot), 0))
    cone = involutive_cone(C_knot, involution, reduce_cone=reduce_cone, strip=strip)
    return PLFunction.from_pieces(
        _upsilon_pieces(cone, 0 if which is UpsilonVariant.UPPER else 1))


def v0_invariants(C_knot: BifilteredComplex,
                  involution: ChainMap | None = None):
    """(upper V0, lower V0) = -1/2 of the respective Upsilon at t = 2."""
    cone = involutive_cone(C_knot, involution)
    upper, lower = upsilon_pair_from_cone(cone)
    v_up = -upper(Fraction(2)) / 2
    v_low = -lower(Fraction(2)) / 2
    for name, v in (("upper", v_up), ("lower", v_low)):
        if v.denominator != 1:
            raise ValueError(f"{name} V0 = {v} is not an integer")
    return v_up, v_low


def filtration_width(C: BifilteredComplex) -> int:
    """Largest |f1 - f2| over the generators (Max - Min once folded)."""
    return max((abs(g.f1 - g.f2) for g in C.generators), default=0)


def slope_bound_check(f: PLFunction, C_knot: BifilteredComplex) -> bool:
    """True iff every segment slope of f is at most the filtration width."""
    w = filtration_width(C_knot)
    return all(abs(s) <= w for s in f.slopes())
