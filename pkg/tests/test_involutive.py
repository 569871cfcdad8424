import pytest

from involutive_upsilon import (BifilteredComplex, ChainMap, FiltrationMode,
                                Generator, Sign, StaircaseSpec, fold, fold_map,
                                homology_rank, mapping_cone,
                                staircase_from_steps, staircase_involution,
                                steps_from_torus_knot, unknot_complex, validate)
from involutive_upsilon.involutive import chain_map_violations, is_involution
from involutive_upsilon.verify import symmetric_specs


def test_fold_reflected_pair(t37):
    F = fold(t37)
    assert F.by_id["v0"].bidegree == (0, 6)
    assert F.by_id["v8"].bidegree == (0, 6)
    assert F.mode is FiltrationMode.MIN_MAX
    assert validate(F).ok


def test_fold_diagonal_fixed():
    C = BifilteredComplex((Generator("g", 0, 3, 3),), frozenset(),
                          FiltrationMode.ALG_ALEX)
    assert fold(C).by_id["g"].bidegree == (3, 3)


def test_fold_t25_half_plane(t25):
    F = fold(t25)
    assert all(g.f1 <= g.f2 for g in F.generators)


def test_fold_twice_rejected(t25):
    with pytest.raises(ValueError, match="already folded"):
        fold(fold(t25))


def test_reflection_t37(t37):
    M = staircase_involution(t37)
    assert M.image_of("v0") == {"v8"}
    assert M.image_of("v8") == {"v0"}
    assert M.image_of("v4") == {"v4"}  # central generator is fixed
    assert chain_map_violations(M, skew=True) == []


def test_reflection_squares_to_identity():
    for steps in symmetric_specs(4):
        for sign in Sign:
            C = staircase_from_steps(StaircaseSpec(steps, sign))
            assert is_involution(staircase_involution(C))


def test_reflection_rejects_asymmetric():
    C = staircase_from_steps(StaircaseSpec((1, 2), Sign.POSITIVE))
    with pytest.raises(ValueError, match="symmetric staircase"):
        staircase_involution(C)


def test_cone_over_unknot():
    C = unknot_complex()
    I = staircase_involution(C)
    cone = mapping_cone(fold(C), fold_map(I))
    assert cone.n == 2
    assert cone.arrows == frozenset()  # involution + identity vanishes
    got = {(g.grading, g.f1, g.f2) for g in cone.generators}
    assert got == {(1, 0, 0), (0, 0, 0)}
    assert homology_rank(cone, 0) == 1 and homology_rank(cone, 1) == 1


def test_cone_t37_shape(t37):
    cone = mapping_cone(fold(t37), fold_map(staircase_involution(t37)))
    assert cone.n == 18
    assert validate(cone).ok
    # the A-to-B block is involution + identity: fixed generators give no arrow
    assert not any(y == "B.v4" for x, y in cone.arrows if x == "A.v4")
    assert ("A.v0", "B.v0") in cone.arrows and ("A.v0", "B.v8") in cone.arrows


def test_cone_rank_sum_identity():
    for p, q in ((2, 3), (2, 5), (3, 4)):
        C = staircase_from_steps(steps_from_torus_knot(p, q))
        cone = mapping_cone(fold(C), fold_map(staircase_involution(C)))
        lo, hi = cone.grading_span()
        for g in range(lo - 1, hi + 2):
            assert homology_rank(cone, g) == (
                homology_rank(C, g) + homology_rank(C, g - 1))


def test_cone_rejects_unfolded(t25):
    I = staircase_involution(t25)
    with pytest.raises(ValueError, match="folded"):
        mapping_cone(t25, I)


def test_cone_rejects_unfiltered_involution(t25):
    F = fold(t25)
    # map v0 onto the connector above it: not filtration preserving
    bad = ChainMap(F, F, frozenset({("v0", "v1"), ("v1", "v0")} |
                                   {(f"v{i}", f"v{i}") for i in (2, 3, 4)}))
    with pytest.raises(ValueError, match="filtered chain map"):
        mapping_cone(F, bad)


def test_chain_map_violation_reports():
    C = staircase_from_steps(StaircaseSpec((1, 1), Sign.POSITIVE))
    F = fold(C)
    not_chain = ChainMap(F, F, frozenset({("v0", "v2"), ("v2", "v0")} |
                                         {("v1", "v0")}))
    assert any("commute" in v for v in chain_map_violations(not_chain))
