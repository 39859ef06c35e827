import itertools

import pytest

from conftest import naive_onto_p_morphisms
from roachkit import frames as F
from roachkit import morphisms as M
from roachkit.errors import CollapseError, PreconditionError
from roachkit.roach import builtin


def test_identity_is_p_morphism():
    for name in ("F1", "F2", "F3", "point"):
        pm = M.identity_morphism(builtin(name))
        assert M.check_p_morphism(pm, require_onto=True) is None


def test_skeleton_map_is_onto_p_morphism():
    for n in range(1, 7):
        for f in F.enumerate_frames(n):
            pm = M.skeleton_morphism(f)
            assert M.check_p_morphism(pm, require_onto=True) is None


def test_constant_map_from_fork_to_point():
    pm = M.PMorphism(builtin("two_fork"), builtin("point"), (0, 0, 0))
    assert M.check_p_morphism(pm, require_onto=True) is None


def test_check_reports_forth_violation():
    chain2 = builtin("chain", 2)
    antichain_image = M.PMorphism(chain2, F.normalize_frame([], 2), (0, 1))
    violation = M.check_p_morphism(antichain_image)
    assert violation is not None and violation.kind == "forth"
    assert violation.witness == (0, 1)


def test_check_reports_back_violation():
    chain2 = builtin("chain", 2)
    pm = M.PMorphism(builtin("point"), chain2, (0,))
    violation = M.check_p_morphism(pm)
    assert violation is not None and violation.kind == "back"


def test_check_reports_onto_violation():
    chain2 = builtin("chain", 2)
    pm = M.PMorphism(chain2, chain2, (1, 1))
    assert M.check_p_morphism(pm) is None
    violation = M.check_p_morphism(pm, require_onto=True)
    assert violation is not None and violation.kind == "onto"


def test_find_t2_onto_f1_is_isomorphism():
    pm = M.find_onto_p_morphism(builtin("T", 2), builtin("F1"))
    assert pm is not None
    assert sorted(pm.mapping) == [0, 1, 2, 3]
    assert M.check_p_morphism(pm, require_onto=True) is None


def test_find_cannot_map_point_onto_chain():
    assert M.find_onto_p_morphism(builtin("point"), builtin("chain", 2)) is None


def test_find_crisscross_host_onto_f3():
    # root below two depth-2 points that each see both maxima
    host = F.normalize_frame([(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4)], 5)
    pm = M.find_onto_p_morphism(host, builtin("F3"))
    assert pm is not None
    assert M.check_p_morphism(pm, require_onto=True) is None


def test_find_returns_lexicographically_least_map():
    source, target = builtin("G"), builtin("two_fork")
    pm = M.find_onto_p_morphism(source, target)
    oracle = naive_onto_p_morphisms(source, target)
    assert oracle and pm.mapping == min(oracle)


def test_find_agrees_with_naive_oracle():
    sources = [f for n in range(1, 5) for f in F.enumerate_frames(n)]
    targets = [g for n in range(1, 4) for g in F.enumerate_frames(n)]
    for source in sources:
        for target in targets:
            oracle = naive_onto_p_morphisms(source, target)
            pm = M.find_onto_p_morphism(source, target)
            assert (pm is not None) == bool(oracle)
            if pm is not None:
                assert pm.mapping in oracle


def test_composition_of_verified_morphisms_verifies():
    big = [f for f in F.enumerate_frames(4, "rooted")]
    mids = [f for n in (2, 3) for f in F.enumerate_frames(n, "rooted")]
    smalls = [f for n in (1, 2) for f in F.enumerate_frames(n, "rooted")]
    composed = 0
    for a in big:
        for b in mids:
            first = M.find_onto_p_morphism(a, b)
            if first is None:
                continue
            for c in smalls:
                second = M.find_onto_p_morphism(b, c)
                if second is None:
                    continue
                both = M.compose(first, second)
                assert M.check_p_morphism(both, require_onto=True) is None
                composed += 1
    assert composed > 20


def test_upset_images_and_preimages():
    source, target = builtin("T", 2), builtin("F1")
    pm = M.find_onto_p_morphism(source, target)
    for mask in range(1 << source.size):
        worlds = set(F.worlds_of(mask))
        if F.order_query(source, worlds, "up") == worlds:
            image = {pm.mapping[w] for w in worlds}
            assert F.order_query(target, image, "up") == image
    for mask in range(1 << target.size):
        worlds = set(F.worlds_of(mask))
        if F.order_query(target, worlds, "up") == worlds:
            preimage = {w for w in source.worlds() if pm.mapping[w] in worlds}
            assert F.order_query(source, preimage, "up") == preimage


def test_permissible_self():
    f1 = builtin("F1")
    found = M.is_permissible(f1, f1)
    assert found is not None and found.generator == 0
    assert found.morphism.mapping == (0, 1, 2, 3)


def test_permissible_needs_rooted_config():
    with pytest.raises(PreconditionError):
        M.is_permissible(F.normalize_frame([], 2), builtin("F1"))


def test_f1_not_permissible_in_small_2_roaches():
    f1 = builtin("F1")
    for n in range(1, 6):
        for host in F.enumerate_frames(n, "2-roach"):
            assert M.is_permissible(f1, host) is None


def test_t2_in_t3_only_via_the_root():
    t2, t3 = builtin("T", 2), builtin("T", 3)
    found = M.is_permissible(t2, t3)
    assert found is not None and found.generator == 0
    for g in range(1, t3.size):
        sub, _ = F.generated_subframe(t3, g)
        assert M.find_onto_p_morphism(sub, t2) is None


def test_collapse_f2_maxima():
    f2 = builtin("F2")
    quotient, pm = M.collapse(f2, [{2, 3}])
    assert quotient.size == 3
    assert M.check_p_morphism(pm, require_onto=True) is None
    # a two-cluster root below a single maximum
    expected = F.normalize_frame([(0, 1), (1, 0), (0, 2)], 3)
    assert F.are_isomorphic(quotient, expected)


def test_collapse_singletons_is_isomorphic_copy():
    f3 = builtin("F3")
    quotient, pm = M.collapse(f3, [{w} for w in f3.worlds()])
    assert F.are_isomorphic(quotient, f3)
    assert M.check_p_morphism(pm, require_onto=True) is None


def test_collapse_fork_maxima_gives_chain():
    quotient, pm = M.collapse(builtin("two_fork"), [{1, 2}])
    assert F.are_isomorphic(quotient, builtin("chain", 2))
    assert M.check_p_morphism(pm, require_onto=True) is None


def test_collapse_same_successor_antichain():
    # two depth-2 points with equal strict upsets merge even though the set
    # is not an upset
    host = F.normalize_frame([(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4)], 5)
    quotient, pm = M.collapse(host, [{1, 2}])
    assert quotient.size == 4
    assert M.check_p_morphism(pm, require_onto=True) is None


def test_collapse_rejects_bad_block():
    f1 = builtin("F1")
    with pytest.raises(CollapseError) as info:
        M.collapse(f1, [{0, 2}])  # neither an upset nor same-successor singletons
    assert "block 0" in str(info.value)
    with pytest.raises(CollapseError):
        M.collapse(f1, [{0}, {0, 1}])  # overlap
    with pytest.raises(CollapseError):
        M.collapse(builtin("F2"), [{0}])  # r1 sits in a proper cluster


def test_collapse_image_count_matches_naive_image_search():
    # every quotient by maximal-point subsets is found by the onto search too
    f = builtin("F3")
    maxima = [3, 4]
    for k in range(1, 3):
        for block in itertools.combinations(maxima, k):
            quotient, _ = M.collapse(f, [set(block)])
            assert M.find_onto_p_morphism(f, quotient) is not None
