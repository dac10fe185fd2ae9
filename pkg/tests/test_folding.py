import pytest

from relroots.folding import (
    DecompositionError,
    FoldingError,
    FoldingSpec,
    RelativeRoot,
    all_subgroups,
    build_relative_system,
    check_lemma1_decomposition,
    classify_relative_type,
    decompose_relative_root,
    enumerate_diagram_automorphisms,
    parse_folding_spec,
    trivial_gamma,
)
from relroots.rootcore import RootType, build_root_system


def fold(text):
    return build_relative_system(parse_folding_spec(text))


def test_automorphism_groups():
    assert len(enumerate_diagram_automorphisms(RootType.parse("A1"))) == 1
    assert len(enumerate_diagram_automorphisms(RootType.parse("A3"))) == 2
    assert len(enumerate_diagram_automorphisms(RootType.parse("D4"))) == 6
    assert len(enumerate_diagram_automorphisms(RootType.parse("C2"))) == 1
    assert len(enumerate_diagram_automorphisms(RootType.parse("E6"))) == 2
    assert len(enumerate_diagram_automorphisms(RootType.parse("F4"))) == 1


def test_subgroup_enumeration():
    # S3 for D4: subgroups of orders 1, 2 (x3), 3, 6
    sizes = sorted(len(g) for g in all_subgroups(RootType.parse("D4")))
    assert sizes == [1, 2, 2, 2, 3, 6]
    assert [len(g) for g in all_subgroups(RootType.parse("A3"))] == [1, 2]


def test_folding_spec_validation():
    t = RootType.parse("A3")
    flip = [a for a in enumerate_diagram_automorphisms(t) if not a.is_identity()]
    gamma = trivial_gamma(t) + tuple(flip)
    with pytest.raises(FoldingError):
        FoldingSpec(t, gamma, (0,)).validate()  # not flip-invariant
    FoldingSpec(t, gamma, (0, 1, 2)).validate()
    with pytest.raises(FoldingError):
        parse_folding_spec("C2 gamma=flip")
    with pytest.raises(FoldingError):
        parse_folding_spec("A3 levi=5")


def test_parse_round_trip():
    spec = parse_folding_spec("C4 levi=2,4")
    assert str(spec) == "C4 gamma=trivial levi=2,4"
    spec2 = parse_folding_spec("D4 gamma=triality")
    assert len(spec2.gamma) == 6
    spec3 = parse_folding_spec("A3 gamma=perm:3,2,1")
    assert len(spec3.gamma) == 2


def test_a3_flip_gives_c2():
    rrs = fold("A3 gamma=flip")
    assert rrs.rank == 2
    assert rrs.orbits == ((0, 2), (1,))
    assert len(rrs.rel_roots) == 8
    assert classify_relative_type(rrs) == ("C", 2)
    # the two outer simple roots land on the same relative root
    s1 = RelativeRoot((1, 0))
    assert len(rrs.fiber(s1)) == 2


def test_c4_levi_gives_c2():
    rrs = fold("C4 levi=2,4")
    assert classify_relative_type(rrs) == ("C", 2)


def test_b3_levi_gives_b2():
    rrs = fold("B3 levi=1,2")
    assert classify_relative_type(rrs) == ("B", 2)


def test_c3_levi_gives_bc2():
    rrs = fold("C3 levi=1,2")
    assert classify_relative_type(rrs) == ("BC", 2)
    # non-reduced: some relative root has its double in the system
    assert any(A.scaled(2) in rrs for A in rrs.rel_roots)


def test_d4_triality_gives_g2():
    rrs = fold("D4 gamma=triality")
    assert classify_relative_type(rrs) == ("G", 2)
    assert sorted(A.level for A in rrs.positive_roots()) == [1, 1, 2, 3, 4, 5]


def test_rank_one_classification():
    assert classify_relative_type(fold("A2 levi=1")) == ("A", 1)
    assert classify_relative_type(fold("C2 levi=1")) == ("BC", 1)


def test_projection_is_gamma_invariant():
    for text in ["A3 gamma=flip", "D4 gamma=triality", "A5 gamma=flip levi=1,3,5"]:
        rrs = fold(text)
        rs = rrs.rs
        for a in rrs.spec.gamma:
            inv = {a(i): i for i in range(rs.rank)}
            for r in rs.roots:
                moved = tuple(r.coords[inv[i]] for i in range(rs.rank))
                assert moved in rs
                assert rrs.project_coords(moved) == rrs.project_coords(r.coords)


def test_sign_and_level_coherence():
    for text in ["A3 gamma=flip", "C3 levi=1,2", "D4 gamma=triality"]:
        rrs = fold(text)
        for A, fiber in rrs.fibers.items():
            root_signs = {r.is_positive() for r in fiber}
            assert root_signs == {A.is_positive()}
        assert {-A for A in rrs.rel_roots} == set(rrs.rel_roots)


def test_decompose_c2_split_example():
    rrs = fold("C2")
    B, C = decompose_relative_root(rrs, RelativeRoot((2, 1)))
    assert B == RelativeRoot((1, 1))
    assert C == RelativeRoot((1, 0))


def test_decompose_d4_triality_simple():
    rrs = fold("D4 gamma=triality")
    B, C = decompose_relative_root(rrs, RelativeRoot((1, 0)))
    assert B == RelativeRoot((1, 1))
    assert C == RelativeRoot((0, -1))
    # the summands sit at levels 2 and -1; later multiples only go higher
    check_lemma1_decomposition(rrs, RelativeRoot((1, 0)), B, C)


def test_decompose_a3_flip_long_root():
    rrs = fold("A3 gamma=flip")
    A = RelativeRoot((2, 1))
    B, C = decompose_relative_root(rrs, A)
    assert {B, C} == {RelativeRoot((1, 1)), RelativeRoot((1, 0))}
    check_lemma1_decomposition(rrs, A, B, C)


def test_decompose_negative_mirrors_positive():
    rrs = fold("C2")
    A = RelativeRoot((2, 1))
    B, C = decompose_relative_root(rrs, A)
    Bn, Cn = decompose_relative_root(rrs, -A)
    assert (Bn, Cn) == (-B, -C)


def test_decompose_rejects_rank_one():
    rrs = fold("A2 levi=1")
    with pytest.raises(DecompositionError):
        decompose_relative_root(rrs, RelativeRoot((1,)))


FOLDS_FOR_SWEEP = [
    "A2", "A3", "B3", "C3", "C4", "D4", "G2", "F4",
    "A3 gamma=flip", "A4 gamma=flip", "A5 gamma=flip",
    "D4 gamma=triality", "D4 gamma=perm:1,2,4,3",
    "E6 gamma=flip",
    "C4 levi=2,4", "B3 levi=1,2", "C3 levi=1,2", "B4 levi=2,4",
    "F4 levi=1,2", "D5 levi=1,2,3", "C5 levi=2,4", "D6 levi=2,4,6",
    "A5 gamma=flip levi=1,3,5", "E6 gamma=flip levi=2,4",
]


def test_inadmissible_foldings_are_rejected():
    # these projections are not reflection-closed, hence match no type
    for text in ["B4 levi=1,3", "F4 levi=3,4"]:
        with pytest.raises(FoldingError):
            classify_relative_type(fold(text))


@pytest.mark.parametrize("text", FOLDS_FOR_SWEEP)
def test_decompose_every_relative_root(text):
    rrs = fold(text)
    if rrs.rank < 2:
        pytest.skip("rank-1 relative system")
    for A in sorted(rrs.rel_roots, key=lambda R: R.coords):
        B, C = decompose_relative_root(rrs, A)
        assert check_lemma1_decomposition(rrs, A, B, C)


@pytest.mark.parametrize("text", FOLDS_FOR_SWEEP)
def test_classification_always_succeeds(text):
    rrs = fold(text)
    label, rank = classify_relative_type(rrs)
    assert rank == rrs.rank
    assert label in ("A", "B", "C", "BC", "D", "E", "F", "G")


def test_checker_rejects_bad_split():
    rrs = fold("C2")
    # (1,0) + (1,1) = (2,1) is valid, but (1,1)+(1,0) with collinear pair:
    with pytest.raises(AssertionError):
        check_lemma1_decomposition(
            fold("C3 levi=1,2"), RelativeRoot((2, 2)),
            RelativeRoot((1, 1)), RelativeRoot((1, 1)))
    # wrong sum
    with pytest.raises(AssertionError):
        check_lemma1_decomposition(rrs, RelativeRoot((2, 1)),
                                   RelativeRoot((1, 1)), RelativeRoot((0, 1)))
