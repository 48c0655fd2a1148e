"""Table-level category validation, isos, functors, weak equivalences."""
import pytest
import hypothesis.strategies as st
from hypothesis import given, settings

from catkit.core import (
    check_category_tables,
    check_functor,
    check_nat_iso,
    check_weak_equivalence_cert,
    compose_functors,
    fincat,
    find_iso,
    functor,
    functors_equal,
    identity_functor,
    is_fully_faithful,
    is_essentially_surjective,
    is_weak_equivalence,
    iso_classes,
    isos_between,
    nat_iso,
    opposite,
    opposite_functor,
    same_tables,
    table_isomorphic,
)
from catkit.errors import (
    AssociativityViolation,
    IllTypedComposite,
    IllTypedImage,
    MissingComposite,
    UnitLawViolation,
)
from catkit.generators import (
    chain_poset,
    delooping,
    finset_fragment,
    random_category,
    setoid_groupoid,
    terminal_cat,
    walking_iso,
)

seeds = st.integers(min_value=0, max_value=119)


def test_fincat_builds_and_validates():
    C = walking_iso()
    check_category_tables(C)
    assert C.n_objects == 2
    assert C.n_morphisms == 4


def test_identity_composites_inferred():
    # composition dict omits identity pairs entirely; unit laws fill them
    C = fincat(
        "two",
        ["a", "b"],
        ["id_a", "id_b", "f"],
        [0, 1, 0],
        [0, 1, 1],
        [0, 1],
        {},
    )
    assert C.compose(0, 2) == 2
    assert C.compose(2, 1) == 2


def test_conflicting_identity_composite_rejected():
    with pytest.raises(UnitLawViolation):
        fincat(
            "bad",
            ["a", "b"],
            ["id_a", "id_b", "f", "g"],
            [0, 1, 0, 0],
            [0, 1, 1, 1],
            [0, 1],
            {(0, 2): 3},
        )


def test_missing_composite_detected():
    with pytest.raises(MissingComposite):
        fincat(
            "gap",
            ["a", "b", "c"],
            ["id_a", "id_b", "id_c", "f", "g"],
            [0, 1, 2, 0, 1],
            [0, 1, 2, 1, 2],
            [0, 1, 2],
            {},
        )


def test_ill_typed_composite_detected():
    with pytest.raises(IllTypedComposite):
        fincat(
            "wrong",
            ["a", "b", "c"],
            ["id_a", "id_b", "id_c", "f", "g"],
            [0, 1, 2, 0, 1],
            [0, 1, 2, 1, 2],
            [0, 1, 2],
            {(3, 4): 3},
        )


def test_associativity_checked():
    # delooping validates its table; a non-associative one must not survive
    with pytest.raises(AssociativityViolation):
        fincat(
            "nonassoc",
            ["x"],
            ["e", "a", "b"],
            [0, 0, 0],
            [0, 0, 0],
            [0],
            {(1, 1): 2, (1, 2): 0, (2, 1): 1, (2, 2): 1},
        )


def test_compose_is_diagrammatic():
    C = chain_poset(3)
    f = C.hom(0, 1)[0]
    g = C.hom(1, 2)[0]
    assert C.compose(f, g) == C.hom(0, 2)[0]
    with pytest.raises(IllTypedComposite):
        C.compose(g, f)


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_corpus_validates_and_unit_laws(seed):
    C = random_category(seed)
    check_category_tables(C)
    for f in range(C.n_morphisms):
        assert C.compose(C.identity[C.mor_src[f]], f) == f
        assert C.compose(f, C.identity[C.mor_dst[f]]) == f


@given(seeds, st.integers(0, 7))
@settings(max_examples=40, deadline=None)
def test_corpus_associativity_spot(seed, salt):
    C = random_category(seed)
    m = C.n_morphisms
    triples = [
        (f, g, h)
        for f in range(m)
        for g in range(m)
        if C.mor_dst[f] == C.mor_src[g]
        for h in range(m)
        if C.mor_dst[g] == C.mor_src[h]
    ]
    for f, g, h in triples[salt::8]:
        assert C.compose(C.compose(f, g), h) == C.compose(f, C.compose(g, h))


def test_find_iso_and_classes():
    C = walking_iso()
    f = C.hom(0, 1)[0]
    iso = find_iso(C, f)
    assert iso is not None
    assert C.compose(iso.fwd, iso.inv) == C.identity[0]
    assert C.compose(iso.inv, iso.fwd) == C.identity[1]
    assert iso_classes(C) == ((0, 1),)


def test_isos_between_counts_automorphisms():
    Z2 = delooping([[0, 1], [1, 0]], name="Z2")
    assert len(isos_between(Z2, 0, 0)) == 2


def test_iso_classes_on_setoid():
    S = setoid_groupoid(5, {(0, 1), (1, 2), (3, 4)})
    assert iso_classes(S) == ((0, 1, 2), (3, 4))


def test_functor_validation_catches_bad_images():
    C, T = walking_iso(), terminal_cat()
    with pytest.raises(IllTypedImage):
        functor(C, C, [0, 1], [0, 0, 2, 3])
    F = functor(C, T, [0, 0], [0, 0, 0, 0])
    check_functor(F)


def test_compose_functors_and_equality():
    C = walking_iso()
    I = identity_functor(C)
    assert functors_equal(compose_functors(I, I), I)
    swap = functor(C, C, [1, 0], [1, 0, 3, 2])
    assert not functors_equal(swap, I)
    assert functors_equal(compose_functors(swap, swap), I)


def test_nat_iso_validation():
    C = walking_iso()
    I = identity_functor(C)
    swap = functor(C, C, [1, 0], [1, 0, 3, 2])
    a = nat_iso(I, swap, [C.hom(0, 1)[0], C.hom(1, 0)[0]])
    check_nat_iso(a)


def test_weak_equivalence_certificate_roundtrip():
    S = setoid_groupoid(4, {(0, 1), (2, 3)})
    from catkit.completion import skeletize

    res = skeletize(S)
    cert = res.cert
    check_weak_equivalence_cert(cert)
    assert is_fully_faithful(cert.functor) is not None
    assert is_essentially_surjective(cert.functor) is not None
    # ff_inverse really inverts the hom-level bijection
    G = cert.functor
    for x in range(S.n_objects):
        for y in range(S.n_objects):
            for h in S.hom(x, y):
                assert cert.ff_inverse(x, y, G.mor_map[h]) == h


def test_non_equivalences_rejected():
    C = walking_iso()
    T = terminal_cat()
    collapse = functor(C, T, [0, 0], [0, 0, 0, 0])
    assert is_weak_equivalence(collapse) is not None
    two = fincat("2disc", ["a", "b"], ["id_a", "id_b"], [0, 1], [0, 1], [0, 1], {})
    incl = functor(T, two, [0], [0])
    assert is_fully_faithful(incl) is not None
    assert is_essentially_surjective(incl) is None
    assert is_weak_equivalence(incl) is None


def test_opposite_involution_and_homs():
    C = finset_fragment(2)
    op = opposite(C)
    assert same_tables(opposite(op), C)
    for x in range(C.n_objects):
        for y in range(C.n_objects):
            assert sorted(op.hom(x, y)) == sorted(C.hom(y, x))


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_opposite_preserves_weak_equivalence_status(seed):
    from catkit.generators import random_weak_equivalence

    F = random_weak_equivalence(seed)
    assert is_weak_equivalence(F) is not None
    assert is_weak_equivalence(opposite_functor(F)) is not None


def test_table_isomorphic_detects_relabeling():
    C = walking_iso()
    relabeled = fincat(
        "walking-iso-renamed",
        ["x", "y"],
        ["1x", "1y", "u", "v"],
        list(C.mor_src),
        list(C.mor_dst),
        list(C.identity),
        {
            (f, g): C.comp_table[f][g]
            for f in range(4)
            for g in range(4)
            if C.mor_dst[f] == C.mor_src[g] and C.comp_table[f][g] is not None
        },
    )
    assert table_isomorphic(C, relabeled)
    assert not table_isomorphic(C, terminal_cat())


def test_same_tables_is_strict():
    assert same_tables(walking_iso(), walking_iso())
    assert not same_tables(walking_iso(), terminal_cat())
