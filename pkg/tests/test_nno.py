"""Parameterized natural-number objects and their transport."""
import pytest
import hypothesis.strategies as st
from hypothesis import given, settings

from catkit.completion import factor_through, inflate, inflate_section, skeletize
from catkit.core import identity_functor, is_weak_equivalence
from catkit.generators import (
    chain_poset,
    finset_fragment,
    heyting_category,
    heyting_diamond,
    random_category,
    setoid_groupoid,
)
from catkit.limits import (
    find_binary_products,
    find_terminal,
    partial_binary_products,
    transfer_binary_products,
    transfer_terminal,
)
from catkit.nno import (
    PNNOW,
    find_pnno,
    is_pnno,
    lift_preservation_pnno,
    preserves_pnno,
    reflect_pnno,
    transfer_pnno,
)

seeds = st.integers(min_value=0, max_value=119)

pytestmark = pytest.mark.filterwarnings("ignore:transfer into non-skeletal")


def _codiscrete(n):
    return setoid_groupoid(n, {(i, i + 1) for i in range(n - 1)}, name=f"codisc{n}")


def test_bounded_lattices_carry_the_degenerate_pnno():
    for C in (chain_poset(3), heyting_category(heyting_diamond())):
        term = find_terminal(C)
        prods = find_binary_products(C)
        w = find_pnno(C, term, prods)
        assert w is not None
        assert w.N == term.t
        assert C.is_identity(w.z) and C.is_identity(w.s)


def test_codiscrete_any_object_works():
    S = _codiscrete(3)
    term = find_terminal(S)
    prods = find_binary_products(S)
    w = find_pnno(S, term, prods)
    assert w is not None and w.N == 0
    # every object admits some witness in a codiscrete groupoid
    for N in range(S.n_objects):
        z = S.hom(term.t, N)[0]
        s = S.hom(N, N)[0]
        assert is_pnno(S, term, prods, N, z, s) is not None


def test_fragment_has_no_pnno():
    C = finset_fragment(2)
    term = find_terminal(C)
    prods = partial_binary_products(C)
    assert find_pnno(C, term, prods) is None
    # exhaustive: no candidate triple survives even with vacuous pairs
    for N in range(C.n_objects):
        for z in C.hom(term.t, N):
            for s in C.hom(N, N):
                assert is_pnno(C, term, prods, N, z, s) is None


def test_is_pnno_validates_what_find_returns():
    for seed in range(20):
        C = random_category(seed)
        term = find_terminal(C)
        if term is None:
            continue
        prods = partial_binary_products(C)
        w = find_pnno(C, term, prods)
        if w is not None:
            assert is_pnno(C, term, prods, w.N, w.z, w.s) is not None


def test_chain_rejects_nonterminal_candidates():
    C = chain_poset(3)
    term = find_terminal(C)
    prods = find_binary_products(C)
    # the only point of any N is forced; a successor that drops below top
    # cannot satisfy recursion for the identity data
    assert is_pnno(C, term, prods, 2, C.identity[2], C.identity[2]) is not None
    # no z exists into lower objects, so no other witness can be formed
    for N in (0, 1):
        assert C.hom(term.t, N) == ()


def test_transfer_pnno_matches_direct_search():
    S = _codiscrete(3)
    infl, proj = inflate(S, [2, 1, 2])
    cert = is_weak_equivalence(inflate_section(proj))
    termC = find_terminal(S)
    prodsC = find_binary_products(S)
    wC = find_pnno(S, termC, prodsC)
    termD, _ = transfer_terminal(cert, termC)
    prodsD, _ = transfer_binary_products(cert, prodsC)
    wD, pres = transfer_pnno(cert, termC, prodsC, termD, prodsD, wC)
    assert is_pnno(infl, termD, prodsD, wD.N, wD.z, wD.s) is not None
    assert pres.functor is cert.functor


def test_reflect_pnno_along_equivalence():
    # reflect along the projection: a triple upstairs whose image downstairs
    # is a parameterized N is itself one
    S = _codiscrete(2)
    infl, proj = inflate(S, [2, 2])
    cert_sec = is_weak_equivalence(inflate_section(proj))
    cert_proj = is_weak_equivalence(proj)
    termS = find_terminal(S)
    prodsS = find_binary_products(S)
    termI, _ = transfer_terminal(cert_sec, termS)
    prodsI, _ = transfer_binary_products(cert_sec, prodsS)
    wI = find_pnno(infl, termI, prodsI)
    back = reflect_pnno(cert_proj, termI, prodsI, termS, prodsS, wI.N, wI.z, wI.s)
    assert is_pnno(infl, termI, prodsI, back.N, back.z, back.s) is not None


def test_preserves_pnno_identity():
    C = chain_poset(3)
    term = find_terminal(C)
    prods = find_binary_products(C)
    w = find_pnno(C, term, prods)
    pres = preserves_pnno(identity_functor(C), term, prods, w, term, prods, w)
    assert pres is not None
    assert C.is_identity(pres.comparison.fwd)


def test_lift_preservation_pnno_through_completion():
    S = _codiscrete(3)
    infl, proj = inflate(S, [1, 2, 2])
    res = skeletize(infl)
    with pytest.warns(UserWarning, match="not gaunt"):
        fac = factor_through(res, proj)
    term_infl = find_terminal(infl)
    prods_infl = find_binary_products(infl)
    w_infl = find_pnno(infl, term_infl, prods_infl)
    termS = find_terminal(S)
    prodsS = find_binary_products(S)
    wS = find_pnno(S, termS, prodsS)
    Fcert = preserves_pnno(proj, term_infl, prods_infl, w_infl, termS, prodsS, wS)
    assert Fcert is not None
    lifted = lift_preservation_pnno(
        res.cert,
        proj,
        fac.functor,
        fac.alpha,
        term_infl,
        prods_infl,
        w_infl,
        termS,
        prodsS,
        wS,
        Fcert,
    )
    assert lifted.functor is fac.functor
