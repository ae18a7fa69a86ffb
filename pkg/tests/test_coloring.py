"""Colorings, the product encoding, and the dimension/semigroup reductions."""
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sumgames.coloring import (
    cardinality_coloring,
    coloring_from_descriptor,
    constant_coloring,
    decode_product,
    mod_coloring,
    parity_coloring,
    product_coloring,
    pullback_to_fin,
    reduce_two_dim_to_one,
    seeded_hash_coloring,
)
from sumgames.semigroups import (
    BlockSequence,
    ElementSequence,
    ImproperSequenceError,
    block_chains,
    finite_sets,
    fs_enumerate,
    naturals,
    sum_hypergraph,
    take_sumsequence,
)

NAT = naturals()


def nat_seq(*terms):
    return ElementSequence.from_terms(NAT, terms)


def test_product_of_trivial_colorings_is_trivial():
    c = product_coloring(constant_coloring(1, 1), constant_coloring(1, 1))
    assert c.palette == 1
    assert c.of(17) == 1


def test_product_encoding_formula():
    c1 = constant_coloring(1, 2, color=2)
    c2 = constant_coloring(1, 3, color=3)
    c = product_coloring(c1, c2)
    assert c.palette == 6
    assert c.of(5) == 6  # (2-1)*3 + 3
    assert decode_product(6, 3) == (2, 3)


def test_product_palette_squares():
    chi = parity_coloring()
    c = product_coloring(chi, chi)
    assert c.palette == chi.palette ** 2  # range representable as {1..k^2}


def test_product_arity_mismatch():
    with pytest.raises(ValueError):
        product_coloring(parity_coloring(1), cardinality_coloring(2))


@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 1000))
def test_product_roundtrip(k1, k2, x):
    c1 = mod_coloring(k1)
    c2 = mod_coloring(k2)
    c = product_coloring(c1, c2)
    assert decode_product(c.of(x), k2) == (c1.of(x), c2.of(x))


def test_cardinality_coloring():
    c = cardinality_coloring(2)
    assert c.of(3, 3) == 1
    assert c.of(3, 4) == 2
    assert cardinality_coloring(1).of(99) == 1


def test_seeded_hash_coloring_is_stable_and_seeded():
    a = seeded_hash_coloring(3, seed=7, d=2)
    b = seeded_hash_coloring(3, seed=7, d=2)
    c = seeded_hash_coloring(3, seed=8, d=2)
    pair = (frozenset({1, 2}), frozenset({4}))
    assert a.of(*pair) == b.of(*pair)
    colors_a = [a.of(i, i + 1) for i in range(1, 40)]
    colors_c = [c.of(i, i + 1) for i in range(1, 40)]
    assert colors_a != colors_c
    assert set(colors_a) <= {1, 2, 3}


def test_descriptor_parsing():
    assert coloring_from_descriptor({"name": "parity"}).of(4) == 1
    assert coloring_from_descriptor({"name": "mod-k", "k": 3}).of(5) == 3
    assert coloring_from_descriptor({"name": "cardinality", "d": 2}).of(1, 2) == 2
    with pytest.raises(ValueError):
        coloring_from_descriptor({"name": "nope"})
    with pytest.raises(ValueError):
        coloring_from_descriptor({"k": 2})


# ------------------------------------------------ two-dim -> one-dim

def test_reduction_of_constants_is_constant():
    eta = reduce_two_dim_to_one(constant_coloring(1, 1), constant_coloring(2, 1), NAT)
    assert eta.of(3, 9) == 1


def test_reduction_kappa_uses_enumeration_min():
    eta = reduce_two_dim_to_one(parity_coloring(), constant_coloring(2, 1), NAT)
    # kappa component of {1, 2} is parity(1) = odd = 2.
    assert decode_product(eta.of(1, 2), 1)[0] == 2


def test_reduction_even_base_monochromatic():
    # Oracle: enumerate all depth-3 edges and 7 FS vertices of (2,4,8).
    seq = nat_seq(2, 4, 8)
    chi_v = parity_coloring()
    eta = reduce_two_dim_to_one(chi_v, constant_coloring(2, 1), NAT)
    edges = sum_hypergraph(seq, 3, 2)
    assert len(edges) == 5
    assert len({eta.of(e) for e in edges}) == 1
    fs_values = fs_enumerate(seq, 3).values()
    assert len(fs_values) == 7
    assert {chi_v.of(v) for v in fs_values} == {1}


@given(st.integers(0, 2 ** 31), st.integers(2, 3))
def test_reduction_guarantee_finite_shadow(seed, k):
    """The finite content of the reduction guarantee.

    For an eta-monochromatic sum graph of an increasing proper base:
    the edge component is chi_edge-monochromatic outright, and every
    vertex that is the smaller endpoint of some edge carries the kappa
    color.  (The enumeration-maximal vertices have no later partner at
    finite depth, so only the limit argument pins them.)
    """
    chi_v = seeded_hash_coloring(k, seed, d=1)
    chi_e = seeded_hash_coloring(k, seed + 1, d=2)
    eta = reduce_two_dim_to_one(chi_v, chi_e, NAT)
    seq = nat_seq(1, 2, 4, 8)
    sums = fs_enumerate(seq, 4)
    edges = [(sums[F], sums[H]) for F, H in block_chains(4, 2)]
    eta_colors = {eta.of(a, b) for a, b in edges}
    if len(eta_colors) == 1:
        kappa, edge_color = decode_product(next(iter(eta_colors)), chi_e.palette)
        assert {chi_e.of(a, b) for a, b in edges} == {edge_color}
        pinned = {min(a, b) for a, b in edges}
        assert {chi_v.of(v) for v in pinned} == {kappa}


# ------------------------------------------------ pullback to Fin

def test_pullback_constant():
    base = nat_seq(1, 2, 4)
    kappa = pullback_to_fin(constant_coloring(2, 1), base)
    assert kappa.of(frozenset({1}), frozenset({2, 3})) == 1


def test_pullback_substitutes_sums():
    base = nat_seq(1, 2, 4)
    kappa = pullback_to_fin(parity_coloring(2), base)
    # chi({a_{1}, a_{2}}) = parity(1 + 2) = odd = 2.
    assert kappa.of(frozenset({1}), frozenset({2})) == 2


def test_pullback_incomparable_fallback():
    base = nat_seq(1, 2, 4)
    kappa = pullback_to_fin(parity_coloring(2), base)
    assert kappa.of(frozenset({1, 2}), frozenset({2, 3})) == 1


def test_pullback_improper_base_errors():
    base = nat_seq(1, 2, 3)  # a_{1,2} == a_3
    kappa = pullback_to_fin(constant_coloring(2, 1), base)
    with pytest.raises(ImproperSequenceError):
        kappa.of(frozenset({1, 2}), frozenset({3}))


@given(st.integers(0, 2 ** 31))
def test_pullback_soundness(seed):
    """A kappa-monochromatic block sum graph pulls back to a
    chi-monochromatic sum graph of the induced sumsequence."""
    chi = seeded_hash_coloring(2, seed, d=2)
    base = nat_seq(1, 2, 4, 8, 16)
    kappa = pullback_to_fin(chi, base)
    blocks = BlockSequence((frozenset({1}), frozenset({2, 3}), frozenset({4, 5})))
    fin = finite_sets()
    block_elems = ElementSequence.from_terms(fin, list(blocks))
    taken = take_sumsequence(base, blocks)
    block_sums = fs_enumerate(block_elems, 3)
    taken_sums = fs_enumerate(taken, 3)
    for F, H in block_chains(3, 2):
        assert kappa.of(block_sums[F], block_sums[H]) == chi.of(taken_sums[F], taken_sums[H])


def test_collapse_detector_on_sumsequence():
    # Cardinality color 1 along a sumsequence forces the collapse element.
    fin = finite_sets()
    seq = ElementSequence.from_terms(fin, [frozenset({1})] * 4)
    sums = fs_enumerate(seq, 3)
    card = cardinality_coloring(2)
    colors = {card.of(sums[F], sums[H]) for F, H in block_chains(3, 2)}
    assert colors == {1}
    e = sums[frozenset({1})]
    assert fin.combine(e, e) == e
