import itertools

import pytest

from coxtools.classify import build_named
from coxtools.engine import enumerate_group
from coxtools.graph import CoxeterGraph
from coxtools.hommonoid import (
    CentralHom,
    central_homs,
    flat,
    invert,
    invertible_homs,
    is_invertible,
    star,
    trivial_hom,
)


def _a1xa2():
    return enumerate_group(CoxeterGraph.disjoint_union(
        build_named("A1").relabel({"s1": "z"}), build_named("A2")))


def _klein():
    return enumerate_group(CoxeterGraph.disjoint_union(
        build_named("A1").relabel({"s1": "x"}),
        build_named("A1").relabel({"s1": "y"})))


def test_counts_and_homomorphism_property():
    G = _a1xa2()
    homs = central_homs(G)
    assert len(homs) == 4  # Z = C2, two odd components
    for f in homs:
        assert f.check_homomorphism()
    K = _klein()
    assert len(central_homs(K)) == 16  # End of the Klein four group


def test_trivial_map_is_unit():
    G = _a1xa2()
    one = trivial_hom(G)
    for f in central_homs(G):
        assert star(one, f).values == f.values
        assert star(f, one).values == f.values


def test_star_reduces_to_pointwise_product_when_composite_dies():
    # Both maps kill the abelian factor, so f(g(w)) = 1 and the star
    # is the plain pointwise product.
    G = _a1xa2()
    z = [x for x in G.center() if x != 0][0]
    candidates = [f for f in central_homs(G)
                  if f(G.generator("z")) == 0 and not f.is_trivial()]
    f = candidates[0]
    assert f(G.generator("s1")) == z
    fg = star(f, f)
    for w in G.element_ids():
        assert fg(w) == G.mult(f(w), f(w))
    assert fg.is_trivial()


def test_identity_hom_on_abelian_is_star_idempotent():
    # On W(A1): f = identity has f*f = f since w.w.w^-1 = w.
    G = enumerate_group(build_named("A1"))
    ident = CentralHom(G, tuple(G.element_ids()))
    assert star(ident, ident).values == ident.values


def test_flat_examples():
    G = _a1xa2()
    assert flat(trivial_hom(G)) == tuple(G.element_ids())
    # B2 with f(w) = w0^length: flat sends each generator s to s w0.
    B = enumerate_group(build_named("B2"))
    w0 = B.from_word(["s1", "s2", "s1", "s2"])
    vals = tuple(w0 if B.length(a) % 2 else 0 for a in B.element_ids())
    f = CentralHom(B, vals)
    assert f.check_homomorphism()
    fb = flat(f)
    for s in ("s1", "s2"):
        g = B.generator(s)
        assert fb[g] == B.mult(g, w0)


def test_flat_is_injective_monoid_hom():
    G = _a1xa2()
    homs = central_homs(G)
    tables = {f.values: flat(f) for f in homs}
    assert len(set(tables.values())) == len(homs)
    for f, g in itertools.product(homs, repeat=2):
        lhs = flat(star(f, g))
        rhs = tuple(tables[f.values][x] for x in tables[g.values])
        assert lhs == rhs


def test_invertibility_examples():
    G = _a1xa2()
    assert is_invertible(trivial_hom(G))
    # Maps killing the center are invertible, with inverse w -> f(w)^-1.
    for f in central_homs(G):
        if all(f(z) == 0 for z in G.center()):
            assert is_invertible(f)
            finv = invert(f)
            assert finv.values == tuple(G.inv(f(w)) for w in G.element_ids())
            assert star(finv, f).values == trivial_hom(G).values
            assert star(f, finv).values == trivial_hom(G).values
    # On W(A1) the identity map kills the center under flat: not invertible.
    A = enumerate_group(build_named("A1"))
    ident = CentralHom(A, tuple(A.element_ids()))
    assert not is_invertible(ident)
    with pytest.raises(ValueError):
        invert(ident)


def test_self_inverse_at_elementary_two_center():
    # f with f.f = 1 satisfies f*f = 1.
    G = _klein()
    for f in central_homs(G):
        composed = tuple(f(f(w)) for w in G.element_ids())
        if composed == trivial_hom(G).values and is_invertible(f):
            assert star(f, f).values == trivial_hom(G).values


def test_invertible_count_klein():
    # Hom^x of the Klein four group is GL_2(F_2).
    assert len(invertible_homs(_klein())) == 6
