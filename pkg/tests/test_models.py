"""Cross-model checks: the enumerated Coxeter groups are isomorphic to
independently built permutation models (symmetric, signed-permutation,
even-signed, dihedral, alternating x C2).  These models share no code
with the root-permutation engine, so an agreement here validates the
whole pipeline from graph to multiplication."""

import itertools

import pytest

from coxtools.classify import build_named
from coxtools.engine import GroupView, enumerate_group, find_isomorphism
from conftest import group_of


def _simple_view(elements, compose, invert, identity):
    elements = sorted(elements)
    index = {e: i for i, e in enumerate(elements)}
    ident_idx = index[identity]
    orders = {}

    def mult(a, b):
        return index[compose(elements[a], elements[b])]

    def inv(a):
        return index[invert(elements[a])]

    def order_of(a):
        if a not in orders:
            acc, k = a, 1
            while acc != ident_idx:
                acc = mult(acc, a)
                k += 1
            orders[a] = k
        return orders[a]

    return GroupView(size=len(elements), mult=mult, inv=inv, order_of=order_of)


def symmetric_view(n):
    elements = list(itertools.permutations(range(n)))

    def compose(a, b):
        return tuple(a[b[i]] for i in range(n))

    def invert(a):
        out = [0] * n
        for i, v in enumerate(a):
            out[v] = i
        return tuple(out)

    return _simple_view(elements, compose, invert, tuple(range(n)))


def signed_view(n, even_only=False):
    # Signed permutations as tuples with values in {+-1..+-n}.
    elements = []
    for perm in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            if even_only and signs.count(-1) % 2 == 1:
                continue
            elements.append(tuple(s * v for s, v in zip(signs, perm)))

    def compose(a, b):
        out = []
        for i in range(n):
            t = b[i]
            v = a[abs(t) - 1]
            out.append(v if t > 0 else -v)
        return tuple(out)

    def invert(a):
        out = [0] * n
        for i, v in enumerate(a, start=1):
            out[abs(v) - 1] = i if v > 0 else -i
        return tuple(out)

    return _simple_view(elements, compose, invert, tuple(range(1, n + 1)))


def dihedral_view(m):
    # (rotation k, reflected?) with composition in O(2).
    elements = [(k, r) for k in range(m) for r in (0, 1)]

    def compose(a, b):
        k1, r1 = a
        k2, r2 = b
        k = (k1 + (-k2 if r1 else k2)) % m
        return (k, r1 ^ r2)

    def invert(a):
        k, r = a
        return (k if r else (-k) % m, r)

    return _simple_view(elements, compose, invert, (0, 0))


def alternating_times_c2_view(n):
    elements = []
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n)
                         if perm[i] > perm[j])
        if inversions % 2 == 0:
            for z in (0, 1):
                elements.append((perm, z))

    def compose(a, b):
        return (tuple(a[0][b[0][i]] for i in range(n)), a[1] ^ b[1])

    def invert(a):
        out = [0] * n
        for i, v in enumerate(a[0]):
            out[v] = i
        return (tuple(out), a[1])

    return _simple_view(elements, compose, invert, (tuple(range(n)), 0))


@pytest.mark.parametrize("name,n", [("A2", 3), ("A3", 4), ("A4", 5)])
def test_a_family_is_symmetric_group(name, n):
    assert find_isomorphism(group_of(name), symmetric_view(n))


@pytest.mark.parametrize("name,n", [("B2", 2), ("B3", 3)])
def test_b_family_is_hyperoctahedral(name, n):
    assert find_isomorphism(group_of(name), signed_view(n))


def test_d4_is_even_signed_group():
    assert find_isomorphism(group_of("D4"), signed_view(4, even_only=True))


@pytest.mark.parametrize("m", [5, 7, 8, 12])
def test_i2_is_dihedral(m):
    assert find_isomorphism(group_of(f"I2({m})"), dihedral_view(m))


def test_h3_is_alternating5_times_center():
    assert find_isomorphism(group_of("H3"), alternating_times_c2_view(5))


def test_negative_cross_model():
    # Same order, different groups: Sym4 is not the dihedral group of
    # order 24.
    assert find_isomorphism(group_of("A3"), dihedral_view(12)) == []
