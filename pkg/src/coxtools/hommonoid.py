"""The monoid of central homomorphisms Hom(G, Z(G)) under
(f*g)(w) = f(w) g(w) (f.g(w))^-1, its embedding f -> f_flat into
End(G) via f_flat(w) = w f(w)^-1, invertibility and inversion.

Maps are stored densely (one central element id per group element) and
the monoid operations run on the group's Cayley table, so exhaustive
law sweeps stay cheap.  For an enumerated Coxeter group every
homomorphism into the center factors through the sign characters of
the odd-graph components, which makes the full monoid enumerable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .engine import EnumeratedGroup
from .graph import components


@dataclass(frozen=True)
class CentralHom:
    """A homomorphism G -> Z(G) as a dense value table."""

    group: EnumeratedGroup
    values: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.values[a]

    def array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.int32)

    def is_trivial(self) -> bool:
        return all(v == 0 for v in self.values)

    def check_homomorphism(self) -> bool:
        G = self.group
        M = G.mult_table()
        v = self.array()
        return bool(np.array_equal(v[M], M[np.ix_(v, v)])) and \
            set(self.values) <= set(G.center())


def trivial_hom(G: EnumeratedGroup) -> CentralHom:
    return CentralHom(G, (0,) * len(G))


def _odd_component_parities(G: EnumeratedGroup) -> list[np.ndarray]:
    """Per odd-graph component, the parity of the number of its
    generators in any word of each element (well defined because every
    defining relation uses the generators of a component an even
    number of times)."""
    comps = components(G.graph, odd_only=True)
    comp_of = {}
    for k, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = k
    out = [np.zeros(len(G), dtype=np.uint8) for _ in comps]
    # Element ids are in BFS order, so parents precede children.
    for a in G.element_ids():
        if a == 0:
            continue
        parent, k = G._preds[a]
        comp_idx = comp_of[G.graph.vertices[k]]
        for j, arr in enumerate(out):
            arr[a] = arr[parent] ^ (1 if comp_idx == j else 0)
    return out


def central_homs(G: EnumeratedGroup) -> list[CentralHom]:
    """All of Hom(G, Z(G)), the trivial map first."""
    parities = _odd_component_parities(G)
    center = list(G.center())
    M = G.mult_table()
    out = []
    for assignment in itertools.product(center, repeat=len(parities)):
        f = np.zeros(len(G), dtype=np.int32)
        for z, par in zip(assignment, parities):
            if z == 0:
                continue
            mask = par.astype(bool)
            f[mask] = M[f[mask], z]
        out.append(CentralHom(G, tuple(int(x) for x in f)))
    return out


def star(f: CentralHom, g: CentralHom) -> CentralHom:
    """(f*g)(w) = f(w) g(w) f(g(w))^-1."""
    if f.group is not g.group:
        raise ValueError("central homs of different groups")
    G = f.group
    M, inv = G.mult_table(), G.inverse_table()
    fv, gv = f.array(), g.array()
    vals = M[M[fv, gv], inv[fv[gv]]]
    return CentralHom(G, tuple(int(x) for x in vals))


def flat(f: CentralHom) -> tuple[int, ...]:
    """The endomorphism f_flat(w) = w f(w)^-1, as a value table."""
    G = f.group
    M, inv = G.mult_table(), G.inverse_table()
    fv = f.array()
    ids = np.arange(len(G), dtype=np.int32)
    return tuple(int(x) for x in M[ids, inv[fv]])


def is_invertible(f: CentralHom) -> bool:
    """f is *-invertible iff f_flat restricted to Z(G) is a bijection
    of Z(G)."""
    G = f.group
    center = G.center()
    image = {G.mult(z, G.inv(f(z))) for z in center}
    return image == set(center)


def invert(f: CentralHom) -> CentralHom:
    """Inverse under *: f'(w) = ((f_flat|_Z)^-1 (f(w)))^-1."""
    G = f.group
    if not is_invertible(f):
        raise ValueError("central hom is not invertible")
    center = G.center()
    unflat = {G.mult(z, G.inv(f(z))): z for z in center}
    vals = tuple(G.inv(unflat[f(w)]) for w in G.element_ids())
    return CentralHom(G, vals)


def invertible_homs(G: EnumeratedGroup) -> list[CentralHom]:
    return [f for f in central_homs(G) if is_invertible(f)]


def homs_fixing_factors(
    G: EnumeratedGroup, factors: Iterable, central_factor_ids: Iterable[int]
) -> list[CentralHom]:
    """Hom(G, Z(G))_o for a direct decomposition: maps killing the
    product of the central factors and sending each non-central factor
    into its own center."""
    factors = list(factors)
    central_ids = set(central_factor_ids)
    factor_centers = []
    for i, H in enumerate(factors):
        if i in central_ids:
            factor_centers.append({0})
        else:
            gens = H.generating_set()
            factor_centers.append({
                x for x in H.ids
                if all(G.mult(x, y) == G.mult(y, x) for y in gens)
            })
    out = []
    for f in central_homs(G):
        ok = all(
            f(x) in allowed
            for H, allowed in zip(factors, factor_centers)
            for x in H.ids
        )
        if ok:
            out.append(f)
    return out
