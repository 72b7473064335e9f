"""Longest elements, the highest-root catalog, reflection
decompositions of longest elements, and the nested normal subgroups
of the B- and D-families.

The decomposition algorithm peels one commuting reflection off the
longest element per turn: pick an irreducible component of the current
vertex set, look up its highest root(s), reflect, and recurse on the
component minus the contact vertex (or the two contact vertices for
the A / odd-I2 families).  Tie-breaks are fixed so the produced
generator sequences are reproducible: the component containing the
last vertex in canonical order is processed first, and the first of
the two catalog roots is used when there is a choice.  Only the parity
of the sequence length is meaningful downstream; it is independent of
all of these choices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .classify import TypeLabel, build_named, classify_irreducible
from .engine import EnumeratedGroup, SubgroupHandle, subgroup_closure
from .errors import CoxeterError
from .graph import components, graph_isomorphisms


@dataclass(frozen=True)
class HighestRootEntry:
    """One catalog highest root: coefficients over catalog positions
    1..n and the contact vertex indices (one or two)."""

    label: TypeLabel
    variant: int
    coefficients: tuple[float, ...]
    contacts: tuple[int, ...]


def highest_root_entries(label: TypeLabel) -> list[HighestRootEntry]:
    """The catalog root(s) for a canonical finite irreducible type."""
    f, n = label.family, label.param
    c = 2.0 * math.cos(math.pi / 5.0)
    sqrt2 = math.sqrt(2.0)
    if f == "A":
        coeffs = (1.0,) * n
        contacts = (1,) if n == 1 else (1, n)
        return [HighestRootEntry(label, 1, coeffs, contacts)]
    if f == "B":
        if n == 1:
            return [HighestRootEntry(label, 1, (1.0,), (1,))]
        v1 = (1.0,) + (sqrt2,) * (n - 1)
        v2 = (sqrt2,) + (2.0,) * (n - 2) + (1.0,)
        return [
            HighestRootEntry(label, 1, v1, (n,)),
            HighestRootEntry(label, 2, v2, (n - 1,)),
        ]
    if f == "D":
        coeffs = (1.0, 1.0) + (2.0,) * (n - 3) + (1.0,)
        return [HighestRootEntry(label, 1, coeffs, (n - 1,))]
    if f == "E":
        data = {
            6: ((1, 2, 2, 3, 2, 1), 2),
            7: ((2, 2, 3, 4, 3, 2, 1), 1),
            8: ((2, 3, 4, 6, 5, 4, 3, 2), 8),
        }
        coeffs, contact = data[n]
        return [HighestRootEntry(label, 1, tuple(float(x) for x in coeffs), (contact,))]
    if f == "F":
        return [
            HighestRootEntry(label, 1, (2.0, 3.0, 2 * sqrt2, sqrt2), (1,)),
            HighestRootEntry(label, 2, (sqrt2, 2 * sqrt2, 3.0, 2.0), (4,)),
        ]
    if f == "H":
        if n == 3:
            return [HighestRootEntry(label, 1, (c + 1.0, 2 * c, c), (2,))]
        return [HighestRootEntry(label, 1, (3 * c + 2, 4 * c + 2, 3 * c + 1, 2 * c), (4,))]
    if f == "I2":
        m = n
        if m % 2 == 1:
            h = 1.0 / (2.0 * math.sin(math.pi / (2 * m)))
            return [HighestRootEntry(label, 1, (h, h), (1, 2))]
        cot = math.cos(math.pi / m) / math.sin(math.pi / m)
        csc = 1.0 / math.sin(math.pi / m)
        return [
            HighestRootEntry(label, 1, (cot, csc), (2,)),
            HighestRootEntry(label, 2, (csc, cot), (1,)),
        ]
    raise CoxeterError(f"{label} has no highest-root entry")


# -- longest elements ---------------------------------------------------------


def longest_perm(table, subset: Iterable[str]) -> tuple[np.ndarray, dict[str, str]]:
    """Root permutation of w0(subset) plus the graph automorphism
    sigma it induces (w0 . a_s = -a_sigma(s)); needs only the table.

    Greedy: while the image of some simple root of the subset is still
    positive, right-multiply by that generator; each step raises the
    length by one, so this stops after l(w0) steps.
    """
    g = table.graph
    subset = [s for s in g.vertices if s in set(subset)]
    perm = np.arange(len(table), dtype=np.int32)
    while True:
        progressed = False
        for s in subset:
            if table.is_positive_id(int(perm[table.simple_root_id(s)])):
                perm = perm[table.generator_perm(s)]
                progressed = True
                break
        if not progressed:
            break
    sigma: dict[str, str] = {}
    p = table.n_positive
    for s in subset:
        j = int(perm[table.simple_root_id(s)])
        if j < p or j - p >= len(g.vertices):
            raise CoxeterError("longest element did not negate a simple root")
        sigma[s] = g.vertices[j - p]
    return perm, sigma


def longest_element(G: EnumeratedGroup, subset: Iterable[str]) -> tuple[int, dict[str, str]]:
    """The longest element of the standard parabolic on ``subset`` and
    its induced graph automorphism, as an element of the group."""
    perm, sigma = longest_perm(G.table, subset)
    return G.element_from_perm(perm), sigma


def sigma_is_identity(sigma: dict[str, str]) -> bool:
    return all(s == t for s, t in sigma.items())


@dataclass
class ReflectionDecomposition:
    """w0(I) as an ordered product of pairwise-commuting reflections
    along pairwise-orthogonal roots, with the descending chain of
    leftover vertex subsets K0 = I > K1 > ... > Kr = empty."""

    subset: tuple[str, ...]
    root_ids: list[int]
    reflections: list[int]
    subsets: list[tuple[str, ...]]
    w0: int

    @property
    def length(self) -> int:
        """Number of reflections (the generator-sequence length r)."""
        return len(self.root_ids)

    @property
    def generator_sequence(self) -> list[tuple[str, ...]]:
        """K1, ..., Kr (the initial K0 = I is not part of it)."""
        return self.subsets[1:]


def _component_map(graph, comp: Sequence[str]) -> tuple[TypeLabel, dict[int, str]]:
    """Classify a component and fix the lexicographically smallest
    mapping catalog position -> ambient vertex."""
    sub = graph.subgraph(comp)
    label = classify_irreducible(sub)
    if not label.is_finite():
        raise CoxeterError(f"component {comp} is not of finite type")
    catalog = build_named(label)
    isos = graph_isomorphisms(catalog, sub, all_maps=True)
    if not isos:
        raise CoxeterError(f"classification of {comp} as {label} has no witness")
    vertex_pos = {v: i for i, v in enumerate(graph.vertices)}
    best = min(
        isos,
        key=lambda m: tuple(vertex_pos[m[f"s{i}"]] for i in range(1, len(catalog) + 1)),
    )
    return label, {i: best[f"s{i}"] for i in range(1, len(catalog) + 1)}


def decompose_on_table(table, subset: Iterable[str], tie_break: str = "paper"):
    """Table-level reflection decomposition of w0(subset): the root
    ids, their reflection permutations and the leftover chain.  Works
    for any finite type whose roots fit in memory, without enumerating
    the group (E8 has 240 roots but ~7e8 elements)."""
    if tie_break not in ("paper", "alt"):
        raise ValueError("tie_break must be 'paper' or 'alt'")
    graph = table.graph
    start = tuple(s for s in graph.vertices if s in set(subset))
    current = start
    vertex_pos = {v: i for i, v in enumerate(graph.vertices)}
    root_ids: list[int] = []
    refl_perms: list[np.ndarray] = []
    subsets: list[tuple[str, ...]] = [start]
    while current:
        comps = components(graph.subgraph(current))
        pick = max if tie_break == "paper" else min
        comp = pick(comps, key=lambda c: pick(vertex_pos[v] for v in c))
        label, pos_map = _component_map(graph, comp)
        entries = highest_root_entries(label)
        entry = entries[0] if tie_break == "paper" else entries[-1]
        vec = np.zeros(len(graph.vertices))
        for pos, coeff in enumerate(entry.coefficients, start=1):
            vec[graph.index(pos_map[pos])] = coeff
        rid = table.root_id(vec)
        refl_perms.append(table.reflection_perm(rid))
        contacts = {pos_map[p] for p in entry.contacts}
        current = tuple(v for v in current if v not in contacts)
        root_ids.append(rid)
        subsets.append(current)
    product = np.arange(len(table), dtype=np.int32)
    for p in refl_perms:
        product = product[p]
    w0_perm, _ = longest_perm(table, start)
    if not np.array_equal(product, w0_perm):
        raise CoxeterError("reflection product does not equal the longest element")
    return root_ids, refl_perms, subsets, w0_perm


def deodhar_decompose(
    G: EnumeratedGroup, subset: Iterable[str], tie_break: str = "paper"
) -> ReflectionDecomposition:
    """Reflection decomposition of w0(subset).

    ``tie_break='paper'`` processes the component containing the last
    canonical vertex and takes variant 1 of a double root;
    ``'alt'`` does the opposite.  The resulting sequences differ but
    their length parity never does.
    """
    root_ids, refl_perms, subsets, w0_perm = decompose_on_table(
        G.table, subset, tie_break)
    return ReflectionDecomposition(
        subset=subsets[0],
        root_ids=root_ids,
        reflections=[G.element_from_perm(p) for p in refl_perms],
        subsets=subsets,
        w0=G.element_from_perm(w0_perm),
    )


# -- the B/D tower subgroups --------------------------------------------------


def special_subgroup(G: EnumeratedGroup, family: str, n: int) -> SubgroupHandle:
    """G_{B_n} (generated by all w0(S(B_i)), i <= n) or G_{D_n}
    (generated by all w0(S(D_i)), 2 <= i <= n), in catalog naming.

    Both are elementary abelian 2-groups, normal in the ambient group,
    with the listed longest elements as a basis; this is asserted.
    """
    if family == "B":
        first = 1
        expected = build_named(TypeLabel("B", n)) if n >= 2 else build_named(TypeLabel("A", 1))
    elif family == "D":
        first = 2
        expected = build_named(TypeLabel("D", n))
    else:
        raise ValueError("family must be 'B' or 'D'")
    names = [f"s{i}" for i in range(1, n + 1)]
    if G.graph != expected:
        raise ValueError(f"group is not the catalog-named W({family}{n})")
    gens = [longest_element(G, names[:i])[0] for i in range(first, n + 1)]
    H = subgroup_closure(G, gens)
    if len(H) != 1 << len(gens):
        raise CoxeterError(f"G_{{{family}_{n}}} is not elementary abelian of rank {len(gens)}")
    if not H.is_normal() or not H.is_abelian():
        raise CoxeterError(f"G_{{{family}_{n}}} failed normality/commutativity checks")
    return H


def special_subgroup_via(G: EnumeratedGroup, tau: dict[str, str], family: str) -> SubgroupHandle:
    """tau(G_{B_n}) or tau(G_{D_n}) for an isomorphism tau from the
    catalog graph onto G's graph (covers both renamings and graph
    automorphisms)."""
    n = len(G.graph)
    first = 1 if family == "B" else 2
    gens = []
    for i in range(first, n + 1):
        prefix = [tau[f"s{k}"] for k in range(1, i + 1)]
        gens.append(longest_element(G, prefix)[0])
    return subgroup_closure(G, gens)
