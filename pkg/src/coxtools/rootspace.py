"""The geometric representation: bilinear form, reflection action,
root enumeration for finite types, inversion sets and supports.

Coordinates are double-precision over the simple-root basis; roots are
identified against the table through a nearest-neighbour lookup with a
single global tolerance.  A lookup that lands strictly between the
tolerance and the separation guard is treated as numerical drift and
raised, never silently rounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .classify import classify_components, graph_positive_roots
from .errors import CapExceededError, InfiniteTypeError, RootLookupError
from .graph import INF, CoxeterGraph

DEFAULT_EPS = 1e-9
# Distinct roots of catalog types are far apart; anything between EPS
# and this guard signals accumulated drift rather than a new root.
SEPARATION_GUARD = 1e-6

ROOT_CAP = 10**6


def bilinear_form(g: CoxeterGraph) -> np.ndarray:
    """Matrix of <a_s, a_t> = -cos(pi/m(s,t)); -1 on inf edges."""
    n = len(g.vertices)
    B = np.empty((n, n))
    for i, s in enumerate(g.vertices):
        for j, t in enumerate(g.vertices):
            m = g.m(s, t)
            B[i, j] = -1.0 if m == INF else -math.cos(math.pi / m)
    return B


def reflection_matrix(g: CoxeterGraph, s: str, B: Optional[np.ndarray] = None) -> np.ndarray:
    """Matrix of v -> v - 2<a_s, v> a_s acting on column coordinates."""
    if B is None:
        B = bilinear_form(g)
    n = len(g.vertices)
    i = g.index(s)
    M = np.eye(n)
    M[i, :] -= 2.0 * B[i, :]
    return M


def apply_generator(g: CoxeterGraph, s: str, v: Sequence[float]) -> np.ndarray:
    """Reflect v along the simple root of s."""
    vec = np.asarray(v, dtype=float)
    if vec.shape != (len(g.vertices),):
        raise ValueError(f"expected a vector of length {len(g.vertices)}")
    B = bilinear_form(g)
    i = g.index(s)
    return vec - 2.0 * float(B[i] @ vec) * _unit(len(g.vertices), i)


def _unit(n: int, i: int) -> np.ndarray:
    e = np.zeros(n)
    e[i] = 1.0
    return e


def support(g: CoxeterGraph, v: Sequence[float], eps: float = DEFAULT_EPS) -> tuple[str, ...]:
    """Vertices whose coordinate exceeds eps in magnitude."""
    vec = np.asarray(v, dtype=float)
    return tuple(s for i, s in enumerate(g.vertices) if abs(vec[i]) > eps)


@dataclass
class RootTable:
    """All roots of a finite-type graph with integer ids.

    Ids 0..P-1 are the positive roots in BFS discovery order (the
    first len(g) of them are the simple roots in vertex order); id
    i + P is the negative of id i.
    """

    graph: CoxeterGraph
    roots: np.ndarray            # (2P, n) coordinates
    n_positive: int
    form: np.ndarray
    eps: float = DEFAULT_EPS
    _tree: cKDTree = field(repr=False, default=None)
    _gen_perms: dict = field(repr=False, default_factory=dict)

    def __post_init__(self):
        if self._tree is None:
            self._tree = cKDTree(self.roots)

    # -- lookups -----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.roots)

    def simple_root_id(self, s: str) -> int:
        return self.graph.index(s)

    def neg_id(self, i: int) -> int:
        p = self.n_positive
        return i + p if i < p else i - p

    def is_positive_id(self, i: int) -> bool:
        return i < self.n_positive

    def root_id(self, v: Sequence[float]) -> int:
        """Id of the root equal to v within eps; RootLookupError if the
        nearest table entry is farther than eps."""
        vec = np.asarray(v, dtype=float)
        d, i = self._tree.query(vec)
        if d > self.eps:
            raise RootLookupError(
                f"vector {vec} is {d:.3e} from the nearest root (eps={self.eps:.1e})"
            )
        return int(i)

    def maybe_root_id(self, v: Sequence[float]) -> Optional[int]:
        vec = np.asarray(v, dtype=float)
        d, i = self._tree.query(vec)
        if d <= self.eps:
            return int(i)
        if d < SEPARATION_GUARD:
            raise RootLookupError(f"ambiguous root lookup at distance {d:.3e}")
        return None

    def root_ids(self, vectors: np.ndarray) -> np.ndarray:
        """Vectorized hard lookup of many rows."""
        d, idx = self._tree.query(vectors)
        bad = d > self.eps
        if np.any(bad):
            worst = float(d.max())
            raise RootLookupError(f"batch lookup missed by up to {worst:.3e}")
        return idx.astype(np.int32)

    def inner(self, i: int, j: int) -> float:
        return float(self.roots[i] @ self.form @ self.roots[j])

    # -- permutations -------------------------------------------------------

    def generator_perm(self, s: str) -> np.ndarray:
        """Action of the generator s on root ids, as an int32 array."""
        if s not in self._gen_perms:
            M = reflection_matrix(self.graph, s, self.form)
            perm = self.root_ids(self.roots @ M.T)
            if not np.array_equal(np.sort(perm), np.arange(len(self.roots))):
                raise RootLookupError(f"generator {s} does not permute the table")
            self._gen_perms[s] = perm
        return self._gen_perms[s]

    def reflection_perm(self, root_id: int) -> np.ndarray:
        """Action of the reflection along the given root on root ids."""
        gamma = self.roots[root_id]
        images = self.roots - 2.0 * np.outer(self.roots @ self.form @ gamma, gamma)
        perm = self.root_ids(images)
        if not np.array_equal(np.sort(perm), np.arange(len(self.roots))):
            raise RootLookupError(f"reflection along root {root_id} is not a permutation")
        return perm

    def coefficients(self, i: int) -> np.ndarray:
        return self.roots[i]


def enumerate_roots(
    g: CoxeterGraph, cap: int = ROOT_CAP, eps: float = DEFAULT_EPS
) -> RootTable:
    """Close the simple roots under all generators (positive half only,
    negatives appended afterwards)."""
    labels = classify_components(g)
    for lab in labels:
        if not lab.is_finite():
            raise InfiniteTypeError(
                f"component of type {lab} is infinite; its root system is infinite"
            )
    expected = graph_positive_roots(g)
    if 2 * expected > cap:
        raise CapExceededError(f"root system has {2 * expected} roots; cap is {cap}")

    n = len(g.vertices)
    B = bilinear_form(g)
    matrices = [reflection_matrix(g, s, B) for s in g.vertices]

    accepted = np.eye(n)  # simple roots, vertex order
    tree = cKDTree(accepted)
    frontier = accepted
    while len(frontier):
        batch = np.vstack([frontier @ M.T for M in matrices])
        # Positivity: the largest-magnitude coordinate decides the sign.
        dominant = batch[np.arange(len(batch)), np.abs(batch).argmax(axis=1)]
        batch = batch[dominant > 0]
        d, _ = tree.query(batch)
        fresh = batch[d > SEPARATION_GUARD]
        if np.any((d > eps) & (d <= SEPARATION_GUARD)):
            raise RootLookupError("root BFS produced a near-duplicate vector")
        if not len(fresh):
            break
        # Dedupe within the batch itself.
        keep: list[np.ndarray] = []
        if len(fresh):
            local = cKDTree(fresh)
            taken = np.zeros(len(fresh), dtype=bool)
            for i in range(len(fresh)):
                if taken[i]:
                    continue
                keep.append(fresh[i])
                taken[local.query_ball_point(fresh[i], SEPARATION_GUARD)] = True
        frontier = np.array(keep)
        accepted = np.vstack([accepted, frontier])
        if len(accepted) > expected:
            raise InfiniteTypeError(
                f"root closure exceeded the expected {expected} positive roots"
            )
        tree = cKDTree(accepted)
    if len(accepted) != expected:
        raise RootLookupError(
            f"found {len(accepted)} positive roots, expected {expected}"
        )
    # Unit-length sanity on everything we accepted.
    norms = np.einsum("ij,jk,ik->i", accepted, B, accepted)
    if np.any(np.abs(norms - 1.0) > 1e-6):
        raise RootLookupError("non-unit vector in the root closure")
    all_roots = np.vstack([accepted, -accepted])
    return RootTable(graph=g, roots=all_roots, n_positive=expected, form=B, eps=eps)


def phi_w(perm: np.ndarray, table: RootTable) -> frozenset[int]:
    """Inversion set: positive root ids sent negative by the element."""
    p = table.n_positive
    ids = np.arange(p)
    return frozenset(ids[perm[:p] >= p].tolist())


def perm_length(perm: np.ndarray, table: RootTable) -> int:
    p = table.n_positive
    return int(np.count_nonzero(perm[:p] >= p))


def format_table(table: RootTable) -> str:
    """CLI rendering: one line ``id: c1 c2 ... cn`` per root."""
    lines = []
    for i, row in enumerate(table.roots):
        coords = " ".join(f"{c:.12g}" for c in row)
        lines.append(f"{i}: {coords}")
    return "\n".join(lines) + "\n"
