"""2-dimensional Rips and Cech complexes over sphere node sets.

Edges and triangles are decided with a relative tolerance of 1e-12 at the
inclusion thresholds; under Poisson sampling the probability of a
configuration landing inside that band is negligible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .geometry import _enclosing_cap_vectors
from .poisson import NodeSet

REL_TOL = 1e-12


@dataclass(frozen=True)
class Complex2:
    """Abstract simplicial complex of dimension <= 2, closed under faces."""

    vertex_ids: tuple[int, ...]
    edges: frozenset[tuple[int, int]]
    triangles: frozenset[tuple[int, int, int]]
    kind: str  # "rips" | "cech"
    parameter: float

    def is_face_closed(self) -> bool:
        verts = set(self.vertex_ids)
        for i, j in self.edges:
            if i not in verts or j not in verts or not i < j:
                return False
        for i, j, k in self.triangles:
            if not i < j < k:
                return False
            if ((i, j) not in self.edges or (i, k) not in self.edges
                    or (j, k) not in self.edges):
                return False
        return True

    def to_text(self) -> str:
        """One simplex per line: `dim id0 id1 [id2]`, sorted."""
        lines = [f"0 {i}" for i in sorted(self.vertex_ids)]
        lines += [f"1 {i} {j}" for i, j in sorted(self.edges)]
        lines += [f"2 {i} {j} {k}" for i, j, k in sorted(self.triangles)]
        return "\n".join(lines) + ("\n" if lines else "")

    @staticmethod
    def from_text(text: str, kind: str = "", parameter: float = 0.0) -> "Complex2":
        verts, edges, tris = [], set(), set()
        for line in text.splitlines():
            parts = line.split()
            if not parts:
                continue
            dim, ids = int(parts[0]), tuple(int(x) for x in parts[1:])
            if dim == 0:
                verts.append(ids[0])
            elif dim == 1:
                edges.add(ids)
            elif dim == 2:
                tris.add(ids)
            else:
                raise ValueError(f"unsupported simplex dimension {dim}")
        return Complex2(tuple(verts), frozenset(edges), frozenset(tris), kind, parameter)


def _pairwise_angles(vecs: np.ndarray) -> np.ndarray:
    dots = np.clip(vecs @ vecs.T, -1.0, 1.0)
    # atan2 form; the cross-norm via the identity |u x v| = sqrt(1 - (u.v)^2)
    # is adequate here because simplex thresholds sit far from 0 and pi.
    return np.arctan2(np.sqrt(np.maximum(0.0, 1.0 - dots * dots)), dots)


def _adjacency_triangles(adj: np.ndarray) -> set[tuple[int, int, int]]:
    n = adj.shape[0]
    tris = set()
    for i, j in zip(*np.nonzero(np.triu(adj, k=1))):
        ks = np.nonzero(adj[i] & adj[j])[0]
        for k in ks[ks > j]:
            tris.add((int(i), int(j), int(k)))
    return tris


def build_rips2(nodes: NodeSet, R_c: float, R: float) -> Complex2:
    """Rips complex: simplices are tuples pairwise within distance R_c."""
    n = len(nodes)
    if n == 0:
        return Complex2((), frozenset(), frozenset(), "rips", R_c)
    ang = _pairwise_angles(nodes.unit_vectors())
    adj = ang * R <= R_c * (1.0 + REL_TOL)
    np.fill_diagonal(adj, False)
    edges = {(int(i), int(j)) for i, j in zip(*np.nonzero(np.triu(adj, k=1)))}
    tris = _adjacency_triangles(adj)
    return Complex2(tuple(range(n)), frozenset(edges), frozenset(tris), "rips", R_c)


def build_cech2(nodes: NodeSet, R_s: float, R: float) -> Complex2:
    """Cech complex of sensing caps with radius R_s.

    Two caps intersect iff their centers are within 2*R_s. Three caps share a
    point iff the minimal enclosing cap of the centers has radius <= R_s: the
    enclosing-cap center is the common-intersection witness.
    """
    if R_s > R * math.pi / 8.0:
        raise ValueError("sensing radius too large: require R_s <= R*pi/8")
    n = len(nodes)
    if n == 0:
        return Complex2((), frozenset(), frozenset(), "cech", R_s)
    vecs = nodes.unit_vectors()
    ang = _pairwise_angles(vecs)
    adj = ang * R <= 2.0 * R_s * (1.0 + REL_TOL)
    np.fill_diagonal(adj, False)
    edges = {(int(i), int(j)) for i, j in zip(*np.nonzero(np.triu(adj, k=1)))}
    candidates = sorted(_adjacency_triangles(adj))
    tris: set[tuple[int, int, int]] = set()
    if candidates:
        idx = np.array(candidates)
        _, radii = _enclosing_cap_vectors(vecs[idx])
        keep = radii * R <= R_s * (1.0 + REL_TOL)
        tris = {tuple(map(int, t)) for t in idx[keep]}
    return Complex2(tuple(range(n)), frozenset(edges), frozenset(tris), "cech", R_s)


def check_inclusion(a: Complex2, b: Complex2) -> bool:
    """True iff every simplex of a is a simplex of b (same vertex set required)."""
    if set(a.vertex_ids) != set(b.vertex_ids):
        raise ValueError("complexes have different vertex sets")
    return a.edges <= b.edges and a.triangles <= b.triangles


def rips_threshold(R_s: float, R: float) -> float:
    """Largest R_c for which every Rips simplex is guaranteed to be a Cech simplex.

    Equals R*arccos([3*cos^2(R_s/R) - 1]/2); strictly between R_s and 2*R_s,
    approaching sqrt(3)*R_s as R_s/R -> 0.
    """
    if not 0.0 < R_s < R * math.pi / 8.0:
        raise ValueError("require 0 < R_s < R*pi/8")
    c = math.cos(R_s / R)
    return R * math.acos((3.0 * c * c - 1.0) / 2.0)
