"""Simplicial and polar complexes of neural codes.

Complexes are stored by their facets (inclusion-maximal faces); faces
are implicitly closed downward.  Polar complexes live on the signed
vertex set {1..n, -1..-n}: +i is the on-vertex of neuron i, -i its
off-vertex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .codes import NeuralCode


def _maximal(faces: Iterable[frozenset]) -> frozenset:
    faces = set(frozenset(f) for f in faces)
    return frozenset(
        f for f in faces if not any(f < g for g in faces)
    )


@dataclass(frozen=True)
class SimplicialComplex:
    """An abstract simplicial complex given by its facets.

    The void complex (no faces at all) has an empty facet set; the
    empty complex (only the empty face) has the single facet set().
    """

    facets: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "facets", _maximal(self.facets))

    @property
    def vertices(self) -> frozenset:
        return frozenset(v for f in self.facets for v in f)

    @property
    def is_void(self) -> bool:
        return not self.facets

    def dim(self) -> int:
        """-2 for the void complex, -1 for the empty complex."""
        if self.is_void:
            return -2
        return max(len(f) for f in self.facets) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def is_simplex(self) -> bool:
        return len(self.facets) <= 1

    def has_face(self, face: Iterable) -> bool:
        face = frozenset(face)
        return any(face <= f for f in self.facets)

    def faces(self):
        seen = set()
        for f in self.facets:
            items = sorted(f, key=repr)
            for r in range(len(items) + 1):
                for combo in itertools.combinations(items, r):
                    seen.add(frozenset(combo))
        return seen

    def __str__(self) -> str:
        parts = sorted(("".join(map(str, sorted(f, key=repr))) or "{}") for f in self.facets)
        return "<" + ",".join(parts) + ">"


def simplicial_complex_of(code: NeuralCode) -> SimplicialComplex:
    """Downward closure of the codewords, given by its maximal codewords."""
    return SimplicialComplex(frozenset(code.words))


def link(k: SimplicialComplex, v) -> SimplicialComplex:
    if v not in k.vertices:
        raise ValueError(f"vertex {v!r} not in complex")
    return SimplicialComplex(frozenset(f - {v} for f in k.facets if v in f))


def deletion(k: SimplicialComplex, v) -> SimplicialComplex:
    if v not in k.vertices:
        raise ValueError(f"vertex {v!r} not in complex")
    return SimplicialComplex(frozenset(f - {v} for f in k.facets))


def is_vertex_decomposable(k: SimplicialComplex):
    """Exhaustive decomposing-vertex recursion with memoization.

    A complex qualifies when it is a simplex or some vertex has a
    decomposable link and a decomposable deletion; no extra condition
    is placed on the chosen vertex.  Returns (decomposable,
    certificate); the certificate is a nested dict recording one
    witnessing vertex per level.  Simplices (including the void and
    empty complexes) are the base case.
    """
    memo: dict = {}

    def rec(c: SimplicialComplex):
        key = c.facets
        if key in memo:
            return memo[key]
        if c.is_simplex():
            cert = {"simplex": sorted((sorted(f, key=repr) for f in c.facets))}
            memo[key] = cert
            return cert
        memo[key] = None
        for v in sorted(c.vertices, key=repr):
            lk = rec(link(c, v))
            if lk is None:
                continue
            dl = rec(deletion(c, v))
            if dl is None:
                continue
            cert = {"vertex": v, "link": lk, "deletion": dl}
            memo[key] = cert
            return cert
        return None

    cert = rec(k)
    return cert is not None, cert


def connected_components(k: SimplicialComplex) -> list:
    """Split along 1-skeleton connectivity; isolated vertices stand alone."""
    parent = {v: v for v in k.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for f in k.facets:
        vs = sorted(f, key=repr)
        for a, b in zip(vs, vs[1:]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    groups: dict = {}
    for f in k.facets:
        if not f:
            continue
        root = find(next(iter(f)))
        groups.setdefault(root, set()).add(f)
    comps = [SimplicialComplex(frozenset(fs)) for fs in groups.values()]
    comps.sort(key=lambda c: sorted(map(repr, c.vertices)))
    return comps


def is_clique_complex(k: SimplicialComplex) -> bool:
    """True iff every clique of the 1-skeleton is a face."""
    verts = sorted(k.vertices, key=repr)
    adj = {v: set() for v in verts}
    for f in k.facets:
        for a, b in itertools.combinations(sorted(f, key=repr), 2):
            adj[a].add(b)
            adj[b].add(a)

    # grow cliques incrementally; a non-face clique ends the search
    cliques = [frozenset({v}) for v in verts]
    seen = set(cliques)
    while cliques:
        nxt = []
        for q in cliques:
            for v in verts:
                if v in q or not all(v in adj[u] for u in q):
                    continue
                q2 = q | {v}
                if q2 in seen:
                    continue
                seen.add(q2)
                if not k.has_face(q2):
                    return False
                nxt.append(q2)
        cliques = nxt
    return True


@dataclass(frozen=True)
class PolarComplex:
    """Pure (n-1)-dimensional complex with one signed facet per codeword."""

    n: int
    facets: frozenset

    def __post_init__(self):
        for f in self.facets:
            if len(f) != self.n or any(abs(v) not in range(1, self.n + 1) for v in f):
                raise ValueError("polar facet must pick one sign per neuron")
            if any(-v in f for v in f):
                raise ValueError("polar facet contains both signs of a neuron")

    def as_complex(self) -> SimplicialComplex:
        return SimplicialComplex(self.facets)


def polar_facet(c: frozenset, n: int) -> frozenset:
    return frozenset(i if i in c else -i for i in range(1, n + 1))


def facet_codeword(f: frozenset) -> frozenset:
    return frozenset(v for v in f if v > 0)


def facet_str(f: frozenset) -> str:
    """Compact sign-vector form, e.g. 1¬2¬3 -> "+--"."""
    return "".join("+" if i in f else "-" for i in range(1, len(f) + 1))


def polar_complex_of(code: NeuralCode) -> PolarComplex:
    return PolarComplex(code.n, frozenset(polar_facet(c, code.n) for c in code.words))


def shelling_order(code: NeuralCode) -> list:
    """Facets of the polar complex in the codeword order."""
    return [polar_facet(c, code.n) for c in code.sorted_words()]


def verify_shelling(k: SimplicialComplex, order: list):
    """Check a facet ordering against the pairwise-intersection criterion.

    Returns (ok, witness): for each j and each i < j, the intersection
    F_i ∩ F_j must sit inside some codimension-1 intersection F_l ∩ F_j
    with l < j.  The witness names the first failing (i, j) pair.
    """
    order = [frozenset(f) for f in order]
    if not k.is_pure():
        raise ValueError("complex is not pure")
    if set(order) != set(k.facets) or len(order) != len(k.facets):
        raise ValueError("order is not a permutation of the facets")
    for j in range(1, len(order)):
        fj = order[j]
        codim1 = [
            fj & order[l] for l in range(j) if len(fj & order[l]) == len(fj) - 1
        ]
        for i in range(j):
            sigma = order[i] & fj
            if len(sigma) == len(fj) - 1:
                continue
            if not any(sigma <= tau for tau in codim1):
                return False, {"i": i, "j": j, "intersection": sorted(sigma, key=repr)}
    return True, None
