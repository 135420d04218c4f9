"""Finite abstract simplicial complexes on ground set {0, ..., m-1}.

A complex is stored as the full set of its faces (sorted tuples of vertex
labels, always including the empty face), together with the ground size m.
Ground labels that appear in no face are "ghost" vertices; they are legal and
meaningful (a ghost changes polyhedral-product invariants), so m is carried
explicitly rather than inferred.

Besides the basic graph families, the module implements an iterated gluing
construction: n copies of a base complex K are chained along isomorphic full
subcomplexes L1, L2 of K, copy j+1 attached to copy j by an automorphism psi
carrying L1 to L2. Book graphs arise this way from a cycle glued along a path
through the cycle, and the planar book family gives an independent labelling
of the triangle-free members used by the series oracles.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import InvalidParameters

Face = tuple[int, ...]


def _closure(facets: list[Face]) -> frozenset[Face]:
    faces: set[Face] = {()}
    for f in facets:
        for k in range(1, len(f) + 1):
            faces.update(itertools.combinations(f, k))
    return frozenset(faces)


@dataclass(frozen=True)
class SimplicialComplex:
    """Immutable simplicial complex. faces holds every face, including ()."""

    ground_size: int
    faces: frozenset[Face]

    def __post_init__(self) -> None:
        if self.ground_size < 0:
            raise InvalidParameters("ground_size must be nonnegative")
        if () not in self.faces:
            raise InvalidParameters("the empty face must be present")
        for f in self.faces:
            if list(f) != sorted(set(f)):
                raise InvalidParameters(f"face {f} is not a sorted duplicate-free tuple")
            if f and (f[0] < 0 or f[-1] >= self.ground_size):
                raise InvalidParameters(f"face {f} has labels outside 0..{self.ground_size - 1}")
            # downward closure: checked face by face so constructors cannot cheat
            for k in range(len(f)):
                if f[:k] + f[k + 1 :] not in self.faces:
                    raise InvalidParameters(f"closure violated: {f} present without a boundary face")

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(f[0] for f in self.faces if len(f) == 1))

    @property
    def ghosts(self) -> tuple[int, ...]:
        used = set(self.vertices)
        return tuple(v for v in range(self.ground_size) if v not in used)

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.faces) - 1

    def faces_of_size(self, k: int) -> list[Face]:
        return sorted(f for f in self.faces if len(f) == k)

    def facets(self) -> list[Face]:
        """Maximal nonempty faces, lexicographically sorted."""
        nonempty = [f for f in self.faces if f]
        out = [
            f
            for f in nonempty
            if not any(g != f and set(f) <= set(g) for g in nonempty)
        ]
        return sorted(out)

    def f_vector(self) -> tuple[int, ...]:
        """(f_-1, f_0, f_1, ...) = face counts by cardinality, f_-1 = 1."""
        counts = [0] * (self.dim + 2)
        for f in self.faces:
            counts[len(f)] += 1
        return tuple(counts)

    def full_subcomplex(self, labels) -> "SimplicialComplex":
        """Faces contained in `labels`, relabelled order-preservingly to a
        compact ground set of size len(labels)."""
        sub = sorted(set(labels))
        if sub and (sub[0] < 0 or sub[-1] >= self.ground_size):
            raise InvalidParameters("subset labels outside the ground set")
        pos = {v: i for i, v in enumerate(sub)}
        keep = frozenset(
            tuple(pos[v] for v in f) for f in self.faces if all(v in pos for v in f)
        )
        return SimplicialComplex(len(sub), keep)

    def relabel(self, perm) -> "SimplicialComplex":
        """Apply a permutation of the ground set, perm[v] = new label of v."""
        perm = tuple(perm)
        if sorted(perm) != list(range(self.ground_size)):
            raise InvalidParameters("perm is not a permutation of the ground set")
        moved = frozenset(tuple(sorted(perm[v] for v in f)) for f in self.faces)
        return SimplicialComplex(self.ground_size, moved)

    def is_flag(self) -> bool:
        """True when every set of pairwise adjacent vertices spans a face.

        Singleton sets are pairwise adjacent vacuously, so a ghost vertex
        already breaks flagness. For 1-dimensional complexes this reduces to
        the graph being triangle-free with no ghosts.
        """
        if self.ghosts:
            return False
        edges = {f for f in self.faces if len(f) == 2}
        verts = self.vertices
        adj = {v: set() for v in verts}
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)
        # grow cliques; any clique that is not a face is a witness
        cliques = [tuple([v]) for v in verts]
        while cliques:
            nxt = []
            for c in cliques:
                if c not in self.faces:
                    return False
                common = set(v for v in verts if v > c[-1])
                for v in c:
                    common &= adj[v]
                for w in sorted(common):
                    nxt.append(c + (w,))
            cliques = nxt
        return True

    def to_json_obj(self) -> dict:
        return {"m": self.ground_size, "facets": [list(f) for f in self.facets()]}


def from_facets(m: int, facets) -> SimplicialComplex:
    """Build the downward closure of the given faces on ground set size m."""
    fs = [tuple(sorted(set(f))) for f in facets]
    return SimplicialComplex(m, _closure(fs))


def from_json_obj(obj: dict) -> SimplicialComplex:
    try:
        m = obj["m"]
        facets = obj["facets"]
    except (TypeError, KeyError) as exc:
        raise InvalidParameters("complex JSON must have keys 'm' and 'facets'") from exc
    if not isinstance(m, int) or not isinstance(facets, list):
        raise InvalidParameters("complex JSON: 'm' must be an int, 'facets' a list")
    return from_facets(m, facets)


def path_graph(l: int) -> SimplicialComplex:
    """Path with l edges on vertices 0..l."""
    if l < 1:
        raise InvalidParameters("path length must be at least 1")
    return from_facets(l + 1, [(i, i + 1) for i in range(l)])


def cycle_graph(l: int) -> SimplicialComplex:
    """Cycle with l edges on vertices 0..l-1."""
    if l < 3:
        raise InvalidParameters("cycle length must be at least 3")
    edges = [(i, i + 1) for i in range(l - 1)] + [(0, l - 1)]
    return from_facets(l, edges)


def disjoint_points(n: int) -> SimplicialComplex:
    if n < 1:
        raise InvalidParameters("need at least one point")
    return from_facets(n, [(i,) for i in range(n)])


def simplex(k: int) -> SimplicialComplex:
    """Full simplex on k+1 vertices."""
    if k < 0:
        raise InvalidParameters("simplex dimension must be nonnegative")
    return from_facets(k + 1, [tuple(range(k + 1))])


@dataclass(frozen=True)
class GluingSpec:
    """Data for chaining `copies` copies of `base` along L1 = full(sub_a) and
    L2 = full(sub_b), where psi is an automorphism of `base` swapping the two
    subsets. phi[j] relabels copy j+2 internally (identity when omitted)."""

    base: SimplicialComplex
    sub_a: tuple[int, ...]
    sub_b: tuple[int, ...]
    psi: tuple[int, ...]
    copies: int
    phi: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self) -> None:
        m = self.base.ground_size
        object.__setattr__(self, "sub_a", tuple(sorted(set(self.sub_a))))
        object.__setattr__(self, "sub_b", tuple(sorted(set(self.sub_b))))
        object.__setattr__(self, "psi", tuple(self.psi))
        if self.copies < 2:
            raise InvalidParameters("gluing needs at least two copies")
        for sub in (self.sub_a, self.sub_b):
            if not sub or any(v < 0 or v >= m for v in sub):
                raise InvalidParameters("glued subsets must be nonempty subsets of the ground set")
        if sorted(self.psi) != list(range(m)):
            raise InvalidParameters("psi is not a permutation of the ground set")
        if self.base.relabel(self.psi).faces != self.base.faces:
            raise InvalidParameters("psi is not an automorphism of the base")
        if tuple(sorted(self.psi[v] for v in self.sub_a)) != self.sub_b:
            raise InvalidParameters("psi does not carry sub_a onto sub_b")
        if tuple(sorted(self.psi[v] for v in self.sub_b)) != self.sub_a:
            raise InvalidParameters("psi does not carry sub_b onto sub_a")
        if not self.phi:
            ident = tuple(range(m))
            object.__setattr__(self, "phi", tuple(ident for _ in range(self.copies - 1)))
        else:
            object.__setattr__(self, "phi", tuple(tuple(p) for p in self.phi))
        if len(self.phi) != self.copies - 1:
            raise InvalidParameters("phi must list one relabelling per copy beyond the first")
        for p in self.phi:
            if sorted(p) != list(range(m)):
                raise InvalidParameters("each phi entry must be a bijection of the ground set")


def glue(spec: GluingSpec) -> SimplicialComplex:
    """Chain the copies. Copy 1 keeps the base labels. Copy c is attached to
    copy c-1 by identifying, for each v in sub_b, the copy-(c-1) vertex at
    phi_{c-1}(v) with the copy-c vertex at phi_c(psi(v)). Unidentified
    vertices of copy c receive fresh labels in ascending order of their base
    preimage."""
    m = spec.base.ground_size
    phis = (tuple(range(m)),) + spec.phi
    label: dict[tuple[int, int], int] = {(1, v): v for v in range(m)}
    next_label = m
    faces: set[Face] = set(spec.base.faces)
    for c in range(2, spec.copies + 1):
        prev_phi, cur_phi = phis[c - 2], phis[c - 1]
        shared = {}
        for v in spec.sub_b:
            shared[cur_phi[spec.psi[v]]] = label[(c - 1, prev_phi[v])]
        inv_cur = {cur_phi[v]: v for v in range(m)}
        for w in sorted(set(range(m)) - set(shared), key=lambda w: inv_cur[w]):
            shared[w] = next_label
            next_label += 1
        for w, lab in shared.items():
            label[(c, w)] = lab
        for f in spec.base.faces:
            faces.add(tuple(sorted(label[(c, cur_phi[v])] for v in f)))
    return SimplicialComplex(next_label, frozenset(faces))


def book_graph(n: int, l: int, p: int) -> SimplicialComplex:
    """p copies of the l-cycle glued along the path 0..n through the cycle."""
    if l < 3:
        raise InvalidParameters("cycle length must be at least 3")
    if not 1 <= n <= l - 2:
        raise InvalidParameters("spine length must satisfy 1 <= n <= l-2")
    if p < 2:
        raise InvalidParameters("a book needs at least two pages")
    cyc = cycle_graph(l)
    sub = tuple(range(n + 1))
    return glue(GluingSpec(cyc, sub, sub, tuple(range(l)), p))


def planar_book(l: int, p: int) -> SimplicialComplex:
    """p+1 internally disjoint paths of length l sharing endpoints 0 and 1.

    Isomorphic to book_graph(l, 2l, p) but labelled independently so the two
    constructions can cross-check each other.
    """
    if l < 2:
        raise InvalidParameters("path length must be at least 2")
    if p < 2:
        raise InvalidParameters("need at least two pages")
    edges = []
    nxt = 2
    for _ in range(p + 1):
        chain = [0] + list(range(nxt, nxt + l - 1)) + [1]
        nxt += l - 1
        edges.extend((min(a, b), max(a, b)) for a, b in zip(chain, chain[1:]))
    return from_facets(nxt, edges)


def _vertex_signature(K: SimplicialComplex, v: int) -> tuple:
    sizes = sorted(len(f) for f in K.faces if v in f)
    return tuple(sizes)


def is_isomorphic(K1: SimplicialComplex, K2: SimplicialComplex) -> bool:
    """Backtracking search for a face-preserving vertex bijection.

    Candidates are pruned by the multiset of sizes of incident faces, which
    is enough at the scale this package works at.
    """
    if K1.ground_size != K2.ground_size or K1.f_vector() != K2.f_vector():
        return False
    sig1 = {v: _vertex_signature(K1, v) for v in range(K1.ground_size)}
    sig2 = {v: _vertex_signature(K2, v) for v in range(K2.ground_size)}
    if sorted(sig1.values()) != sorted(sig2.values()):
        return False
    order = sorted(range(K1.ground_size), key=lambda v: (sig1[v], v))
    faces2 = K2.faces

    def extend(i: int, img: dict[int, int], used: set[int]) -> bool:
        if i == len(order):
            return all(
                tuple(sorted(img[v] for v in f)) in faces2 for f in K1.faces
            )
        v = order[i]
        for w in range(K2.ground_size):
            if w in used or sig2[w] != sig1[v]:
                continue
            img[v] = w
            used.add(w)
            ok = all(
                tuple(sorted(img[u] for u in f)) in faces2
                for f in K1.faces
                if all(u in img for u in f)
            )
            if ok and extend(i + 1, img, used):
                return True
            del img[v]
            used.discard(w)
        return False

    return extend(0, {}, set())
