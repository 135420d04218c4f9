"""Exact simplicial homology and the Hochster subset-sum oracle.

Reduced Betti numbers are computed over the rationals with fraction-free
(Bareiss) integer elimination, so ranks are exact. The chain complex is the
augmented one: the empty face spans degree -1, hence the empty complex {()}
has reduced b_-1 = 1.

hochster_zk_betti evaluates, for a complex K on ground set [m],

    b_j(Z_K) = sum over I subset of [m] of reduced b_{j - |I| - 1}(K_I),

with K_I the full subcomplex on I. The I = {} term contributes 1 in degree 0.
For 1-dimensional K the resulting table records a wedge of spheres, which
zk_sphere_multiset extracts.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass

from .complexes import Face, SimplicialComplex
from .errors import GhostVertexError, GroundSizeLimitError, InvalidParameters
from .spacealg import SphereMultiset


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    m = [row[:] for row in rows]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, nrows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        for r in range(row + 1, nrows):
            for c in range(col + 1, ncols):
                m[r][c] = (m[row][col] * m[r][c] - m[r][col] * m[row][c]) // prev
            m[r][col] = 0
        prev = m[row][col]
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


def _boundary_matrix(faces_k: list[Face], faces_km1: list[Face]) -> list[list[int]]:
    index = {f: i for i, f in enumerate(faces_km1)}
    rows = []
    for f in faces_k:
        row = [0] * len(faces_km1)
        for j in range(len(f)):
            row[index[f[:j] + f[j + 1 :]]] = -1 if j % 2 else 1
        rows.append(row)
    return rows


def reduced_betti(K: SimplicialComplex) -> tuple[int, ...]:
    """(b_-1, b_0, ..., b_dim), reduced, rational coefficients."""
    layers = [K.faces_of_size(k) for k in range(K.dim + 2)]
    ranks = [0] * (len(layers) + 1)
    for k in range(1, len(layers)):
        ranks[k] = bareiss_rank(_boundary_matrix(layers[k], layers[k - 1]))
    out = []
    for k in range(len(layers)):
        out.append(len(layers[k]) - ranks[k] - ranks[k + 1])
    return tuple(out)


@dataclass(frozen=True)
class BettiTable:
    """Nonzero Betti numbers of a moment-angle complex, degree -> rank."""

    ranks: dict[int, int]
    m: int

    def to_json_obj(self) -> dict:
        return {"betti": {str(k): v for k, v in sorted(self.ranks.items())}, "m": self.m}


def _subset_contributions(K: SimplicialComplex, masks: range) -> dict[int, int]:
    table: dict[int, int] = {}
    memo: dict[tuple[int, frozenset[Face]], tuple[int, ...]] = {}
    for mask in masks:
        labels = [v for v in range(K.ground_size) if mask >> v & 1]
        sub = K.full_subcomplex(labels)
        key = (sub.ground_size, sub.faces)
        betti = memo.get(key)
        if betti is None:
            betti = reduced_betti(sub)
            memo.setdefault(key, betti)
        shift = len(labels) + 1
        for i, b in enumerate(betti):
            if b:
                j = (i - 1) + shift
                table[j] = table.get(j, 0) + b
    return table


def _worker(args) -> dict[int, int]:
    K, lo, hi = args
    return _subset_contributions(K, range(lo, hi))


def hochster_zk_betti(
    K: SimplicialComplex, *, ceiling: int = 20, jobs: int | None = 1
) -> BettiTable:
    """Full Betti table of Z_K by summing over all 2^m full subcomplexes.

    Refuses ground sets above `ceiling`. With jobs > 1 the subset range is
    split into contiguous blocks handled by worker processes; the final table
    is a sum, so it is identical for every job count.
    """
    if K.ghosts:
        raise GhostVertexError(f"ghost vertices {K.ghosts}: Z_K would carry dead circle factors")
    m = K.ground_size
    if m > ceiling:
        raise GroundSizeLimitError(f"ground set size {m} exceeds the enumeration cap {ceiling}")
    total = 1 << m
    if jobs is None:
        jobs = multiprocessing.cpu_count()
    jobs = max(1, min(jobs, total))
    if jobs == 1 or total < 1 << 10:
        table = _subset_contributions(K, range(total))
    else:
        step = -(-total // jobs)
        chunks = [(K, lo, min(lo + step, total)) for lo in range(0, total, step)]
        with multiprocessing.Pool(jobs) as pool:
            parts = pool.map(_worker, chunks)
        table = {}
        for part in parts:
            for j, b in part.items():
                table[j] = table.get(j, 0) + b
    return BettiTable({j: b for j, b in sorted(table.items()) if b}, m)


def zk_sphere_multiset(K: SimplicialComplex, **kwargs) -> SphereMultiset:
    """Sphere dimensions of Z_K read off the Betti table.

    Requires b_0 = 1; degrees above 0 then record one sphere per rank unit.
    For 1-dimensional K this is a complete description of the
    homotopy type, which is what the decomposition engine compares against.
    """
    table = hochster_zk_betti(K, **kwargs)
    if table.ranks.get(0) != 1:
        raise InvalidParameters("expected a connected moment-angle complex with b_0 = 1")
    counts = {j: b for j, b in table.ranks.items() if j > 0}
    return SphereMultiset(counts=counts, max_dim=None, truncated=False)
