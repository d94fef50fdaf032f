"""Spectral pairs: exact verification and exhaustive spectrum search.

A set A is a spectrum of E iff the characters indexed by A form an
orthogonal basis of L^2(E).  For odd p this is equivalent to |A| = |E|
together with fhat_E(a1 - a2) = 0 for all distinct a1, a2 in A; the
verifier computes both the difference-set criterion and the definitional
Gram orthogonality test on exact residue counts and insists they agree.

spectrum_search reduces spectrum existence to finding a |E|-clique in
the Cayley graph generated by the zero set of fhat_E, anchored at 0.
The search is deterministic: candidates are ordered by descending
degree (ties by point index) and subtrees are explored in that order
with greedy-coloring upper bounds.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .fourier import zero_set
from .geometry import line_sup
from .sets import PointSet
from .tables import (coords_matrix, dir_dots, dir_of_index,
                     direction_orthogonality, sub_table)


class InternalCheckError(RuntimeError):
    """Two routes that must agree disagreed; an implementation bug."""


@dataclass(frozen=True)
class SpectralCertificate:
    verdict: str                      # "witness" | "none" | "aborted"
    witness: PointSet | None
    nodes_explored: int
    pruning_stats: dict = field(default_factory=dict, compare=False)


@lru_cache(maxsize=None)
def allowed_spectral_sizes(space) -> frozenset:
    """Sizes a spectral set may have: 1, multiples mp with m <= p^(d-2), or p^d."""
    p, d = space.p, space.d
    sizes = {1, space.order}
    if d >= 2:
        sizes.update(m * p for m in range(1, p ** (d - 2) + 1))
    return frozenset(sizes)


def _pair_criterion(E: PointSet, A: PointSet) -> bool:
    if A.size != E.size:
        return False
    if A.size <= 1:
        return True
    z = zero_set(E)
    pts = A.points()
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if not z.contains(pts[i] - pts[j]):
                return False
    return True


def _pair_gram(E: PointSet, A: PointSet) -> bool:
    """Definitional route: pairwise character orthogonality over E by residue counts."""
    if A.size != E.size:
        return False
    if A.size <= 1:
        return True
    space = E.space
    p = space.p
    coords = coords_matrix(p, space.d).astype(np.int64)
    ec = coords[np.array(E.indices(), dtype=np.int64)]
    ac = coords[np.array(A.indices(), dtype=np.int64)]
    n = len(ac)
    ii, jj = np.triu_indices(n, k=1)
    diffs = (ac[ii] - ac[jj]) % p                       # (n_pairs, d)
    step = max(1, 4_000_000 // max(1, len(ec)))
    for lo in range(0, len(diffs), step):
        r = (ec @ diffs[lo:lo + step].T) % p            # (|E|, chunk)
        first = (r == 0).sum(axis=0)
        for c in range(1, p):
            if not np.array_equal((r == c).sum(axis=0), first):
                return False
    return True


def verify_spectral_pair(E: PointSet, A: PointSet) -> bool:
    """Exact spectral-pair test; the two internal routes must agree."""
    if E.space != A.space:
        raise ValueError("mismatched spaces")
    if E.space.p == 2:
        raise ValueError("p = 2 is not supported")
    crit = _pair_criterion(E, A)
    gram = _pair_gram(E, A)
    if crit != gram:
        raise InternalCheckError(
            f"criterion test ({crit}) and Gram test ({gram}) disagree")
    return crit


def symmetry_check(E: PointSet, A: PointSet) -> bool:
    """Given a verified spectral pair (E, A), check the swapped pair (A, E)."""
    if not verify_spectral_pair(E, A):
        raise ValueError("symmetry_check expects a verified spectral pair")
    return verify_spectral_pair(A, E)


# ---------------------------------------------------------------------------
# search


class _Budget(Exception):
    pass


def _clique_of_size(adj: list, need: int, budget: int):
    """Find a clique of the given size; adj are bitmasks over candidate slots.

    Returns (slots or None, nodes).  Deterministic: slots are branched in
    ascending slot order, which the caller arranges to be the descending
    degree order.
    """
    nodes = 0

    def color_bound(P: int) -> int:
        colors = 0
        rest = P
        while rest:
            colors += 1
            avail = rest
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                avail &= ~adj[v]
                avail ^= low
                rest ^= low
        return colors

    def extend(P: int, need: int):
        nonlocal nodes
        if need == 0:
            return []
        nodes += 1
        if nodes > budget:
            raise _Budget
        if P.bit_count() < need or color_bound(P) < need:
            return None
        while P:
            if P.bit_count() < need:
                return None
            low = P & -P
            v = low.bit_length() - 1
            P ^= low
            sub = extend(P & adj[v], need - 1)
            if sub is not None:
                return [v] + sub
        return None

    try:
        got = extend((1 << len(adj)) - 1, need)
    except _Budget:
        return "aborted", None, nodes
    return ("witness", got, nodes) if got is not None else ("none", None, nodes)


def _apply_pruning(E: PointSet, stats: dict) -> str | None:
    """Necessary conditions for spectral sets of size mp, 2 <= m <= p-1."""
    space = E.space
    p = space.p
    m = E.size // p
    ls = line_sup(E)
    if ls > min(m, p - m):
        stats["line_concentration"] = stats.get("line_concentration", 0) + 1
        return "line_concentration"
    if space.d == 3:
        idx = np.array(E.indices(), dtype=np.int64)
        dots = dir_dots(p, 3)[:, idx]
        best = 0
        for c in range(p):
            best = max(best, int((dots == c).sum(axis=1).max()))
        if best > p:
            stats["plane_concentration"] = stats.get("plane_concentration", 0) + 1
            return "plane_concentration"
        diffs = sub_table(p, 3)[np.ix_(idx, idx)].reshape(-1)
        det = np.unique(dir_of_index(p, 3)[diffs])
        det = det[det >= 0]
        per_plane = direction_orthogonality(p, 3)[:, det].sum(axis=1)
        if int(per_plane.max()) > p:
            stats["plane_directions"] = stats.get("plane_directions", 0) + 1
            return "plane_directions"
        if ls == 2 and m % 2 == 1:
            # parity obstruction for sets inside m parallel planes with
            # line concentration exactly 2
            slabs = min(len(np.unique(row)) for row in dots)
            if slabs <= m:
                stats["slab_parity"] = stats.get("slab_parity", 0) + 1
                return "slab_parity"
    return None


def spectrum_search(E: PointSet, budget: int = 10 ** 9,
                    pruning: bool = False) -> SpectralCertificate:
    """Exhaustive search for a spectrum of E, anchored at 0.

    Returns a certificate with verdict witness/none/aborted.  The size
    filter (spectral sets have size 1, mp with m <= p^(d-2), or p^d)
    always applies; the optional pruning applies line/plane
    concentration necessary conditions before searching.  Any witness
    is re-verified, and its swap (A, E) is verified too, before return.
    """
    space = E.space
    n = E.size
    stats: dict = {"size_filtered": False}
    if n not in allowed_spectral_sizes(space):
        stats["size_filtered"] = True
        return SpectralCertificate("none", None, 0, stats)
    if n == 1:
        witness = PointSet.from_indices(space, [0])
        _validate_witness(E, witness)
        return SpectralCertificate("witness", witness, 0, stats)
    if pruning and n % space.p == 0 and 2 <= n // space.p <= space.p - 1:
        reason = _apply_pruning(E, stats)
        if reason is not None:
            return SpectralCertificate("none", None, 0, stats)
    z = zero_set(E)
    cand = z.indices()
    if len(cand) < n - 1:
        return SpectralCertificate("none", None, 0, stats)
    # adjacency over candidate slots, ordered by descending degree then index
    space_p = space.p
    coords = coords_matrix(space_p, space.d).astype(np.int64)
    cc = coords[np.array(cand, dtype=np.int64)]
    powers = space_p ** np.arange(space.d)
    diff_idx = (((cc[:, None, :] - cc[None, :, :]) % space_p) @ powers)
    k = len(cand)
    zbits = np.zeros(space.order, dtype=bool)
    zbits[np.array(cand, dtype=np.int64)] = True
    adj_bool = zbits[diff_idx]
    np.fill_diagonal(adj_bool, False)
    degree = adj_bool.sum(axis=1)
    order = sorted(range(k), key=lambda s: (-int(degree[s]), cand[s]))
    adj_sorted = adj_bool[np.ix_(order, order)]
    adj = [int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")
           for row in adj_sorted]
    limit = sys.getrecursionlimit()
    if 3 * n + 200 > limit:
        sys.setrecursionlimit(3 * n + 200)
    verdict, slots, nodes = _clique_of_size(adj, n - 1, budget)
    if verdict != "witness":
        return SpectralCertificate(verdict, None, nodes, stats)
    witness = PointSet.from_indices(space, [0] + [cand[order[s]] for s in slots])
    _validate_witness(E, witness)
    return SpectralCertificate("witness", witness, nodes, stats)


def _validate_witness(E: PointSet, A: PointSet) -> None:
    if not verify_spectral_pair(E, A):
        raise InternalCheckError("search produced a non-verifying witness")
    if not verify_spectral_pair(A, E):
        raise InternalCheckError("witness fails the swapped-pair check")
