"""Translational tilings: exact verification and exact-cover search.

A tiles F_p^d by E iff the translates E + a, a in A, partition the
space.  tiling_search runs a deterministic exact-cover backtrack over
translates: branch on the lowest-index uncovered point, candidate
translates in ascending index order, with the translate by 0 forced
first (a tiling exists iff one containing 0 does).
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field

import numpy as np

from .sets import PointSet
from .spectral import InternalCheckError
from .tables import coords_matrix


@dataclass(frozen=True)
class TilingCertificate:
    verdict: str                      # "witness" | "none" | "aborted"
    witness: PointSet | None
    nodes_explored: int
    stats: dict = field(default_factory=dict, compare=False)


def _translate_mask(E: PointSet, a: int) -> int:
    space = E.space
    p = space.p
    coords = coords_matrix(p, space.d).astype(np.int64)
    eidx = np.array(E.indices(), dtype=np.int64)
    if len(eidx) == 0:
        return 0
    powers = p ** np.arange(space.d)
    idx = ((coords[eidx] + coords[a][None, :]) % p) @ powers
    m = 0
    for v in idx:
        m |= 1 << int(v)
    return m


def verify_tiling_pair(E: PointSet, A: PointSet) -> bool:
    """Exact test that the translates E + a, a in A, partition the space."""
    if E.space != A.space:
        raise ValueError("mismatched spaces")
    space = E.space
    cover = 0
    for a in A.indices():
        t = _translate_mask(E, a)
        if t & cover:
            return False
        cover |= t
    return cover == (1 << space.order) - 1


def _add_index(space, i: int, j: int) -> int:
    p = space.p
    out = 0
    mult = 1
    for _ in range(space.d):
        out += ((i + j) % p) * mult
        i //= p
        j //= p
        mult *= p
    return out


def tiling_search(E: PointSet, budget: int = 10 ** 9) -> TilingCertificate:
    """Search for a tiling complement of E, anchored at 0."""
    space = E.space
    n = space.order
    if E.size == 0 or n % E.size != 0:
        return TilingCertificate("none", None, 0, {"size_filtered": True})
    p = space.p
    coords = coords_matrix(p, space.d).astype(np.int64)
    eidx = np.array(E.indices(), dtype=np.int64)
    powers = p ** np.arange(space.d)
    all_idx = ((coords[eidx][None, :, :] + coords[:, None, :]) % p) @ powers
    masks = []
    for row in all_idx:
        m = 0
        for v in row:
            m |= 1 << int(v)
        masks.append(m)
    neg_e = [(-pt).index for pt in E.points()]
    depth_need = 3 * (n // E.size) + 200
    if depth_need > sys.getrecursionlimit():
        sys.setrecursionlimit(depth_need)
    full = (1 << n) - 1
    nodes = 0
    budget_hit = False

    def extend(cover: int, chosen: list):
        nonlocal nodes, budget_hit
        nodes += 1
        if nodes > budget:
            budget_hit = True
            return None
        if cover == full:
            return list(chosen)
        uncov = ~cover & full
        x = (uncov & -uncov).bit_length() - 1
        for a in sorted(_add_index(space, x, e) for e in neg_e):
            t = masks[a]
            if t & cover:
                continue
            got = extend(cover | t, chosen + [a])
            if got is not None:
                return got
            if budget_hit:
                return None
        return None

    got = extend(masks[0], [0])
    if budget_hit:
        return TilingCertificate("aborted", None, nodes)
    if got is None:
        return TilingCertificate("none", None, nodes)
    witness = PointSet.from_indices(space, sorted(got))
    if not verify_tiling_pair(E, witness):
        raise InternalCheckError("search produced a non-verifying tiling")
    if not verify_tiling_pair(witness, E):
        raise InternalCheckError("tiling witness fails the swapped-pair check")
    return TilingCertificate("witness", witness, nodes)
