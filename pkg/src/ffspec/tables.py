"""Cached numpy lookup tables for a space, used by the hot loops.

Everything here is derived data: coordinates per index, dot products
against canonical direction representatives, affine line memberships.
All arrays are integer dtypes; nothing here rounds.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .space import Space, all_directions, coords_to_index


@lru_cache(maxsize=None)
def coords_matrix(p: int, d: int) -> np.ndarray:
    """(p^d, d) int16 array, row i = coordinates of point index i."""
    n = p ** d
    out = np.zeros((n, d), dtype=np.int16)
    idx = np.arange(n)
    for k in range(d):
        out[:, k] = idx % p
        idx //= p
    return out


@lru_cache(maxsize=None)
def direction_reps(p: int, d: int) -> np.ndarray:
    """Point indices of the canonical direction representatives, sorted."""
    space = Space(p, d)
    return np.array([dr.index for dr in all_directions(space)], dtype=np.int64)


@lru_cache(maxsize=None)
def dir_dots(p: int, d: int) -> np.ndarray:
    """(n_dirs, p^d) int8 table of x . rep mod p per canonical direction."""
    coords = coords_matrix(p, d).astype(np.int64)
    reps = coords[direction_reps(p, d)]
    return ((reps @ coords.T) % p).astype(np.int8)


@lru_cache(maxsize=None)
def sub_table(p: int, d: int) -> np.ndarray:
    """(p^d, p^d) table of point-index differences i - j; small spaces only."""
    n = p ** d
    if n > 4096:
        raise ValueError("difference table too large; compute differences directly")
    coords = coords_matrix(p, d).astype(np.int64)
    diff = (coords[:, None, :] - coords[None, :, :]) % p
    powers = p ** np.arange(d)
    return (diff @ powers).astype(np.int32)


@lru_cache(maxsize=None)
def scale_tables(p: int, d: int) -> np.ndarray:
    """(p, p^d) table: row c is the index of c*x for each point index x."""
    coords = coords_matrix(p, d).astype(np.int64)
    powers = p ** np.arange(d)
    out = np.zeros((p, p ** d), dtype=np.int32)
    for c in range(p):
        out[c] = ((coords * c) % p) @ powers
    return out


@lru_cache(maxsize=None)
def line_table(p: int, d: int) -> np.ndarray:
    """(n_lines, p) point indices of every affine line, duplicate-free.

    Lines are grouped by canonical direction; within a direction the
    base points run over the quotient transversal in index order.
    """
    from .sets import quotient_basis
    from .space import Point

    space = Space(p, d)
    dirs = all_directions(space)
    powers = p ** np.arange(d)
    rows = []
    for dr in dirs:
        basis = quotient_basis(space, dr)
        bmat = np.array([b.coords for b in basis], dtype=np.int64)
        step = np.array(dr.rep.coords, dtype=np.int64)
        # all combinations of basis coefficients = one base point per line
        quot = coords_matrix(p, d - 1).astype(np.int64) if d > 1 else np.zeros((1, 0), np.int64)
        bases = (quot @ bmat) % p if d > 1 else np.zeros((1, d), np.int64)
        for b in bases:
            pts = (b[None, :] + np.arange(p)[:, None] * step[None, :]) % p
            rows.append(pts @ powers)
    return np.array(rows, dtype=np.int32)


@lru_cache(maxsize=None)
def pair_direction_table(p: int) -> np.ndarray:
    """(p^2, p^2) int8: canonical direction id of i - j for d = 2; -1 on the diagonal."""
    space = Space(p, 2)
    reps = {dr.index: k for k, dr in enumerate(all_directions(space))}
    n = p * p
    diffs = sub_table(p, 2)
    out = np.full((n, n), -1, dtype=np.int8)
    # canonicalize each nonzero difference index
    coords = coords_matrix(p, 2).astype(np.int64)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            x, y = coords[diffs[i, j]]
            if x != 0:
                inv = pow(int(x), p - 2, p)
                rep = coords_to_index(((x * inv) % p, (y * inv) % p), p)
            else:
                rep = coords_to_index((0, 1), p)
            out[i, j] = reps[rep]
    return out


@lru_cache(maxsize=None)
def pair_line_table(p: int) -> np.ndarray:
    """(p^2, p^2) int16: id of the affine line through points i != j (d = 2)."""
    n = p * p
    lines = line_table(p, 2)
    member = np.full((n, n), -1, dtype=np.int16)
    point_lines = [[] for _ in range(n)]
    for lid, row in enumerate(lines):
        for pt in row:
            point_lines[pt].append(lid)
    dir_of_pair = pair_direction_table(p)
    # line id blocks are contiguous per direction: direction k occupies ids [k*p, (k+1)*p)
    line_of = np.full((len(lines) // p, n), -1, dtype=np.int16)
    for lid, row in enumerate(lines):
        line_of[lid // p, row] = lid
    for i in range(n):
        for j in range(n):
            if i != j:
                member[i, j] = line_of[dir_of_pair[i, j], i]
    return member


POPCOUNT8 = np.array([bin(v).count("1") for v in range(256)], dtype=np.uint8)


@lru_cache(maxsize=None)
def dir_of_index(p: int, d: int) -> np.ndarray:
    """(p^d,) int16: canonical direction id of each nonzero point; -1 at 0."""
    space = Space(p, d)
    dirs = all_directions(space)
    out = np.full(space.order, -1, dtype=np.int16)
    scl = scale_tables(p, d)
    for k, dr in enumerate(dirs):
        for c in range(1, p):
            out[scl[c, dr.index]] = k
    return out


@lru_cache(maxsize=None)
def direction_orthogonality(p: int, d: int) -> np.ndarray:
    """(n_dirs, n_dirs) bool: rep_i . rep_j = 0."""
    coords = coords_matrix(p, d).astype(np.int64)
    reps = coords[direction_reps(p, d)]
    return ((reps @ reps.T) % p) == 0


@lru_cache(maxsize=None)
def combination_array(m: int, r: int) -> np.ndarray:
    """(C(m, r), r) int8 array of r-subsets of range(m), lexicographic."""
    from itertools import chain, combinations

    if r == 0:
        return np.zeros((1, 0), dtype=np.int8)
    flat = np.fromiter(chain.from_iterable(combinations(range(m), r)),
                       dtype=np.int8)
    return flat.reshape(-1, r)
