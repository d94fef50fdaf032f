"""Exhaustive and randomized verifiers for the combinatorial statements
behind the spectral-set analysis, each producing a LemmaReport.

Every exhaustive verifier partitions its enumeration into a fixed chunk
list (independent of the worker count) and merges chunk results in
order, so the deterministic part of a report is identical no matter how
many workers ran it.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from time import perf_counter

import numpy as np

from .parallel import run_chunks
from .sets import PointSet
from .space import Space, affine_permutations
from .spectral import InternalCheckError, spectrum_search
from .tables import (
    combination_array,
    coords_matrix,
    dir_dots,
    direction_orthogonality,
    pair_direction_table,
    pair_line_table,
)
from .tiling import tiling_search

__all__ = [
    "LemmaReport",
    "verify_lm1",
    "verify_lm2",
    "verify_proj21",
    "verify_slab_p3",
    "verify_fuglede_small",
    "falsify_random",
]


@dataclass
class LemmaReport:
    """Outcome of one verification run.

    counterexamples and details hold only JSON-ready values so the
    deterministic payload can be serialized and hashed directly.
    """

    lemma_id: str
    space_description: str
    space_cardinality: int
    symmetry_group: str
    orbit_count: int
    counterexamples: list
    details: dict
    elapsed_seconds: float
    workers: int
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def result_dict(self) -> dict:
        """Deterministic payload; wall time and worker count stay out."""
        out = {
            "counterexamples": self.counterexamples,
            "details": self.details,
            "lemma_id": self.lemma_id,
            "orbit_count": self.orbit_count,
            "space_cardinality": self.space_cardinality,
            "space_description": self.space_description,
            "symmetry_group": self.symmetry_group,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def _coord_rows(p: int, d: int, indices) -> list:
    cm = coords_matrix(p, d)
    return [[int(c) for c in cm[int(i)]] for i in indices]


# ---------------------------------------------------------------------------
# Planar direction lemmas: subsets of F_7^2 screened by collinearity and
# number of determined directions.

def _planar_eval(sets_arr: np.ndarray, no_k: int):
    """Screen index rows over F_7^2.

    Hypothesis: no no_k points collinear.  A line id occurring among the
    point pairs C(m,2) times means m points share that line, so the
    occurrence counts 1/3/6/10/... translate collinearity into runs of
    equal ids in the sorted pair-line rows.
    """
    n, sz = sets_arr.shape
    pi, pj = np.triu_indices(sz, 1)
    a = sets_arr[:, pi]
    b = sets_arr[:, pj]
    lines = np.sort(pair_line_table(7)[a, b], axis=1)
    adj = lines[:, 1:] == lines[:, :-1]
    if no_k == 3:
        hyp = ~adj.any(axis=1)
    elif no_k == 4:
        # 4 collinear points put C(4,2) = 6 pairs on one line
        hyp = ~(lines[:, :-5] == lines[:, 5:]).any(axis=1)
    else:
        raise ValueError("collinearity screen supports k = 3 or 4")
    dirs = pair_direction_table(7)[a, b].astype(np.uint8)
    masks = np.bitwise_or.reduce(np.uint8(1) << dirs, axis=1)
    ndirs = np.bitwise_count(masks)
    hist = np.bincount(ndirs[hyp], minlength=9)
    # hypothesis rows have per-line pair counts in {1, 3}; each 3-point
    # line contributes two equal adjacent ids
    triples = int(adj[hyp].sum()) // 2
    viol = hyp & (ndirs < 6)
    bad = [sorted(int(v) for v in row) for row in sets_arr[viol]]
    return n, int(hyp.sum()), hist, triples, bad


def _lm1_chunk(i0: int):
    tail = combination_array(48 - i0, 4).astype(np.int16) + (i0 + 1)
    first = np.full((tail.shape[0], 1), i0, dtype=np.int16)
    return _planar_eval(np.hstack([first, tail]), 3)


_LM2_BLOCK = 1 << 18


def _lm2_chunk(args):
    i0, i1, lo, hi = args
    tail = combination_array(48 - i1, 5)[lo:hi].astype(np.int16) + (i1 + 1)
    lead = np.empty((tail.shape[0], 2), np.int16)
    lead[:, 0] = i0
    lead[:, 1] = i1
    return _planar_eval(np.hstack([lead, tail]), 4)


def _lm2_chunk_list() -> list:
    out = []
    for i0 in range(43):
        for i1 in range(i0 + 1, 44):
            total = math.comb(48 - i1, 5)
            for lo in range(0, total, _LM2_BLOCK):
                out.append((i0, i1, lo, min(lo + _LM2_BLOCK, total)))
    return out


# anchor triangle (0,0), (1,0), (0,1): first nonzero noncollinear triple
_ANCHOR = (0, 1, 7)


def _anchored_chunk(tail_size: int):
    rest = np.array([i for i in range(49) if i not in _ANCHOR], np.int16)
    tail = rest[combination_array(46, tail_size)]
    lead = np.tile(np.array(_ANCHOR, np.int16), (tail.shape[0], 1))
    sets_arr = np.sort(np.hstack([lead, tail]), axis=1)
    return _planar_eval(sets_arr, 3 if tail_size == 2 else 4)


def _merge_planar(results):
    n = hyp = triples = 0
    hist = np.zeros(9, np.int64)
    cex = []
    for rn, rh, rhist, rt, rbad in results:
        n += rn
        hyp += rh
        hist += rhist
        triples += rt
        cex.extend(rbad)
    return n, hyp, hist, triples, cex


def _planar_details(mode, n, hyp, hist, triples) -> dict:
    return {
        "mode": mode,
        "enumerated_sets": n,
        "hypothesis_sets": hyp,
        "collinear_triples": triples,
        "direction_histogram": {
            str(k): int(hist[k]) for k in range(9) if hist[k]
        },
    }


def _planar_report(lemma_id, set_size, mode, workers, stratum, t0):
    agl_order = 98784  # |AGL(2,7)| = 49 * 48 * 42
    card = math.comb(49, set_size)
    tail_size = set_size - 3
    no_k = 3 if set_size == 5 else 4
    if mode == "reduced":
        results = run_chunks(_anchored_chunk, [tail_size], workers)
        n, hyp, hist, triples, cex = _merge_planar(results)
        expected = math.comb(46, tail_size)
        if n != expected:
            raise InternalCheckError("anchored enumeration miscount")
        details = _planar_details(mode, n, hyp, hist, triples)
        details["anchor"] = _coord_rows(7, 2, _ANCHOR)
        group = f"AGL(2,7), order {agl_order}, anchored triangle"
        orbit_count = expected
    elif mode == "direct":
        if set_size == 5:
            chunks = list(range(45))
            fn = _lm1_chunk
        else:
            chunks = _lm2_chunk_list()
            fn = _lm2_chunk
        if stratum is not None:
            k, m = stratum
            chunks = chunks[k::m]
        results = run_chunks(fn, chunks, workers)
        n, hyp, hist, triples, cex = _merge_planar(results)
        if stratum is None and n != card:
            raise InternalCheckError("direct enumeration miscount")
        details = _planar_details(mode, n, hyp, hist, triples)
        if stratum is not None:
            details["stratum"] = [int(stratum[0]), int(stratum[1])]
            card = n
        group = "none"
        orbit_count = n
    else:
        raise ValueError(f"unknown mode {mode!r}")
    cex = [{"set": _coord_rows(7, 2, row)} for row in cex]
    desc = f"{set_size}-point subsets of F_7^2"
    if stratum is not None:
        desc += f", chunk stratum {stratum[0]} mod {stratum[1]}"
    return LemmaReport(
        lemma_id, desc, card, group, orbit_count, cex, details,
        round(perf_counter() - t0, 3), workers)


def verify_lm1(workers: int = 1, mode: str = "direct") -> LemmaReport:
    """Every 5-point subset of F_7^2 with no 3 collinear points
    determines at least 6 directions."""
    t0 = perf_counter()
    pair_line_table(7), pair_direction_table(7)
    return _planar_report("lm1", 5, mode, workers, None, t0)


def verify_lm2(workers: int = 1, mode: str = "reduced",
               stratum: tuple | None = None) -> LemmaReport:
    """Every 7-point subset of F_7^2 with no 4 collinear points
    determines at least 6 directions.

    mode "reduced" anchors a noncollinear triple at
    {(0,0),(1,0),(0,1)}: the affine group is sharply transitive on
    ordered triangles, and every no-4-collinear set contains a
    noncollinear triple, so the anchored supersets cover every
    hypothesis set up to affine equivalence.  mode "direct" enumerates
    all C(49,7) subsets; stratum=(k, m) restricts it to every m-th
    chunk of the fixed partition, for spot agreement checks.
    """
    t0 = perf_counter()
    if stratum is not None:
        if mode != "direct":
            raise ValueError("stratum applies to direct mode only")
        k, m = stratum
        if not 0 <= k < m:
            raise ValueError("stratum must be (k, m) with 0 <= k < m")
    pair_line_table(7), pair_direction_table(7)
    return _planar_report("lm2", 7, mode, workers, stratum, t0)


# ---------------------------------------------------------------------------
# Projection lemma: functions F_7^2 -> {0..3} on three parallel support
# lines with line sums 7, all line sums <= 7 and a value 3 equidistribute
# on at most two direction families.

@lru_cache(maxsize=None)
def _fillings() -> np.ndarray:
    """All rows v in {0..3}^7 with sum 7, lexicographic."""
    rows = [v for v in itertools.product(range(4), repeat=7) if sum(v) == 7]
    return np.array(rows, np.int8)


@lru_cache(maxsize=None)
def _line_maps_inverse() -> np.ndarray:
    """Inverse permutations of x -> a x + c on F_7, all 42 maps."""
    inv = []
    for a in range(1, 7):
        for c in range(7):
            ginv = [0] * 7
            for x in range(7):
                ginv[(a * x + c) % 7] = x
            inv.append(ginv)
    return np.array(inv, np.int8)


@lru_cache(maxsize=None)
def _f1_orbit_reps():
    """Representatives of filling orbits under x -> a x + c, with sizes."""
    V = _fillings()
    pow4 = 4 ** np.arange(6, -1, -1, dtype=np.int64)
    keys = np.empty((42, len(V)), np.int64)
    for gi, ginv in enumerate(_line_maps_inverse()):
        keys[gi] = V[:, ginv] @ pow4
    own = V @ pow4
    canon = keys.min(axis=0)
    rep_mask = own == canon
    srt = np.sort(keys, axis=0)
    orbit_size = 1 + (srt[1:] != srt[:-1]).sum(axis=0)
    reps = np.flatnonzero(rep_mask)
    weights = orbit_size[rep_mask]
    if int(weights.sum()) != len(V):
        raise InternalCheckError("filling orbits do not partition")
    return reps, weights


@lru_cache(maxsize=None)
def _row_triple_orbits() -> tuple:
    """Orbits of 3-subsets of F_7 under x -> a x + c: (rep, weight)."""
    orbits: dict = {}
    for trip in itertools.combinations(range(7), 3):
        images = {
            tuple(sorted((a * r + c) % 7 for r in trip))
            for a in range(1, 7) for c in range(7)
        }
        rep = min(images)
        orbits.setdefault(rep, len(images))
    return tuple(sorted(orbits.items()))


@lru_cache(maxsize=None)
def _line_geometry(rows: tuple):
    """Crossing tables for the 7 non-horizontal directions.

    Direction 0 is vertical, direction m in 1..6 has slope m.  P[t,dir,b]
    is the column where line (dir, b) meets support row rows[t]; Q[dir,x]
    is the b of the direction-dir line through column x of rows[2].
    """
    minv = [0] + [pow(m, 5, 7) for m in range(1, 7)]
    P = np.empty((3, 7, 7), np.int8)
    Q = np.empty((7, 7), np.int8)
    for t, r in enumerate(rows):
        P[t, 0] = np.arange(7)
        for m in range(1, 7):
            P[t, m] = [((r - b) * minv[m]) % 7 for b in range(7)]
    Q[0] = np.arange(7)
    for m in range(1, 7):
        Q[m] = [(rows[2] - m * x) % 7 for x in range(7)]
    return P, Q


def _decode_profile(code: int) -> list:
    c1, c2, c3 = code % 8, (code // 8) % 8, code // 64
    return [0] * (7 - c1 - c2 - c3) + [1] * c1 + [2] * c2 + [3] * c3


_PAIR_BLOCK = 1 << 18


def _proj21_chunk(args):
    rows, rep_lo, rep_hi = args
    V = _fillings()
    reps, wts = _f1_orbit_reps()
    P, Q = _line_geometry(rows)
    has3 = (V == 3).any(axis=1)
    E3 = V[:, P[2]]
    codes = ((V == 1).sum(axis=1)
             + 8 * (V == 2).sum(axis=1)
             + 64 * (V == 3).sum(axis=1)).astype(np.int16)
    hyp_raw = 0
    hyp_weighted = 0
    equi_hist = np.zeros(8, np.int64)
    profiles: set = set()
    cex = []
    for ri in range(rep_lo, rep_hi):
        j1 = int(reps[ri])
        w1 = int(wts[ri])
        f1 = V[j1]
        part = f1[P[0]][None, :, :] + V[:, P[1]]
        partx = np.empty_like(part)
        for dm in range(7):
            partx[:, dm, :] = part[:, dm, Q[dm]]
        # every non-horizontal line meets rows[2] in one cell, so the
        # cellwise bound is equivalent to all line sums <= 7
        bnd = np.int8(7) - partx.max(axis=1)
        ok = (V[None, :, :] <= bnd[:, None, :]).all(axis=2)
        if not has3[j1]:
            ok &= has3[:, None] | has3[None, :]
        pairs = np.argwhere(ok)
        hyp_raw += len(pairs)
        hyp_weighted += w1 * len(pairs)
        for lo in range(0, len(pairs), _PAIR_BLOCK):
            pj = pairs[lo:lo + _PAIR_BLOCK, 0]
            pk = pairs[lo:lo + _PAIR_BLOCK, 1]
            sums = part[pj] + E3[pk]
            equi = (sums == 3).all(axis=2).sum(axis=1)
            equi_hist += w1 * np.bincount(equi, minlength=8)
            for q in np.flatnonzero(equi > 2):
                cex.append({
                    "rows": [int(r) for r in rows],
                    "values": [f1.tolist(), V[pj[q]].tolist(),
                               V[pk[q]].tolist()],
                })
            trip_codes = np.stack(
                [np.full(len(pj), codes[j1], np.int16),
                 codes[pj], codes[pk]], axis=1)
            trip_codes.sort(axis=1)
            for row in np.unique(trip_codes, axis=0):
                profiles.add(tuple(int(v) for v in row))
    return hyp_raw, hyp_weighted, equi_hist, profiles, cex


def verify_proj21(workers: int = 1) -> LemmaReport:
    """Functions F_7^2 -> {0..3} supported on three parallel lines with
    support-line sums exactly 7, every line sum at most 7, and some
    value 3, are equidistributed on at most two direction families.

    Support lines are taken horizontal (the affine group is transitive
    on direction families); row triples run over orbit representatives
    of the affine line action, and the first support row over filling
    orbits under the simultaneous column maps x -> a x + c.
    """
    t0 = perf_counter()
    V = _fillings()
    reps, wts = _f1_orbit_reps()
    orbits = _row_triple_orbits()
    for rep, _ in orbits:
        _line_geometry(rep)
    rep_block = 8
    chunks = []
    for rep, _ in orbits:
        for lo in range(0, len(reps), rep_block):
            chunks.append((rep, lo, min(lo + rep_block, len(reps))))
    results = run_chunks(_proj21_chunk, chunks, workers)

    weights = {rep: w for rep, w in orbits}
    hyp_weighted = 0
    equi_hist = np.zeros(8, np.int64)
    profiles: set = set()
    cex = []
    for (rep, _, _), (raw, wsum, ehist, profs, bad) in zip(chunks, results):
        w = weights[rep]
        hyp_weighted += w * wsum
        equi_hist += w * ehist
        profiles |= profs
        cex.extend(bad)
    details = {
        "fillings_per_line": int(len(V)),
        "f1_orbit_reps": int(len(reps)),
        "row_triple_orbits": [
            {"rows": [int(r) for r in rep], "weight": int(w)}
            for rep, w in orbits
        ],
        "hypothesis_functions": int(hyp_weighted),
        "equidistribution_histogram": {
            str(k): int(equi_hist[k]) for k in range(8) if equi_hist[k]
        },
        "profiles": [
            [_decode_profile(c) for c in prof] for prof in sorted(profiles)
        ],
    }
    card = 35 * len(V) ** 3
    return LemmaReport(
        "proj21",
        "functions on 3 parallel support lines in F_7^2, row sums 7",
        card,
        "row triples and column maps under x -> a x + c (order 42 each)",
        len(orbits) * len(reps),
        cex,
        details,
        round(perf_counter() - t0, 3),
        workers)


# ---------------------------------------------------------------------------
# Plane concentration at p = 3: six-point sets equidistributed along two
# directions of a common plane lie in two parallel planes.

_SLAB_BLOCK = 1 << 15


def _slab_chunk(args):
    lo, hi = args
    combs = combination_array(27, 6)[lo:hi].astype(np.int16)
    D = dir_dots(3, 3)[:, combs]
    c0 = (D == 0).sum(axis=2, dtype=np.int8)
    c1 = (D == 1).sum(axis=2, dtype=np.int8)
    zero = (c0 == 2) & (c1 == 2)
    orth = direction_orthogonality(3, 3).astype(np.int8)
    per_plane = orth @ zero
    hyp = (per_plane >= 2).any(axis=0)
    c2 = 6 - c0 - c1
    concl = ((c0 == 0) | (c1 == 0) | (c2 == 0)).any(axis=0)
    viol = hyp & ~concl
    return hi - lo, int(hyp.sum()), [r.tolist() for r in combs[viol]]


def verify_slab_p3(workers: int = 1) -> LemmaReport:
    """Six-point subsets of F_3^3 equidistributed along at least two
    directions of one plane are contained in two parallel planes."""
    t0 = perf_counter()
    card = math.comb(27, 6)
    combination_array(27, 6)
    dir_dots(3, 3), direction_orthogonality(3, 3)
    chunks = [(lo, min(lo + _SLAB_BLOCK, card))
              for lo in range(0, card, _SLAB_BLOCK)]
    results = run_chunks(_slab_chunk, chunks, workers)
    total = hyp = 0
    cex = []
    for n, h, bad in results:
        total += n
        hyp += h
        cex.extend({"set": _coord_rows(3, 3, row)} for row in bad)
    if total != card:
        raise InternalCheckError("slab enumeration miscount")
    details = {
        "enumerated_sets": total,
        "hypothesis_sets": hyp,
        "planes": 13,
        "zero_directions_required": 2,
        "parallel_planes_allowed": 2,
    }
    return LemmaReport(
        "slab-p3", "6-point subsets of F_3^3", card, "none", card,
        cex, details, round(perf_counter() - t0, 3), workers)


# ---------------------------------------------------------------------------
# Small-space spectral-versus-tile sweeps.

def _fug33_chunk(args):
    lo, hi = args
    spc = Space(3, 3)
    combs = combination_array(27, 6)[lo:hi].astype(np.int16)
    D = dir_dots(3, 3)[:, combs]
    c0 = (D == 0).sum(axis=2, dtype=np.int8)
    c1 = (D == 1).sum(axis=2, dtype=np.int8)
    zdirs = ((c0 == 2) & (c1 == 2)).sum(axis=0)
    searched = 0
    nodes = 0
    wits = []
    for row, nz in zip(combs, zdirs):
        if nz < 3:
            # |Z| = 2 nz < 5 = |E| - 1: the search returns none at once
            continue
        E = PointSet(spc, sum(1 << int(i) for i in row))
        cert = spectrum_search(E)
        searched += 1
        nodes += cert.nodes_explored
        if cert.verdict == "aborted":
            raise RuntimeError("budget exhausted during exhaustive sweep")
        if cert.verdict == "witness":
            wits.append({
                "set": row.tolist(),
                "spectrum": cert.witness.indices(),
            })
    return hi - lo, searched, nodes, wits


def _fug32_chunk(size: int):
    spc = Space(3, 2)
    n_sp = n_ti = 0
    cex = []
    for row in combination_array(9, size):
        E = PointSet(spc, sum(1 << int(i) for i in row))
        cs = spectrum_search(E)
        ct = tiling_search(E)
        if "aborted" in (cs.verdict, ct.verdict):
            raise RuntimeError("budget exhausted during exhaustive sweep")
        sp = cs.verdict == "witness"
        ti = ct.verdict == "witness"
        n_sp += sp
        n_ti += ti
        if sp != ti:
            cex.append({
                "set": [int(i) for i in row],
                "spectral": cs.verdict,
                "tile": ct.verdict,
            })
    return math.comb(9, size), n_sp, n_ti, cex


_FUG52_BLOCK = 1 << 16


def _fug52_chunk(args):
    size, lo, hi = args
    spc = Space(5, 2)
    tails = combination_array(24, size - 1)[lo:hi].astype(np.int16) + 1
    if size == 5:
        rows = np.hstack([np.zeros((tails.shape[0], 1), np.int16), tails])
        D = np.sort(dir_dots(5, 2)[:, rows], axis=2)
        distinct = (D[:, :, 1:] != D[:, :, :-1]).all(axis=2)
        zdirs = distinct.sum(axis=0)
    else:
        zdirs = None
    searched = 0
    n_sp = n_ti = 0
    cex = []
    for i, tail in enumerate(tails):
        E = PointSet(spc, 1 + sum(1 << int(t) for t in tail))
        if zdirs is not None and zdirs[i] < 1:
            # |Z| = 4 zdirs < 4 = |E| - 1: the search returns none at once
            sp_verdict = "none"
        else:
            cs = spectrum_search(E)
            sp_verdict = cs.verdict
            searched += 1
        ct = tiling_search(E)
        if "aborted" in (sp_verdict, ct.verdict):
            raise RuntimeError("budget exhausted during exhaustive sweep")
        sp = sp_verdict == "witness"
        ti = ct.verdict == "witness"
        n_sp += sp
        n_ti += ti
        if sp != ti:
            cex.append({
                "set": [0] + [int(t) for t in tail],
                "spectral": sp_verdict,
                "tile": ct.verdict,
            })
    return hi - lo, searched, n_sp, n_ti, cex


def _cycle_type_counts(p: int, d: int) -> Counter:
    counts: Counter = Counter()
    for perm in affine_permutations(p, d):
        seen = [False] * len(perm)
        lens = []
        for s in range(len(perm)):
            if seen[s]:
                continue
            ln = 0
            t = s
            while not seen[t]:
                seen[t] = True
                t = perm[t]
                ln += 1
            lens.append(ln)
        counts[tuple(sorted(lens))] += 1
    return counts


def affine_class_counts(p: int, d: int, sizes: tuple) -> dict:
    """Number of affine equivalence classes of s-subsets of F_p^d, via
    the cycle index of the affine permutation action (d <= 2)."""
    types = _cycle_type_counts(p, d)
    order = sum(types.values())
    out = {}
    for s in sizes:
        total = 0
        for ctype, mult in types.items():
            poly = np.zeros(s + 1, np.int64)
            poly[0] = 1
            for ln in ctype:
                f = np.zeros(min(ln, s) + 1, np.int64)
                f[0] = 1
                if ln <= s:
                    f[ln] = 1
                poly = np.convolve(poly, f)[:s + 1]
            total += mult * int(poly[s])
        if total % order:
            raise InternalCheckError("orbit count not integral")
        out[s] = total // order
    return out


def translation_class_counts(p: int, d: int, sizes: tuple) -> dict:
    """Number of translation classes of s-subsets of F_p^d."""
    n = p ** d
    out = {}
    for s in sizes:
        total = math.comb(n, s)
        if s % p == 0:
            # nonzero translations have n/p cycles of length p
            total += (n - 1) * math.comb(n // p, s // p)
        if total % n:
            raise InternalCheckError("orbit count not integral")
        out[s] = total // n
    return out


def verify_fuglede_small(p: int, d: int, sizes, workers: int = 1) -> LemmaReport:
    """Spectral-versus-tile sweeps over small spaces.

    (3,2): every subset of the given sizes, both predicates, assert the
    equivalence.  (5,2): translation-anchored representatives (subsets
    containing the origin), covering every set up to translation; both
    predicates are translation invariant.  (3,3): size 6 only, assert no
    spectra exist.
    """
    t0 = perf_counter()
    sizes = tuple(sorted(int(s) for s in sizes))
    key = (p, d)
    if key == (3, 3):
        if sizes != (6,):
            raise ValueError("F_3^3 sweep supports size 6 only")
        card = math.comb(27, 6)
        combination_array(27, 6)
        dir_dots(3, 3)
        chunks = [(lo, min(lo + _SLAB_BLOCK, card))
                  for lo in range(0, card, _SLAB_BLOCK)]
        results = run_chunks(_fug33_chunk, chunks, workers)
        total = searched = nodes = 0
        cex = []
        for n, srch, nd, wits in results:
            total += n
            searched += srch
            nodes += nd
            for w in wits:
                cex.append({
                    "set": _coord_rows(3, 3, w["set"]),
                    "spectrum": _coord_rows(3, 3, w["spectrum"]),
                })
        if total != card:
            raise InternalCheckError("enumeration miscount")
        details = {
            "sizes": {"6": {
                "sets": total,
                "immediate_none": total - searched,
                "searched": searched,
                "spectral": len(cex),
                "nodes": nodes,
            }},
            "pruning": "off",
        }
        return LemmaReport(
            "fuglede-3-3", "6-point subsets of F_3^3", card, "none", card,
            cex, details, round(perf_counter() - t0, 3), workers)

    if key == (3, 2):
        if not sizes or not all(1 <= s <= 9 for s in sizes):
            raise ValueError("F_3^2 sweep needs sizes within 1..9")
        results = run_chunks(_fug32_chunk, list(sizes), workers)
        card = sum(math.comb(9, s) for s in sizes)
        cex = []
        per_size = {}
        for s, (n, n_sp, n_ti, bad) in zip(sizes, results):
            per_size[str(s)] = {"sets": n, "spectral": n_sp, "tiles": n_ti}
            for b in bad:
                cex.append({
                    "set": _coord_rows(3, 2, b["set"]),
                    "spectral": b["spectral"],
                    "tile": b["tile"],
                })
        details = {"sizes": per_size, "pruning": "off"}
        return LemmaReport(
            "fuglede-3-2",
            f"subsets of F_3^2 of sizes {list(sizes)}",
            card, "none", card, cex, details,
            round(perf_counter() - t0, 3), workers)

    if key == (5, 2):
        if not sizes or not all(1 <= s <= 25 for s in sizes):
            raise ValueError("F_5^2 sweep needs sizes within 1..25")
        for s in sizes:
            combination_array(24, s - 1)
        dir_dots(5, 2)
        chunks = []
        for s in sizes:
            reps = math.comb(24, s - 1)
            for lo in range(0, reps, _FUG52_BLOCK):
                chunks.append((s, lo, min(lo + _FUG52_BLOCK, reps)))
        results = run_chunks(_fug52_chunk, chunks, workers)
        per_size = {
            str(s): {"anchored": 0, "searched": 0, "spectral": 0, "tiles": 0}
            for s in sizes
        }
        cex = []
        for (s, _, _), (n, srch, n_sp, n_ti, bad) in zip(chunks, results):
            rec = per_size[str(s)]
            rec["anchored"] += n
            rec["searched"] += srch
            rec["spectral"] += n_sp
            rec["tiles"] += n_ti
            for b in bad:
                cex.append({
                    "set": _coord_rows(5, 2, b["set"]),
                    "spectral": b["spectral"],
                    "tile": b["tile"],
                })
        anchored = sum(math.comb(24, s - 1) for s in sizes)
        for s in sizes:
            if per_size[str(s)]["anchored"] != math.comb(24, s - 1):
                raise InternalCheckError("enumeration miscount")
        details = {
            "sizes": per_size,
            "pruning": "off",
            "affine_classes": {
                str(s): c for s, c in affine_class_counts(5, 2, sizes).items()
            },
            "translation_classes": {
                str(s): c
                for s, c in translation_class_counts(5, 2, sizes).items()
            },
        }
        card = sum(math.comb(25, s) for s in sizes)
        return LemmaReport(
            "fuglede-5-2",
            f"translation-anchored subsets of F_5^2 of sizes {list(sizes)}",
            card,
            "translations of F_5^2, order 25",
            anchored, cex, details,
            round(perf_counter() - t0, 3), workers)

    raise ValueError(f"unsupported sweep ({p}, {d})")


# ---------------------------------------------------------------------------
# Randomized falsification.

_FALSIFY_CHUNK = 2000


def _falsify_chunk(args):
    p, d, size, child_seed, count = args
    spc = Space(p, d)
    rng = np.random.Generator(np.random.PCG64(child_seed))
    outcomes = {"witness": 0, "none": 0, "aborted": 0}
    pruned: Counter = Counter()
    wits = []
    order = p ** d
    for _ in range(count):
        pts = np.sort(rng.choice(order, size=size, replace=False))
        E = PointSet(spc, int(sum(1 << int(i) for i in pts)))
        cert = spectrum_search(E, pruning=True)
        outcomes[cert.verdict] += 1
        for k, v in cert.pruning_stats.items():
            pruned[k] += int(v)
        if cert.verdict == "witness":
            wits.append({
                "set": [int(i) for i in pts],
                "spectrum": cert.witness.indices(),
            })
    return outcomes, pruned, wits


def falsify_random(p: int, d: int, size: int, trials: int, seed: int,
                   workers: int = 1) -> LemmaReport:
    """Sample subsets of the given size and hunt for a spectrum with the
    pruned search.  Statistical evidence only: a clean run does not
    prove nonexistence, but any witness found would be a disproof.

    Sampling is chunked with a fixed chunk size; chunk generators are
    spawned from the seed by chunk index, so reports do not depend on
    the worker count.
    """
    t0 = perf_counter()
    if trials < 1:
        raise ValueError("trials must be positive")
    if size % p != 0 or not 2 <= size // p <= p - 1:
        raise ValueError(f"size must be mp with 2 <= m <= p-1, got {size}")
    spc = Space(p, d)
    children = np.random.SeedSequence(seed).spawn(
        (trials + _FALSIFY_CHUNK - 1) // _FALSIFY_CHUNK)
    chunks = []
    left = trials
    for child in children:
        take = min(_FALSIFY_CHUNK, left)
        chunks.append((p, d, size, child, take))
        left -= take
    results = run_chunks(_falsify_chunk, chunks, workers)
    outcomes = Counter()
    pruned = Counter()
    cex = []
    for oc, pr, wits in results:
        outcomes.update(oc)
        pruned.update(pr)
        for w in wits:
            cex.append({
                "set": _coord_rows(p, d, w["set"]),
                "spectrum": _coord_rows(p, d, w["spectrum"]),
            })
    details = {
        "trials": trials,
        "size": size,
        "outcomes": {k: int(outcomes[k]) for k in sorted(outcomes)},
        "pruning": {k: int(pruned[k]) for k in sorted(pruned)},
        "note": ("random sampling with the pruned spectrum search; "
                 "absence of witnesses here is statistical evidence, "
                 "not an exhaustive proof"),
    }
    return LemmaReport(
        f"falsify-{p}-{d}-{size}",
        f"random {size}-point subsets of F_{p}^{d}",
        math.comb(p ** d, size),
        "none (random sampling)",
        trials, cex, details,
        round(perf_counter() - t0, 3), workers, seed=seed)
