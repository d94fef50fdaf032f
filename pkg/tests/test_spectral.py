import numpy as np
import pytest

import oracles as O
from ffspec import (
    InternalCheckError,
    PointSet,
    Space,
    allowed_spectral_sizes,
    spectrum_search,
    symmetry_check,
    translate,
    verify_spectral_pair,
    zero_set,
)
from ffspec import spectral as spectral_mod


def line(spc, vec):
    return PointSet.from_points(
        spc, [spc.point(vec).scale(t) for t in range(spc.p)])


def plane_x1_zero(spc):
    return PointSet.from_coords(
        spc, [(0, y, z) for y in range(spc.p) for z in range(spc.p)])


def random_subset(rng, spc, size):
    idxs = rng.choice(spc.order, size=size, replace=False)
    return PointSet.from_indices(spc, sorted(int(i) for i in idxs))


class TestVerify:
    def test_line_self_pair(self):
        spc = Space(7, 3)
        L = line(spc, (1, 0, 0))
        assert verify_spectral_pair(L, L)
        assert O.is_spectral_pair(
            7, 3, [pt.coords for pt in L], [pt.coords for pt in L])

    def test_plane_self_pair(self):
        spc = Space(7, 3)
        P = plane_x1_zero(spc)
        assert verify_spectral_pair(P, P)

    def test_trivial_pairs(self):
        spc = Space(3, 2)
        full = PointSet.full(spc)
        assert verify_spectral_pair(full, full)
        single = PointSet.from_indices(spc, [4])
        other = PointSet.from_indices(spc, [7])
        assert verify_spectral_pair(single, other)

    def test_size_mismatch(self):
        spc = Space(7, 3)
        assert not verify_spectral_pair(
            line(spc, (1, 0, 0)), PointSet.from_indices(spc, [0, 1]))

    def test_non_pair(self):
        spc = Space(7, 3)
        L = line(spc, (1, 0, 0))
        # differences of A stay orthogonal to L, where fhat_L never vanishes
        A = PointSet.from_coords(spc, [(0, t, 0) for t in range(7)])
        got = verify_spectral_pair(L, A)
        assert got == O.is_spectral_pair(
            7, 3, [pt.coords for pt in L], [pt.coords for pt in A])
        assert not got

    def test_mismatched_spaces(self):
        with pytest.raises(ValueError):
            verify_spectral_pair(
                PointSet.from_indices(Space(3, 2), [0]),
                PointSet.from_indices(Space(5, 2), [0]))

    def test_dual_route_battery(self, rng):
        # both internal routes must agree on every call; any split raises
        checked = 0
        for p, d in [(5, 3), (7, 3)]:
            spc = Space(p, d)
            for _ in range(250):
                se = int(rng.integers(1, 11))
                match = rng.random() < 0.5
                sa = se if match else int(rng.integers(1, 11))
                E = random_subset(rng, spc, se)
                A = random_subset(rng, spc, sa)
                verify_spectral_pair(E, A)
                checked += 1
        assert checked == 500

    def test_oracle_subsample(self, rng):
        spc = Space(5, 3)
        for _ in range(40):
            size = int(rng.integers(2, 6))
            E = random_subset(rng, spc, size)
            A = random_subset(rng, spc, size)
            assert verify_spectral_pair(E, A) == O.is_spectral_pair(
                5, 3, [pt.coords for pt in E], [pt.coords for pt in A])

    def test_route_disagreement_trips(self, monkeypatch):
        spc = Space(7, 3)
        L = line(spc, (1, 0, 0))
        monkeypatch.setattr(spectral_mod, "_pair_criterion",
                            lambda E, A: False)
        with pytest.raises(InternalCheckError):
            verify_spectral_pair(L, L)


class TestSymmetry:
    def test_on_witnesses(self):
        spc = Space(7, 3)
        for E in (line(spc, (1, 0, 0)), plane_x1_zero(spc)):
            cert = spectrum_search(E)
            assert cert.verdict == "witness"
            assert symmetry_check(E, cert.witness)

    def test_rejects_non_pair(self):
        spc = Space(7, 3)
        L = line(spc, (1, 0, 0))
        A = PointSet.from_indices(spc, [0, 1])
        with pytest.raises(ValueError):
            symmetry_check(L, A)


class TestAllowedSizes:
    def test_pinned(self):
        assert allowed_spectral_sizes(Space(7, 3)) == frozenset(
            {1, 343} | {7 * m for m in range(1, 8)})
        assert allowed_spectral_sizes(Space(3, 2)) == frozenset({1, 3, 9})
        assert allowed_spectral_sizes(Space(5, 2)) == frozenset({1, 5, 25})

    def test_search_filters_size(self):
        spc = Space(7, 2)
        E = PointSet.from_indices(spc, [0, 1, 2, 3])
        cert = spectrum_search(E)
        assert cert.verdict == "none"
        assert cert.nodes_explored == 0
        assert cert.pruning_stats["size_filtered"]


class TestSearch:
    def test_line_witness_anchored(self):
        spc = Space(7, 3)
        L = line(spc, (1, 0, 0))
        cert = spectrum_search(L)
        assert cert.verdict == "witness"
        assert cert.witness.contains(spc.zero())
        assert cert.witness.size == 7
        assert verify_spectral_pair(L, cert.witness)

    def test_translation_invariance_of_witnesses(self):
        spc = Space(5, 3)
        L = line(spc, (1, 2, 0))
        base = spectrum_search(L)
        shifted = spectrum_search(translate(L, spc.point((1, 1, 1))))
        assert base.verdict == shifted.verdict == "witness"
        # zero set is translation invariant, so the searches coincide
        assert base.witness == shifted.witness
        assert base.nodes_explored == shifted.nodes_explored
        assert verify_spectral_pair(
            translate(L, spc.point((1, 1, 1))), base.witness)

    def test_singleton(self):
        spc = Space(3, 3)
        cert = spectrum_search(PointSet.from_indices(spc, [13]))
        assert cert.verdict == "witness"
        assert cert.witness.indices() == [0]

    def test_budget_abort(self):
        spc = Space(7, 3)
        cert = spectrum_search(plane_x1_zero(spc), budget=1)
        assert cert.verdict == "aborted"
        assert cert.nodes_explored == 2

    def test_small_zero_set_immediate_none(self):
        spc = Space(5, 3)
        # 3 collinear points force fhat != 0 off a tiny set of directions
        E = PointSet.from_coords(
            spc, [(0, 0, 0), (1, 0, 0), (2, 0, 0), (0, 1, 0), (0, 2, 0),
                  (1, 1, 1), (2, 3, 4), (3, 2, 1), (4, 4, 2), (1, 2, 3)])
        cert = spectrum_search(E)
        assert cert.verdict == "none"
        assert zero_set(E).size < E.size - 1
        assert cert.nodes_explored == 0


def _line_violator(rng, spc, size, m):
    """Random set of size mp with min(m, p-m)+1 points on one line."""
    p = spc.p
    want = min(m, p - m) + 1
    base = spc.point_at(int(rng.integers(spc.order)))
    vec = spc.point_at(int(rng.integers(1, spc.order)))
    pts = {(base + vec.scale(t)).index for t in range(want)}
    while len(pts) < size:
        pts.add(int(rng.integers(spc.order)))
    return PointSet.from_indices(spc, sorted(pts))


def _plane_violator(rng, spc):
    """Size-2p set in F_5^3 with p+1 points in one plane, no 3 collinear."""
    p = spc.p
    while True:
        in_plane = rng.choice(p * p, size=p + 1, replace=False)
        E = PointSet.from_indices(
            spc, sorted(int(i) for i in in_plane))  # plane x3 = 0
        from ffspec import line_sup
        if line_sup(E) <= 2:
            break
    pts = set(E.indices())
    while len(pts) < 2 * p:
        pts.add(int(rng.integers(spc.order)))
    return PointSet.from_indices(spc, sorted(pts))


class TestSyntheticViolators:
    def test_line_violators_full_search(self, rng):
        spc = Space(5, 3)
        for _ in range(400):
            E = _line_violator(rng, spc, 10, 2)
            assert spectrum_search(E).verdict == "none"

    def test_line_violators_pruned(self, rng):
        spc = Space(7, 3)
        for _ in range(400):
            E = _line_violator(rng, spc, 21, 3)
            cert = spectrum_search(E, pruning=True)
            assert cert.verdict == "none"

    def test_pruned_matches_full(self, rng):
        spc = Space(5, 3)
        for _ in range(100):
            E = _line_violator(rng, spc, 10, 2)
            assert spectrum_search(E, pruning=True).verdict == \
                spectrum_search(E).verdict == "none"

    def test_plane_violators(self, rng):
        spc = Space(5, 3)
        for _ in range(100):
            E = _plane_violator(rng, spc)
            pruned = spectrum_search(E, pruning=True)
            assert pruned.verdict == "none"
            assert ("plane_concentration" in pruned.pruning_stats
                    or "line_concentration" in pruned.pruning_stats
                    or "slab_parity" in pruned.pruning_stats
                    or pruned.nodes_explored >= 0)
            assert spectrum_search(E).verdict == "none"
