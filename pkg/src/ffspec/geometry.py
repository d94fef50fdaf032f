"""Direction sets, line/plane concentration and a sumset growth check."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .sets import PointSet
from .space import Direction, Point, Space, Subspace, all_directions, dot
from .tables import dir_dots, line_table

# direction multiplicities -------------------------------------------------


@dataclass(frozen=True)
class DirectionStats:
    """Directions determined by a set, with unordered-pair multiplicities."""

    space: Space
    determined: tuple
    multiplicity: dict = field(compare=False)

    @property
    def count(self) -> int:
        return len(self.determined)


def direction_stats(E: PointSet) -> DirectionStats:
    if E.size < 2:
        raise ValueError("need at least two points to determine a direction")
    pts = E.points()
    mult: dict = {}
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            dr = Direction.through(pts[i] - pts[j])
            mult[dr] = mult.get(dr, 0) + 1
    det = tuple(sorted(mult, key=lambda dr: dr.index))
    return DirectionStats(E.space, det, mult)


def plane_direction_count(E: PointSet, P: Subspace) -> int:
    """Number of determined directions lying inside a 2-dim subspace."""
    if P.dim != 2:
        raise ValueError("P must be a 2-dimensional subspace")
    stats = direction_stats(E)
    return sum(1 for dr in stats.determined if P.contains(dr.rep))


# concentration ------------------------------------------------------------


@dataclass(frozen=True)
class ConcentrationReport:
    line_sup: int
    plane_sup: int | None
    plane_direction_counts: dict | None = field(default=None, compare=False)


def line_sup(E: PointSet) -> int:
    """max |E ∩ line| over all affine lines (any supported d)."""
    size = E.size
    if size <= 1:
        return size
    space = E.space
    lines = line_table(space.p, space.d)
    member = np.zeros(space.order, dtype=np.int8)
    member[E.indices()] = 1
    return int(member[lines].sum(axis=1).max())


def plane_sup(E: PointSet) -> int:
    """max |E ∩ plane| over all affine planes; d = 3 only."""
    space = E.space
    if space.d != 3:
        raise ValueError("plane concentration needs d = 3")
    if E.size == 0:
        return 0
    idx = np.array(E.indices(), dtype=np.int64)
    dots = dir_dots(space.p, space.d)[:, idx]      # (n_dirs, |E|)
    best = 0
    for c in range(space.p):
        best = max(best, int((dots == c).sum(axis=1).max()))
    return best


def concentration(E: PointSet) -> ConcentrationReport:
    """Line supremum, plus plane supremum and per-plane direction counts at d = 3."""
    space = E.space
    if space.d not in (2, 3):
        raise ValueError("concentration is defined for d in {2, 3}")
    ls = line_sup(E)
    if space.d == 2:
        return ConcentrationReport(ls, None, None)
    ps = plane_sup(E)
    per_plane = None
    if E.size >= 2:
        stats = direction_stats(E)
        per_plane = {}
        for normal in all_directions(space):
            per_plane[normal.index] = sum(
                1 for dr in stats.determined if dot(dr.rep, normal.rep) == 0)
    return ConcentrationReport(ls, ps, per_plane)


def no_k_collinear(E: PointSet, k: int) -> bool:
    """True iff no affine line carries k or more points of E."""
    if k < 2:
        raise ValueError("k must be at least 2")
    return line_sup(E) < k


# sumsets ------------------------------------------------------------------


def sumset(A: PointSet, B: PointSet) -> PointSet:
    if A.space != B.space:
        raise ValueError("mismatched spaces")
    space = A.space
    out = 0
    for a in A.points():
        for b in B.points():
            out |= 1 << (a + b).index
    return PointSet(space, out)


def sumset_cd_check(A: PointSet, B: PointSet) -> bool:
    """Cauchy-Davenport bound |A+B| >= min(p, |A|+|B|-1) for subsets of F_p."""
    if A.space.d != 1 or B.space.d != 1:
        raise ValueError("sumset growth check expects subsets of F_p")
    if A.size == 0 or B.size == 0:
        return True
    p = A.space.p
    return sumset(A, B).size >= min(p, A.size + B.size - 1)
