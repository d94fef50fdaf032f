"""Exact and floating Fourier analysis on F_p^d.

Conventions: for a set E (or integer function f),

    fhat(xi) = p^(-d) * sum_x f(x) exp(-2 pi i (x . xi) / p)
    f(x)     = sum_xi fhat(xi) exp(+2 pi i (x . xi) / p)
    sum_x |f(x)|^2 = p^d * sum_xi |fhat(xi)|^2

Exact zero testing never touches floats: a character sum is stored as
the p residue-class counts c_j = #{x in E : x . xi = j}, and the value
sum_j c_j zeta^j vanishes over the cyclotomic integers iff all counts
are equal (the minimal polynomial of zeta over Q is 1 + x + ... +
x^(p-1)).  Floating values exist for diagnostics only.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .sets import PointSet, QuotientFunction
from .space import Point, Space, _require_same_space, dot
from .tables import dir_dots, direction_reps, scale_tables


@dataclass(frozen=True)
class CharacterSum:
    """Exact value of sum_{x in E} zeta^(x . xi), zeta = exp(-2 pi i / p).

    Stored as residue-class counts; counts[j] = #{x : x . xi = j}.
    """

    p: int
    counts: tuple

    def __post_init__(self):
        if len(self.counts) != self.p:
            raise ValueError("need one count per residue class")

    def is_zero(self) -> bool:
        return len(set(self.counts)) == 1

    @property
    def total(self) -> int:
        return sum(self.counts)

    def value(self) -> complex:
        """Floating approximation of the raw sum (diagnostic only)."""
        return sum(c * cmath.exp(-2j * cmath.pi * j / self.p)
                   for j, c in enumerate(self.counts))


@dataclass(frozen=True)
class EquidistProfile:
    """Counts |E ∩ {x : x . xi = c}| for c = 0 .. p-1."""

    xi: Point
    counts: tuple

    def is_constant(self) -> bool:
        return len(set(self.counts)) == 1


def _residue_counts(E: PointSet, xi: Point) -> tuple:
    _require_same_space(E.space.zero(), xi)
    counts = [0] * E.space.p
    for pt in E.points():
        counts[dot(pt, xi)] += 1
    return tuple(counts)


def character_sum(E: PointSet, xi: Point) -> CharacterSum:
    return CharacterSum(E.space.p, _residue_counts(E, xi))


def equidist_profile(E: PointSet, xi: Point) -> EquidistProfile:
    if xi.is_zero():
        raise ValueError("xi must be nonzero")
    return EquidistProfile(xi, _residue_counts(E, xi))


def zero_set(E: PointSet) -> PointSet:
    """All nonzero xi with fhat_E(xi) = 0, exactly.

    Computed once per canonical direction and expanded to scalar
    multiples: x . (c xi) runs over the same hyperplane partition, so
    the transform vanishes at xi iff it vanishes at every c xi, c != 0.
    """
    space = E.space
    p, d = space.p, space.d
    if E.size == 0:
        # empty transform vanishes everywhere off 0
        return PointSet(space, ((1 << space.order) - 1) & ~1)
    idx = np.array(E.indices(), dtype=np.int64)
    dots = dir_dots(p, d)[:, idx]                      # (n_dirs, |E|)
    m = E.size
    if m % p != 0:
        return PointSet.empty(space)
    want = m // p
    ok = np.ones(dots.shape[0], dtype=bool)
    for c in range(p):
        ok &= (dots == c).sum(axis=1) == want
    reps = direction_reps(p, d)[ok]
    mask = 0
    scl = scale_tables(p, d)
    for r in reps:
        for c in range(1, p):
            mask |= 1 << int(scl[c, r])
    return PointSet(space, mask)


def zero_set_contains(E: PointSet, xi: Point) -> bool:
    return character_sum(E, xi).is_zero()


# ---------------------------------------------------------------------------
# floating side


def _value_array(f) -> np.ndarray:
    if isinstance(f, PointSet):
        arr = np.zeros(f.space.order)
        arr[f.indices()] = 1.0
        return arr
    if isinstance(f, QuotientFunction):
        return np.array(f.values, dtype=float)
    raise TypeError("expected a PointSet or QuotientFunction")


def _space_of(f) -> Space:
    return f.space


def float_dft(f) -> np.ndarray:
    """Normalized transform as a flat complex array over xi index.

    Index layout matches point indexing (coordinate 0 least
    significant), via an axis-per-coordinate FFT.
    """
    space = _space_of(f)
    p, d = space.p, space.d
    grid = _value_array(f).reshape((p,) * d, order="F")
    out = np.fft.fftn(grid) / space.order
    return np.asarray(out.reshape(-1, order="F"))


def float_inverse(fhat: np.ndarray, space: Space) -> np.ndarray:
    """Reconstruction sum_xi fhat(xi) e^(+2 pi i x.xi/p); no extra factor."""
    p, d = space.p, space.d
    grid = np.asarray(fhat).reshape((p,) * d, order="F")
    out = np.fft.ifftn(grid) * space.order
    return np.asarray(out.reshape(-1, order="F"))


def plancherel_check(f) -> float:
    """Relative defect |sum|f|^2 - p^d sum|fhat|^2| / max(1, sum|f|^2)."""
    space = _space_of(f)
    vals = _value_array(f)
    lhs = float(np.sum(vals * vals))
    fhat = float_dft(f)
    rhs = space.order * float(np.sum(np.abs(fhat) ** 2))
    return abs(lhs - rhs) / max(1.0, lhs)


def convolve(f: QuotientFunction, g: QuotientFunction) -> QuotientFunction:
    """Exact integer cyclic convolution (f*g)(x) = sum_y f(y) g(x-y)."""
    if f.space != g.space:
        raise ValueError("mismatched spaces")
    space = f.space
    p, d = space.p, space.d
    fa = np.array(f.values, dtype=np.int64).reshape((p,) * d, order="F")
    ga = np.array(g.values, dtype=np.int64).reshape((p,) * d, order="F")
    out = np.zeros_like(fa)
    # direct sum over the support of f; exact integer arithmetic
    for yidx in np.argwhere(fa):
        y = tuple(int(v) for v in yidx)
        out += fa[y] * np.roll(ga, shift=y, axis=tuple(range(d)))
    flat = out.reshape(-1, order="F")
    return QuotientFunction(space, tuple(int(v) for v in flat))
