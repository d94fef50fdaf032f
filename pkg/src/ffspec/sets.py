"""Subsets of F_p^d as bitmasks, plus quotient counts and file I/O.

A PointSet stores its space and a bit vector of length p^d packed into
a Python int; bit i is point index i.  The on-disk format is ASCII:

    # optional comment lines
    p 7
    d 3
    0 0 0
    1 2 3

Body lines hold d space-separated integers in [0, p).  Duplicate points
are an error, an empty body is a valid empty set.
"""
from __future__ import annotations

from dataclasses import dataclass

from .space import Point, Space, _require_same_space, coords_to_index, dot


class SetFormatError(ValueError):
    """Raised for malformed set files."""


@dataclass(frozen=True)
class PointSet:
    space: Space
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.space.order:
            raise ValueError("mask has bits outside the space")

    @classmethod
    def from_indices(cls, space: Space, indices) -> "PointSet":
        mask = 0
        for i in indices:
            if not 0 <= i < space.order:
                raise ValueError(f"point index {i} out of range")
            mask |= 1 << i
        return cls(space, mask)

    @classmethod
    def from_points(cls, space: Space, points) -> "PointSet":
        for pt in points:
            _require_same_space(space.zero(), pt)
        return cls.from_indices(space, [pt.index for pt in points])

    @classmethod
    def from_coords(cls, space: Space, coord_rows) -> "PointSet":
        return cls.from_points(space, [space.point(r) for r in coord_rows])

    @classmethod
    def empty(cls, space: Space) -> "PointSet":
        return cls(space, 0)

    @classmethod
    def full(cls, space: Space) -> "PointSet":
        return cls(space, (1 << space.order) - 1)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def indices(self) -> list:
        out = []
        m = self.mask
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return out

    def points(self) -> list:
        return [self.space.point_at(i) for i in self.indices()]

    def coord_rows(self) -> list:
        """Sorted list of coordinate tuples; the JSON witness format."""
        return [list(pt.coords) for pt in self.points()]

    def contains(self, x: Point) -> bool:
        _require_same_space(self.space.zero(), x)
        return bool(self.mask >> x.index & 1)

    def contains_index(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def complement(self) -> "PointSet":
        return PointSet(self.space, self.mask ^ ((1 << self.space.order) - 1))

    def __or__(self, other: "PointSet") -> "PointSet":
        _require_same_space(self.space.zero(), other.space.zero())
        return PointSet(self.space, self.mask | other.mask)

    def __and__(self, other: "PointSet") -> "PointSet":
        _require_same_space(self.space.zero(), other.space.zero())
        return PointSet(self.space, self.mask & other.mask)

    def __sub__(self, other: "PointSet") -> "PointSet":
        _require_same_space(self.space.zero(), other.space.zero())
        return PointSet(self.space, self.mask & ~other.mask)

    def __iter__(self):
        return iter(self.points())


def translate(E: PointSet, x: Point) -> PointSet:
    _require_same_space(E.space.zero(), x)
    space = E.space
    mask = 0
    for i in E.indices():
        mask |= 1 << (space.point_at(i) + x).index
    return PointSet(space, mask)


@dataclass(frozen=True)
class QuotientFunction:
    """An integer-valued function on a space, one value per point index.

    project_along produces these with values in [0, p]; exact
    convolution may produce larger values.
    """

    space: Space
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.space.order:
            raise ValueError("value table does not match space order")
        if any(v < 0 for v in self.values):
            raise ValueError("values must be nonnegative integers")

    @property
    def total(self) -> int:
        return sum(self.values)

    def __getitem__(self, i: int) -> int:
        return self.values[i]


def quotient_basis(space: Space, delta) -> list:
    """Deterministic complement basis for the quotient by a direction.

    Takes the d-1 standard basis vectors of lowest index that stay
    independent from delta, in increasing index order.
    """
    from .space import _rank

    rep = delta.rep
    chosen = []
    for i in range(space.d):
        e = [0] * space.d
        e[i] = 1
        rows = [rep.coords] + [c for c in chosen] + [tuple(e)]
        if _rank(rows, space.p) == len(rows):
            chosen.append(tuple(e))
        if len(chosen) == space.d - 1:
            break
    return [space.point(c) for c in chosen]


def _quotient_matrix(space: Space, delta):
    """Inverse of the matrix with columns (complement basis, delta rep)."""
    p = space.p
    d = space.d
    cols = [b.coords for b in quotient_basis(space, delta)] + [delta.rep.coords]
    # invert the d x d matrix whose columns are cols, over F_p
    aug = [[cols[j][i] for j in range(d)] + [1 if k == i else 0 for k in range(d)]
           for i in range(d)]
    for col in range(d):
        pivot = next(r for r in range(col, d) if aug[r][col] % p != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = pow(aug[col][col] % p, p - 2, p)
        aug[col] = [(v * inv) % p for v in aug[col]]
        for r in range(d):
            if r != col and aug[r][col] % p != 0:
                f = aug[r][col] % p
                aug[r] = [(a - f * b) % p for a, b in zip(aug[r], aug[col])]
    return [row[d:] for row in aug]


def quotient_cell_index(space: Space, delta, x: Point) -> int:
    """Index of the coset of span(delta) containing x, in the quotient space."""
    p = space.p
    m = _quotient_matrix(space, delta)
    coeffs = [sum(m[i][j] * x.coords[j] for j in range(space.d)) % p
              for i in range(space.d)]
    return coords_to_index(coeffs[: space.d - 1], p)


def project_along(E: PointSet, delta) -> QuotientFunction:
    """Coset counts |E ∩ (c + span(delta))| laid out on the quotient space."""
    space = E.space
    if space.d < 2:
        raise ValueError("projection needs d >= 2")
    quot = Space(space.p, space.d - 1)
    values = [0] * quot.order
    m = _quotient_matrix(space, delta)
    p = space.p
    for pt in E.points():
        coeffs = [sum(m[i][j] * pt.coords[j] for j in range(space.d)) % p
                  for i in range(space.d)]
        values[coords_to_index(coeffs[: space.d - 1], p)] += 1
    out = QuotientFunction(quot, tuple(values))
    assert all(v <= p for v in out.values)
    return out


def indicator(E: PointSet) -> QuotientFunction:
    """The 0/1 function of a set, on its own space."""
    vals = [0] * E.space.order
    for i in E.indices():
        vals[i] = 1
    return QuotientFunction(E.space, tuple(vals))


# ---------------------------------------------------------------------------
# file I/O


def read_set(path) -> PointSet:
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.readlines()
    p = d = None
    rows = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if p is None:
            if parts[0] != "p" or len(parts) != 2:
                raise SetFormatError(f"line {lineno}: expected 'p <int>' header")
            try:
                p = int(parts[1])
            except ValueError:
                raise SetFormatError(f"line {lineno}: bad p value {parts[1]!r}") from None
            continue
        if d is None:
            if parts[0] != "d" or len(parts) != 2:
                raise SetFormatError(f"line {lineno}: expected 'd <int>' header")
            try:
                d = int(parts[1])
            except ValueError:
                raise SetFormatError(f"line {lineno}: bad d value {parts[1]!r}") from None
            continue
        if len(parts) != d:
            raise SetFormatError(f"line {lineno}: expected {d} coordinates")
        try:
            coords = [int(v) for v in parts]
        except ValueError:
            raise SetFormatError(f"line {lineno}: non-integer coordinate") from None
        if any(not 0 <= c < p for c in coords):
            raise SetFormatError(f"line {lineno}: coordinate out of range [0, {p})")
        rows.append((lineno, tuple(coords)))
    if p is None or d is None:
        raise SetFormatError("missing 'p'/'d' header lines")
    try:
        space = Space(p, d)
    except ValueError as exc:
        raise SetFormatError(str(exc)) from None
    seen = {}
    for lineno, coords in rows:
        if coords in seen:
            raise SetFormatError(
                f"line {lineno}: duplicate point {coords} (first at line {seen[coords]})")
        seen[coords] = lineno
    return PointSet.from_coords(space, [c for _, c in rows])


def write_set(E: PointSet, path) -> None:
    space = E.space
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"p {space.p}\n")
        fh.write(f"d {space.d}\n")
        for pt in E.points():
            fh.write(" ".join(str(c) for c in pt.coords) + "\n")
