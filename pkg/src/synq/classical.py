"""Classical points (characters) of the game algebra and their convolution.

A character sends each p[x,a] to 0 or 1 with exactly one 1 per row, i.e. it
is a map f: I -> O; it respects the rules iff lambda(f(x), f(y), x, y) = 1
for every pair of inputs. For graph games these are graph endomorphisms; with
column sums added (bistochastic quotient) they are automorphisms.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ._kernels import compatibility, enumerate_maps
from .game import GameSpec


class NotAPointError(ValueError):
    """A map that breaks the game rules (or bijectivity) where a point was expected."""


@dataclass(frozen=True, order=True)
class ClassicalPoint:
    map: Tuple[int, ...]
    invertible: bool = False

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(v) for v in self.map))
        if self.invertible and sorted(self.map) != list(range(len(self.map))):
            raise NotAPointError(f"{self.map} is not a bijection")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __str__(self):
        return "f: " + " ".join(f"{x}->{a}" for x, a in enumerate(self.map))


def point_violations(spec: GameSpec, f: Sequence[int], invertible: bool = False) -> List[Tuple[int, int, int, int]]:
    """Rule tuples (f(x), f(y), x, y) that ``f`` loses on."""
    if len(f) != spec.inputs or any(not 0 <= a < spec.outputs for a in f):
        raise NotAPointError(f"{tuple(f)} is not a map from {spec.inputs} inputs to {spec.outputs} outputs")
    bad = [
        (f[x], f[y], x, y)
        for x in range(spec.inputs)
        for y in range(spec.inputs)
        if (f[x], f[y], x, y) in spec.forbidden
    ]
    if invertible and len(set(f)) != spec.outputs:
        bad.append((-1, -1, -1, -1))
    return bad


def is_point(spec: GameSpec, f: Sequence[int], invertible: bool = False) -> bool:
    try:
        return not point_violations(spec, f, invertible)
    except NotAPointError:
        return False


def enumerate_classical_points(spec: GameSpec, invertible: bool = False) -> List[ClassicalPoint]:
    """All characters as maps, lexicographically sorted (backtracking with forward checking)."""
    if invertible and not spec.is_square:
        raise ValueError("invertible points need |O| = |I|")
    rows = enumerate_maps(compatibility(spec.allowed), invertible)
    return [ClassicalPoint(tuple(r), invertible) for r in rows.tolist()]


def convolve(spec: GameSpec, f: ClassicalPoint, g: ClassicalPoint) -> ClassicalPoint:
    """The point h with chi_h(p[i,j]) = sum_k chi_f(p[i,k]) chi_g(p[k,j]), i.e. h = g o f."""
    if not spec.is_square:
        raise ValueError("convolution needs |O| = |I|")
    h = tuple(g.map[a] for a in f.map)
    invertible = f.invertible and g.invertible
    bad = point_violations(spec, h, invertible)
    if bad:
        raise NotAPointError(f"composite {h} breaks rules {bad[:3]}")
    return ClassicalPoint(h, invertible)


@dataclass
class CayleyTable:
    points: List[ClassicalPoint]
    table: List[List[int]]  # -1 marks a product that is missing or not a point
    closed: bool
    identity: Optional[int]
    is_group: Optional[bool]  # None unless every point is invertible
    inverses: Optional[List[int]] = None

    def to_csv(self) -> str:
        n = len(self.points)
        lines = ["," + ",".join(str(j) for j in range(n))]
        for i, row in enumerate(self.table):
            lines.append(f"{i}," + ",".join(str(v) for v in row))
        return "\n".join(lines) + "\n"

    def render(self) -> str:
        lines = [f"closed: {'yes' if self.closed else 'no'}"]
        lines.append(f"identity: {self.identity if self.identity is not None else 'none'}")
        if self.is_group is not None:
            lines.append(f"group: {'yes' if self.is_group else 'no'}")
        return "\n".join(lines)


def cayley_table(spec: GameSpec, points: Sequence[ClassicalPoint]) -> CayleyTable:
    """Full convolution table; ``table[i][j]`` is the index of points[i] * points[j]."""
    points = list(points)
    index = {p.map: n for n, p in enumerate(points)}
    table = []
    closed = True
    for f in points:
        row = []
        for g in points:
            try:
                h = convolve(spec, f, g)
                row.append(index.get(h.map, -1))
            except NotAPointError:
                row.append(-1)
            closed &= row[-1] >= 0
        table.append(row)
    ident = index.get(tuple(range(spec.inputs)))
    is_group = None
    inverses = None
    if points and all(p.invertible for p in points):
        inverses = []
        for i in range(len(points)):
            inv = next(
                (j for j in range(len(points)) if ident is not None and table[i][j] == ident and table[j][i] == ident),
                -1,
            )
            inverses.append(inv)
        is_group = closed and ident is not None and all(v >= 0 for v in inverses)
    return CayleyTable(points, table, closed, ident, is_group, inverses)


def point_to_model(f: ClassicalPoint, outputs: Optional[int] = None):
    """One-dimensional model q[i,j] = [f(i) = j]."""
    from .repcheck import MatrixModel

    outputs = len(f.map) if outputs is None else outputs
    entries = np.zeros((len(f.map), outputs, 1, 1), dtype=complex)
    for i, j in enumerate(f.map):
        entries[i, j, 0, 0] = 1.0
    return MatrixModel(entries)


def convolution_closed(
    spec: GameSpec,
    points: Sequence[ClassicalPoint],
    max_pairs: int = 10**6,
    seed: int = 0,
) -> Tuple[bool, int]:
    """Check that every product of two points is again a point.

    Exhaustive when len(points)**2 <= max_pairs; otherwise ``max_pairs``
    pairs drawn with a PCG64 generator seeded by ``seed``. Returns
    (closed, number of pairs checked).
    """
    if not spec.is_square:
        raise ValueError("convolution needs |O| = |I|")
    if not points:
        return True, 0
    P = np.array([p.map for p in points], dtype=np.int64)
    n = len(P)
    allowed = spec.allowed.astype(bool)
    x = np.arange(spec.inputs)
    if n * n <= max_pairs:
        i, j = np.divmod(np.arange(n * n), n)
    else:
        rng = np.random.Generator(np.random.PCG64(seed))
        i, j = rng.integers(0, n, max_pairs), rng.integers(0, n, max_pairs)
    for s in range(0, len(i), 1 << 16):
        f, g = P[i[s:s + (1 << 16)]], P[j[s:s + (1 << 16)]]
        h = np.take_along_axis(g, f, axis=1)
        ok = allowed[h[:, :, None], h[:, None, :], x[:, None], x[None, :]].all(axis=(1, 2))
        if not ok.all():
            return False, len(i)
    return True, len(i)
