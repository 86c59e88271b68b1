"""Synchronous games, their standard constructors and the finite rule conditions.

Rules are stored as the set of *forbidden* tuples ``(a, b, x, y)``, i.e. the
answer pair (a, b) loses on the question pair (x, y). Everything else wins.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, Iterable, List, Optional, Tuple

import numpy as np

from ._kernels import star_witness

Rule = Tuple[int, int, int, int]


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph on vertices ``0..n-1``."""

    n: int
    edges: FrozenSet[FrozenSet[int]] = frozenset()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        edges = frozenset(frozenset(e) for e in self.edges)
        for e in edges:
            if len(e) != 2:
                raise ValueError(f"loop at vertex {next(iter(e))}")
            if any(v < 0 or v >= self.n for v in e):
                raise ValueError(f"edge {sorted(e)} out of range for n={self.n}")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Tuple[int, int]]) -> "Graph":
        pairs = list(pairs)
        edges = set()
        for u, v in pairs:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            e = frozenset((u, v))
            if e in edges:
                raise ValueError(f"duplicate edge {u} {v}")
            edges.add(e)
        return cls(n, frozenset(edges))

    def has_edge(self, u: int, v: int) -> bool:
        return frozenset((u, v)) in self.edges

    def sorted_edges(self) -> List[Tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def adjacency(self) -> np.ndarray:
        adj = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.sorted_edges():
            adj[u, v] = adj[v, u] = True
        return adj


def complete_graph(n: int) -> Graph:
    return Graph.from_pairs(n, itertools.combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    return Graph.from_pairs(n, [(i, (i + 1) % n) for i in range(n)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_pairs(10, outer + spokes + inner)


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    pairs = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph.from_pairs(n, pairs)


def sync_forced(inputs: int, outputs: int) -> FrozenSet[Rule]:
    """Tuples (a, b, x, x) with a != b: the zeros every synchronous game carries."""
    return frozenset(
        (a, b, x, x)
        for x in range(inputs)
        for a in range(outputs)
        for b in range(outputs)
        if a != b
    )


@dataclass(frozen=True)
class GameSpec:
    """A game on input set ``range(inputs)`` and output set ``range(outputs)``.

    The constructor only checks index ranges so that ``validate_synchronous``
    can inspect malformed rule sets; use :meth:`synchronous` (or the
    ``make_*`` constructors) to get a game that is synchronous by construction.
    """

    inputs: int
    outputs: int
    forbidden: FrozenSet[Rule] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.inputs < 1 or self.outputs < 1:
            raise ValueError("input and output sets must be nonempty")
        forbidden = frozenset(tuple(int(v) for v in t) for t in self.forbidden)
        for a, b, x, y in forbidden:
            if not (0 <= a < self.outputs and 0 <= b < self.outputs):
                raise ValueError(f"output index out of range in {(a, b, x, y)}")
            if not (0 <= x < self.inputs and 0 <= y < self.inputs):
                raise ValueError(f"input index out of range in {(a, b, x, y)}")
        object.__setattr__(self, "forbidden", forbidden)

    @classmethod
    def synchronous(cls, inputs: int, outputs: int, extra: Iterable[Rule] = ()) -> "GameSpec":
        """Game whose zeros are ``extra`` plus the synchronicity zeros.

        Rejects any ``extra`` tuple that forbids a diagonal answer (a, a, x, x).
        """
        extra = frozenset(tuple(t) for t in extra)
        for a, b, x, y in extra:
            if x == y and a == b:
                raise ValueError(
                    f"rule forbids diagonal answer {(a, b, x, y)}; "
                    "synchronous games require lambda(a,a,x,x)=1"
                )
        spec = cls(inputs, outputs, extra | sync_forced(inputs, outputs))
        return spec

    def lam(self, a: int, b: int, x: int, y: int) -> int:
        return 0 if (a, b, x, y) in self.forbidden else 1

    @cached_property
    def allowed(self) -> np.ndarray:
        """Boolean rule array ``allowed[a, b, x, y] == lambda(a, b, x, y)``."""
        arr = np.ones((self.outputs, self.outputs, self.inputs, self.inputs), dtype=bool)
        for t in self.forbidden:
            arr[t] = False
        arr.setflags(write=False)
        return arr

    @cached_property
    def closed_forbidden(self) -> FrozenSet[Rule]:
        """Forbidden set closed under (a,b,x,y) -> (b,a,y,x).

        p_{x,a} p_{y,b} = 0 forces p_{y,b} p_{x,a} = 0 by taking adjoints, so
        this is the rule set the game algebra actually sees.
        """
        return self.forbidden | frozenset((b, a, y, x) for a, b, x, y in self.forbidden)

    @cached_property
    def closed_allowed(self) -> np.ndarray:
        arr = self.allowed & self.allowed.transpose(1, 0, 3, 2)
        arr.setflags(write=False)
        return arr

    def sorted_forbidden(self) -> List[Rule]:
        return sorted(self.forbidden)

    @property
    def is_square(self) -> bool:
        return self.inputs == self.outputs

    def is_easiest(self) -> bool:
        return self.forbidden == sync_forced(self.inputs, self.outputs)


def make_easiest(inputs: int, outputs: int) -> GameSpec:
    """The game that is won unless equal questions get different answers."""
    if inputs < 1 or outputs < 1:
        raise ValueError("sizes must be positive")
    return GameSpec.synchronous(inputs, outputs)


def make_graph_game(g: Graph) -> GameSpec:
    """Endomorphism game of ``g``: adjacent questions need adjacent answers."""
    if g.n < 1:
        raise ValueError("graph game needs at least one vertex")
    n = g.n
    adj = g.adjacency()
    extra = [
        (a, b, x, y)
        for x, y in itertools.product(range(n), repeat=2)
        if adj[x, y]
        for a, b in itertools.product(range(n), repeat=2)
        if not adj[a, b]
    ]
    return GameSpec.synchronous(n, n, extra)


def _require_square(spec: GameSpec) -> None:
    if not spec.is_square:
        raise ValueError(
            f"condition needs equal input and output sets, got |I|={spec.inputs}, |O|={spec.outputs}"
        )


def check_star(spec: GameSpec, closed: bool = True) -> Tuple[bool, Optional[Tuple[int, ...]]]:
    """Decide condition (star) and return the lexicographically smallest witness.

    A witness (i,j,k,l,r,s) has lambda(i,j,k,l)=0 while lambda(i,j,r,s) and
    lambda(r,s,k,l) are both 1. With ``closed`` (the default) the rules are the
    adjoint-closed ones the algebra sees; ``closed=False`` reads lambda verbatim.
    """
    _require_square(spec)
    allowed = spec.closed_allowed if closed else spec.allowed
    w = star_witness(allowed)
    return w is None, w


def check_counit_condition(spec: GameSpec, closed: bool = True) -> Tuple[bool, Optional[Tuple[int, int]]]:
    """lambda(i,j,i,j) = 1 for all i, j; the first violating (i, j) otherwise."""
    _require_square(spec)
    allowed = spec.closed_allowed if closed else spec.allowed
    n = spec.inputs
    for i in range(n):
        for j in range(n):
            if not allowed[i, j, i, j]:
                return False, (i, j)
    return True, None


def validate_synchronous(spec: GameSpec) -> List[str]:
    """Every way ``spec`` breaks lambda(a,b,x,x) = delta_{a,b}; empty when fine."""
    problems = []
    for x in range(spec.inputs):
        for a in range(spec.outputs):
            for b in range(spec.outputs):
                t = (a, b, x, x)
                label = "(" + ",".join(map(str, t)) + ")"
                if a != b and t not in spec.forbidden:
                    problems.append(f"missing {label}")
                elif a == b and t in spec.forbidden:
                    problems.append(f"diagonal allowed pair forbidden {label}")
    return problems
