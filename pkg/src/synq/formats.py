"""Line-oriented text formats for graphs, games, models, presentations and points.

All formats are whitespace separated; ``#`` starts a comment; blank lines
are ignored. Parsers raise :class:`FormatError` carrying the line number.
"""
from __future__ import annotations

import re
from typing import Iterator, List, Tuple

import numpy as np

from .classical import ClassicalPoint
from .game import Graph, GameSpec, sync_forced
from .ncalg import parse_element, serialize
from .presentation import FAMILIES, Presentation, Relation
from .repcheck import MatrixModel


class FormatError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


def _lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield n, body.split()


def _ints(n: int, tokens: List[str], count: int) -> List[int]:
    if len(tokens) != count:
        raise FormatError(n, f"expected {count} integers, got {' '.join(tokens)!r}")
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(n, f"not an integer in {' '.join(tokens)!r}") from None


# graphs


def parse_graph(text: str) -> Graph:
    lines = list(_lines(text))
    if not lines:
        raise FormatError(0, "empty graph file")
    n0, header = lines[0]
    nv, ne = _ints(n0, header, 2)
    if nv < 0 or ne < 0:
        raise FormatError(n0, "negative size")
    seen = set()
    for ln, tokens in lines[1:]:
        u, v = _ints(ln, tokens, 2)
        if u == v:
            raise FormatError(ln, f"loop at vertex {u}")
        if not (0 <= u < nv and 0 <= v < nv):
            raise FormatError(ln, f"vertex out of range 0..{nv - 1} in edge {u} {v}")
        e = frozenset((u, v))
        if e in seen:
            raise FormatError(ln, f"duplicate edge {u} {v}")
        seen.add(e)
    if len(seen) != ne:
        raise FormatError(n0, f"header announces {ne} edges, found {len(seen)}")
    return Graph(nv, frozenset(seen))


def render_graph(g: Graph) -> str:
    edges = g.sorted_edges()
    return "\n".join([f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"


# games


def parse_game(text: str) -> GameSpec:
    """``inputs N``, ``outputs M`` and ``forbid a b x y`` lines; synchronicity zeros are implied."""
    inputs = outputs = None
    extra = []
    for ln, tokens in _lines(text):
        key, args = tokens[0], tokens[1:]
        if key in ("inputs", "outputs"):
            (val,) = _ints(ln, args, 1)
            if val < 1:
                raise FormatError(ln, f"{key} must be positive")
            if key == "inputs":
                inputs = val
            else:
                outputs = val
        elif key == "forbid":
            a, b, x, y = _ints(ln, args, 4)
            if a == b and x == y:
                raise FormatError(
                    ln,
                    f"forbid {a} {b} {x} {y} contradicts synchronicity lambda(a,a,x,x)=1",
                )
            extra.append((ln, (a, b, x, y)))
        else:
            raise FormatError(ln, f"unknown directive {key!r}")
    if inputs is None or outputs is None:
        raise FormatError(0, "game file needs both 'inputs' and 'outputs'")
    for ln, (a, b, x, y) in extra:
        if not (0 <= a < outputs and 0 <= b < outputs and 0 <= x < inputs and 0 <= y < inputs):
            raise FormatError(ln, f"index out of range in forbid {a} {b} {x} {y}")
    return GameSpec.synchronous(inputs, outputs, [t for _, t in extra])


def render_game(spec: GameSpec) -> str:
    implied = sync_forced(spec.inputs, spec.outputs)
    lines = [
        f"inputs {spec.inputs}",
        f"outputs {spec.outputs}",
        "# synchronicity zeros (a,b,x,x), a!=b, are implied",
    ]
    lines += [f"forbid {a} {b} {x} {y}" for a, b, x, y in spec.sorted_forbidden() if (a, b, x, y) not in implied]
    return "\n".join(lines) + "\n"


# models


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def render_model(m: MatrixModel) -> str:
    out = [f"dim {m.dim}"]
    for x in range(m.inputs):
        for a in range(m.outputs):
            out.append(f"gen {x} {a}")
            for row in m[x, a]:
                out.append(" ".join(f"{_fmt(z.real)},{_fmt(z.imag)}" for z in row))
    return "\n".join(out) + "\n"


def parse_model(text: str) -> MatrixModel:
    lines = list(_lines(text))
    if not lines or lines[0][1][0] != "dim":
        raise FormatError(lines[0][0] if lines else 0, "model file must start with 'dim d'")
    (d,) = _ints(lines[0][0], lines[0][1][1:], 1)
    if d < 1:
        raise FormatError(lines[0][0], "dimension must be positive")
    blocks = {}
    pos = 1
    while pos < len(lines):
        ln, tokens = lines[pos]
        if tokens[0] != "gen":
            raise FormatError(ln, "expected 'gen x a'")
        x, a = _ints(ln, tokens[1:], 2)
        if (x, a) in blocks:
            raise FormatError(ln, f"generator {x} {a} given twice")
        rows = lines[pos + 1:pos + 1 + d]
        if len(rows) != d:
            raise FormatError(ln, f"generator {x} {a} needs {d} matrix rows")
        mat = np.zeros((d, d), dtype=complex)
        for i, (rl, toks) in enumerate(rows):
            if len(toks) != d:
                raise FormatError(rl, f"expected {d} entries, got {len(toks)}")
            for j, tok in enumerate(toks):
                try:
                    re_s, im_s = tok.split(",")
                    mat[i, j] = complex(float(re_s), float(im_s))
                except ValueError:
                    raise FormatError(rl, f"bad complex entry {tok!r}") from None
        blocks[x, a] = mat
        pos += 1 + d
    if not blocks:
        raise FormatError(lines[0][0], "model has no generators")
    nI = max(x for x, _ in blocks) + 1
    nO = max(a for _, a in blocks) + 1
    missing = [(x, a) for x in range(nI) for a in range(nO) if (x, a) not in blocks]
    if missing:
        raise FormatError(0, f"model misses generators {missing[:4]}")
    entries = np.zeros((nI, nO, d, d), dtype=complex)
    for (x, a), mat in blocks.items():
        entries[x, a] = mat
    return MatrixModel(entries)


# presentations


def render_presentation(p: Presentation) -> str:
    lines = [f"presentation inputs {p.inputs} outputs {p.outputs} variant {p.variant}"]
    for rel in p.relations:
        head = rel.family if rel.rule is None else "ORTH " + " ".join(map(str, rel.rule))
        lines.append(f"{head} {serialize(rel.element)}")
    return "\n".join(lines) + "\n"


_HEADER = re.compile(r"presentation inputs (\d+) outputs (\d+) variant (\w+)$")


def parse_presentation(text: str) -> Presentation:
    rows = [(n, line.strip()) for n, line in enumerate(text.splitlines(), 1) if line.strip() and not line.lstrip().startswith("#")]
    if not rows:
        raise FormatError(0, "empty presentation")
    m = _HEADER.match(rows[0][1])
    if not m:
        raise FormatError(rows[0][0], "bad presentation header")
    rels = []
    for ln, line in rows[1:]:
        family, _, rest = line.partition(" ")
        if family not in FAMILIES:
            raise FormatError(ln, f"unknown family {family!r}")
        rule = None
        if family == "ORTH":
            toks = rest.split(" ", 4)
            rule = tuple(_ints(ln, toks[:4], 4))
            rest = toks[4] if len(toks) > 4 else ""
        try:
            rels.append(Relation(family, parse_element(rest), rule))
        except ValueError as exc:
            raise FormatError(ln, str(exc)) from None
    return Presentation(int(m.group(1)), int(m.group(2)), m.group(3), tuple(rels))


# points


def parse_point(text: str, invertible: bool = False) -> ClassicalPoint:
    body = text.strip()
    if not body.startswith("f:"):
        raise ValueError(f"point must start with 'f:', got {text!r}")
    pairs = [tok.split("->") for tok in body[2:].split()]
    mapping = {int(x): int(a) for x, a in pairs}
    if sorted(mapping) != list(range(len(mapping))):
        raise ValueError("point must list every input once")
    return ClassicalPoint(tuple(mapping[x] for x in range(len(mapping))), invertible)
