"""Finite-dimensional matrix models of the game relations.

A model assigns a d x d complex matrix q[x,a] to every generator. All
residuals are spectral norms. Random draws use numpy's PCG64 bit generator
seeded explicitly, so every randomized check is reproducible from its seed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .game import GameSpec
from .ncalg import VARIANTS, NCElement

DEFAULT_TOL = 1e-9
COMMUTATOR_TOL = 1e-8


@dataclass(eq=False)
class MatrixModel:
    """``entries[x, a]`` is the matrix assigned to p[x,a]; shape (|I|, |O|, d, d)."""

    entries: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=complex)
        if e.ndim != 4 or e.shape[2] != e.shape[3] or e.shape[2] < 1:
            raise ValueError(f"model entries must have shape (I, O, d, d), got {e.shape}")
        self.entries = e

    @property
    def inputs(self) -> int:
        return self.entries.shape[0]

    @property
    def outputs(self) -> int:
        return self.entries.shape[1]

    @property
    def dim(self) -> int:
        return self.entries.shape[2]

    def __getitem__(self, key: Tuple[int, int]) -> np.ndarray:
        return self.entries[key]


def _spec_norm(stack: np.ndarray) -> np.ndarray:
    if stack.size == 0:
        return np.zeros(stack.shape[:-2])
    return np.linalg.norm(stack, ord=2, axis=(-2, -1))


@dataclass
class VerificationReport:
    residuals: Dict[str, float]
    tol: float
    worst: Dict[str, tuple] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v <= self.tol for v in self.residuals.values())

    def render(self) -> str:
        lines = [f"{'family':<14}{'residual':>14}  status"]
        for name, v in self.residuals.items():
            lines.append(f"{name:<14}{v:>14.3e}  {'ok' if v <= self.tol else 'FAIL'}")
        lines.append(f"tolerance {self.tol:.3e}: {'pass' if self.passed else 'fail'}")
        return "\n".join(lines)


def verify_model(
    spec: GameSpec, m: MatrixModel, variant: str = "game", tol: float = DEFAULT_TOL
) -> VerificationReport:
    """Largest violation of each relation family by the model."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if (m.inputs, m.outputs) != (spec.inputs, spec.outputs):
        raise ValueError(
            f"model is {m.inputs}x{m.outputs}, game needs {spec.inputs}x{spec.outputs}"
        )
    if variant == "bistochastic" and not spec.is_square:
        raise ValueError("bistochastic variant needs |O| = |I|")
    q = m.entries
    eye = np.eye(m.dim)
    residuals: Dict[str, float] = {}
    worst: Dict[str, tuple] = {}

    def record(name, norms, labels):
        if norms.size == 0:
            residuals[name] = 0.0
            return
        idx = int(np.argmax(norms))
        residuals[name] = float(norms.flat[idx])
        worst[name] = labels(idx)

    flat = lambda idx: tuple(int(v) for v in np.unravel_index(idx, q.shape[:2]))
    qh = np.conj(np.swapaxes(q, -1, -2))
    record("self_adjoint", _spec_norm(q - qh), flat)
    record("idempotent", _spec_norm(q @ q - q), flat)
    record("row_sum", _spec_norm(q.sum(axis=1) - eye), lambda i: (i,))
    if variant == "bistochastic":
        record("column_sum", _spec_norm(q.sum(axis=0) - eye), lambda i: (i,))
    rules = spec.sorted_forbidden()
    if rules:
        r = np.array(rules)
        left = q[r[:, 2], r[:, 0]]
        right = q[r[:, 3], r[:, 1]]
        record("orthogonality", _spec_norm(left @ right), lambda i: rules[i])
    else:
        residuals["orthogonality"] = 0.0
    return VerificationReport(residuals, tol, worst)


def compose_models(m1: MatrixModel, m2: MatrixModel) -> MatrixModel:
    """Q[k,i] = sum_r m1[k,r] (x) m2[r,i] (Kronecker product, m1 on the left)."""
    if m1.outputs != m2.inputs:
        raise ValueError(
            f"cannot compose: first model has {m1.outputs} outputs, second has {m2.inputs} inputs"
        )
    d1, d2 = m1.dim, m2.dim
    q = np.einsum("krab,ricd->kiacbd", m1.entries, m2.entries)
    return MatrixModel(q.reshape(m1.inputs, m2.outputs, d1 * d2, d1 * d2))


def direct_sum(*models: MatrixModel) -> MatrixModel:
    """Block-diagonal model; passes any relation set each summand passes."""
    shapes = {(m.inputs, m.outputs) for m in models}
    if len(shapes) != 1:
        raise ValueError("summands must share index sets")
    nI, nO = shapes.pop()
    d = sum(m.dim for m in models)
    out = np.zeros((nI, nO, d, d), dtype=complex)
    off = 0
    for m in models:
        out[:, :, off:off + m.dim, off:off + m.dim] = m.entries
        off += m.dim
    return MatrixModel(out)


def rank_one_projection(theta: float) -> np.ndarray:
    v = np.array([np.cos(theta), np.sin(theta)])
    return np.outer(v, v).astype(complex)


def block_magic_unitary(theta: float = np.pi / 4) -> MatrixModel:
    """4x4 magic unitary in dimension 2 built from two projections at angle ``theta``.

    Rows and columns: {p, 1-p, 0, 0}, {1-p, p, 0, 0}, {0, 0, q, 1-q}, {0, 0, 1-q, q}.
    """
    p = rank_one_projection(0.0)
    q = rank_one_projection(theta)
    one = np.eye(2, dtype=complex)
    zero = np.zeros((2, 2), dtype=complex)
    grid = [
        [p, one - p, zero, zero],
        [one - p, p, zero, zero],
        [zero, zero, q, one - q],
        [zero, zero, one - q, q],
    ]
    return MatrixModel(np.array(grid))


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def random_projection_partition(n: int, dim: int, seed: Union[int, np.random.Generator]) -> List[np.ndarray]:
    """``n`` spectral projections of a random Hermitian matrix summing to the identity.

    Eigenvalues are sorted and cut into ``n`` consecutive blocks at uniformly
    drawn boundaries. With ``n <= dim`` every block is nonempty (so ``n == dim``
    gives rank-one parts); otherwise some parts are zero.
    """
    if n < 1 or dim < 1:
        raise ValueError("need n >= 1 and dim >= 1")
    rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed)
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    _, vecs = np.linalg.eigh((a + a.conj().T) / 2)
    if n <= dim:
        cuts = np.sort(rng.choice(np.arange(1, dim), size=n - 1, replace=False))
    else:
        cuts = np.sort(rng.integers(0, dim + 1, size=n - 1))
    parts = []
    for block in np.split(np.arange(dim), cuts):
        v = vecs[:, block]
        parts.append(v @ v.conj().T)
    return parts


def lemma_orthogonality_residual(parts: Sequence[np.ndarray]) -> float:
    """max over i != j of ||p_i p_j||."""
    parts = [np.asarray(p) for p in parts]
    if len(parts) < 2:
        return 0.0
    stack = np.array(parts)
    prods = np.einsum("iab,jbc->ijac", stack, stack)
    norms = _spec_norm(prods)
    np.fill_diagonal(norms, 0.0)
    return float(norms.max())


def noncommutativity_witness(m: MatrixModel, tol: float = COMMUTATOR_TOL) -> Optional[Tuple[Tuple[int, int], Tuple[int, int]]]:
    """First pair of generators (in index order) whose matrices do not commute."""
    keys = [(x, a) for x in range(m.inputs) for a in range(m.outputs)]
    for s, g in enumerate(keys):
        for h in keys[s + 1:]:
            A, B = m[g], m[h]
            if np.linalg.norm(A @ B - B @ A, 2) > tol:
                return g, h
    return None


def evaluate_element(e: NCElement, model: Union[MatrixModel, Sequence[MatrixModel]]) -> np.ndarray:
    """Matrix of ``e`` with leg t evaluated in ``model`` (or ``model[t]``), legs combined by Kronecker product."""
    models = [model] * e.legs if isinstance(model, MatrixModel) else list(model)
    if len(models) != e.legs:
        raise ValueError("one model per leg required")
    dim = int(np.prod([m.dim for m in models]))
    out = np.zeros((dim, dim), dtype=complex)
    for word, c in e.items():
        mat = np.ones((1, 1), dtype=complex)
        for leg, m in zip(word, models):
            leg_mat = np.eye(m.dim, dtype=complex)
            for x, a in leg:
                leg_mat = leg_mat @ m[x, a]
            mat = np.kron(mat, leg_mat)
        out += float(c) * mat
    return out
