"""Presentations of the game algebra and symbolic checks of its bialgebra structure.

All identities are checked on generators. The action of the algebra on
functions of I is never materialized; statements about it are reduced to
their slices at a fixed input, which are identities between NCElements.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .classical import ClassicalPoint, enumerate_classical_points
from .game import GameSpec, check_counit_condition, check_star
from .ncalg import (
    DEFAULT_DEGREE_BOUND,
    VARIANTS,
    Letter,
    NCElement,
    Verdict,
    equal_mod_relations,
    normalize,
)

FAMILIES = ("PROJ", "STAR", "ROWSUM", "COLSUM", "ORTH")

VERIFIED = "verified"
FAILED = "failed"
UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class Relation:
    family: str
    element: NCElement
    rule: Optional[Tuple[int, int, int, int]] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown relation family {self.family!r}")
        if (self.family == "ORTH") != (self.rule is not None):
            raise ValueError("exactly the ORTH family carries a rule tuple")


@dataclass(frozen=True)
class Presentation:
    """Generators p[x,a] plus relation families.

    ``PROJ`` elements are p*p - p, ``STAR`` elements are the generators that
    are declared self-adjoint, ``ROWSUM``/``COLSUM`` are sum - 1, and ``ORTH``
    elements are the products that vanish, tagged with their rule tuple.
    """

    inputs: int
    outputs: int
    variant: str
    relations: Tuple[Relation, ...]

    def family(self, name: str) -> List[Relation]:
        return [r for r in self.relations if r.family == name]

    def counts(self) -> Dict[str, int]:
        return {name: len(self.family(name)) for name in FAMILIES}

    def orthogonality_rules(self) -> List[Tuple[int, int, int, int]]:
        return [r.rule for r in self.family("ORTH")]


def present(spec: GameSpec, variant: str = "game") -> Presentation:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if variant == "bistochastic" and not spec.is_square:
        raise ValueError("bistochastic presentation needs |O| = |I|")
    nI, nO = spec.inputs, spec.outputs
    g = {(x, a): NCElement.gen(x, a) for x in range(nI) for a in range(nO)}
    one = NCElement.one()
    rels: List[Relation] = []
    for key in sorted(g):
        rels.append(Relation("PROJ", g[key] * g[key] - g[key]))
    for key in sorted(g):
        rels.append(Relation("STAR", g[key]))
    for x in range(nI):
        rels.append(Relation("ROWSUM", sum((g[x, a] for a in range(nO)), NCElement.zero()) - one))
    if variant == "bistochastic":
        for a in range(nO):
            rels.append(Relation("COLSUM", sum((g[x, a] for x in range(nI)), NCElement.zero()) - one))
    for a, b, x, y in spec.sorted_forbidden():
        rels.append(Relation("ORTH", g[x, a] * g[y, b], (a, b, x, y)))
    return Presentation(nI, nO, variant, tuple(rels))


# ---------------------------------------------------------------------------
# comultiplication and characters


def delta_on_generator(i: int, j: int, n: int) -> NCElement:
    """sum_k p[i,k] (x) p[k,j]."""
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"generator ({i},{j}) out of range for n={n}")
    return NCElement({(((i, k),), ((k, j),)): 1 for k in range(n)}, 2)


def q_element(k: int, i: int, n: int) -> NCElement:
    """Q[k,i] = sum_r p[k,r] (x) p[r,i], the generator matrix of the composed family."""
    return delta_on_generator(k, i, n)


def apply_delta(e: NCElement, leg: int, n: int) -> NCElement:
    """Apply the comultiplication to tensor leg ``leg``, producing one more leg."""
    acc: Dict[tuple, Fraction] = {}
    for word, c in e.items():
        letters = word[leg]
        for ks in itertools.product(range(n), repeat=len(letters)):
            left = tuple((x, k) for (x, _), k in zip(letters, ks))
            right = tuple((k, a) for (_, a), k in zip(letters, ks))
            new = word[:leg] + (left, right) + word[leg + 1:]
            acc[new] = acc.get(new, Fraction(0)) + c
    return NCElement(acc, e.legs + 1)


def apply_character(e: NCElement, leg: int, value: Callable[[Letter], Fraction]):
    """Slice leg ``leg`` with the character sending p[x,a] to ``value((x, a))``.

    Returns an NCElement on the remaining legs, or a Fraction when ``e`` has one leg.
    """
    acc: Dict[tuple, Fraction] = {}
    for word, c in e.items():
        v = Fraction(c)
        for letter in word[leg]:
            v *= value(letter)
            if not v:
                break
        if v:
            rest = word[:leg] + word[leg + 1:]
            acc[rest] = acc.get(rest, Fraction(0)) + v
    if e.legs == 1:
        return acc.get((), Fraction(0))
    return NCElement(acc, e.legs - 1)


def evaluate_on_points(e: NCElement, points: Sequence[ClassicalPoint]) -> Fraction:
    """Value of ``e`` under the tensor product of the characters of ``points``."""
    total = Fraction(0)
    for word, c in e.items():
        v = Fraction(c)
        for leg, f in zip(word, points):
            if any(f.map[x] != a for x, a in leg):
                v = Fraction(0)
                break
        total += v
    return total


def character_countercheck(
    e: NCElement, spec: GameSpec, variant: str, limit: int = 20000
) -> Optional[Tuple[ClassicalPoint, ...]]:
    """Tuple of classical points on which ``e`` does not vanish, if one exists within ``limit`` tries."""
    points = enumerate_classical_points(spec, invertible=(variant == "bistochastic"))
    for n, combo in enumerate(itertools.product(points, repeat=e.legs)):
        if n >= limit:
            break
        if evaluate_on_points(e, combo):
            return combo
    return None


# ---------------------------------------------------------------------------
# reports


@dataclass
class Witness:
    indices: Tuple[int, ...]
    element: Optional[NCElement] = None
    note: str = ""
    refuting_points: Optional[Tuple[ClassicalPoint, ...]] = None


@dataclass
class TheoremReport:
    claim: str
    status: str = VERIFIED
    checked: int = 0
    unresolved: int = 0
    parts: Dict[str, int] = field(default_factory=dict)
    witness: Optional[Witness] = None
    certified: List[Tuple[str, NCElement, NCElement]] = field(default_factory=list)

    def __post_init__(self):
        if self.status == FAILED and self.witness is None:
            raise ValueError("a failed report needs a witness")

    @property
    def ok(self) -> bool:
        return self.status == VERIFIED

    def render(self) -> str:
        lines = [f"{self.claim}: {self.status}", f"checked {self.checked}", f"unresolved {self.unresolved}"]
        for part, n in self.parts.items():
            lines.append(f"part {part}: {n}")
        if self.witness is not None:
            w = self.witness
            lines.append("witness " + " ".join(map(str, w.indices)))
            if w.element is not None:
                lines.append(f"element {w.element}")
            if w.note:
                lines.append(f"note {w.note}")
            if w.refuting_points:
                lines.append("refuted by " + " | ".join(str(p) for p in w.refuting_points))
        return "\n".join(lines)


class _Checker:
    """Accumulates certification results for one report."""

    def __init__(self, report: TheoremReport, spec: GameSpec, variant: str, keep: bool):
        self.report = report
        self.spec = spec
        self.variant = variant
        self.keep = keep

    def check(self, part: str, lhs: NCElement, rhs: NCElement, indices: Tuple[int, ...]) -> None:
        r = self.report
        r.checked += 1
        r.parts[part] = r.parts.get(part, 0) + 1
        bound = max(DEFAULT_DEGREE_BOUND, (lhs - rhs).degree())
        verdict = equal_mod_relations(lhs, rhs, self.spec, self.variant, bound)
        if verdict is Verdict.PROVED_EQUAL:
            if self.keep:
                r.certified.append((part, lhs, rhs))
            return
        residue = normalize(lhs - rhs, self.spec, self.variant)
        refuter = character_countercheck(residue, self.spec, self.variant)
        if refuter is not None:
            if r.status != FAILED:
                r.status = FAILED
                r.witness = Witness(indices, residue, f"part {part}", refuter)
            return
        r.unresolved += 1
        if r.status == VERIFIED:
            r.status = UNRESOLVED
            r.witness = Witness(indices, residue, f"part {part} not certified at bound {bound}")


def _star_failure(claim: str, spec: GameSpec, variant: str) -> Optional[TheoremReport]:
    ok, w = check_star(spec)
    if ok:
        return None
    i, j, k, l, r, s = w
    n = spec.inputs
    offending = normalize(q_element(k, i, n) * q_element(l, j, n), spec, variant)
    refuter = character_countercheck(offending, spec, variant) if offending else None
    return TheoremReport(
        claim,
        FAILED,
        witness=Witness(w, offending, "condition (star) fails", refuter),
    )


def _require_square(spec: GameSpec):
    if not spec.is_square:
        raise ValueError("needs |O| = |I|")


def verify_delta_well_defined(
    spec: GameSpec, variant: str = "game", keep_certified: bool = False
) -> TheoremReport:
    """Q[k,i] form a compatible family in A (x) A, so the comultiplication exists.

    Parts: (a) Q* = Q and Q^2 = Q; (b) rows of Q sum to 1 (x) 1; (c) Q[k,i]Q[l,j] = 0
    for every forbidden (i,j,k,l); (d) bistochastic only: columns sum to 1 (x) 1.
    """
    _require_square(spec)
    claim = "delta_well_defined"
    failed = _star_failure(claim, spec, variant)
    if failed is not None:
        return failed
    n = spec.inputs
    report = TheoremReport(claim)
    chk = _Checker(report, spec, variant, keep_certified)
    one = NCElement.one(2)
    Q = {(k, i): q_element(k, i, n) for k in range(n) for i in range(n)}
    for (k, i), q in Q.items():
        chk.check("a:adjoint", q.adjoint(), q, (k, i))
        chk.check("a:idempotent", q * q, q, (k, i))
    for k in range(n):
        chk.check("b:row", sum((Q[k, i] for i in range(n)), NCElement.zero(2)), one, (k,))
    for i, j, k, l in spec.sorted_forbidden():
        chk.check("c:orthogonal", Q[k, i] * Q[l, j], NCElement.zero(2), (i, j, k, l))
    if variant == "bistochastic":
        for i in range(n):
            chk.check("d:column", sum((Q[k, i] for k in range(n)), NCElement.zero(2)), one, (i,))
    return report


def verify_coassociativity(spec: GameSpec, variant: str = "game") -> TheoremReport:
    """Both iterated comultiplications agree on every generator, as formal sums."""
    _require_square(spec)
    n = spec.inputs
    report = TheoremReport("coassociativity")
    for i in range(n):
        for j in range(n):
            d = delta_on_generator(i, j, n)
            report.checked += 1
            left, right = apply_delta(d, 0, n), apply_delta(d, 1, n)
            if left != right:
                report.status = FAILED
                report.witness = Witness((i, j), left - right, "formal sums differ")
                return report
    report.parts["generators"] = report.checked
    return report


def verify_counit_identity(spec: GameSpec, variant: str = "game") -> TheoremReport:
    """eps(p[i,j]) = delta_ij is a character and both slices of the comultiplication by it are the identity."""
    _require_square(spec)
    claim = "counit"
    ok, w = check_counit_condition(spec)
    if not ok:
        return TheoremReport(claim, FAILED, witness=Witness(w, None, "lambda(i,j,i,j) = 0"))
    n = spec.inputs
    eps = lambda letter: Fraction(1 if letter[0] == letter[1] else 0)
    report = TheoremReport(claim)

    def fail(indices, note, element=None):
        report.status = FAILED
        report.witness = Witness(indices, element, note)
        return report

    for x in range(n):
        report.checked += 1
        if sum(eps((x, a)) for a in range(n)) != 1:
            return fail((x,), "row sum")
    if variant == "bistochastic":
        for a in range(n):
            report.checked += 1
            if sum(eps((x, a)) for x in range(n)) != 1:
                return fail((a,), "column sum")
    for a, b, x, y in spec.sorted_forbidden():
        report.checked += 1
        if eps((x, a)) * eps((y, b)):
            return fail((a, b, x, y), "orthogonality")
    for i in range(n):
        for j in range(n):
            d = delta_on_generator(i, j, n)
            p = NCElement.gen(i, j)
            for leg in (0, 1):
                report.checked += 1
                sliced = apply_character(d, leg, eps)
                if sliced != p:
                    return fail((i, j, leg), "slice differs from generator", sliced - p)
    report.parts["relations+slices"] = report.checked
    return report


def verify_group_identities(spec: GameSpec, keep_certified: bool = False) -> TheoremReport:
    """Density and invertibility identities of the bistochastic quotient.

    (a) sum_k D(p[i,k]) (1 (x) p[j,k]) = p[i,j] (x) 1
    (b) sum_k (p[k,i] (x) 1) D(p[k,j]) = 1 (x) p[i,j]
    (c) sum_j p[x,j] p[i,j] = delta_xi, the slice at x of the invertibility identity.
    """
    _require_square(spec)
    variant = "bistochastic"
    claim = "group_identities"
    failed = _star_failure(claim, spec, variant)
    if failed is not None:
        return failed
    n = spec.inputs
    report = TheoremReport(claim)
    chk = _Checker(report, spec, variant, keep_certified)
    one2 = NCElement.one(2)
    g2 = lambda x, a, leg: NCElement.gen(x, a, legs=2, leg=leg)
    for i in range(n):
        for j in range(n):
            lhs = sum(
                (delta_on_generator(i, k, n) * g2(j, k, 1) for k in range(n)),
                NCElement.zero(2),
            )
            chk.check("a:density_right", lhs, g2(i, j, 0), (i, j))
            lhs = sum(
                (g2(k, i, 0) * delta_on_generator(k, j, n) for k in range(n)),
                NCElement.zero(2),
            )
            chk.check("b:density_left", lhs, g2(i, j, 1), (i, j))
    for x in range(n):
        for i in range(n):
            lhs = sum(
                (NCElement.gen(x, j) * NCElement.gen(i, j) for j in range(n)),
                NCElement.zero(),
            )
            rhs = NCElement.one() if x == i else NCElement.zero()
            chk.check("c:invertibility", lhs, rhs, (x, i))
    return report
