"""Exact noncommutative *-polynomials in the game generators p[x,a].

An :class:`NCElement` is a finite rational combination of tensor words. A
tensor word is a tuple of legs; a leg is a tuple of letters ``(x, a)``; the
empty leg is the unit of that tensor factor. Generators are self-adjoint, so
the adjoint of a word just reverses every leg.

Two equality tools live here:

* :func:`normalize`, a fast rewriting normal form (orthogonality, idempotence,
  and collapse of complete row/column sweeps), and
* :func:`equal_mod_relations`, a bounded-degree ideal-membership test that
  answers ``PROVED_EQUAL`` or ``UNRESOLVED`` but never "different".
"""
from __future__ import annotations

import enum
import itertools
import re
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .game import GameSpec

Letter = Tuple[int, int]
Leg = Tuple[Letter, ...]
Word = Tuple[Leg, ...]
Scalar = Union[int, Fraction]

VARIANTS = ("game", "bistochastic")
DEFAULT_DEGREE_BOUND = 4


def word_key(word: Word):
    """Canonical order of tensor words: leg count, total length, then lexicographic."""
    return (len(word), sum(len(leg) for leg in word), word)


class NCElement:
    """Immutable finite combination ``sum c_w * w`` over tensor words ``w``."""

    __slots__ = ("legs", "_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Word, Scalar]] = None, legs: int = 1):
        if legs < 1:
            raise ValueError("an element needs at least one tensor leg")
        clean: Dict[Word, Fraction] = {}
        for word, c in (terms or {}).items():
            if len(word) != legs:
                raise ValueError(f"word {word!r} has {len(word)} legs, expected {legs}")
            c = Fraction(c)
            if c:
                word = tuple(tuple((int(x), int(a)) for x, a in leg) for leg in word)
                clean[word] = clean.get(word, Fraction(0)) + c
        self.legs = legs
        self._terms = {w: clean[w] for w in sorted(clean, key=word_key) if clean[w]}
        self._hash = None

    # constructors

    @classmethod
    def zero(cls, legs: int = 1) -> "NCElement":
        return cls({}, legs)

    @classmethod
    def one(cls, legs: int = 1) -> "NCElement":
        return cls({((),) * legs: 1}, legs)

    @classmethod
    def gen(cls, x: int, a: int, legs: int = 1, leg: int = 0) -> "NCElement":
        word = tuple(((x, a),) if t == leg else () for t in range(legs))
        return cls({word: 1}, legs)

    @classmethod
    def word(cls, *legs: Sequence[Letter], coef: Scalar = 1) -> "NCElement":
        return cls({tuple(tuple(leg) for leg in legs): coef}, len(legs))

    # inspection

    @property
    def terms(self) -> Dict[Word, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def degree(self) -> int:
        """Longest single leg appearing in any term (0 for scalars and zero)."""
        return max((len(leg) for w in self._terms for leg in w), default=0)

    def coefficient(self, word: Word) -> Fraction:
        return self._terms.get(word, Fraction(0))

    # arithmetic

    def _check(self, other: "NCElement"):
        if self.legs != other.legs:
            raise ValueError(f"leg count mismatch: {self.legs} vs {other.legs}")

    def __add__(self, other):
        if not isinstance(other, NCElement):
            other = NCElement.one(self.legs) * other
        self._check(other)
        acc = dict(self._terms)
        for w, c in other._terms.items():
            acc[w] = acc.get(w, Fraction(0)) + c
        return NCElement(acc, self.legs)

    __radd__ = __add__

    def __neg__(self):
        return NCElement({w: -c for w, c in self._terms.items()}, self.legs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, NCElement):
            k = Fraction(other)
            return NCElement({w: k * c for w, c in self._terms.items()}, self.legs)
        self._check(other)
        acc: Dict[Word, Fraction] = defaultdict(Fraction)
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                acc[tuple(l1 + l2 for l1, l2 in zip(w1, w2))] += c1 * c2
        return NCElement(acc, self.legs)

    def __rmul__(self, other):
        k = Fraction(other)
        return NCElement({w: k * c for w, c in self._terms.items()}, self.legs)

    def __pow__(self, k: int):
        out = NCElement.one(self.legs)
        for _ in range(k):
            out = out * self
        return out

    def adjoint(self) -> "NCElement":
        return NCElement(
            {tuple(leg[::-1] for leg in w): c.conjugate() for w, c in self._terms.items()},
            self.legs,
        )

    def tensor(self, other: "NCElement") -> "NCElement":
        acc: Dict[Word, Fraction] = defaultdict(Fraction)
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                acc[w1 + w2] += c1 * c2
        return NCElement(acc, self.legs + other.legs)

    def __eq__(self, other):
        if not isinstance(other, NCElement):
            return NotImplemented
        return self.legs == other.legs and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.legs, tuple(self._terms.items())))
        return self._hash

    # text form

    def __str__(self):
        return serialize(self)

    def __repr__(self):
        return f"NCElement({serialize(self)!r}, legs={self.legs})"


def tensor(*elements: NCElement) -> NCElement:
    out = elements[0]
    for e in elements[1:]:
        out = out.tensor(e)
    return out


def gens(spec: GameSpec) -> Dict[Letter, NCElement]:
    return {
        (x, a): NCElement.gen(x, a)
        for x in range(spec.inputs)
        for a in range(spec.outputs)
    }


def _leg_str(leg: Leg) -> str:
    return "".join(f"p[{x},{a}]" for x, a in leg) if leg else "1"


def serialize(e: NCElement) -> str:
    if not e:
        return "0"
    parts = []
    for w, c in e.items():
        parts.append(f"{c.numerator}/{c.denominator} " + " (x) ".join(_leg_str(leg) for leg in w))
    return " + ".join(parts)


_LETTER = re.compile(r"p\[(\d+),(\d+)\]")


def parse_element(text: str, legs: int = 1) -> NCElement:
    text = text.strip()
    if text == "0":
        return NCElement.zero(legs)
    terms: Dict[Word, Fraction] = defaultdict(Fraction)
    n_legs = None
    for part in text.split(" + "):
        coef, _, rest = part.strip().partition(" ")
        word = []
        for leg_text in rest.split(" (x) "):
            leg_text = leg_text.strip()
            if leg_text == "1":
                word.append(())
                continue
            letters = _LETTER.findall(leg_text)
            if "".join(f"p[{x},{a}]" for x, a in letters) != leg_text:
                raise ValueError(f"malformed word {leg_text!r}")
            word.append(tuple((int(x), int(a)) for x, a in letters))
        if n_legs is None:
            n_legs = len(word)
        elif n_legs != len(word):
            raise ValueError("terms disagree on leg count")
        terms[tuple(word)] += Fraction(coef)
    return NCElement(terms, n_legs)


# ---------------------------------------------------------------------------
# rewriting


class Rules:
    """Length-non-increasing rewrite rules and sweep families for one game.

    Letter pairs in ``killed`` multiply to zero; a letter times itself is the
    letter. Row families {p[x,a] : a} always sum to 1; in the bistochastic
    variant so do column families {p[x,a] : x}, and distinct members of a
    column are orthogonal.
    """

    def __init__(self, spec: GameSpec, variant: str = "game"):
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
        if variant == "bistochastic" and not spec.is_square:
            raise ValueError("bistochastic variant needs |O| = |I|")
        self.spec = spec
        self.variant = variant
        self.bistochastic = variant == "bistochastic"
        nI, nO = spec.inputs, spec.outputs
        killed = set()
        for a, b, x, y in spec.closed_forbidden:
            killed.add(((x, a), (y, b)))
        for x in range(nI):
            for a in range(nO):
                for b in range(nO):
                    if a != b:
                        killed.add(((x, a), (x, b)))
        if self.bistochastic:
            for a in range(nO):
                for x in range(nI):
                    for y in range(nI):
                        if x != y:
                            killed.add(((x, a), (y, a)))
        self.killed = frozenset(killed)
        self.letters: Tuple[Letter, ...] = tuple(
            (x, a) for x in range(nI) for a in range(nO)
        )
        self.rows = tuple(tuple((x, a) for a in range(nO)) for x in range(nI))
        self.cols = (
            tuple(tuple((x, a) for x in range(nI)) for a in range(nO))
            if self.bistochastic
            else ()
        )
        self._leg_vectors: Dict[int, List[Dict[Leg, Fraction]]] = {}

    def reduce_leg(self, leg: Iterable[Letter]) -> Optional[Leg]:
        """Leftmost-innermost normal form of one leg under the monomial rules; None means 0."""
        stack: List[Letter] = []
        for letter in leg:
            if stack:
                top = stack[-1]
                if top == letter:
                    continue
                if (top, letter) in self.killed:
                    return None
            stack.append(letter)
        return tuple(stack)

    def reduce_word(self, word: Word) -> Optional[Word]:
        out = []
        for leg in word:
            r = self.reduce_leg(leg)
            if r is None:
                return None
            out.append(r)
        return tuple(out)

    def reduce_terms(self, terms: Mapping[Word, Fraction]) -> Dict[Word, Fraction]:
        acc: Dict[Word, Fraction] = defaultdict(Fraction)
        for w, c in terms.items():
            r = self.reduce_word(w)
            if r is not None:
                acc[r] += c
        return {w: c for w, c in acc.items() if c}

    def reduced_legs(self, max_len: int) -> Iterator[Leg]:
        """All irreducible legs of length <= max_len, shortest first."""
        level: List[Leg] = [()]
        for length in range(max_len + 1):
            yield from level
            if length == max_len:
                break
            nxt = []
            for leg in level:
                for letter in self.letters:
                    if leg and (leg[-1] == letter or (leg[-1], letter) in self.killed):
                        continue
                    nxt.append(leg + (letter,))
            level = nxt

    # sum-collapse

    def _sweep_pass(self, terms: Dict[Word, Fraction]) -> bool:
        groups: Dict[tuple, Dict[int, Word]] = {}
        for word in terms:
            for t, leg in enumerate(word):
                for q, (x, a) in enumerate(leg):
                    ctx = (word[:t], leg[:q], leg[q + 1:], word[t + 1:])
                    groups.setdefault((ctx, 0, x), {})[a] = word
                    if self.bistochastic:
                        groups.setdefault((ctx, 1, a), {})[x] = word
        used = set()
        additions: List[Tuple[Word, Fraction]] = []
        for (ctx, kind, idx), members in groups.items():
            family = self.rows[idx] if kind == 0 else self.cols[idx]
            before, pre, suf, after = ctx
            coef = None
            ok = True
            for m, letter in enumerate(family):
                w = members.get(m)
                if w is None:
                    # an absent member is fine only if it vanishes identically
                    if self.reduce_leg(pre + (letter,) + suf) is not None:
                        ok = False
                        break
                    continue
                if w in used or (coef is not None and terms[w] != coef):
                    ok = False
                    break
                coef = terms[w]
            if not ok or coef is None:
                continue
            for w in members.values():
                used.add(w)
            collapsed = self.reduce_leg(pre + suf)
            if collapsed is not None:
                additions.append((before + (collapsed,) + after, coef))
        if not used:
            return False
        for w in used:
            del terms[w]
        for w, c in additions:
            v = terms.get(w, Fraction(0)) + c
            if v:
                terms[w] = v
            else:
                terms.pop(w, None)
        return True

    def normalize_terms(self, terms: Mapping[Word, Fraction]) -> Dict[Word, Fraction]:
        current = self.reduce_terms(terms)
        current = {w: current[w] for w in sorted(current, key=word_key)}
        while self._sweep_pass(current):
            current = {w: current[w] for w in sorted(current, key=word_key)}
        return current

    # ideal generators

    def sum_relations(self) -> List[Dict[Leg, Fraction]]:
        rels = []
        for fam in self.rows + self.cols:
            rel = {(letter,): Fraction(1) for letter in fam}
            rel[()] = Fraction(-1)
            rels.append(rel)
        return rels

    def leg_relation_vectors(self, bound: int) -> List[Dict[Leg, Fraction]]:
        """Reduced ``w * rho * w'`` for each sum relation rho, |w| + |w'| <= bound - 1."""
        if bound in self._leg_vectors:
            return self._leg_vectors[bound]
        out = []
        seen = set()
        if bound >= 1:
            legs = list(self.reduced_legs(bound - 1))
            rels = self.sum_relations()
            for left in legs:
                for right in legs:
                    if len(left) + len(right) > bound - 1:
                        continue
                    for rel in rels:
                        vec: Dict[Leg, Fraction] = defaultdict(Fraction)
                        for leg, c in rel.items():
                            r = self.reduce_leg(left + leg + right)
                            if r is not None:
                                vec[r] += c
                        vec = {k: v for k, v in vec.items() if v}
                        if not vec:
                            continue
                        sig = tuple(sorted(vec.items()))
                        if sig not in seen:
                            seen.add(sig)
                            out.append(vec)
        self._leg_vectors[bound] = out
        return out


@lru_cache(maxsize=64)
def rules_for(spec: GameSpec, variant: str = "game") -> Rules:
    return Rules(spec, variant)


def normalize(e: NCElement, spec: GameSpec, variant: str = "game") -> NCElement:
    """Rewrite ``e`` to a fixpoint of the game's reduction rules.

    Per leg: p[x,a]p[x,b] -> delta_ab p[x,a]; p[x,a]p[y,b] -> 0 on forbidden
    tuples (adjoint-closed); in the bistochastic variant p[x,a]p[y,a] ->
    delta_xy p[x,a]. Then complete row (and column) sweeps with a common
    coefficient collapse to their context, repeated until nothing changes.
    """
    rules = rules_for(spec, variant)
    return NCElement(rules.normalize_terms(e.terms), e.legs)


# ---------------------------------------------------------------------------
# ideal membership


class Verdict(str, enum.Enum):
    PROVED_EQUAL = "proved_equal"
    UNRESOLVED = "unresolved"


class _Echelon:
    """Sparse exact row echelon form keyed by leading (largest) word."""

    def __init__(self):
        self.pivots: Dict[Word, Dict[Word, Fraction]] = {}

    def reduce(self, vec: Mapping[Word, Fraction]) -> Dict[Word, Fraction]:
        vec = dict(vec)
        while vec:
            lead = max(vec, key=word_key)
            row = self.pivots.get(lead)
            if row is None:
                break
            c = vec[lead]
            for k, v in row.items():
                nv = vec.get(k, Fraction(0)) - c * v
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
        return vec

    def add(self, vec: Mapping[Word, Fraction]) -> None:
        vec = self.reduce(vec)
        if vec:
            lead = max(vec, key=word_key)
            c = vec[lead]
            self.pivots[lead] = {k: v / c for k, v in vec.items()}

    def __len__(self):
        return len(self.pivots)


def ideal_echelon(
    rules: Rules, leg_contexts: Sequence[Sequence[Leg]], bound: int
) -> _Echelon:
    """Echelon form of the degree-bounded relation span inside a tensor product.

    Leg ``t`` receives every reduced relation vector, tensored with every
    combination of the words listed in ``leg_contexts`` for the other legs.
    """
    ech = _Echelon()
    vectors = rules.leg_relation_vectors(bound)
    n = len(leg_contexts)
    for t in range(n):
        others = [sorted(set(leg_contexts[u]), key=lambda l: (len(l), l)) for u in range(n) if u != t]
        for ctx in itertools.product(*others):
            for vec in vectors:
                ech.add({ctx[:t] + (leg,) + ctx[t:]: c for leg, c in vec.items()})
    return ech


def equal_mod_relations(
    lhs: NCElement,
    rhs: NCElement,
    spec: GameSpec,
    variant: str = "game",
    degree_bound: int = DEFAULT_DEGREE_BOUND,
    fast_path: bool = True,
) -> Verdict:
    """Certify ``lhs == rhs`` in the game algebra (or its tensor powers).

    Normalizes the difference; if that does not vanish, tests membership of
    the normal form in the span of ``w * rho * w'`` over the row-sum (and
    column-sum) relations rho, with monomial relations already quotiented out
    by working on irreducible words. Other legs range over the words present
    in the difference, which is complete for tensor products of quotients.
    ``UNRESOLVED`` is not a disproof. ``fast_path=False`` skips the sweep
    collapse and decides on the monomial reduction plus linear algebra alone.
    """
    if lhs.legs != rhs.legs:
        raise ValueError(f"leg count mismatch: {lhs.legs} vs {rhs.legs}")
    diff = lhs - rhs
    if degree_bound < max(1, diff.degree()):
        raise ValueError(
            f"degree bound {degree_bound} below input degree {diff.degree()}"
        )
    rules = rules_for(spec, variant)
    z = rules.normalize_terms(diff.terms) if fast_path else rules.reduce_terms(diff.terms)
    if not z:
        return Verdict.PROVED_EQUAL
    contexts = [[w[t] for w in z] for t in range(diff.legs)]
    ech = ideal_echelon(rules, contexts, degree_bound)
    return Verdict.PROVED_EQUAL if not ech.reduce(z) else Verdict.UNRESOLVED


# ---------------------------------------------------------------------------
# free products (easiest games)


def _require_easiest(spec: GameSpec):
    if not spec.is_easiest():
        raise ValueError("expected an easiest game (only synchronicity zeros)")


def free_product_basis(spec: GameSpec, max_degree: int) -> Iterator[Leg]:
    """Alternating words p[x1,a1]...p[xk,ak] with x_t != x_{t+1} and every a_t != 0.

    Output index 0 is the one eliminated by the row-sum relation.
    """
    _require_easiest(spec)
    letters = [(x, a) for x in range(spec.inputs) for a in range(1, spec.outputs)]
    level: List[Leg] = [()]
    for k in range(max_degree + 1):
        yield from level
        if k == max_degree:
            break
        level = [leg + (l,) for leg in level for l in letters if not leg or leg[-1][0] != l[0]]


def reduced_words(spec: GameSpec, max_degree: int) -> List[int]:
    """Number of free-product basis words in each degree ``0..max_degree``."""
    counts = [0] * (max_degree + 1)
    for leg in free_product_basis(spec, max_degree):
        counts[len(leg)] += 1
    return counts


def basis_expand(e: NCElement, spec: GameSpec) -> NCElement:
    """Coordinates of ``e`` in the free-product basis of an easiest game.

    Every p[x,0] is replaced by 1 - sum_{a>0} p[x,a] and words are re-reduced.
    In the free product this is an exact decision procedure for equality.
    """
    _require_easiest(spec)
    rules = rules_for(spec, "game")
    cache: Dict[Leg, Dict[Leg, Fraction]] = {}

    def expand(leg: Leg) -> Dict[Leg, Fraction]:
        r = rules.reduce_leg(leg)
        if r is None:
            return {}
        if r in cache:
            return cache[r]
        q = next((i for i, (_, a) in enumerate(r) if a == 0), None)
        if q is None:
            out = {r: Fraction(1)}
        else:
            x = r[q][0]
            acc: Dict[Leg, Fraction] = defaultdict(Fraction)
            for k, v in expand(r[:q] + r[q + 1:]).items():
                acc[k] += v
            for a in range(1, spec.outputs):
                for k, v in expand(r[:q] + ((x, a),) + r[q + 1:]).items():
                    acc[k] -= v
            out = {k: v for k, v in acc.items() if v}
        cache[r] = out
        return out

    acc: Dict[Word, Fraction] = defaultdict(Fraction)
    for w, c in e.items():
        parts = [expand(leg) for leg in w]
        for combo in itertools.product(*(p.items() for p in parts)):
            coef = c
            for _, v in combo:
                coef *= v
            acc[tuple(leg for leg, _ in combo)] += coef
    return NCElement(acc, e.legs)
