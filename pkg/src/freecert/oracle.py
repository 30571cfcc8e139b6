"""Brute-force verification side: reduced-word enumeration, triviality,
embedding quality, and exponent-grid sweeps.

This module is deliberately independent of the certifier's formulas: it
only ever evaluates words through the model's exact canonical forms (or,
as a fallback, their action on a verification ball), so it can confirm or
refute certificates without sharing their reasoning.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .models import ActionModel, ModelError, Word, reduced_words

enumerate_reduced_words = reduced_words


@dataclass(frozen=True)
class OracleReport:
    depth: int
    verdict: str  # "free-to-depth" | "relation-found"
    relation: Optional[Word]
    min_displacement_ratio: Optional[Fraction]
    fitted_L: Optional[Fraction]
    fitted_C: Fraction = Fraction(0)

    def to_doc(self) -> dict:
        return {
            "depth": self.depth,
            "verdict": self.verdict,
            "relation": list(self.relation) if self.relation else None,
            "min_displacement_ratio": str(self.min_displacement_ratio)
            if self.min_displacement_ratio is not None
            else None,
            "fitted_L": str(self.fitted_L) if self.fitted_L is not None else None,
            "fitted_C": str(self.fitted_C),
        }


@dataclass
class SweepTable:
    cells: dict  # (n, m) -> verdict string
    witnesses: dict  # (n, m) -> relation word
    exceptional_pairs: list

    def rows(self) -> list[dict]:
        out = []
        for (n, m) in sorted(self.cells, key=lambda t: (t[0] + t[1], t)):
            out.append(
                {
                    "n": n,
                    "m": m,
                    "verdict": self.cells[(n, m)],
                    "witness": list(self.witnesses.get((n, m), ())) or None,
                }
            )
        return out

    def to_doc(self) -> dict:
        return {"rows": self.rows(), "exceptional_pairs": [list(p) for p in self.exceptional_pairs]}


def _evaluate(model: ActionModel, word: Word, a: Word, b: Word) -> Word:
    subs = {1: a, -1: model.inverse(a), 2: b, -2: model.inverse(b)}
    out: Word = ()
    for l in word:
        out = model.compose(out, subs[l])
    return out


def is_trivial(model: ActionModel, word: Word, a: Word, b: Word, verify_radius: Optional[int] = None) -> bool:
    """Whether ``word`` with a, b substituted acts trivially.

    Canonical forms are exact on every built-in model; the ball-action
    fallback exists for models without a total canonical form and uses a
    radius large enough that distinct elements cannot agree on the ball.
    """
    g = _evaluate(model, word, a, b)
    if verify_radius is None:
        return model.is_identity(g)
    for p in model.ball(model.basepoint(), verify_radius):
        if model.apply(g, p) != p:
            return False
    return True


def freeness_to_depth(model: ActionModel, a: Word, b: Word, depth: int, base=None) -> OracleReport:
    """Check every reduced word in (a, b) up to ``depth`` for relations.

    Free-to-depth means all words act nontrivially *and* pairwise
    distinctly.  Words are visited in length-then-lex order and the first
    failure is reported: either a trivially-acting word itself, or the
    quotient w1 * w2^-1 of the first evaluation collision (which can be
    longer than the depth at which it was detected).  Displacements of the
    base point are folded into the embedding stats.
    """
    if depth < 1:
        raise ModelError("depth must be >= 1")
    a, b = model.canon(a), model.canon(b)
    if base is None:
        base = model.basepoint()

    inv = {1: model.inverse(a), 2: model.inverse(b)}
    letters = {1: a, -1: inv[1], 2: b, -2: inv[2]}

    seen: dict[Word, Word] = {(): ()}
    min_ratio: Optional[Fraction] = None
    max_ratio: Optional[Fraction] = None

    # Depth-first in letter order (1, -1, 2, -2), length-increasing per level
    # via iterative deepening so the first relation found is the
    # lexicographically least at the minimal length.
    for target in range(1, depth + 1):

        def walk(word: Word, value: Word) -> Optional[Word]:
            nonlocal min_ratio, max_ratio
            if len(word) == target:
                if model.is_identity(value):
                    return word
                prev = seen.get(value)
                if prev is not None and prev != word:
                    # Two distinct words evaluate to the same element.
                    return model_free_quotient(prev, word)
                seen.setdefault(value, word)
                r = Fraction(model.distance(base, model.apply(value, base)), len(word))
                min_ratio = r if min_ratio is None else min(min_ratio, r)
                max_ratio = r if max_ratio is None else max(max_ratio, r)
                return None
            for l in (1, -1, 2, -2):
                if word and word[-1] == -l:
                    continue
                rel = walk(word + (l,), model.compose(value, letters[l]))
                if rel is not None:
                    return rel
            return None

        rel = walk((), ())
        if rel is not None:
            return OracleReport(target, "relation-found", rel, min_ratio, _fit_L(min_ratio, max_ratio))
    return OracleReport(depth, "free-to-depth", None, min_ratio, _fit_L(min_ratio, max_ratio))


def model_free_quotient(w1: Word, w2: Word) -> Word:
    """Reduced word for w1 * w2^-1 (a relation when both act identically)."""
    out = list(w1)
    for l in reversed(w2):
        if out and out[-1] == l:
            out.pop()
        else:
            out.append(-l)
    return tuple(out)


def _fit_L(min_ratio: Optional[Fraction], max_ratio: Optional[Fraction]) -> Optional[Fraction]:
    if min_ratio is None or max_ratio is None or min_ratio == 0:
        return None
    return max(max_ratio, 1 / min_ratio, Fraction(1))


def embedding_fit(
    model: ActionModel,
    a: Word,
    b: Word,
    base,
    depth: int,
    predicted_L: Fraction,
) -> tuple[OracleReport, bool]:
    """Measure orbit displacements against a predicted embedding constant.

    Returns the oracle report plus whether min |w(base) - base| / |w| is at
    least ``predicted_L`` (with additive constant 0 at the chosen base).
    """
    if model.is_identity(a) or model.is_identity(b):
        raise ModelError("embedding_fit requires two nontrivial elements")
    report = freeness_to_depth(model, a, b, depth, base=base)
    ok = report.min_displacement_ratio is not None and report.min_displacement_ratio >= predicted_L
    return report, ok


def exceptional_sweep(
    model: ActionModel,
    a: Word,
    b: Word,
    n_range: range,
    m_range: range,
    depth: int,
    certified: Optional[Callable[[int, int], bool]] = None,
) -> SweepTable:
    """Grid sweep of (a^n, b^m) pairs, small n+m first.

    Each cell records the certifier verdict (via the ``certified``
    predicate, when given) and the oracle verdict.  A cell that is both
    certified and relation-found is a hard failure.
    """
    if depth < 2:
        raise ModelError("depth must be >= 2")
    cells: dict = {}
    witnesses: dict = {}
    exceptional = []
    for n, m in sorted(((n, m) for n in n_range for m in m_range), key=lambda t: (t[0] + t[1], t)):
        an, bm = model.power(a, n), model.power(b, m)
        try:
            report = freeness_to_depth(model, an, bm, depth)
        except ModelError:
            cells[(n, m)] = "unchecked"
            continue
        if report.verdict == "relation-found":
            if certified is not None and certified(n, m):
                raise AssertionError(f"certified pair ({n}, {m}) has a relation: {report.relation}")
            cells[(n, m)] = "relation-found"
            witnesses[(n, m)] = report.relation
            exceptional.append((n, m))
        elif certified is not None and certified(n, m):
            cells[(n, m)] = "certified"
        else:
            cells[(n, m)] = "free-to-depth"
    return SweepTable(cells, witnesses, exceptional)
