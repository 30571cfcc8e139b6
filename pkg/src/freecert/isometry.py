"""Per-isometry analysis: translation length, hyperbolicity, axes, overlaps.

Translation lengths are intervals [tr_lower, tr_upper] with an exactness
flag.  On the Cayley-tree models the interval collapses to the exact
cyclically-reduced length; everywhere else the estimator is conservative,
so downstream certificate inequalities can always pick the safe end.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .models import (
    ActionModel,
    CapExceeded,
    CycleModel,
    ExplicitGraphModel,
    FreeGroupModel,
    FreeProductModel,
    ModelError,
    Word,
)

HYPERBOLIC_YES = "yes"
HYPERBOLIC_NO = "no"
HYPERBOLIC_UNKNOWN = "unknown"


@dataclass(frozen=True)
class AxisData:
    path: tuple
    mode: str  # "geodesic-axis" | "quasi-geodesic-axis"
    invariance_defect: int
    quasi_params: Optional[tuple[Fraction, Fraction]] = None  # (K <= 1, eps >= 0)
    step: int = 1  # edges advanced per application; margin for end effects


@dataclass(frozen=True)
class IsometryProfile:
    element: Word
    tr_lower: Fraction
    tr_upper: Fraction
    exact: bool
    hyperbolic: str
    criterion1_power: Optional[int] = None
    axis: Optional[AxisData] = None

    def to_doc(self) -> dict:
        return {
            "element": list(self.element),
            "tr_lower": str(self.tr_lower),
            "tr_upper": str(self.tr_upper),
            "exact": self.exact,
            "hyperbolic": self.hyperbolic,
            "criterion1_power": self.criterion1_power,
            "axis_mode": self.axis.mode if self.axis else None,
        }


@dataclass(frozen=True)
class OverlapReport:
    D: int
    c: int
    window: int
    witness_segment: tuple
    boundary_touching: bool
    unbounded_in_window: bool

    def to_doc(self) -> dict:
        return {
            "D": self.D,
            "c": self.c,
            "window": self.window,
            "witness_segment": [repr(p) for p in self.witness_segment],
            "boundary_touching": self.boundary_touching,
            "unbounded_in_window": self.unbounded_in_window,
        }


def _cyclic_reduce_free(model: FreeGroupModel, g: Word) -> Word:
    w = list(model.canon(g))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def _cyclic_reduce_product(model: FreeProductModel, g: Word) -> Word:
    w = list(model.canon(g))
    while len(w) >= 2:
        first, last = w[0], w[-1]
        cancels = (first == -last) or (first == model.S and last == model.S)
        if not cancels:
            break
        w = list(model.canon(w[1:-1]))
    return tuple(w)


def exact_translation_length(model: ActionModel, g: Word) -> Optional[int]:
    """Exact translation length where the model structure gives one.

    Cayley trees: cyclically-reduced length (0 for torsion).  Finite
    models: every element has bounded orbits, so 0.
    """
    if isinstance(model, FreeGroupModel):
        return len(_cyclic_reduce_free(model, g))
    if isinstance(model, FreeProductModel):
        core = _cyclic_reduce_product(model, g)
        if core == () or core == (model.S,):
            return 0
        return len(core)
    if isinstance(model, (CycleModel, ExplicitGraphModel)):
        return 0
    return None


def translation_length(model: ActionModel, g: Word, depth: int = 12):
    """Translation length interval (tr_lower, tr_upper, exact).

    Generic bounds: tr_upper = min_n d(x, g^n x)/n (subadditivity);
    tr_lower = max_n (d(x, g^2n x) - d(x, g^n x))/n, floored at 0.
    """
    if depth < 1:
        raise ModelError("depth must be >= 1")
    g = model.canon(g)
    exact = exact_translation_length(model, g)
    if exact is not None:
        v = Fraction(exact)
        return v, v, True

    bases = [model.basepoint()]
    bases.extend(model.ball(model.basepoint(), 2)[1:4])
    lower = Fraction(0)
    upper: Optional[Fraction] = None
    for x in bases:
        disp = {}
        p = x
        gx = model.canon(g)
        for n in range(1, 2 * depth + 1):
            p = model.apply(gx, p)
            disp[n] = model.distance(x, p)
        for n in range(1, depth + 1):
            u = Fraction(disp[n], n)
            upper = u if upper is None else min(upper, u)
            lo = Fraction(disp[2 * n] - disp[n], n)
            if lo > lower:
                lower = lo
    assert upper is not None
    if lower > upper:
        lower = upper
    return lower, upper, False


def classify(model: ActionModel, g: Word, delta: int, power_cap: int = 128) -> IsometryProfile:
    """Hyperbolicity verdict for g, with the displacement-criterion power.

    Records the least n <= power_cap at which some sampled p satisfies
    |p - g^n p| <= |g^n p - g^-n p| - 100(delta+1).  ``unknown`` is a
    legitimate outcome: the criterion is sufficient, not complete.
    """
    if power_cap < 1:
        raise ModelError("power_cap must be >= 1")
    g = model.canon(g)
    tr_lower, tr_upper, exact = translation_length(model, g)

    sample = [model.basepoint()] + model.ball(model.basepoint(), 1)[1:3]
    criterion1_power = None
    finite_order = model.is_identity(g)
    margin = 100 * (delta + 1)
    fwd = ()
    for n in range(1, power_cap + 1):
        fwd = model.compose(fwd, g)
        if model.is_identity(fwd):
            finite_order = True
            break
        bwd = model.inverse(fwd)
        if criterion1_power is None:
            overflowed = 0
            for p in sample:
                try:
                    fp, bp = model.apply(fwd, p), model.apply(bwd, p)
                except CapExceeded:
                    overflowed += 1
                    continue
                if model.distance(p, fp) <= model.distance(fp, bp) - margin:
                    criterion1_power = n
                    break
            if overflowed == len(sample):
                break  # points can no longer be expanded; the search is over
        if criterion1_power is not None and not exact:
            break
        if criterion1_power is not None and exact:
            break

    if finite_order:
        verdict = HYPERBOLIC_NO
    elif (exact and tr_lower > 0) or criterion1_power is not None or tr_lower > 0:
        verdict = HYPERBOLIC_YES
    elif exact and tr_lower == 0:
        verdict = HYPERBOLIC_NO
    elif any(model.apply(g, p) == p for p in sample):
        verdict = HYPERBOLIC_NO
    else:
        verdict = HYPERBOLIC_UNKNOWN

    if verdict == HYPERBOLIC_NO:
        criterion1_power = None
    return IsometryProfile(g, tr_lower, tr_upper, exact, verdict, criterion1_power)


def _min_displacement_point(model: ActionModel, g: Word, search_radius: int = 8):
    # Cayley trees: writing g = u c u^-1 with c cyclically reduced, every
    # axis point has u as a prefix, so u is the canonical minimum directly.
    if isinstance(model, FreeGroupModel):
        w = list(model.canon(g))
        u: list[int] = []
        while len(w) >= 2 and w[0] == -w[-1]:
            u.append(w[0])
            w = w[1:-1]
        return tuple(u)
    if isinstance(model, FreeProductModel):
        w = list(model.canon(g))
        u = []
        while len(w) >= 2:
            first, last = w[0], w[-1]
            if not (first == -last or (first == model.S and last == model.S)):
                break
            u.append(first)
            w = list(model.canon(w[1:-1]))
        return model.canon(u)
    best = None
    best_key = None
    for p in model.ball(model.basepoint(), search_radius):
        key = (model.distance(p, model.apply(g, p)), model.point_key(p))
        if best_key is None or key < best_key:
            best_key, best = key, p
    return best


def _dist_to_path(model: ActionModel, p, path) -> int:
    return min(model.distance(p, q) for q in path)


def quasi_axis(model: ActionModel, g: Word, window: int = 8, delta: int = 0, search_radius: int = 8) -> AxisData:
    """Invariant (quasi-)axis of a hyperbolic isometry on a window.

    Concatenates geodesics between consecutive orbit points of a
    minimal-displacement base point p*; classifies the result as a genuine
    geodesic axis when the concatenation is a geodesic with invariance
    defect <= 2*delta, otherwise verifies the quasi-geodesic-axis
    properties on the window and records fitted quasi-geodesic constants.
    """
    profile = classify(model, g, delta)
    if profile.hyperbolic != HYPERBOLIC_YES:
        raise ModelError("quasi_axis requires a hyperbolic element")
    g = model.canon(g)
    pstar = _min_displacement_point(model, g, search_radius)
    step = model.distance(pstar, model.apply(g, pstar))

    orbit = [model.apply(model.power(g, k), pstar) for k in range(-window, window + 1)]
    path: list = []
    for u, v in zip(orbit, orbit[1:]):
        seg = model.geodesic(u, v)
        path.extend(seg if not path else seg[1:])
    if not path:
        path = [pstar]
    path_t = tuple(path)

    # Invariance defect, excluding a margin of one translation step at the ends.
    margin = max(step, 1)
    interior = path[margin:-margin] if len(path) > 2 * margin else path
    defect = 0
    for p in interior:
        d = _dist_to_path(model, model.apply(g, p), path)
        if d > defect:
            defect = d

    is_geodesic = len(path) - 1 == model.distance(path[0], path[-1])
    if is_geodesic and defect <= 2 * delta:
        return AxisData(path_t, "geodesic-axis", defect, None, step)

    # Fact-12 style checks on the window: bounded defect and subpaths
    # 10*delta-close to the geodesics between their endpoints.
    if defect > 30 * delta:
        raise ModelError("path fails quasi-geodesic-axis invariance on the window")
    stride = max(1, len(path) // 24)
    eps = Fraction(0)
    for i in range(0, len(path), stride):
        for j in range(i + 2, len(path), stride):
            sub = path[i : j + 1]
            geo = model.geodesic(path[i], path[j])
            hd = max(
                max(_dist_to_path(model, p, geo) for p in sub),
                max(_dist_to_path(model, q, sub) for q in geo),
            )
            if hd > 10 * delta:
                raise ModelError("subpath strays beyond 10*delta of its chord")
            slack = Fraction(j - i - model.distance(path[i], path[j]))
            if slack > eps:
                eps = slack
    return AxisData(path_t, "quasi-geodesic-axis", defect, (Fraction(1), eps), step)


def overlap_diameter(model: ActionModel, axis_a: AxisData, axis_b: AxisData, c: int, window: Optional[int] = None) -> OverlapReport:
    """Diameter of the c-overlap of two axes, within their windows.

    The overlap set is (A in the c-neighborhood of B) union (B in the
    c-neighborhood of A); the empty set has diameter 0 by convention.
    Touching a window end makes D only a lower bound, and touching both
    ends of one axis flags the overlap as unbounded in the window.
    """
    pa, pb = list(axis_a.path), list(axis_b.path)
    if window is None:
        window = min(len(pa), len(pb)) - 1

    in_a = [p for p in pa if _dist_to_path(model, p, pb) <= c]
    in_b = [p for p in pb if _dist_to_path(model, p, pa) <= c]
    union: list = []
    seen = set()
    for p in in_a + in_b:
        if p not in seen:
            seen.add(p)
            union.append(p)

    if not union:
        return OverlapReport(0, c, window, (), False, False)

    best = (0, union[0], union[0])
    for i, p in enumerate(union):
        for q in union[i + 1 :]:
            d = model.distance(p, q)
            if d > best[0]:
                best = (d, p, q)
    D = best[0]
    witness = tuple(model.geodesic(best[1], best[2]))

    def touches(points, path, step):
        m = max(step, 1)
        head, tail = set(path[:m]), set(path[-m:])
        return any(p in head for p in points), any(p in tail for p in points)

    a_head, a_tail = touches(in_a, pa, axis_a.step)
    b_head, b_tail = touches(in_b, pb, axis_b.step)
    boundary = a_head or a_tail or b_head or b_tail
    unbounded = (a_head and a_tail) or (b_head and b_tail)
    return OverlapReport(D, c, window, witness, boundary, unbounded)


def independence_test(model: ActionModel, a: Word, b: Word, exponent_bound: int):
    """Search for commuting power pairs [a^p, b^q] = 1 with |p|,|q| <= bound.

    Returns ("dependent", (p, q)) on the first trivially-acting commutator
    (smallest |p|+|q|, positive signs first) or ("independent-to-bound", None).
    """
    if exponent_bound < 1:
        raise ModelError("exponent_bound must be >= 1")
    a, b = model.canon(a), model.canon(b)
    pairs = sorted(
        ((p, q) for p in range(1, exponent_bound + 1) for q in range(1, exponent_bound + 1)),
        key=lambda t: (t[0] + t[1], t),
    )
    for p, q in pairs:
        for sp in (1, -1):
            for sq in (1, -1):
                ap = model.power(a, sp * p)
                bq = model.power(b, sq * q)
                comm = model.compose(model.inverse(ap), model.inverse(bq), ap, bq)
                if model.is_identity(comm):
                    return "dependent", (sp * p, sq * q)
    return "independent-to-bound", None
