"""Action models: point spaces with exact integer metrics and isometric group actions.

Every other module operates on an :class:`ActionModel`.  Four desk-scale
families are built in:

* ``free-group`` -- the free group of rank k acting on its Cayley tree,
* ``free-product`` -- Z * Z/2 acting on its (tree) Cayley graph,
* ``cycle`` -- the cyclic rotation group acting on the n-cycle,
* ``explicit-graph`` -- a finite graph with a finite automorphism group
  generated by user-supplied vertex permutations.

Group elements and Cayley points are words: tuples of signed 1-based
generator indices, always stored in canonical form.  All distances are
exact integers; there is no floating point anywhere in this module.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator, Optional, Sequence

Word = tuple[int, ...]
IDENTITY: Word = ()


class ModelError(Exception):
    """Malformed model spec or invalid input to a model operation."""


class CapExceeded(ModelError):
    """A lazy model was asked to expand beyond its configured radius cap.

    Raised instead of silently truncating: infinite graphs must fail loudly.
    """


def free_reduce(letters: Iterable[int]) -> Word:
    """Freely reduce a word (cancel adjacent x·x^-1 pairs)."""
    out: list[int] = []
    for l in letters:
        if l == 0:
            raise ModelError("zero is not a generator letter")
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


def parse_letters(text: str, names: Sequence[str]) -> Word:
    """Parse a human-typed element word.

    Lowercase letters are generators, uppercase or a trailing apostrophe
    marks an inverse: ``"abA"`` and ``"aba'"`` both mean a·b·a^-1.
    """
    index = {name: i + 1 for i, name in enumerate(names)}
    raw: list[int] = []
    i = 0
    while i < len(text):
        ch = text[i]
        lower = ch.lower()
        if lower not in index:
            raise ModelError(f"unknown generator letter {ch!r} (model has {list(names)})")
        sign = -1 if ch.isupper() else 1
        if i + 1 < len(text) and text[i + 1] == "'":
            sign = -sign
            i += 1
        raw.append(sign * index[lower])
        i += 1
    return tuple(raw)


class ActionModel:
    """A point space with exact distance and an isometric group action.

    Immutable after construction; all operations are pure.  Subclasses
    must provide canonical forms for group elements, the action, the
    vertex metric, and neighbor enumeration in a fixed total order
    (generator index, then sign) so BFS-based geodesics are deterministic.
    """

    kind: str = "abstract"
    is_tree = False
    known_delta: Optional[int] = None
    generator_names: tuple[str, ...] = ()

    # -- group structure ------------------------------------------------

    def canon(self, word: Iterable[int]) -> Word:
        raise NotImplementedError

    def inverse(self, g: Word) -> Word:
        return self.canon(-l for l in reversed(g))

    def compose(self, *elements: Iterable[int]) -> Word:
        out: list[int] = []
        for e in elements:
            out.extend(e)
        return self.canon(out)

    def power(self, g: Word, n: int) -> Word:
        if n < 0:
            return self.power(self.inverse(g), -n)
        result: Word = IDENTITY
        base = self.canon(g)
        while n:
            if n & 1:
                result = self.compose(result, base)
            base = self.compose(base, base)
            n >>= 1
        return result

    def is_identity(self, g: Word) -> bool:
        return self.canon(g) == IDENTITY

    def generators(self) -> list[Word]:
        raise NotImplementedError

    def group_ball(self, radius: int) -> list[Word]:
        """All distinct group elements expressible as products of at most
        ``radius`` generators, in breadth-first canonical order."""
        gens: list[Word] = []
        for g in self.generators():
            gens.append(g)
            inv = self.inverse(g)
            if inv not in gens:
                gens.append(inv)
        seen = {IDENTITY}
        order = [IDENTITY]
        frontier = [IDENTITY]
        for _ in range(radius):
            nxt = []
            for w in frontier:
                for s in gens:
                    ws = self.compose(w, s)
                    if ws not in seen:
                        seen.add(ws)
                        order.append(ws)
                        nxt.append(ws)
            frontier = nxt
        return order

    # -- action and metric ----------------------------------------------

    def apply(self, g: Word, x):
        raise NotImplementedError

    def distance(self, x, y) -> int:
        raise NotImplementedError

    def neighbors(self, x) -> list:
        raise NotImplementedError

    def basepoint(self):
        raise NotImplementedError

    def point_key(self, x):
        """Total order on points, used for deterministic tie-breaks."""
        raise NotImplementedError

    def ball(self, center, r: int) -> list:
        """Points at distance <= r from center, in BFS (canonical) order."""
        if r < 0:
            raise ModelError("ball radius must be >= 0")
        seen = {center}
        order = [center]
        frontier = [center]
        for _ in range(r):
            nxt = []
            for p in frontier:
                for q in self.neighbors(p):
                    if q not in seen:
                        seen.add(q)
                        order.append(q)
                        nxt.append(q)
            frontier = nxt
        return order

    def geodesic(self, x, y) -> list:
        """One canonical geodesic from x to y (BFS, fixed neighbor order)."""
        if x == y:
            return [x]
        parent = {x: None}
        frontier = deque([x])
        while frontier:
            p = frontier.popleft()
            for q in self.neighbors(p):
                if q not in parent:
                    parent[q] = p
                    if q == y:
                        path = [y]
                        while parent[path[-1]] is not None:
                            path.append(parent[path[-1]])
                        path.reverse()
                        return path
                    frontier.append(q)
        raise ModelError("points lie in different components")

    def spec_dict(self) -> dict:
        raise NotImplementedError


class _CayleyModel(ActionModel):
    """Shared machinery for lazy Cayley-type models (points are words)."""

    def __init__(self, cap: int = 64):
        if cap < 1:
            raise ModelError("cap must be >= 1")
        self.cap = cap

    def _check_cap(self, w: Word) -> Word:
        if len(w) > self.cap:
            raise CapExceeded(f"word length {len(w)} exceeds expansion cap {self.cap}")
        return w

    def apply(self, g: Word, x: Word) -> Word:
        return self._check_cap(self.compose(g, x))

    def distance(self, x: Word, y: Word) -> int:
        return len(self.compose(self.inverse(x), y))

    def basepoint(self) -> Word:
        return IDENTITY

    def point_key(self, x: Word):
        return (len(x), x)


class FreeGroupModel(_CayleyModel):
    """Free group of rank k on its 2k-regular Cayley tree."""

    kind = "free-group"
    is_tree = True
    known_delta = 0

    def __init__(self, rank: int = 2, cap: int = 64):
        super().__init__(cap)
        if rank < 1:
            raise ModelError("rank must be >= 1")
        self.rank = rank
        self.generator_names = tuple(chr(ord("a") + i) for i in range(rank))

    def canon(self, word: Iterable[int]) -> Word:
        w = free_reduce(word)
        for l in w:
            if abs(l) > self.rank:
                raise ModelError(f"letter {l} out of range for rank {self.rank}")
        return w

    def generators(self) -> list[Word]:
        return [(i,) for i in range(1, self.rank + 1)]

    def neighbors(self, x: Word) -> list[Word]:
        out = []
        for i in range(1, self.rank + 1):
            for l in (i, -i):
                if x and x[-1] == -l:
                    out.append(x[:-1])
                else:
                    out.append(self._check_cap(x + (l,)))
        return out

    def distance(self, x: Word, y: Word) -> int:
        k = 0
        while k < len(x) and k < len(y) and x[k] == y[k]:
            k += 1
        return len(x) + len(y) - 2 * k

    def geodesic(self, x: Word, y: Word) -> list[Word]:
        # Unique in a tree: back up to the longest common prefix, then descend.
        k = 0
        while k < len(x) and k < len(y) and x[k] == y[k]:
            k += 1
        path = [x[:j] for j in range(len(x), k - 1, -1)]
        path.extend(y[:j] for j in range(k + 1, len(y) + 1))
        return path

    def spec_dict(self) -> dict:
        return {"kind": self.kind, "rank": self.rank, "cap": self.cap}


class FreeProductModel(_CayleyModel):
    """Z * Z/2 = <f> * <s | s^2> on its Cayley graph, which is a tree.

    Canonical form is the alternating normal form: adjacent f-letters never
    cancel, s is its own inverse, and s·s collapses.  Triviality testing is
    therefore exact, which is what the torsion-pair scenarios need.
    """

    kind = "free-product"
    is_tree = True
    known_delta = 0
    F, S = 1, 2

    def __init__(self, cap: int = 64):
        super().__init__(cap)
        self.generator_names = ("f", "s")

    def canon(self, word: Iterable[int]) -> Word:
        out: list[int] = []
        for l in word:
            if abs(l) == self.S:
                l = self.S  # s = s^-1
            elif abs(l) != self.F:
                raise ModelError(f"letter {l} not in the Z * Z/2 alphabet")
            if out and (out[-1] == -l or (out[-1] == self.S and l == self.S)):
                out.pop()
            else:
                out.append(l)
        return tuple(out)

    def generators(self) -> list[Word]:
        return [(self.F,), (self.S,)]

    def neighbors(self, x: Word) -> list[Word]:
        out = []
        for l in (self.F, -self.F, self.S):
            q = self._check_cap(self.canon(x + (l,)))
            if q not in out:
                out.append(q)
        return out

    def geodesic(self, x: Word, y: Word) -> list[Word]:
        k = 0
        while k < len(x) and k < len(y) and x[k] == y[k]:
            k += 1
        path = [x[:j] for j in range(len(x), k - 1, -1)]
        path.extend(y[:j] for j in range(k + 1, len(y) + 1))
        return path

    def distance(self, x: Word, y: Word) -> int:
        k = 0
        while k < len(x) and k < len(y) and x[k] == y[k]:
            k += 1
        return len(x) + len(y) - 2 * k

    def spec_dict(self) -> dict:
        return {"kind": self.kind, "cap": self.cap}


class CycleModel(ActionModel):
    """The n-cycle with its rotation group; points are vertex indices."""

    kind = "cycle"
    generator_names = ("r",)

    def __init__(self, n: int):
        if n < 3:
            raise ModelError("cycle needs n >= 3")
        self.n = n

    def canon(self, word: Iterable[int]) -> Word:
        e = 0
        for l in word:
            if abs(l) != 1:
                raise ModelError("cycle model has a single rotation generator")
            e += 1 if l > 0 else -1
        return (1,) * (e % self.n)

    def generators(self) -> list[Word]:
        return [(1,)]

    def group_ball(self, radius: int) -> list[Word]:
        return [self.canon((1,) * e) for e in range(self.n)]

    def apply(self, g: Word, x: int) -> int:
        return (x + len(self.canon(g))) % self.n

    def distance(self, x: int, y: int) -> int:
        d = abs(x - y) % self.n
        return min(d, self.n - d)

    def neighbors(self, x: int) -> list[int]:
        return [(x + 1) % self.n, (x - 1) % self.n]

    def basepoint(self) -> int:
        return 0

    def point_key(self, x: int):
        return x

    def ball(self, center: int, r: int) -> list[int]:
        return super().ball(center, min(r, self.n))

    def spec_dict(self) -> dict:
        return {"kind": self.kind, "n": self.n}


class ExplicitGraphModel(ActionModel):
    """A finite graph acted on by the group generated by given automorphisms.

    The full group is enumerated up front (it is a subgroup of Sym(V)), and
    each element's canonical form is the shortest, lexicographically least
    word over the generator alphabet producing its permutation.
    """

    kind = "explicit-graph"

    def __init__(self, adjacency: Sequence[Sequence[int]], generator_perms: Sequence[Sequence[int]] = ()):
        n = len(adjacency)
        adj = [sorted(set(row)) for row in adjacency]
        for v, row in enumerate(adj):
            for u in row:
                if not 0 <= u < n:
                    raise ModelError(f"vertex {u} out of range")
                if u == v:
                    raise ModelError("self-loops not allowed")
                if v not in adj[u]:
                    raise ModelError("adjacency is not symmetric")
        self.n = n
        self.adj = adj
        edges = {(v, u) for v, row in enumerate(adj) for u in row}

        perms = [tuple(p) for p in generator_perms]
        for p in perms:
            if sorted(p) != list(range(n)):
                raise ModelError("generator is not a permutation of the vertex set")
            if any((p[v], p[u]) not in edges for v, u in edges):
                raise ModelError("generator does not extend to a graph automorphism")
        self._perms = perms
        self.generator_names = tuple(chr(ord("a") + i) for i in range(len(perms)))
        self._canon_by_perm = self._enumerate_group()
        self._dist = self._all_pairs_distances()

    def _enumerate_group(self) -> dict[tuple[int, ...], Word]:
        identity = tuple(range(self.n))
        gens: list[tuple[int, Word]] = []
        for i, p in enumerate(self._perms, start=1):
            inv = tuple(sorted(range(self.n), key=lambda v: p[v]))
            gens.append((i, p))
            gens.append((-i, inv))
        table = {identity: IDENTITY}
        frontier = [identity]
        while frontier:
            nxt = []
            for perm in frontier:
                base = table[perm]
                for letter, g in sorted(gens, key=lambda t: (abs(t[0]), t[0] < 0)):
                    comp = tuple(g[perm[v]] for v in range(self.n))
                    if comp not in table:
                        table[comp] = base + (letter,)
                        nxt.append(comp)
            frontier = nxt
        return table

    def _all_pairs_distances(self) -> list[list[int]]:
        INF = -1
        table = []
        for src in range(self.n):
            dist = [INF] * self.n
            dist[src] = 0
            q = deque([src])
            while q:
                v = q.popleft()
                for u in self.adj[v]:
                    if dist[u] == INF:
                        dist[u] = dist[v] + 1
                        q.append(u)
            table.append(dist)
        return table

    def _perm_of(self, word: Iterable[int]) -> tuple[int, ...]:
        perm = list(range(self.n))
        for l in word:
            if not 1 <= abs(l) <= len(self._perms):
                raise ModelError(f"letter {l} out of range")
            p = self._perms[abs(l) - 1]
            if l > 0:
                perm = [p[v] for v in perm]
            else:
                inv = sorted(range(self.n), key=lambda v: p[v])
                perm = [inv[v] for v in perm]
        return tuple(perm)

    def canon(self, word: Iterable[int]) -> Word:
        return self._canon_by_perm[self._perm_of(word)]

    def generators(self) -> list[Word]:
        return [self.canon((i,)) for i in range(1, len(self._perms) + 1)]

    def group_ball(self, radius: int) -> list[Word]:
        elems = sorted(self._canon_by_perm.values(), key=lambda w: (len(w), w))
        return [w for w in elems if len(w) <= radius]

    def apply(self, g: Word, x: int) -> int:
        return self._perm_of(g)[x]

    def distance(self, x: int, y: int) -> int:
        if not (0 <= x < self.n and 0 <= y < self.n):
            raise ModelError("point outside the vertex set")
        d = self._dist[x][y]
        if d < 0:
            raise ModelError("points lie in different components")
        return d

    def neighbors(self, x: int) -> list[int]:
        return self.adj[x]

    def basepoint(self) -> int:
        return 0

    def point_key(self, x: int):
        return x

    def spec_dict(self) -> dict:
        return {
            "kind": self.kind,
            "adjacency": [list(row) for row in self.adj],
            "generators": [list(p) for p in self._perms],
        }


def build_model(spec: dict) -> ActionModel:
    """Build and validate a model from a spec document.

    Spec fields: ``kind`` plus ``rank`` (free-group), ``n`` (cycle),
    ``adjacency`` and ``generators`` (explicit-graph), and optional ``cap``
    for the lazy Cayley models.
    """
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ModelError("model spec must be a mapping with a 'kind' field")
    kind = spec["kind"]
    cap = spec.get("cap", 64)
    if kind == "free-group":
        model: ActionModel = FreeGroupModel(rank=spec.get("rank", 2), cap=cap)
    elif kind == "free-product":
        model = FreeProductModel(cap=cap)
    elif kind == "cycle":
        model = CycleModel(n=spec.get("n", 0))
    elif kind == "explicit-graph":
        model = ExplicitGraphModel(spec.get("adjacency", []), spec.get("generators", []))
    else:
        raise ModelError(f"unsupported model kind {kind!r}")
    _validate_isometries(model)
    return model


def _validate_isometries(model: ActionModel, radius: int = 3, pairs: int = 40) -> None:
    # Spot-check d(gx, gy) = d(x, y) for every generator on a sample ball.
    sample = model.ball(model.basepoint(), radius)
    step = max(1, len(sample) // pairs)
    probe = sample[::step]
    for g in model.generators():
        for i, x in enumerate(probe):
            y = probe[(i * 7 + 3) % len(probe)]
            if model.distance(model.apply(g, x), model.apply(g, y)) != model.distance(x, y):
                raise ModelError("generator does not act as an isometry")


def reduced_words(rank: int, max_len: int) -> Iterator[Word]:
    """All freely reduced words of length <= max_len over rank generators,
    in length-then-lexicographic order (letter order: 1, -1, 2, -2, ...)."""
    if rank < 1 or max_len < 0:
        raise ModelError("rank >= 1 and max_len >= 0 required")
    alphabet = [l for i in range(1, rank + 1) for l in (i, -i)]

    def extend(prefix: Word, remaining: int) -> Iterator[Word]:
        if remaining == 0:
            yield prefix
            return
        for l in alphabet:
            if prefix and prefix[-1] == -l:
                continue
            yield from extend(prefix + (l,), remaining - 1)

    for length in range(max_len + 1):
        yield from extend(IDENTITY, length)
