"""Finite graded posets with a unique bottom and top.

A graded poset of rank n has one element of degree 0 (the bottom), one of
degree n+1 (the top), and cover relations that raise degree by exactly one,
so every maximal chain has n+2 elements.  Face posets of complete fans and
polytope boundaries are the motivating examples: cones of dimension k sit in
degree k and the adjoined top closes the poset off.

Element ids are opaque strings.  Degrees are stored, not inferred, and are
validated against the covers, so non-lattice posets can be written down
directly in JSON.  Instances are immutable after construction and all
queries are pure reads, so posets may be shared freely across workers.
"""

from __future__ import annotations

import itertools
import json
import warnings
from dataclasses import dataclass

BOTTOM = "_bot"
TOP = "_top"


class InvalidPoset(ValueError):
    """The data does not satisfy the graded poset axioms."""


class GradedPoset:
    """Immutable graded poset on string ids.

    Comparability is reachability over the cover relation; it is memoized as
    per-element bitmasks because order queries are hot.  Covers raise degree
    by one, which already forces acyclicity.
    """

    def __init__(self, rank, degrees, covers, check=True):
        self.rank = int(rank)
        ids = sorted(degrees, key=lambda e: (degrees[e], e))
        self._ids = tuple(ids)
        self._index = {e: i for i, e in enumerate(ids)}
        self._deg = tuple(int(degrees[e]) for e in ids)
        try:
            cover_idx = frozenset(
                (self._index[lo], self._index[hi]) for lo, hi in covers
            )
        except KeyError as exc:
            raise InvalidPoset(f"cover mentions unknown element {exc}") from None
        self._cover_pairs = cover_idx
        n = len(ids)
        up = [[] for _ in range(n)]
        down = [[] for _ in range(n)]
        for lo, hi in cover_idx:
            up[lo].append(hi)
            down[hi].append(lo)
        self._cov_up = tuple(tuple(sorted(u)) for u in up)
        self._cov_down = tuple(tuple(sorted(d)) for d in down)
        self._up_masks = None
        self._down_masks = None
        if check:
            self._validate()

    # -- construction helpers -------------------------------------------------

    def _validate(self):
        if self.rank < 0:
            raise InvalidPoset("rank must be >= 0")
        bottoms = [e for e, d in zip(self._ids, self._deg) if d == 0]
        tops = [e for e, d in zip(self._ids, self._deg) if d == self.rank + 1]
        if len(bottoms) != 1:
            raise InvalidPoset(f"need exactly one degree-0 element, got {bottoms}")
        if len(tops) != 1:
            raise InvalidPoset(
                f"need exactly one degree-{self.rank + 1} element, got {tops}"
            )
        for d in self._deg:
            if not 0 <= d <= self.rank + 1:
                raise InvalidPoset(f"degree {d} out of range for rank {self.rank}")
        for lo, hi in self._cover_pairs:
            if self._deg[hi] != self._deg[lo] + 1:
                raise InvalidPoset(
                    f"cover {self._ids[lo]} < {self._ids[hi]} jumps from "
                    f"degree {self._deg[lo]} to {self._deg[hi]}"
                )
        top_i = self._index[tops[0]]
        bot_i = self._index[bottoms[0]]
        for i in range(len(self._ids)):
            if i != top_i and not self._cov_up[i]:
                raise InvalidPoset(f"element {self._ids[i]} has nothing above it")
            if i != bot_i and not self._cov_down[i]:
                raise InvalidPoset(f"element {self._ids[i]} covers nothing")

    # -- basic queries ---------------------------------------------------------

    def __len__(self):
        return len(self._ids)

    def __contains__(self, e):
        return e in self._index

    def elements(self):
        """All element ids, sorted by (degree, id)."""
        return self._ids

    def proper_elements(self):
        """Elements excluding bottom and top."""
        return tuple(e for e, d in zip(self._ids, self._deg) if 0 < d <= self.rank)

    def degree(self, e):
        return self._deg[self._index[e]]

    @property
    def bottom(self):
        return self._ids[0]

    @property
    def top(self):
        return self._ids[-1]

    def elements_of_degree(self, d):
        return tuple(e for e, dd in zip(self._ids, self._deg) if dd == d)

    def covers(self):
        """Cover pairs (low, high) as ids, sorted."""
        return sorted(
            (self._ids[lo], self._ids[hi]) for lo, hi in self._cover_pairs
        )

    def upper_covers(self, e):
        return tuple(self._ids[i] for i in self._cov_up[self._index[e]])

    def lower_covers(self, e):
        return tuple(self._ids[i] for i in self._cov_down[self._index[e]])

    # -- comparability ---------------------------------------------------------

    def _masks(self):
        # down_masks[i] has bit j set iff j <= i; up_masks[i]: bit j iff j >= i
        if self._down_masks is None:
            n = len(self._ids)
            order = sorted(range(n), key=lambda i: self._deg[i])
            down = [0] * n
            for i in order:
                m = 1 << i
                for j in self._cov_down[i]:
                    m |= down[j]
                down[i] = m
            up = [0] * n
            for i in reversed(order):
                m = 1 << i
                for j in self._cov_up[i]:
                    m |= up[j]
                up[i] = m
            self._down_masks = down
            self._up_masks = up
        return self._down_masks, self._up_masks

    def leq(self, x, y):
        """True iff x <= y."""
        down, _ = self._masks()
        return bool(down[self._index[y]] >> self._index[x] & 1)

    def lt(self, x, y):
        return x != y and self.leq(x, y)

    def up_set(self, e):
        """All elements >= e (including e), sorted by (degree, id)."""
        _, up = self._masks()
        return tuple(self._ids[i] for i in _bits(up[self._index[e]]))

    def down_set(self, e):
        """All elements <= e (including e)."""
        down, _ = self._masks()
        return tuple(self._ids[i] for i in _bits(down[self._index[e]]))

    def closed_interval(self, x, y):
        """Elements z with x <= z <= y."""
        down, up = self._masks()
        m = up[self._index[x]] & down[self._index[y]]
        return tuple(self._ids[i] for i in _bits(m))

    def open_interval(self, x, y):
        """Elements z with x < z < y."""
        down, up = self._masks()
        m = up[self._index[x]] & down[self._index[y]]
        m &= ~(1 << self._index[x])
        m &= ~(1 << self._index[y])
        return tuple(self._ids[i] for i in _bits(m))

    # -- serialization ----------------------------------------------------------

    def to_json(self):
        return {
            "rank": self.rank,
            "elements": [
                {"id": e, "deg": d} for e, d in zip(self._ids, self._deg)
            ],
            "covers": [list(p) for p in self.covers()],
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=None, separators=(",", ":"))


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# -- loading -------------------------------------------------------------------


def from_json(data):
    """Build a poset from the JSON dict format.

    Bottom and top may be omitted; they are adjoined with the canonical ids
    "_bot"/"_top" (a warning notice is emitted when this happens).
    """
    rank = data["rank"]
    degrees = {el["id"]: int(el["deg"]) for el in data["elements"]}
    if len(degrees) != len(data["elements"]):
        raise InvalidPoset("duplicate element ids")
    covers = [(lo, hi) for lo, hi in data["covers"]]
    adjoined = []
    if not any(d == 0 for d in degrees.values()):
        if BOTTOM in degrees:
            raise InvalidPoset(f"cannot adjoin bottom: id {BOTTOM!r} taken")
        has_lower = {hi for _, hi in covers}
        minimal = [e for e in degrees if e not in has_lower]
        bad = [e for e in minimal if degrees[e] != 1]
        if bad:
            raise InvalidPoset(f"cannot adjoin bottom below degree != 1: {bad}")
        covers += [(BOTTOM, e) for e in sorted(minimal)]
        degrees[BOTTOM] = 0
        adjoined.append(BOTTOM)
    if not any(d == rank + 1 for d in degrees.values()):
        if TOP in degrees:
            raise InvalidPoset(f"cannot adjoin top: id {TOP!r} taken")
        has_upper = {lo for lo, _ in covers}
        maximal = [e for e in degrees if e not in has_upper]
        bad = [e for e in maximal if degrees[e] != rank]
        if bad:
            raise InvalidPoset(f"cannot adjoin top above degree != {rank}: {bad}")
        covers += [(e, TOP) for e in sorted(maximal)]
        degrees[TOP] = rank + 1
        adjoined.append(TOP)
    if adjoined:
        warnings.warn(
            f"adjoined missing {'/'.join(adjoined)} to poset", stacklevel=2
        )
    return GradedPoset(rank, degrees, covers)


def loads(text):
    return from_json(json.loads(text))


# -- builders -------------------------------------------------------------------


def polygon(k):
    """Complete 2-dimensional fan with k maximal cones (boundary of a k-gon)."""
    if k < 3:
        raise ValueError("polygon needs k >= 3")
    degrees = {BOTTOM: 0, TOP: 3}
    covers = []
    for i in range(1, k + 1):
        degrees[f"r{i}"] = 1
        degrees[f"f{i}"] = 2
        covers.append((BOTTOM, f"r{i}"))
        covers.append((f"f{i}", TOP))
        covers.append((f"r{i}", f"f{i}"))
        covers.append((f"r{i % k + 1}", f"f{i}"))
    return GradedPoset(2, degrees, covers)


def simplex_fan(n):
    """Face poset of the boundary of an n-simplex (all proper subsets of an
    (n+1)-set ordered by inclusion), rank n."""
    if n < 1:
        raise ValueError("simplex_fan needs n >= 1")
    verts = range(1, n + 2)
    degrees = {BOTTOM: 0, TOP: n + 1}
    covers = []
    subsets = []
    for size in range(1, n + 1):
        subsets += [frozenset(s) for s in itertools.combinations(verts, size)]
    name = lambda s: ".".join(str(v) for v in sorted(s))
    for s in subsets:
        degrees[name(s)] = len(s)
        if len(s) == 1:
            covers.append((BOTTOM, name(s)))
        if len(s) == n:
            covers.append((name(s), TOP))
        for v in s:
            if len(s) > 1:
                covers.append((name(s - {v}), name(s)))
    return GradedPoset(n, degrees, covers)


def cube_fan(n):
    """Face poset of the n-cube: proper faces written as words over 0/1/*
    (one letter per axis, * marking free axes), empty face as bottom."""
    if n < 1:
        raise ValueError("cube_fan needs n >= 1")
    degrees = {BOTTOM: 0, TOP: n + 1}
    covers = []
    for word in itertools.product("01*", repeat=n):
        stars = word.count("*")
        if stars == n:
            continue  # the whole cube is the adjoined top
        w = "".join(word)
        degrees[w] = stars + 1
        if stars == 0:
            covers.append((BOTTOM, w))
        if stars == n - 1:
            covers.append((w, TOP))
        for i, ch in enumerate(word):
            if ch == "*" and stars >= 1:
                for fixed in "01":
                    covers.append((w[:i] + fixed + w[i + 1 :], w))
    return GradedPoset(n, degrees, covers)


def crosspoly_fan(n):
    """Face poset of the n-cross-polytope: faces pick a sign for some nonempty
    subset of axes, written as words over +/-/0."""
    if n < 1:
        raise ValueError("crosspoly_fan needs n >= 1")
    degrees = {BOTTOM: 0, TOP: n + 1}
    covers = []
    for word in itertools.product("+-0", repeat=n):
        size = n - word.count("0")
        if size == 0:
            continue
        w = "".join(word)
        degrees[w] = size
        if size == 1:
            covers.append((BOTTOM, w))
        if size == n:
            covers.append((w, TOP))
        for i, ch in enumerate(word):
            if ch != "0" and size >= 2:
                covers.append((w[:i] + "0" + w[i + 1 :], w))
    return GradedPoset(n, degrees, covers)


def chain(r):
    """Single maximal chain of rank r; non-Eulerian for r >= 1 (negative
    control)."""
    if r < 0:
        raise ValueError("chain needs r >= 0")
    degrees = {BOTTOM: 0, TOP: r + 1}
    covers = []
    prev = BOTTOM
    for i in range(1, r + 1):
        degrees[f"x{i}"] = i
        covers.append((prev, f"x{i}"))
        prev = f"x{i}"
    covers.append((prev, TOP))
    return GradedPoset(r, degrees, covers)


_FAMILIES = {
    "polygon": polygon,
    "simplex_fan": simplex_fan,
    "cube_fan": cube_fan,
    "crosspoly_fan": crosspoly_fan,
    "chain": chain,
}


def build_family(kind, param):
    """Dispatch to the named builder; raises ValueError on bad kind/param."""
    try:
        builder = _FAMILIES[kind]
    except KeyError:
        raise ValueError(f"unknown family {kind!r}") from None
    return builder(param)


def build_pyramid(base):
    """Face poset of the pyramid over a polytope boundary poset.

    The base's top element is kept as the base facet (degree rank+1), every
    base element f gets an apex companion "a:{f}" one degree up, and a fresh
    top closes the poset.  Degree counts over polygon(k) come out as
    (1, k+1, 2k, k+1, 1).
    """
    if base.rank < 1:
        raise ValueError("pyramid base must have rank >= 1")
    n = base.rank
    degrees = {}
    covers = []
    base_top = base.top
    rename = {e: (BOTTOM if e == base.bottom else f"b:{e}") for e in base.elements()}
    for e in base.elements():
        degrees[rename[e]] = base.degree(e)
    for lo, hi in base.covers():
        covers.append((rename[lo], rename[hi]))
    apex = {e: f"a:{e}" for e in base.elements() if e != base_top}
    for e, ae in apex.items():
        degrees[ae] = base.degree(e) + 1
        covers.append((rename[e], ae))
    for lo, hi in base.covers():
        if hi != base_top:
            covers.append((apex[lo], apex[hi]))
    degrees[TOP] = n + 2
    covers.append((rename[base_top], TOP))
    for e in base.elements_of_degree(n):
        covers.append((apex[e], TOP))
    return GradedPoset(n + 1, degrees, covers)


# -- subposets --------------------------------------------------------------------


@dataclass(frozen=True)
class ElementSubposet:
    """An induced subposet of a parent, re-closed into a graded poset.

    ``members`` are the retained parent ids; ``poset`` is the induced graded
    poset (None when members is empty).  Member ids are kept verbatim, and a
    fresh top "_top" is adjoined when the defining operation calls for one.
    """

    parent: GradedPoset
    members: frozenset
    poset: GradedPoset | None


def induced_subposet(parent, members, adjoin_top=True):
    """Induce the order on ``members`` (a downward-closed id set).

    The induced covers are recomputed from comparability, so the result obeys
    the cover-degree axiom or fails validation.  With ``adjoin_top`` a new top
    is added one degree above the highest member; otherwise the unique maximal
    member becomes the top.
    """
    members = frozenset(members)
    if not members:
        return ElementSubposet(parent, members, None)
    down, up = parent._masks()
    idx = sorted(parent._index[e] for e in members)
    member_mask = 0
    for i in idx:
        member_mask |= 1 << i
    degrees = {parent._ids[i]: parent._deg[i] for i in idx}
    if min(degrees.values()) != 0:
        raise InvalidPoset("subposet members must include the bottom")
    covers = []
    maximal = []
    for i in idx:
        above = up[i] & member_mask & ~(1 << i)
        if not above:
            maximal.append(i)
        for j in _bits(above):
            # j covers i inside the subposet iff [i, j] meets members twice
            if (up[i] & down[j] & member_mask).bit_count() == 2:
                covers.append((parent._ids[i], parent._ids[j]))
    maxdeg = max(degrees.values())
    if adjoin_top:
        if TOP in degrees:
            raise InvalidPoset(f"cannot adjoin top: id {TOP!r} taken")
        degrees[TOP] = maxdeg + 1
        covers += [(parent._ids[i], TOP) for i in maximal]
        rank = maxdeg
    else:
        if len(maximal) != 1:
            raise InvalidPoset("subposet needs a unique maximal element as top")
        rank = maxdeg - 1
    return ElementSubposet(
        parent, members, GradedPoset(rank, degrees, covers)
    )


def skeleton(poset, m):
    """Elements of degree <= m, with a fresh top at degree m+1."""
    if not 0 <= m <= poset.rank:
        raise ValueError(f"skeleton level {m} out of range")
    members = [e for e in poset.elements() if poset.degree(e) <= m]
    return induced_subposet(poset, members, adjoin_top=True)


def star(poset, sigma):
    """Upward closure of sigma inside the poset minus the top."""
    if sigma == poset.top:
        raise ValueError("star of the top is not defined")
    return frozenset(e for e in poset.up_set(sigma) if e != poset.top)


def ideal(poset, sigma):
    """The principal ideal [sigma] with sigma as its own top (rank deg-1)."""
    if sigma == poset.top:
        raise ValueError("ideal of the top is the whole poset")
    return induced_subposet(poset, poset.down_set(sigma), adjoin_top=False)


def strict_ideal(poset, sigma):
    """The ideal of everything strictly below sigma, with a fresh top.

    For a face poset this is the boundary of the face sigma.
    """
    members = [e for e in poset.down_set(sigma) if e != sigma]
    return induced_subposet(poset, members, adjoin_top=True)


# -- order-theoretic tests ----------------------------------------------------------


def mobius(poset, x, y):
    """Mobius function mu(x, y) by the standard recursion."""
    if not poset.leq(x, y):
        raise ValueError(f"{x!r} is not below {y!r}")
    down, up = poset._masks()
    xi = poset._index[x]
    interval = up[xi] & down[poset._index[y]]
    memo = {xi: 1}

    def mu(zi):
        if zi in memo:
            return memo[zi]
        below = up[xi] & down[zi] & ~(1 << zi)
        val = -sum(mu(wi) for wi in _bits(below))
        memo[zi] = val
        return val

    # fill bottom-up to keep recursion shallow
    for zi in sorted(_bits(interval), key=lambda i: poset._deg[i]):
        mu(zi)
    return memo[poset._index[y]]


def is_eulerian(poset):
    """Every nontrivial interval has as many elements of even as odd degree.

    Equivalent to mu(x, y) = (-1)^(deg y - deg x) on all intervals.
    """
    down, up = poset._masks()
    n = len(poset)
    even_mask = 0
    for i, d in enumerate(poset._deg):
        if d % 2 == 0:
            even_mask |= 1 << i
    for xi in range(n):
        for yi in _bits(up[xi] & ~(1 << xi)):
            inter = up[xi] & down[yi]
            ev = (inter & even_mask).bit_count()
            if 2 * ev != inter.bit_count():
                return False
    return True


# -- barycentric subdivision -----------------------------------------------------------


@dataclass(frozen=True)
class BarycentricResult:
    """Chain poset B(P) of a graded poset P.

    Elements of degree k are the k-element chains in the proper part of P,
    ordered by refinement, with the empty chain as bottom and a fresh top.
    ``projection`` sends a chain to its maximal element (bottom to bottom,
    top to top) and ``typeset`` to its set of member degrees.
    """

    bposet: GradedPoset
    projection: dict
    typeset: dict


def barycentric(poset):
    """Barycentric subdivision: the lattice of chains in P minus its ends."""
    n = poset.rank
    out = [(e,) for e in poset.proper_elements()]
    # breadth-first extension; elements inside a chain stay degree-sorted
    all_chains = [()] + out
    frontier = out
    while frontier:
        new = []
        for ch in frontier:
            last = ch[-1]
            for e in poset.up_set(last):
                if e != last and e != poset.top:
                    new.append(ch + (e,))
        all_chains += new
        frontier = new

    def name(ch):
        return "<".join(ch) if ch else BOTTOM

    degrees = {name(ch): len(ch) for ch in all_chains}
    degrees[TOP] = n + 1
    covers = []
    projection = {BOTTOM: poset.bottom, TOP: poset.top}
    typeset = {BOTTOM: frozenset(), TOP: None}
    by_signature = {}
    for ch in all_chains:
        if ch:
            projection[name(ch)] = ch[-1]
            typeset[name(ch)] = frozenset(poset.degree(e) for e in ch)
        if len(ch) == n:
            covers.append((name(ch), TOP))
        for drop in range(len(ch)):
            covers.append((name(ch[:drop] + ch[drop + 1 :]), name(ch)))
    bposet = GradedPoset(n, degrees, covers)
    return BarycentricResult(bposet, projection, typeset)


# -- isomorphism -------------------------------------------------------------------


def is_isomorphic(p, q):
    """Poset isomorphism by signature refinement plus backtracking.

    Intended for the small posets in this package (a few hundred elements);
    the refinement by (degree, cover-degree) signatures usually leaves little
    for the search to do.
    """
    if p.rank != q.rank or len(p) != len(q):
        return False

    def refine(poset):
        sig = {e: (poset.degree(e),) for e in poset.elements()}
        for _ in range(len(poset)):
            new = {}
            for e in poset.elements():
                ups = sorted(sig[u] for u in poset.upper_covers(e))
                downs = sorted(sig[d] for d in poset.lower_covers(e))
                new[e] = (sig[e], tuple(ups), tuple(downs))
            # compress to small hashable tokens
            codes = {s: i for i, s in enumerate(sorted(set(new.values())))}
            new = {e: (poset.degree(e), codes[s]) for e, s in new.items()}
            if new == sig:
                break
            sig = new
        return sig

    psig, qsig = refine(p), refine(q)
    if sorted(psig.values()) != sorted(qsig.values()):
        return False
    q_by_sig = {}
    for e, s in qsig.items():
        q_by_sig.setdefault(s, []).append(e)

    # order so each element lands next to already-placed cover-neighbours;
    # a layer-by-layer order would defer all constraints and backtrack badly
    neighbors = {
        e: set(p.upper_covers(e)) | set(p.lower_covers(e)) for e in p.elements()
    }
    p_order = []
    placed = set()
    remaining = set(p.elements())
    while remaining:
        nxt = min(
            remaining,
            key=lambda e: (
                -len(neighbors[e] & placed),
                len(q_by_sig[psig[e]]),
                e,
            ),
        )
        p_order.append(nxt)
        placed.add(nxt)
        remaining.discard(nxt)

    mapping = {}
    used = set()

    def compatible(e, f):
        f_up = set(q.upper_covers(f))
        for u in p.upper_covers(e):
            if u in mapping and mapping[u] not in f_up:
                return False
        f_down = set(q.lower_covers(f))
        for d in p.lower_covers(e):
            if d in mapping and mapping[d] not in f_down:
                return False
        # cover counts already matched through signatures
        return True

    def search(i):
        if i == len(p_order):
            return True
        e = p_order[i]
        for f in q_by_sig[psig[e]]:
            if f in used or not compatible(e, f):
                continue
            mapping[e] = f
            used.add(f)
            if search(i + 1):
                return True
            del mapping[e]
            used.discard(f)
        return False

    if not search(0):
        return False
    # verify covers transport exactly
    pcov = {(mapping[a], mapping[b]) for a, b in p.covers()}
    return pcov == set(map(tuple, q.covers()))
