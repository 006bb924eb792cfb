"""Order complexes, exact rational homology, and Gorenstein* certification.

Homology is taken over the rationals (torsion is deliberately invisible) and
computed from exact ranks of the boundary matrices, with standard alternating
signs over sorted vertex tuples.  A rank-n poset is Gorenstein* when its
order complex has the reduced homology of the sphere S^(n-1) and the link of
every nonempty face has the reduced homology of a sphere of complementary
dimension.

The link of a chain face in an order complex is the join of the order
complexes of the gaps the chain cuts out, and over a field the reduced
homology of a join is the shifted convolution of the factors' homologies.
The certifier therefore computes homology once per closed interval of the
poset and assembles every link profile by convolution, which keeps the whole
certificate exact while avoiding one rank computation per face.  The naive
per-link route is what reduced_homology + link compute directly, and the two
agree (this is pinned down in the test suite).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import kernel
from .poset import induced_subposet


class SimplicialComplex:
    """Abstract simplicial complex stored by its facets.

    All subsets of facets are faces, the empty face included.  Facets that
    lie inside other facets are dropped on construction, so the stored
    facets form an antichain.  An empty facet list is the empty complex,
    whose only face is the empty one.
    """

    __slots__ = ("facets", "_faces")

    def __init__(self, facets):
        sets = sorted({frozenset(f) for f in facets}, key=len, reverse=True)
        keep = []
        larger = 0  # kept facets in keep[:larger] are strictly bigger than f
        prev_size = None
        for f in sets:
            if prev_size is not None and len(f) < prev_size:
                larger = len(keep)
            prev_size = len(f)
            # only a strictly larger facet can contain f
            if not any(f < g for g in keep[:larger]):
                keep.append(f)
        self.facets = tuple(
            sorted(keep, key=lambda f: (len(f), tuple(sorted(f))))
        )
        self._faces = None

    @property
    def dim(self):
        return max((len(f) for f in self.facets), default=0) - 1

    def vertices(self):
        out = set()
        for f in self.facets:
            out |= f
        return out

    def faces_by_dim(self):
        """faces_by_dim()[k] lists the k-faces as sorted tuples; k = -1 is
        the empty face (index 0)."""
        if self._faces is None:
            by_dim = [{()}]
            for _ in range(self.dim + 1):
                by_dim.append(set())
            for f in self.facets:
                vs = tuple(sorted(f))
                for k in range(1, len(vs) + 1):
                    by_dim[k].update(combinations(vs, k))
            self._faces = [sorted(s) for s in by_dim]
        return self._faces

    def num_faces(self):
        """Face count in each dimension, the empty face first."""
        return [len(s) for s in self.faces_by_dim()]

    def has_face(self, face):
        face = frozenset(face)
        return any(face <= f for f in self.facets)

    def reduced_euler(self):
        """Alternating face count, empty face included (so -1 for a point)."""
        total = 0
        for k, faces in enumerate(self.faces_by_dim()):
            total += len(faces) if k % 2 else -len(faces)
        return total


def link(complex_, face):
    """The link {g : g disjoint from face, g union face a face}."""
    face = frozenset(face)
    if not complex_.has_face(face):
        raise ValueError(f"{sorted(face)} is not a face")
    return SimplicialComplex(
        [f - face for f in complex_.facets if face <= f]
    )


class HomologyProfile:
    """Reduced rational Betti numbers of a complex, dimensions -1 through dim.

    Stored shifted by one (index i holds dimension i-1) with trailing zeros
    stripped, so profiles of different-sized complexes compare directly.
    """

    __slots__ = ("shifted",)

    def __init__(self, shifted):
        shifted = list(shifted)
        while shifted and shifted[-1] == 0:
            shifted.pop()
        if any(b < 0 for b in shifted):
            raise ValueError(f"negative Betti number in {shifted}")
        self.shifted = tuple(shifted)

    @classmethod
    def sphere(cls, d):
        """Profile of the sphere S^d; d = -1 is the empty complex."""
        return cls([0] * (d + 1) + [1])

    def betti(self, i):
        """Reduced Betti number in dimension i (i >= -1)."""
        j = i + 1
        return self.shifted[j] if 0 <= j < len(self.shifted) else 0

    def is_sphere(self, d):
        return self == HomologyProfile.sphere(d)

    def to_list(self):
        """Plain list starting at dimension -1."""
        return list(self.shifted)

    def __eq__(self, other):
        return isinstance(other, HomologyProfile) and self.shifted == other.shifted

    def __hash__(self):
        return hash(self.shifted)

    def __repr__(self):
        return f"HomologyProfile({list(self.shifted)})"


def reduced_homology(complex_):
    """Reduced Betti numbers over the rationals via exact boundary ranks."""
    faces = complex_.faces_by_dim()
    index = [
        {face: i for i, face in enumerate(level)} for level in faces
    ]
    top = len(faces) - 1  # top index k holds (k-1)-faces
    ranks = [0] * (top + 2)
    for k in range(1, top + 1):
        entries = []
        for j, face in enumerate(faces[k]):
            for drop in range(len(face)):
                sub = face[:drop] + face[drop + 1 :]
                sign = 1 if drop % 2 == 0 else -1
                entries.append((index[k - 1][sub], j, sign))
        ranks[k] = kernel.sparse_rank(entries)
    shifted = [
        len(faces[k]) - ranks[k] - ranks[k + 1] for k in range(top + 1)
    ]
    return HomologyProfile(shifted)


# -- order complexes ---------------------------------------------------------


def _interval_complex(poset, x, y):
    """Order complex of the open interval (x, y): chains as faces."""
    down, up = poset._masks()
    xi, yi = poset._index[x], poset._index[y]
    mask = up[xi] & down[yi] & ~(1 << xi) & ~(1 << yi)
    starts = [
        i
        for i in _bits(mask)
        if poset._deg[i] == poset.degree(x) + 1
    ]
    facets = []
    stack = [(i, (poset._ids[i],)) for i in starts]
    end_deg = poset.degree(y) - 1
    while stack:
        i, chain = stack.pop()
        if poset._deg[i] == end_deg:
            facets.append(chain)
            continue
        for j in poset._cov_up[i]:
            if mask >> j & 1:
                stack.append((j, chain + (poset._ids[j],)))
    return SimplicialComplex(facets)


def order_complex(poset):
    """Order complex of the proper part: vertices are the proper elements,
    faces the chains among them."""
    return _interval_complex(poset, poset.bottom, poset.top)


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# -- Gorenstein* certification --------------------------------------------------


@dataclass(frozen=True)
class GorensteinCertificate:
    """Outcome of the Gorenstein* test.

    ``failing_face`` is the first face (in (dimension, vertex-id) order,
    the empty face written ()) whose link misses the sphere profile; None
    when the test passes.  ``betti`` holds that link's profile, or the whole
    complex's when the test passes; lists start at dimension -1.
    """

    gorenstein_star: bool
    failing_face: tuple | None
    betti: HomologyProfile

    def __bool__(self):
        return self.gorenstein_star

    def to_json(self):
        return {
            "gorenstein_star": self.gorenstein_star,
            "failing_face": (
                None if self.failing_face is None else list(self.failing_face)
            ),
            "betti": self.betti.to_list(),
        }


def _convolve(a, b):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, va in enumerate(a):
        if va:
            for j, vb in enumerate(b):
                out[i + j] += va * vb
    return tuple(out)


def _all_chains(poset):
    """Every chain of proper elements (tuples sorted by degree), the empty
    chain included."""
    chains = [()]
    frontier = [(e,) for e in poset.proper_elements()]
    chains += frontier
    while frontier:
        new = []
        for ch in frontier:
            last = ch[-1]
            for e in poset.up_set(last):
                if e != last and e != poset.top:
                    new.append(ch + (e,))
        chains += new
        frontier = new
    return chains


def is_gorenstein_star(poset):
    """Certify the Gorenstein* property of a graded poset.

    Checks the order complex against S^(rank-1) and the link of every
    nonempty face against the complementary sphere; the first failure (faces
    ordered by dimension, then by sorted vertex ids) lands in the
    certificate.  Link homology is assembled from memoized open-interval
    homology by join convolution, which is exact over the rationals.
    """
    n = poset.rank
    cache = {}

    def interval_profile(x, y):
        key = (x, y)
        if key not in cache:
            cache[key] = reduced_homology(_interval_complex(poset, x, y))
        return cache[key]

    def face_profile(chain):
        ends = (poset.bottom,) + chain + (poset.top,)
        vec = (1,)
        for a, b in zip(ends, ends[1:]):
            vec = _convolve(vec, interval_profile(a, b).shifted)
            if not vec:
                break
        return HomologyProfile(vec)

    faces = sorted(_all_chains(poset), key=lambda ch: (len(ch), tuple(sorted(ch))))
    for chain in faces:
        expected = HomologyProfile.sphere(n - 1 - len(chain))
        got = face_profile(chain)
        if got != expected:
            return GorensteinCertificate(False, tuple(sorted(chain)), got)
    return GorensteinCertificate(True, None, interval_profile(poset.bottom, poset.top))


# -- boundaries and quasi-convexity -----------------------------------------------


def boundary_of(poset):
    """Order ideal generated by the degree-(n-1) elements lying in exactly
    one maximal element, re-graded to rank n-1 with a fresh top.

    This cover-count rule matches the topological boundary for quasi-convex
    inputs; elsewhere it is a formal construction.  An empty boundary yields
    a subposet with poset=None (the complete case).
    """
    n = poset.rank
    ridges = [
        e
        for e in poset.elements_of_degree(n - 1)
        if len(poset.upper_covers(e)) == 1
    ]
    members = set()
    for e in ridges:
        members.update(poset.down_set(e))
    return induced_subposet(poset, members, adjoin_top=True)


def is_quasi_convex(poset):
    """True when the boundary is Gorenstein*; a complete poset (empty
    boundary) counts as quasi-convex exactly when it is itself Gorenstein*."""
    bnd = boundary_of(poset)
    if bnd.poset is None:
        return bool(is_gorenstein_star(poset))
    return bool(is_gorenstein_star(bnd.poset))
