"""The E, C, D operators on integer functions over poset skeletons.

A skeleton function lives on the elements of degree <= m (top excluded).
E is the signed upward sum at level m, C restricts one level down, and
D = C o (E - Id) o C.  Substituting C for c and D for d in a degree-n word
and applying it to the constant function 1, rightmost letter first, returns
the coefficient of that word in the cd-index whenever the poset is
Gorenstein*.  Out-of-contract inputs are computed, not rejected: their
disagreement with the flag method is a useful diagnostic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cdpoly import CdPolynomial, enumerate_cd_words, word_degree
from .poset import barycentric, skeleton


@dataclass(frozen=True)
class SkeletonFunction:
    """Integer values on the degree <= level part of a poset (top excluded)."""

    poset: object
    level: int
    values: dict

    def __post_init__(self):
        domain = _domain(self.poset, self.level)
        if set(self.values) != domain:
            missing = domain - set(self.values)
            extra = set(self.values) - domain
            raise ValueError(
                f"domain mismatch at level {self.level}: "
                f"missing {sorted(missing)}, extra {sorted(extra)}"
            )

    def __call__(self, e):
        return self.values[e]

    def same_values(self, other):
        return self.level == other.level and self.values == other.values


def _domain(poset, level):
    if not 0 <= level <= poset.rank:
        raise ValueError(f"level {level} out of range for rank {poset.rank}")
    return {e for e in poset.elements() if poset.degree(e) <= level}


def constant_function(poset, level=None, value=1):
    """The constant function on the degree <= level skeleton (default: full)."""
    if level is None:
        level = poset.rank
    return SkeletonFunction(
        poset, level, {e: value for e in _domain(poset, level)}
    )


def op_E(f):
    """E(f)(s) = sum over t >= s with deg t <= level of (-1)^(level - deg t) f(t)."""
    poset, m = f.poset, f.level
    out = {}
    for e in f.values:
        acc = 0
        for t in poset.up_set(e):
            d = poset.degree(t)
            if d <= m:
                acc += f.values[t] if (m - d) % 2 == 0 else -f.values[t]
        out[e] = acc
    return SkeletonFunction(poset, m, out)


def op_C(f):
    """Restriction to the skeleton one level down."""
    if f.level == 0:
        raise ValueError("cannot restrict below level 0")
    m = f.level - 1
    poset = f.poset
    return SkeletonFunction(
        poset, m, {e: v for e, v in f.values.items() if poset.degree(e) <= m}
    )


def op_D(f):
    """D = C o (E - Id) o C, dropping two levels."""
    if f.level < 2:
        raise ValueError("D needs level >= 2")
    g = op_C(f)
    eg = op_E(g)
    h = SkeletonFunction(
        g.poset, g.level, {e: eg.values[e] - g.values[e] for e in g.values}
    )
    return op_C(h)


def eval_cd_monomial(poset, word, trace=None):
    """Value at the bottom of word(C, D) applied to the constant function 1.

    Letters act rightmost first: a trailing c applies C first.  When the
    poset is Gorenstein* of matching rank this is the coefficient of the word
    in its cd-index.  Pass a list as ``trace`` to collect the intermediate
    skeleton functions (the starting constant included).
    """
    n = poset.rank
    if word_degree(word) != n:
        raise ValueError(
            f"word {word!r} has degree {word_degree(word)}, poset has rank {n}"
        )
    f = constant_function(poset, n)
    if trace is not None:
        trace.append(f)
    for letter in reversed(word):
        f = op_C(f) if letter == "c" else op_D(f)
        if trace is not None:
            trace.append(f)
    assert f.level == 0
    return f(poset.bottom)


def cd_index_operator(poset):
    """cd-index assembled from the operator evaluation of every word."""
    n = poset.rank
    return CdPolynomial(
        {w: eval_cd_monomial(poset, w) for w in enumerate_cd_words(n)}
    )


def pullback(f, bary):
    """Pull a skeleton function back along the chain-poset projection.

    ``bary`` must be the barycentric subdivision of the level-m skeleton of
    f's poset; the result assigns f(max of chain) to every chain.
    """
    b = bary.bposet
    m = f.level
    if b.rank != m:
        raise ValueError(
            f"barycentric poset has rank {b.rank}, expected level {m}"
        )
    out = {}
    for e in b.elements():
        if e == b.top:
            continue
        out[e] = f.values[bary.projection[e]]
    return SkeletonFunction(b, m, out)


def check_E_commutes_with_pullback(poset, m, f):
    """Test E o pullback == pullback o E pointwise on the chain poset.

    Holds whenever the poset is Eulerian; may fail outside that contract.
    """
    if f.level != m:
        raise ValueError("function level must equal m")
    bary = barycentric(skeleton(poset, m).poset)
    lhs = op_E(pullback(f, bary))
    rhs = pullback(op_E(f), bary)
    return lhs.same_values(rhs)
