"""Exact arithmetic for polynomials in the noncommuting letters c and d.

Words over {c, d} are plain strings; c has degree 1 and d degree 2.  A
CdPolynomial maps words to exact coefficients.  The t-substitution sends a
word to a multilinear polynomial in t_1, ..., t_n by replacing, left to
right, c with (t_i + 1) and d with (t_i + t_{i+1}), each position used once;
SubsetPolynomial holds such multilinear polynomials as subset -> coefficient
maps.  All coefficients are exact (int or Fraction), never floats.
"""

from __future__ import annotations

import re
from fractions import Fraction


class NotACdPolynomial(ValueError):
    """The subset polynomial is not in the image of the t-substitution.

    For flag data this certifies that the source poset is not Eulerian.
    """


class NonIntegralCoefficients(ArithmeticError):
    """Integer input led to non-integer cd-coefficients (internal inconsistency)."""


def _norm(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return v


def word_degree(w):
    """Degree of a word: #c + 2 * #d."""
    return len(w) + w.count("d")


def enumerate_cd_words(n):
    """All words of degree n in lexicographic order (c < d); Fibonacci many."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    if n == 0:
        return [""]
    if n == 1:
        return ["c"]
    return ["c" + w for w in enumerate_cd_words(n - 1)] + [
        "d" + w for w in enumerate_cd_words(n - 2)
    ]


def word_to_str(w):
    # runs of c collapse to c^k; d is never exponentiated
    out = []
    i = 0
    while i < len(w):
        if w[i] == "d":
            out.append("d")
            i += 1
        else:
            j = i
            while j < len(w) and w[j] == "c":
                j += 1
            out.append("c" if j - i == 1 else f"c^{j - i}")
            i = j
    return "".join(out)


class CdPolynomial:
    """Polynomial in noncommuting c, d with exact coefficients.

    Supports +, -, scalar and polynomial *, and ** for powers; the product
    concatenates words.  str() gives the canonical text form, e.g.
    "c^3 + 3*cd + 3*dc", with terms in lexicographic word order.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for w, v in (terms or {}).items():
            if any(ch not in "cd" for ch in w):
                raise ValueError(f"bad word {w!r}")
            v = _norm(v)
            if v:
                clean[w] = v
        self.terms = clean

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({"": 1})

    def coefficient(self, w):
        return self.terms.get(w, 0)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, CdPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for w, v in other.terms.items():
            out[w] = out.get(w, 0) + v
        return CdPolynomial(out)

    def __neg__(self):
        return CdPolynomial({w: -v for w, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CdPolynomial):
            out = {}
            for w1, v1 in self.terms.items():
                for w2, v2 in other.terms.items():
                    w = w1 + w2
                    out[w] = out.get(w, 0) + v1 * v2
            return CdPolynomial(out)
        return CdPolynomial({w: v * other for w, v in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = CdPolynomial.one()
        for _ in range(k):
            out = out * self
        return out

    def degree(self):
        """Maximum word degree; -1 for the zero polynomial."""
        return max((word_degree(w) for w in self.terms), default=-1)

    def is_homogeneous(self):
        degs = {word_degree(w) for w in self.terms}
        return len(degs) <= 1

    def is_integral(self):
        return all(isinstance(v, int) for v in self.terms.values())

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, v in self.sorted_terms():
            body = word_to_str(w)
            mag = abs(v)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            if not parts:
                parts.append(text if v > 0 else f"-{text}")
            else:
                parts.append(("+ " if v > 0 else "- ") + text)
        return " ".join(parts)

    def __repr__(self):
        return f"CdPolynomial({str(self)!r})"


_TERM_RE = re.compile(
    r"^(?P<coeff>\d+(?:/\d+)?)?(?:\*)?(?P<word>(?:c(?:\^\d+)?|d)*)$"
)


def parse_cd(text):
    """Parse the canonical cd-polynomial text form (inverse of str())."""
    text = text.strip()
    if text == "0":
        return CdPolynomial.zero()
    text = text.replace("-", "+-")
    terms = {}
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        sign = 1
        if chunk.startswith("-"):
            sign = -1
            chunk = chunk[1:].strip()
        m = _TERM_RE.match(chunk.replace(" ", ""))
        if not m or (not m.group("coeff") and not m.group("word")):
            raise ValueError(f"cannot parse term {chunk!r}")
        coeff = m.group("coeff")
        if coeff is None:
            val = 1
        elif "/" in coeff:
            val = Fraction(coeff)
        else:
            val = int(coeff)
        word = ""
        for run in re.findall(r"c\^\d+|c|d", m.group("word")):
            if run.startswith("c^"):
                word += "c" * int(run[2:])
            else:
                word += run
        terms[word] = terms.get(word, 0) + sign * val
    return CdPolynomial(terms)


class SubsetPolynomial:
    """Multilinear polynomial in t_1..t_n as a subset -> coefficient map."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = int(n)
        clean = {}
        for s, v in (terms or {}).items():
            s = frozenset(s)
            if any(not 1 <= i <= self.n for i in s):
                raise ValueError(f"subset {sorted(s)} outside 1..{self.n}")
            v = _norm(v)
            if v:
                clean[s] = v
        self.terms = clean

    def get(self, s):
        return self.terms.get(frozenset(s), 0)

    def __eq__(self, other):
        return (
            isinstance(other, SubsetPolynomial)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError("ambient mismatch")
        out = dict(self.terms)
        for s, v in other.terms.items():
            out[s] = out.get(s, 0) + v
        return SubsetPolynomial(self.n, out)

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, scalar):
        return SubsetPolynomial(self.n, {s: v * scalar for s, v in self.terms.items()})

    __rmul__ = __mul__

    def shift_in(self, i):
        """Multiply by t_i (every subset must avoid position i)."""
        out = {}
        for s, v in self.terms.items():
            if i in s:
                raise ValueError(f"t_{i} already present")
            out[s | {i}] = v
        return SubsetPolynomial(max(self.n, i), out)

    def restrict(self, m):
        """Set t_{m+1} = ... = t_n = 0: keep subsets within 1..m."""
        if not 0 <= m <= self.n:
            raise ValueError(f"restriction level {m} out of range")
        kept = {s: v for s, v in self.terms.items() if all(i <= m for i in s)}
        return SubsetPolynomial(m, kept)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))

    def to_json(self):
        return {
            "n": self.n,
            "terms": {
                ",".join(str(i) for i in sorted(s)): v
                for s, v in self.sorted_terms()
            },
        }

    @classmethod
    def from_json(cls, data):
        terms = {}
        for key, v in data["terms"].items():
            s = frozenset(int(p) for p in key.split(",") if p)
            terms[s] = v
        return cls(data["n"], terms)

    def __repr__(self):
        body = ", ".join(
            f"{{{','.join(map(str, sorted(s)))}}}: {v}" for s, v in self.sorted_terms()
        )
        return f"SubsetPolynomial(n={self.n}, {{{body}}})"


def phi_word(w, offset=0):
    """t-substitution of a single word as {subset: 1} over positions offset+1.."""
    terms = {frozenset(): 1}
    pos = offset
    for letter in w:
        out = {}
        if letter == "c":
            pos += 1
            for s, v in terms.items():
                out[s | {pos}] = v
                out[s] = out.get(s, 0) + v
        else:
            for s, v in terms.items():
                out[s | {pos + 1}] = v
                out[s | {pos + 2}] = v
            pos += 2
        terms = out
    return terms


def phi_expand(p):
    """Image of a homogeneous cd-polynomial under the t-substitution."""
    if not p:
        raise ValueError("zero polynomial has no well-defined ambient size")
    if not p.is_homogeneous():
        raise ValueError("t-substitution needs a homogeneous polynomial")
    n = p.degree()
    total = {}
    for w, coeff in p.terms.items():
        for s, v in phi_word(w).items():
            total[s] = total.get(s, 0) + coeff * v
    return SubsetPolynomial(n, total)


def _word_pair_bits(w):
    # bit positions (0-based) of the two slots of each d in the word
    pairs = []
    pos = 0
    for letter in w:
        if letter == "c":
            pos += 1
        else:
            pairs.append((pos, pos + 1))
            pos += 2
    return pairs


def to_cd(h):
    """Invert the t-substitution, or raise NotACdPolynomial.

    Sets up the exact linear system of all degree-n word images against the
    2^n subsets and solves it by rational elimination; a nonzero residual on
    any subset certifies that h is not a cd-polynomial (for flag data: that
    the poset is not Eulerian).  Raises NonIntegralCoefficients if an integer
    input solves with fractional coefficients.
    """
    n = h.n
    words = enumerate_cd_words(n)
    nw = len(words)
    pair_bits = [_word_pair_bits(w) for w in words]

    def column_value(j, mask):
        # coefficient of t^mask in the image of word j: each d needs exactly
        # one of its two slots in the subset
        for a, b in pair_bits[j]:
            if (mask >> a & 1) == (mask >> b & 1):
                return 0
        return 1

    target = [0] * (1 << n)
    for s, v in h.terms.items():
        mask = 0
        for i in s:
            mask |= 1 << (i - 1)
        target[mask] = v

    # forward elimination over rows in subset order until nw pivots are found
    pivots = []  # list of (lead column, reduced row) in increasing lead order
    for mask in range(1 << n):
        row = [Fraction(column_value(j, mask)) for j in range(nw)]
        row.append(Fraction(target[mask]))
        for lead, prow in pivots:
            if row[lead]:
                f = row[lead]
                for jj in range(lead, nw + 1):
                    row[jj] -= f * prow[jj]
        lead = next((j for j in range(nw) if row[j]), None)
        if lead is None:
            if row[nw]:
                raise NotACdPolynomial(
                    f"residual {row[nw]} at subset mask {mask:#b}"
                )
            continue
        pv = row[lead]
        row = [v / pv for v in row]
        pivots.append((lead, row))
        pivots.sort(key=lambda lr: lr[0])
        if len(pivots) == nw:
            break
    assert len(pivots) == nw, "word images must be linearly independent"

    # back substitution
    coeffs = [Fraction(0)] * nw
    for lead, row in reversed(pivots):
        acc = row[nw]
        for j in range(lead + 1, nw):
            acc -= row[j] * coeffs[j]
        coeffs[lead] = acc

    # residual check over every subset, which doubles as the Eulerian gate
    for mask in range(1 << n):
        acc = 0
        for j in range(nw):
            if column_value(j, mask):
                acc += coeffs[j]
        if acc != target[mask]:
            raise NotACdPolynomial(
                f"residual {acc - target[mask]} at subset mask {mask:#b}"
            )

    integral_input = all(isinstance(v, int) for v in h.terms.values())
    if integral_input and any(v.denominator != 1 for v in coeffs):
        raise NonIntegralCoefficients(f"solution {coeffs} is not integral")
    return CdPolynomial({w: coeffs[j] for j, w in enumerate(words)})
