"""Recursive computation of the cd-index from lower-interval indices.

For an Eulerian poset of rank n the cd-index satisfies Stanley's recursion:
summing, over proper elements s of degree k, the lower-interval index
P(boundary of s) times c*(c^2-2d)^((n-k)/2) when n-k is even and minus
(c^2-2d)^((n-k+1)/2) when odd, adding 2*(c^2-2d)^(n/2) for even n, always
yields exactly twice the cd-index.  Odd intermediate coefficients therefore
certify non-Eulerian input.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .cdpoly import CdPolynomial


class NonIntegralResult(ArithmeticError):
    """The recursion produced a non-integer cd-index: input is not Eulerian."""


_C = CdPolynomial({"c": 1})
_CC_2D = CdPolynomial({"cc": 1, "d": -2})


@lru_cache(maxsize=None)
def _cc_2d_power(j):
    return _CC_2D**j


def cd_index_stanley(poset):
    """cd-index by recursion over the lower intervals of every element.

    Each element's interval index is computed once (memoized by element id,
    not by isomorphism class: isomorphism tests cost more than recomputation
    at this scale).
    """
    memo = {}

    def interval_index(sigma):
        # cd-index of the rank deg(sigma)-1 poset [bottom, sigma]
        if sigma in memo:
            return memo[sigma]
        n = poset.degree(sigma) - 1
        total = CdPolynomial.zero()
        for tau in poset.down_set(sigma):
            if tau == sigma or tau == poset.bottom:
                continue
            k = poset.degree(tau)
            base = memo[tau]
            if (n - k) % 2 == 0:
                total = total + base * _C * _cc_2d_power((n - k) // 2)
            else:
                total = total - base * _cc_2d_power((n - k + 1) // 2)
        if n % 2 == 0:
            total = total + 2 * _cc_2d_power(n // 2)
        half = CdPolynomial(
            {w: Fraction(v, 2) for w, v in total.terms.items()}
        )
        if not half.is_integral():
            raise NonIntegralResult(
                f"interval below {sigma!r} sums to {total}, not divisible by 2"
            )
        memo[sigma] = half
        return half

    # ascend degree by degree so every lower interval is already memoized
    for d in range(1, poset.rank + 2):
        for sigma in poset.elements_of_degree(d):
            interval_index(sigma)
    return memo[poset.top]
