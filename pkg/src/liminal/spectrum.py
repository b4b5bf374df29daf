"""Milnor algebra spectrum of diagonal (Brieskorn-Pham) singularities and the
graded Hodge pieces of the Milnor fiber and link derived from it.

For f = z_1^e_1 + ... + z_{n+1}^e_{n+1} the monomial basis of the Milnor
algebra is {z^alpha : 0 <= alpha_i <= e_i - 2} and the spectrum is the
multiset of rationals

    sum_i (alpha_i + 1) / e_i,

computed here as a product of generating polynomials over the common
denominator d = lcm(e_i).  Coefficients are accumulated in int64 numpy
arrays; multiplicities are bounded by the Milnor number, so the arithmetic
stays exact.
"""

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm, prod

import numpy as np

from .weights import classify_from_sum, weight_system_from_exponents

DEFAULT_CAP = 10**7


class CapExceeded(ValueError):
    """Milnor number above the configured cap for spectrum computation."""


def _cap(cap):
    if cap is not None:
        return int(cap)
    env = os.environ.get("LIMINAL_CAP")
    return int(env) if env else DEFAULT_CAP


@dataclass(frozen=True)
class DiagonalSingularity:
    """Isolated singularity of a diagonal polynomial, given by its exponents."""

    exponents: tuple

    def __init__(self, exponents):
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) < 4:
            raise ValueError("need at least 4 exponents (dimension >= 3)")
        if any(e < 2 for e in exponents):
            raise ValueError("all exponents must be >= 2")
        object.__setattr__(self, "exponents", exponents)

    @property
    def n(self):
        return len(self.exponents) - 1

    @property
    def weight_system(self):
        return weight_system_from_exponents(self.exponents)


@dataclass(frozen=True)
class SpectrumMultiset:
    """Spectral numbers with multiplicities, sorted ascending."""

    entries: tuple  # ((Fraction, int), ...)
    total: int

    @property
    def min_value(self):
        return self.entries[0][0]

    @property
    def max_value(self):
        return self.entries[-1][0]

    def multiplicity(self, value):
        value = Fraction(value)
        for s, m in self.entries:
            if s == value:
                return m
        return 0

    def count_in_window(self, lo, hi):
        """Total multiplicity of spectral numbers s with lo < s <= hi."""
        return sum(m for s, m in self.entries if lo < s <= hi)

    def is_symmetric(self, n):
        """Check mult(s) == mult(n + 1 - s) for every entry."""
        table = dict(self.entries)
        return all(table.get(n + 1 - s) == m for s, m in self.entries)

    def to_json(self):
        return [["%d/%d" % (s.numerator, s.denominator), m] for s, m in self.entries]


def milnor_number(sing):
    """Product formula: mu = prod(e_i - 1)."""
    return prod(e - 1 for e in sing.exponents)


@lru_cache(maxsize=256)
def _spectrum_cached(exponents):
    d = lcm(*exponents)
    arr = np.zeros(1, dtype=np.int64)
    arr[0] = 1
    offset = 0  # arr[j] counts alpha with sum (alpha_i+1)*step_i == offset + j
    for e in exponents:
        step = d // e
        new = np.zeros(arr.shape[0] + (e - 2) * step, dtype=np.int64)
        for m in range(e - 1):
            new[m * step : m * step + arr.shape[0]] += arr
        arr = new
        offset += step
    entries = tuple(
        (Fraction(offset + j, d), int(c)) for j, c in enumerate(arr) if c
    )
    return SpectrumMultiset(entries, int(arr.sum()))


def spectrum(sing, cap=None):
    """The spectrum multiset of a diagonal singularity.

    Raises CapExceeded when the Milnor number is above `cap` (default 10^7,
    overridable through the LIMINAL_CAP environment variable).
    """
    mu = milnor_number(sing)
    if mu > _cap(cap):
        raise CapExceeded("Milnor number %d exceeds cap %d" % (mu, _cap(cap)))
    sp = _spectrum_cached(sing.exponents)
    assert sp.total == mu
    return sp


def gr_f_milnor(sing, p, cap=None):
    """dim Gr_F^p H^n of the Milnor fiber: the number of spectral numbers s
    with n - p < s <= n - p + 1 (equivalently ceil(s) = n + 1 - p).

    The convention is pinned so that the minimal spectral number k + 1 of a
    k-liminal germ lands in p = n - k.
    """
    n = sing.n
    if not 0 <= p <= n:
        raise ValueError("need 0 <= p <= n")
    return spectrum(sing, cap).count_in_window(Fraction(n - p), Fraction(n - p + 1))


def gr_f_link(sing, p, cap=None):
    """dim Gr_F^p H^n of the link: the multiplicity of the integer spectral
    number n - p + 1 (the monodromy-eigenvalue-one part of the Milnor fiber).

    For a k-liminal germ and p = n - k this is 1.
    """
    n = sing.n
    if not 0 <= p <= n:
        raise ValueError("need 0 <= p <= n")
    return spectrum(sing, cap).multiplicity(Fraction(n - p + 1))


def classify_from_spectrum(sing, cap=None):
    """Classification read off the minimal spectral number.  Agrees with
    weights.classify on the derived weight system."""
    sp = spectrum(sing, cap)
    ws = sing.weight_system
    return classify_from_sum(sp.min_value, ws.flags)
