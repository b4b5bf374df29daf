"""Weight systems of weighted homogeneous hypersurface germs and their
classification.

A germ {f = 0} in C^(n+1), with f weighted homogeneous of degree d for
positive integer weights a_1..a_{n+1}, is classified entirely by the exact
rational s = sum(a_i / d):

* k-Du Bois   iff  s >= k + 1,
* k-rational  iff  s >  k + 1,
* k-liminal   iff  s == k + 1.

Everything here is exact integer/rational arithmetic; there are no floats.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd, lcm


class InvalidWeightSystem(ValueError):
    """The weights/degree do not describe a hypersurface germ of dim >= 3."""


class SmoothSystem(InvalidWeightSystem):
    """Degree 1 after normalization: the 'hypersurface' is a hyperplane."""


class OutOfRange(ValueError):
    """Requested level outside the admissible interval for the dimension."""


class InvalidExponent(ValueError):
    """Exponent vectors need every entry >= 2."""


class NotLiminal(ValueError):
    """Operation defined only for liminal weight systems."""


@dataclass(frozen=True)
class WeightSystem:
    """Weights (a_1..a_{n+1}) and degree d, normalized so that
    gcd(a_1, ..., a_{n+1}, d) = 1.

    The hypersurface germ has dimension n = len(weights) - 1 >= 3.  Weight
    systems whose weights share a residual common factor not dividing d are
    rejected: no monomial of weighted degree d exists, so there is no germ.
    """

    weights: tuple
    degree: int

    def __init__(self, weights, degree):
        weights = tuple(int(a) for a in weights)
        degree = int(degree)
        if len(weights) < 4:
            raise InvalidWeightSystem(
                "need at least 4 weights (germ dimension >= 3), got %d" % len(weights)
            )
        if any(a < 1 for a in weights) or degree < 1:
            raise InvalidWeightSystem("weights and degree must be positive")
        g = gcd(degree, *weights)
        if g > 1:
            weights = tuple(a // g for a in weights)
            degree //= g
        if degree == 1:
            raise SmoothSystem("degree 1 after normalization: hyperplane, not a singularity")
        if gcd(*weights) > 1:
            raise InvalidWeightSystem(
                "weights share a common factor prime to the degree; "
                "no monomial of weighted degree %d exists" % degree
            )
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "degree", degree)

    @property
    def n(self):
        """Dimension of the hypersurface germ."""
        return len(self.weights) - 1

    @property
    def normalized_weights(self):
        """The rationals w_i = a_i / d."""
        return tuple(Fraction(a, self.degree) for a in self.weights)

    @property
    def weight_sum(self):
        return Fraction(sum(self.weights), self.degree)

    @property
    def genuinely_singular(self):
        """True when every a_i < d (the cone vertex is actually singular)."""
        return all(a < self.degree for a in self.weights)

    @property
    def well_formed(self):
        """Iano-Fletcher well-formedness: no n of the n+1 weights share a
        common factor.  Reported as a flag, never enforced."""
        ws = self.weights
        for i in range(len(ws)):
            if gcd(*(a for j, a in enumerate(ws) if j != i)) > 1:
                return False
        return True

    @property
    def flags(self):
        out = []
        if self.genuinely_singular:
            out.append("genuinely_singular")
        if self.well_formed:
            out.append("well_formed")
        return out

    def sorted(self):
        """Copy with weights in ascending order (canonical form)."""
        return WeightSystem(tuple(sorted(self.weights)), self.degree)

    def to_json(self):
        return {"weights": list(self.weights), "degree": self.degree}

    @classmethod
    def from_json(cls, data):
        return cls(data["weights"], data["degree"])


@dataclass(frozen=True)
class Classification:
    """Exact Du Bois / rational / liminal levels of a weight system.

    Fields are None when no level k >= 0 qualifies.
    """

    weight_sum: Fraction
    max_du_bois: object
    max_rational: object
    liminal_k: object
    flags: tuple = ()

    def to_json(self):
        s = self.weight_sum
        return {
            "weight_sum": "%d/%d" % (s.numerator, s.denominator),
            "max_du_bois": self.max_du_bois,
            "max_rational": self.max_rational,
            "liminal_k": self.liminal_k,
            "flags": list(self.flags),
        }


@dataclass(frozen=True)
class Numerology:
    """Derived integers of a k-liminal weight system.

    fano_index           sum(a_i) - d, equal to d*k; the canonical bundle of
                         the exceptional hypersurface E is O_E(-fano_index).
    critical_twist       d*(k-1); the twist at which the log-forms window
                         closes and the h^1 = 1 class appears.
    discrepancy          d*k - 1; coefficient of E in the canonical divisor
                         of the weighted blowup.
    canonical_twist_e    d - sum(a_i) = -d*k, the twist of K_E.
    """

    level: int
    fano_index: int
    critical_twist: int
    discrepancy: int
    canonical_twist_e: int

    @property
    def blowup_canonical_coefficient(self):
        return self.discrepancy

    def to_json(self):
        return {
            "level": self.level,
            "fano_index": self.fano_index,
            "critical_twist": self.critical_twist,
            "discrepancy": self.discrepancy,
            "canonical_twist_e": self.canonical_twist_e,
        }


class Certification(Enum):
    CERTIFIED = "certified"
    CANDIDATE = "candidate"
    REJECTED = "rejected"


def classify_from_sum(weight_sum, flags=()):
    """Classification determined by the exact rational weight sum."""
    s = Fraction(weight_sum)
    if s >= 1:
        max_db = int(s) - 1 if s.denominator == 1 else int(s - 1)
    else:
        max_db = None
    if s > 1:
        # largest k with s > k+1
        max_rat = int(s) - 2 if s.denominator == 1 else int(s - 1)
        if max_rat < 0:
            max_rat = None
    else:
        max_rat = None
    liminal = int(s) - 1 if (s.denominator == 1 and s >= 1) else None
    return Classification(s, max_db, max_rat, liminal, tuple(flags))


def classify(ws):
    """Classify a weight system by its weight sum.  Total on valid systems."""
    return classify_from_sum(ws.weight_sum, ws.flags)


def numerology(ws):
    """The derived integers of a liminal system; raises NotLiminal otherwise."""
    cls = classify(ws)
    k = cls.liminal_k
    if k is None:
        raise NotLiminal("weight sum %s is not an integer >= 1" % cls.weight_sum)
    d = ws.degree
    fano = sum(ws.weights) - d
    assert fano == d * k
    crit = d * (k - 1)
    assert crit == fano - d
    return Numerology(
        level=k,
        fano_index=fano,
        critical_twist=crit,
        discrepancy=d * k - 1,
        canonical_twist_e=-d * k,
    )


def diagonal_family(n, k):
    """Exponents of a diagonal polynomial z_1^e_1 + ... + z_{n+1}^e_{n+1}
    realizing an isolated k-liminal singularity of dimension n.

    Exists exactly for 1 <= k <= (n-1)//2; returned ascending.
    """
    if n < 3:
        raise OutOfRange("dimension must be >= 3, got %d" % n)
    if not 1 <= k <= (n - 1) // 2:
        raise OutOfRange("level %d outside [1, %d] for dimension %d" % (k, (n - 1) // 2, n))
    if n % 2 == 1:
        a = (n - 1) // 2
        ell = k - 1  # 0 <= ell <= a-1
        exps = (2,) * (2 * ell) + (a + 1 - ell,) * (n + 1 - 2 * ell)
    else:
        a = n // 2
        if k == 1:
            exps = (a,) * (n - 1) + (2 * a,) * 2
        else:
            ell = k - 1  # 1 <= ell <= a-2
            exps = (2,) * (2 * ell - 1) + (4, 4) + (a - ell,) * (n - 2 * ell)
    exps = tuple(sorted(exps))
    assert all(e >= 2 for e in exps)
    assert sum(Fraction(1, e) for e in exps) == k + 1
    return exps


def weight_system_from_exponents(exponents):
    """Weight system of the diagonal polynomial with the given exponents:
    d = lcm(e_i), a_i = d / e_i."""
    exponents = tuple(int(e) for e in exponents)
    if any(e < 2 for e in exponents):
        raise InvalidExponent("all exponents must be >= 2, got %r" % (exponents,))
    d = lcm(*exponents)
    return WeightSystem(tuple(d // e for e in exponents), d)


def cone_liminal_level(n, d):
    """Liminal level of the cone over a smooth degree-d hypersurface in P^n,
    i.e. the integer k >= 1 with n + 1 = d*(k + 1), if it exists."""
    if n < 3 or d < 2:
        raise OutOfRange("need n >= 3 and d >= 2")
    if (n + 1) % d:
        return None
    k = (n + 1) // d - 1
    return k if k >= 1 else None


def quasismooth_candidate_check(ws):
    """Combinatorial certification that a quasi-smooth member of degree d may
    exist.

    CERTIFIED  every variable admits a pure power z_i^(d/a_i) with exponent
               >= 2, so the diagonal polynomial realizes the system;
    CANDIDATE  every variable appears in some degree-d monomial involving at
               most one other variable (z_i^m, m >= 2, or z_i^m z_j^l);
    REJECTED   some variable appears in no such monomial.
    """
    d = ws.degree
    if all(d % a == 0 and d // a >= 2 for a in ws.weights):
        return Certification.CERTIFIED
    for i, ai in enumerate(ws.weights):
        ok = any(m * ai == d for m in range(2, d // ai + 1))
        if not ok:
            for j, aj in enumerate(ws.weights):
                if j == i:
                    continue
                for m in range(1, d // ai + 1):
                    rem = d - m * ai
                    if rem > 0 and rem % aj == 0:
                        ok = True
                        break
                if ok:
                    break
        if not ok:
            return Certification.REJECTED
    return Certification.CANDIDATE
