"""Finite-dimensional smoothing-obstruction calculus.

A configuration is a set of singular points x with nonzero constants c_x and
class vectors phi_x in Q^m.  The obstruction to a strong first order
smoothing with local parameters lambda_x is

    sum_x c_x * lambda_x^k * phi_x = 0.

Substituting mu_x = c_x lambda_x^k (nonzero k-th roots always exist over C)
turns the all-nonzero solvability question into: does the kernel of the
class matrix contain a vector with no zero coordinate?  A linear subspace
avoids the union of the coordinate hyperplanes exactly when it is contained
in none of them, so the decision reduces to one kernel computation plus one
containment test per coordinate.  For k = 1 the criterion is necessary and
sufficient; for k >= 2 it certifies the necessary condition only.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import linalg


class MissingLambda(ValueError):
    """A smoothing direction does not cover every configured point."""


class WrongLevel(ValueError):
    """Operation requires level k = 1."""


class WrongParity(ValueError):
    """Nodal check requires odd ambient dimension n = 2k + 1."""


class Inconsistent(ValueError):
    """Bookkeeping inputs violate a dimension constraint."""


class BadPartition(ValueError):
    """s' + s'' must equal the number of points."""


@dataclass(frozen=True)
class ObstructionPoint:
    id: str
    c: Fraction
    vector: tuple

    def __init__(self, id, c, vector):
        c = Fraction(c)
        if c == 0:
            raise ValueError("constant c must be nonzero at point %r" % id)
        object.__setattr__(self, "id", str(id))
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "vector", tuple(Fraction(v) for v in vector))


@dataclass(frozen=True)
class ObstructionConfiguration:
    level: int
    dim: int
    points: tuple

    def __init__(self, level, dim, points):
        level = int(level)
        dim = int(dim)
        points = tuple(
            p if isinstance(p, ObstructionPoint) else ObstructionPoint(**p)
            for p in points
        )
        if level < 1:
            raise ValueError("level k must be >= 1")
        if not points:
            raise ValueError("need at least one point")
        if any(len(p.vector) != dim for p in points):
            raise ValueError("every class vector must have length %d" % dim)
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "points", points)

    @classmethod
    def from_json(cls, data):
        """Schema: {"k": 2, "m": 3, "points": [{"id": "x1", "c": "1",
        "class": ["1", "0", "2"]}, ...]}."""
        points = tuple(
            ObstructionPoint(p["id"], Fraction(p.get("c", 1)), [Fraction(v) for v in p["class"]])
            for p in data["points"]
        )
        return cls(data["k"], data["m"], points)

    def to_json(self):
        return {
            "k": self.level,
            "m": self.dim,
            "points": [
                {
                    "id": p.id,
                    "c": str(p.c),
                    "class": [str(v) for v in p.vector],
                }
                for p in self.points
            ],
        }


@dataclass(frozen=True)
class SmoothingDirection:
    """Local parameters per point id.  coordinates is "lambda" for actual
    smoothing parameters, or "mu" when the witness is reported in the
    substituted variables mu_x = c_x lambda_x^k (used when the k-th roots are
    irrational)."""

    values: dict
    coordinates: str = "lambda"

    @property
    def strong(self):
        return all(v != 0 for v in self.values.values())


@dataclass(frozen=True)
class ObstructionReport:
    value: tuple
    satisfiable: bool
    witness: object
    s_prime: int
    s_doubleprime: int


def evaluate(config, direction):
    """sum_x c_x lambda_x^k phi_x, exactly."""
    if direction.coordinates != "lambda":
        raise ValueError("evaluate needs lambda coordinates")
    missing = [p.id for p in config.points if p.id not in direction.values]
    if missing:
        raise MissingLambda("no lambda for points %s" % ", ".join(missing))
    total = [Fraction(0)] * config.dim
    for p in config.points:
        scale = p.c * Fraction(direction.values[p.id]) ** config.level
        for i, v in enumerate(p.vector):
            total[i] += scale * v
    return tuple(total)


def _class_matrix_rows(config, with_constants=False):
    """The class matrix as rows (one per ambient coordinate), columns indexed
    by points."""
    rows = []
    for i in range(config.dim):
        row = {}
        for j, p in enumerate(config.points):
            v = p.vector[i] * (p.c if with_constants else 1)
            if v:
                row[j] = v
        rows.append(row)
    return rows


def kernel_stats(config):
    """(s', s'') = (kernel dimension, rank) of the matrix with columns
    c_x * phi_x.  Always sums to the number of points."""
    t = len(config.points)
    r = linalg.rank(_class_matrix_rows(config, with_constants=True))
    return t - r, r


def kernel_basis(config):
    """Canonical basis of {mu : sum mu_x phi_x = 0}."""
    return linalg.nullspace(_class_matrix_rows(config), len(config.points))


def rational_kth_root(q, k):
    """The rational k-th root of q, or None if it does not exist."""
    q = Fraction(q)
    if k == 1:
        return q
    if q == 0:
        return Fraction(0)
    if q < 0 and k % 2 == 0:
        return None
    sign = -1 if q < 0 else 1
    num, den = abs(q.numerator), q.denominator

    def iroot(v):
        r = round(v ** (1.0 / k))
        for c in (r - 1, r, r + 1):
            if c >= 0 and c**k == v:
                return c
        return None

    rn, rd = iroot(num), iroot(den)
    if rn is None or rd is None:
        return None
    return Fraction(sign * rn, rd)


def _mu_witness(config, basis):
    """Deterministic all-nonzero kernel vector: combine the basis with weights
    (1, t, t^2, ...) for t = 1, 2, ...; only finitely many t are bad."""
    t_count = len(config.points)
    s = len(basis)
    for t in range(1, t_count * max(s - 1, 1) + 2):
        mu = [Fraction(0)] * t_count
        w = Fraction(1)
        for vec in basis:
            for i, v in enumerate(vec):
                mu[i] += w * v
            w *= t
        if all(v != 0 for v in mu):
            return mu
    raise AssertionError("generic combination search must terminate")


def satisfiable_all_nonzero(config):
    """Decide over C whether some all-nonzero (lambda_x) solves
    sum c_x lambda_x^k phi_x = 0; return (decision, witness or None).

    The kernel of the class matrix avoids all coordinate hyperplanes iff it
    is contained in none of them.  The witness comes back in lambda
    coordinates when every k-th root is rational, otherwise in mu
    coordinates.
    """
    basis = kernel_basis(config)
    if not basis:
        return False, None
    for j in range(len(config.points)):
        if all(vec[j] == 0 for vec in basis):
            return False, None
    mu = _mu_witness(config, basis)
    lam = {}
    for p, m in zip(config.points, mu):
        root = rational_kth_root(m / p.c, config.level)
        if root is None or root == 0:
            lam = None
            break
        lam[p.id] = root
    if lam is not None:
        witness = SmoothingDirection(lam)
        assert not any(evaluate(config, witness))
        return True, witness
    return True, SmoothingDirection(
        {p.id: m for p, m in zip(config.points, mu)}, coordinates="mu"
    )


def k1_criterion(config):
    """The level-1 criterion: for k = 1 the all-nonzero relation is necessary
    AND sufficient for a strong first order smoothing.  Returns the same
    decision as satisfiable_all_nonzero; label the result "smoothable
    (strong first order)" when True, "no strong first order smoothing"
    otherwise."""
    if config.level != 1:
        raise WrongLevel("criterion applies at level 1, got %d" % config.level)
    return satisfiable_all_nonzero(config)


def k1_label(decision):
    return "smoothable (strong first order)" if decision else "no strong first order smoothing"


def rt_nodal_check(config, n, direction=None):
    """Nodal specialization in odd dimension n = 2k + 1: evaluate the
    necessary relation for a given direction, or decide its all-nonzero
    satisfiability."""
    if n % 2 == 0:
        raise WrongParity("nodal check needs odd dimension, got n=%d" % n)
    if config.level != (n - 1) // 2:
        raise WrongParity("level %d does not match (n-1)/2 = %d" % (config.level, (n - 1) // 2))
    if direction is not None:
        return not any(evaluate(config, direction))
    ok, _ = satisfiable_all_nonzero(config)
    return ok


def report(config, direction=None):
    """Full obstruction report: evaluated relation (zero when no direction is
    given), satisfiability with witness, and the kernel statistics."""
    s_prime, s_dbl = kernel_stats(config)
    value = (
        evaluate(config, direction)
        if direction is not None
        else tuple([Fraction(0)] * config.dim)
    )
    ok, witness = satisfiable_all_nonzero(config)
    return ObstructionReport(value, ok, witness, s_prime, s_dbl)


@dataclass(frozen=True)
class HodgeBookkeeping:
    """Predicted middle Hodge data of a smoothing Y_t from the graded pieces
    of Y and the kernel statistics of the class map."""

    h_middle_t: int       # dim Gr^(n-k) H^n(Y_t) = h^{n-k,k}(Y_t)
    gr_k_middle: int      # dim Gr^k H^n(Y), forced equal to h_middle_t
    h_above_t: int        # dim Gr^(n-k) H^(n+1)(Y_t)
    five_term_sum: int    # alternating sum of the five-term exact sequence


def smoothing_hodge_bookkeeping(gr_hn_y, gr_hn1_y, s_prime, s_doubleprime):
    """Apply the smoothing relations:

        dim Gr^(n-k) H^n(Y_t)     = dim Gr^(n-k) H^n(Y) + s'
        dim Gr^k     H^n(Y)       = dim Gr^(n-k) H^n(Y) + s'
        dim Gr^(n-k) H^(n+1)(Y_t) = dim Gr^(n-k) H^(n+1)(Y) - s''

    and check the alternating-sum consistency of the five-term sequence
    linking Y, Y_t and the local link classes.
    """
    if min(gr_hn_y, gr_hn1_y, s_prime, s_doubleprime) < 0:
        raise ValueError("inputs must be nonnegative")
    if s_doubleprime > gr_hn1_y:
        raise Inconsistent(
            "rank s''=%d exceeds dim Gr H^(n+1)(Y)=%d" % (s_doubleprime, gr_hn1_y)
        )
    points = s_prime + s_doubleprime
    h_middle_t = gr_hn_y + s_prime
    h_above_t = gr_hn1_y - s_doubleprime
    five = gr_hn_y - h_middle_t + points - gr_hn1_y + h_above_t
    assert five == 0
    return HodgeBookkeeping(h_middle_t, gr_hn_y + s_prime, h_above_t, five)


@dataclass(frozen=True)
class NodalBetti:
    b2_t: int
    b3_t: int
    b4: int
    smoothable: bool  # set when s'' = 0 (the Q-factorial case)


def nodal_threefold_betti(b2_resolution, b3_resolution, s_prime, s_doubleprime, n_points):
    """Betti numbers of a smoothing of a nodal threefold from those of a
    small resolution Y':

        b2(Y_t) = b2(Y) = b2(Y') - s''
        b3(Y_t) = b3(Y') + 2 s'
        b4(Y)   = b4(Y') = b2(Y) + s''

    s'' = 0 forces the smoothable flag (all local classes die, so a strong
    first order smoothing exists).
    """
    if s_prime + s_doubleprime != n_points:
        raise BadPartition(
            "s' + s'' = %d but %d points" % (s_prime + s_doubleprime, n_points)
        )
    b2 = b2_resolution - s_doubleprime
    if b2 < 0:
        raise Inconsistent("s'' exceeds b2 of the resolution")
    return NodalBetti(
        b2_t=b2,
        b3_t=b3_resolution + 2 * s_prime,
        b4=b2 + s_doubleprime,
        smoothable=s_doubleprime == 0,
    )
