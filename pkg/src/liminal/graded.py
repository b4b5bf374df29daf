"""Graded pieces of weighted polynomial rings and of hypersurface quotients.

Monomials of weighted degree m are enumerated in a fixed order (descending
lexicographic on exponent vectors), so every matrix built on these bases is
deterministic.  The quotient (S/f)_m is represented as the cokernel of
multiplication by f, with a basis of non-pivot monomials obtained by row
reduction; f is a nonzerodivisor, so dim (S/f)_m = count(m) - count(m - d).
"""

from fractions import Fraction

from . import linalg
from .weights import WeightSystem, weight_system_from_exponents

# polynomials are dicts {exponent tuple: coefficient}


def poly_mul(p, q):
    out = {}
    for ea, ca in p.items():
        for eb, cb in q.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            c = out.get(e, 0) + ca * cb
            if c:
                out[e] = c
            else:
                out.pop(e, None)
    return out


def poly_add(p, q):
    out = dict(p)
    for e, c in q.items():
        nc = out.get(e, 0) + c
        if nc:
            out[e] = nc
        else:
            out.pop(e, None)
    return out


def poly_scale(p, c):
    if not c:
        return {}
    return {e: c * v for e, v in p.items()}


def poly_diff(p, i):
    out = {}
    for e, c in p.items():
        if e[i]:
            de = list(e)
            de[i] -= 1
            out[tuple(de)] = c * e[i]
    return out


def monomial(nvars, i, power=1, coeff=1):
    e = [0] * nvars
    e[i] = power
    return {tuple(e): coeff}


def diagonal_polynomial(exponents):
    """f = z_1^e_1 + ... + z_{n+1}^e_{n+1} as a polynomial dict."""
    nv = len(exponents)
    out = {}
    for i, e in enumerate(exponents):
        key = [0] * nv
        key[i] = e
        out[tuple(key)] = 1
    return out


def weighted_degree(exp, weights):
    return sum(e * a for e, a in zip(exp, weights))


def poly_degree(p, weights):
    """The common weighted degree of a homogeneous polynomial, or None for 0.
    Raises if p is not homogeneous."""
    degs = {weighted_degree(e, weights) for e in p}
    if not degs:
        return None
    if len(degs) > 1:
        raise ValueError("polynomial is not weighted homogeneous: degrees %s" % sorted(degs))
    return degs.pop()


class GradedRing:
    """Monomial bookkeeping for S = C[z_1..z_{n+1}] with positive weights."""

    def __init__(self, weights):
        self.weights = tuple(int(a) for a in weights)
        self.nvars = len(self.weights)
        self._counts = {}
        self._bases = {}

    def count(self, m):
        """Number of monomials of weighted degree m (0 for m < 0)."""
        if m < 0:
            return 0
        key = self._counts.get(m)
        if key is not None:
            return key
        # bounded DP over the variables
        table = [0] * (m + 1)
        table[0] = 1
        for a in self.weights:
            for deg in range(a, m + 1):
                table[deg] += table[deg - a]
        for deg, c in enumerate(table):
            self._counts.setdefault(deg, c)
        return table[m]

    def monomials(self, m):
        """All exponent tuples of weighted degree m, descending lex."""
        if m < 0:
            return ()
        cached = self._bases.get(m)
        if cached is not None:
            return cached
        out = []
        exp = [0] * self.nvars

        def rec(i, rem):
            if i == self.nvars - 1:
                a = self.weights[i]
                if rem % a == 0:
                    exp[i] = rem // a
                    out.append(tuple(exp))
                    exp[i] = 0
                return
            a = self.weights[i]
            for e in range(rem // a, -1, -1):
                exp[i] = e
                rec(i + 1, rem - e * a)
            exp[i] = 0

        rec(0, m)
        out = tuple(out)
        assert len(out) == self.count(m)
        self._bases[m] = out
        return out

    def index(self, m):
        """Monomial -> position map for degree m."""
        return {e: i for i, e in enumerate(self.monomials(m))}


class QuotientPiece:
    """The degree-m piece of S/(f), presented on a monomial basis.

    Attributes:
        degree        the graded degree m
        full_basis    monomials of S_m
        basis         monomials spanning (S/f)_m (non-pivot columns)
        dim           len(basis)
        image_rank    rank of multiplication by f into S_m
    """

    def __init__(self, ring, f, m, d):
        self.degree = m
        self.full_basis = ring.monomials(m)
        index = {e: i for i, e in enumerate(self.full_basis)}
        rows = []
        for beta in ring.monomials(m - d):
            vec = {}
            for fe, fc in f.items():
                e = tuple(x + y for x, y in zip(beta, fe))
                vec[index[e]] = vec.get(index[e], 0) + fc
            rows.append({c: v for c, v in vec.items() if v})
        self._red, self._pivots = linalg.rref(rows)
        self.image_rank = len(self._pivots)
        assert self.image_rank == ring.count(m - d), "f must be a nonzerodivisor"
        piv = set(self._pivots)
        self.basis = tuple(e for i, e in enumerate(self.full_basis) if i not in piv)
        self._basis_pos = {i: j for j, i in enumerate(
            i for i in range(len(self.full_basis)) if i not in piv)}
        self.dim = len(self.basis)
        self._index = index

    def reduce(self, p):
        """Image of a homogeneous degree-m polynomial in (S/f)_m, as a sparse
        dict {basis position: Fraction}."""
        vec = {}
        for e, c in p.items():
            i = self._index.get(e)
            if i is None:
                raise ValueError("monomial %r does not have degree %d" % (e, self.degree))
            vec[i] = vec.get(i, 0) + Fraction(c)
        vec = {i: c for i, c in vec.items() if c}
        res = linalg.reduce_against(vec, self._red, self._pivots)
        return {self._basis_pos[i]: c for i, c in res.items()}


class Hypersurface:
    """A quasi-smooth hypersurface E = {f = 0} of degree d in the weighted
    projective stack with the given weights.

    f defaults to the diagonal polynomial when every exponent d/a_i is an
    integer >= 2 (that realization is automatically quasi-smooth).  A general
    weighted homogeneous f of degree d may be supplied; quasi-smoothness is
    then the caller's responsibility.
    """

    def __init__(self, ws, f=None):
        if not isinstance(ws, WeightSystem):
            ws = WeightSystem(*ws)
        self.ws = ws
        self.ring = GradedRing(ws.weights)
        d = ws.degree
        self.exponents = None
        if f is None:
            if any(d % a or d // a < 2 for a in ws.weights):
                raise ValueError(
                    "no diagonal member exists for %r; supply f explicitly" % (ws,)
                )
            self.exponents = tuple(d // a for a in ws.weights)
            f = diagonal_polynomial(self.exponents)
        else:
            f = {tuple(e): Fraction(c) for e, c in f.items() if c}
            if not f:
                raise ValueError("f must be nonzero")
            if poly_degree(f, ws.weights) != d:
                raise ValueError("f must be weighted homogeneous of degree %d" % d)
        self.f = f
        self.diagonal = self.exponents is not None
        self._pieces = {}
        self._jacobian = None

    @classmethod
    def from_exponents(cls, exponents):
        return cls(weight_system_from_exponents(exponents))

    @property
    def n(self):
        """Dimension of the ambient weighted projective space."""
        return self.ws.n

    @property
    def degree(self):
        return self.ws.degree

    @property
    def weight_total(self):
        return sum(self.ws.weights)

    @property
    def canonical_twist(self):
        """K_E = O_E(d - sum a_i)."""
        return self.degree - self.weight_total

    @property
    def jacobian(self):
        """The partials (df/dz_1, ..., df/dz_{n+1})."""
        if self._jacobian is None:
            self._jacobian = tuple(poly_diff(self.f, i) for i in range(self.ring.nvars))
        return self._jacobian

    def quotient(self, m):
        piece = self._pieces.get(m)
        if piece is None:
            piece = QuotientPiece(self.ring, self.f, m, self.degree)
            self._pieces[m] = piece
        return piece

    def quotient_dim(self, m):
        """dim (S/f)_m without building a basis."""
        return self.ring.count(m) - self.ring.count(m - self.degree)

    def is_multiple_of_f(self, p):
        """Exact test that a homogeneous polynomial lies in (f)."""
        if not p:
            return True
        m = poly_degree(p, self.ws.weights)
        return not self.quotient(m).reduce(p)
