"""Exact linear algebra over the rationals.

Matrices are kept as sparse integer rows (dict column -> int) and reduced by
fraction-free Gaussian elimination: row combinations use integer cross
multiplication and each row is stripped of its content, so no floating point
and no rounding ever enters.  The reduced row echelon form is unique, which
makes every downstream quantity (ranks, kernels, quotient bases) fully
deterministic.
"""

from fractions import Fraction
from math import gcd


def sparse_rows(dense):
    """Convert a dense list-of-lists matrix to sparse integer rows."""
    rows = []
    for r in dense:
        rows.append({j: v for j, v in enumerate(r) if v != 0})
    return rows


def to_dense(rows, ncols):
    out = []
    for r in rows:
        d = [Fraction(0)] * ncols
        for j, v in r.items():
            d[j] = Fraction(v)
        out.append(d)
    return out


def _integerize(row):
    """Scale a sparse row to coprime integer entries (sign preserved)."""
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    out = {}
    g = 0
    for c, v in row.items():
        iv = int(v * den) if den != 1 else int(v)
        if iv:
            out[c] = iv
            g = gcd(g, abs(iv))
    if out and g > 1:
        out = {c: v // g for c, v in out.items()}
    return out


def _combine(row, pivot_row, col):
    """Return row with column col eliminated against pivot_row, integer
    fraction-free: new = a*row - b*pivot_row where a, b cancel col."""
    a, b = pivot_row[col], row[col]
    g = gcd(a, b)
    fa, fb = a // g, b // g
    new = {c: fa * v for c, v in row.items()}
    for c, v in pivot_row.items():
        w = new.get(c, 0) - fb * v
        if w:
            new[c] = w
        else:
            new.pop(c, None)
    if new:
        g2 = 0
        for v in new.values():
            g2 = gcd(g2, abs(v))
        if g2 > 1:
            new = {c: v // g2 for c, v in new.items()}
    return new


def echelon(rows):
    """Forward-eliminate sparse rows.

    Returns a dict pivot_column -> integer row.  Input rows may have Fraction
    entries; they are integerized first.
    """
    pivots = {}
    for r in rows:
        r = _integerize(r)
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                pivots[c] = r
                break
            r = _combine(r, p, c)
    return pivots


def rank(rows):
    """Exact rank of a sparse (or Fraction-valued) row matrix."""
    return len(echelon(rows))


def rref(rows):
    """Unique reduced row echelon form.

    Returns (rows, pivot_cols) where rows is a list of dicts with Fraction
    values, pivot entries normalized to 1, sorted by pivot column.
    """
    piv = echelon(rows)
    cols = sorted(piv)
    # eliminate every pivot column from the rows above it, bottom-up
    for c in reversed(cols):
        p = piv[c]
        for c2 in cols:
            if c2 >= c:
                break
            r = piv[c2]
            if c in r:
                piv[c2] = _combine(r, p, c)
    out = []
    for c in cols:
        r = piv[c]
        lead = r[c]
        out.append({j: Fraction(v, lead) for j, v in r.items()})
    return out, cols


def nullspace(rows, ncols):
    """Canonical kernel basis of the matrix (as a map Q^ncols -> Q^nrows).

    One basis vector per free column: entry 1 at the free column, pivot
    columns filled from the RREF.  Vectors are returned as dense Fraction
    lists, ordered by free column.
    """
    red, piv_cols = rref(rows)
    piv_set = set(piv_cols)
    basis = []
    for free in range(ncols):
        if free in piv_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, pc in zip(red, piv_cols):
            coeff = row.get(free)
            if coeff is not None:
                v[pc] = -coeff
        basis.append(v)
    return basis


def reduce_against(vec, red_rows, piv_cols):
    """Reduce a sparse Fraction vector modulo the row space given by an RREF.

    Returns the residue as a sparse dict supported on non-pivot columns.
    """
    v = {c: Fraction(x) for c, x in vec.items() if x != 0}
    for row, pc in zip(red_rows, piv_cols):
        coeff = v.get(pc)
        if coeff:
            for c, w in row.items():
                nw = v.get(c, Fraction(0)) - coeff * w
                if nw:
                    v[c] = nw
                else:
                    v.pop(c, None)
    return v
