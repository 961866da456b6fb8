# cython: language_level=3
"""Compiled reduced row echelon kernel.

Same contract as arrangeatlas._echelon_py.rref, but eliminates with
fraction-free integer row operations (one gcd per row update instead of one
per entry) and builds Fraction objects only once, at the end. Entries stay
exact arbitrary-precision Python ints throughout.
"""

from fractions import Fraction
from math import gcd

ZERO = Fraction(0)


cdef list _integer_row(object row):
    # scale a Fraction row to a primitive integer row
    cdef object lcm = 1
    cdef object den
    for e in row:
        den = e.denominator
        if den != 1:
            lcm = lcm // gcd(lcm, den) * den
    return [e.numerator * (lcm // e.denominator) for e in row]


cdef void _reduce_row(list row, Py_ssize_t ncols):
    # divide out the content of an integer row, in place
    cdef object g = 0
    cdef Py_ssize_t j
    for j in range(ncols):
        if row[j]:
            g = gcd(g, row[j])
            if g == 1:
                return
    if g in (0, 1):
        return
    for j in range(ncols):
        row[j] //= g


def rref(rows, Py_ssize_t ncols):
    """Reduced row echelon form of a Fraction matrix; see _echelon_py.rref."""
    cdef list m = [_integer_row(row) for row in rows]
    cdef Py_ssize_t nrows = len(m)
    cdef list pivots = []
    cdef Py_ssize_t r = 0, c, i, j, p
    cdef list mr, mi
    cdef object pe, f
    for c in range(ncols):
        p = -1
        for i in range(r, nrows):
            if (<list>m[i])[c]:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        mr = <list>m[r]
        pe = mr[c]
        for i in range(nrows):
            if i == r:
                continue
            mi = <list>m[i]
            f = mi[c]
            if not f:
                continue
            # row_i := pe*row_i - f*row_r zeroes column c; mr is zero left
            # of c only for j >= c, earlier entries just pick up the factor
            for j in range(ncols):
                mi[j] = pe * mi[j] - f * mr[j]
            _reduce_row(mi, ncols)
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    out = []
    for i in range(nrows):
        if i < r:
            mi = <list>m[i]
            pe = mi[pivots[i]]
            out.append([Fraction(e, pe) for e in mi])
        else:
            out.append([ZERO] * ncols)
    return out, tuple(pivots)
