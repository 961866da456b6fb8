"""Pure-Python reduced row echelon kernel over Fraction entries.

Reference implementation of the hot kernel; arrangeatlas._echelon_c is the
compiled drop-in with the identical contract. Both must return bit-identical
output (the reduced row echelon form is unique).
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rref(rows, ncols):
    """Gauss-Jordan reduction.

    rows: sequence of length-ncols sequences of Fraction.
    Returns (reduced rows as list of lists, pivot column tuple). The output
    has the same number of rows as the input; non-pivot rows come out all
    zero and sit below the pivot rows.
    """
    m = [list(row) for row in rows]
    nrows = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        p = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                p = i
                break
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        pe = m[r][c]
        if pe != ONE:
            m[r] = [e / pe for e in m[r]]
        mr = m[r]
        for i in range(nrows):
            if i == r:
                continue
            f = m[i][c]
            if f == 0:
                continue
            mi = m[i]
            # mr is zero left of c, so earlier columns are untouched
            for j in range(c, ncols):
                mi[j] -= f * mr[j]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, tuple(pivots)
