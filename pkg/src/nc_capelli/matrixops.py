"""Matrices over any ring satisfying the ring contract.

Provides the column determinant (both permutation expansion and Laplace
recursion), decomplexification, the CorrTriDiag correction blocks and
the multi-index machinery used by the rectangular identities.
"""

from __future__ import annotations

from itertools import combinations

from .scalars import C_HALF, C_I_QUARTER, C_QUARTER, Coefficient

# -1/(2i) * ... : Im(m) = (m - bar m)/(2i) = (m - bar m) * (-i/2)
_MINUS_I_HALF = Coefficient.from_rational(-1, 2) * Coefficient.i()


class RingMatrix:
    """Dense row-major matrix over a single ring instance."""

    def __init__(self, ring, entries):
        self.ring = ring
        self.entries = [list(row) for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")

    def __getitem__(self, pos):
        i, j = pos
        return self.entries[i][j]

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        return RingMatrix(
            self.ring,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def __sub__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        return RingMatrix(
            self.ring,
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def __repr__(self):
        return f"<RingMatrix {self.rows}x{self.cols} over {self.ring.name}>"


def matrix(ring, entries):
    return RingMatrix(ring, entries)


def identity(ring, n):
    return RingMatrix(
        ring,
        [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)],
    )


def diag(ring, values):
    n = len(values)
    return RingMatrix(
        ring,
        [[values[i] if i == j else ring.zero for j in range(n)] for i in range(n)],
    )


def transpose(M):
    return RingMatrix(
        M.ring, [[M.entries[i][j] for i in range(M.rows)] for j in range(M.cols)]
    )


def matmul(A, B):
    """Matrix product; entry products multiply A-entry on the left."""
    if A.cols != B.rows:
        raise ValueError("dimension mismatch")
    zero = A.ring.zero
    out = []
    for i in range(A.rows):
        row = []
        for j in range(B.cols):
            acc = zero
            for k in range(A.cols):
                acc = acc + A.entries[i][k] * B.entries[k][j]
            row.append(acc)
        out.append(row)
    return RingMatrix(A.ring, out)


def scale(M, c):
    return RingMatrix(M.ring, [[e.scale(c) for e in row] for row in M.entries])


def coldet(M):
    """Column determinant: sum over permutations sigma of
    sgn(sigma) * M[sigma(1),1] * M[sigma(2),2] * ... with the products
    taken column by column, left to right.

    Implemented as a depth-first permutation expansion over columns with
    shared prefix products; accumulation order is deterministic.
    """
    if M.rows != M.cols:
        raise ValueError("coldet requires a square matrix")
    n = M.rows
    ring = M.ring
    if n == 0:
        return ring.one
    entries = M.entries
    total = [ring.zero]

    def walk(col, used, acc, sign):
        if col == n:
            total[0] = total[0] + (acc if sign > 0 else -acc)
            return
        for row in range(n):
            bit = 1 << row
            if used & bit:
                continue
            e = entries[row][col]
            if e.is_zero():
                continue
            # parity flips once per already-used row above this one
            flips = bin(used >> (row + 1)).count("1")
            walk(col + 1, used | bit, acc * e, -sign if flips & 1 else sign)

    walk(0, 0, ring.one, 1)
    return total[0]


def coldet_laplace(M):
    """Column determinant via recursive expansion along the first column
    (memoized on the surviving row set); must agree with coldet."""
    if M.rows != M.cols:
        raise ValueError("coldet requires a square matrix")
    n = M.rows
    ring = M.ring
    entries = M.entries
    memo = {}

    def minor(rows):
        # rows: tuple of surviving row indices; column = n - len(rows)
        if not rows:
            return ring.one
        cached = memo.get(rows)
        if cached is not None:
            return cached
        col = n - len(rows)
        acc = ring.zero
        for pos, row in enumerate(rows):
            e = entries[row][col]
            if e.is_zero():
                continue
            sub = e * minor(rows[:pos] + rows[pos + 1 :])
            acc = acc + sub if pos % 2 == 0 else acc - sub
        memo[rows] = acc
        return acc

    return minor(tuple(range(n)))


def re_part(m):
    return (m + m.bar()).scale(C_HALF)


def im_part(m):
    return (m - m.bar()).scale(_MINUS_I_HALF)


def decomplexify(M):
    """Real form M^R: each entry m becomes the 2x2 block
    [[Re m, Im m], [-Im m, Re m]]."""
    if not M.ring.has_bar:
        raise TypeError("decomplexify requires a ring with bar")
    out = [[None] * (2 * M.cols) for _ in range(2 * M.rows)]
    for i in range(M.rows):
        for j in range(M.cols):
            m = M.entries[i][j]
            r = re_part(m)
            s = im_part(m)
            out[2 * i][2 * j] = r
            out[2 * i][2 * j + 1] = s
            out[2 * i + 1][2 * j] = -s
            out[2 * i + 1][2 * j + 1] = r
    return RingMatrix(M.ring, out)


def corr_tridiag(ring, ds, sign="plus"):
    """The 2x2-block-diagonal correction of the main theorem:
    k-th block [[d_k + 1/4, ±i/4], [±i/4, d_k - 1/4]], blocks listed in
    the displayed order d_n, d_(n-1), ..., d_1 (``ds`` is that list)."""
    if sign not in ("plus", "minus"):
        raise ValueError("sign must be 'plus' or 'minus'")
    ioff = C_I_QUARTER if sign == "plus" else -C_I_QUARTER
    n = len(ds)
    out = [[ring.zero] * (2 * n) for _ in range(2 * n)]
    for k, d in enumerate(ds):
        if not isinstance(d, Coefficient):
            d = Coefficient.from_rational(d)
        out[2 * k][2 * k] = ring.from_coefficient(d + C_QUARTER)
        out[2 * k][2 * k + 1] = ring.from_coefficient(ioff)
        out[2 * k + 1][2 * k] = ring.from_coefficient(ioff)
        out[2 * k + 1][2 * k + 1] = ring.from_coefficient(d - C_QUARTER)
    return RingMatrix(ring, out)


def submatrix(M, I, J):
    """Rows I, columns J (1-based strictly increasing multi-indexes)."""
    for i in I:
        if not 1 <= i <= M.rows:
            raise IndexError(f"row index {i} out of bounds")
    for j in J:
        if not 1 <= j <= M.cols:
            raise IndexError(f"column index {j} out of bounds")
    return RingMatrix(
        M.ring, [[M.entries[i - 1][j - 1] for j in J] for i in I]
    )


def double_index(I):
    """double(I) = (2i-1, 2i : i in I): selects the complex blocks of M^R."""
    out = []
    for i in I:
        out.extend((2 * i - 1, 2 * i))
    return tuple(out)


def multi_indexes(n, r):
    """All strictly increasing 1-based multi-indexes of length r in 1..n."""
    return [tuple(c) for c in combinations(range(1, n + 1), r)]
