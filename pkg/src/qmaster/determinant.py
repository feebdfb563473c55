"""Column-ordered determinants of matrices with noncommuting entries.

    det(A) = sum over sigma of (-1)^inv(sigma) a[sigma(1),1] a[sigma(2),2] ... a[sigma(n),n]

The factors are multiplied in column order.  Row and column indices in
the public functions are 1-based.
"""

from __future__ import annotations

import json
import random
from itertools import permutations
from typing import Sequence

from .algebra import Biword, Element, inversions, mul_trunc
from .series import s_i


class SquareMatrix:
    """An n x n array of Elements over a common alphabet of size ``r``.

    ``n`` and ``r`` are independent: a minor of an r x r matrix keeps the
    alphabet of its parent.
    """

    __slots__ = ("r", "rows")

    def __init__(self, rows: Sequence[Sequence[Element]], r: int | None = None):
        rows = [list(row) for row in rows]
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix is not square")
        alphabets = {e.r for row in rows for e in row}
        if r is None:
            if len(alphabets) != 1:
                raise ValueError(f"cannot infer a single alphabet from {sorted(alphabets)}")
            r = alphabets.pop()
        elif alphabets - {r}:
            raise ValueError(f"entries use alphabets {sorted(alphabets)}, expected {r}")
        self.r = r
        self.rows = rows

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij) -> Element:
        i, j = ij
        return self.rows[i - 1][j - 1]

    def __eq__(self, other) -> bool:
        return isinstance(other, SquareMatrix) and self.r == other.r and self.rows == other.rows

    def __repr__(self) -> str:
        return f"SquareMatrix(n={self.n}, r={self.r})"

    def column(self, j: int) -> list[Element]:
        return [row[j - 1] for row in self.rows]

    def with_column(self, j: int, col: Sequence[Element]) -> SquareMatrix:
        if len(col) != self.n:
            raise ValueError("column length mismatch")
        rows = [list(row) for row in self.rows]
        for i, e in enumerate(col):
            rows[i][j - 1] = e
        return SquareMatrix(rows, self.r)

    def swap_columns(self, j: int, k: int) -> SquareMatrix:
        cj, ck = self.column(j), self.column(k)
        return self.with_column(j, ck).with_column(k, cj)

    def to_json(self) -> str:
        return json.dumps([[e.to_dict() for e in row] for row in self.rows], separators=(",", ":"))

    @classmethod
    def from_json(cls, s: str, r: int | None = None) -> SquareMatrix:
        data = json.loads(s)
        return cls([[Element.from_dict(d) for d in row] for row in data], r)


def identity_matrix(r: int, n: int | None = None) -> SquareMatrix:
    n = r if n is None else n
    return SquareMatrix([[Element.one(r) if i == j else Element.zero(r) for j in range(n)]
                         for i in range(n)], r)


def det(a: SquareMatrix, n_max: int | None = None) -> Element:
    """Noncommutative determinant; every partial product is truncated at n_max."""
    n = a.n
    total = Element.zero(a.r)
    for sigma in permutations(range(n)):
        term = Element.one(a.r) if n_max is None else Element.one(a.r).truncate(n_max)
        for col, row in enumerate(sigma):
            term = mul_trunc(term, a.rows[row][col], n_max)
            if not term:
                break
        if term:
            total = total + term if inversions(sigma) % 2 == 0 else total - term
    return total


def minor(a: SquareMatrix, i: int, j: int) -> SquareMatrix:
    """Delete row i and column j."""
    if not (1 <= i <= a.n and 1 <= j <= a.n):
        raise IndexError(f"({i}, {j}) outside a {a.n}x{a.n} matrix")
    rows = [[e for c, e in enumerate(row, 1) if c != j]
            for k, row in enumerate(a.rows, 1) if k != i]
    return SquareMatrix(rows, a.r)


def cofactor_terms(a: SquareMatrix, n_max: int | None = None) -> list[Element]:
    """The summands (-1)^(n+i) det(A_in) a_in of the rightmost-column expansion."""
    n = a.n
    out = []
    for i in range(1, n + 1):
        t = mul_trunc(det(minor(a, i, n), n_max), a[i, n], n_max)
        out.append(t if (n + i) % 2 == 0 else -t)
    return out


def cofactor_rightmost(a: SquareMatrix, n_max: int | None = None) -> Element:
    if a.n == 0:
        return Element.one(a.r)
    total = Element.zero(a.r)
    for t in cofactor_terms(a, n_max):
        total = total + t
    return total


def _bl(r, i, j) -> Element:
    return Element._raw(r, {Biword((i,), (j,)): 1})


def b_matrix(r: int) -> SquareMatrix:
    """The matrix whose (i, j) entry is the biletter (i;j)."""
    if r < 1:
        raise ValueError(f"alphabet size must be >= 1, got {r}")
    return SquareMatrix([[_bl(r, i, j) for j in range(1, r + 1)] for i in range(1, r + 1)], r)


def fermion_matrix(r: int) -> SquareMatrix:
    """Identity minus b_matrix(r)."""
    b = b_matrix(r)
    return SquareMatrix([[(1 if i == j else 0) - b[i, j] for j in range(1, r + 1)]
                         for i in range(1, r + 1)], r)


def duplicate_column_matrix(r: int, i: int) -> SquareMatrix:
    """fermion_matrix(r) with its last column overwritten by column i."""
    if not 1 <= i <= r - 1:
        raise ValueError(f"column {i} outside 1..{r - 1}")
    f = fermion_matrix(r)
    return f.with_column(r, f.column(i))


def m_matrix(r: int) -> SquareMatrix:
    """fermion_matrix(r) with all other columns added into the last one.

    The last column becomes 1 - S_i in row i.
    """
    f = fermion_matrix(r)
    return f.with_column(r, [1 - s_i(r, i) for i in range(1, r + 1)])


def special_pair_matrix(r, j, x, y, a, b, c, filler: SquareMatrix | None = None) -> SquareMatrix:
    """Matrix with columns j, j+1 equal to a_i + b_i (i;x) and c_i + b_i (i;y).

    The remaining columns are copied from ``filler`` (fermion_matrix(r)
    when omitted).  ``a``, ``b``, ``c`` are integer sequences of length r.
    """
    if x == y:
        raise ValueError("x and y must differ")
    if not 1 <= j <= r - 1:
        raise ValueError(f"column {j} outside 1..{r - 1}")
    if not (1 <= x <= r and 1 <= y <= r):
        raise ValueError("x, y must be letters")
    if not len(a) == len(b) == len(c) == r:
        raise ValueError("scalar vectors must have length r")
    base = filler if filler is not None else fermion_matrix(r)
    if base.n != r or base.r != r:
        raise ValueError("filler must be r x r over alphabet r")
    left = [a[i - 1] + b[i - 1] * _bl(r, i, x) for i in range(1, r + 1)]
    right = [c[i - 1] + b[i - 1] * _bl(r, i, y) for i in range(1, r + 1)]
    return base.with_column(j, left).with_column(j + 1, right)


# -- random instances ------------------------------------------------------------

def random_linear_entry(rng: random.Random, r: int, lo: int = -3, hi: int = 3,
                        density: float = 0.5) -> Element:
    """Scalar plus a random integer combination of biletters."""
    terms = {Biword((), ()): rng.randint(lo, hi)}
    for x in range(1, r + 1):
        for a in range(1, r + 1):
            if rng.random() < density:
                terms[Biword((x,), (a,))] = rng.randint(lo, hi)
    return Element(r, terms)


def random_matrix(rng: random.Random, r: int, n: int | None = None, **kw) -> SquareMatrix:
    n = r if n is None else n
    return SquareMatrix([[random_linear_entry(rng, r, **kw) for _ in range(n)] for _ in range(n)], r)


def random_special_pair(rng: random.Random, r: int, lo: int = -3, hi: int = 3):
    """A random special-shape matrix and the matrix with its pair of columns swapped."""
    j = rng.randint(1, r - 1)
    x, y = rng.sample(range(1, r + 1), 2)
    a = [rng.randint(lo, hi) for _ in range(r)]
    b = [rng.randint(lo, hi) for _ in range(r)]
    c = [rng.randint(lo, hi) for _ in range(r)]
    filler = random_matrix(rng, r, lo=lo, hi=hi)
    m = special_pair_matrix(r, j, x, y, a, b, c, filler)
    return m, m.swap_columns(j, j + 1), (j, x, y, a, b, c)
