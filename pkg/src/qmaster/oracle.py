"""Commutative specialization and the classical Master Theorem.

Sending the biletter (x;a) to t * m[x][a] for a scalar matrix m kills both
commutation relations, so every identity of the quantum algebra maps to
an identity of truncated power series in t with rational coefficients.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .algebra import Element
from .series import bos, ferm


class ScalarMatrix:
    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[Sequence]):
        rows = [[Fraction(v) for v in row] for row in entries]
        if any(len(row) != len(rows) for row in rows):
            raise ValueError("matrix is not square")
        self.entries = rows

    @property
    def r(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i - 1][j - 1]

    def __eq__(self, other) -> bool:
        return isinstance(other, ScalarMatrix) and self.entries == other.entries

    def __repr__(self) -> str:
        return f"ScalarMatrix({[[str(v) for v in row] for row in self.entries]})"

    @classmethod
    def identity(cls, r: int) -> ScalarMatrix:
        return cls([[int(i == j) for j in range(r)] for i in range(r)])

    @classmethod
    def ones(cls, r: int) -> ScalarMatrix:
        return cls([[1] * r for _ in range(r)])

    @classmethod
    def random(cls, r: int, seed: int = 42, lo: int = -3, hi: int = 3) -> ScalarMatrix:
        """Integer entries drawn row-major with ``random.Random(seed).randint(lo, hi)``."""
        rng = random.Random(seed)
        return cls([[rng.randint(lo, hi) for _ in range(r)] for _ in range(r)])

    def to_dict(self) -> dict:
        return {"r": self.r, "entries": [[str(v) for v in row] for row in self.entries]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d) -> ScalarMatrix:
        m = cls([[Fraction(v) for v in row] for row in d["entries"]])
        if m.r != int(d["r"]):
            raise ValueError(f"declared size {d['r']} does not match entries")
        return m

    @classmethod
    def from_json(cls, s: str) -> ScalarMatrix:
        return cls.from_dict(json.loads(s))


@dataclass(frozen=True)
class TruncatedPolynomial:
    """c_0 + c_1 t + ... + c_N t^N with exact rational coefficients."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def n_max(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def one(cls, n_max: int) -> TruncatedPolynomial:
        return cls((1,) + (0,) * n_max)

    def __mul__(self, other: TruncatedPolynomial) -> TruncatedPolynomial:
        n = min(self.n_max, other.n_max)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a:
                for j, b in enumerate(other.coeffs[: n + 1 - i]):
                    out[i + j] += a * b
        return TruncatedPolynomial(tuple(out))

    def __add__(self, other: TruncatedPolynomial) -> TruncatedPolynomial:
        n = min(self.n_max, other.n_max)
        return TruncatedPolynomial(tuple(self.coeffs[k] + other.coeffs[k] for k in range(n + 1)))

    def __sub__(self, other: TruncatedPolynomial) -> TruncatedPolynomial:
        n = min(self.n_max, other.n_max)
        return TruncatedPolynomial(tuple(self.coeffs[k] - other.coeffs[k] for k in range(n + 1)))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_list(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def abelianize(e: Element, m: ScalarMatrix, n_max: int) -> TruncatedPolynomial:
    """Image of ``e`` under (u;w) -> prod_k m[u_k][w_k] t^|w|, truncated."""
    if e.r != m.r:
        raise ValueError(f"alphabet size {e.r} does not match matrix size {m.r}")
    rows = m.entries
    integral = all(v.denominator == 1 for row in rows for v in row)
    ent = [[int(v) for v in row] for row in rows] if integral else rows
    out = [0] * (n_max + 1)
    for b, c in e._terms.items():
        n = len(b.top)
        if n > n_max:
            continue
        v = c
        for x, a in zip(b.top, b.bottom):
            v *= ent[x - 1][a - 1]
            if not v:
                break
        out[n] += v
    return TruncatedPolynomial(tuple(out))


def scalar_det(rows: list[list[Fraction]]) -> Fraction:
    """Determinant by Gaussian elimination over the rationals."""
    a = [list(map(Fraction, row)) for row in rows]
    n = len(a)
    d = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k]), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            d = -d
        d *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return d


def classical_ferm(m: ScalarMatrix, n_max: int) -> TruncatedPolynomial:
    """det(I - tM), via sums of principal minors: coefficient of t^k is (-1)^k e_k(M)."""
    r = m.r
    out = [Fraction(0)] * (n_max + 1)
    for k in range(min(r, n_max) + 1):
        e_k = Fraction(0)
        for idx in combinations(range(r), k):
            e_k += scalar_det([[m.entries[i][j] for j in idx] for i in idx])
        out[k] = (-1) ** k * e_k
    return TruncatedPolynomial(tuple(out))


def verify_classical_mmt(r: int, n_max: int, seed: int = 42, matrix: ScalarMatrix | None = None) -> dict:
    """Check ferm image times bos image equals 1 through t^n_max.

    Also checks the ferm image against det(I - tM).  Returns a JSON-ready
    report with ``pass`` set.
    """
    m = matrix if matrix is not None else ScalarMatrix.random(r, seed)
    f = abelianize(ferm(r), m, n_max)
    b = abelianize(bos(r, n_max), m, n_max)
    prod = f * b
    direct = classical_ferm(m, n_max)
    one = TruncatedPolynomial.one(n_max)
    checks = {
        "product_is_one": prod == one,
        "ferm_matches_det": f == direct,
    }
    return {
        "claim": "classical_mmt",
        "r": r,
        "N": n_max,
        "seed": seed,
        "pass": all(checks.values()),
        "checks": checks,
        "matrix": m.to_dict(),
        "ferm": f.to_list(),
        "det_I_minus_tM": direct.to_list(),
        "bos": b.to_list(),
        "product": prod.to_list(),
    }
