"""Truncated Boson, Fermion, Universe and the row sums S_i, K_i."""

from __future__ import annotations

from itertools import permutations

from .algebra import Biword, Element, all_words, inversions, mul_trunc


def _check_letter(r: int, i: int) -> None:
    if r < 1:
        raise ValueError(f"alphabet size must be >= 1, got {r}")
    if not 1 <= i <= r:
        raise ValueError(f"letter {i} outside 1..{r}")


def s_i(r: int, i: int) -> Element:
    """Sum of the r biletters with top letter i."""
    _check_letter(r, i)
    return Element(r, {Biword((i,), (a,)): 1 for a in range(1, r + 1)})


def k_i(r: int, i: int, n_max: int) -> Element:
    """Geometric series of s_i, degrees 0..n_max."""
    _check_letter(r, i)
    s = s_i(r, i)
    out = Element.one(r)
    power = Element.one(r)
    for _ in range(n_max):
        power = mul_trunc(power, s, n_max)
        out = out + power
    return out


def bos(r: int, n_max: int) -> Element:
    """Sum over words w with |w| <= n_max of the biword (sorted(w); w)."""
    terms = {}
    for n in range(n_max + 1):
        for w in all_words(r, n):
            terms[Biword(tuple(sorted(w)), w)] = 1
    return Element._raw(r, terms)


def ferm(r: int) -> Element:
    """Signed sum over subsets J of 1..r and permutations sigma of J.

    The term for (J, sigma) has top word sigma(i_1)...sigma(i_l) over the
    bottom word i_1...i_l and sign (-1)^(|J| + inv sigma).  Subsets are
    taken in binary-mask order, permutations lexicographically.
    """
    if r < 1:
        raise ValueError(f"alphabet size must be >= 1, got {r}")
    terms = {}
    for mask in range(1 << r):
        j = tuple(i + 1 for i in range(r) if mask >> i & 1)
        for top in permutations(j):
            sign = (-1) ** (len(j) + inversions(top))
            terms[Biword(top, j)] = sign
    return Element._raw(r, terms)


def nondecreasing_words(r: int, n: int):
    """Nondecreasing words of length n over 1..r, lexicographic."""
    if n == 0:
        yield ()
        return
    for w in nondecreasing_words(r, n - 1):
        for x in range(w[-1] if w else 1, r + 1):
            yield w + (x,)


def univ(r: int, n_max: int) -> Element:
    """Sum of all biwords of length <= n_max with nondecreasing top word."""
    terms = {}
    for n in range(n_max + 1):
        bottoms = list(all_words(r, n))
        for u in nondecreasing_words(r, n):
            for w in bottoms:
                terms[Biword(u, w)] = 1
    return Element._raw(r, terms)
