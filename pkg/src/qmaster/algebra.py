"""Biwords and the free biword algebra over the integers.

A biword is a pair of equal-length words over the alphabet {1, ..., r}.
An :class:`Element` is a finite integer combination of biwords; the
product is concatenation extended bilinearly.  Infinite sums are never
represented: callers pass an explicit truncation degree to
:func:`mul_trunc`.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

Word = tuple[int, ...]


class AlphabetError(ValueError):
    """Raised when letters fall outside 1..r or alphabets are mixed."""


class Biword(NamedTuple):
    top: Word
    bottom: Word

    def __mul__(self, other):  # type: ignore[override]
        return concat(self, other)

    def __repr__(self) -> str:
        return f"Biword({format_word(self.top)}/{format_word(self.bottom)})"


UNIT = Biword((), ())


def biword(top: Sequence[int] | str, bottom: Sequence[int] | str) -> Biword:
    """Build a biword; string arguments are read digit by digit."""
    t = tuple(int(c) for c in top)
    b = tuple(int(c) for c in bottom)
    if len(t) != len(b):
        raise ValueError(f"top and bottom lengths differ: {t} / {b}")
    return Biword(t, b)


def sort_key(b: Biword):
    """Canonical order: length, then top word, then bottom word."""
    return (len(b.top), b.top, b.bottom)


def concat(a: Biword, b: Biword) -> Biword:
    return Biword(a.top + b.top, a.bottom + b.bottom)


def content(w: Sequence[int], r: int) -> tuple[int, ...]:
    """Letter multiplicities of ``w`` as a length-r vector."""
    counts = [0] * r
    for x in w:
        if not 1 <= x <= r:
            raise AlphabetError(f"letter {x} outside 1..{r}")
        counts[x - 1] += 1
    return tuple(counts)


def is_circuit(b: Biword) -> bool:
    return sorted(b.top) == sorted(b.bottom)


def nondecreasing_rearrangement(w: Sequence[int]) -> Word:
    return tuple(sorted(w))


def inversions(s: Sequence[int]) -> int:
    """Number of pairs i < j with s[i] > s[j]; entries must be distinct."""
    if len(set(s)) != len(s):
        raise ValueError(f"entries are not distinct: {tuple(s)}")
    return sum(1 for i in range(len(s)) for j in range(i + 1, len(s)) if s[i] > s[j])


def format_word(w: Sequence[int], r: int = 9) -> str:
    if r <= 9:
        return "".join(str(x) for x in w)
    return ",".join(str(x) for x in w)


def parse_word(s: str) -> Word:
    s = s.strip()
    if not s:
        return ()
    if "," in s:
        return tuple(int(x) for x in s.split(","))
    return tuple(int(c) for c in s)


def _integer(c) -> int:
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        if c.denominator != 1:
            raise ValueError(f"coefficient {c} is not an integer")
        return c.numerator
    if isinstance(c, str):
        return int(c)
    raise TypeError(f"coefficient {c!r} is not an integer")


class Element:
    """An integer combination of biwords over the alphabet 1..r.

    Elements are treated as immutable values.  Zero coefficients are never
    stored, so equality is equality of the term dictionaries.
    """

    __slots__ = ("r", "_terms", "_hash")

    def __init__(self, r: int, terms: Mapping[Biword, int] | Iterable[tuple[Biword, int]] = ()):
        if r < 1:
            raise AlphabetError(f"alphabet size must be >= 1, got {r}")
        acc: dict[Biword, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for b, c in items:
            if not isinstance(b, Biword):
                b = Biword(tuple(b[0]), tuple(b[1]))
            if len(b.top) != len(b.bottom):
                raise ValueError(f"malformed biword {b}")
            for x in b.top + b.bottom:
                if not 1 <= x <= r:
                    raise AlphabetError(f"letter {x} outside 1..{r}")
            acc[b] = acc.get(b, 0) + _integer(c)
        self.r = r
        self._terms = {b: c for b, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, r: int, terms: dict[Biword, int]) -> Element:
        # Trusted constructor: terms already validated and pruned.
        e = object.__new__(cls)
        e.r = r
        e._terms = terms
        e._hash = None
        return e

    @classmethod
    def zero(cls, r: int) -> Element:
        return cls._raw(r, {})

    @classmethod
    def one(cls, r: int) -> Element:
        return cls._raw(r, {UNIT: 1})

    @classmethod
    def monomial(cls, r: int, top, bottom, coef: int = 1) -> Element:
        return cls(r, {biword(top, bottom): coef})

    @classmethod
    def scalar(cls, r: int, c: int) -> Element:
        return cls(r, {UNIT: c})

    # -- inspection -------------------------------------------------------

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[tuple[Biword, int]]:
        return iter(self.items())

    def __contains__(self, b) -> bool:
        return b in self._terms

    def coefficient(self, b: Biword) -> int:
        return self._terms.get(b, 0)

    def items(self) -> list[tuple[Biword, int]]:
        """Terms in canonical order."""
        return sorted(self._terms.items(), key=lambda t: sort_key(t[0]))

    def support(self) -> list[Biword]:
        return sorted(self._terms, key=sort_key)

    @property
    def terms(self) -> dict[Biword, int]:
        return dict(self._terms)

    @property
    def degree(self) -> int:
        return max((len(b.top) for b in self._terms), default=0)

    def degrees(self) -> list[int]:
        return sorted({len(b.top) for b in self._terms})

    def homogeneous(self, n: int) -> Element:
        return Element._raw(self.r, {b: c for b, c in self._terms.items() if len(b.top) == n})

    def truncate(self, n_max: int | None) -> Element:
        if n_max is None:
            return self
        return Element._raw(self.r, {b: c for b, c in self._terms.items() if len(b.top) <= n_max})

    def filter(self, pred) -> Element:
        return Element._raw(self.r, {b: c for b, c in self._terms.items() if pred(b)})

    def embed(self, r: int) -> Element:
        """The same terms viewed over a larger alphabet."""
        if r < self.r:
            raise AlphabetError(f"cannot embed alphabet {self.r} into {r}")
        return Element._raw(r, dict(self._terms))

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: Element) -> None:
        if self.r != other.r:
            raise AlphabetError(f"alphabet sizes differ: {self.r} != {other.r}")

    def __add__(self, other):
        if isinstance(other, int):
            other = Element.scalar(self.r, other)
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        acc = dict(self._terms)
        for b, c in other._terms.items():
            v = acc.get(b, 0) + c
            if v:
                acc[b] = v
            else:
                acc.pop(b, None)
        return Element._raw(self.r, acc)

    __radd__ = __add__

    def __neg__(self) -> Element:
        return Element._raw(self.r, {b: -c for b, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = Element.scalar(self.r, other)
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return scale(other, self)
        if not isinstance(other, Element):
            return NotImplemented
        return mul_trunc(self, other, None)

    def __rmul__(self, other):
        if isinstance(other, int):
            return scale(other, self)
        return NotImplemented

    def __pow__(self, n: int) -> Element:
        out = Element.one(self.r)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Element.scalar(self.r, other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.r == other.r and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.r, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        if not self._terms:
            return f"Element(r={self.r}, 0)"
        body = " ".join(f"{c:+d}[{format_word(b.top, self.r)}/{format_word(b.bottom, self.r)}]"
                        for b, c in self.items())
        return f"Element(r={self.r}, {body})"

    # -- serialization ----------------------------------------------------

    def to_text(self) -> str:
        """One ``<coef> [<top>/<bottom>]`` line per term; the unit biword is ``[]``."""
        lines = []
        for b, c in self.items():
            body = f"{format_word(b.top, self.r)}/{format_word(b.bottom, self.r)}" if b.top else ""
            lines.append(f"{c} [{body}]")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "terms": [{"coef": str(c), "top": list(b.top), "bottom": list(b.bottom)}
                      for b, c in self.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: Mapping) -> Element:
        r = int(d["r"])
        return cls(r, [(Biword(tuple(t["top"]), tuple(t["bottom"])), int(t["coef"]))
                       for t in d["terms"]])

    @classmethod
    def from_json(cls, s: str) -> Element:
        return cls.from_dict(json.loads(s))

    @classmethod
    def from_text(cls, s: str, r: int) -> Element:
        terms = []
        for lineno, line in enumerate(s.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#") or line == "0":
                continue
            try:
                coef, rest = line.split(None, 1)
                rest = rest.strip()
                if not (rest.startswith("[") and rest.endswith("]")):
                    raise ValueError("expected [top/bottom]")
                inner = rest[1:-1].strip()
                if inner:
                    top, bottom = inner.split("/")
                    b = Biword(parse_word(top), parse_word(bottom))
                else:
                    b = UNIT
                terms.append((b, int(coef)))
            except ValueError as exc:
                raise ValueError(f"line {lineno}: cannot parse {line!r}: {exc}") from None
        return cls(r, terms)


def add(e: Element, f: Element) -> Element:
    return e + f


def scale(c: int, e: Element) -> Element:
    if c == 0:
        return Element.zero(e.r)
    return Element._raw(e.r, {b: c * v for b, v in e._terms.items()})


def mul_trunc(e: Element, f: Element, n_max: int | None) -> Element:
    """Product of ``e`` and ``f`` keeping only terms of degree <= n_max.

    ``n_max=None`` gives the exact product.
    """
    e._check(f)
    acc: dict[Biword, int] = {}
    if n_max is None:
        n_max = e.degree + f.degree
    right = sorted(f._terms.items(), key=lambda t: len(t[0].top))
    for b1, c1 in e._terms.items():
        room = n_max - len(b1.top)
        if room < 0:
            continue
        t1, w1 = b1
        for b2, c2 in right:
            if len(b2.top) > room:
                break
            key = Biword(t1 + b2.top, w1 + b2.bottom)
            acc[key] = acc.get(key, 0) + c1 * c2
    return Element._raw(e.r, {b: c for b, c in acc.items() if c})


def product(factors: Iterable[Element], n_max: int | None, r: int | None = None) -> Element:
    """Left-to-right truncated product of ``factors``."""
    out = None
    for f in factors:
        out = f.truncate(n_max) if out is None else mul_trunc(out, f, n_max)
    if out is None:
        if r is None:
            raise ValueError("empty product needs an alphabet size")
        return Element.one(r)
    return out


def biletter(r: int, x: int, a: int) -> Element:
    return Element(r, {Biword((x,), (a,)): 1})


def all_words(r: int, n: int) -> Iterator[Word]:
    """Words of length n over 1..r in lexicographic order."""
    if n == 0:
        yield ()
        return
    for w in all_words(r, n - 1):
        for x in range(1, r + 1):
            yield w + (x,)


def all_biwords(r: int, n: int) -> Iterator[Biword]:
    words = list(all_words(r, n))
    for t in words:
        for b in words:
            yield Biword(t, b)
