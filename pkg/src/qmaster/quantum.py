"""The right quantum algebra as a quotient of the free biword algebra.

The two-sided ideal is generated by the commutation relations

    (xy;aa) - (yx;aa)                          x != y
    (xy;ab) - (yx;ab) - (yx;ba) + (xy;ba)      x != y, a != b

Every generator preserves both the top and the bottom content, so the
ideal splits into finite-dimensional blocks indexed by a pair of content
vectors.  Each block is row-reduced once; normal forms are obtained by
eliminating the pivot biwords of every block an element touches.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterator, NamedTuple

from .algebra import Biword, Element, content, is_circuit, sort_key

FORMAT_VERSION = 1
DEFAULT_CAP = 200_000
CACHE_ENV = "QMASTER_CACHE_DIR"


class ComponentTooLarge(RuntimeError):
    """A block has more biwords than the configured cap allows."""

    def __init__(self, key, size, cap):
        super().__init__(f"component {key} has {size} biwords, cap is {cap}")
        self.key = key
        self.size = size
        self.cap = cap


class ComponentKey(NamedTuple):
    top: tuple[int, ...]
    bottom: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.top)

    @property
    def r(self) -> int:
        return len(self.top)

    def is_diagonal(self) -> bool:
        """True when every biword of the block is a circuit."""
        return self.top == self.bottom

    def __str__(self) -> str:
        return f"({','.join(map(str, self.top))}|{','.join(map(str, self.bottom))})"


def component_key(b: Biword, r: int) -> ComponentKey:
    return ComponentKey(content(b.top, r), content(b.bottom, r))


@dataclass(frozen=True)
class RelationGenerator:
    kind: str
    x: int
    y: int
    a: int
    b: int | None
    element: Element


def _r1(r, x, y, a) -> Element:
    return Element(r, {Biword((x, y), (a, a)): 1, Biword((y, x), (a, a)): -1})


def _r2(r, x, y, a, b) -> Element:
    return Element(r, {
        Biword((x, y), (a, b)): 1,
        Biword((y, x), (a, b)): -1,
        Biword((y, x), (b, a)): -1,
        Biword((x, y), (b, a)): 1,
    })


def generators(r: int) -> list[RelationGenerator]:
    """The non-redundant generating set: x < y always, a < b for R2."""
    if r < 1:
        raise ValueError(f"alphabet size must be >= 1, got {r}")
    pairs = [(x, y) for x in range(1, r + 1) for y in range(x + 1, r + 1)]
    out = [RelationGenerator("R1", x, y, a, None, _r1(r, x, y, a))
           for x, y in pairs for a in range(1, r + 1)]
    out += [RelationGenerator("R2", x, y, a, b, _r2(r, x, y, a, b))
            for x, y in pairs for a, b in pairs]
    return out


def multiset_words(counts: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """All words with the given content, in lexicographic order."""
    n = sum(counts)
    if n == 0:
        yield ()
        return
    counts = list(counts)
    word = []

    def rec():
        if len(word) == n:
            yield tuple(word)
            return
        for i, c in enumerate(counts):
            if c:
                counts[i] -= 1
                word.append(i + 1)
                yield from rec()
                word.pop()
                counts[i] += 1

    yield from rec()


def multinomial(counts) -> int:
    out = math.factorial(sum(counts))
    for c in counts:
        out //= math.factorial(c)
    return out


def component_size(key: ComponentKey) -> int:
    return multinomial(key.top) * multinomial(key.bottom)


def component_biwords(key: ComponentKey) -> list[Biword]:
    tops = list(multiset_words(key.top))
    bottoms = list(multiset_words(key.bottom))
    return [Biword(t, b) for t in tops for b in bottoms]


def _span_terms(bw: Biword, p: int) -> dict[Biword, int]:
    # The spanning element u*g*v whose canonical biword is bw, with the
    # generator occupying positions p, p+1.
    t, w = bw
    x, y = t[p], t[p + 1]
    a, b = w[p], w[p + 1]
    u_t, v_t = t[:p], t[p + 2:]
    u_w, v_w = w[:p], w[p + 2:]

    def mk(tt, ww):
        return Biword(u_t + tt + v_t, u_w + ww + v_w)

    if a == b:
        return {mk((x, y), (a, a)): 1, mk((y, x), (a, a)): -1}
    return {mk((x, y), (a, b)): 1, mk((y, x), (a, b)): -1,
            mk((y, x), (b, a)): -1, mk((x, y), (b, a)): 1}


def _span_sites(biwords: list[Biword]) -> Iterator[tuple[Biword, int]]:
    for bw in biwords:
        t, w = bw
        for p in range(len(t) - 1):
            if t[p] < t[p + 1] and w[p] <= w[p + 1]:
                yield bw, p


def component_span(r: int, key: ComponentKey) -> list[Element]:
    """All elements u*g*v (g a generator, u, v biwords) lying in the block."""
    if key.degree < 2:
        return []
    return [Element._raw(r, _span_terms(bw, p))
            for bw, p in _span_sites(component_biwords(key))]


# -- elimination --------------------------------------------------------------

def _normalize(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
    if row[min(row)] < 0:
        g = -g
    if g != 1:
        row = {k: v // g for k, v in row.items()}
    return row


def _combine(pa: int, a: dict[int, int], pb: int, b: dict[int, int]) -> dict[int, int]:
    """pa*a - pb*b with zeros pruned."""
    out = {k: pa * v for k, v in a.items()}
    for k, v in b.items():
        s = out.get(k, 0) - pb * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _eliminate(p: dict[int, int], v: dict[int, int], col: int) -> dict[int, int]:
    pc, vc = p[col], v[col]
    g = math.gcd(pc, vc)
    out = _combine(pc // g, v, vc // g, p)
    return _normalize(out) if out else out


def reduced_echelon(vectors) -> dict[int, dict[int, int]]:
    """Fraction-free reduced row echelon form of integer sparse vectors.

    Returns a map pivot column -> row; each row is primitive with positive
    pivot, and no pivot column occurs in any other row.
    """
    pivots: dict[int, dict[int, int]] = {}
    for vec in vectors:
        v = dict(vec)
        while v:
            c = min(v)
            p = pivots.get(c)
            if p is None:
                break
            v = _eliminate(p, v, c)
        if v:
            pivots[min(v)] = _normalize(v)
    for c in sorted(pivots, reverse=True):
        p = pivots[c]
        for c2 in pivots:
            if c2 < c and c in pivots[c2]:
                pivots[c2] = _eliminate(p, pivots[c2], c)
    return pivots


@dataclass
class EchelonBasis:
    r: int
    key: ComponentKey
    biwords: list[Biword]
    rows: list[dict[int, int]]
    index: dict[Biword, int] = field(init=False, repr=False)
    pivot_map: dict[Biword, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.index = {b: i for i, b in enumerate(self.biwords)}
        self.pivot_map = {self.biwords[min(row)]: k for k, row in enumerate(self.rows)}

    @property
    def degree(self) -> int:
        return self.key.degree

    @property
    def dim(self) -> int:
        return len(self.biwords)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def row_element(self, k: int) -> Element:
        return Element._raw(self.r, {self.biwords[i]: c for i, c in self.rows[k].items()})

    def reduce(self, terms: dict[Biword, int]) -> dict[Biword, int | Fraction]:
        """Remove every pivot biword from a vector supported on this block."""
        v: dict[int, Fraction | int] = {}
        for b, c in terms.items():
            v[self.index[b]] = c
        for b, k in self.pivot_map.items():
            col = self.index[b]
            c = v.get(col)
            if not c:
                continue
            row = self.rows[k]
            f = Fraction(c, row[col])
            if f.denominator == 1:
                f = f.numerator
            for i, rc in row.items():
                s = v.get(i, 0) - f * rc
                if s:
                    v[i] = s
                else:
                    v.pop(i, None)
        return {self.biwords[i]: c for i, c in v.items()}

    # -- persistence ------------------------------------------------------

    def to_dict(self) -> dict:
        def term(i, c):
            b = self.biwords[i]
            return {"coef": str(c), "top": list(b.top), "bottom": list(b.bottom)}

        return {
            "version": FORMAT_VERSION,
            "r": self.r,
            "key": {"top": list(self.key.top), "bottom": list(self.key.bottom)},
            "biwords": [{"top": list(b.top), "bottom": list(b.bottom)} for b in self.biwords],
            "rows": [[term(i, row[i]) for i in sorted(row)] for row in self.rows],
        }

    @classmethod
    def from_dict(cls, d: dict) -> EchelonBasis:
        if d.get("version") != FORMAT_VERSION:
            raise ValueError(f"unsupported echelon format {d.get('version')}")
        biwords = [Biword(tuple(b["top"]), tuple(b["bottom"])) for b in d["biwords"]]
        index = {b: i for i, b in enumerate(biwords)}
        rows = [{index[Biword(tuple(t["top"]), tuple(t["bottom"]))]: int(t["coef"]) for t in row}
                for row in d["rows"]]
        key = ComponentKey(tuple(d["key"]["top"]), tuple(d["key"]["bottom"]))
        return cls(int(d["r"]), key, biwords, rows)


def build_echelon(r: int, key: ComponentKey, cap: int | None = DEFAULT_CAP) -> EchelonBasis:
    size = component_size(key)
    if cap is not None and size > cap:
        raise ComponentTooLarge(key, size, cap)
    biwords = component_biwords(key)
    if key.degree < 2:
        return EchelonBasis(r, key, biwords, [])
    index = {b: i for i, b in enumerate(biwords)}
    vectors = ({index[b]: c for b, c in _span_terms(bw, p).items()}
               for bw, p in _span_sites(biwords))
    pivots = reduced_echelon(vectors)
    rows = [pivots[c] for c in sorted(pivots)]
    return EchelonBasis(r, key, biwords, rows)


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "qmaster"


class EchelonStore:
    """Echelon bases keyed by (r, block), kept in memory and optionally on disk.

    Disk files are written to a temporary name and renamed into place, so
    concurrent builders of the same block never expose a partial file.
    """

    def __init__(self, cache_dir: str | os.PathLike | None = None, cap: int | None = DEFAULT_CAP):
        self.cache_dir = Path(cache_dir) if cache_dir is not None else None
        self.cap = cap
        self._mem: dict[tuple[int, ComponentKey], EchelonBasis] = {}
        self._lock = threading.Lock()

    def path_for(self, r: int, key: ComponentKey) -> Path:
        assert self.cache_dir is not None
        t = "-".join(map(str, key.top))
        b = "-".join(map(str, key.bottom))
        return self.cache_dir / f"v{FORMAT_VERSION}_r{r}_t{t}_b{b}.json"

    def get(self, r: int, key: ComponentKey) -> EchelonBasis:
        k = (r, key)
        basis = self._mem.get(k)
        if basis is not None:
            return basis
        basis = self._load(r, key)
        if basis is None:
            basis = build_echelon(r, key, self.cap)
            self._save(basis)
        with self._lock:
            return self._mem.setdefault(k, basis)

    def _load(self, r, key):
        if self.cache_dir is None:
            return None
        path = self.path_for(r, key)
        try:
            with open(path, encoding="utf-8") as fh:
                return EchelonBasis.from_dict(json.load(fh))
        except (OSError, ValueError, KeyError):
            return None

    def _save(self, basis: EchelonBasis) -> None:
        if self.cache_dir is None or basis.degree < 2:
            return
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        path = self.path_for(basis.r, basis.key)
        data = json.dumps(basis.to_dict(), sort_keys=True, separators=(",", ":"))
        fd, tmp = tempfile.mkstemp(dir=self.cache_dir, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(data)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def clear(self) -> int:
        """Drop the in-memory bases and delete cache files; returns files removed."""
        self._mem.clear()
        if self.cache_dir is None or not self.cache_dir.is_dir():
            return 0
        n = 0
        for p in self.cache_dir.glob("v*_r*_t*_b*.json"):
            p.unlink()
            n += 1
        return n


_default_store = EchelonStore()


def get_default_store() -> EchelonStore:
    return _default_store


def set_default_store(store: EchelonStore) -> None:
    global _default_store
    _default_store = store


def echelon(r: int, key: ComponentKey, store: EchelonStore | None = None) -> EchelonBasis:
    return (store or _default_store).get(r, key)


# -- normal forms -------------------------------------------------------------

def split_components(e: Element) -> dict[ComponentKey, Element]:
    """Decompose ``e`` into its multigraded pieces, keyed in sorted order."""
    parts: dict[ComponentKey, dict[Biword, int]] = {}
    r = e.r
    for b, c in e._terms.items():
        parts.setdefault(component_key(b, r), {})[b] = c
    return {k: Element._raw(r, parts[k]) for k in sorted(parts, key=lambda k: (k.degree, k))}


class NonIntegralNormalForm(ArithmeticError):
    pass


def _as_element(r: int, terms: dict) -> Element:
    out = {}
    for b, c in terms.items():
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise NonIntegralNormalForm(f"coefficient {c} of {b} is not an integer")
            c = c.numerator
        out[b] = c
    return Element._raw(r, out)


def reduce_component(part: Element, key: ComponentKey, store: EchelonStore | None = None) -> Element:
    if key.degree < 2:
        return part
    basis = echelon(part.r, key, store)
    return _as_element(part.r, basis.reduce(part._terms))


def normal_form(e: Element, store: EchelonStore | None = None) -> Element:
    """Canonical representative of ``e`` modulo the ideal."""
    acc: dict[Biword, int] = {}
    for key, part in split_components(e).items():
        acc.update(reduce_component(part, key, store)._terms)
    return Element._raw(e.r, acc)


def is_zero_mod_ideal(e: Element, store: EchelonStore | None = None) -> bool:
    for key, part in split_components(e).items():
        if reduce_component(part, key, store):
            return False
    return True


def congruent(e: Element, f: Element, store: EchelonStore | None = None) -> bool:
    return is_zero_mod_ideal(e - f, store)


def re(e: Element) -> Element:
    """Real part: the circuit terms."""
    return e.filter(is_circuit)


def im(e: Element) -> Element:
    """Imaginary part: the non-circuit terms."""
    return e.filter(lambda b: not is_circuit(b))


def iter_component_keys(r: int, n: int) -> Iterator[ComponentKey]:
    """Every block of degree n, in sorted order."""
    contents = sorted(_compositions(n, r), reverse=True)
    for t in contents:
        for b in contents:
            yield ComponentKey(t, b)


def _compositions(n, k):
    if k == 1:
        yield (n,)
        return
    for i in range(n, -1, -1):
        for rest in _compositions(n - i, k - 1):
            yield (i,) + rest
