"""Degree-by-degree verification of the identities of the right quantum algebra.

Every claim is reduced to a list of :class:`Check` objects.  A check is a
residue element that must vanish, either exactly in the free algebra or
modulo the ideal.  Residues are examined one homogeneous degree and one
multigraded block at a time, and the outcome is gathered into a
:class:`VerificationReport`.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .algebra import Biword, Element, mul_trunc, product
from .determinant import (
    cofactor_rightmost, det, duplicate_column_matrix,
    fermion_matrix, m_matrix, minor, random_matrix, random_linear_entry, random_special_pair,
)
from .quantum import (
    EchelonStore, component_size, get_default_store, re, split_components,
)
from .series import bos, ferm, k_i, s_i, univ

EXACT = "exact"
IDEAL = "ideal"

DEFAULT_SEED = 42
DEFAULT_TRIALS = 20


@dataclass
class Check:
    label: str
    residue: Element
    mode: str = IDEAL


@dataclass
class DegreeStatus:
    n: int
    passed: bool
    components: int = 0
    max_dim: int = 0
    rows: int = 0
    millis: float | None = None

    def to_dict(self) -> dict:
        return {"n": self.n, "pass": self.passed, "components": self.components,
                "max_dim": self.max_dim, "rows": self.rows, "millis": self.millis}


@dataclass
class VerificationReport:
    claim: str
    r: int
    N: int
    degrees: list[DegreeStatus] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)
    params: dict = field(default_factory=dict)
    wall_ms: float | None = None

    @property
    def passed(self) -> bool:
        return all(d.passed for d in self.degrees) and not self.failures

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "r": self.r,
            "N": self.N,
            "pass": self.passed,
            "params": dict(self.params),
            "degrees": [d.to_dict() for d in self.degrees],
            "failures": list(self.failures),
            "wall_ms": self.wall_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> VerificationReport:
        degrees = [DegreeStatus(x["n"], x["pass"], x["components"], x["max_dim"], x["rows"], x["millis"])
                   for x in d["degrees"]]
        return cls(d["claim"], d["r"], d["N"], degrees, list(d["failures"]),
                   dict(d.get("params", {})), d.get("wall_ms"))

    @classmethod
    def from_json(cls, s: str) -> VerificationReport:
        return cls.from_dict(json.loads(s))

    def failure_elements(self) -> list[Element]:
        return [Element.from_dict(f["residue"]) for f in self.failures]

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = "".join(f" {k}={v}" for k, v in self.params.items())
        lines = [f"{self.claim} r={self.r} N={self.N}{extra}: {status}"]
        for d in self.degrees:
            t = f" {d.millis:.1f}ms" if d.millis is not None else ""
            lines.append(f"  degree {d.n}: {'pass' if d.passed else 'FAIL'}"
                         f" components={d.components} max_dim={d.max_dim} rows={d.rows}{t}")
        for f in self.failures:
            res = Element.from_dict(f["residue"])
            lines.append(f"  failure {f['check']} degree {f['n']} ({f['mode']}): {len(res)} terms")
            lines.extend("    " + ln for ln in res.to_text().splitlines())
        if self.wall_ms is not None:
            lines.append(f"  wall time {self.wall_ms:.1f}ms")
        return "\n".join(lines)


# -- block reduction, optionally in worker processes -------------------------

_worker_store: EchelonStore | None = None


def _init_worker(cache_dir, cap):
    global _worker_store
    _worker_store = EchelonStore(cache_dir, cap)


def _reduce_task(task):
    mode, key, part = task
    if mode == EXACT or key.degree < 2:
        return part._terms, 0
    basis = _worker_store.get(part.r, key)
    return basis.reduce(part._terms), basis.rank


def _reduce_local(store, task):
    mode, key, part = task
    if mode == EXACT or key.degree < 2:
        return part._terms, 0
    basis = store.get(part.r, key)
    return basis.reduce(part._terms), basis.rank


def run_checks(claim: str, r: int, n_max: int, checks: list[Check], *,
               store: EchelonStore | None = None, jobs: int = 1, timings: bool = False,
               params: dict | None = None) -> VerificationReport:
    """Evaluate every check at every degree 0..n_max.

    With ``jobs > 1`` the blocks are reduced in a process pool; results are
    merged in sorted order, so the report does not depend on scheduling.
    """
    store = store or get_default_store()
    t_start = time.perf_counter()
    tasks = []  # (check index, degree, key, mode, part)
    for ci, chk in enumerate(checks):
        if chk.residue.r != r:
            raise ValueError(f"check {chk.label} lives over alphabet {chk.residue.r}, expected {r}")
        for key, part in split_components(chk.residue).items():
            tasks.append((ci, key.degree, key, chk.mode, part))
    top = max([n_max] + [t[1] for t in tasks])

    payload = [(mode, key, part) for _, _, key, mode, part in tasks]
    if jobs > 1 and len(payload) > 1:
        with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker,
                                 initargs=(store.cache_dir, store.cap)) as pool:
            results = list(pool.map(_reduce_task, payload, chunksize=max(1, len(payload) // (4 * jobs))))
        per_task_ms = [None] * len(payload)
    else:
        results, per_task_ms = [], []
        for t in payload:
            t0 = time.perf_counter()
            results.append(_reduce_local(store, t))
            per_task_ms.append((time.perf_counter() - t0) * 1000)

    residues: dict[tuple[int, int], dict[Biword, int]] = {}
    stats: dict[int, dict] = {n: {"keys": {}, "ms": 0.0} for n in range(top + 1)}
    for (ci, n, key, mode, _), (terms, rank), ms in zip(tasks, results, per_task_ms):
        st = stats[n]
        prev = st["keys"].get(key, 0)
        st["keys"][key] = max(prev, rank)
        if ms is not None:
            st["ms"] += ms
        if terms:
            residues.setdefault((ci, n), {}).update(terms)

    report = VerificationReport(claim, r, n_max, params=dict(params or {}))
    failed_degrees = {n for (_, n) in residues}
    wall = (time.perf_counter() - t_start) * 1000
    for n in range(top + 1):
        keys = stats[n]["keys"]
        report.degrees.append(DegreeStatus(
            n=n,
            passed=n not in failed_degrees,
            components=len(keys),
            max_dim=max((component_size(k) for k in keys), default=0),
            rows=sum(keys.values()),
            millis=round(stats[n]["ms"], 3) if timings and jobs <= 1 else None,
        ))
    for (ci, n) in sorted(residues):
        chk = checks[ci]
        res = Element(r, residues[(ci, n)])
        report.failures.append({"check": chk.label, "n": n, "mode": chk.mode, "residue": res.to_dict()})
    if timings:
        report.wall_ms = round(wall, 3)
    return report


# -- claims ---------------------------------------------------------------------

def _opts(kw):
    return {k: kw[k] for k in ("store", "jobs", "timings") if k in kw}


def verify_theorem1(r: int, N: int, **kw) -> VerificationReport:
    p = mul_trunc(ferm(r), bos(r, N), N)
    return run_checks("theorem1", r, N, [Check("ferm*bos-1", p - 1)], **_opts(kw))


def verify_theorem3(r: int, N: int, **kw) -> VerificationReport:
    e = re(mul_trunc(ferm(r), univ(r, N), N))
    return run_checks("theorem3", r, N, [Check("re(ferm*univ)-1", e - 1)], **_opts(kw))


def verify_rephrase_equivalence(r: int, N: int, **kw) -> VerificationReport:
    """Exact identities: re(univ) = bos and re(ferm*univ) = ferm*bos."""
    u, b, f = univ(r, N), bos(r, N), ferm(r)
    checks = [
        Check("re(univ)-bos", re(u) - b, EXACT),
        Check("re(ferm*univ)-ferm*bos", re(mul_trunc(f, u, N)) - mul_trunc(f, b, N), EXACT),
    ]
    return run_checks("rephrase_equivalence", r, N, checks, **_opts(kw))


def verify_lemma8(r: int, N: int, **kw) -> VerificationReport:
    ks = product((k_i(r, i, N) for i in range(1, r + 1)), N)
    return run_checks("lemma8", r, N, [Check("k1...kr-univ", ks - univ(r, N), EXACT)], **_opts(kw))


def verify_lemma9(r: int, N: int, **kw) -> VerificationReport:
    checks = []
    ks = {i: k_i(r, i, N) for i in range(1, r + 1)}
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            si, sj = s_i(r, i), s_i(r, j)
            checks.append(Check(f"s{i}s{j}-s{j}s{i}", si * sj - sj * si))
            checks.append(Check(f"k{i}k{j}-k{j}k{i}",
                                mul_trunc(ks[i], ks[j], N) - mul_trunc(ks[j], ks[i], N)))
    return run_checks("lemma9", r, N, checks, **_opts(kw))


def verify_lemma7(r: int, N: int, **kw) -> VerificationReport:
    checks = [Check(f"det(F_{i})", det(duplicate_column_matrix(r, i), N)) for i in range(1, r)]
    return run_checks("lemma7", r, N, checks, **_opts(kw))


def _column_sum(a: list[Element], b: list[Element]) -> list[Element]:
    return [x + y for x, y in zip(a, b)]


def verify_property4(r: int, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED, **kw) -> VerificationReport:
    """Additivity of det in each column, exactly in the free algebra."""
    rng = random.Random(seed)
    checks = []
    for t in range(trials):
        a = random_matrix(rng, r)
        i = rng.randint(1, r)
        col = [random_linear_entry(rng, r) for _ in range(r)]
        lhs = det(a) + det(a.with_column(i, col))
        rhs = det(a.with_column(i, _column_sum(a.column(i), col)))
        checks.append(Check(f"trial{t}:col{i}", lhs - rhs, EXACT))
    return run_checks("property4", r, r, checks, params={"seed": seed, "trials": trials}, **_opts(kw))


def verify_property5(r: int, N: int, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED,
                     **kw) -> VerificationReport:
    """Rightmost-column cofactor expansion equals the defining sum exactly."""
    rng = random.Random(seed)
    f = fermion_matrix(r)
    checks = [Check("fermion_matrix", cofactor_rightmost(f, N) - det(f, N), EXACT)]
    for t in range(trials):
        a = random_matrix(rng, r)
        checks.append(Check(f"trial{t}", cofactor_rightmost(a, N) - det(a, N), EXACT))
    return run_checks("property5", r, N, checks, params={"seed": seed, "trials": trials}, **_opts(kw))


def verify_property6(r: int, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED, **kw) -> VerificationReport:
    """Swapping the special pair of columns negates det modulo the ideal."""
    if r < 2:
        raise ValueError("property6 needs r >= 2")
    rng = random.Random(seed)
    checks = []
    for t in range(trials):
        a, b, (j, x, y, *_) = random_special_pair(rng, r)
        checks.append(Check(f"trial{t}:j{j}x{x}y{y}", det(a) + det(b)))
    return run_checks("property6", r, r, checks, params={"seed": seed, "trials": trials}, **_opts(kw))


def random_element(rng: random.Random, r: int, max_degree: int, nterms: int = 4,
                   lo: int = -3, hi: int = 3) -> Element:
    terms = {}
    for _ in range(nterms):
        n = rng.randint(0, max_degree)
        top = tuple(rng.randint(1, r) for _ in range(n))
        bottom = tuple(rng.randint(1, r) for _ in range(n))
        terms[Biword(top, bottom)] = rng.randint(lo, hi)
    return Element(r, terms)


def random_circuit_element(rng: random.Random, r: int, max_degree: int, nterms: int = 4,
                           lo: int = -3, hi: int = 3) -> Element:
    """Random integer combination of circuits (a real element)."""
    terms = {}
    for _ in range(nterms):
        n = rng.randint(0, max_degree)
        bottom = [rng.randint(1, r) for _ in range(n)]
        top = bottom[:]
        rng.shuffle(top)
        terms[Biword(tuple(top), tuple(bottom))] = rng.randint(lo, hi)
    return Element(r, terms)


def verify_lemma2(r: int, N: int, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED,
                  **kw) -> VerificationReport:
    """re(E*E') = E*re(E') for real E, exactly in the free algebra."""
    rng = random.Random(seed)
    checks = []
    half = max(1, N // 2)
    for t in range(trials):
        e = random_circuit_element(rng, r, half)
        e2 = random_element(rng, r, N - half)
        checks.append(Check(f"trial{t}", re(mul_trunc(e, e2, N)) - mul_trunc(e, re(e2), N), EXACT))
    return run_checks("lemma2", r, N, checks, params={"seed": seed, "trials": trials}, **_opts(kw))


def e_element(r: int, N: int) -> Element:
    """det(M) * Univ, truncated at N."""
    return mul_trunc(det(m_matrix(r), N), univ(r, N), N)


def cofactor_summands(r: int, N: int) -> list[Element]:
    """(-1)^(r+i) det(M_ir) * prod_{k != i} K_k for i = 1..r."""
    m = m_matrix(r)
    ks = [k_i(r, k, N) for k in range(1, r + 1)]
    out = []
    for i in range(1, r + 1):
        kprod = product((ks[k - 1] for k in range(1, r + 1) if k != i), N, r)
        t = mul_trunc(det(minor(m, i, r), N), kprod, N)
        out.append(t if (r + i) % 2 == 0 else -t)
    return out


def verify_recursion(r: int, N: int, **kw) -> VerificationReport:
    """re(E^(r)) is congruent to re(E^(r-1)), with the cofactor steps checked."""
    if r < 2:
        raise ValueError("recursion needs r >= 2")
    e_r = e_element(r, N)
    e_prev = e_element(r - 1, N).embed(r)
    summands = cofactor_summands(r, N)
    total = Element.zero(r)
    for s in summands:
        total = total + s
    checks = [
        Check("det(M)-ferm", det(m_matrix(r), N) - ferm(r)),
        Check("E-cofactor_sum", e_r - total),
        Check("re(E_r)-re(E_r-1)", re(e_r) - re(e_prev)),
    ]
    for i, s in enumerate(summands[:-1], 1):
        checks.append(Check(f"re(F_{i})", re(s), EXACT))
    return run_checks("recursion", r, N, checks, **_opts(kw))


CLAIMS = {
    "theorem1": lambda r, N, seed, trials, **kw: verify_theorem1(r, N, **kw),
    "theorem3": lambda r, N, seed, trials, **kw: verify_theorem3(r, N, **kw),
    "rephrase_equivalence": lambda r, N, seed, trials, **kw: verify_rephrase_equivalence(r, N, **kw),
    "lemma2": lambda r, N, seed, trials, **kw: verify_lemma2(r, N, trials, seed, **kw),
    "lemma7": lambda r, N, seed, trials, **kw: verify_lemma7(r, N, **kw),
    "lemma8": lambda r, N, seed, trials, **kw: verify_lemma8(r, N, **kw),
    "lemma9": lambda r, N, seed, trials, **kw: verify_lemma9(r, N, **kw),
    "property4": lambda r, N, seed, trials, **kw: verify_property4(r, trials, seed, **kw),
    "property5": lambda r, N, seed, trials, **kw: verify_property5(r, N, trials, seed, **kw),
    "property6": lambda r, N, seed, trials, **kw: verify_property6(r, trials, seed, **kw),
    "recursion": lambda r, N, seed, trials, **kw: verify_recursion(r, N, **kw),
}


def verify(claim: str, r: int, N: int, seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS,
           **kw) -> VerificationReport:
    try:
        fn = CLAIMS[claim]
    except KeyError:
        raise ValueError(f"unknown claim {claim!r}; choose from {', '.join(CLAIMS)}") from None
    return fn(r, N, seed, trials, **kw)
