"""The bound psi(m1) = (2 m1 + 1) l - 2 binom(m1 + 2, 4) and exhaustive checks.

Each check scans every Borel-fixed ideal of the relevant colength and
returns a :class:`VerificationReport`; an empty violation list means the
statement held over the whole scan.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable, Iterator

import numpy as np

from . import enumeration, tangent3d
from .lattice import Staircase3, power_ideal


def tetrahedral_k(l: int) -> int:
    """The k with binom(k+2, 3) <= l < binom(k+3, 3)."""
    if l < 1:
        raise ValueError("colength must be at least 1")
    k = 1
    while comb(k + 3, 3) <= l:
        k += 1
    return k


@dataclass(frozen=True)
class PsiContext:
    l: int
    k: int
    delta: int

    def __post_init__(self):
        if not (comb(self.k + 2, 3) <= self.l < comb(self.k + 3, 3)):
            raise ValueError(f"k={self.k} does not bracket l={self.l}")
        if self.delta != self.l - comb(self.k + 2, 3):
            raise ValueError("delta must equal l - binom(k+2, 3)")
        assert 0 <= self.delta <= comb(self.k + 2, 2) - 1

    @classmethod
    def for_colength(cls, l: int) -> "PsiContext":
        k = tetrahedral_k(l)
        return cls(l, k, l - comb(k + 2, 3))


def psi(ctx: PsiContext | int, m1: int) -> int:
    l = ctx.l if isinstance(ctx, PsiContext) else int(ctx)
    if m1 < 1 or comb(m1 + 2, 3) > l:
        raise ValueError(f"m1={m1} outside the domain 1 <= m1, binom(m1+2,3) <= {l}")
    return (2 * m1 + 1) * l - 2 * comb(m1 + 2, 4)


def t_of_power(k: int) -> int:
    """binom(k+2, 2) binom(k+1, 2)."""
    return comb(k + 2, 2) * comb(k + 1, 2)


@dataclass
class VerificationReport:
    statement: str
    colength: int | None = None
    scanned: int = 0
    max_T: int | None = None
    maximizers: list[str] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)
    wall_time_s: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def observe(self, ideal: str, T: int) -> None:
        self.scanned += 1
        if self.max_T is None or T > self.max_T:
            self.max_T, self.maximizers = T, [ideal]
        elif T == self.max_T:
            self.maximizers.append(ideal)

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "statement": self.statement,
            "colength": self.colength,
            "ok": self.ok,
            "scanned": self.scanned,
            "max_T": self.max_T,
            "maximizers": sorted(self.maximizers),
            "violations": self.violations,
            "details": self.details,
        }
        if timing:
            out["wall_time_s"] = round(self.wall_time_s, 3)
        return out

    @staticmethod
    def merge(reports: list["VerificationReport"]) -> "VerificationReport":
        """Combine shard reports of the same statement and colength."""
        if not reports:
            raise ValueError("nothing to merge")
        out = VerificationReport(reports[0].statement, reports[0].colength)
        for r in reports:
            if (r.statement, r.colength) != (out.statement, out.colength):
                raise ValueError("cannot merge reports of different checks")
            out.scanned += r.scanned
            out.violations.extend(r.violations)
            out.wall_time_s += r.wall_time_s
            for key, val in r.details.items():
                if isinstance(val, dict):
                    out.details.setdefault(key, {}).update(val)
                else:
                    out.details.setdefault(key, val)
            if r.max_T is None:
                continue
            if out.max_T is None or r.max_T > out.max_T:
                out.max_T, out.maximizers = r.max_T, list(r.maximizers)
            elif r.max_T == out.max_T:
                out.maximizers.extend(r.maximizers)
        out.maximizers.sort()
        if "maximizer_m1" in out.details:
            out.details["maximizer_m1"] = {
                s: m for s, m in sorted(out.details["maximizer_m1"].items()) if s in out.maximizers
            }
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(
            d["statement"], d.get("colength"), d["scanned"], d.get("max_T"),
            list(d.get("maximizers", [])), list(d.get("violations", [])),
            d.get("wall_time_s", 0.0), dict(d.get("details", {})),
        )


# ---------------------------------------------------------------------------
# per-ideal evaluation


@dataclass(frozen=True)
class IdealRecord:
    ideal: str
    l: int
    m: tuple[int, int, int]
    T: int
    psi: int
    chain: tuple[int, int, int, int]

    def as_dict(self) -> dict:
        return {
            "ideal": self.ideal,
            "l": self.l,
            "m1": self.m[0],
            "m2": self.m[1],
            "m3": self.m[2],
            "T": self.T,
            "psi": self.psi,
            "bound_chain": list(self.chain),
        }


TangentFn = Callable[[Staircase3], int]


def evaluate(I: Staircase3, T: int | None = None, chain: bool = True) -> IdealRecord:
    m = I.pure_exponents()
    if T is None:
        T = tangent3d.tangent_dimension(I)
    ch = tangent3d.upper_bound_chain(I, T).as_list() if chain else [T, -1, -1, -1]
    return IdealRecord(I.canonical(), I.colength, m, T, psi(I.colength, m[0]), tuple(ch))


def scan(l: int, records: Iterable[IdealRecord] | None = None, shard=None) -> Iterator[IdealRecord]:
    if records is not None:
        yield from records
        return
    for I in enumeration.enum_borel3(l, shard=shard):
        yield evaluate(I)


# ---------------------------------------------------------------------------
# the checks


def psi_monotonicity_check(k_max: int) -> VerificationReport:
    """psi(m1) < psi(m1+1) for every l with k <= k_max and every m1 < k,
    plus positivity of the cubic derivative expression over m1 in [1, k]."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    t0 = time.perf_counter()
    rep = VerificationReport("psi-monotonicity")
    checked = 0
    for k in range(1, k_max + 1):
        delta = np.arange(comb(k + 2, 2), dtype=np.int64)
        l = comb(k + 2, 3) + delta
        m = np.arange(1, k + 1, dtype=np.int64)
        assert int(l.max()) * (2 * k + 1) < 2**62
        binom4 = np.array([comb(int(v) + 2, 4) for v in m], dtype=np.int64)
        vals = (2 * m[None, :] + 1) * l[:, None] - 2 * binom4[None, :]
        if k >= 2:
            bad = np.argwhere(np.diff(vals, axis=1) <= 0)
            for d, j in bad[:20]:
                rep.violations.append({"k": k, "delta": int(d), "m1": int(m[j]), "kind": "psi not increasing"})
            checked += vals.shape[0] * (k - 1)
        poly = (2 * k**3 + 6 * k**2 + 4 * k - 2 * m[None, :] ** 3 - 3 * m[None, :] ** 2
                + m[None, :] + 1 + 12 * delta[:, None])
        for d, j in np.argwhere(poly <= 0)[:20]:
            rep.violations.append({"k": k, "delta": int(d), "m1": int(m[j]), "kind": "derivative not positive"})
    rep.scanned = checked
    rep.details = {"k_max": k_max}
    rep.wall_time_s = time.perf_counter() - t0
    return rep


def upper_bound_check(l: int, records: Iterable[IdealRecord] | None = None, shard=None) -> VerificationReport:
    """T(I) <= psi(m1) and T <= b1 <= b2 <= b3 over all Borel ideals of colength l."""
    t0 = time.perf_counter()
    rep = VerificationReport("upper-bound", l)
    for rec in scan(l, records, shard):
        rep.observe(rec.ideal, rec.T)
        if rec.T > rec.psi:
            rep.violations.append({"ideal": rec.ideal, "T": rec.T, "psi": rec.psi, "kind": "T > psi(m1)"})
        T, b1, b2, b3 = rec.chain
        if b1 >= 0 and not (T <= b1 <= b2 <= b3):
            rep.violations.append({"ideal": rec.ideal, "chain": list(rec.chain), "kind": "chain broken"})
        if b3 >= 0 and b3 != rec.psi:
            rep.violations.append({"ideal": rec.ideal, "b3": b3, "psi": rec.psi, "kind": "b3 != psi"})
    rep.wall_time_s = time.perf_counter() - t0
    return rep


def conjecture_check(k: int, records: Iterable[IdealRecord] | None = None, shard=None) -> VerificationReport:
    """At l = binom(k+2, 3) the unique T-maximizer is m^k with T = t_of_power(k)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    t0 = time.perf_counter()
    l = comb(k + 2, 3)
    rep = VerificationReport("conjecture", l)
    for rec in scan(l, records, shard):
        rep.observe(rec.ideal, rec.T)
    target = power_ideal(k).canonical()
    expected = t_of_power(k)
    rep.details = {"k": k, "expected_maximizer": target, "expected_T": expected}
    if shard is None and records is None:
        _judge_conjecture(rep)
    rep.wall_time_s = time.perf_counter() - t0
    return rep


def _judge_conjecture(rep: VerificationReport) -> None:
    target = rep.details["expected_maximizer"]
    expected = rep.details["expected_T"]
    if rep.maximizers != [target] or rep.max_T != expected:
        rep.violations.append({
            "kind": "maximizer mismatch",
            "maximizers": sorted(rep.maximizers),
            "max_T": rep.max_T,
            "expected": target,
            "expected_T": expected,
        })


def judge_merged(rep: VerificationReport) -> VerificationReport:
    """Apply the global (not per-shard) verdicts after merging shards."""
    if rep.statement == "conjecture":
        _judge_conjecture(rep)
    if rep.statement == "necessary-condition":
        _judge_necessary(rep)
    return rep


def necessary_condition_check(k: int, records: Iterable[IdealRecord] | None = None, shard=None) -> VerificationReport:
    """Every T-maximizer at l = binom(k+2, 3) has smallest pure exponent k."""
    if k < 1:
        raise ValueError("k must be at least 1")
    t0 = time.perf_counter()
    l = comb(k + 2, 3)
    rep = VerificationReport("necessary-condition", l)
    m1_of: dict[str, int] = {}
    for rec in scan(l, records, shard):
        rep.observe(rec.ideal, rec.T)
        if rep.max_T == rec.T:
            m1_of[rec.ideal] = rec.m[0]
    rep.details = {"k": k, "maximizer_m1": {s: m1_of[s] for s in sorted(rep.maximizers)}}
    if shard is None and records is None:
        _judge_necessary(rep)
    rep.wall_time_s = time.perf_counter() - t0
    return rep


def _judge_necessary(rep: VerificationReport) -> None:
    k = rep.details["k"]
    for s, m1 in rep.details["maximizer_m1"].items():
        if s in rep.maximizers and m1 != k:
            rep.violations.append({"ideal": s, "m1": m1, "k": k, "kind": "maximizer with m1 != k"})


def lemma_m1_check(l: int, shard=None) -> VerificationReport:
    """m1 <= k for every Borel ideal with binom(k+2,3) <= l < binom(k+3,3)."""
    t0 = time.perf_counter()
    k = tetrahedral_k(l)
    rep = VerificationReport("lemma-m1", l)
    top = 0
    for I in enumeration.enum_borel3(l, shard=shard):
        rep.scanned += 1
        m1 = I.pure_exponents()[0]
        top = max(top, m1)
        if m1 > k:
            rep.violations.append({"ideal": I.canonical(), "m1": m1, "k": k, "kind": "m1 > k"})
    rep.details = {"k": k, "max_m1": top}
    rep.wall_time_s = time.perf_counter() - t0
    return rep
