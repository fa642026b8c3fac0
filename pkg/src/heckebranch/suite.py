"""The desk-scale acceptance matrix, one function per criterion."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from . import branching as br
from . import hecke, linalg
from .bitableaux import (
    Bipartition,
    Marker,
    conjugate,
    enumerate_bipartitions,
    enumerate_standard,
    is_fixed,
)
from .exactfield import DEFAULT_POINT, ONE, Q, U, FieldDivisionByZero, Specialization
from .seminormal import build_rep, kernel_matrix, verify_relations

TOLERANCE = Fraction(1, 10**25)
DAGGER_SHAPE = Bipartition((2, 1), (2, 1))


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    details: list[dict] = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        return f"criterion {self.number:2d} {'PASS' if self.passed else 'FAIL'}  {self.title}"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title,
                "status": "pass" if self.passed else "fail", "details": self.details}


def _failures(rows: list[dict]) -> list[dict]:
    return [r for r in rows if r.get("status") != "pass"]


def hook_count(p: tuple[int, ...]) -> int:
    """Standard Young tableaux of shape p by the hook length formula."""
    n = sum(p)
    conj = conjugate(p)
    hooks = 1
    for i, row in enumerate(p):
        for j in range(row):
            hooks *= row - j + conj[j] - i - 1
    return factorial(n) // hooks


def relation_suite(max_n: int = 4) -> CriterionResult:
    rows = []
    for n in range(1, max_n + 1):
        for lam in enumerate_bipartitions(n):
            for kind in ("a", "b"):
                bad = _failures(verify_relations(build_rep(lam, kind)))
                rows.append({"shape": str(lam), "gens": kind, "status": "fail" if bad else "pass",
                             **({"witness": bad[0]["relation"]} if bad else {})})
    return CriterionResult(1, "defining relations of seminormal matrices, n <= 4", not _failures(rows), _failures(rows))


def dimension_audit(max_n: int = 6) -> CriterionResult:
    rows = []
    for n in range(1, max_n + 1):
        shapes = enumerate_bipartitions(n)
        total = sum(len(enumerate_standard(s)) ** 2 for s in shapes)
        hooks = all(len(enumerate_standard(s)) == comb(n, sum(s.first))
                    * hook_count(s.first) * hook_count(s.second) for s in shapes)
        ok = total == 2**n * factorial(n) and hooks
        rows.append({"n": n, "sum": total, "target": 2**n * factorial(n), "status": "pass" if ok else "fail"})
    return CriterionResult(2, "sum of squared tableau counts = 2^n n!, n <= 6", not _failures(rows), rows)


def counting_suite(max_n: int = 8) -> CriterionResult:
    # the halved closed forms need a b_{>=2} letter, so n starts at 2
    rows = []
    for n in range(2, max_n + 1):
        counts = hecke.count_normal_monomials(n)
        rec = hecke.rank_recursion(n)
        full = 2**n * factorial(n)
        targets = {"all": full, "sharp": full // 2, "natural": full // 2, "flat": full // 2,
                   "dagger": full // 4}
        got = {k: hecke.filter_count(counts, k) for k in targets}
        ok = got == targets and counts == rec
        rows.append({"n": n, **got, "recursion_agrees": counts == rec, "status": "pass" if ok else "fail"})
    return CriterionResult(3, "normal monomial counts vs closed forms and recursion, n <= 8",
                           not _failures(rows), rows)


def intertwiner_suite(max_n: int = 4) -> CriterionResult:
    rows = []
    for n in range(1, max_n + 1):
        for lam in enumerate_bipartitions(n):
            for kind in ("natural", "flat"):
                bad = _failures(br.intertwiner_check(lam, kind))
                rows.append({"shape": str(lam), "kind": kind, "status": "fail" if bad else "pass",
                             **({"witness": bad[0]["name"]} if bad else {})})
    return CriterionResult(4, "psi intertwiners and coefficient identities, n <= 4", not _failures(rows),
                           _failures(rows))


def omega_suite(max_n: int = 5) -> CriterionResult:
    rows = []
    for n in range(2, max_n + 1):
        for lam in enumerate_bipartitions(n):
            if is_fixed(lam, Marker.SHARP):
                bad = _failures(br.omega_check(lam))
                rows.append({"shape": str(lam), "status": "fail" if bad else "pass"})
    return CriterionResult(5, "omega commutation pattern, swap-fixed shapes n <= 5", not _failures(rows), rows)


CROSSED = ("natural", "sharp", "flat", "sharp>dagger", "flat>dagger", "natural>dagger")


def crossed_suite(max_n: int = 3, point: Specialization = DEFAULT_POINT) -> CriterionResult:
    rows = []
    for n in range(2, max_n + 1):
        for name in CROSSED:
            rep = hecke.crossed_check(n, hecke.decomposition(n, name), point)
            bad = _failures(rep)
            rows.append({"n": n, "decomposition": name, "status": "fail" if bad else "pass",
                         **({"witness": bad[0]} if bad else {})})
    return CriterionResult(6, "crossed product conditions, six gradings, n <= 3", not _failures(rows), rows)


def expected_parts(shape: Bipartition, marker: Marker) -> int:
    if marker is Marker.DAGGER:
        return br.FAMILY_PARTS[br.dagger_family(shape)]
    return 2 if is_fixed(shape, marker) else 1


def commutant_suite(ns=(4, 5), point: Specialization = DEFAULT_POINT) -> CriterionResult:
    rows = []
    for n in ns:
        for lam in enumerate_bipartitions(n):
            for m in Marker:
                c = br.commutant(br.restriction_at(lam, m, point), point)
                want = expected_parts(lam, m)
                ok = c.dim == want and c.commutative is True
                rows.append({"n": n, "shape": str(lam), "marker": m.value, "dim": c.dim, "expected": want,
                             "commutative": c.commutative, "status": "pass" if ok else "fail"})
    return CriterionResult(7, "commutant dichotomy and dagger families, n = 4, 5", not _failures(rows),
                           _failures(rows) or [{"checked": len(rows)}])


def basic_set_suite(ns=(4, 5)) -> CriterionResult:
    rows = []
    for n in ns:
        for m in Marker:
            r = br.basic_set(n, m)
            ok = r["audit"] == "pass"
            if n == 4 and m is Marker.DAGGER:
                ok = ok and r["count"] == 11
            rows.append({"n": n, "marker": m.value, "count": r["count"], "sum_deg_sq": r["sum_deg_sq"],
                         "target": r["target"], "status": "pass" if ok else "fail"})
    return CriterionResult(8, "basic-set degree audits, n = 4, 5", not _failures(rows), rows)


def split_targets(include_dagger: bool = True) -> list[tuple[Bipartition, Marker]]:
    out = []
    for lam in enumerate_bipartitions(4):
        for m in (Marker.SHARP, Marker.FLAT, Marker.NATURAL, Marker.DAGGER):
            if is_fixed(lam, m):
                out.append((lam, m))
    if include_dagger:
        out.append((DAGGER_SHAPE, Marker.DAGGER))
    return out


def splitting_suite(include_dagger: bool = True, point: Specialization = DEFAULT_POINT,
                    precision_bits: int = 128) -> CriterionResult:
    rows = []
    for lam, m in split_targets(include_dagger):
        rpt = br.split(lam, m, point, precision_bits, TOLERANCE, with_commutant=False)
        j = rpt.to_json()
        bad = _failures(rpt.checks)
        rows.append({"shape": str(lam), "marker": m.value, "residual": j["residual"],
                     "status": "fail" if bad else "pass", "failed_checks": [c["name"] for c in bad],
                     "notes": rpt.notes})
    return CriterionResult(9, "splitting residuals < 1e-25 at 128 bits", not _failures(rows), rows)


def kernel_suite() -> CriterionResult:
    rows = []
    ys = [ONE, -ONE, U, -U, U.inverse(), -U.inverse()]
    names = ["1", "-1", "u", "-u", "1/u", "-1/u"]
    skipped = 0
    for k in range(-3, 4):
        for y, yn in zip(ys, names):
            try:
                M = kernel_matrix(k, y, "M")
                Mp = kernel_matrix(k, y, "M'")
            except FieldDivisionByZero:
                skipped += 1
                continue
            ok = (linalg.det2(M) == -Q
                  and linalg.mat_eq(linalg.mat_mul(Mp, Mp), linalg.identity(2))
                  and linalg.trace(Mp).is_zero())
            rows.append({"k": k, "y": yn, "status": "pass" if ok else "fail"})
    return CriterionResult(10, "kernel matrices: det M = -q, M'^2 = I, tr M' = 0", not _failures(rows),
                           _failures(rows) or [{"probes": len(rows), "poles_skipped": skipped}])


CRITERIA = {
    1: relation_suite,
    2: dimension_audit,
    3: counting_suite,
    4: intertwiner_suite,
    5: omega_suite,
    6: crossed_suite,
    7: commutant_suite,
    8: basic_set_suite,
    9: splitting_suite,
    10: kernel_suite,
}


def run_desk(select=None) -> list[CriterionResult]:
    out = []
    for k, fn in CRITERIA.items():
        if select and k not in select:
            continue
        t0 = time.perf_counter()
        r = fn()
        r.seconds = time.perf_counter() - t0
        out.append(r)
    return out
