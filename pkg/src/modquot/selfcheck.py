"""Built-in consistency checks behind ``modquot selfcheck``.

``quick`` covers the exact identities and reproductions; ``full`` adds the
brute-force oracles, which enumerate subsets and are noticeably slower.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .catalog import a_closed, b_closed, weierstrass_summed
from .certify import GENERAL_TYPE, CertificateInput, build_certificate, f_closed, f_general
from .classify import classify
from .groups import parse_group
from .tables import nmin_search, table


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        extra = f"  {self.detail}" if self.detail else ""
        return f"  {tag}  {self.name} ({self.seconds:.2f}s){extra}"


@dataclass
class Harness:
    results: list[CheckResult] = field(default_factory=list)

    def run(self, name, fn):
        start = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashing check is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        self.results.append(CheckResult(name, bool(ok), detail, time.perf_counter() - start))

    @property
    def failed(self) -> int:
        return sum(not r.passed for r in self.results)

    def to_json(self):
        return {
            "passed": len(self.results) - self.failed,
            "failed": self.failed,
            "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in self.results],
        }


def check_closed_forms():
    bad = []
    for g in range(2, 31):
        for n in range(1, 31):
            ws = weierstrass_summed(g, n, min(g, n))
            if a_closed(g, n) * ws.w_psi != ws.w_lambda or b_closed(g, n) * ws.w_psi != ws.w_2:
                bad.append((g, n))
    return not bad, f"mismatches at {bad[:5]}" if bad else "2<=g<=30, 1<=n<=30"


def check_b_boundary():
    bad = []
    for g in range(5, 41):
        if b_closed(g, g - 1) != 3 or b_closed(g, g) != 3:
            bad.append((g, "g-1/g"))
        bad += [(g, n) for n in range(2, g - 1) if not b_closed(g, n) > 3]
        bad += [(g, n) for n in range(g + 1, 41) if not b_closed(g, n) < 3]
    return not bad, f"violations {bad[:5]}" if bad else "5<=g<=40"


def check_spot_values():
    got = {
        "f(23;2,2)": f_closed(23, (2, 2)),
        "f(10;7,7)": f_closed(10, (7, 7)),
        "f(23;23)": f_closed(23, (23,)),
    }
    want = {
        "f(23;2,2)": 13 - Fraction(11, 396),
        "f(10;7,7)": 13 - Fraction(13, 175),
        "f(23;23)": Fraction(12),
    }
    t = f_general(24, (23, 23), ["T", "T"])
    bad = [k for k in want if got[k] != want[k]]
    ok = not bad and t <= 13
    return ok, f"mismatch {bad}" if bad else f"f(24;23,23;T,T) = {t}"


def table3_cases():
    """(g, n, choices) for every Table 3 cell the engine certifies."""
    t3 = table("table3")
    cases = []
    for g, n in sorted(t3.items()):
        if g in (20, 22):
            choice = "F:8" if g == 20 else "Ftilde:9"
            cases.append((g, n, {1: choice, 2: choice}))
        elif n <= g - 2 and f_closed(g, (n, n)) <= 13:
            cases.append((g, n, {}))
    return cases


def check_certificate_zeros():
    bad = []
    for g, n, choices in table3_cases():
        cert = build_certificate(CertificateInput(g, (n, n), choices))
        r = cert.remainder
        cross = r.coefficient(0, (1, 1))
        ok = (
            cert.grade == GENERAL_TYPE
            and all(c.is_zero() for c in r.psi)
            and r.irr.is_zero()
            and cross.is_zero()
            and r.lam.value == 13 - cert.f_value
        )
        if not ok:
            bad.append((g, n))
    return not bad, f"failing cells {bad}" if bad else "psi, irr, cross pair exact zero"


def check_table3():
    t3 = table("table3")
    bad = [(g, nmin_search(g, 2, "closed"), t3[g]) for g in (10, 11, 12, 14, 15, 16, 17, 18, 19, 21, 23)
           if nmin_search(g, 2, "closed") != t3[g]]
    extra = {20: nmin_search(20, 2, "closed"), 22: nmin_search(22, 2, "closed")}
    if extra != {20: 5, 22: 6}:
        bad.append(("closed 20/22", extra))
    return not bad, f"(g, computed, table): {bad}" if bad else "all listed genera agree"


def check_classification():
    cases = [
        (25, 40, "A40", "GeneralType"),
        (10, 12, "S12", "Uniruled"),
        (9, 5, "S5", "Unirational"),
        (12, 12, "S12", "IntermediateKodaira(33)"),
        (23, 4, "gen:(1 2)(3 4)", "GeneralType"),
    ]
    bad = []
    for g, n, grp, want in cases:
        got = str(classify(g, n, parse_group(grp, n)))
        if got != want:
            bad.append((g, n, grp, got))
    return not bad, f"wrong verdicts {bad}" if bad else f"{len(cases)} verdicts"


def check_bruteforce_weierstrass():
    from .oracles import weierstrass_sums_bruteforce

    bad = []
    for g in range(2, 10):
        for n in range(1, 8):
            for m in range(1, min(n, g) + 1):
                ws = weierstrass_summed(g, n, m)
                bf = weierstrass_sums_bruteforce(g, n, m)
                if (ws.w_lambda, ws.w_psi) != bf[:2] or (n >= 2 and ws.w_2 != bf[2]):
                    bad.append((g, n, m))
    return not bad, f"mismatches {bad[:5]}" if bad else "n <= 7"


def check_pullback_oracle():
    from .oracles import pullback_equivalence

    bad = []
    for g in range(2, 6):
        for n in range(1, 7):
            bad += pullback_equivalence(g, n)
    return not bad, bad[0] if bad else "g <= 5, n <= 6, all kept sets"


def check_sampling():
    from .oracles import sample_remainders

    worst = []
    for g, sizes in ((23, (2, 2)), (21, (3, 3))):
        cert = build_certificate(CertificateInput(g, sizes))
        rep = sample_remainders(cert, 1000)
        if rep.negative:
            return False, f"({g}, {sizes}): {rep.negative} negative trials at {rep.worst_coordinate}"
        worst.append(str(rep.worst))
    return True, "min coordinate " + ", ".join(worst)


QUICK = [
    ("closed-form identities", check_closed_forms),
    ("b boundary identities", check_b_boundary),
    ("spot values of f", check_spot_values),
    ("Table 3 reproduction", check_table3),
    ("certificate exact zeros", check_certificate_zeros),
    ("classification verdicts", check_classification),
]

FULL = QUICK + [
    ("brute-force Weierstrass sums", check_bruteforce_weierstrass),
    ("aggregate vs one-point pullback", check_pullback_oracle),
    ("bound-soundness sampling", check_sampling),
]


def run_selfcheck(level: str = "quick") -> Harness:
    suites = {"quick": QUICK, "full": FULL}
    if level not in suites:
        raise ValueError(f"unknown level {level!r}")
    h = Harness()
    for name, fn in suites[level]:
        h.run(name, fn)
    return h
