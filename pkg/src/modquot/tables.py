"""Stored reference tables and the n_min search for symmetric block partitions."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .certify import (
    GENERAL_TYPE,
    CertificateInput,
    build_certificate,
    f_closed,
    f_general,
)
from .errors import CriterionInapplicable, DomainError, Unsupported

THRESHOLD = Fraction(13)


@lru_cache(maxsize=None)
def load_tables() -> dict:
    text = resources.files("modquot").joinpath("data/tables.json").read_text(encoding="utf-8")
    return json.loads(text)


def table(name: str) -> dict[int, int]:
    """``table1`` (M_{g,n}), ``table2`` (S_n quotients) or ``table3`` (S_n x S_n quotients)."""
    data = load_tables()
    if name not in ("table1", "table2", "table3"):
        raise DomainError(f"unknown table {name!r}")
    return {int(g): n for g, n in data[name]["n_min"].items()}


def table3_exceptions() -> dict[int, dict]:
    return {int(g): v for g, v in load_tables()["table3_exceptions"].items()}


@dataclass(frozen=True)
class CellResult:
    g: int
    n: int
    m: int
    passed: bool
    f: Fraction | None
    choice: str  # "W" or the catalog entry used on every block

    def describe(self) -> str:
        f = "n/a" if self.f is None else str(self.f)
        return f"g={self.g} n={self.n} x{self.m} [{self.choice}] f={f} {'pass' if self.passed else 'fail'}"


def general_choices(g: int, n: int) -> list[str]:
    """Catalog entries living on n points, tried uniformly on every block."""
    out = []
    if n == g - 1 and g >= 3:
        out.append("T")
    if (g - n) % 2 == 0 and n >= 2 and 2 <= g - n:
        out.append(f"F:{(g - n) // 2}")
    if (g - n) % 2 == 1 and n >= 3 and 1 <= (g - n + 1) // 2:
        out.append(f"Ftilde:{(g - n + 1) // 2}")
    return out


def evaluate_cell(g: int, n: int, m: int, mode: str = "closed", verify: bool = False) -> CellResult:
    """Best attempt at certifying (n, ..., n) (m blocks) in genus g."""
    if mode not in ("closed", "general"):
        raise DomainError(f"unknown mode {mode!r}")
    sizes = (n,) * m
    attempts: list[tuple[str, Fraction]] = []
    if n <= g - 2:
        try:
            attempts.append(("W", f_closed(g, sizes)))
        except CriterionInapplicable:
            pass
    if mode == "general":
        for choice in general_choices(g, n):
            try:
                attempts.append((choice, f_general(g, sizes, [choice] * m)))
            except (CriterionInapplicable, Unsupported):
                pass
    if not attempts:
        return CellResult(g, n, m, False, None, "-")
    passing = [a for a in attempts if a[1] <= THRESHOLD]
    choice, f = min(passing or attempts, key=lambda a: a[1])
    passed = bool(passing)
    if passed and verify:
        choices = {} if choice == "W" else {k + 1: choice for k in range(m)}
        passed = build_certificate(CertificateInput(g, sizes, choices)).grade == GENERAL_TYPE
    return CellResult(g, n, m, passed, f, choice)


def nmin_search(g: int, m: int = 2, mode: str = "closed", verify: bool = False) -> int | None:
    """Smallest n such that every n' from n up to the top of the range certifies.

    The range ends at g - 2 in closed mode (beyond it epsilon vanishes) and at
    g - 1 in general mode, where T_g is available.
    """
    if g < 4:
        raise Unsupported(f"no slope divisor for g = {g}")
    if m < 1:
        raise DomainError("m >= 1")
    top = g - 2 if mode == "closed" else g - 1
    best = None
    for n in range(top, 0, -1):
        if not evaluate_cell(g, n, m, mode, verify).passed:
            break
        best = n
    return best


def sweep(g: int, m: int = 2, mode: str = "closed") -> list[CellResult]:
    top = g - 2 if mode == "closed" else g - 1
    return [evaluate_cell(g, n, m, mode) for n in range(1, top + 1)]


def reproduce_tables(which: str, gmin: int | None = None, gmax: int | None = None) -> dict:
    """Report for ``mgn`` / ``msn`` (stored data) or ``diff`` (recomputed Table 3).

    The report's ``ok`` is False when a recomputed value disagrees with the
    stored value and no exception entry accounts for it.
    """
    if which == "mgn":
        data, desc = table("table1"), load_tables()["table1"]["description"]
    elif which == "msn":
        data, desc = table("table2"), load_tables()["table2"]["description"]
    elif which == "diff":
        return _diff(gmin, gmax)
    else:
        raise DomainError(f"unknown table {which!r}")
    lo = min(data) if gmin is None else gmin
    hi = max(data) if gmax is None else gmax
    rows = [{"g": g, "n_min": n} for g, n in sorted(data.items()) if lo <= g <= hi]
    return {"which": which, "description": desc, "rows": rows, "ok": True}


def _diff(gmin, gmax) -> dict:
    stored = table("table3")
    exceptions = table3_exceptions()
    lo = max(min(stored), gmin if gmin is not None else min(stored))
    hi = min(max(stored), gmax if gmax is not None else max(stored))
    rows, ok = [], True
    for g in range(lo, hi + 1):
        closed = nmin_search(g, 2, "closed")
        general = nmin_search(g, 2, "general")
        row = {"g": g, "table": stored[g], "closed": closed, "general": general}
        exc = exceptions.get(g)
        if closed == stored[g]:
            row["status"] = "match"
        elif exc is not None and exc.get("closed") == closed and (
            "general" not in exc or exc["general"] == general
        ):
            row["status"] = "documented-exception"
        else:
            row["status"] = "mismatch"
            ok = False
        if exc is not None:
            expected = {k: exc[k] for k in ("closed", "general") if k in exc}
            row["exception"] = {"expected": expected, "note": exc["note"]}
            if any(row[k] != v for k, v in expected.items()):
                row["exception"]["disagrees"] = True
        rows.append(row)
    return {"which": "diff", "description": load_tables()["table3"]["description"],
            "rows": rows, "ok": ok}
