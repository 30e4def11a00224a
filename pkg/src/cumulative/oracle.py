"""Brute-force concrete enumeration and the soundness/precision checks built on it.

The enumerator does not touch the effect runtime: it compiles the expression
into plain closures and runs them once per assignment of values to the
``any`` literals.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Any as AnyValue, Callable

from .domains import DomainPackage, checked_add
from .errors import EnumerationTooLarge, EvaluationError
from .interpreters import Mode, run_abstract
from .syntax import Any, Expr, Ifnz, Num, Plus, any_nodes

ENUMERATION_CAP = 4096


@dataclass(frozen=True)
class OutcomeSet:
    results: frozenset[int]
    errors: frozenset[str] = frozenset()


def enumeration_size(e: Expr) -> int:
    return math.prod(n.hi - n.lo + 1 for n in any_nodes(e))


def _compile(e: Expr) -> Callable[[tuple[int, ...]], int]:
    slot = itertools.count()

    def comp(e: Expr):
        if isinstance(e, Num):
            n = e.n
            return lambda env: n
        if isinstance(e, Any):
            i = next(slot)
            return lambda env: env[i]
        if isinstance(e, Plus):
            left, right = comp(e.e1), comp(e.e2)
            return lambda env: checked_add(left(env), right(env))
        if isinstance(e, Ifnz):
            guard, then, other = comp(e.e1), comp(e.e2), comp(e.e3)
            return lambda env: then(env) if guard(env) != 0 else other(env)
        raise TypeError(f"not an expression: {e!r}")

    return comp(e)


def enumerate_concrete(e: Expr, cap: int = ENUMERATION_CAP) -> OutcomeSet:
    """Every outcome of ``e`` over all independent resolutions of its ``any`` literals."""
    nodes = any_nodes(e)
    total = math.prod(n.hi - n.lo + 1 for n in nodes)
    if total > cap:
        raise EnumerationTooLarge(f"{total} resolutions exceed the cap of {cap}")
    program = _compile(e)
    results: set[int] = set()
    errors: set[str] = set()
    for env in itertools.product(*(range(n.lo, n.hi + 1) for n in nodes)):
        try:
            results.add(program(env))
        except EvaluationError as exc:
            errors.add(exc.tag)
    return OutcomeSet(frozenset(results), frozenset(errors))


@dataclass(frozen=True)
class Verdict:
    ok: bool
    abstract: AnyValue = None
    witness: int | None = None
    naive: AnyValue = None
    strict: bool = False

    def describe(self, pkg: DomainPackage) -> str:
        if self.naive is not None:
            rel = "strictly refines" if self.strict else ("refines" if self.ok else "does NOT refine")
            return f"refined {pkg.render(self.abstract)} {rel} naive {pkg.render(self.naive)}"
        if self.ok:
            return f"sound: {pkg.render(self.abstract)}"
        return f"violation: outcome {self.witness} not described by {pkg.render(self.abstract)}"


def check_soundness(e: Expr, pkg: DomainPackage, mode: Mode = Mode.REFINED,
                    outcomes: OutcomeSet | None = None) -> Verdict:
    if outcomes is None:
        outcomes = enumerate_concrete(e)
    d = run_abstract(e, pkg, mode)
    for n in sorted(outcomes.results):
        if not pkg.contains(d, n):
            return Verdict(False, d, witness=n)
    return Verdict(True, d)


def check_precision(e: Expr, pkg: DomainPackage) -> Verdict:
    refined = run_abstract(e, pkg, Mode.REFINED)
    naive = run_abstract(e, pkg, Mode.NAIVE)
    ok = pkg.leq(refined, naive)
    return Verdict(ok, refined, naive=naive, strict=ok and not pkg.leq(naive, refined))
