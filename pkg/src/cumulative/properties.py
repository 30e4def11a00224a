"""Property suites run over generated corpora by ``cumulative fuzz`` and the tests."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

from .domains import ABSTRACT_DOMAINS, COLLECTING, CONCRETE, CONST, INTERVAL, Interval, Known, get_domain
from .errors import CumulativeError
from .interpreters import AnyPolicy, Mode, eval_monolithic, run_abstract, run_concrete, run_fold
from .oracle import ENUMERATION_CAP, check_precision, check_soundness, enumerate_concrete, enumeration_size
from .syntax import Expr, generate, is_deterministic, render

ABSTRACT_MODES = (Mode.NAIVE, Mode.REFINED)


@dataclass(frozen=True)
class Sample:
    index: int
    seed: int
    expr: Expr


def corpus(samples: int, depth: int = 8, allow_any: bool = False, seed_base: int = 0,
           cap: int = ENUMERATION_CAP) -> Iterator[Sample]:
    """``samples`` generated expressions whose ``any`` enumeration stays within ``cap``."""
    seed = seed_base
    produced = 0
    while produced < samples:
        e = generate(seed, depth, allow_any)
        if enumeration_size(e) <= cap:
            yield Sample(produced, seed, e)
            produced += 1
        seed += 1


def _outcome(fn, *args):
    """Value of ``fn(*args)``, or the error tag it raised."""
    try:
        return ("ok", fn(*args))
    except CumulativeError as exc:
        return ("error", exc.tag)


def check_differential(e: Expr, seed: int = 0) -> str | None:
    """Concrete interpreters agree with each other; skeleton and fold agree on every abstract run."""
    policy = AnyPolicy.seeded(seed)
    reference = _outcome(eval_monolithic, e, policy)
    skeleton = _outcome(run_concrete, e, policy)
    if skeleton != reference:
        return f"run_concrete {skeleton} != eval_monolithic {reference}"
    if is_deterministic(e):
        fold = _outcome(run_fold, e, CONCRETE)
        if fold != reference:
            return f"run_fold(concrete) {fold} != eval_monolithic {reference}"
    return check_agreement(e)


def check_agreement(e: Expr) -> str | None:
    for name in ABSTRACT_DOMAINS:
        pkg = get_domain(name)
        for mode in ABSTRACT_MODES:
            skeleton = _outcome(run_abstract, e, pkg, mode)
            fold = _outcome(run_fold, e, pkg, mode)
            if skeleton != fold:
                return f"{name}/{mode.value}: run_abstract {skeleton} != run_fold {fold}"
    return None


def check_sound(e: Expr) -> str | None:
    outcomes = enumerate_concrete(e)
    for name in ABSTRACT_DOMAINS:
        pkg = get_domain(name)
        for mode in ABSTRACT_MODES:
            verdict = check_soundness(e, pkg, mode, outcomes)
            if not verdict.ok:
                return f"{name}/{mode.value}: {verdict.describe(pkg)}"
    collected = run_abstract(e, COLLECTING, Mode.REFINED)
    if collected != outcomes.results:
        return f"collecting {COLLECTING.render(collected)} != enumeration {COLLECTING.render(outcomes.results)}"
    return None


def check_precise(e: Expr) -> str | None:
    for name in ABSTRACT_DOMAINS:
        pkg = get_domain(name)
        verdict = check_precision(e, pkg)
        if not verdict.ok:
            return f"{name}: {verdict.describe(pkg)}"
    return None


def check_exact(e: Expr) -> str | None:
    """Deterministic programs are analysed exactly by the refined interval, const and collecting runs."""
    if not is_deterministic(e):
        return None
    try:
        n = eval_monolithic(e)
    except CumulativeError:
        return None
    expected = {INTERVAL: Interval(n, n), CONST: Known(n), COLLECTING: frozenset({n})}
    for pkg, want in expected.items():
        got = run_abstract(e, pkg, Mode.REFINED)
        if got != want:
            return f"{pkg.name}: {pkg.render(got)} != {pkg.render(want)}"
    return None


SUITES: dict[str, Callable[..., str | None]] = {
    "differential": check_differential,
    "soundness": check_sound,
    "precision": check_precise,
    "exactness": check_exact,
}


@dataclass
class SuiteReport:
    suite: str
    passed: int = 0
    failed: int = 0
    counterexample: str | None = None
    failures: list[tuple[int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def summary(self) -> str:
        line = f"{self.suite}: {self.passed} passed, {self.failed} failed"
        if self.counterexample:
            line += f"\n  first counterexample: {self.counterexample}"
        return line


def run_suite(name: str, samples: list[Sample]) -> SuiteReport:
    check = SUITES[name]
    report = SuiteReport(name)
    for s in samples:
        try:
            problem = check(s.expr, s.seed) if name == "differential" else check(s.expr)
        except CumulativeError as exc:
            problem = f"unexpected {exc.tag}: {exc}"
        if problem is None:
            report.passed += 1
            continue
        report.failed += 1
        report.failures.append((s.index, problem))
        if report.counterexample is None:
            report.counterexample = f"#{s.index} (seed {s.seed}) {render(s.expr)}: {problem}"
    return report
