"""Acceptance criteria, each at its stated corpus size and exact tolerance.

Run alone with ``pytest tests/test_acceptance.py``; the terminal summary
prints one PASS/FAIL line per criterion.
"""

import itertools
import random

import pytest

from cumulative import interface as ops
from cumulative.domains import (
    BOTTOM,
    COLLECTING,
    CONCRETE,
    CONST,
    INTERVAL,
    NEG_INF,
    POS_INF,
    SIGN,
    Flat,
    Interval,
    Known,
    Sign,
    interval_join,
)
from cumulative.effects import EMPTY, HandlerFrame, HandlerStack, Trace, install, traced
from cumulative.errors import CumulativeError, MissingHandlers, UnhandledEffect
from cumulative.interpreters import (
    IFNZ_ELIM_SHORTCIRCUIT,
    REJECT,
    Mode,
    abstract_stack,
    concrete_stack,
    eval_monolithic,
    eval_skeleton,
    run_abstract,
    run_concrete,
    run_fold,
    run_skeleton,
)
from cumulative.oracle import check_precision, enumerate_concrete
from cumulative.properties import corpus
from cumulative.syntax import Any, Ifnz, Num, Plus, depth, is_deterministic

DIFFERENTIAL_SAMPLES = 10_000
ANY_SAMPLES = 5_000
DEPTH = 8
ABSTRACT = (INTERVAL, SIGN, CONST, COLLECTING)
MODES = (Mode.NAIVE, Mode.REFINED)


def outcome(fn, *args):
    try:
        return ("ok", fn(*args))
    except CumulativeError as exc:
        return ("error", exc.tag)


@pytest.fixture(scope="module")
def deterministic_corpus():
    samples = [s.expr for s in corpus(DIFFERENTIAL_SAMPLES, DEPTH, allow_any=False, seed_base=0)]
    assert len(samples) == DIFFERENTIAL_SAMPLES and max(map(depth, samples)) <= DEPTH
    return samples


@pytest.fixture(scope="module")
def any_corpus():
    samples = [s.expr for s in corpus(ANY_SAMPLES, DEPTH, allow_any=True, seed_base=1_000_000)]
    assert len(samples) == ANY_SAMPLES
    assert sum(1 for e in samples if not is_deterministic(e)) > ANY_SAMPLES // 2
    return samples


@pytest.fixture(scope="module")
def abstract_results(any_corpus):
    """run_abstract for every corpus expression, domain and mode."""
    return {
        (i, pkg.name, mode): outcome(run_abstract, e, pkg, mode)
        for i, e in enumerate(any_corpus)
        for pkg in ABSTRACT
        for mode in MODES
    }


@pytest.fixture(scope="module")
def outcomes(any_corpus):
    return [enumerate_concrete(e) for e in any_corpus]


def report(number, failures, total):
    print(f"criterion {number}: {total - len(failures)}/{total} ok")
    assert not failures, failures[:5]


@pytest.mark.criterion(1, "differential concreteness (10,000 Any-free expressions)")
def test_c1_differential_concreteness(deterministic_corpus):
    failures = []
    for i, e in enumerate(deterministic_corpus):
        reference = outcome(eval_monolithic, e)
        skeleton = outcome(run_concrete, e)
        fold = outcome(run_fold, e, CONCRETE)
        if not reference == skeleton == fold:
            failures.append((i, reference, skeleton, fold))
    report(1, failures, len(deterministic_corpus))


@pytest.mark.criterion(2, "skeleton/fold agreement (5,000 expressions x 4 domains x 2 modes)")
def test_c2_skeleton_fold_agreement(any_corpus, abstract_results):
    failures = []
    for i, e in enumerate(any_corpus):
        for pkg in ABSTRACT:
            for mode in MODES:
                skeleton = abstract_results[i, pkg.name, mode]
                fold = outcome(run_fold, e, pkg, mode)
                if skeleton != fold:
                    failures.append((i, pkg.name, mode.value, skeleton, fold))
    report(2, failures, len(any_corpus) * len(ABSTRACT) * len(MODES))


@pytest.mark.criterion(3, "soundness against brute-force enumeration, every domain and mode")
def test_c3_soundness(any_corpus, abstract_results, outcomes):
    failures = []
    checked = 0
    for i, concrete in enumerate(outcomes):
        for pkg in ABSTRACT:
            for mode in MODES:
                status, d = abstract_results[i, pkg.name, mode]
                checked += 1
                if status != "ok":
                    failures.append((i, pkg.name, mode.value, d))
                    continue
                missed = [n for n in concrete.results if not pkg.contains(d, n)]
                if missed:
                    failures.append((i, pkg.name, mode.value, missed[0], pkg.render(d)))
    report(3, failures, checked)


@pytest.mark.criterion(4, "collecting analysis equals enumeration")
def test_c4_collecting_exactness(abstract_results, outcomes):
    failures = [
        (i, abstract_results[i, "collecting", Mode.REFINED], o.results)
        for i, o in enumerate(outcomes)
        if abstract_results[i, "collecting", Mode.REFINED] != ("ok", o.results)
    ]
    report(4, failures, len(outcomes))


@pytest.mark.criterion(5, "refined results below naive results; strict refinement exhibited")
def test_c5_precision_ordering(any_corpus, abstract_results):
    failures, strict = [], 0
    for i in range(len(any_corpus)):
        for pkg in (INTERVAL, SIGN, CONST):
            _, refined = abstract_results[i, pkg.name, Mode.REFINED]
            _, naive = abstract_results[i, pkg.name, Mode.NAIVE]
            if not pkg.leq(refined, naive):
                failures.append((i, pkg.name, refined, naive))
            elif not pkg.leq(naive, refined):
                strict += 1
    print(f"criterion 5: {strict} strict refinements in corpus")
    assert strict > 0
    v = check_precision(Ifnz(Num(1), Num(2), Num(3)), INTERVAL)
    assert v.strict and v.abstract == Interval(2, 2) and v.naive == Interval(2, 3)
    report(5, failures, len(any_corpus) * 3)


@pytest.mark.criterion(6, "exact results on deterministic programs")
def test_c6_deterministic_exactness(deterministic_corpus):
    failures = []
    for i, e in enumerate(deterministic_corpus):
        n = eval_monolithic(e)
        got = (run_abstract(e, INTERVAL, Mode.REFINED), run_abstract(e, CONST, Mode.REFINED))
        if got != (Interval(n, n), Known(n)):
            failures.append((i, n, got))
    report(6, failures, len(deterministic_corpus))


@pytest.mark.criterion(7, "single-path concrete vs multi-path abstract control flow")
def test_c7_short_circuit_witness():
    e = Ifnz(Num(1), Num(2), Any(0, 1))
    concrete_trace, abstract_trace = Trace(), Trace()
    concrete = run_skeleton(e, concrete_stack(REJECT).map(lambda f: traced(f, concrete_trace)))
    abstract = run_skeleton(e, abstract_stack(INTERVAL, Mode.NAIVE).map(lambda f: traced(f, abstract_trace)))
    assert concrete == run_concrete(e, REJECT) == 2
    assert abstract == Interval(0, 2)

    def branch_resumptions(trace):
        return sum(1 for op, position, _ in trace.resumes if op == ops.IFNZ_ELIM and position in (1, 2))

    assert trace_ifnz(concrete_trace) == trace_ifnz(abstract_trace) == 1
    assert branch_resumptions(concrete_trace) == 1
    assert branch_resumptions(abstract_trace) == 2


def trace_ifnz(trace):
    return trace.count(ops.IFNZ_ELIM)


@pytest.mark.criterion(8, "lattice laws: Sign and Const exhaustive, Interval on 1,000 pairs")
def test_c8_lattice_laws():
    carriers = {
        SIGN: list(Sign),
        CONST: [Flat.BOT, Flat.TOP] + [Known(n) for n in range(-8, 9)],
    }
    failures = []
    for pkg, carrier in carriers.items():
        join, leq = pkg.join, pkg.leq
        for a in carrier:
            if not (join(a, a) == a and join(a, pkg.bottom) == a and leq(a, a)):
                failures.append((pkg.name, "identity/idempotence/reflexivity", a))
        for a, b in itertools.product(carrier, repeat=2):
            j = join(a, b)
            if j != join(b, a):
                failures.append((pkg.name, "commutativity", a, b))
            if not (leq(a, j) and leq(b, j)):
                failures.append((pkg.name, "upper bound", a, b))
            if any(leq(a, c) and leq(b, c) and not leq(j, c) for c in carrier):
                failures.append((pkg.name, "least upper bound", a, b))
            if leq(a, b) and leq(b, a) and a != b:
                failures.append((pkg.name, "antisymmetry", a, b))
        for a, b, c in itertools.product(carrier, repeat=3):
            if join(join(a, b), c) != join(a, join(b, c)):
                failures.append((pkg.name, "associativity", a, b, c))
            if leq(a, b) and leq(b, c) and not leq(a, c):
                failures.append((pkg.name, "transitivity", a, b, c))

    rng = random.Random(8)

    def sample():
        if rng.random() < 0.1:
            return BOTTOM
        lo, hi = sorted(rng.randint(-50, 50) for _ in range(2))
        return Interval(NEG_INF if rng.random() < 0.1 else lo, POS_INF if rng.random() < 0.1 else hi)

    for _ in range(1000):
        a, b, c = sample(), sample(), sample()
        j = interval_join(a, b)
        if j != interval_join(b, a) or interval_join(a, a) != a or interval_join(a, BOTTOM) != a:
            failures.append(("interval", "commutativity/idempotence/identity", a, b))
        if interval_join(j, c) != interval_join(a, interval_join(b, c)):
            failures.append(("interval", "associativity", a, b, c))
        if not (INTERVAL.leq(a, j) and INTERVAL.leq(b, j)):
            failures.append(("interval", "upper bound", a, b))
        if INTERVAL.leq(a, c) and INTERVAL.leq(b, c) and not INTERVAL.leq(j, c):
            failures.append(("interval", "least upper bound", a, b, c))
        if INTERVAL.leq(a, b) and INTERVAL.leq(b, a) and a != b:
            failures.append(("interval", "antisymmetry", a, b))
        if INTERVAL.leq(a, b) and INTERVAL.leq(b, c) and not INTERVAL.leq(a, c):
            failures.append(("interval", "transitivity", a, b, c))
    report(8, failures, 1000 + sum(len(c) ** 3 for c in carriers.values()))


@pytest.mark.criterion(9, "handler runtime contract")
def test_c9_handler_runtime_contract():
    # tail equivalence
    f = lambda n: n * n - 3  # noqa: E731
    frame = HandlerFrame.pure({ops.NUM: f})
    assert install(EMPTY, frame, lambda s: [s.perform(ops.NUM, x) for x in range(-5, 6)]) == [f(x) for x in range(-5, 6)]
    # shadowing
    outer = HandlerFrame.pure({ops.NUM: lambda n: "outer"})
    inner = HandlerFrame.pure({ops.NUM: lambda n: "inner"})
    assert HandlerStack.of(outer, inner).perform(ops.NUM, 0) == "inner"
    # zero resumptions
    abort = HandlerFrame.control({ops.PLUS_ELIM: lambda ctx, e1, e2, resume: "aborted"})
    assert eval_skeleton(Plus(Num(1), Num(2)), concrete_stack().push(abort)) == "aborted"
    # unhandled
    with pytest.raises(UnhandledEffect, match="num"):
        EMPTY.perform(ops.NUM, 1)
    # completeness check names the missing operation
    incomplete = HandlerStack.of(*(fr for fr in concrete_stack().frames if fr is not IFNZ_ELIM_SHORTCIRCUIT))
    with pytest.raises(MissingHandlers) as info:
        run_skeleton(Num(1), incomplete)
    assert info.value.missing == ["ifnz_elim"] and "ifnz_elim" in str(info.value)
