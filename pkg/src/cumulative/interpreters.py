"""The interpreter family.

``eval_monolithic`` is the reference big-step evaluator with syntax and
semantics fused.  ``eval_fold`` reduces an expression through introduction
operations only.  ``eval_skeleton`` is the open interpreter: it decides
nothing about sub-expression order or branch selection and leaves all of it
to the installed elimination handlers.  ``run_concrete`` and ``run_abstract``
substantiate the skeleton with different handler stacks built from shared,
reusable frames.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass

from . import interface as ops
from .domains import CONCRETE, DomainPackage, checked_add, get_domain
from .effects import HandlerFrame, HandlerStack, check_complete, perform
from .errors import AnyRejected, ConfigurationError
from .syntax import Any, Expr, Ifnz, Num, Plus


class Mode(str, enum.Enum):
    SHORTCIRCUIT = "shortcircuit"
    NAIVE = "naive"
    REFINED = "refined"


class Variant(str, enum.Enum):
    MONOLITHIC = "monolithic"
    FOLD = "fold"
    SKELETON = "skeleton"


@dataclass(frozen=True)
class AnyPolicy:
    """How a concrete run resolves ``any(lo,hi)``; abstract runs use ``abstract``."""

    kind: str
    seed: int | None = None

    def __post_init__(self):
        if self.kind not in ("reject", "abstract", "seeded"):
            raise ValueError(f"unknown any policy {self.kind!r}")
        if (self.kind == "seeded") != (self.seed is not None):
            raise ValueError("a seed is required exactly for the seeded policy")

    @classmethod
    def seeded(cls, seed: int) -> AnyPolicy:
        return cls("seeded", seed)

    def __str__(self):
        return f"seeded({self.seed})" if self.kind == "seeded" else self.kind


REJECT = AnyPolicy("reject")
ABSTRACT = AnyPolicy("abstract")


class SeededChoice:
    """Resolves successive ``any`` literals from a seed.

    The k-th literal met in evaluation order gets a value derived from
    ``(seed, k)``.  Both concrete evaluators visit literals in the same order,
    so they agree on every expression.
    """

    def __init__(self, seed: int):
        self.seed = seed
        self.count = 0

    def __call__(self, lo: int, hi: int) -> int:
        digest = hashlib.blake2b(f"{self.seed}:{self.count}".encode(), digest_size=8).digest()
        self.count += 1
        return lo + int.from_bytes(digest, "big") % (hi - lo + 1)


def _reject_any(lo: int, hi: int) -> int:
    raise AnyRejected(f"any({lo},{hi}) met under the reject policy")


def _any_resolver(policy: AnyPolicy):
    if policy.kind == "reject":
        return _reject_any
    if policy.kind == "seeded":
        return SeededChoice(policy.seed)
    raise ConfigurationError("concrete evaluation cannot use the abstract any policy")


# -- monolithic reference ---------------------------------------------------


def eval_monolithic(e: Expr, any_policy: AnyPolicy = REJECT) -> int:
    resolve = _any_resolver(any_policy)

    def ev(e: Expr) -> int:
        if isinstance(e, Num):
            return e.n
        if isinstance(e, Plus):
            return checked_add(ev(e.e1), ev(e.e2))
        if isinstance(e, Ifnz):
            return ev(e.e2) if ev(e.e1) != 0 else ev(e.e3)
        if isinstance(e, Any):
            return resolve(e.lo, e.hi)
        raise TypeError(f"not an expression: {e!r}")

    return ev(e)


# -- shared frames ----------------------------------------------------------


def _plus_elim(ctx, e1, e2, resume):
    return ctx.perform(ops.PLUS_INTRO, resume(e1), resume(e2))


def _ifnz_elim_shortcircuit(ctx, e1, e2, e3, resume):
    return resume(e2) if resume(e1) != 0 else resume(e3)


def _ifnz_elim_all(ctx, e1, e2, e3, resume):
    d1 = resume(e1)
    d2 = resume(e2)
    d3 = resume(e3)
    return ctx.perform(ops.IFNZ_INTRO, d1, d2, d3)


def _ifnz_intro_refined(ctx, d1, d2, d3):
    taken = ctx.perform(ops.ASSUME_NZ, d1, d2)
    other = ctx.perform(ops.ASSUME_Z, d1, d3)
    return ctx.perform(ops.JOIN, taken, other)


def _ifnz_intro_naive(ctx, d1, d2, d3):
    return ctx.perform(ops.JOIN, d2, d3)


PLUS_ELIM = HandlerFrame.control({ops.PLUS_ELIM: _plus_elim}, "plus_elim")
IFNZ_ELIM_SHORTCIRCUIT = HandlerFrame.control({ops.IFNZ_ELIM: _ifnz_elim_shortcircuit}, "ifnz_elim.shortcircuit")
IFNZ_ELIM_ALL = HandlerFrame.control({ops.IFNZ_ELIM: _ifnz_elim_all}, "ifnz_elim.all")

IFNZ_INTRO_REFINED = HandlerFrame.tail({ops.IFNZ_INTRO: _ifnz_intro_refined}, "ifnz_intro.refined")
IFNZ_INTRO_NAIVE = HandlerFrame.tail({ops.IFNZ_INTRO: _ifnz_intro_naive}, "ifnz_intro.naive")
# Concrete conditional as an introduction; used only by the fold.
IFNZ_INTRO_SELECT = HandlerFrame.pure({ops.IFNZ_INTRO: lambda d1, d2, d3: d2 if d1 != 0 else d3}, "ifnz_intro.select")

REJECT_ANY = HandlerFrame.pure({ops.ANY_INTRO: _reject_any}, "concrete.any.reject")

_IFNZ_INTRO = {Mode.NAIVE: IFNZ_INTRO_NAIVE, Mode.REFINED: IFNZ_INTRO_REFINED, Mode.SHORTCIRCUIT: IFNZ_INTRO_SELECT}


def any_frame(pkg: DomainPackage, policy: AnyPolicy) -> HandlerFrame:
    if policy.kind == "abstract":
        return pkg.any_frame
    if pkg is not CONCRETE:
        raise ConfigurationError(f"any policy {policy} only applies to the concrete domain")
    if policy.kind == "reject":
        return REJECT_ANY
    # Seeded choice carries a counter, so each run gets its own frame.
    return HandlerFrame.pure({ops.ANY_INTRO: SeededChoice(policy.seed)}, "concrete.any.seeded")


def _domain_frames(pkg: DomainPackage, mode: Mode, any_policy: AnyPolicy) -> list[HandlerFrame]:
    frames = [pkg.intro_frame, any_frame(pkg, any_policy)]
    if mode is Mode.SHORTCIRCUIT:
        return frames
    if not pkg.abstract:
        raise ConfigurationError(f"{mode.value} mode needs a join; domain {pkg.name!r} has none")
    frames.append(pkg.join_frame)
    if mode is Mode.REFINED:
        if not pkg.refinable:
            raise ConfigurationError(f"refined mode needs assume operations; domain {pkg.name!r} has none")
        frames.append(pkg.assume_frame)
    return frames


def concrete_stack(any_policy: AnyPolicy = REJECT) -> HandlerStack:
    """Handlers for single-path concrete evaluation of the skeleton."""
    return HandlerStack.of(*_domain_frames(CONCRETE, Mode.SHORTCIRCUIT, any_policy), PLUS_ELIM, IFNZ_ELIM_SHORTCIRCUIT)


def abstract_stack(pkg: DomainPackage, mode: Mode = Mode.REFINED) -> HandlerStack:
    """Handlers for multi-path evaluation of the skeleton over ``pkg``."""
    mode = Mode(mode)
    if mode is Mode.SHORTCIRCUIT:
        raise ConfigurationError("abstract runs use the naive or refined mode")
    return HandlerStack.of(*_domain_frames(pkg, mode, ABSTRACT), _IFNZ_INTRO[mode], PLUS_ELIM, IFNZ_ELIM_ALL)


def fold_stack(pkg: DomainPackage, mode: Mode, any_policy: AnyPolicy) -> HandlerStack:
    mode = Mode(mode)
    if mode is Mode.SHORTCIRCUIT and pkg.abstract:
        raise ConfigurationError("the selecting conditional only applies to the concrete domain")
    return HandlerStack.of(*_domain_frames(pkg, mode, any_policy), _IFNZ_INTRO[mode])


# -- fold and skeleton ------------------------------------------------------


def eval_fold(e: Expr, stack: HandlerStack):
    if isinstance(e, Num):
        return perform(stack, ops.NUM, e.n)
    if isinstance(e, Plus):
        return perform(stack, ops.PLUS_INTRO, eval_fold(e.e1, stack), eval_fold(e.e2, stack))
    if isinstance(e, Ifnz):
        return perform(
            stack, ops.IFNZ_INTRO, eval_fold(e.e1, stack), eval_fold(e.e2, stack), eval_fold(e.e3, stack)
        )
    if isinstance(e, Any):
        return perform(stack, ops.ANY_INTRO, e.lo, e.hi)
    raise TypeError(f"not an expression: {e!r}")


def eval_skeleton(e: Expr, stack: HandlerStack):
    if isinstance(e, Num):
        return perform(stack, ops.NUM, e.n)
    if isinstance(e, Plus):
        return perform(stack, ops.PLUS_ELIM, e.e1, e.e2, then=eval_skeleton)
    if isinstance(e, Ifnz):
        return perform(stack, ops.IFNZ_ELIM, e.e1, e.e2, e.e3, then=eval_skeleton)
    if isinstance(e, Any):
        return perform(stack, ops.ANY_INTRO, e.lo, e.hi)
    raise TypeError(f"not an expression: {e!r}")


def run_skeleton(e: Expr, stack: HandlerStack):
    check_complete(stack, ops.required_ops("skeleton"))
    return eval_skeleton(e, stack)


def run_fold(e: Expr, pkg: DomainPackage, mode: Mode | None = None, any_policy: AnyPolicy | None = None):
    if mode is None:
        mode = Mode.REFINED if pkg.abstract else Mode.SHORTCIRCUIT
    if any_policy is None:
        any_policy = ABSTRACT if pkg.abstract else REJECT
    stack = fold_stack(pkg, Mode(mode), any_policy)
    check_complete(stack, ops.required_ops("fold"))
    return eval_fold(e, stack)


def run_concrete(e: Expr, any_policy: AnyPolicy = REJECT) -> int:
    return run_skeleton(e, concrete_stack(any_policy))


def run_abstract(e: Expr, pkg: DomainPackage, mode: Mode = Mode.REFINED):
    return run_skeleton(e, abstract_stack(pkg, mode))


# -- configured runs --------------------------------------------------------


@dataclass(frozen=True)
class AnalysisConfig:
    domain: str = "concrete"
    variant: Variant = Variant.SKELETON
    mode: Mode = Mode.SHORTCIRCUIT
    any_policy: AnyPolicy = REJECT

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        object.__setattr__(self, "mode", Mode(self.mode))
        pkg = get_domain(self.domain)
        concrete_mode = self.mode is Mode.SHORTCIRCUIT
        if concrete_mode != (pkg is CONCRETE):
            raise ConfigurationError(f"mode {self.mode.value!r} does not apply to domain {self.domain!r}")
        if concrete_mode and self.any_policy.kind == "abstract":
            raise ConfigurationError("concrete runs need the reject or seeded any policy")
        if not concrete_mode and self.any_policy.kind != "abstract":
            raise ConfigurationError("abstract runs use the abstract any policy")
        if self.variant is Variant.MONOLITHIC and not concrete_mode:
            raise ConfigurationError("the monolithic interpreter is concrete only")
        if self.mode is Mode.REFINED and not pkg.refinable:
            raise ConfigurationError(f"domain {self.domain!r} does not support refined mode")

    @property
    def package(self) -> DomainPackage:
        return get_domain(self.domain)

    @classmethod
    def for_domain(cls, domain: str, mode: Mode | str | None = None, seed: int | None = None,
                   variant: Variant = Variant.SKELETON) -> AnalysisConfig:
        """Config with the usual defaults: concrete runs short-circuit, abstract runs refine."""
        concrete = get_domain(domain) is CONCRETE
        if mode is None:
            mode = Mode.SHORTCIRCUIT if concrete else Mode.REFINED
        if concrete:
            policy = AnyPolicy.seeded(seed) if seed is not None else REJECT
        else:
            policy = ABSTRACT
        return cls(domain, variant, Mode(mode), policy)


def run(e: Expr, config: AnalysisConfig):
    pkg = config.package
    if config.variant is Variant.MONOLITHIC:
        return eval_monolithic(e, config.any_policy)
    if config.variant is Variant.FOLD:
        return run_fold(e, pkg, config.mode, config.any_policy)
    if config.mode is Mode.SHORTCIRCUIT:
        return run_concrete(e, config.any_policy)
    return run_abstract(e, pkg, config.mode)
