"""Evaluation domains: concrete integers and four abstract lattices.

Each domain is packaged as a :class:`DomainPackage` holding its introduction
and lowering operations plus the membership test (``contains``) and order
(``leq``) used by the soundness checks.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Union

from . import interface as ops
from .effects import HandlerFrame
from .errors import CardinalityExceeded, ConfigurationError, Overflow
from .syntax import INT64_MAX, INT64_MIN

NEG_INF = -math.inf
POS_INF = math.inf

Bound = Union[int, float]  # a Python int, or one of NEG_INF / POS_INF


def checked_add(a: int, b: int) -> int:
    s = a + b
    if not INT64_MIN <= s <= INT64_MAX:
        raise Overflow(f"{a} + {b} overflows 64-bit arithmetic")
    return s


# -- intervals --------------------------------------------------------------


class Bottom:
    """The empty interval."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "BOTTOM"

    def __reduce__(self):
        return (Bottom, ())


BOTTOM = Bottom()


@dataclass(frozen=True)
class Interval:
    lo: Bound
    hi: Bound

    def __post_init__(self):
        if self.lo == POS_INF or self.hi == NEG_INF or self.lo > self.hi:
            raise ValueError(f"malformed interval [{self.lo},{self.hi}]")
        for b in (self.lo, self.hi):
            if not (isinstance(b, int) or math.isinf(b)):
                raise TypeError(f"interval bound must be an int or infinite, got {b!r}")

    def __contains__(self, n: int) -> bool:
        return self.lo <= n <= self.hi

    def __str__(self):
        return f"[{_render_bound(self.lo)},{_render_bound(self.hi)}]"


IntervalValue = Union[Interval, Bottom]
TOP_INTERVAL = Interval(NEG_INF, POS_INF)


def _render_bound(b: Bound) -> str:
    if b == NEG_INF:
        return "-inf"
    if b == POS_INF:
        return "+inf"
    return str(b)


def _add_bounds(a: Bound, b: Bound) -> Bound:
    if isinstance(a, float) or isinstance(b, float):
        return a + b  # infinities; opposite signs cannot meet at the same end
    s = a + b
    if s > INT64_MAX:
        return POS_INF
    if s < INT64_MIN:
        return NEG_INF
    return s


def interval_num(n: int) -> Interval:
    return Interval(n, n)


def interval_any(lo: int, hi: int) -> Interval:
    return Interval(lo, hi)


def interval_plus(a: IntervalValue, b: IntervalValue) -> IntervalValue:
    if a is BOTTOM or b is BOTTOM:
        return BOTTOM
    lo, hi = _add_bounds(a.lo, b.lo), _add_bounds(a.hi, b.hi)
    if lo == POS_INF or hi == NEG_INF:
        # Every concrete sum overflows, so no value is produced.
        return BOTTOM
    return Interval(lo, hi)


def interval_join(a: IntervalValue, b: IntervalValue) -> IntervalValue:
    if a is BOTTOM:
        return b
    if b is BOTTOM:
        return a
    return Interval(min(a.lo, b.lo), max(a.hi, b.hi))


def interval_assume_nz(guard: IntervalValue, branch: IntervalValue) -> IntervalValue:
    if guard is BOTTOM or guard == Interval(0, 0):
        return BOTTOM
    return branch


def interval_assume_z(guard: IntervalValue, branch: IntervalValue) -> IntervalValue:
    if guard is BOTTOM or 0 not in guard:
        return BOTTOM
    return branch


def interval_contains(d: IntervalValue, n: int) -> bool:
    return d is not BOTTOM and n in d


def interval_leq(a: IntervalValue, b: IntervalValue) -> bool:
    if a is BOTTOM:
        return True
    if b is BOTTOM:
        return False
    return b.lo <= a.lo and a.hi <= b.hi


def render_interval(d: IntervalValue) -> str:
    return "_|_" if d is BOTTOM else str(d)


# -- signs ------------------------------------------------------------------
# Each sign is the set of atoms {-1, 0, 1} it may take; the lattice is the
# powerset of atoms ordered by inclusion.


class Sign(enum.Enum):
    BOT = frozenset()
    NEG = frozenset({-1})
    ZERO = frozenset({0})
    POS = frozenset({1})
    NON_POS = frozenset({-1, 0})
    NON_NEG = frozenset({0, 1})
    NON_ZERO = frozenset({-1, 1})
    TOP = frozenset({-1, 0, 1})

    @property
    def label(self) -> str:
        return _SIGN_LABELS[self]

    def __str__(self):
        return self.label


_SIGN_LABELS = {
    Sign.BOT: "Bot",
    Sign.NEG: "Neg",
    Sign.ZERO: "Zero",
    Sign.POS: "Pos",
    Sign.NON_POS: "NonPos",
    Sign.NON_NEG: "NonNeg",
    Sign.NON_ZERO: "NonZero",
    Sign.TOP: "Top",
}

# Sign of x + y given only the signs of x and y.
_ATOM_SUM = {
    (-1, -1): {-1},
    (-1, 0): {-1},
    (-1, 1): {-1, 0, 1},
    (0, -1): {-1},
    (0, 0): {0},
    (0, 1): {1},
    (1, -1): {-1, 0, 1},
    (1, 0): {1},
    (1, 1): {1},
}


def _atom(n: int) -> int:
    return (n > 0) - (n < 0)


def sign_num(n: int) -> Sign:
    return Sign(frozenset({_atom(n)}))


def sign_any(lo: int, hi: int) -> Sign:
    return Sign(frozenset(range(_atom(lo), _atom(hi) + 1)))


def sign_plus(a: Sign, b: Sign) -> Sign:
    out: set[int] = set()
    for x in a.value:
        for y in b.value:
            out |= _ATOM_SUM[x, y]
    return Sign(frozenset(out))


def sign_join(a: Sign, b: Sign) -> Sign:
    return Sign(a.value | b.value)


def sign_assume_nz(guard: Sign, branch: Sign) -> Sign:
    return branch if guard.value - {0} else Sign.BOT


def sign_assume_z(guard: Sign, branch: Sign) -> Sign:
    return branch if 0 in guard.value else Sign.BOT


def sign_contains(d: Sign, n: int) -> bool:
    return _atom(n) in d.value


def sign_leq(a: Sign, b: Sign) -> bool:
    return a.value <= b.value


# -- constants --------------------------------------------------------------


class Flat(enum.Enum):
    BOT = "_|_"
    TOP = "T"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Known:
    n: int

    def __str__(self):
        return f"K({self.n})"


Const = Union[Known, Flat]


def const_num(n: int) -> Const:
    return Known(n)


def const_any(lo: int, hi: int) -> Const:
    return Known(lo) if lo == hi else Flat.TOP


def const_plus(a: Const, b: Const) -> Const:
    if a is Flat.BOT or b is Flat.BOT:
        return Flat.BOT
    if a is Flat.TOP or b is Flat.TOP:
        return Flat.TOP
    s = a.n + b.n
    if not INT64_MIN <= s <= INT64_MAX:
        return Flat.TOP
    return Known(s)


def const_join(a: Const, b: Const) -> Const:
    if a is Flat.BOT:
        return b
    if b is Flat.BOT or a == b:
        return a
    return Flat.TOP


def const_assume_nz(guard: Const, branch: Const) -> Const:
    if guard is Flat.BOT or guard == Known(0):
        return Flat.BOT
    return branch


def const_assume_z(guard: Const, branch: Const) -> Const:
    if guard is Flat.TOP or guard == Known(0):
        return branch
    return Flat.BOT


def const_contains(d: Const, n: int) -> bool:
    return d is Flat.TOP or d == Known(n)


def const_leq(a: Const, b: Const) -> bool:
    return a is Flat.BOT or b is Flat.TOP or a == b


# -- collecting sets --------------------------------------------------------

SET_CAP = 4096


def _capped(values) -> frozenset[int]:
    s = frozenset(values)
    if len(s) > SET_CAP:
        raise CardinalityExceeded(f"collecting set of {len(s)} values exceeds cap {SET_CAP}")
    return s


def set_num(n: int) -> frozenset[int]:
    return frozenset({n})


def set_any(lo: int, hi: int) -> frozenset[int]:
    if hi - lo + 1 > SET_CAP:
        raise CardinalityExceeded(f"any({lo},{hi}) has more than {SET_CAP} values")
    return frozenset(range(lo, hi + 1))


def set_plus(a: frozenset[int], b: frozenset[int]) -> frozenset[int]:
    # Sums that overflow are evaluation errors, not outcomes.
    if len(a) * len(b) > SET_CAP * SET_CAP:
        raise CardinalityExceeded("collecting sum too large")
    return _capped(s for x in a for y in b if INT64_MIN <= (s := x + y) <= INT64_MAX)


def set_join(a: frozenset[int], b: frozenset[int]) -> frozenset[int]:
    return _capped(a | b)


def set_assume_nz(guard: frozenset[int], branch: frozenset[int]) -> frozenset[int]:
    return branch if guard - {0} else frozenset()


def set_assume_z(guard: frozenset[int], branch: frozenset[int]) -> frozenset[int]:
    return branch if 0 in guard else frozenset()


def render_set(d: frozenset[int]) -> str:
    return "{" + ",".join(map(str, sorted(d))) + "}"


# -- packages ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DomainPackage:
    name: str
    num: Callable[[int], Any]
    plus: Callable[[Any, Any], Any]
    any: Callable[[int, int], Any] | None
    contains: Callable[[Any, int], bool]
    leq: Callable[[Any, Any], bool]
    render: Callable[[Any], str] = str
    bottom: Any = None
    join: Callable[[Any, Any], Any] | None = None
    assume_nz: Callable[[Any, Any], Any] | None = None
    assume_z: Callable[[Any, Any], Any] | None = None

    @property
    def abstract(self) -> bool:
        return self.join is not None

    @property
    def refinable(self) -> bool:
        return self.assume_nz is not None and self.assume_z is not None

    # Frames are cached so every run over this package installs the very same
    # frame objects; stacks for different analyses can then be compared.

    @cached_property
    def intro_frame(self) -> HandlerFrame:
        impls = {ops.NUM: self.num, ops.PLUS_INTRO: self.plus}
        return HandlerFrame.pure(impls, f"{self.name}.intro")

    @cached_property
    def any_frame(self) -> HandlerFrame:
        if self.any is None:
            raise ConfigurationError(f"domain {self.name!r} has no abstract any_intro")
        return HandlerFrame.pure({ops.ANY_INTRO: self.any}, f"{self.name}.any")

    @cached_property
    def join_frame(self) -> HandlerFrame:
        if self.join is None:
            raise ConfigurationError(f"domain {self.name!r} has no join")
        return HandlerFrame.pure({ops.JOIN: self.join}, f"{self.name}.join")

    @cached_property
    def assume_frame(self) -> HandlerFrame:
        if not self.refinable:
            raise ConfigurationError(f"domain {self.name!r} has no assume operations")
        impls = {ops.ASSUME_NZ: self.assume_nz, ops.ASSUME_Z: self.assume_z}
        return HandlerFrame.pure(impls, f"{self.name}.assume")

    def __repr__(self):
        return f"<DomainPackage {self.name}>"


CONCRETE = DomainPackage(
    name="concrete",
    num=lambda n: n,
    plus=checked_add,
    any=None,
    contains=lambda d, n: d == n,
    leq=lambda a, b: a == b,
)

INTERVAL = DomainPackage(
    name="interval",
    num=interval_num,
    plus=interval_plus,
    any=interval_any,
    contains=interval_contains,
    leq=interval_leq,
    render=render_interval,
    bottom=BOTTOM,
    join=interval_join,
    assume_nz=interval_assume_nz,
    assume_z=interval_assume_z,
)

SIGN = DomainPackage(
    name="sign",
    num=sign_num,
    plus=sign_plus,
    any=sign_any,
    contains=sign_contains,
    leq=sign_leq,
    bottom=Sign.BOT,
    join=sign_join,
    assume_nz=sign_assume_nz,
    assume_z=sign_assume_z,
)

CONST = DomainPackage(
    name="const",
    num=const_num,
    plus=const_plus,
    any=const_any,
    contains=const_contains,
    leq=const_leq,
    bottom=Flat.BOT,
    join=const_join,
    assume_nz=const_assume_nz,
    assume_z=const_assume_z,
)

COLLECTING = DomainPackage(
    name="collecting",
    num=set_num,
    plus=set_plus,
    any=set_any,
    contains=lambda d, n: n in d,
    leq=lambda a, b: a <= b,
    render=render_set,
    bottom=frozenset(),
    join=set_join,
    assume_nz=set_assume_nz,
    assume_z=set_assume_z,
)

DOMAINS = {p.name: p for p in (CONCRETE, INTERVAL, SIGN, CONST, COLLECTING)}
ABSTRACT_DOMAINS = ("interval", "sign", "const", "collecting")


def get_domain(name: str) -> DomainPackage:
    try:
        return DOMAINS[name]
    except KeyError:
        raise ValueError(f"unknown domain {name!r}; choose from {', '.join(DOMAINS)}") from None


def gamma_contains(pkg: DomainPackage, d, n: int) -> bool:
    return pkg.contains(d, n)
