"""A small algebraic-effect runtime.

Operations are identified by name and dispatched to the innermost frame of a
:class:`HandlerStack` that implements them.  Stacks are immutable values that
are passed explicitly, so independent runs never share state.

Every implementation receives, as its first argument, the stack *outside* its
own frame; effects it performs are therefore handled by enclosing frames, as
with ordinary handler clauses.  Control implementations additionally receive
a :class:`Resumption` as their last argument.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Callable, Iterable, Mapping

from .errors import ConfigurationError, MissingHandlers, ResumptionExpired, UnhandledEffect

_REGISTRY: set[str] = set()


def register(*names: str) -> None:
    _REGISTRY.update(names)


def is_registered(name: str) -> bool:
    return name in _REGISTRY


class Kind(enum.Enum):
    TAIL = "tail"
    CONTROL = "control"


@dataclass(frozen=True, eq=False)
class HandlerFrame:
    """A set of implementations installed together.

    Frames compare by identity: two frames built from the same functions are
    still different installations.
    """

    kind: Kind
    ops: Mapping[str, Callable[..., Any]]
    name: str = ""

    def __post_init__(self):
        unknown = sorted(op for op in self.ops if op not in _REGISTRY)
        if unknown:
            raise ConfigurationError("unregistered effect operations: " + ", ".join(unknown))
        object.__setattr__(self, "ops", MappingProxyType(dict(self.ops)))

    @classmethod
    def tail(cls, ops: Mapping[str, Callable[..., Any]], name: str = "") -> HandlerFrame:
        return cls(Kind.TAIL, ops, name)

    @classmethod
    def control(cls, ops: Mapping[str, Callable[..., Any]], name: str = "") -> HandlerFrame:
        return cls(Kind.CONTROL, ops, name)

    @classmethod
    def pure(cls, ops: Mapping[str, Callable[..., Any]], name: str = "") -> HandlerFrame:
        """Tail frame whose implementations never perform effects themselves."""
        return cls(Kind.TAIL, {op: _ignore_context(fn) for op, fn in ops.items()}, name)

    def __repr__(self):
        return f"<HandlerFrame {self.name or '?'} {self.kind.value} {sorted(self.ops)}>"


def _ignore_context(fn):
    def impl(_ctx, *args):
        return fn(*args)

    impl.__wrapped__ = fn
    return impl


class Resumption:
    """The captured rest of a computation, from a perform site up to its handler.

    Calling it re-enters that computation with a new value.  It can be called
    any number of times while the owning handler activation is running.
    """

    __slots__ = ("_continue", "_stack", "_live")

    def __init__(self, cont: Callable[[Any, HandlerStack], Any], stack: HandlerStack):
        self._continue = cont
        self._stack = stack
        self._live = True

    def __call__(self, value):
        if not self._live:
            raise ResumptionExpired("resumption invoked after its handler returned")
        return self._continue(value, self._stack)

    def expire(self) -> None:
        self._live = False


def _identity(value, _stack):
    return value


class HandlerStack:
    """Immutable stack of handler frames, innermost last."""

    __slots__ = ("frame", "parent", "_index")

    def __init__(self, frame: HandlerFrame | None = None, parent: HandlerStack | None = None):
        self.frame = frame
        self.parent = parent
        index: dict[str, HandlerStack] = dict(parent._index) if parent is not None else {}
        if frame is not None:
            for op in frame.ops:
                index[op] = self
        self._index = index

    @classmethod
    def of(cls, *frames: HandlerFrame) -> HandlerStack:
        """Build a stack from frames listed outermost first."""
        stack = EMPTY
        for f in frames:
            stack = stack.push(f)
        return stack

    def push(self, frame: HandlerFrame) -> HandlerStack:
        return HandlerStack(frame, self)

    @property
    def frames(self) -> tuple[HandlerFrame, ...]:
        out = []
        node = self
        while node is not None and node.frame is not None:
            out.append(node.frame)
            node = node.parent
        return tuple(reversed(out))

    @property
    def ops(self) -> frozenset[str]:
        return frozenset(self._index)

    def handles(self, op: str) -> bool:
        return op in self._index

    def map(self, fn: Callable[[HandlerFrame], HandlerFrame]) -> HandlerStack:
        return HandlerStack.of(*(fn(f) for f in self.frames))

    def install(self, frame: HandlerFrame, body: Callable[[HandlerStack], Any]):
        return install(self, frame, body)

    def perform(self, op: str, *args, then: Callable[[Any, HandlerStack], Any] | None = None):
        return perform(self, op, *args, then=then)

    def __repr__(self):
        return "HandlerStack(" + ", ".join(f.name or "?" for f in self.frames) + ")"


EMPTY = HandlerStack()


def install(stack: HandlerStack, frame: HandlerFrame, body: Callable[[HandlerStack], Any]):
    """Run ``body`` with ``frame`` pushed innermost onto ``stack``."""
    return body(stack.push(frame))


def perform(stack: HandlerStack, op: str, *args, then: Callable[[Any, HandlerStack], Any] | None = None):
    """Invoke ``op`` on the innermost frame of ``stack`` that implements it.

    ``then`` is the continuation of the perform site up to the handling frame,
    called as ``then(value, stack)``; it defaults to returning the value.  A
    tail implementation's result is passed to it exactly once.  A control
    implementation receives it wrapped in a :class:`Resumption` and its own
    return value becomes the value of the whole perform.
    """
    if op not in _REGISTRY:
        raise ConfigurationError(f"unregistered effect operation {op!r}")
    node = stack._index.get(op)
    if node is None:
        raise UnhandledEffect(op)
    frame = node.frame
    impl = frame.ops[op]
    outer = node.parent
    cont = then or _identity
    if frame.kind is Kind.TAIL:
        return cont(impl(outer, *args), stack)
    resume = Resumption(cont, stack)
    try:
        return impl(outer, *args, resume)
    finally:
        resume.expire()


def check_complete(stack: HandlerStack, required: Iterable[str]) -> None:
    """Raise :class:`MissingHandlers` naming every required operation ``stack`` lacks."""
    missing = sorted(set(required) - stack.ops)
    if missing:
        raise MissingHandlers(missing)


@dataclass
class Trace:
    """Log filled by :func:`traced` frames."""

    performs: list[tuple[str, tuple]] = field(default_factory=list)
    resumes: list[tuple[str, int, Any]] = field(default_factory=list)

    def count(self, op: str) -> int:
        return sum(1 for name, _ in self.performs if name == op)


def traced(frame: HandlerFrame, trace: Trace) -> HandlerFrame:
    """Copy of ``frame`` that records every dispatch, and for control frames
    every resumption call as ``(op, argument position, value)``."""

    def wrap(op, impl):
        if frame.kind is Kind.TAIL:

            def tail_impl(ctx, *args):
                trace.performs.append((op, args))
                return impl(ctx, *args)

            return tail_impl

        def control_impl(ctx, *args):
            *payload, resume = args
            trace.performs.append((op, tuple(payload)))

            def counted(value):
                position = next((i for i, p in enumerate(payload) if p is value), -1)
                trace.resumes.append((op, position, value))
                return resume(value)

            return impl(ctx, *payload, counted)

        return control_impl

    return HandlerFrame(frame.kind, {op: wrap(op, impl) for op, impl in frame.ops.items()}, f"traced:{frame.name}")
