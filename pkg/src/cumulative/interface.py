"""The effect vocabulary that binds the syntax to a semantics.

Introduction operations build domain values, elimination operations pick the
next expression to interpret, lowering operations are domain-internal helpers
used only on demand by other handlers.
"""

from __future__ import annotations

from . import effects

NUM = "num"
ANY_INTRO = "any_intro"
PLUS_INTRO = "plus_intro"
IFNZ_INTRO = "ifnz_intro"

PLUS_ELIM = "plus_elim"
IFNZ_ELIM = "ifnz_elim"

ASSUME_NZ = "assume_nz"
ASSUME_Z = "assume_z"
JOIN = "join"

INTRODUCTION = frozenset({NUM, ANY_INTRO, PLUS_INTRO, IFNZ_INTRO})
ELIMINATION = frozenset({PLUS_ELIM, IFNZ_ELIM})
LOWERING = frozenset({ASSUME_NZ, ASSUME_Z, JOIN})

# (operation, argument names) per signature; elimination arguments are expressions.
SIGNATURES = {
    NUM: ("n",),
    ANY_INTRO: ("lo", "hi"),
    PLUS_INTRO: ("d1", "d2"),
    IFNZ_INTRO: ("d1", "d2", "d3"),
    PLUS_ELIM: ("e1", "e2"),
    IFNZ_ELIM: ("e1", "e2", "e3"),
    ASSUME_NZ: ("guard", "branch"),
    ASSUME_Z: ("guard", "branch"),
    JOIN: ("d1", "d2"),
}

effects.register(*SIGNATURES)

_REQUIRED = {
    "skeleton": frozenset({NUM, ANY_INTRO, PLUS_ELIM, IFNZ_ELIM}),
    "fold": frozenset({NUM, ANY_INTRO, PLUS_INTRO, IFNZ_INTRO}),
}


def required_ops(variant: str) -> frozenset[str]:
    """Operations an interpreter variant performs directly.

    Lowering operations never appear here; only handlers demand them.
    """
    try:
        return _REQUIRED[variant]
    except KeyError:
        raise ValueError(f"unknown interpreter variant {variant!r}") from None
