"""Cumulative abstract interpreters: one skeleton, many handler stacks."""

from .domains import COLLECTING, CONCRETE, CONST, DOMAINS, INTERVAL, SIGN, get_domain, gamma_contains
from .errors import CumulativeError
from .interpreters import (
    AnalysisConfig,
    AnyPolicy,
    Mode,
    eval_monolithic,
    eval_skeleton,
    run,
    run_abstract,
    run_concrete,
    run_fold,
)
from .oracle import check_precision, check_soundness, enumerate_concrete
from .syntax import Any, Ifnz, Num, Plus, generate, parse, render

__all__ = [
    "AnalysisConfig", "Any", "AnyPolicy", "COLLECTING", "CONCRETE", "CONST", "CumulativeError", "DOMAINS",
    "INTERVAL", "Ifnz", "Mode", "Num", "Plus", "SIGN", "check_precision", "check_soundness",
    "enumerate_concrete", "eval_monolithic", "eval_skeleton", "gamma_contains", "generate", "get_domain",
    "parse", "render", "run", "run_abstract", "run_concrete", "run_fold",
]
