"""Certificates for the bigalois objects B(E,F) and SL_q(2) fusion rules."""

import json
from dataclasses import dataclass
from typing import Any, Dict, Sequence

from . import _core

__all__ = ["Report", "present", "bigalois", "fusion", "verify"]


@dataclass(frozen=True)
class Report:
    """Structured result of a command; exit_code follows the command-line tool."""

    exit_code: int
    data: Dict[str, Any]
    text: str

    @property
    def ok(self) -> bool:
        return self.exit_code == 0


def _wrap(report: "_core.Report") -> Report:
    return Report(report.exit_code, json.loads(report.data_json()), report.text())


def present(e: str, tower_cap: int = 4) -> Report:
    """B(E) presentation, trace invariant and genericity of q for a matrix file text."""
    return _wrap(_core.present(e, tower_cap))


def bigalois(e: str, f: str, degree: int = 3, bound: int = 4, tower_cap: int = 4) -> Report:
    """Full certificate for B(E,F) from two matrix file texts."""
    return _wrap(_core.bigalois(e, f, degree, bound, tower_cap))


def fusion(k: str, l: str, regime: str = "generic") -> Report:
    """Decomposition of U/V labels, e.g. fusion("U4", "U1", regime="root5")."""
    return _wrap(_core.fusion(regime, str(k), str(l)))


def verify(kind: str, texts: Sequence[str], tower_cap: int = 4) -> Report:
    """congruence (E F [M]), automorphism (E P), star (E M) or cqg (E M)."""
    return _wrap(_core.verify(kind, list(texts), tower_cap))
