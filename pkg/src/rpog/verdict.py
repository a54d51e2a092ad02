"""Verdicts and the error hierarchy shared by every checker."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check, with the elements that prove it.

    ``witness`` maps variable names to formatted element values.  ``detail``
    is a one-line human rendering of the violated (or realized) computation.
    ``sampled`` is set when the check ran over a finite sample of an infinite
    object, so a positive answer is evidence rather than proof.
    """

    holds: bool
    law: str
    witness: dict[str, Any] | None = None
    detail: str = ""
    sampled: bool = False
    info: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"law": self.law, "holds": self.holds}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        out["sampled"] = self.sampled
        if self.info:
            out["info"] = self.info
        return out

    def render(self, label: str | None = None) -> str:
        head = f"{label or self.law}: {'YES' if self.holds else 'NO'}"
        extra = []
        if self.detail:
            extra.append(("witness " if self.witness is not None else "") + self.detail)
        elif self.witness is not None:
            extra.append("witness " + ", ".join(f"{k}={v}" for k, v in self.witness.items()))
        if self.sampled and self.holds:
            extra.append("sampled")
        return head + (f" ({'; '.join(extra)})" if extra else "")


def ok(law: str, *, sampled: bool = False, detail: str = "", **info: Any) -> Verdict:
    return Verdict(True, law, None, detail, sampled, dict(info))


def fail(law: str, witness: dict[str, Any], detail: str = "", *, sampled: bool = False,
         **info: Any) -> Verdict:
    return Verdict(False, law, witness, detail, sampled, dict(info))


class RpogError(Exception):
    """Base class for errors raised by the toolkit."""


class StructuralError(RpogError, ValueError):
    """Malformed input: wrong array shapes, out-of-range indices, unknown names."""


class PreconditionError(RpogError, ValueError):
    """An operation was called on input violating its precondition.

    The failing verdict is attached so callers can report the witness.
    """

    def __init__(self, message: str, verdict: Verdict | None = None):
        super().__init__(message)
        self.verdict = verdict


class GuardError(RpogError):
    """A configured size guard would be exceeded."""


class SymbolicDomainError(RpogError, ValueError):
    """An expression left the element domain of a symbolic group (e.g. 0 in Q*)."""
