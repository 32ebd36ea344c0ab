from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any


class Status(str, Enum):
    PROVED = "PROVED"
    REFUTED = "REFUTED"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Verdict:
    """Three-valued answer; PROVED carries a replayable certificate, REFUTED a reason."""

    status: Status
    certificate: Any = None
    reason: str | None = None

    @property
    def proved(self) -> bool:
        return self.status is Status.PROVED

    @property
    def refuted(self) -> bool:
        return self.status is Status.REFUTED

    @property
    def unknown(self) -> bool:
        return self.status is Status.UNKNOWN

    def __bool__(self):
        raise TypeError("use .proved / .refuted instead of truth-testing a Verdict")


def proved(certificate=None, reason=None) -> Verdict:
    return Verdict(Status.PROVED, certificate, reason)


def refuted(reason: str, certificate=None) -> Verdict:
    return Verdict(Status.REFUTED, certificate, reason)


def unknown(reason: str) -> Verdict:
    return Verdict(Status.UNKNOWN, None, reason)
