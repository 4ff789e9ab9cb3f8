"""Result types shared by the analysis passes."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..kripke import EpistemicModel

HOLDS = "holds"
FAILS = "fails"
VACUOUS = "vacuous"


@dataclass(frozen=True)
class Warning:
    code: str
    message: str
    artifacts: tuple[str, ...] = ()


@dataclass(frozen=True)
class Witness:
    label: str
    model: EpistemicModel


@dataclass(frozen=True)
class ValidityVerdict:
    kind: str
    sufficiency: str
    necessity: str
    witnesses: tuple[Witness, ...] = ()
    warnings: tuple[Warning, ...] = ()
    inconclusive: bool = False

    @property
    def valid(self) -> bool:
        return self.sufficiency == HOLDS and self.necessity == HOLDS


@dataclass(frozen=True)
class Removal:
    id: str
    justification: tuple[str, ...]


@dataclass(frozen=True)
class MinimalSetResult:
    kind: str
    minimal: tuple[str, ...]
    removed: tuple[Removal, ...]
    input_valid: bool
    verdict: ValidityVerdict | None = None
    essential: dict = field(default_factory=dict)  # retained id -> targets it is needed for

    @property
    def input_minimal(self) -> bool:
        return self.input_valid and not self.removed


@dataclass(frozen=True)
class Issue:
    code: str
    message: str
    artifact: str = ""


@dataclass(frozen=True)
class SystemVerdict:
    name: str
    ok: bool
    issues: tuple[Issue, ...] = ()
    warnings: tuple[Warning, ...] = ()
    confidences: dict = field(default_factory=dict)
    witnesses: tuple[Witness, ...] = ()


@dataclass(frozen=True)
class VvClassification:
    quadrant: str | None
    verification_serves_validation: bool
    validation_serves_verification: bool
    refused: bool = False
    warnings: tuple[Warning, ...] = ()
