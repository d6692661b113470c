from typing import Any, Literal, Optional

from pydantic import BaseModel, Field, model_validator

from jahangir_ramsey.schemas.instance import RamseyInstance
from jahangir_ramsey.schemas.trace import FalsificationRecord

REPORT_SCHEMA_VERSION = 1


class VerificationReport(BaseModel):
    """Outcome of an exhaustive, sampled or witness check at one order."""

    kind: Literal["upper", "lower", "sample"]
    instance: RamseyInstance
    order: int
    classes_total: int = 0
    classes_failed: int = 0
    inconclusive: int = 0
    counterexamples: list[str] = Field(default_factory=list)
    witness: Optional[str] = None
    complete: bool = True
    elapsed_ms: float = 0.0
    seed: Optional[int] = None
    checkpoint: Optional[str] = None

    @model_validator(mode="after")
    def failures_match_counterexamples(self) -> "VerificationReport":
        if self.classes_failed != len(self.counterexamples):
            raise ValueError("classes_failed must equal the number of counterexamples")
        return self

    @property
    def confirmed(self) -> bool:
        if self.kind == "lower":
            return self.witness is not None
        return self.complete and self.classes_failed == 0


class Report(BaseModel):
    """Document every CLI command prints on standard output."""

    schema_version: int = REPORT_SCHEMA_VERSION
    command: str
    instance: Optional[RamseyInstance] = None
    order: Optional[int] = None
    totals: dict[str, int] = Field(default_factory=dict)
    failures: int = 0
    counterexamples: list[str] = Field(default_factory=list)
    subcase_tallies: dict[str, int] = Field(default_factory=dict)
    elapsed_ms: float = 0.0
    seed: Optional[int] = None
    checkpoint: Optional[str] = None
    details: dict[str, Any] = Field(default_factory=dict)


class ExtractorCoverage(BaseModel):
    """Batch run of one extractor over every class meeting its precondition."""

    operation: str
    order: int
    parameters: dict[str, int] = Field(default_factory=dict)
    classes_total: int = 0
    hosts: int = 0
    subcase_tallies: dict[str, int] = Field(default_factory=dict)
    falsifications: list[FalsificationRecord] = Field(default_factory=list)
    complete: bool = True
    elapsed_ms: float = 0.0

    @property
    def fallbacks(self) -> int:
        return self.subcase_tallies.get("fallback", 0)

    @property
    def fallback_fraction(self) -> float:
        return self.fallbacks / self.hosts if self.hosts else 0.0
