from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

Subcase = Literal[
    "1.1", "1.2", "2.1", "2.2", "2.3", "2.4", "2.5", "T2-A", "T2-C1", "T2-C2", "fallback"
]


class CaseTrace(BaseModel):
    """Audit record tying one extraction to the case analysis it followed."""

    subcase: Subcase
    # Subcase whose localized search was attempted before falling back
    attempted: Optional[Subcase] = None
    path: list[int] = Field(default_factory=list, description="Longest path x_1..x_t")
    off_path: list[int] = Field(default_factory=list, description="Y = V minus the path")
    a_set: list[int] = Field(default_factory=list)
    b_set: list[int] = Field(default_factory=list)
    d1: Optional[list[int]] = None
    d2: Optional[list[int]] = None
    b: Optional[int] = None
    v1: Optional[int] = None
    alternatives_tried: int = 0

    @model_validator(mode="after")
    def d_sets_disjoint(self) -> "CaseTrace":
        if self.d1 is not None and self.d2 is not None and set(self.d1) & set(self.d2):
            raise ValueError("D1 and D2 must be disjoint")
        return self


class FalsificationRecord(BaseModel):
    """A host on which an extractor found no certificate at all."""

    operation: str
    graph6: str
    reason: str
    parameters: dict[str, int] = Field(default_factory=dict)
    trace: Optional[CaseTrace] = None
