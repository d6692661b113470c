from pydantic import BaseModel, ConfigDict, Field


class RamseyInstance(BaseModel):
    """The pair (kP_n, J_2m)."""

    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=1, description="Number of disjoint path copies")
    n: int = Field(..., ge=2, description="Vertices per path")
    m: int = Field(..., ge=2, description="Jahangir half-parameter; J_2m has 2m+1 vertices")

    def label(self) -> str:
        paths = f"P_{self.n}" if self.k == 1 else f"{self.k}P_{self.n}"
        return f"R({paths}, J_{2 * self.m})"
