from typing import Optional

from pydantic import BaseModel, Field, model_validator

from jahangir_ramsey.schemas.instance import RamseyInstance

CHECKPOINT_VERSION = 1


class ShardSpec(BaseModel):
    shard_index: int = Field(..., ge=0)
    shard_total: int = Field(..., ge=1)
    order: int = Field(..., ge=1)

    @model_validator(mode="after")
    def index_below_total(self) -> "ShardSpec":
        if self.shard_index >= self.shard_total:
            raise ValueError(
                f"shard_index {self.shard_index} must be below shard_total {self.shard_total}"
            )
        return self

    def owns(self, parent_index: int) -> bool:
        return parent_index % self.shard_total == self.shard_index


class Checkpoint(BaseModel):
    """Resumable position of one enumeration shard.

    ``cursor`` is opaque to callers: the index of the next top-level branch
    to expand. Every branch before it has been visited completely.
    """

    version: int = CHECKPOINT_VERSION
    order: int = Field(..., ge=1)
    shard: ShardSpec
    cursor: int = Field(default=0, ge=0)
    processed: int = Field(default=0, ge=0)
    complete: bool = False
    tallies: dict[str, int] = Field(default_factory=dict)
    findings: list[str] = Field(default_factory=list)

    @classmethod
    def fresh(cls, order: int, shard: Optional[ShardSpec] = None) -> "Checkpoint":
        spec = shard or ShardSpec(shard_index=0, shard_total=1, order=order)
        return cls(order=order, shard=spec)

    def bump(self, key: str, amount: int = 1) -> None:
        self.tallies[key] = self.tallies.get(key, 0) + amount


class VerificationCheckpoint(BaseModel):
    """Checkpoint file of a sharded verification: one cursor per shard."""

    version: int = CHECKPOINT_VERSION
    instance: RamseyInstance
    order: int = Field(..., ge=1)
    shards: list[Checkpoint]

    @property
    def complete(self) -> bool:
        return all(shard.complete for shard in self.shards)
