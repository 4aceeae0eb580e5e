"""Report schemas shared by the CLI and the API. Field order is the JSON order."""
from pydantic import BaseModel, Field
from typing import Any, Dict, List, Optional


class Failure(BaseModel):
    """A failed check with both sides rendered."""
    instance: str = Field(..., description="Sampled parameters of the instance")
    lhs: str = Field(..., description="Left-hand side in normal form")
    rhs: str = Field(..., description="Right-hand side in normal form")


class Finding(BaseModel):
    """A measured property reported alongside the checks; it never decides passed."""
    name: str = Field(..., description="What was measured")
    measured: int = Field(..., description="Number of instances measured")
    holds: int = Field(..., description="Instances where the property held")
    first_miss: Optional[Failure] = Field(None, description="First instance where it did not hold")


class VerificationReport(BaseModel):
    """Outcome of a verification suite."""
    suite: str = Field(..., description="Suite name")
    field: str = Field(..., description="Coefficient field, Fp:<p> or Q")
    trials: int = Field(..., description="Number of sampled trials")
    seed: int = Field(..., description="Seed of the per-trial generators")
    passed: bool = Field(..., description="Whether every check passed")
    instances: int = Field(..., description="Number of checks performed")
    failures: List[Failure] = Field(default_factory=list, description="Failed checks")
    findings: List[Finding] = Field(default_factory=list, description="Measurements outside pass/fail")


class InvariantFactors(BaseModel):
    """Abelian group Z^free_rank ⊕ ⊕ Z/t."""
    free_rank: int
    torsion: List[int] = Field(default_factory=list)


class StildeReport(BaseModel):
    """Presented model of S̃(F_p^n), optionally compared with the direct pipeline."""
    p: int
    n: int
    generators: int
    relation_matrix_shape: List[int]
    invariant_factors: InvariantFactors
    diagnostics: Dict[str, Any] = Field(default_factory=dict)
    timings: Dict[str, float] = Field(default_factory=dict, description="Milliseconds per stage")


class NormalizeReport(BaseModel):
    """Normal form of an expression."""
    expression: str
    field: str
    target: str
    result: Dict[str, Any]


class WittReport(BaseModel):
    """Invariants of a diagonal form and its Witt class."""
    form: str
    field: str
    invariants: Dict[str, Any]
    witt_class: Dict[str, Any]


class ProductReport(BaseModel):
    """x∗y by the closed formula and, over F_p, through chains."""
    left: str
    right: str
    field: str
    formula: str
    chain: Optional[str] = None
    agree: Optional[bool] = None
    d_multiplicative: bool
    t_multiplicative: bool
