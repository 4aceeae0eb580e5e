"""Request schemas for the algebra endpoints."""
from pydantic import BaseModel, Field
from typing import Dict, Optional, Union


class NormalizeRequest(BaseModel):
    """Normalize an expression over a field."""
    expression: str = Field(..., description="Expression, e.g. 'eta*[-1] + 2'")
    field: str = Field("Q", description="Fp:<p> or Q")
    bindings: Dict[str, Union[int, str]] = Field(default_factory=dict, description="Values of names in unit position")
    check_model: bool = Field(False, description="Decide vanishing of [[...]] sums in the presented model")


class WittRequest(BaseModel):
    """Form invariants of a diagonal form."""
    form: str = Field(..., description="Diagonal entries, e.g. '<1,1,-2>'")
    field: str = Field("Q", description="Fp:<p> or Q")


class VerifyRequest(BaseModel):
    """Run a named verification suite."""
    suite: str = Field(..., description="Suite name")
    field: Optional[str] = Field(None, description="Fp:<p> or Q; the suite default when omitted")
    trials: Optional[int] = Field(None, ge=0, description="Number of trials")
    seed: Optional[int] = Field(None, description="Seed")


class ProductRequest(BaseModel):
    """Evaluate x∗y both ways."""
    left: str = Field(..., description="Expression in [[...]] symbols")
    right: str = Field(..., description="Expression in [[...]] symbols")
    field: str = Field("Fp:7", description="Fp:<p> or Q")
