# grouplab/models/schemas.py

from datetime import datetime
from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, model_validator


class RecordStatus(str, Enum):
    processed = "processed"
    out_of_statement = "out-of-statement"
    skipped = "skipped"


class RunKind(str, Enum):
    lemma5 = "lemma5"
    lemma8 = "lemma8"
    axioms = "axioms"


# Classification
class ClassificationReport(BaseModel):
    group: str
    order: int
    is_abelian: bool
    lc_G: bool = False
    lc_N: bool = False
    unique_commutator: Optional[int] = None
    slc_canonical: bool = False
    thm1_cond1: bool = False
    thm1_cond2: bool = False
    lemma8_verdict: bool = False
    kernel_center_matches: Optional[bool] = None
    quotient_case: Optional[int] = None
    notes: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_consistency(self):
        if self.lemma8_verdict != (self.thm1_cond1 or self.thm1_cond2):
            raise ValueError("lemma8_verdict must equal thm1_cond1 or thm1_cond2")
        if self.slc_canonical and not (self.lc_G and self.unique_commutator is not None):
            raise ValueError("slc_canonical requires the LC-property and a unique commutator")
        return self


# Verification runs
class TripleRecord(BaseModel):
    group: str
    order: int
    involution_index: Optional[int] = None
    orientation_index: Optional[int] = None
    status: RecordStatus
    reason: Optional[str] = None
    predicate: Optional[bool] = None
    oracle: Dict[int, bool] = Field(default_factory=dict)
    agreement: Optional[bool] = None
    error: bool = False

    def sort_key(self):
        return (
            self.order,
            self.group,
            -1 if self.involution_index is None else self.involution_index,
            -1 if self.orientation_index is None else self.orientation_index,
        )


class RunSummary(BaseModel):
    records: int = 0
    processed: int = 0
    out_of_statement: int = 0
    skipped: int = 0
    agreements: int = 0
    disagreements: int = 0
    errors: int = 0


class VerificationRun(BaseModel):
    schema_version: int = Field(1, alias="schema")
    kind: RunKind
    timestamp: datetime
    primes: List[int]
    max_order: int
    bounds: Dict[str, int] = Field(default_factory=dict)
    records: List[TripleRecord] = Field(default_factory=list)
    summary: RunSummary = Field(default_factory=RunSummary)

    model_config = {"populate_by_name": True}


# Algebra / identity outputs
class IdentityWitness(BaseModel):
    word: str
    arguments: List[List[int]]
    value: List[int]


class IdentityResult(BaseModel):
    holds: bool
    word: str
    units: int
    tuples_checked: int
    witness: Optional[IdentityWitness] = None


class AlgebraSummary(BaseModel):
    group: str
    p: int
    dim: Optional[int] = None
    flags: Dict[str, bool] = Field(default_factory=dict)
    nilpotency_index: Optional[int] = None
    witnesses: List[List[int]] = Field(default_factory=list)


class ModularPipelineReport(BaseModel):
    schema_version: int = Field(1, alias="schema")
    group: str
    order: int
    p: int
    p_elements: List[int]
    p_is_subgroup: bool
    p_is_normal: Optional[bool] = None
    regular: bool
    delta_dim: Optional[int] = None
    delta_nilpotency_index: Optional[int] = None
    radical: str = ""
    quotient_group: Optional[str] = None
    quotient_order: Optional[int] = None
    quotient_report: Optional[ClassificationReport] = None
    quotient_conditions: Optional[bool] = None
    modular_conditions: Optional[bool] = None
    commutator_power_status: str = "not-run"
    commutator_power_exponent: Optional[int] = None
    findings: List[str] = Field(default_factory=list)
    record: Optional[TripleRecord] = None

    model_config = {"populate_by_name": True}


class Listing(BaseModel):
    """Enumerated objects on one group: units, involution images or orientation kernels."""

    group: str
    order: int
    kind: str
    p: Optional[int] = None
    count: int
    items: List[List[int]] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)
