from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

# The arrangement file schema lives next to the loader
from coxma.arrangement import ArrangementFile, CoxeterEntry, HyperplaneEntry

__all__ = [
    "ArrangementFile", "CoxeterEntry", "HyperplaneEntry",
    "LatticeFlat", "CharPolyResponse", "Decomposition", "MultiCharPolyResponse",
    "ExponentsResponse", "SaitoResponse", "PolePrint", "PrimitiveResponse",
    "CaseResult", "VerificationReport", "ErrorResponse",
]


# Building blocks
class LatticeFlat(BaseModel):
    """One flat of the intersection lattice"""
    codim: int
    normal_space: List[List[int]]  # echelon basis, primitive integer rows
    hyperplanes: List[int]  # indices of hyperplanes containing the flat
    mobius: int


class Decomposition(BaseModel):
    """m~ = 2k + m or 2k - m"""
    k: int
    sign: str  # "plus" or "minus"
    m: List[int]


class PolePrint(BaseModel):
    """Pole order of a form along one hyperplane"""
    hyperplane: str
    order: int


# Response Models
class CharPolyResponse(BaseModel):
    """Combinatorial characteristic polynomial"""
    chi: List[int]  # highest degree first
    polynomial: str
    lattice: Optional[List[LatticeFlat]] = None
    success: bool = True
    elapsed: Optional[float] = None


class MultiCharPolyResponse(BaseModel):
    """Characteristic polynomial of a multiarrangement"""
    chi: List[int]
    polynomial: str
    provenance: str  # "theorem15" or "rank2_oracle"
    decomposition: Optional[Decomposition] = None
    alternate_checked: bool = False
    success: bool = True
    elapsed: Optional[float] = None


class ExponentsResponse(BaseModel):
    """Brute-force exponents of D(A,m)"""
    free: bool
    exponents: List[int] = Field(default_factory=list)
    hilbert: Dict[str, int] = Field(default_factory=dict)
    certificate: Optional[str] = None  # "c*Q"
    basis: List[List[str]] = Field(default_factory=list)
    success: bool = True
    elapsed: Optional[float] = None


class SaitoResponse(BaseModel):
    """Outcome of a Saito criterion check"""
    ok: bool
    determinant: str
    certificate: Optional[str] = None
    reason: Optional[str] = None
    success: bool = True
    elapsed: Optional[float] = None


class PrimitiveResponse(BaseModel):
    """Symbolic data from a rank-2 invariant chart"""
    chart: str
    k: int
    show: Optional[str] = None
    check: Optional[str] = None
    form: List[str] = Field(default_factory=list)  # coefficients of dx, dy
    pole_orders: List[PolePrint] = Field(default_factory=list)
    degree: Optional[int] = None
    passed: bool = True
    details: List[str] = Field(default_factory=list)
    success: bool = True
    elapsed: Optional[float] = None


# Verification
class CaseResult(BaseModel):
    """One case of a verification suite"""
    case: str
    status: str  # "pass" or "fail"
    witness: Dict[str, Any] = Field(default_factory=dict)


class VerificationReport(BaseModel):
    """Result of a named verification suite"""
    suite: str
    cases: List[CaseResult]
    status: str  # "pass" iff every case passes
    informational: bool = False  # discrepancies are reported, never fatal
    success: bool = True
    elapsed: Optional[float] = None


class ErrorResponse(BaseModel):
    """Error response"""
    error: str
    details: Optional[str] = None
    exit_code: int
    success: bool = False
