"""
Pydantic models for mclab input files and command reports.
"""
from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, Field, RootModel, field_validator


# ---------------------------------------------------------------------------
# Input files
# ---------------------------------------------------------------------------

class ConceptClassFile(BaseModel):
    """Concept-class file: words over a 0-based domain."""
    domain_size: int = Field(..., ge=0, description="Number of domain points n")
    hypotheses: List[List[int]] = Field(..., description="Words of length n with non-negative labels")


class SampleFile(RootModel[List[Tuple[int, int]]]):
    """Sample file: ordered [x, y] pairs, repeats allowed."""


class AtomModel(BaseModel):
    x: int = Field(..., ge=0, description="Domain point")
    y: int = Field(..., ge=0, description="Label")
    p: Union[str, float, int] = Field(..., description="Probability, a number or an exact fraction like '1/3'")


class DistributionFile(BaseModel):
    """Finite-support distribution over labeled examples."""
    atoms: List[AtomModel] = Field(..., min_length=1, description="Support atoms with probabilities")


class MenuFile(BaseModel):
    """Menu file: per-point label sets with a size bound."""
    p: int = Field(..., ge=1, description="Menu size bound")
    entries: Dict[str, List[int]] = Field(default_factory=dict, description="Point (as string key) to label list")

    @field_validator("entries")
    @classmethod
    def keys_are_points(cls, value: Dict[str, List[int]]) -> Dict[str, List[int]]:
        for key in value:
            if not key.isdigit():
                raise ValueError(f"menu key {key!r} is not a non-negative integer")
        return value


class ComplexFile(BaseModel):
    """Simplicial complex given by its maximal faces."""
    vertices: int = Field(..., ge=0, description="Vertex count")
    maximal_faces: List[List[int]] = Field(..., description="Maximal faces as vertex lists")
    coloring: Optional[List[int]] = Field(None, description="Optional colour per vertex")


class SubgroupModel(BaseModel):
    generators: List[List[List[int]]] = Field(..., description="Generators in cycle notation")


class GroupFile(BaseModel):
    """Permutation group with distinguished subgroups."""
    degree: int = Field(..., ge=1, description="Permutation degree")
    generators: List[List[List[int]]] = Field(..., description="Generators in cycle notation (0-based)")
    subgroups: List[SubgroupModel] = Field(..., min_length=1, description="Subgroups H_1..H_d")


class BipartiteFile(BaseModel):
    """Bipartite graph as left/right vertex pairs."""
    left_right_edges: List[Tuple[int, int]] = Field(..., description="Edges (left vertex, right vertex)")


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

class DimensionReportModel(BaseModel):
    vc: Optional[int] = Field(None, description="VC dimension, null for non-binary classes")
    natarajan: int
    ds: int
    exponential: int
    witnesses: Dict[str, Optional[List[int]]] = Field(default_factory=dict)
    natarajan_functions: Optional[Dict[str, List[int]]] = Field(None, description="Witness label functions f, g")


class OrientedEdgeModel(BaseModel):
    dir: int
    members: List[int]
    chosen: int


class OrientationReportModel(BaseModel):
    edges: List[OrientedEdgeModel]
    max_outdeg: int
    optimal_max_outdeg: Optional[int] = None
    avg_degree: str
    shifting_avg_degree: str


class ShiftStepModel(BaseModel):
    direction: int
    avd_prime_before: str
    avd_prime_after: str
    exponential_before: int
    exponential_after: int
    changed: bool


class ShiftTraceModel(BaseModel):
    steps: List[ShiftStepModel]
    final: ConceptClassFile
    downward_closed: bool


class PredictionModel(BaseModel):
    x: int
    label: int
    predictor: str


class MenuReportModel(BaseModel):
    p: int
    entries: Dict[str, List[int]]
    list_size: int


class CompressionReportModel(BaseModel):
    stage: str
    kept: List[Tuple[int, int]]
    kept_positions: List[int]
    params: Dict[str, int]
    r_achieved: int
    r_bound: float
    bound_name: str
    verified: bool


class SquareModel(BaseModel):
    cycle: List[int]


class ComplexReportModel(BaseModel):
    good: bool
    failed_property: Optional[str] = None
    witness: Optional[List[int]] = None
    dimension: int
    vertices: int
    maximal_faces: int
    alternating_squares: Optional[int] = None
    empty_squares: Optional[int] = None


class CosetReportModel(BaseModel):
    group_order: int
    condition_intersections: bool
    condition_no_empty_square: bool
    failing_index: Optional[int] = None
    complex: ComplexReportModel
    pseudo_cube: Optional[ConceptClassFile] = None
    natarajan: Optional[int] = None


class ClaimVerdictModel(BaseModel):
    claim: str
    passed: bool
    detail: str = ""


class ErrorResponse(BaseModel):
    """Error response schema."""
    error: str = Field(..., description="Error message")
    error_code: str = Field(..., description="Error code")
    details: Optional[dict] = Field(None, description="Additional error details")
