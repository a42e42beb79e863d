"""
Pydantic schemas for hopfkit documents.
Input files (bialgebras, monads, presheaf setups), job specs and reports.
"""
import enum
from typing import Annotated, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, PositiveInt, model_validator

from hopfkit.exact import field_from_label, matrix_from_wire

Scalar = Union[int, str]
FieldLabel = Union[str, Dict[str, int]]


class Command(str, enum.Enum):
    """Enumeration of CLI commands."""
    VALIDATE = "validate"
    HOPF = "hopf"
    ANTIPODE = "antipode"
    FUSION = "fusion"
    ENTWINE = "entwine"
    HOPFMOD = "hopfmod"
    GALOIS = "galois"
    FINSET = "finset"


class ReportFormat(str, enum.Enum):
    """Enumeration of report renderings."""
    TEXT = "text"
    MACHINE = "machine"


class CheckStatus(str, enum.Enum):
    """Outcome of one check."""
    PASS = "pass"
    FAIL = "fail"
    INFO = "info"


# Axiom reports shared by the services

class AxiomCheck(BaseModel):
    """One axiom or diagram, with a witness on failure."""

    name: str
    passed: bool
    witness: Optional[str] = None


class AxiomReport(BaseModel):
    """Pass/fail per axiom for one structure."""

    subject: str
    checks: List[AxiomCheck] = []

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[AxiomCheck]:
        return [c for c in self.checks if not c.passed]

    def get(self, name: str) -> AxiomCheck:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)


# Input documents

class ComonoidDocument(BaseModel):
    """A comonoid C with an optional grouplike point g."""

    dim: PositiveInt
    comult: List[List[List[Scalar]]]
    counit: List[Scalar]
    grouplike: Optional[List[Scalar]] = None
    labels: Optional[List[str]] = None


class BialgebraDocument(BaseModel):
    """
    Structure constants of a bialgebra.

    mult[i][j][k]: e_i * e_j = sum_k mult[i][j][k] e_k
    comult[i][j][k]: delta(e_k) = sum_ij comult[i][j][k] e_i (x) e_j
    """

    kind: Literal["bialgebra"] = "bialgebra"
    name: Optional[str] = None
    field: FieldLabel = "Q"
    dim: PositiveInt
    mult: List[List[List[Scalar]]]
    unit: List[Scalar]
    comult: List[List[List[Scalar]]]
    counit: List[Scalar]
    labels: Optional[List[str]] = None
    comonoid: Optional[ComonoidDocument] = None
    characters: Optional[List[List[Scalar]]] = None


class MonadDocument(BaseModel):
    """A bundled monad on finite sets, selected by name."""

    kind: Literal["monad"] = "monad"
    name: Optional[str] = None
    monad: Literal["identity", "powerset", "nonempty_powerset", "maybe"]
    max_size: PositiveInt = 3
    carrier_bound: PositiveInt = 3


class PresheafDocument(BaseModel):
    """
    A finite poset for the presheaf suite.

    order lists pairs [p, q] meaning p <= q; reflexive pairs may be omitted.
    subterminal optionally names the down-set carrying u.
    """

    kind: Literal["presheaf"] = "presheaf"
    name: Optional[str] = None
    size: PositiveInt
    order: List[List[int]] = []
    max_component: PositiveInt = 2
    subterminal: Optional[List[int]] = None


InputDocument = Annotated[
    Union[BialgebraDocument, MonadDocument, PresheafDocument],
    Field(discriminator="kind"),
]


class InputEnvelope(BaseModel):
    """Wrapper used to validate any input document by its kind."""

    document: InputDocument


# Jobs and reports

class JobSpec(BaseModel):
    """
    One CLI invocation after flags and settings are merged.

    dim_bound and max_size stay None when not requested; the worker fills in
    the values a command actually uses and reports those.
    """

    command: Command
    input: str
    field: Optional[str] = None
    dim_bound: Optional[PositiveInt] = None
    max_size: Optional[PositiveInt] = None
    format: ReportFormat = ReportFormat.TEXT
    timing: bool = False


class CheckResult(BaseModel):
    """A named result inside a report."""

    name: str
    status: CheckStatus
    value: Optional[Union[bool, int, str]] = None
    witness: Optional[str] = None
    field: Optional[str] = None
    matrix: Optional[List[List[Scalar]]] = None
    inverse: Optional[List[List[Scalar]]] = None

    @model_validator(mode="after")
    def inverse_reverifies(self):
        """A claimed inverse must invert its matrix when the report is loaded."""
        if self.matrix is None or self.inverse is None:
            return self
        fld = field_from_label(self.field or "Q")
        m = matrix_from_wire(fld, self.matrix)
        inv = matrix_from_wire(fld, self.inverse)
        if m.rows != inv.cols or m.cols != inv.rows or not (inv @ m).is_identity():
            raise ValueError(f"check {self.name!r}: claimed inverse does not invert the matrix")
        return self


class Report(BaseModel):
    """Everything one job found."""

    tool: str
    version: str
    job: JobSpec
    checks: List[CheckResult] = []
    passed: bool = True
    exit_code: int = 0
    error: Optional[str] = None
    timing_seconds: Optional[float] = None
