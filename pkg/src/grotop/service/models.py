"""Request/response schemas for the HTTP surface.

Wire conventions follow the library's serialization contracts: topologies
are maps element -> list of sieves (each a sorted element list), subsets of
X are sorted `pt:<element>` lists, count reports carry `"schema": 1`.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..posets import FinitePoset, parse_poset, poset_from_json

TopologyJSON = dict[str, list[list[str]]]


class PosetPayload(BaseModel):
    """A poset as edge-list text or as the JSON object format."""

    text: Optional[str] = None
    elements: Optional[list[str]] = None
    le: Optional[list[tuple[str, str]]] = None

    @model_validator(mode="after")
    def _exactly_one_form(self) -> "PosetPayload":
        if (self.text is None) == (self.elements is None):
            raise ValueError("provide either `text` or `elements` (+ `le`)")
        return self

    def to_poset(self) -> FinitePoset:
        if self.text is not None:
            return parse_poset(self.text)
        return poset_from_json({"elements": self.elements, "le": self.le or []})


class SubjectPayload(BaseModel):
    """Either a finite poset or a family selector."""

    poset: Optional[PosetPayload] = None
    family: Optional[str] = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "SubjectPayload":
        if (self.poset is None) == (self.family is None):
            raise ValueError("provide either `poset` or `family`")
        return self


class ParseRequest(BaseModel):
    poset: PosetPayload


class ParseResponse(BaseModel):
    elements: list[str]
    relations: list[tuple[str, str]]
    poset: dict


class TopologiesRequest(BaseModel):
    poset: PosetPayload
    limit: Optional[int] = Field(default=None, ge=1)


class TopologiesResponse(BaseModel):
    count: int
    topologies: list[TopologyJSON]


class CorrespondRequest(BaseModel):
    poset: PosetPayload
    subset: Optional[list[str]] = None
    topology: Optional[TopologyJSON] = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "CorrespondRequest":
        if (self.subset is None) == (self.topology is None):
            raise ValueError("provide either `subset` or `topology`")
        return self


class RoundTrip(BaseModel):
    kind: Literal["subset", "topology"]
    equal: bool


class CorrespondResponse(BaseModel):
    topology: TopologyJSON
    points: list[str]
    round_trip: RoundTrip


class ClosureRequest(BaseModel):
    subject: SubjectPayload
    kind: Literal["scott", "patch", "strong"]
    points: list[str] = Field(default_factory=list)
    sequence: Optional[str] = None
    candidates: list[str] = Field(default_factory=list)
    budget: int = Field(default=64, ge=0)


class ClosureResponse(BaseModel):
    kind: str
    points: list[str]
    added: list[str]
    outcome: Literal["closed", "grew"]
    checked_level: int = 0
    notes: list[str] = Field(default_factory=list)


class ConvergeRequest(BaseModel):
    family: str
    seq: str
    limit: str
    test_elements: Optional[list[str]] = None
    budget: int = Field(default=10_000, ge=0)


class ConvergeResponse(BaseModel):
    outcome: Literal["converges", "diverges", "unknown"]
    stabilization: dict[str, int]
    diverges_at: Optional[str] = None
    reason: Optional[str] = None
    exact: bool = False
    budget: int = 0


class SpectralRequest(BaseModel):
    subject: SubjectPayload
    levels: int = Field(default=64, ge=1)


class SpectralResponse(BaseModel):
    outcome: Literal["spectral", "not-spectral", "unknown"]
    dominating: list[str] = Field(default_factory=list)
    escape_prefix: list[str] = Field(default_factory=list)
    checked_level: int = 0
    detail: str = ""


class CountRequest(BaseModel):
    poset: PosetPayload
    gt_mode: Literal["auto", "enumerate", "formula"] = "auto"


class InequalityCheck(BaseModel):
    name: str
    lhs: int
    rhs: int
    ok: bool


class InequalitiesModel(BaseModel):
    ok: bool
    checks: list[InequalityCheck]
    skipped: list[str]


class CountResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(alias="schema")
    poset: str
    x: int
    cl: int
    coh: int
    ep: int
    gt: int
    methods: dict[str, str]
    not_computed: dict[str, str]
    gt_cross_check: Optional[dict] = None
    inequalities: InequalitiesModel


class FamilyInfo(BaseModel):
    selector: str
    description: str


class CatalogResponse(BaseModel):
    families: list[FamilyInfo]


class TruncateRequest(BaseModel):
    family: str
    level: int = Field(ge=0)


class TruncateResponse(BaseModel):
    poset: dict
    elements: list[str]


class ErrorDetail(BaseModel):
    kind: str
    message: str
