from typing import List, Optional
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from core.config import settings

# --- Enum and Status ---

class CheckStatus(str, Enum):
    """Outcome of a single check."""
    passed = "pass"
    failed = "fail"


class SweepMode(str, Enum):
    exhaustive = "exhaustive"
    sample = "sample"


class OutputFormat(str, Enum):
    text = "text"
    json = "json"
    dot = "dot"

# --- Suite Models ---

class CheckResult(BaseModel):
    name: str
    status: CheckStatus
    witness: Optional[str] = None

    @classmethod
    def of(cls, name: str, ok: bool, witness: Optional[str] = None) -> "CheckResult":
        if ok:
            return cls(name=name, status=CheckStatus.passed)
        return cls(name=name, status=CheckStatus.failed, witness=witness or "no witness recorded")


class SuiteParams(BaseModel):
    """Parameters shared by every suite; m and k are optional and select a single instance."""
    m: Optional[int] = None
    k: Optional[int] = None
    max_degree: Optional[int] = None
    mode: SweepMode = Field(default_factory=lambda: SweepMode(settings.MODE))
    seed: int = Field(default_factory=lambda: settings.SEED)
    sample_size: int = Field(default_factory=lambda: settings.SAMPLE_SIZE)

    @field_validator("m")
    @classmethod
    def check_m(cls, v):
        if v is not None and v < 2:
            raise ValueError("m must be >= 2")
        return v

    @field_validator("k", "max_degree")
    @classmethod
    def check_nonnegative(cls, v):
        if v is not None and v < 0:
            raise ValueError("must be >= 0")
        return v

    @field_validator("seed")
    @classmethod
    def check_seed(cls, v):
        if not 0 <= v < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")
        return v

    @field_validator("sample_size")
    @classmethod
    def check_sample_size(cls, v):
        if v < 1:
            raise ValueError("sample size must be >= 1")
        return v


class Summary(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    passed: int = Field(0, alias="pass")
    failed: int = Field(0, alias="fail")


class SuiteReport(BaseModel):
    suite: str
    params: SuiteParams
    checks: List[CheckResult]
    summary: Summary

    @classmethod
    def from_checks(cls, suite: str, params: SuiteParams, checks: List[CheckResult]) -> "SuiteReport":
        ordered = sorted(checks, key=lambda c: c.name)
        failed = sum(1 for c in ordered if c.status is CheckStatus.failed)
        return cls(
            suite=suite,
            params=params,
            checks=ordered,
            summary=Summary(passed=len(ordered) - failed, failed=failed),
        )

    @property
    def ok(self) -> bool:
        return self.summary.failed == 0

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if c.status is CheckStatus.failed]


class RunReport(BaseModel):
    """Every suite of one ``verify all`` run."""
    reports: List[SuiteReport]
    summary: Summary

# --- Query Models ---

class WeightReport(BaseModel):
    spec: str
    m: int
    k: int
    weight: Optional[List[str]] = None
    classification: str
    direct: Optional[str] = None


class HwvCount(BaseModel):
    m: int
    k: int
    plus: int
    minus: int
    expected: int


class OrbitEdgeOut(BaseModel):
    source: str
    generator: str
    target: str
    scalar: str


class OrbitOut(BaseModel):
    start: str
    m: int
    dimension: int
    expected_dimension: int
    nodes: List[str]
    weights: List[Optional[List[str]]]
    edges: List[OrbitEdgeOut]
    parity_constant: bool


class DimsOut(BaseModel):
    m: int
    k: int
    kernel_dirac: int
    expected_dirac: int
    kernel_laplacian: int
    printed_reading: int
    alternative_reading: int


class BracketOut(BaseModel):
    left: str
    right: str
    combination: Optional[List[List[str]]] = None

# --- Command Line ---

class CliConfig(BaseModel):
    command: str
    suite: Optional[str] = None
    m: Optional[int] = None
    k: Optional[int] = None
    max_degree: Optional[int] = None
    spec: Optional[str] = None
    enumerate: bool = False
    mode: SweepMode = Field(default_factory=lambda: SweepMode(settings.MODE))
    sample_size: int = Field(default_factory=lambda: settings.SAMPLE_SIZE)
    seed: int = Field(default_factory=lambda: settings.SEED)
    out: OutputFormat = Field(default_factory=lambda: OutputFormat(settings.OUTPUT_FORMAT))
    output: Optional[str] = None

    @field_validator("m")
    @classmethod
    def check_m(cls, v):
        if v is not None and v < 2:
            raise ValueError("m must be >= 2")
        return v

    @field_validator("k", "max_degree")
    @classmethod
    def check_nonnegative(cls, v):
        if v is not None and v < 0:
            raise ValueError("must be >= 0")
        return v

    @model_validator(mode="after")
    def check_spec_length(self):
        if self.spec is not None and self.m is not None:
            tokens = self.spec.split()
            if len(tokens) != self.m:
                raise ValueError(f"spec {self.spec!r} has {len(tokens)} tokens, expected m = {self.m}")
        if self.out is OutputFormat.dot and self.command != "spinor-orbit":
            raise ValueError("dot output is only available for spinor-orbit")
        return self

    def suite_params(self) -> SuiteParams:
        return SuiteParams(
            m=self.m,
            k=self.k,
            max_degree=self.max_degree,
            mode=self.mode,
            seed=self.seed,
            sample_size=self.sample_size,
        )
