"""Request and response schemas for the service endpoints.

Every numeric payload field is carried as an exact string ("num/den" or an
integer literal); floats never appear in requests or responses.
"""
from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class RealizationRequest(BaseModel):
    name: str
    p: int = Field(default=1, ge=1)
    verify: bool = True


class OpeRequest(BaseModel):
    space: str = "uva"
    p: int = Field(default=1, ge=1)
    left: str
    right: str


class ScreenRequest(BaseModel):
    name: str
    p: int = Field(default=1, ge=1)
    state: str


class KernelRequest(BaseModel):
    p: int = Field(default=2, ge=1)
    module: Optional[str] = None
    screenings: Optional[str] = None
    max_conf: int = Field(default=3, ge=0)
    window: str = "-6:6"


class OmegaRequest(BaseModel):
    p: int = Field(default=2, ge=1)
    r: int = Field(default=1, ge=1)
    s: int = Field(default=1, ge=1)
    b: str = "0"
    window: str = "-5:5"
    classify: bool = False
    sweep: bool = False
    pmax: int = Field(default=3, ge=1)


class CharRequest(BaseModel):
    kind: str
    p: int = Field(default=2, ge=1)
    r: int = Field(default=1, ge=1)
    s: int = Field(default=1, ge=1)
    n: Optional[int] = None
    order: int = Field(default=5, ge=0)
    window: str = "-6:6"


class CheckRequest(BaseModel):
    identity: str
    p: int = Field(default=2, ge=1)
    order: int = Field(default=4, ge=0)


class C2Request(BaseModel):
    p: int = Field(default=2, ge=1)
    check: str = "ideal-equality"


class QGroupRequest(BaseModel):
    variant: str = "a"
    p: int = Field(default=3, ge=1)
    check: str = "relations"
    max_steps: Optional[int] = Field(default=None, ge=1)


class SuiteRequest(BaseModel):
    profile: str = "quick"
    fault: Optional[str] = None


class Verdict(BaseModel):
    """Uniform response envelope: a status plus the full module report."""

    status: Literal["pass", "fail", "inconclusive"]
    ok: bool
    inconclusive: bool = False
    report: dict
