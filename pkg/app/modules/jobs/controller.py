from __future__ import annotations

import json
from fractions import Fraction
from typing import Annotated, Any, Dict, List, Literal, Mapping, Optional, Tuple

from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    ValidationError,
    field_validator,
    model_validator,
)

from ..common.rational import format_fraction, to_fraction
from ..registry import get_preset


def _rational(value: Any) -> str:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ValueError("expected an integer or a 'p/q' string")
    try:
        return format_fraction(to_fraction(value))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {value!r}") from exc


def _grid_point(value: Any) -> Tuple[float, float]:
    if isinstance(value, bool):
        raise ValueError("expected a number or a [re, im] pair")
    if isinstance(value, (int, float)):
        return (float(value), 0.0)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return (float(value[0]), float(value[1]))
    raise ValueError("expected a number or a [re, im] pair")


Rational = Annotated[str, BeforeValidator(_rational)]
GridPoint = Annotated[Tuple[float, float], BeforeValidator(_grid_point)]


class AlgebraSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    preset: Optional[str] = None
    f: Optional[List[Rational]] = None
    w0: Rational = "0/1"
    params: Dict[str, Rational] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _preset_or_coefficients(self) -> "AlgebraSpec":
        if (self.preset is None) == (self.f is None):
            raise ValueError("give exactly one of 'preset' or 'f'")
        if self.preset is not None:
            metadata = get_preset(self.preset)
            if metadata is None:
                raise ValueError(f"unknown preset {self.preset!r}")
            unknown = sorted(set(self.params) - set(metadata.defaults or {}))
            if unknown:
                raise ValueError(f"unknown parameters for {self.preset}: {', '.join(unknown)}")
        return self


class SectorSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    h0: Optional[Rational] = None
    q: Optional[int] = None
    mode_cutoff: int = Field(12, ge=1, le=64)


class CutoffPolicy(BaseModel):
    model_config = ConfigDict(extra="forbid")

    initial: int = Field(64, ge=2)
    max_dim: int = Field(4096, ge=2, le=65536)

    @model_validator(mode="after")
    def _ordered(self) -> "CutoffPolicy":
        if self.initial > self.max_dim:
            raise ValueError("initial cutoff exceeds max_dim")
        return self


class Tolerances(BaseModel):
    model_config = ConfigDict(extra="forbid")

    tail: float = Field(1e-14, gt=0)
    quad: float = Field(1e-10, gt=0)
    residual: float = Field(1e-10, gt=0)


class JobConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    algebra: AlgebraSpec
    sector: SectorSpec = Field(default_factory=SectorSpec)
    vacuum: int = Field(0, ge=0)
    family: Literal["annihilation", "exponential", "displacement"] = "annihilation"
    grid: List[GridPoint] = Field(default_factory=lambda: [(1.0, 0.0)], min_length=1)
    cutoff: CutoffPolicy = Field(default_factory=CutoffPolicy)
    tolerances: Tolerances = Field(default_factory=Tolerances)
    weights: List[Rational] = Field(default_factory=list)
    n_max: int = Field(8, ge=0, le=64)
    b_sign: Optional[Literal[1, -1]] = None
    epsilon_const: Optional[Rational] = None
    out: Optional[str] = None
    workers: int = Field(1, ge=1, le=64)
    inject_corruption: Optional[str] = None

    @field_validator("grid")
    @classmethod
    def _finite_grid(cls, grid: List[Tuple[float, float]]) -> List[Tuple[float, float]]:
        for re, im in grid:
            if re != re or im != im or abs(re) == float("inf") or abs(im) == float("inf"):
                raise ValueError("grid points must be finite")
        return grid

    @property
    def points(self) -> List[complex]:
        return [complex(re, im) for re, im in self.grid]

    def preset_params(self) -> Dict[str, Fraction]:
        """Preset parameters with the sector charges folded in."""
        params = {key: to_fraction(value) for key, value in self.algebra.params.items()}
        if self.sector.h0 is not None:
            params["h0"] = to_fraction(self.sector.h0)
        if self.sector.q is not None:
            params["q"] = Fraction(self.sector.q)
        return params


def default_parameters() -> Dict[str, Any]:
    return JobConfig(algebra=AlgebraSpec(preset="su11")).model_dump(mode="json")


def _location(loc: Tuple[Any, ...]) -> str:
    return ".".join(str(part) for part in loc) or "config"


def apply_overrides(data: Dict[str, Any], overrides: Mapping[str, Any]) -> Dict[str, Any]:
    """CLI flags take precedence over fields of the config document."""
    merged = dict(data)
    if overrides.get("preset") is not None:
        algebra = dict(merged.get("algebra") or {})
        algebra.pop("f", None)
        algebra.pop("w0", None)
        if algebra.get("preset") not in (None, overrides["preset"]):
            algebra.pop("params", None)
        algebra["preset"] = overrides["preset"]
        merged["algebra"] = algebra
    for key in ("out", "workers", "inject_corruption"):
        if overrides.get(key) is not None:
            merged[key] = overrides[key]
    if overrides.get("tol") is not None:
        tolerances = dict(merged.get("tolerances") or {})
        tolerances["tail"] = overrides["tol"]
        merged["tolerances"] = tolerances
    return merged


def parse_config(
    data: str | Mapping[str, Any] | None, overrides: Mapping[str, Any] | None = None
) -> Tuple[Optional[JobConfig], Dict[str, str]]:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            return None, {"config": f"line {exc.lineno} column {exc.colno}: {exc.msg}"}
    if data is None:
        data = {}
    if not isinstance(data, Mapping):
        return None, {"config": "expected a JSON object"}
    data = apply_overrides(dict(data), overrides or {})
    if not data.get("algebra"):
        return None, {"algebra": "field required: give a preset or f coefficients"}

    try:
        return JobConfig.model_validate(data), {}
    except ValidationError as exc:
        errors: Dict[str, str] = {}
        for error in exc.errors():
            errors.setdefault(_location(error["loc"]), error["msg"])
        return None, errors
