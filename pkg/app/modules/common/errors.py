from __future__ import annotations

from typing import Any, Dict


class LabError(Exception):
    """Base class for every failure raised by the lab's library code."""

    code = "lab_error"

    def __init__(self, message: str, **context: Any) -> None:
        super().__init__(message)
        self.message = message
        self.context: Dict[str, Any] = context

    def to_dict(self) -> Dict[str, Any]:
        payload = {"error": self.code, "message": self.message}
        if self.context:
            payload["context"] = {key: str(value) for key, value in sorted(self.context.items())}
        return payload


class DegreeLimitExceeded(LabError):
    code = "degree_limit_exceeded"


class NonUnitary(LabError):
    code = "non_unitary"


class PoleOnSpectrum(LabError):
    code = "pole_on_spectrum"


class CutoffExceeded(LabError):
    code = "cutoff_exceeded"


class ModuleMismatch(LabError):
    code = "module_mismatch"


class NotGammaForm(LabError):
    code = "not_gamma_form"


class EmptySector(LabError):
    code = "empty_sector"


class NotDiagonal(LabError):
    code = "not_diagonal"


class NoPolynomialFit(LabError):
    code = "no_polynomial_fit"


class OrbitLeavesCutoff(LabError):
    code = "orbit_leaves_cutoff"


class PoleAtNonpositiveInteger(LabError):
    code = "pole_at_nonpositive_integer"


class DomainError(LabError):
    code = "domain_error"


class BParameterPole(LabError):
    code = "b_parameter_pole"


class QuadratureNotConverged(LabError):
    code = "quadrature_not_converged"


class ConfigError(LabError):
    code = "config_error"

    def __init__(self, message: str, errors: Dict[str, str] | None = None) -> None:
        super().__init__(message)
        self.errors: Dict[str, str] = dict(errors or {})

    def to_dict(self) -> Dict[str, Any]:
        payload = super().to_dict()
        payload["fields"] = dict(sorted(self.errors.items()))
        return payload
