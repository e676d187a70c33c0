from __future__ import annotations

from typing import Any, Dict


class ThresholdError(Exception):
    """Base error. ``exit_code`` is what the CLI returns, ``detail`` what it prints."""

    exit_code: int = 1

    def __init__(self, detail: str | Dict[str, Any]):
        self.detail = detail
        super().__init__(detail if isinstance(detail, str) else detail.get("message", str(detail)))

    def as_dict(self) -> Dict[str, Any]:
        if isinstance(self.detail, dict):
            return {"status": "error", "error": type(self).__name__, **self.detail}
        return {"status": "error", "error": type(self).__name__, "message": self.detail}


class InputError(ThresholdError, ValueError):
    exit_code = 1


class MissingKeysError(InputError):
    pass


class NonSncError(InputError):
    pass


class PreconditionViolation(InputError):
    pass


class ReproductionFailure(ThresholdError):
    exit_code = 2


class LemmaFalsified(ThresholdError):
    exit_code = 2


class SolverError(ThresholdError):
    exit_code = 2
