from __future__ import annotations

from typing import Any, Dict, Optional


EXIT_OK = 0
EXIT_HYPOTHESIS = 1
EXIT_INVALID_INPUT = 2
EXIT_INTERNAL = 3


class SolvcoError(Exception):
	"""Base class for every error the toolkit raises on purpose.

	`exit_code` is what the CLI returns when the error escapes a command.
	"""

	exit_code: int = EXIT_INTERNAL

	def __init__(self, message: str, *, detail: Optional[Dict[str, Any]] = None) -> None:
		super().__init__(message)
		self.message = message
		self.detail: Dict[str, Any] = dict(detail or {})

	def to_dict(self) -> Dict[str, Any]:
		return {"error": type(self).__name__, "message": self.message, "detail": self.detail, "exit_code": self.exit_code}


# Invalid input (exit 2)

class InvalidInputError(SolvcoError, ValueError):
	exit_code = EXIT_INVALID_INPUT


class ParseError(InvalidInputError):
	def __init__(self, message: str, *, line: Optional[int] = None, column: Optional[int] = None, path: Optional[str] = None) -> None:
		detail: Dict[str, Any] = {}
		if line is not None:
			detail["line"] = line
			detail["column"] = column
		if path is not None:
			detail["path"] = path
		super().__init__(message, detail=detail)
		self.line = line
		self.column = column
		self.path = path


class FieldMismatchError(InvalidInputError):
	pass


class NonSquareError(InvalidInputError):
	pass


class IrrationalPhaseError(InvalidInputError):
	pass


class UnknownSymbolError(InvalidInputError):
	pass


class ValidationFailure(InvalidInputError):
	def __init__(self, check: str, message: str) -> None:
		super().__init__(f"{check}: {message}", detail={"check": check})
		self.check = check


class FieldDivisionByZeroError(InvalidInputError, ZeroDivisionError):
	pass


# Hypotheses of a construction do not hold (exit 1)

class HypothesisFailure(SolvcoError):
	exit_code = EXIT_HYPOTHESIS

	def __init__(self, message: str, *, hypothesis: str = "", detail: Optional[Dict[str, Any]] = None) -> None:
		merged = dict(detail or {})
		if hypothesis:
			merged["hypothesis"] = hypothesis
		super().__init__(message, detail=merged)
		self.hypothesis = hypothesis


class EigenvalueOutsideFieldError(HypothesisFailure):
	def __init__(self, factor: str) -> None:
		super().__init__(
			f"eigenvalues are roots of {factor}, which does not split over the declared field; extend the field",
			hypothesis="eigenvalues_in_field",
			detail={"factor": factor},
		)
		self.factor = factor


class NotCommutingError(HypothesisFailure):
	pass


class NotSemisimpleError(HypothesisFailure):
	pass


class NotUnitaryError(HypothesisFailure):
	pass


class ModeHypothesisFailure(HypothesisFailure):
	pass


class ExplicitSublatticeNotTrivialOnGammaError(HypothesisFailure):
	pass


# Internal assertions (exit 3): a construction contradicted its own invariants

class InternalAssertionError(SolvcoError):
	exit_code = EXIT_INTERNAL


class JacobiFailure(InternalAssertionError):
	pass


class WeightAdditivityFailure(InternalAssertionError):
	pass


class NotClosedUnderDifferentialError(InternalAssertionError):
	pass


class NonClosedDifferentialError(InternalAssertionError):
	pass


class ConjugationClosureFailure(InternalAssertionError):
	pass


class NonSemisimpleDerivationError(InternalAssertionError):
	pass


class DifferentialSquareError(InternalAssertionError):
	pass


class PipelineDisagreementError(InternalAssertionError):
	pass


__all__ = [
	"EXIT_OK",
	"EXIT_HYPOTHESIS",
	"EXIT_INVALID_INPUT",
	"EXIT_INTERNAL",
	"SolvcoError",
	"InvalidInputError",
	"ParseError",
	"FieldMismatchError",
	"NonSquareError",
	"IrrationalPhaseError",
	"UnknownSymbolError",
	"ValidationFailure",
	"FieldDivisionByZeroError",
	"HypothesisFailure",
	"EigenvalueOutsideFieldError",
	"NotCommutingError",
	"NotSemisimpleError",
	"NotUnitaryError",
	"ModeHypothesisFailure",
	"ExplicitSublatticeNotTrivialOnGammaError",
	"InternalAssertionError",
	"JacobiFailure",
	"WeightAdditivityFailure",
	"NotClosedUnderDifferentialError",
	"NonClosedDifferentialError",
	"ConjugationClosureFailure",
	"NonSemisimpleDerivationError",
	"DifferentialSquareError",
	"PipelineDisagreementError",
]
