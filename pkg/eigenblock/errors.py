"""Exception hierarchy shared by every eigenblock module"""

from typing import Optional


EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
EXIT_INFEASIBLE = 4
EXIT_VERIFICATION_FAILED = 5


class EigenblockError(Exception):
    """Base class; carries the process exit code used by the CLI"""
    exit_code = EXIT_USAGE


class ValidationError(EigenblockError, ValueError):
    """Invalid input data (files, dimensions, parameters, selectors)"""
    exit_code = EXIT_VALIDATION


class NonFiniteMatrixError(ValidationError):
    """Matrix contains NaN or Inf"""


class ModelFileError(ValidationError):
    """Model, parameter, gain or plan file could not be parsed"""

    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        if field:
            message = f"{field}: {message}"
        super().__init__(message)


class DimensionMismatchError(ValidationError):
    """Matrix dimensions disagree with each other or with metadata"""


class HeffronParameterError(ValidationError):
    """Heffron-Phillips parameters violate their invariants"""


class PairSelectionError(ValidationError):
    """Requested mode pair does not exist or is not a conjugate pair"""


class OverlappingTargetsError(ValidationError):
    """Two blocking requests target the same mode pair"""


class NumericalError(EigenblockError, ArithmeticError):
    """A numerical contract could not be met"""
    exit_code = EXIT_NUMERICAL


class EigenSolverError(NumericalError):
    """Eigen-solver failed to converge"""

    def __init__(self, message: str, fingerprint: str):
        self.fingerprint = fingerprint
        super().__init__(f"{message} [matrix {fingerprint}]")


class SingularMatrixError(NumericalError):
    """Linear solve refused because the condition estimate is too large"""

    def __init__(self, condition: float, threshold: float):
        self.condition = condition
        self.threshold = threshold
        super().__init__(
            f"matrix is numerically singular: condition {condition:.3e} "
            f"exceeds threshold {threshold:.1e}"
        )


class DistinctnessError(NumericalError):
    """Eigenvalues are repeated or clustered; distinctness violated"""


class PairingError(NumericalError):
    """A complex eigenvalue has no conjugate partner"""


class EmptySubspaceError(NumericalError):
    """No eigenvector is assignable at the requested eigenvalue"""


class DegenerateDirectionError(NumericalError):
    """Every candidate direction produced a zero eigenvector"""


class IllConditionedError(NumericalError):
    """The modified eigenvector matrix cannot be inverted reliably"""


class ConjugationError(NumericalError):
    """Synthesized gain has a significant imaginary part"""


class GenerationError(NumericalError):
    """Random system generation exhausted its retry budget"""


class VerificationInconclusiveError(NumericalError):
    """Closed loop could not be decomposed for verification"""


class InfeasibleRequestError(EigenblockError, ValueError):
    """Request violates a feasibility condition"""
    exit_code = EXIT_INFEASIBLE

    def __init__(self, message: str, condition: str):
        self.condition = condition
        super().__init__(f"{message} (requires {condition})")


class VerificationFailedError(EigenblockError):
    """A synthesized gain failed its verification suite"""
    exit_code = EXIT_VERIFICATION_FAILED

    def __init__(self, report):
        self.report = report
        failed = ", ".join(report.failed_checks())
        super().__init__(f"verification failed: {failed}")


class StageError(EigenblockError):
    """Stage k of a sequential blocking chain failed"""

    def __init__(self, stage: int, cause: EigenblockError):
        self.stage = stage
        self.cause = cause
        self.exit_code = cause.exit_code
        super().__init__(f"stage {stage} failed: {cause}")
