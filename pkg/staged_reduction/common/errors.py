class StructuralError(Exception):
    """
    Exception indicating that an algebra, chain, matrix or document does not have the expected shape or structure
    (dimension mismatch, missing blocks, malformed bracket records).
    """
    pass


class InvariantViolation(Exception):
    """
    Exception that is raised when a computed quantity leaves the subspace it must lie in, for example a b-form
    value escaping the ideal of its stage.
    """
    pass


class ConstraintViolation(Exception):
    """
    Exception that is raised when a velocity does not belong to the constraint subspace.
    """
    pass


class SingularSystemError(Exception):
    """
    Exception to indicate that a linear system of the equations of motion could not be solved reliably.
    """
    def __init__(self, message: str, condition_number: float = float("inf")) -> None:
        super().__init__(f"{message} (condition number estimate: {condition_number:.3e})")
        self.condition_number = condition_number


class IntegrationAborted(Exception):
    """
    Exception to indicate that a time integration had to stop before reaching the requested end time; the part of
    the trajectory that was computed is kept on the exception.
    """
    def __init__(self, message: str, last_valid_time: float, trajectory=None) -> None:
        super().__init__(f"{message} (last valid time: {last_valid_time:.6g} s)")
        self.last_valid_time = last_valid_time
        self.trajectory = trajectory


class ChartBoundaryError(IntegrationAborted):
    """
    Exception to indicate that the shape coordinates left the open box of the local chart during integration.
    """
    pass


class ConfigError(Exception):
    """
    Exception to indicate that a configuration document or command-line invocation is incorrect; the message
    contains the location of the problem.
    """
    pass
