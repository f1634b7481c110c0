class NetlapError(Exception):
    """Base class for every error raised by netlap."""


class InputError(NetlapError, ValueError):
    """Malformed graph, bad reference, infeasible parameters or a failed precondition."""


class CapExceededError(NetlapError):
    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: size {size} exceeds the cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap

    def __reduce__(self):
        return (CapExceededError, (self.what, self.size, self.cap))


class NumericError(NetlapError):
    def __init__(self, message: str, matrix: list[list[int]] | None = None):
        self.detail = message
        if matrix is not None:
            message = f"{message}; matrix={matrix}"
        super().__init__(message)
        self.matrix = matrix

    def __reduce__(self):
        return (NumericError, (self.detail, self.matrix))


class InapplicableError(NetlapError):
    """A theorem precondition does not hold for the given input."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class TheoremViolation(NetlapError):
    # raised from sweep workers, so it has to survive pickling
    def __init__(self, check: str, witness: str, graph_json: str | None = None):
        message = f"{check} violated: {witness}"
        if graph_json is not None:
            message = f"{message}; graph={graph_json}"
        super().__init__(message)
        self.check = check
        self.witness = witness
        self.graph_json = graph_json

    def __reduce__(self):
        return (TheoremViolation, (self.check, self.witness, self.graph_json))
