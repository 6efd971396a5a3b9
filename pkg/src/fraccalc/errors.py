"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class EvaluationError(RuntimeError):
    """A supplied function returned NaN or infinity at a quadrature node."""


class FunctionParseError(ValueError):
    """A function descriptor string could not be parsed.

    The offending token is stored in ``token``.
    """

    def __init__(self, message: str, token: str):
        super().__init__(f"{message}: {token!r}")
        self.token = token
