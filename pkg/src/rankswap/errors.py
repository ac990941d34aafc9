"""Exception hierarchy shared by the library and the CLI."""


class RankSwapError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 1


class InvalidInput(RankSwapError, ValueError):
    exit_code = 2


class ParseError(InvalidInput):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


class IncompleteAssignment(RankSwapError, KeyError):
    exit_code = 2

    def __str__(self) -> str:
        return self.args[0] if self.args else "incomplete assignment"


class PreconditionError(RankSwapError):
    exit_code = 3


class ZeroDenominator(PreconditionError, ZeroDivisionError):
    pass
