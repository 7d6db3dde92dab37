"""Exception types shared across the package."""


class LeavittError(Exception):
    """Base class. ``code`` is a stable machine-readable tag."""

    code = "ERROR"

    def __init__(self, message, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code


class FieldError(LeavittError):
    code = "FIELD"


class GraphError(LeavittError):
    code = "GRAPH"


class GraphContractError(GraphError):
    """A lazy graph contradicted one of its declared properties."""

    code = "CONTRACT_VIOLATION"


class ParseError(LeavittError):
    code = "SYNTAX"

    def __init__(self, message, code=None, pos=None, line=None, column=None):
        self.pos = pos
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        elif pos is not None:
            where.append(f"position {pos}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message, code)
