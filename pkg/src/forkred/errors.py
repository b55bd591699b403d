"""Exception types raised by the engine."""


class QuiverError(ValueError):
    """Base class for invalid quiver input or violated preconditions."""


class MixedSignsError(QuiverError):
    """A c-vector has both strictly positive and strictly negative entries."""

    def __init__(self, vertex: int, row):
        self.vertex = vertex
        self.row = tuple(row)
        super().__init__(f"c-vector of vertex {vertex} is not sign-coherent: {list(self.row)}")


class NonReducedSequenceError(QuiverError):
    """Two consecutive entries of a mutation sequence are equal."""


class CyclicInputError(QuiverError):
    pass


class NotAForkError(QuiverError):
    pass


class BlueVertexError(QuiverError):
    """A zero c-vector showed up where strict sign-coherence is required."""


class SinkNotRedError(QuiverError):
    pass


class NotRank3CyclicError(QuiverError):
    pass


class ParseError(QuiverError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
