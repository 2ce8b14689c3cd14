class NumradError(Exception):
    pass


class MatrixError(NumradError):
    pass


class DimensionError(MatrixError):
    pass


class NotHermitianError(MatrixError):
    pass


class DegenerateOperatorError(NumradError):
    pass


class ParameterError(NumradError):
    pass


class ConvergenceError(NumradError):
    pass


class LiteralError(NumradError):
    pass


class LiteralSyntaxError(LiteralError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f'{message} (line {line}, column {column})')
        self.line = line
        self.column = column


class LiteralShapeError(LiteralError):
    pass
