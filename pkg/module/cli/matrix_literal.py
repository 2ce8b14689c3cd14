"""Matrix literals and matrix files.

Literal grammar (whitespace is insignificant):

    matrix  := '[' row (';' row)* ']'
    row     := entry (',' entry)*
    entry   := complex
    complex := real | imag | real sign imag
    imag    := [real] 'i'
    real    := decimal with optional sign and exponent

File format: {"rows": n, "cols": n, "data": [[re, im], ...]} in row-major order.
"""
import math
import re
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from module.base.errors import (
    LiteralShapeError,
    LiteralSyntaxError,
    MatrixError
)
from module.file_operation import read_json, write_json
from module.linalg.linalg_core import CMatrix

NUMBER = re.compile(r'(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?')


@dataclass(frozen=True)
class MatrixLiteral:
    source: str
    matrix: CMatrix

    @classmethod
    def parse(cls, source: str) -> 'MatrixLiteral':
        return cls(source=source, matrix=parse_matrix(source))


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _location(self, pos: int = None):
        pos = self.pos if pos is None else pos
        line = self.text.count('\n', 0, pos) + 1
        column = pos - (self.text.rfind('\n', 0, pos) + 1) + 1
        return line, column

    def error(self, message: str, pos: int = None) -> LiteralSyntaxError:
        line, column = self._location(pos)
        return LiteralSyntaxError(message, line, column)

    def peek(self) -> Optional[str]:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else None

    def accept(self, char: str) -> bool:
        if self.peek() == char:
            self.pos += 1
            return True
        return False

    def expect(self, char: str):
        found = self.peek()
        if found != char:
            raise self.error(f"expected '{char}' but found {_describe(found)}")
        self.pos += 1

    def sign(self) -> Optional[float]:
        found = self.peek()
        if found in ('+', '-'):
            self.pos += 1
            return -1.0 if found == '-' else 1.0
        return None

    def number(self) -> float:
        self.peek()
        match = NUMBER.match(self.text, self.pos)
        if not match:
            raise self.error(f'expected a number but found {_describe(self.peek())}')
        self.pos = match.end()
        return float(match.group(0))

    def entry(self) -> complex:
        sign = self.sign()
        sign = 1.0 if sign is None else sign
        if self.accept('i'):
            return complex(0.0, sign)
        value = sign * self.number()
        if self.accept('i'):
            return complex(0.0, value)
        second = self.sign()
        if second is None:
            return complex(value, 0.0)
        if self.accept('i'):
            return complex(value, second)
        imaginary = second * self.number()
        self.expect('i')
        return complex(value, imaginary)

    def row(self) -> List[complex]:
        entries = [self.entry()]
        while self.accept(','):
            entries.append(self.entry())
        return entries

    def end(self):
        found = self.peek()
        if found is not None:
            raise self.error(f'unexpected trailing input {_describe(found)}')


def _describe(char: Optional[str]) -> str:
    return 'end of input' if char is None else repr(char)


def parse_matrix(text: str) -> CMatrix:
    scanner = _Scanner(text)
    scanner.expect('[')
    if scanner.peek() == ']':
        raise LiteralShapeError('empty matrix')
    rows = [scanner.row()]
    while scanner.accept(';'):
        rows.append(scanner.row())
    scanner.expect(']')
    scanner.end()

    widths = sorted({len(row) for row in rows})
    if len(widths) > 1:
        raise LiteralShapeError(f'ragged rows: row lengths {[len(row) for row in rows]}')
    if widths[0] != len(rows):
        raise LiteralShapeError(f'matrix must be square, got {len(rows)}x{widths[0]}')
    try:
        return CMatrix(np.array(rows, dtype=np.complex128))
    except MatrixError as e:
        raise LiteralShapeError(str(e)) from None


def _format_entry(z: complex) -> str:
    sign = '-' if math.copysign(1.0, z.imag) < 0 else '+'
    return f'{z.real!r}{sign}{abs(z.imag)!r}i'


def format_matrix(M: CMatrix) -> str:
    return '[' + ';'.join(','.join(_format_entry(complex(z)) for z in row) for row in M.data) + ']'


def matrix_to_json(M: CMatrix) -> dict:
    return {
        'rows': M.n,
        'cols': M.n,
        'data': [[float(z.real), float(z.imag)] for z in M.data.reshape(-1)]
    }


def matrix_from_json(payload: dict) -> CMatrix:
    try:
        rows, cols, data = int(payload['rows']), int(payload['cols']), payload['data']
    except (KeyError, TypeError, ValueError) as e:
        raise LiteralShapeError(f'matrix file needs integer "rows", "cols" and a "data" list: {e}') from None
    if rows != cols or rows < 1:
        raise LiteralShapeError(f'matrix file must describe a square matrix, got {rows}x{cols}')
    if not isinstance(data, list) or len(data) != rows * cols:
        raise LiteralShapeError(f'matrix file needs {rows * cols} entries in "data"')
    try:
        values = np.array([complex(float(re_), float(im_)) for re_, im_ in data], dtype=np.complex128)
    except (TypeError, ValueError) as e:
        raise LiteralShapeError(f'matrix file entries must be [re, im] pairs: {e}') from None
    try:
        return CMatrix(values.reshape(rows, cols))
    except MatrixError as e:
        raise LiteralShapeError(str(e)) from None


def load_matrix_file(path: str) -> CMatrix:
    return matrix_from_json(read_json(path))


def dump_matrix_file(path: str, M: CMatrix):
    write_json(path, matrix_to_json(M))
