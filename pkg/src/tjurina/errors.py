"""Error codes shared by the pipeline and the command line."""

from __future__ import annotations

INPUT_ERROR = 2
PRECONDITION = 3
INVARIANT = 4

_EXIT = {
    "PARSE_ERROR": INPUT_ERROR,
    "SHAPE_ERROR": INPUT_ERROR,
    "NONZERO_CONSTANT": INPUT_ERROR,
    "IO_ERROR": INPUT_ERROR,
    "BAD_CHART": INPUT_ERROR,
    "NOT_ISOLATED": PRECONDITION,
    "MINOR_LOCUS_TOO_BIG": PRECONDITION,
    "NON_ISOLATED_TRANSFORM": PRECONDITION,
    "SUPPORT_ESCAPES_EXCEPTIONAL": PRECONDITION,
    "WRONG_TYPE": PRECONDITION,
    "INFINITE_TAU": INVARIANT,
    "NEGATIVE_H1": INVARIANT,
}


class TjurinaError(Exception):
    """An error with a stable machine-readable code."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message

    @property
    def exit_code(self) -> int:
        return _EXIT.get(self.code, PRECONDITION)
