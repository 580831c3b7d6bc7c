"""Reading raw solution matrices from disk into validated domain objects.

Input files are plain text matrices, one row per solution, with cells
separated by commas or whitespace.  A single leading header row is allowed
and is detected by failing to parse as numbers.  All error conditions map to
typed exceptions that carry enough position information to point a user at
the offending cell.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from frontscope.model import ProblemMeta, ReferenceSet, SolutionSet


class IngestError(ValueError):
    """Base class for input-reading failures."""


class IoError(IngestError):
    """Raised when a file cannot be read at all."""

    def __init__(self, path, reason: str):
        super().__init__(f"cannot read {path}: {reason}")
        self.path = Path(path)


class EmptyMatrix(IngestError):
    """Raised when a file contains no data rows."""

    def __init__(self, path):
        super().__init__(f"{path}: no data rows")
        self.path = Path(path)


class RaggedRows(IngestError):
    """Raised when a data row has a different cell count than the first.

    Attributes:
        row: 0-based index of the offending row, counted over data rows.
    """

    def __init__(self, row: int):
        super().__init__(f"row {row} has a different number of cells than row 0")
        self.row = row


class UnparsableCell(IngestError):
    """Raised when a cell outside the header cannot be parsed as a number."""

    def __init__(self, row: int, col: int):
        super().__init__(f"cell at row {row}, column {col} is not numeric")
        self.row = row
        self.col = col


class NonFiniteValue(IngestError):
    """Raised when a cell parses to NaN or an infinity."""

    def __init__(self, row: int, col: int):
        super().__init__(f"cell at row {row}, column {col} is not finite")
        self.row = row
        self.col = col


class RowCountMismatch(IngestError):
    """Raised when decision and objective files disagree on row count."""

    def __init__(self, decision_rows: int, objective_rows: int):
        super().__init__(
            f"decision file has {decision_rows} rows, objective file has {objective_rows}"
        )
        self.decision_rows = decision_rows
        self.objective_rows = objective_rows


class ObjectiveDimMismatch(IngestError):
    """Raised when the reference front has a different objective count."""

    def __init__(self, expected: int, got: int):
        super().__init__(f"reference rows have {got} objectives, expected {expected}")
        self.expected = expected
        self.got = got


@dataclass(frozen=True)
class RawInputBundle:
    """File locations and labels for one dataset.

    ``objective_sense`` holds one ``"min"`` or ``"max"`` per objective and
    defaults to all-minimize when left empty.
    """

    decision_path: Path
    objective_path: Path
    reference_path: Path | None = None
    problem_name: str = "unknown"
    algorithm_name: str = "unknown"
    objective_sense: tuple[str, ...] = ()


def _tokenize(line: str) -> list[str]:
    if "," in line:
        return [cell.strip() for cell in line.split(",")]
    return line.split()


def _parses_numeric(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def read_matrix(path) -> np.ndarray:
    """Reads one delimited text file into a float matrix.

    The first row is treated as a header and skipped iff any of its cells
    fails to parse as a number.  Row indices in errors are 0-based and count
    data rows only.

    Raises:
        IoError: If the file cannot be read.
        EmptyMatrix: If no data rows remain after header handling.
        RaggedRows: If a row's cell count differs from row 0.
        UnparsableCell: If a non-header cell is not numeric.
        NonFiniteValue: If a cell parses to NaN or infinity.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(path, str(exc)) from None
    rows = [_tokenize(line) for line in text.splitlines() if line.strip()]
    if rows and not all(_parses_numeric(cell) for cell in rows[0]):
        rows = rows[1:]
    if not rows:
        raise EmptyMatrix(path)
    width = len(rows[0])
    out = np.empty((len(rows), width), dtype=np.float64)
    for i, cells in enumerate(rows):
        if len(cells) != width:
            raise RaggedRows(i)
        for j, cell in enumerate(cells):
            try:
                value = float(cell)
            except ValueError:
                raise UnparsableCell(i, j) from None
            if not math.isfinite(value):
                raise NonFiniteValue(i, j)
            out[i, j] = value
    return out


def build_sets(bundle: RawInputBundle) -> tuple[SolutionSet, ReferenceSet]:
    """Reads a bundle's files and assembles validated solution objects.

    Raises:
        IngestError: For any unreadable or malformed input file, plus
            RowCountMismatch and ObjectiveDimMismatch for cross-file
            disagreements.
    """
    decision = read_matrix(bundle.decision_path)
    objective = read_matrix(bundle.objective_path)
    if decision.shape[0] != objective.shape[0]:
        raise RowCountMismatch(decision.shape[0], objective.shape[0])
    n, m = objective.shape
    if bundle.reference_path is not None:
        reference = read_matrix(bundle.reference_path)
        if reference.shape[1] != m:
            raise ObjectiveDimMismatch(expected=m, got=reference.shape[1])
    else:
        reference = np.empty((0, m), dtype=np.float64)
    meta = ProblemMeta(
        problem_name=bundle.problem_name,
        algorithm_name=bundle.algorithm_name,
        n_decision_vars=decision.shape[1],
        n_objectives=m,
        n_solutions=n,
        n_references=reference.shape[0],
        objective_sense=bundle.objective_sense,
    )
    return (
        SolutionSet(meta=meta, decision=decision, objective=objective),
        ReferenceSet(reference),
    )
