"""CSV import and export of feature matrices and their reductions."""

import csv
import io
import logging
from pathlib import Path

import numpy as np

from ..exceptions import LabError
from ..storage import csv_text, format_float, write_text_atomic
from .matrix import FeatureMatrix

logger = logging.getLogger(__name__)

LABEL_COLUMNS = ("suite", "problem")
INVALID = "NA"


class ParseError(LabError):
    """Raised for a malformed feature CSV; ``row`` is the 1-based line, ``column`` the header name."""

    def __init__(self, row: int, column: str, message: str):
        self.row = row
        self.column = column
        self.message = message
        super().__init__(f"line {row}, column {column!r}: {message}")


def dump_features(matrix: FeatureMatrix) -> str:
    rows = [
        (suite, problem, *(format_float(float(value)) for value in row))
        for suite, problem, row in zip(matrix.suites, matrix.problems, matrix.data)
    ]
    return csv_text([*LABEL_COLUMNS, *matrix.features], rows)


def export_features(matrix: FeatureMatrix, path: Path) -> None:
    write_text_atomic(path, dump_features(matrix))


def _parse_value(text: str, row: int, column: str) -> float:
    if text == INVALID:
        return float("nan")
    try:
        return float(text)
    except ValueError:
        raise ParseError(row, column, f"not a number: {text!r}") from None


def parse_features(text: str) -> FeatureMatrix:
    """
    Parse a ``suite,problem,<features...>`` CSV.

    Raises:
        ParseError: On an empty document, a bad header, a ragged row or a
            non-numeric value
    """
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if not header:
        raise ParseError(1, "", "empty feature file")
    if tuple(header[:2]) != LABEL_COLUMNS:
        raise ParseError(1, header[0], "header must start with suite,problem")
    features = tuple(header[2:])
    if len(set(features)) != len(features):
        raise ParseError(1, "", "duplicate feature names in header")

    suites: list[str] = []
    problems: list[str] = []
    data: list[list[float]] = []
    for line, record in enumerate(reader, start=2):
        if not record:
            continue
        if len(record) != len(header):
            raise ParseError(line, "", f"expected {len(header)} fields, got {len(record)}")
        suites.append(record[0])
        problems.append(record[1])
        data.append([_parse_value(value, line, name) for name, value in zip(features, record[2:])])

    array = np.array(data, dtype=np.float64).reshape(len(data), len(features))
    return FeatureMatrix(suites=tuple(suites), problems=tuple(problems), features=features, data=array)


def import_features(path: Path) -> FeatureMatrix:
    matrix = parse_features(Path(path).read_text(encoding="utf-8"))
    logger.info(f"Imported {len(matrix.problems)} feature rows from {path}")
    return matrix


def write_dropped_report(matrix: FeatureMatrix, path: Path) -> None:
    write_text_atomic(path, csv_text(["feature", "reason"], list(matrix.dropped.items())))


def write_embedding(matrix: FeatureMatrix, coordinates: np.ndarray, path: Path) -> None:
    rows = [
        (suite, problem, format_float(float(x)), format_float(float(y)))
        for suite, problem, (x, y) in zip(matrix.suites, matrix.problems, coordinates)
    ]
    write_text_atomic(path, csv_text(["suite", "problem", "x", "y"], rows))


def write_pca_report(ratios: np.ndarray, path: Path) -> None:
    """Explained-variance ratio per component and its running total, ending at exactly 1."""
    cumulative = np.cumsum(ratios)
    cumulative = cumulative / cumulative[-1]
    rows = [
        (component, format_float(float(ratio)), format_float(float(total)))
        for component, (ratio, total) in enumerate(zip(ratios, cumulative), start=1)
    ]
    write_text_atomic(path, csv_text(["component", "explained_variance_ratio", "cumulative"], rows))
