"""Rating-scale datasets: one binary outcome column plus ordinal item columns.

The default layout puts the outcome in the first column and the items in
the remaining columns, in file order.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

import numpy as np
from numpy.typing import NDArray

from aucreduce.roc import DegenerateLabelsError


class DatasetError(ValueError):
    """Base class for dataset load/validation failures."""


class ParseError(DatasetError):
    pass


class NonBinaryLabelError(DatasetError):
    pass


class ResponseRangeError(DatasetError):
    pass


class MissingDataError(DatasetError):
    pass


class DegenerateDatasetError(DatasetError, DegenerateLabelsError):
    pass


@dataclass(frozen=True)
class LoadOptions:
    """How to read a delimited file.

    ``header`` may be ``True``, ``False`` or ``"auto"``; in auto mode the
    first row is a header when any of its cells is not an integer.
    ``label_column`` is a 0-based index or a header name.
    ``response_range`` is an inclusive ``(low, high)`` pair, or ``None``
    to skip range checks.
    """

    delimiter: str = ","
    header: bool | Literal["auto"] = "auto"
    label_column: int | str = 0
    missing: Literal["reject", "drop-row"] = "reject"
    response_range: tuple[int, int] | None = None


@dataclass(frozen=True, eq=False)
class Dataset:
    labels: NDArray[np.int64]
    items: NDArray[np.int64]
    item_ids: tuple[str, ...]
    label_name: str = "label"
    dropped_rows: int = field(default=0, compare=False)

    def __post_init__(self) -> None:
        labels = np.array(self.labels, dtype=np.int64)
        items = np.array(self.items, dtype=np.int64)
        if labels.ndim != 1 or items.ndim != 2:
            raise DatasetError("labels must be 1-D and items 2-D")
        if items.shape[0] != labels.shape[0]:
            raise DatasetError(
                f"{labels.shape[0]} labels but {items.shape[0]} item rows"
            )
        if items.shape[1] == 0:
            raise DatasetError("dataset has no item columns")
        ids = tuple(str(i) for i in self.item_ids)
        if len(ids) != items.shape[1]:
            raise DatasetError(
                f"{len(ids)} item ids for {items.shape[1]} item columns"
            )
        if len(set(ids)) != len(ids):
            raise DatasetError("item ids must be unique")
        bad = np.flatnonzero((labels != 0) & (labels != 1))
        if bad.size:
            raise NonBinaryLabelError(
                f"label {labels[bad[0]]} at respondent {bad[0] + 1} is not 0/1"
            )
        n_pos = int(labels.sum())
        if n_pos == 0 or n_pos == labels.size:
            raise DegenerateDatasetError(
                "dataset needs at least one positive and one negative label"
            )
        if np.any(items < 0):
            raise ResponseRangeError("item responses must be non-negative")
        labels.flags.writeable = False
        items.flags.writeable = False
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "items", items)
        object.__setattr__(self, "item_ids", ids)

    @property
    def n_respondents(self) -> int:
        return self.items.shape[0]

    @property
    def n_items(self) -> int:
        return self.items.shape[1]

    def column(self, item_id: str) -> NDArray[np.int64]:
        return self.items[:, self.index_of(item_id)]

    def index_of(self, item_id: str) -> int:
        try:
            return self.item_ids.index(str(item_id))
        except ValueError:
            raise KeyError(f"unknown item id {item_id!r}") from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            self.item_ids == other.item_ids
            and self.label_name == other.label_name
            and np.array_equal(self.labels, other.labels)
            and np.array_equal(self.items, other.items)
        )

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class DatasetSummary:
    respondents: int
    items: int
    positives: int
    prevalence: float
    response_min: dict[str, int]
    response_max: dict[str, int]
    missing_cells: int
    dropped_rows: int

    def to_dict(self) -> dict:
        return {
            "respondents": self.respondents,
            "items": self.items,
            "positives": self.positives,
            "prevalence": self.prevalence,
            "response_min": dict(self.response_min),
            "response_max": dict(self.response_max),
            "missing_cells": self.missing_cells,
            "dropped_rows": self.dropped_rows,
        }


def _is_int(cell: str) -> bool:
    try:
        int(cell)
    except ValueError:
        return False
    return True


def _parse_int(cell: str, line: int, col: int, what: str) -> int:
    try:
        return int(cell)
    except ValueError:
        raise ParseError(
            f"line {line}, column {col}: {what} {cell!r} is not an integer"
        ) from None


def parse_dataset(text: str, options: LoadOptions | None = None) -> Dataset:
    """Build a :class:`Dataset` from delimited text."""
    opts = options or LoadOptions()
    rows = [
        (lineno, row)
        for lineno, row in enumerate(
            csv.reader(io.StringIO(text), delimiter=opts.delimiter), start=1
        )
        if any(cell.strip() for cell in row)
    ]
    if not rows:
        raise ParseError("file contains no rows")

    first = [c.strip() for c in rows[0][1]]
    has_header = (
        any(not _is_int(c) for c in first if c) if opts.header == "auto" else opts.header
    )
    header = first if has_header else None
    if has_header:
        rows = rows[1:]
    if not rows:
        raise ParseError("file contains a header but no data rows")

    width = len(header) if header is not None else len(rows[0][1])
    if width < 2:
        raise ParseError("need a label column and at least one item column")

    if isinstance(opts.label_column, str):
        if header is None:
            raise ParseError(
                f"label column {opts.label_column!r} given by name but file has no header"
            )
        try:
            label_idx = header.index(opts.label_column)
        except ValueError:
            raise ParseError(f"no column named {opts.label_column!r} in header") from None
    else:
        label_idx = opts.label_column
        if not -width <= label_idx < width:
            raise ParseError(f"label column index {label_idx} out of range for {width} columns")
        label_idx %= width
    item_cols = [j for j in range(width) if j != label_idx]

    if header is not None:
        label_name = header[label_idx] or "label"
        item_ids = tuple(header[j] or str(n) for n, j in enumerate(item_cols, start=1))
    else:
        label_name = "label"
        item_ids = tuple(str(n) for n in range(1, len(item_cols) + 1))

    labels: list[int] = []
    items: list[list[int]] = []
    dropped = 0
    for lineno, raw in rows:
        if len(raw) != width:
            raise ParseError(f"line {lineno}: expected {width} columns, found {len(raw)}")
        cells = [c.strip() for c in raw]
        blanks = [j for j, c in enumerate(cells) if c == "" or c.upper() == "NA"]
        if blanks:
            if opts.missing == "drop-row":
                dropped += 1
                continue
            raise MissingDataError(
                f"line {lineno}, column {blanks[0] + 1}: missing value"
            )
        label = _parse_int(cells[label_idx], lineno, label_idx + 1, "label")
        if label not in (0, 1):
            raise NonBinaryLabelError(
                f"line {lineno}, column {label_idx + 1}: label {label} is not 0/1"
            )
        row = []
        for j in item_cols:
            value = _parse_int(cells[j], lineno, j + 1, "item response")
            if opts.response_range is not None:
                lo, hi = opts.response_range
                if not lo <= value <= hi:
                    raise ResponseRangeError(
                        f"line {lineno}, column {j + 1}: response {value} "
                        f"outside declared range {lo}-{hi}"
                    )
            elif value < 0:
                raise ResponseRangeError(
                    f"line {lineno}, column {j + 1}: negative response {value}"
                )
            row.append(value)
        labels.append(label)
        items.append(row)

    if not labels:
        raise MissingDataError("no complete rows remain after dropping missing values")

    return Dataset(
        labels=np.array(labels, dtype=np.int64),
        items=np.array(items, dtype=np.int64).reshape(len(labels), len(item_cols)),
        item_ids=item_ids,
        label_name=label_name,
        dropped_rows=dropped,
    )


def load_dataset(path: str | Path, options: LoadOptions | None = None) -> Dataset:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8-sig")
    except OSError as exc:
        raise DatasetError(f"cannot read {path}: {exc.strerror or exc}") from exc
    return parse_dataset(text, options)


def format_dataset(dataset: Dataset, delimiter: str = ",", header: bool = True) -> str:
    """Render a dataset in the layout :func:`parse_dataset` reads."""
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
    if header:
        writer.writerow([dataset.label_name, *dataset.item_ids])
    for label, row in zip(dataset.labels.tolist(), dataset.items.tolist()):
        writer.writerow([label, *row])
    return buf.getvalue()


def write_dataset(
    dataset: Dataset, path: str | Path, delimiter: str = ",", header: bool = True
) -> None:
    Path(path).write_text(format_dataset(dataset, delimiter, header), encoding="utf-8")


def summarize(dataset: Dataset) -> DatasetSummary:
    positives = int(dataset.labels.sum())
    lo = dataset.items.min(axis=0).tolist()
    hi = dataset.items.max(axis=0).tolist()
    return DatasetSummary(
        respondents=dataset.n_respondents,
        items=dataset.n_items,
        positives=positives,
        prevalence=positives / dataset.n_respondents,
        response_min=dict(zip(dataset.item_ids, lo)),
        response_max=dict(zip(dataset.item_ids, hi)),
        missing_cells=0,
        dropped_rows=dataset.dropped_rows,
    )
