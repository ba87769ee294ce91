"""Parsing of CSV and JSON study files.

Every row names a ``label`` and a ``measure`` (``MD`` or ``OR``) and carries
the fields of exactly one input kind:

===========  =======================================  ==========================
input_kind   fields                                   constructor
===========  =======================================  ==========================
point        y, se                                    study_from_estimate_se
ci           lo, hi[, level]                          study_from_ci
arms         n1, mean1, sd1, n2, mean2, sd2           study_from_two_arm_continuous
counts       a, b, c, d                               study_from_2x2
===========  =======================================  ==========================

``y`` is on the analysis scale (log odds ratio for ``OR``) while ``lo``/``hi``
are reported display-scale endpoints. When the ``input_kind`` column is
missing the kind is inferred from the non-empty fields.

CSV headers either name the fields (``label,measure,input_kind,lo,hi``) or,
when the header stops at ``input_kind`` or none of its trailing names is a
known field, rows are read positionally in the order of the table above.
"""
import csv
import enum
import io
import json
import logging
import math
import os
from typing import IO
from typing import Any
from typing import Dict
from typing import Iterable
from typing import Iterator
from typing import List
from typing import Mapping
from typing import Optional
from typing import Sequence
from typing import Tuple
from typing import Union

from ._effects import DEFAULT_LEVEL
from ._effects import ConfidenceInterval
from ._effects import EffectMeasure
from ._effects import StudyEffect
from ._effects import study_from_2x2
from ._effects import study_from_ci
from ._effects import study_from_estimate_se
from ._effects import study_from_two_arm_continuous
from ._errors import DomainError
from ._errors import StudyParseError
from ._kernel import probability

LOGGER = logging.getLogger(__name__)

Source = Union[bytes, IO[bytes]]


class StudyFormat(enum.Enum):
    CSV = "csv"
    JSON = "json"

    @classmethod
    def from_path(cls, path: Union[str, "os.PathLike[str]"]) -> "StudyFormat":
        suffix = os.path.splitext(os.fspath(path))[1].lower()
        return cls.JSON if suffix == ".json" else cls.CSV


INPUT_KINDS: Dict[str, Tuple[str, ...]] = {
    "point": ("y", "se"),
    "ci": ("lo", "hi"),
    "arms": ("n1", "mean1", "sd1", "n2", "mean2", "sd2"),
    "counts": ("a", "b", "c", "d"),
}
OPTIONAL_FIELDS: Dict[str, Tuple[str, ...]] = {"ci": ("level",)}
INTEGER_FIELDS = frozenset({"n1", "n2", "a", "b", "c", "d"})
REQUIRED_MEASURE = {
    "arms": EffectMeasure.MEAN_DIFFERENCE,
    "counts": EffectMeasure.ODDS_RATIO,
}
RESERVED_COLUMNS = ("label", "measure", "input_kind")
KNOWN_FIELDS = frozenset(
    name
    for kind, fields in INPUT_KINDS.items()
    for name in fields + OPTIONAL_FIELDS.get(kind, ())
)


def _fields_of(kind: str) -> Tuple[str, ...]:
    return INPUT_KINDS[kind] + OPTIONAL_FIELDS.get(kind, ())


def _is_blank(value: Any) -> bool:
    return value is None or (isinstance(value, str) and not value.strip())


def _to_float(value: Any, row: Optional[int], column: str) -> float:
    if isinstance(value, bool):
        raise StudyParseError(f"expected a number, got {value!r}", row=row, column=column)
    if isinstance(value, (int, float)):
        number = float(value)
    else:
        try:
            number = float(str(value).strip())
        except ValueError:
            raise StudyParseError(
                f"expected a number, got {value!r}", row=row, column=column
            ) from None
    if not math.isfinite(number):
        raise StudyParseError(
            f"expected a finite number, got {value!r}", row=row, column=column
        )
    return number


def _to_int(value: Any, row: int, column: str) -> int:
    number = _to_float(value, row, column)
    if not number.is_integer():
        raise StudyParseError(
            f"expected a whole number, got {value!r}", row=row, column=column
        )
    return int(number)


def _infer_kind(present: Sequence[str], row: int) -> str:
    complete = [
        kind
        for kind, fields in INPUT_KINDS.items()
        if all(name in present for name in fields)
    ]
    if len(complete) == 1:
        return complete[0]
    if not complete:
        raise StudyParseError(
            "cannot determine input kind from fields "
            f"{', '.join(present) or '(none)'}",
            row=row,
            column="input_kind",
        )
    raise StudyParseError(
        f"conflicting column sets ({' and '.join(complete)})",
        row=row,
        column="input_kind",
    )


def _build_study(record: Mapping[str, Any], row: int, default_level: float) -> StudyEffect:
    label = "" if _is_blank(record.get("label")) else str(record["label"]).strip()

    raw_measure = record.get("measure")
    if _is_blank(raw_measure):
        raise StudyParseError("missing measure", row=row, column="measure")
    try:
        measure = EffectMeasure.from_tag(str(raw_measure))
    except DomainError as e:
        raise StudyParseError(str(e), row=row, column="measure") from None

    present = [
        name
        for name, value in record.items()
        if name in KNOWN_FIELDS and not _is_blank(value)
    ]
    raw_kind = record.get("input_kind")
    if _is_blank(raw_kind):
        kind = _infer_kind(present, row)
    else:
        kind = str(raw_kind).strip().lower()
        if kind not in INPUT_KINDS:
            raise StudyParseError(
                f"unknown input kind {raw_kind!r} (expected one of "
                f"{', '.join(INPUT_KINDS)})",
                row=row,
                column="input_kind",
            )

    allowed = _fields_of(kind)
    extraneous = [name for name in present if name not in allowed]
    if extraneous:
        raise StudyParseError(
            f"conflicting column sets: {kind!r} input does not take "
            f"{', '.join(extraneous)}",
            row=row,
            column=extraneous[0],
        )
    for name in INPUT_KINDS[kind]:
        if name not in present:
            raise StudyParseError(
                f"required for {kind!r} input", row=row, column=name
            )

    required_measure = REQUIRED_MEASURE.get(kind)
    if required_measure is not None and measure is not required_measure:
        raise StudyParseError(
            f"{kind!r} input requires measure {required_measure.tag}",
            row=row,
            column="measure",
        )

    values: Dict[str, Any] = {}
    for name in allowed:
        if name not in present:
            continue
        if name in INTEGER_FIELDS:
            values[name] = _to_int(record[name], row, name)
        else:
            values[name] = _to_float(record[name], row, name)

    try:
        if kind == "point":
            return study_from_estimate_se(label, values["y"], values["se"], measure)
        if kind == "ci":
            level = probability(
                values.get("level", default_level), "level", open_interval=True
            )
            interval = ConfidenceInterval(values["lo"], values["hi"], level)
            return study_from_ci(label, interval, measure)
        if kind == "arms":
            return study_from_two_arm_continuous(label, **values)
        return study_from_2x2(label, **values)
    except DomainError as e:
        raise StudyParseError(str(e), row=row) from None


def _decode(source: Source) -> str:
    data = source if isinstance(source, bytes) else source.read()
    try:
        return data.decode("utf-8-sig")
    except UnicodeDecodeError as e:
        raise StudyParseError(f"input is not valid UTF-8 ({e.reason})") from None


def _csv_records(text: str) -> Iterator[Tuple[int, Dict[str, str]]]:
    reader = csv.reader(io.StringIO(text))
    header: Optional[List[str]] = None
    positional = False
    for line in reader:
        if not any(cell.strip() for cell in line):
            continue
        if header is None:
            header = [cell.strip().lower() for cell in line]
            missing = [name for name in ("label", "measure") if name not in header]
            if missing:
                raise StudyParseError(
                    f"header must name the {' and '.join(missing)} column",
                    row=reader.line_num,
                )
            trailing = [name for name in header if name not in RESERVED_COLUMNS]
            unknown = [name for name in trailing if name not in KNOWN_FIELDS]
            positional = bool(unknown) and len(unknown) == len(trailing)
            if not trailing and "input_kind" in header:
                positional = True
            if positional and "input_kind" not in header:
                raise StudyParseError(
                    "positional fields need an input_kind column", row=reader.line_num
                )
            if unknown and not positional:
                raise StudyParseError(
                    f"unknown column {unknown[0]!r}", row=reader.line_num
                )
            if positional:
                LOGGER.debug("reading CSV fields positionally")
            continue

        row = reader.line_num
        if positional:
            yield row, _positional_record(header, line, row)
            continue
        if len(line) > len(header):
            raise StudyParseError(
                f"expected at most {len(header)} fields, got {len(line)}", row=row
            )
        yield row, dict(zip(header, line))

    if header is None:
        raise StudyParseError("missing header")


def _positional_record(header: List[str], line: List[str], row: int) -> Dict[str, str]:
    fixed = [name for name in header if name in RESERVED_COLUMNS]
    record = dict(zip(fixed, line))
    kind = record.get("input_kind", "").strip().lower()
    if kind not in INPUT_KINDS:
        raise StudyParseError(
            f"unknown input kind {kind!r} (expected one of {', '.join(INPUT_KINDS)})",
            row=row,
            column="input_kind",
        )
    values = line[len(fixed) :]
    names = _fields_of(kind)
    while values and not values[-1].strip():
        values = values[:-1]
    if len(values) > len(names):
        raise StudyParseError(
            f"{kind!r} input takes at most {len(names)} fields, got {len(values)}",
            row=row,
        )
    record.update(zip(names, values))
    return record


def _json_records(
    text: str,
) -> Tuple[List[Tuple[int, Mapping[str, Any]]], Optional[Any]]:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise StudyParseError(f"invalid JSON: {e.msg}", row=e.lineno) from None

    file_level = None
    if isinstance(document, dict):
        file_level = document.get("level")
        document = document.get("studies")
    if not isinstance(document, list):
        raise StudyParseError(
            "expected an array of study objects or an object with a 'studies' array"
        )
    records = []
    for index, element in enumerate(document, start=1):
        if not isinstance(element, dict):
            raise StudyParseError("expected a JSON object", row=index)
        for key in element:
            if key not in RESERVED_COLUMNS and key not in KNOWN_FIELDS:
                raise StudyParseError(f"unknown field {key!r}", row=index, column=key)
        records.append((index, element))
    return records, file_level


def parse_studies(
    source: Source,
    format: StudyFormat = StudyFormat.CSV,
    *,
    level: float = DEFAULT_LEVEL,
) -> List[StudyEffect]:
    """Parse a study file into analysis-scale effects, preserving row order.

    Args:
        source: Raw UTF-8 bytes or a binary file object.
        format: CSV or JSON.
        level: Confidence level of reported intervals that do not state one.
            A JSON ``level`` key overrides it for the whole file and a CSV
            ``level`` column overrides it per row.

    Raises:
        StudyParseError: On any malformed input. Nothing is returned for a
            file that fails to parse partway through.
    """
    level = probability(level, "level", open_interval=True)
    text = _decode(source)
    records: Iterable[Tuple[int, Mapping[str, Any]]]
    if format is StudyFormat.JSON:
        records, file_level = _json_records(text)
        if file_level is not None:
            try:
                level = probability(
                    _to_float(file_level, None, "level"), "level", open_interval=True
                )
            except DomainError as e:
                raise StudyParseError(str(e), column="level") from None
    else:
        records = _csv_records(text)

    studies = [_build_study(record, row, level) for row, record in records]
    LOGGER.debug("parsed %d studies", len(studies))
    return studies


def load_studies(
    path: Union[str, "os.PathLike[str]"],
    format: Optional[StudyFormat] = None,
    *,
    level: float = DEFAULT_LEVEL,
) -> List[StudyEffect]:
    """Read and parse a study file; the format defaults to the file suffix."""
    if format is None:
        format = StudyFormat.from_path(path)
    with open(path, "rb") as f:
        return parse_studies(f, format, level=level)
