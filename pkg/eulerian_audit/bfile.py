"""OEIS-style b-files and the integer sequences they are checked against."""
import logging
import re
from collections import OrderedDict
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, List, Tuple, Union

from .classical_seq import eulerian_number, named_number, stirling2
from .errors import BFileParseError, UnknownFamilyError
from .models import CrossCheckResult

logger = logging.getLogger(__name__)

_LINE = re.compile(r"(-?\d+)\s+(-?\d+)")


@dataclass(frozen=True)
class BFile:
    entries: Tuple[Tuple[int, int], ...]

    @property
    def first_index(self) -> int:
        return self.entries[0][0]

    @property
    def last_index(self) -> int:
        return self.entries[-1][0]

    def __len__(self) -> int:
        return len(self.entries)


def parse_bfile(lines: Iterable[str]) -> BFile:
    """Lines are 'index value'; '#' comments and blank lines are skipped."""
    entries: List[Tuple[int, int]] = []
    for line_number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        match = _LINE.fullmatch(line)
        if match is None:
            raise BFileParseError(line_number, f"expected 'index value', got {line!r}")
        index, value = int(match.group(1)), int(match.group(2))
        if entries and index <= entries[-1][0]:
            raise BFileParseError(
                line_number, f"index {index} does not increase (previous {entries[-1][0]})"
            )
        entries.append((index, value))
    if not entries:
        raise BFileParseError(0, "b-file has no entries")
    return BFile(tuple(entries))


def read_bfile(path: Union[str, Path]) -> BFile:
    with open(path, encoding="utf-8") as handle:
        return parse_bfile(handle)


# ----------------------------------------------------------------------
# Integer sequences, indexed from 0 in their own order
# ----------------------------------------------------------------------


def _triangle(entry) -> Iterator[int]:
    """Row-major over 1 <= k <= n, n = 1, 2, ..."""
    n = 1
    while True:
        for k in range(1, n + 1):
            yield int(entry(n, k))
        n += 1


class EulerianTriangleSequence:
    def terms(self) -> Iterator[int]:
        return _triangle(eulerian_number)


class Stirling2Sequence:
    def terms(self) -> Iterator[int]:
        return _triangle(stirling2)


class GenocchiSequence:
    def terms(self) -> Iterator[int]:
        n = 0
        while True:
            value = named_number("genocchi", n)
            if value.denominator != 1:
                raise ValueError(f"G_{n} = {value} is not an integer")
            yield int(value)
            n += 1


CATALOG = OrderedDict(
    [
        ("eulerian-triangle", EulerianTriangleSequence()),
        ("genocchi", GenocchiSequence()),
        ("stirling2", Stirling2Sequence()),
    ]
)


def sequence_terms(seq_id: str, count: int) -> List[int]:
    if seq_id not in CATALOG:
        raise UnknownFamilyError(seq_id, CATALOG.keys())
    terms = CATALOG[seq_id].terms()
    return [next(terms) for _ in range(count)]


def crosscheck(seq_id: str, bfile: BFile, offset: int = 0) -> CrossCheckResult:
    """Compare b-file entry (i, v) with term i - offset of the sequence.

    Entries whose shifted index is negative lie outside the sequence and are
    not compared.
    """
    usable = [(i, v) for i, v in bfile.entries if i - offset >= 0]
    if not usable:
        return CrossCheckResult(sequence=seq_id, offset=offset, compared=0)
    terms = sequence_terms(seq_id, usable[-1][0] - offset + 1)
    compared = 0
    for index, value in usable:
        actual = terms[index - offset]
        compared += 1
        if actual != value:
            logger.warning("%s mismatch at index %d: b-file %d, computed %d", seq_id, index, value, actual)
            return CrossCheckResult(
                sequence=seq_id,
                offset=offset,
                compared=compared,
                first_index=usable[0][0],
                last_index=index,
                mismatch_index=index,
                expected_value=str(value),
                actual_value=str(actual),
            )
    return CrossCheckResult(
        sequence=seq_id,
        offset=offset,
        compared=compared,
        first_index=usable[0][0],
        last_index=usable[-1][0],
    )
