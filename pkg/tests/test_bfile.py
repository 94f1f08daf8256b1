import logging

import pytest

from eulerian_audit.bfile import CATALOG, crosscheck, parse_bfile, read_bfile, sequence_terms
from eulerian_audit.errors import BFileParseError, UnknownFamilyError


def test_parse_skips_comments_and_blanks():
    bfile = parse_bfile(["# header", "", "1 1", "  2 -3  ", "# trailer"])
    assert bfile.entries == ((1, 1), (2, -3))
    assert bfile.first_index == 1
    assert bfile.last_index == 2
    assert len(bfile) == 2


def test_malformed_line_reports_line_number():
    with pytest.raises(BFileParseError) as excinfo:
        parse_bfile(["# header", "4 1", "5 x"])
    assert excinfo.value.line_number == 3
    assert str(excinfo.value) == "line 3: expected 'index value', got '5 x'"


def test_indices_must_increase():
    with pytest.raises(BFileParseError, match="line 2: index 1 does not increase"):
        parse_bfile(["1 1", "1 2"])


def test_empty_file_rejected():
    with pytest.raises(BFileParseError, match="no entries"):
        parse_bfile(["# nothing here"])


def test_sequence_terms():
    assert sequence_terms("eulerian-triangle", 6) == [1, 1, 1, 1, 4, 1]
    assert sequence_terms("stirling2", 6) == [1, 1, 1, 1, 3, 1]
    assert sequence_terms("genocchi", 5) == [0, 1, -1, 0, 1]


def test_unknown_sequence():
    with pytest.raises(UnknownFamilyError, match="available: eulerian-triangle, genocchi, stirling2"):
        sequence_terms("catalan", 3)


def test_catalog_names():
    assert list(CATALOG) == ["eulerian-triangle", "genocchi", "stirling2"]


@pytest.mark.parametrize(
    "name,filename,offset,count",
    [("eulerian-triangle", "eulerian_triangle.b", 1, 36), ("genocchi", "genocchi.b", 0, 13)],
)
def test_fixtures_match(fixtures_dir, name, filename, offset, count):
    result = crosscheck(name, read_bfile(fixtures_dir / filename), offset)
    assert result.matched
    assert result.compared == count
    assert result.mismatch_index is None


def test_corrupted_value_is_located(fixtures_dir, caplog):
    lines = (fixtures_dir / "genocchi.b").read_text().splitlines()
    lines = [("8 18" if line == "8 17" else line) for line in lines]
    with caplog.at_level(logging.WARNING, logger="eulerian_audit.bfile"):
        result = crosscheck("genocchi", parse_bfile(lines), 0)
    assert not result.matched
    assert result.mismatch_index == 8
    assert result.expected_value == "18"
    assert result.actual_value == "17"
    assert result.compared == 9
    assert "mismatch at index 8" in caplog.text


def test_wrong_offset_mismatches(fixtures_dir):
    result = crosscheck("eulerian-triangle", read_bfile(fixtures_dir / "eulerian_triangle.b"), 0)
    assert not result.matched


def test_entries_before_offset_are_skipped():
    result = crosscheck("genocchi", parse_bfile(["0 99", "5 0", "6 1"]), 5)
    assert result.matched
    assert result.compared == 2
    assert result.first_index == 5
