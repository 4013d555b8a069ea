"""解析与输出格式测试"""
import io
from enum import Enum

import pytest

from chainmetrics.dataio import (
    OutputFormat,
    ResultDocument,
    Series,
    emit,
    format_value,
    parse_calibration_inputs,
    parse_keyvalue,
    parse_number,
    parse_shock_samples,
    parse_snapshot,
)
from chainmetrics.errors import ParseError


def stream(text: str) -> io.StringIO:
    return io.StringIO(text)


class TestParseNumber:
    @pytest.mark.parametrize("text, value", [("1", 1.0), ("-2.5", -2.5), (".5", 0.5), ("1e3", 1000.0), (" 7 ", 7.0)])
    def test_accepts_decimal(self, text, value):
        assert parse_number(text) == value

    @pytest.mark.parametrize("text", ["", "1,5", "1_000", "inf", "nan", "0x10", "abc", "1e999"])
    def test_rejects(self, text):
        with pytest.raises(ValueError):
            parse_number(text)


class TestParseSnapshot:
    def test_with_header(self):
        snap = parse_snapshot(stream("holder,balance\nalice,10\nbob,0\n\n"), label="2015")
        assert [(e.holder, e.balance) for e in snap.entries] == [("alice", 10.0), ("bob", 0.0)]
        assert snap.label == "2015"

    def test_without_header(self):
        snap = parse_snapshot(stream("a,1\r\nb,2.5\r\n"))
        assert snap.total() == 3.5

    def test_negative_balance(self):
        with pytest.raises(ParseError) as exc:
            parse_snapshot(stream("a,1\nb,-3\n"))
        assert exc.value.line == 2

    def test_wrong_column_count(self):
        with pytest.raises(ParseError) as exc:
            parse_snapshot(stream("a,1\nb,2,3\n"))
        assert exc.value.line == 2

    def test_non_numeric_after_first_row(self):
        with pytest.raises(ParseError) as exc:
            parse_snapshot(stream("a,1\nb,lots\n"))
        assert exc.value.line == 2

    @pytest.mark.parametrize("text", ["", "\n\n", "holder,balance\n"])
    def test_empty(self, text):
        with pytest.raises(ParseError):
            parse_snapshot(stream(text))

    def test_invalid_utf8(self):
        raw = io.TextIOWrapper(io.BytesIO(b"a,1\n\xff\xfe,2\n"), encoding="utf-8")
        with pytest.raises(ParseError):
            parse_snapshot(raw)


class TestParseCalibrationInputs:
    def test_partial_file_uses_defaults(self):
        inputs, provenance = parse_calibration_inputs(stream("# 2015\nannual_discount = 0.97\nblocks_per_day = 144\n"))
        assert inputs.annual_discount == 0.97
        assert inputs.supply == 14342502.95
        assert provenance["annual_discount"] == "file"
        assert provenance["supply"] == "default"

    @pytest.mark.parametrize("text, key", [
        ("unknown = 1\n", "unknown"),
        ("supply = 1\nsupply = 2\n", "supply"),
        ("supply = lots\n", "supply"),
        ("blocks_per_day = 144.5\n", "blocks_per_day"),
        ("annual_discount = 1.5\n", "annual_discount"),
    ])
    def test_errors_name_the_key(self, text, key):
        with pytest.raises(ParseError) as exc:
            parse_calibration_inputs(stream(text))
        assert exc.value.key == key
        assert key in str(exc.value)

    def test_missing_separator(self):
        with pytest.raises(ParseError) as exc:
            parse_calibration_inputs(stream("supply 1\n"))
        assert exc.value.line == 1


class TestParseShockSamples:
    def test_single_column_with_header(self):
        assert parse_shock_samples(stream("size\n0.5\n\n2\n")) == [0.5, 2.0]

    def test_rejects_garbage(self):
        with pytest.raises(ParseError):
            parse_shock_samples(stream("1\nx\n"))
        with pytest.raises(ParseError):
            parse_shock_samples(stream(""))


class Color(Enum):
    RED = "red"


class TestEmitters:
    @pytest.fixture
    def result(self):
        return ResultDocument(
            command="demo",
            inputs={"q": 0.1, "z": 5},
            outputs={"probability": 0.000913700715379, "flag": True},
            metadata={"seed": 7, "timestamp": "2015-01-01T00:00:00"},
        )

    def test_format_value(self):
        assert format_value(True) == "true"
        assert format_value(0.1) == "0.1"
        assert format_value(1 / 3) == "0.333333333333333"
        assert format_value(float("inf")) == "inf"
        assert format_value(Color.RED) == "red"
        assert format_value(None) == ""
        assert format_value([0.1, 0.25, 3]) == "0.1,0.25,3"

    def test_keyvalue(self, result):
        text = emit(result, OutputFormat.KEYVALUE)
        assert text.splitlines() == [
            "command=demo",
            "input.q=0.1",
            "input.z=5",
            "output.probability=0.000913700715379",
            "output.flag=true",
            "meta.seed=7",
        ]

    def test_keyvalue_parses_back(self, result):
        parsed = parse_keyvalue(stream(emit(result, "keyvalue")))
        assert float(parsed["output.probability"]) == pytest.approx(result.outputs["probability"], rel=1e-12)
        assert parsed["command"] == "demo"

    def test_csv_without_series(self, result):
        lines = emit(result, "csv").splitlines()
        assert lines[0] == "section,key,value"
        assert "output,flag,true" in lines
        assert not any("timestamp" in line for line in lines)

    def test_csv_with_series(self, result):
        result.series = Series(columns=["population_share", "wealth_share"], rows=[(0.0, 0.0), (1.0, 1.0)])
        assert emit(result, "csv") == "population_share,wealth_share\n0,0\n1,1\n"

    def test_table_includes_timestamp(self, result):
        text = emit(result, "table")
        assert text.startswith("== demo ==")
        assert "timestamp" in text

    def test_notes_only_in_table(self, result):
        result.notes.append("caveat")
        assert emit(result, "table").endswith("[说明]\n  caveat\n")
        assert "caveat" not in emit(result, "keyvalue")
        assert "caveat" not in emit(result, "csv")

    def test_unknown_format(self, result):
        with pytest.raises(ValueError):
            emit(result, "xml")

    def test_series_shape_checked(self):
        with pytest.raises(ValueError):
            Series(columns=["a", "b"], rows=[(1,)])
