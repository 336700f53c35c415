"""Export formats: float formatting, JSON/CSV writers, report assembly."""

import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from gridsense.report import (
    SCHEMAS,
    RunReport,
    dumps_json,
    format_float,
    versions,
    write_csv,
)


class TestFormatFloat:
    def test_specials(self):
        assert format_float(math.nan) == "NaN"
        assert format_float(math.inf) == "Infinity"
        assert format_float(-math.inf) == "-Infinity"

    def test_plain_values(self):
        assert format_float(0.5) == "0.5"
        assert format_float(1.0) == "1"

    @settings(max_examples=100, deadline=None)
    @given(st.floats(allow_nan=False, allow_infinity=False))
    def test_17g_round_trips_exactly(self, x):
        assert float(format_float(x)) == x


class TestDumpsJson:
    def test_nested_structure_parses_back(self):
        obj = {"a": [1, 2.5, "s"], "b": {"c": None, "d": True}, "e": []}
        parsed = json.loads(dumps_json(obj))
        assert parsed == obj

    def test_floats_keep_17_digits(self):
        x = 0.1 + 0.2  # 0.30000000000000004
        text = dumps_json({"x": x})
        assert "0.30000000000000004" in text
        assert json.loads(text)["x"] == x

    def test_scalar_and_flat_list_layout(self):
        assert dumps_json([1.0, 2.0]) == "[1, 2]"
        assert dumps_json("hi") == '"hi"'

    def test_unserializable_rejected(self):
        with pytest.raises(TypeError):
            dumps_json({"x": object()})


class TestWriteCsv:
    def test_header_and_cells(self, tmp_path):
        path = tmp_path / "out.csv"
        write_csv(path, "wigner", [(0.0, 0.5, 1.0 / 3.0)])
        lines = path.read_text().splitlines()
        assert lines[0] == "q,p,W"
        assert lines[1] == "0,0.5,0.33333333333333331"

    def test_none_becomes_empty_cell(self, tmp_path):
        path = tmp_path / "pd.csv"
        write_csv(path, "phase_diagram",
                  [(0.9, 0.01, None, None, 4.1e-4, None)])
        row = path.read_text().splitlines()[1]
        assert row == "0.90000000000000002,0.01,,,0.00040999999999999999,"

    def test_row_width_validated(self, tmp_path):
        with pytest.raises(ValueError):
            write_csv(tmp_path / "x.csv", "trace", [(1, 2.0)])

    def test_schema_registry_is_versioned(self):
        for name, (version, columns) in SCHEMAS.items():
            assert isinstance(version, int) and version >= 1
            assert len(columns) == len(set(columns))
            assert all(c == c.strip() and c for c in columns)

    def test_known_headers_pinned(self):
        # downstream plotting scripts key on these exact strings
        assert SCHEMAS["trace"][1] == ("step", "loss", "qfi", "p_err",
                                       "grad_norm", "lr")
        assert SCHEMAS["pareto"][1] == ("lambda", "qfi", "p_err")


class TestRunReport:
    def make(self, **metric_over):
        metrics = {"qfi": 10.0, "p_err": 1e-5}
        metrics.update(metric_over)
        return RunReport(config={"steps": 3}, lattice={"r": 1.092},
                         noise={"eta": 0.9, "gamma": 0.05}, metrics=metrics,
                         trace_file="trace.csv", seed=0)

    def test_as_dict_carries_schema_versions_and_versions(self):
        d = self.make().as_dict()
        assert d["schemas"] == {k: v for k, (v, _) in SCHEMAS.items()}
        assert set(d["versions"]) == {"gridsense", "numpy", "scipy",
                                      "python"}
        assert d["seed"] == 0

    def test_nonfinite_metric_rejected(self):
        with pytest.raises(ValueError):
            self.make(qfi=math.nan).as_dict()
        with pytest.raises(ValueError):
            self.make(p_err=math.inf).as_dict()

    def test_dumps_parses_as_json(self):
        text = self.make().dumps()
        assert text.endswith("\n")
        parsed = json.loads(text)
        assert parsed["metrics"]["qfi"] == 10.0

    def test_versions_reports_running_interpreter(self):
        import sys

        v = versions()
        assert v["python"] == "%d.%d.%d" % sys.version_info[:3]
