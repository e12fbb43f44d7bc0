# tests/test_reference.py
import json
from fractions import Fraction

import mpmath
import pandas as pd
import pytest

from config import Settings
from src.gpfsums.errors import CheckpointError, ConfigurationError
from src.gpfsums.loaders import ReportWriter, render_structured
from src.gpfsums.precision import DD
from src.gpfsums.reference import ReferenceCatalog, last_digit_unit, to_fraction
from src.gpfsums.utils import RunConfig, validate_run_config


@pytest.fixture(scope="module")
def catalog():
    return ReferenceCatalog()


def test_last_digit_unit():
    assert last_digit_unit("4.816507") == Fraction(1, 10 ** 6)
    assert last_digit_unit("2.2505789") == Fraction(1, 10 ** 7)
    assert last_digit_unit("12") == 1


def test_to_fraction_is_exact():
    assert to_fraction(DD(0.5, 2.0 ** -60)) == Fraction(1, 2) + Fraction(1, 2 ** 60)
    with mpmath.workprec(100):
        assert to_fraction(mpmath.mpf(3) / 4) == Fraction(3, 4)
    assert to_fraction("0.1") == Fraction(1, 10)
    assert to_fraction(7) == 7


def test_compare_uses_one_unit_of_the_last_digit(catalog):
    assert catalog.compare("4.816507", "4.8165079").passed
    assert catalog.compare("4.816507", "4.816508").passed
    assert not catalog.compare("4.816507", "4.8165081").passed
    assert catalog.compare("1.5", "1.5003", tolerance="1e-3").passed
    comparison = catalog.compare("2.5", DD.of("2.25"), label="half", digits=5)
    assert comparison.computed == "2.2500"
    assert comparison.to_dict()["passed"] is False


def test_catalog_lookups(catalog):
    assert [row["n"] for row in catalog.partial_sum_rows("sa")] == [100, 1000, 10 ** 4, 10 ** 5, 10 ** 6]
    assert catalog.partial_sum_rows("sa", include_slow=True)[-1]["n"] == 10 ** 7
    assert catalog.partial_sum_row("sa", 12345) is None
    assert catalog.prime_zeta_row(2, 7) is None
    assert catalog.prime_zeta_rows(0) == []
    assert catalog.limit("Sb")["x"] == 86028161
    assert catalog.limit("Sa")["x"] == 2576983867
    assert set(catalog.asymptote()) == {"a", "b", "c"}


def test_missing_or_foreign_catalogs(tmp_path):
    with pytest.raises(FileNotFoundError):
        ReferenceCatalog(tmp_path)
    (tmp_path / "published_values.json").write_text(json.dumps({"schema_version": 2}))
    with pytest.raises(ConfigurationError):
        ReferenceCatalog(tmp_path)


def test_report_writer(tmp_path):
    writer = ReportWriter(tmp_path / "out")
    document = {"schema_version": 1, "command": "pz", "result": {"b": 1, "a": [1.5, None]}, "elapsed_ms": 3}
    path = writer.write_report(document, "pz")
    assert path.read_text() == render_structured(document)
    assert writer.check_exists("pz")
    assert not writer.check_exists("oracle")


def test_series_writer(tmp_path):
    writer = ReportWriter(tmp_path)
    frame = pd.DataFrame({"n": [10, 100], "sa": [2.9, 4.8]})
    path = writer.write_series(frame, "series")
    assert pd.read_parquet(path).equals(frame)
    metadata = json.loads((tmp_path / "series" / "metadata.json").read_text())
    assert metadata["record_count"] == 2
    assert metadata["columns"] == ["n", "sa"]
    assert writer.check_exists("series")
    assert writer.write_series(frame.iloc[0:0], "empty") is None


def test_report_writer_refuses_unwritable_directories(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    with pytest.raises(CheckpointError):
        ReportWriter(blocker).write_report({}, "report")


def test_run_config_collects_every_problem():
    with pytest.raises(ConfigurationError) as info:
        validate_run_config(RunConfig(command="sb", threads=0, segment_size=3, digits=0))
    message = str(info.value)
    for fragment in ("--threads", "--segment-size", "--digits", "--x"):
        assert fragment in message
    config = RunConfig(command="oracle", n=10)
    assert validate_run_config(config) is config


def test_settings_validate(monkeypatch):
    assert Settings.validate()
    monkeypatch.setattr(Settings, "THREADS", 0)
    monkeypatch.setattr(Settings, "SEGMENT_SIZE", 1000)
    with pytest.raises(ValueError) as info:
        Settings.validate()
    assert "GPFSUMS_THREADS" in str(info.value)
    assert "SEGMENT_SIZE" in str(info.value)
