import numpy as np
import pandas as pd
import pytest

from se2wavelet.exceptions import FormatError
from se2wavelet.utils.csv_processor import (circle_csv_text, circle_frame, read_circle_csv, validate_csv_headers,
                                            write_circle_csv, write_table_csv)

pytestmark = pytest.mark.unit


def test_csv_validation():
    """Test CSV header validation."""
    assert validate_csv_headers(["phi", "re", "im"], ["phi", "re", "im"]) is True
    assert validate_csv_headers([" phi", "re ", "im", "extra"], ["phi", "re", "im"]) is True
    assert validate_csv_headers(["phi", "re"], ["phi", "re", "im"]) is False


def test_circle_frame_layout():
    """Columns are phi, re, im with phi on the uniform grid."""
    frame = circle_frame(np.array([1.0, 1j, -1.0, -1j]))
    assert list(frame.columns) == ["phi", "re", "im"]
    assert frame["phi"].iloc[2] == pytest.approx(np.pi)
    assert frame["im"].iloc[1] == 1.0


def test_circle_csv_text_uses_full_precision():
    text = circle_csv_text(np.full(8, 1.0 / 3.0))
    assert text.splitlines()[1] == "0,0.33333333333333331,0"
    assert text.endswith("\n")


def test_write_creates_directories(tmp_path):
    """Missing parent directories are created on write."""
    output_path = tmp_path / "nested" / "dir" / "u.csv"
    write_circle_csv(str(output_path), np.ones(8, dtype=complex))
    assert output_path.exists()
    assert np.array_equal(read_circle_csv(str(output_path)), np.ones(8, dtype=complex))


def test_read_rejects_non_uniform_phi(tmp_path):
    path = tmp_path / "shifted.csv"
    frame = circle_frame(np.ones(8, dtype=complex))
    frame["phi"] += 0.01
    frame.to_csv(path, index=False)
    with pytest.raises(FormatError):
        read_circle_csv(str(path))


def test_read_rejects_non_numeric_cells(tmp_path):
    path = tmp_path / "text.csv"
    path.write_text("phi,re,im\n0,a,0\n")
    with pytest.raises(FormatError):
        read_circle_csv(str(path))


def test_read_rejects_empty_files(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("phi,re,im\n")
    with pytest.raises(FormatError):
        read_circle_csv(str(path))


def test_write_table_csv(tmp_path):
    """Tables render as CSV text and are written only when a path is given."""
    table = pd.DataFrame({"h": [0.2, 0.1], "residual": [1e-3, 2.5e-4], "ratio": [np.nan, 4.0]})
    text = write_table_csv(None, table)
    assert text.splitlines() == ["h,residual,ratio", "0.20000000000000001,0.001,", "0.10000000000000001,0.00025000000000000001,4"]

    path = tmp_path / "cr.csv"
    assert write_table_csv(str(path), table) == text
    assert path.read_text() == text
