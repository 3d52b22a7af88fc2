import os
import logging
from typing import List, Optional

import numpy as np
import pandas as pd

from se2wavelet.exceptions import FormatError

logger: logging.Logger = logging.getLogger("circle")

CIRCLE_COLUMNS: List[str] = ["phi", "re", "im"]
FLOAT_FORMAT = "%.17g"


def validate_csv_headers(columns: List[str], expected_headers: List[str]) -> bool:
    """True when every expected column name appears in the header, ignoring surrounding spaces"""
    headers = [str(h).strip() for h in columns]
    return all(header in headers for header in expected_headers)


def circle_frame(values: np.ndarray) -> pd.DataFrame:
    n = values.shape[0]
    return pd.DataFrame({
        "phi": 2.0 * np.pi * np.arange(n) / n,
        "re": np.real(values),
        "im": np.imag(values),
    })


def circle_csv_text(values: np.ndarray) -> str:
    return circle_frame(values).to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def write_circle_csv(output_path: str, values: np.ndarray) -> None:
    """
    Write circle samples as rows phi,re,im with phi = 2*pi*j/n at 17 significant digits.
    """
    n = values.shape[0]
    output_dir = os.path.dirname(output_path)
    if output_dir:
        os.makedirs(output_dir, exist_ok=True)
    with open(output_path, "w", encoding="utf-8") as f:
        f.write(circle_csv_text(values))
    logger.debug(f"Wrote {n} circle samples to {output_path}")


def read_circle_csv(input_path: str, phi_tolerance: float = 1e-9) -> np.ndarray:
    """
    Read circle samples written by write_circle_csv.

    Raises:
        FormatError: missing file, missing columns, non-numeric cells or a non-uniform phi column
    """
    if not os.path.exists(input_path):
        raise FormatError(f"Input file not found: {input_path}")
    try:
        df: pd.DataFrame = pd.read_csv(input_path, skipinitialspace=True, float_precision="round_trip")
    except Exception as e:
        raise FormatError(f"Failed to read CSV file {input_path}: {str(e)}")

    if not validate_csv_headers(list(df.columns), CIRCLE_COLUMNS):
        raise FormatError(f"{input_path}: expected columns {','.join(CIRCLE_COLUMNS)}, got {','.join(map(str, df.columns))}")
    df.columns = [str(c).strip() for c in df.columns]

    try:
        data = df[CIRCLE_COLUMNS].to_numpy(dtype=float)
    except (TypeError, ValueError) as e:
        raise FormatError(f"{input_path}: non-numeric sample: {str(e)}")

    n = data.shape[0]
    expected_phi = 2.0 * np.pi * np.arange(n) / n
    if n == 0 or not np.allclose(data[:, 0], expected_phi, rtol=0.0, atol=phi_tolerance):
        raise FormatError(f"{input_path}: phi column is not the uniform grid 2*pi*j/{n}")

    logger.debug(f"Read {n} circle samples from {input_path}")
    return data[:, 1] + 1j * data[:, 2]


def write_table_csv(output_path: Optional[str], df: pd.DataFrame) -> str:
    """Render a numeric table as CSV; written to output_path when given"""
    text = df.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    if output_path:
        with open(output_path, "w", encoding="utf-8") as f:
            f.write(text)
    return text
