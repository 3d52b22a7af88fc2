import json
import math
from unittest.mock import patch

import numpy as np
import pandas as pd
import pytest

from se2wavelet import __version__
from se2wavelet.api.schemas import VerificationReport
from se2wavelet.main import main
from se2wavelet.routers.circle.circle_model import CircleFunction
from se2wavelet.routers.circle.circle_repository import CircleRepository
from se2wavelet.routers.circle.circle_service import circle_service
from se2wavelet.routers.plane.plane_repository import PlaneRepository
from se2wavelet.routers.verify.verify_model import SuiteResult
from se2wavelet.routers.verify.verify_router import table_paths
from se2wavelet.routers.wavelet.wavelet_repository import WaveletRepository
from se2wavelet.routers.wavelet.wavelet_service import wavelet_service
from se2wavelet.utils.binary_format import write_pgm

pytestmark = [pytest.mark.integration, pytest.mark.cli]


@pytest.fixture
def phi_file(tmp_path, random_circle):
    """A band-limited circle function saved as phi,re,im CSV"""
    phi = random_circle(256)
    path = str(tmp_path / "phi.csv")
    CircleRepository().save(path, phi)
    return path, phi


@pytest.fixture
def gaussian_file(tmp_path, small_gaussian_plane):
    path = str(tmp_path / "gauss.se2f")
    PlaneRepository().save(path, small_gaussian_plane)
    return path


def test_version(capsys):
    assert main(["--version"]) == 0
    assert __version__ in capsys.readouterr().out


def test_transform_with_minimal_wavelet(tmp_path, phi_file):
    path, phi = phi_file
    output = str(tmp_path / "field.se2f")
    code = main(["transform", "--omega", "2", "--phi", path, "--lambda", "0.5",
                 "--grid", "16x16x8", "--extent", "2", "-o", output])
    assert code == 0

    F = WaveletRepository().load(output)
    assert F.values.shape == (16, 16, 8)
    assert F.omega == 2.0
    assert wavelet_service.field_norm(F) == pytest.approx(circle_service.norm(phi), rel=1e-10)
    assert abs(F.values[8, 8, 0] - circle_service.inner_product(phi, F.u0)) < 1e-12


def test_transform_with_wavelet_file(tmp_path, phi_file):
    path, phi = phi_file
    wavelet = str(tmp_path / "u0.csv")
    CircleRepository().save(wavelet, CircleFunction.constant(1.0 / math.sqrt(2 * math.pi), 256))
    output = str(tmp_path / "field.se2f")
    assert main(["transform", "--omega", "1", "--phi", path, "--wavelet", wavelet,
                 "--grid", "16x16x8", "--extent", "2", "-o", output]) == 0
    assert np.allclose(WaveletRepository().load(output).u0.values, 1.0 / math.sqrt(2 * math.pi))


def test_transform_rejects_unnormalized_wavelet(tmp_path, phi_file, capsys):
    path, _ = phi_file
    wavelet = str(tmp_path / "u0.csv")
    CircleRepository().save(wavelet, CircleFunction.constant(1.0, 256))
    code = main(["transform", "--omega", "1", "--phi", path, "--wavelet", wavelet,
                 "--grid", "16x16x8", "-o", str(tmp_path / "f.se2f")])
    assert code == 2
    assert "unit norm" in capsys.readouterr().err


def test_usage_errors(tmp_path, phi_file):
    path, _ = phi_file
    output = str(tmp_path / "f.se2f")
    assert main(["transform", "--phi", path, "--lambda", "0.5", "-o", output]) == 2
    assert main(["transform", "--omega", "-1", "--phi", path, "--lambda", "0.5", "-o", output]) == 2
    assert main(["transform", "--omega", "1", "--phi", path, "--lambda", "0.5", "--wavelet", path, "-o", output]) == 2
    assert main(["transform", "--omega", "1", "--phi", path, "--lambda", "0.5", "--grid", "16x8x8", "-o", output]) == 2
    assert main(["transform", "--omega", "1", "--phi", str(tmp_path / "nope.csv"), "--lambda", "0.5",
                 "-o", output]) == 2
    assert main(["verify", "nonexistent"]) == 2
    assert main([]) == 2


def test_parameter_caps(tmp_path, phi_file):
    path, _ = phi_file
    output = str(tmp_path / "f.se2f")
    assert main(["transform", "--omega", "1", "--phi", path, "--lambda", "0.5",
                 "--grid", "4096x4096x2048", "-o", output]) == 3
    assert main(["transform", "--omega", "2", "--phi", path, "--lambda", "20",
                 "--grid", "16x16x8", "-o", output]) == 3


def test_project_gaussian(tmp_path, gaussian_file):
    ring_path = str(tmp_path / "ring.csv")
    render_path = str(tmp_path / "p.se2f")
    code = main(["project", "--omega", "1", "--input", gaussian_file, "--samples", "256",
                 "-o", ring_path, "--render", render_path])
    assert code == 0

    ring = CircleRepository().load(ring_path)
    assert ring.n_samples == 256
    assert np.max(np.abs(ring.values - 0.60653066)) < 1e-8
    rendered = PlaneRepository().load(render_path)
    assert rendered.values[32, 32].real == pytest.approx(0.60653066, abs=1e-8)


def test_project_writes_csv_to_stdout(gaussian_file, capsys):
    assert main(["project", "--omega", "1", "--input", gaussian_file, "--samples", "16"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "phi,re,im"
    assert len(lines) == 17


@pytest.mark.slow
def test_reconstruct_gaussian(tmp_path, gaussian_plane, capsys):
    path = str(tmp_path / "gauss.se2f")
    PlaneRepository().save(path, gaussian_plane)
    output = str(tmp_path / "recon.se2f")
    assert main(["reconstruct", "--input", path, "--omega-max", "8", "--nodes", "48", "-o", output]) == 0

    record = json.loads(capsys.readouterr().out)
    assert record["nodes"] == 48
    assert record["relative_l2_error"] <= 1e-6
    assert PlaneRepository().load(output).m == 128


def test_lift_zero_image(tmp_path):
    image = str(tmp_path / "black.pgm")
    write_pgm(image, np.zeros((16, 16)))
    output = str(tmp_path / "lifted.se2f")
    assert main(["lift", "--omega", "1", "--input", image, "--lambda", "1", "-o", output]) == 0

    F = WaveletRepository().load(output)
    assert F.grid.m == 16 and F.grid.n_theta == 32
    assert np.max(np.abs(F.values)) == 0.0


def test_lift_image(tmp_path):
    pixels = np.zeros((20, 20))
    pixels[8:12, 8:12] = 1.0
    image = str(tmp_path / "square.pgm")
    write_pgm(image, pixels)
    output = str(tmp_path / "lifted.se2f")
    assert main(["lift", "--omega", "1.5", "--input", image, "--grid", "32x32x16", "--extent", "4",
                 "--samples", "128", "-o", output]) == 0

    F = WaveletRepository().load(output)
    assert F.grid.extent == 4.0
    assert F.phi.n_samples == 128
    assert wavelet_service.field_norm(F) == pytest.approx(circle_service.norm(F.phi), rel=1e-10)


def test_verify_report(tmp_path):
    report = str(tmp_path / "out" / "parseval.json")
    assert main(["verify", "parseval", "--report", report]) == 0
    with open(report, encoding="utf-8") as f:
        records = json.load(f)
    assert [r["check_name"] for r in records] == ["parseval"] * 3
    assert all(r["passed"] for r in records)
    assert all(r["runtime_ms"] == 0 for r in records)


def test_verify_is_byte_identical(capsys):
    assert main(["verify", "weak", "--seed", "3"]) == 0
    first = capsys.readouterr().out
    assert main(["verify", "weak", "--seed", "3"]) == 0
    second = capsys.readouterr().out
    assert first == second
    assert json.loads(first)[0]["parameters"]["seed"] == 3


def test_verify_failure_exit_code(capsys):
    failing = SuiteResult(reports=[VerificationReport.bound("parseval", 1.0, 1e-10, {})])
    with patch("se2wavelet.routers.verify.verify_router.verify_service.run", return_value=failing):
        assert main(["verify", "parseval"]) == 1
    assert json.loads(capsys.readouterr().out)[0]["passed"] is False


def test_verify_writes_tables(tmp_path):
    result = SuiteResult(tables={"cr": pd.DataFrame({"h": [0.2, 0.1], "residual": [1e-2, 2.5e-3],
                                                      "ratio": [np.nan, 4.0]})})
    report = str(tmp_path / "cr.json")
    with patch("se2wavelet.routers.verify.verify_router.verify_service.run", return_value=result):
        assert main(["verify", "cr", "--report", report]) == 0
    table = pd.read_csv(tmp_path / "cr_cr.csv")
    assert list(table.columns) == ["h", "residual", "ratio"]
    assert table["ratio"].iloc[1] == 4.0


def test_table_paths():
    result = SuiteResult(tables={"cr": pd.DataFrame(), "bargmann": pd.DataFrame()})
    assert table_paths(result) == {}
    assert table_paths(result, "runs/all.json") == {"bargmann": "runs/all_bargmann.csv", "cr": "runs/all_cr.csv"}
    assert table_paths(result, None, "tables") == {"bargmann": "tables/verify_bargmann.csv", "cr": "tables/verify_cr.csv"}
