"""The clima command line, driven in process through main(argv)."""

import json

import pytest
from fastapi.testclient import TestClient

from clima import analytics, cli, epw, render, service
from clima.params import chart_request_from_params


@pytest.fixture(scope="module")
def med_path(tmp_path_factory, epw_texts):
    path = tmp_path_factory.mktemp("cli") / "med.epw"
    path.write_text(epw_texts["mediterranean"], encoding="utf-8")
    return path


@pytest.fixture(scope="module")
def med_frame_local(epw_texts):
    return analytics.build_frame(epw.parse_epw(epw_texts["mediterranean"]))


def test_summarize_json_matches_library(med_path, med_frame_local, capsys):
    code = cli.main(["summarize", str(med_path), "--json"])
    assert code == 0
    out = capsys.readouterr()
    assert json.loads(out.out) == analytics.summary_json(med_frame_local)
    assert out.err == ""


def test_summarize_human_readable(med_path, capsys):
    assert cli.main(["summarize", str(med_path)]) == 0
    out = capsys.readouterr().out
    assert "Cape Westerly" in out
    assert "Koppen-Geiger class: Cs" in out
    assert "hottest month: September" in out


def test_export_frame(med_path, med_frame_local, tmp_path, capsys):
    out_csv = tmp_path / "frame.csv"
    assert cli.main(["export", str(med_path), "--frame", str(out_csv)]) == 0
    assert out_csv.read_text(encoding="utf-8") == \
        analytics.export_frame_csv(med_frame_local)
    assert "wrote" in capsys.readouterr().err


def test_chart_byte_parity_with_render(med_path, med_frame_local, tmp_path, capsys):
    out_svg = tmp_path / "chart.svg"
    code = cli.main([
        "chart", str(med_path), "--kind", "explorer_scatter",
        "--var", "t_db", "--y", "rh", "--color", "ghi",
        "--months", "11-2", "--hours", "8-18",
        "--filter-column", "wind_speed", "--filter-min", "0.5",
        "--filter-max", "20", "-o", str(out_svg),
    ])
    assert code == 0
    request = chart_request_from_params("explorer_scatter", {
        "variable": "t_db", "y": "rh", "color": "ghi",
        "months": "11-2", "hours": "8-18",
        "filter_column": "wind_speed", "filter_min": "0.5",
        "filter_max": "20.0",
    })
    expected = render.render(med_frame_local, request)
    assert out_svg.read_text(encoding="utf-8") == expected.text
    assert expected.request_hash in capsys.readouterr().err


def test_chart_matches_service_bytes(med_path, epw_texts, tmp_path, capsys):
    """Same parameters through the CLI and the HTTP API give the same SVG."""
    out_svg = tmp_path / "wind.svg"
    code = cli.main(["chart", str(med_path), "--kind", "wind_rose",
                     "--months", "6-8", "--width", "640", "--height", "640",
                     "-o", str(out_svg)])
    assert code == 0
    capsys.readouterr()

    app = service.create_app(cache_dir=tmp_path / "cache")
    client = TestClient(app)
    sid = client.post(
        "/api/sessions",
        content=epw_texts["mediterranean"].encode()).json()["session_id"]
    resp = client.get(f"/api/sessions/{sid}/charts/wind_rose.svg",
                      params={"months": "6-8", "width": 640, "height": 640})
    assert resp.content == out_svg.read_text(encoding="utf-8").encode("utf-8")


def test_missing_file_is_input_error(tmp_path, capsys):
    code = cli.main(["summarize", str(tmp_path / "absent.epw")])
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_unparseable_file_is_input_error(tmp_path, capsys):
    bad = tmp_path / "bad.epw"
    bad.write_text("this is not weather data", encoding="utf-8")
    assert cli.main(["summarize", str(bad)]) == 2
    assert "error:" in capsys.readouterr().err


def test_bad_chart_params_are_input_errors(med_path, tmp_path, capsys):
    out = str(tmp_path / "x.svg")
    # wind_rose takes no variable
    assert cli.main(["chart", str(med_path), "--kind", "wind_rose",
                     "--var", "t_db", "-o", out]) == 2
    # heatmap needs one
    assert cli.main(["chart", str(med_path), "--kind", "heatmap",
                     "-o", out]) == 2
    # malformed span
    assert cli.main(["chart", str(med_path), "--kind", "heatmap",
                     "--var", "t_db", "--months", "1-44", "-o", out]) == 2
    capsys.readouterr()


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.startswith("clima ")


def test_stdout_reserved_for_payload(med_path, tmp_path, capsys):
    # chart and export write progress to stderr only
    out_svg = tmp_path / "h.svg"
    cli.main(["chart", str(med_path), "--kind", "heatmap", "--var", "t_db",
              "-o", str(out_svg)])
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err != ""
