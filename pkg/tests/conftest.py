"""Shared fixtures: synthetic weather files and derived frames.

Everything is generated from the three bundled climate presets, so the
suite runs fully offline and deterministically.
"""

from __future__ import annotations

import dataclasses

import pytest

from clima import analytics, synthetic

PRESETS = ("tropical_humid", "cold_continental", "mediterranean")
YEAR = 2017


@pytest.fixture(scope="session")
def epw_texts() -> dict[str, str]:
    return {name: synthetic.synthetic_epw(name, YEAR) for name in PRESETS}


@pytest.fixture(scope="session")
def epw_files(epw_texts):
    from clima.epw import parse_epw

    return {name: parse_epw(text) for name, text in epw_texts.items()}


@pytest.fixture(scope="session")
def frames(epw_files):
    return {name: analytics.build_frame(f) for name, f in epw_files.items()}


@pytest.fixture(scope="session")
def med_file(epw_files):
    return epw_files["mediterranean"]


@pytest.fixture(scope="session")
def med_frame(frames):
    return frames["mediterranean"]


@pytest.fixture(scope="session")
def epw_dir(tmp_path_factory, epw_texts):
    """The three preset files written to disk, for CLI and service tests."""
    d = tmp_path_factory.mktemp("epw")
    for name, text in epw_texts.items():
        (d / f"{name}.epw").write_text(text, encoding="utf-8")
    return d


def with_constant_t_db(epw, value: float):
    """Copy of an EpwFile with every record's dry bulb pinned to ``value``."""
    records = tuple(dataclasses.replace(r, t_db=float(value), t_dp=None)
                    for r in epw.records)
    return dataclasses.replace(epw, records=records)


def rows_of(frame) -> list[dict]:
    """The frame as per-row dictionaries; the form the brute-force oracles eat."""
    return [frame.row(i) for i in range(frame.n_rows)]
