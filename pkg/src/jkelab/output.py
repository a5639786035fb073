"""File emission: plot-ready CSV for grids and traces, JSON for scalar
reports. Serialization is canonical (sorted keys, repr-roundtrip floats)
so identical inputs always produce byte-identical files."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .secrecy import RateSweepGrid, ThresholdSweepGrid
from .session import SimTrace


def dump_json_str(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def write_json(path, payload) -> Path:
    path = Path(path)
    path.write_text(dump_json_str(payload), encoding="utf-8")
    return path


def _fmt(value) -> str:
    # repr round-trips float64 exactly and is stable across runs
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_rate_grid_csv(grid: RateSweepGrid, path) -> Path:
    """One row per cell, legitimate-SNR index outer."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["bob_snr_db", "eve_snr_db", "rate_bits_per_s",
                         "bob_term_bits", "eve_term_bits", "delta_b",
                         "delta_e", "positive"])
        for i, sb in enumerate(grid.bob_snr_db):
            for j, se in enumerate(grid.eve_snr_db):
                cell = grid.cells[i][j]
                writer.writerow([_fmt(sb), _fmt(se),
                                 _fmt(cell.rate_bits_per_s),
                                 _fmt(cell.bob_term_bits),
                                 _fmt(cell.eve_term_bits),
                                 _fmt(cell.delta_b), _fmt(cell.delta_e),
                                 str(cell.positive).lower()])
    return path


def write_rate_contour_csv(grid: RateSweepGrid, path) -> Path:
    """The zero-rate crossing per eavesdropper-SNR column (empty cell when
    the rate never turns positive on the grid)."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["eve_snr_db", "bob_snr_db_zero_crossing"])
        for se, crossing in zip(grid.eve_snr_db, grid.zero_crossing_bob_snr_db):
            writer.writerow([_fmt(se), "" if crossing is None else _fmt(crossing)])
    return path


def write_threshold_grid_csv(grid: ThresholdSweepGrid, path) -> Path:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["jamming_bits_per_symbol", "eve_jitter_s", "kind",
                         "min_bob_snr_db"])
        for i, w in enumerate(grid.jamming_bits):
            for j, jitter in enumerate(grid.eve_jitter_s):
                cell = grid.cells[i][j]
                writer.writerow([str(w), _fmt(jitter), cell.kind.value,
                                 "" if cell.snr_db is None else _fmt(cell.snr_db)])
    return path


def rate_grid_to_dict(grid: RateSweepGrid) -> dict:
    return {
        "bob_snr_db": list(grid.bob_snr_db),
        "eve_snr_db": list(grid.eve_snr_db),
        "cells": [[cell.to_dict() for cell in row] for row in grid.cells],
        "zero_crossing_bob_snr_db": list(grid.zero_crossing_bob_snr_db),
    }


def threshold_grid_to_dict(grid: ThresholdSweepGrid) -> dict:
    return {
        "jamming_bits": list(grid.jamming_bits),
        "eve_jitter_s": list(grid.eve_jitter_s),
        "cells": [[cell.to_dict() for cell in row] for row in grid.cells],
    }


_TRACE_COLUMNS = ("clean_signal", "jamming", "bob_noise", "eve_noise",
                  "bob_rx", "eve_rx", "bob_post", "eve_stored", "eve_post")


def write_trace_csv(trace: SimTrace, path) -> Path:
    """Columnar per-symbol dump of a session."""
    path = Path(path)
    columns = [getattr(trace, name) for name in _TRACE_COLUMNS]
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(("index",) + _TRACE_COLUMNS)
        for idx in range(len(trace)):
            writer.writerow([str(idx)] + [_fmt(float(col[idx])) for col in columns])
    return path


def read_trace_csv(path) -> dict:
    """Trace columns back as float64 arrays keyed by column name."""
    path = Path(path)
    with path.open("r", newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = list(reader)
    out = {}
    for k, name in enumerate(header):
        if name == "index":
            continue
        out[name] = np.array([float(row[k]) for row in rows])
    return out
