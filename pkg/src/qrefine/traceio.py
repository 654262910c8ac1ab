"""Trace CSV serialization.

Columns: ordinal, level, recenter_index, bits (0/1 string in qubit
layout order), qubo_energy, target_energy, residual_norm_sq,
error_vs_truth (empty when no truth was supplied), then one exact
decimal column per center component. Centers are dyadic, so their
decimal expansions are finite and the file is lossless.
"""

from __future__ import annotations

import csv
import io
from typing import Optional, TextIO

from .refine import IterationRecord, RefinementTrace


def header(n_components: int) -> list[str]:
    return [
        "ordinal",
        "level",
        "recenter_index",
        "bits",
        "qubo_energy",
        "target_energy",
        "residual_norm_sq",
        "error_vs_truth",
    ] + [f"c{i}" for i in range(n_components)]


def format_record(record: IterationRecord) -> list[str]:
    return [
        str(record.ordinal),
        str(record.level),
        str(record.recenter_index),
        "".join(str(b) for b in record.bits),
        repr(record.qubo_energy),
        repr(record.target_energy),
        repr(record.residual_norm_sq),
        "" if record.error_vs_truth is None else repr(record.error_vs_truth),
        *record.center_after.to_decimal_strings(),
    ]


class TraceWriter:
    """Streams rows as the refinement produces them (observer-compatible)."""

    def __init__(self, stream: TextIO):
        self._writer = csv.writer(stream, lineterminator="\n")
        self._wrote_header = False

    def __call__(self, record: IterationRecord) -> None:
        if not self._wrote_header:
            self._writer.writerow(header(len(record.center_after)))
            self._wrote_header = True
        self._writer.writerow(format_record(record))


def trace_to_csv(trace: RefinementTrace) -> str:
    out = io.StringIO()
    writer = TraceWriter(out)
    for record in trace.records:
        writer(record)
    return out.getvalue()


def write_trace(trace: RefinementTrace, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(trace_to_csv(trace))


def read_trace_rows(path: str) -> tuple[list[str], list[list[str]]]:
    """Raw header and rows, for consumers that re-parse numerics themselves."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        return [], []
    return rows[0], rows[1:]
