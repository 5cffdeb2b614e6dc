"""Statistics and rendering for summaries and directory simulations.

Tables carry one row per registry plus a Final row (or Distributed / Single /
Decrease rows when both modes run) and one column group per granularity.
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from ip_summarizer.constants import (
    FINAL_ROW_NAME,
    FORMAT_CSV,
    FORMAT_JSON,
    FORMAT_TABLE,
    MODE_BOTH,
    NOT_A_VALUE,
    OUTPUT_FORMATS,
    RATE_DECIMALS,
)
from ip_summarizer.directory import MergedSummary, ModeComparison
from ip_summarizer.heuristic import SummaryConfig, SummaryResult
from ip_summarizer.ipcore import Prefix, format_prefix


class RenderError(ValueError):
    """Raised for an unknown output format or an unrenderable subject."""


# ── Metrics ────────────────────────────────────────────────────────────

def compression_rate(original: int, summarized: int) -> float | None:
    """summarized / original; None when there is nothing to compress."""
    if original == 0:
        return None
    return summarized / original


def claimed_addresses(prefixes: Iterable[Prefix]) -> int:
    """Total address span advertised; overlapping prefixes count twice."""
    return sum(p.size for p in prefixes)


def precision(original_size: int, prefixes: Iterable[Prefix]) -> float | None:
    """Share of the advertised span actually held by original addresses."""
    claimed = claimed_addresses(prefixes)
    if original_size == 0 or claimed == 0:
        return None
    return original_size / claimed


@dataclass(frozen=True)
class SummaryStats:
    """One row of a report.

    ``distinct_original`` and ``duplicate_prefixes`` are only set for
    merged rows. ``per_granularity`` holds a full sweep of the same input
    when one was run.
    """

    registry: str
    config: SummaryConfig
    original_size: int
    prefixes: tuple[Prefix, ...]
    distinct_original: int | None = None
    duplicate_prefixes: tuple[Prefix, ...] = ()
    per_granularity: tuple[SummaryStats, ...] = ()

    @classmethod
    def from_result(cls, name: str, result: SummaryResult) -> SummaryStats:
        return cls(registry=name, config=result.config,
                   original_size=result.original_size, prefixes=result.prefixes)

    @classmethod
    def from_merged(cls, merged: MergedSummary,
                    name: str = FINAL_ROW_NAME) -> SummaryStats:
        return cls(registry=name, config=merged.config,
                   original_size=merged.total_original,
                   prefixes=merged.merged_prefixes,
                   distinct_original=merged.distinct_original,
                   duplicate_prefixes=merged.duplicate_prefixes)

    @classmethod
    def from_sweep(cls, name: str, results: Sequence[SummaryResult],
                   config: SummaryConfig) -> SummaryStats:
        """Stats for ``config`` carrying one row per swept granularity."""
        swept = tuple(cls.from_result(name, r) for r in results)
        primary = next(s for s in swept
                       if s.config.granularity == config.granularity)
        return cls(registry=name, config=primary.config,
                   original_size=primary.original_size,
                   prefixes=primary.prefixes, per_granularity=swept)

    @property
    def summarized_size(self) -> int:
        return len(self.prefixes)

    @property
    def compression_rate(self) -> float | None:
        return compression_rate(self.original_size, self.summarized_size)

    @property
    def claimed_addresses(self) -> int:
        return claimed_addresses(self.prefixes)

    @property
    def precision(self) -> float | None:
        return precision(self.original_size, self.prefixes)

    def to_dict(self) -> dict:
        data = {
            "registry": self.registry,
            "original_size": self.original_size,
            "granularity": self.config.granularity,
            "min_subnet_mask": self.config.min_subnet_mask,
            "distance_threshold": self.config.distance_threshold,
            "density_threshold": self.config.density_threshold,
            "summarized_size": self.summarized_size,
            "compression_rate": self.compression_rate,
            "claimed_addresses": self.claimed_addresses,
            "precision": self.precision,
            "prefixes": [format_prefix(p) for p in self.prefixes],
        }
        if self.distinct_original is not None:
            data["distinct_original_size"] = self.distinct_original
            data["duplicate_prefixes"] = [format_prefix(p)
                                          for p in self.duplicate_prefixes]
        if self.per_granularity:
            data["per_granularity"] = [s.to_dict() for s in self.per_granularity]
        return data


# ── Report model ───────────────────────────────────────────────────────

@dataclass
class _Row:
    name: str
    original_size: int | None
    cells: list[SummaryStats | None]
    decreases: list[float | None] | None = None


@dataclass
class _Report:
    mode: str
    configs: list[SummaryConfig]
    rows: list[_Row]
    json_body: dict
    duplicates: tuple[Prefix, ...] = ()
    prefixes: tuple[Prefix, ...] = ()


def _runs_of(subject) -> list:
    if isinstance(subject, (MergedSummary, ModeComparison)):
        return [subject]
    runs = list(subject)
    if not runs or not all(isinstance(r, type(runs[0])) for r in runs) \
            or not isinstance(runs[0], (MergedSummary, ModeComparison)):
        raise RenderError(f"Cannot render {type(subject).__name__}")
    return runs


def _stats_report(stats: SummaryStats) -> _Report:
    columns = list(stats.per_granularity) or [stats]
    return _Report(
        mode="summary",
        configs=[s.config for s in columns],
        rows=[_Row(stats.registry, stats.original_size, columns)],
        json_body=stats.to_dict(),
        prefixes=stats.prefixes,
    )


def _merged_report(runs: list[MergedSummary]) -> _Report:
    names = [name for name, _ in runs[0].per_registry]
    rows = []
    for index, name in enumerate(names):
        cells = [SummaryStats.from_result(name, run.per_registry[index][1])
                 for run in runs]
        rows.append(_Row(name, cells[0].original_size, cells))
    finals = [SummaryStats.from_merged(run) for run in runs]
    rows.append(_Row(FINAL_ROW_NAME, runs[0].total_original, finals))
    body = {
        "mode": runs[0].mode,
        "runs": [
            {
                "granularity": run.config.granularity,
                "min_subnet_mask": run.config.min_subnet_mask,
                "registries": [SummaryStats.from_result(n, r).to_dict()
                               for n, r in run.per_registry],
                "final": final.to_dict(),
            }
            for run, final in zip(runs, finals)
        ],
    }
    duplicates = tuple(sorted({p for run in runs for p in run.duplicate_prefixes}))
    return _Report(runs[0].mode, [run.config for run in runs], rows, body,
                   duplicates=duplicates)


def _comparison_report(runs: list[ModeComparison]) -> _Report:
    distributed = [SummaryStats.from_merged(c.distributed, "Distributed")
                   for c in runs]
    single = [SummaryStats.from_merged(c.single, "Single") for c in runs]
    rows = [
        _Row("Distributed", runs[0].distributed.total_original, distributed),
        _Row("Single", runs[0].single.total_original, single),
        _Row("Decrease", None, [None] * len(runs),
             decreases=[c.decrease for c in runs]),
    ]
    body = {
        "mode": MODE_BOTH,
        "runs": [
            {
                "granularity": c.config.granularity,
                "min_subnet_mask": c.config.min_subnet_mask,
                "distributed": d.to_dict(),
                "single": s.to_dict(),
                "decrease": c.decrease,
            }
            for c, d, s in zip(runs, distributed, single)
        ],
    }
    duplicates = tuple(sorted({p for c in runs
                               for p in c.distributed.duplicate_prefixes}))
    return _Report(MODE_BOTH, [c.config for c in runs], rows, body,
                   duplicates=duplicates)


def _build_report(subject) -> _Report:
    if isinstance(subject, SummaryStats):
        return _stats_report(subject)
    runs = _runs_of(subject)
    if isinstance(runs[0], MergedSummary):
        return _merged_report(runs)
    return _comparison_report(runs)


# ── Formatting ─────────────────────────────────────────────────────────

def format_rate(value: float | None) -> str:
    if value is None:
        return NOT_A_VALUE
    return f"{value:.{RATE_DECIMALS}f}"


def format_percent(value: float | None) -> str:
    if value is None:
        return NOT_A_VALUE
    return f"{value * 100:.2f}%"


def _group_label(config: SummaryConfig) -> str:
    if config.has_overrides:
        return (f"d{config.distance_threshold}/"
                f"{config.density_threshold:g}")
    return f"g{config.granularity}"


def _render_table(report: _Report) -> str:
    header = ["registry", "original"]
    for config in report.configs:
        label = _group_label(config)
        header += [f"{label} size", f"{label} rate*",
                   f"{label} claimed**", f"{label} precision**"]
    body = []
    for row in report.rows:
        line = [row.name,
                "" if row.original_size is None else str(row.original_size)]
        for index, cell in enumerate(row.cells):
            if row.decreases is not None:
                line += [format_percent(row.decreases[index]), "", "", ""]
            else:
                line += [str(cell.summarized_size),
                         format_rate(cell.compression_rate),
                         str(cell.claimed_addresses),
                         format_rate(cell.precision)]
        body.append(line)

    widths = [max(len(r[i]) for r in [header] + body)
              for i in range(len(header))]

    def fmt(cells: list[str]) -> str:
        first = cells[0].ljust(widths[0])
        rest = [c.rjust(w) for c, w in zip(cells[1:], widths[1:])]
        return "  ".join([first] + rest).rstrip()

    lines = [format_prefix(p) for p in report.prefixes]
    if lines:
        lines.append("")
    lines.append(fmt(header))
    lines.append("  ".join("-" * w for w in widths))
    lines += [fmt(r) for r in body]
    lines.append("")
    lines.append("* rate = summarized / original (lower is more compressed); "
                 f"Minimum Subnet Mask = {report.configs[0].min_subnet_mask}")
    lines.append("** claimed = advertised address span; precision = original "
                 "/ claimed (extension metrics)")
    if report.mode == MODE_BOTH:
        lines.append("*** Decrease = 1 - (single / distributed final size)")
    if report.duplicates:
        lines.append(f"! {len(report.duplicates)} duplicate prefix(es) merged: "
                     + ", ".join(format_prefix(p) for p in report.duplicates))
    return "\n".join(lines) + "\n"


def _csv_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _render_csv(report: _Report) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["mode", "granularity", "registry", "original_size",
                     "summarized_size", "compression_rate",
                     "claimed_addresses", "precision", "decrease"])
    decreases = next((r.decreases for r in report.rows
                      if r.decreases is not None), None)
    for index, config in enumerate(report.configs):
        for row in report.rows:
            cell = row.cells[index]
            if cell is None:
                continue
            decrease = (decreases[index] if decreases is not None
                        and row.name == "Single" else None)
            writer.writerow([_csv_value(v) for v in (
                report.mode,
                None if config.has_overrides else config.granularity,
                cell.registry,
                cell.original_size, cell.summarized_size,
                cell.compression_rate, cell.claimed_addresses,
                cell.precision, decrease)])
    return buffer.getvalue()


def render(subject, fmt: str = FORMAT_TABLE) -> str:
    """Render stats, a merged summary, a mode comparison, or a sweep of
    either as ``table``, ``json`` or ``csv`` text."""
    if fmt not in OUTPUT_FORMATS:
        raise RenderError(f"Unknown format {fmt!r}; expected one of "
                          f"{', '.join(OUTPUT_FORMATS)}")
    report = _build_report(subject)
    if fmt == FORMAT_JSON:
        return json.dumps(report.json_body, indent=2) + "\n"
    if fmt == FORMAT_CSV:
        return _render_csv(report)
    return _render_table(report)
