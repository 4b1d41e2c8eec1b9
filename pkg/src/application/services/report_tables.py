"""
Report tables.

Human-readable result tables: rows are
gateways or sweep points, columns are model/algorithm pairs, cells are
``mean±std`` AUC percentages.
"""

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ...domain.entities.reports import RunReport, SummaryStat

MISSING = "-"
FAILED = "failed"


def format_table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    """Align columns; the first column is left-aligned, the rest right-aligned."""
    widths = [len(cell) for cell in header]
    for row in rows:
        widths = [max(width, len(cell)) for width, cell in zip(widths, row)]

    def render(cells: Sequence[str]) -> str:
        first = cells[0].ljust(widths[0])
        rest = [cell.rjust(width) for cell, width in zip(cells[1:], widths[1:])]
        return "  ".join([first, *rest]).rstrip()

    rule = "  ".join("-" * width for width in widths)
    return "\n".join([render(header), rule, *(render(row) for row in rows)]) + "\n"


def _columns(reports: Sequence[RunReport]) -> List[str]:
    labels: List[str] = []
    for report in reports:
        if report.column_label not in labels:
            labels.append(report.column_label)
    return labels


def across_gateway_reading(report: RunReport) -> SummaryStat:
    """Across-gateway mean and spread, averaged over repeats."""
    means = [repeat.across_gateways.mean for repeat in report.repeats]
    stds = [repeat.across_gateways.std for repeat in report.repeats]
    return SummaryStat(
        mean=float(np.mean(means)), std=float(np.mean(stds)), count=len(means)
    )


def gateway_table(reports: Sequence[RunReport]) -> str:
    """
    Per-gateway table of one configuration.

    Gateway rows hold each gateway's AUC across repeats. ``Average`` is the
    spread of the per-repeat mean AUCs across repeats; ``Across gateways``
    is the spread across gateways averaged over repeats.
    """
    columns = _columns(reports)
    by_label = {report.column_label: report for report in reports}
    gateway_ids = sorted(
        {
            summary.gateway_id
            for report in reports
            for summary in report.gateway_summaries
        }
    )

    rows = []
    for gateway_id in gateway_ids:
        row = [f"Gateway {gateway_id}"]
        for label in columns:
            cells = {s.gateway_id: s.auc for s in by_label[label].gateway_summaries}
            stat = cells.get(gateway_id)
            row.append(stat.format() if stat is not None else MISSING)
        rows.append(row)
    rows.append(["Average"] + [by_label[c].repeat_summary.format() for c in columns])
    rows.append(
        ["Across gateways"]
        + [across_gateway_reading(by_label[c]).format() for c in columns]
    )
    return format_table(["Gateway", *columns], rows)


def sweep_table(
    points: Sequence[Tuple[str, Optional[Sequence[RunReport]]]],
    row_title: str = "Setting",
) -> str:
    """
    One row per sweep point with the repeat-level mean AUC of every pair.

    A point whose reports are None failed and is marked as such.
    """
    columns = _columns([r for _, reports in points if reports for r in reports])
    rows = []
    for label, reports in points:
        if reports is None:
            rows.append([label] + [FAILED] * len(columns))
            continue
        cells: Dict[str, str] = {
            report.column_label: report.repeat_summary.format() for report in reports
        }
        rows.append([label] + [cells.get(column, MISSING) for column in columns])
    return format_table([row_title, *columns], rows)


def point_label(report: RunReport, varied: str) -> str:
    """Row label of a report in a merged sweep table."""
    if varied == "n_gateways":
        return f"{report.n_gateways}-gateway"
    return f"ratio {report.gateway_ratio:g}"


def merged_table(reports: Sequence[RunReport]) -> str:
    """
    Merge reports of one or several runs into one table.

    Reports that share the gateway count and ratio form a per-gateway table;
    otherwise each distinct setting becomes a sweep row.
    """
    settings = {(r.n_gateways, r.gateway_ratio) for r in reports}
    if len(settings) <= 1:
        return gateway_table(reports)

    varied = "n_gateways" if len({r.n_gateways for r in reports}) > 1 else "ratio"
    grouped: Dict[str, List[RunReport]] = {}
    for report in sorted(reports, key=lambda r: (r.n_gateways, r.gateway_ratio)):
        grouped.setdefault(point_label(report, varied), []).append(report)
    title = "Network scale" if varied == "n_gateways" else "Gateway ratio"
    return sweep_table(list(grouped.items()), row_title=title)
