"""Census and complexity reports, as aligned text or JSON."""
from __future__ import annotations

import json

from .analysis import AnalysisConfig, complexity
from .model import BomiModel, ElementCensus, census


def stats_report(model: BomiModel, format: str = "table",
                 include_complexity: bool = False) -> str:
    """Render the element census (optionally plus complexity metrics).

    ``format`` is ``"table"`` (aligned columns, census column order
    BO MI Usage Driver Role Governance-Team Governs) or ``"json"``.
    """
    counts = census(model)
    metrics = complexity(model, AnalysisConfig()) if include_complexity else None
    if format == "json":
        doc: dict = {
            "name": model.name,
            "census": {
                "bo": counts.bo, "mi": counts.mi, "usage": counts.usage,
                "driver": counts.driver, "role": counts.role,
                "governanceTeam": counts.governance_team, "governs": counts.governs,
            },
        }
        if metrics is not None:
            doc["complexity"] = {
                "elementCount": metrics.element_count,
                "relationCount": metrics.relation_count,
                "usageFanIn": dict(metrics.usage_fan_in),
                "avgIslandCoupling": float(metrics.avg_island_coupling),
                "governanceDiversityPerTeam": dict(metrics.governance_diversity),
            }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if format != "table":
        raise ValueError(f"unknown stats format {format!r}")

    name = model.name or "(unnamed)"
    headers = ("Model", *ElementCensus.COLUMNS)
    row = (name, *(str(n) for n in counts.as_tuple()))
    widths = [max(len(h), len(v)) for h, v in zip(headers, row)]
    header_line = "  ".join(h.ljust(w) if i == 0 else h.rjust(w)
                            for i, (h, w) in enumerate(zip(headers, widths)))
    value_line = "  ".join(v.ljust(w) if i == 0 else v.rjust(w)
                           for i, (v, w) in enumerate(zip(row, widths)))
    lines = [header_line.rstrip(), value_line.rstrip()]
    if metrics is not None:
        lines.append("")
        lines.append(f"elements: {metrics.element_count}")
        lines.append(f"relations: {metrics.relation_count}")
        coupling = metrics.avg_island_coupling
        lines.append(f"avg island coupling: {float(coupling):.2f}"
                     f" ({coupling.numerator}/{coupling.denominator})")
        for bo_id in sorted(metrics.usage_fan_in):
            lines.append(f"usage fan-in: {bo_id}={metrics.usage_fan_in[bo_id]}")
        for team_id in sorted(metrics.governance_diversity):
            lines.append(f"governance diversity: {team_id}={metrics.governance_diversity[team_id]}")
    return "\n".join(lines) + "\n"
