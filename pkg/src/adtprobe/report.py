"""Text and JSON rendering of a pipeline run."""

from __future__ import annotations

import json

from .pipeline import PipelineResult


def report_dict(result: PipelineResult) -> dict:
    d = result.diagnosis
    log = result.log
    return {
        "module": result.vm.name,
        "core_sort": result.vm.core,
        "mode": result.mode.value,
        "seed": result.seed,
        "scope": dict(sorted(result.scope.counts.items())),
        "structure": {
            "carriers": dict(sorted(result.structure.carriers.items())),
            "reachable": sorted(result.derived.terms),
            "unreachable": list(result.derived.unreachable),
            "terms": {str(e): str(t) for e, t in sorted(result.derived.terms.items())},
        },
        "comparisons": {
            "attempts": log.attempts,
            "l1": [[op, elem] for op, elem in sorted(log.l1)],
            "l2": [[op, elem] for op, elem in sorted(log.l2)],
            "l3": dict(sorted(log.l3.items())),
            "construction_failures": [
                {"element": e, "operation": op, "error": err}
                for e, op, err in log.construction_failures],
        },
        "verdict": {
            "guilty": d.guilty,
            "inconclusive": d.inconclusive,
            "branch": d.branch,
        },
        "fss": sorted(d.fss),
        "narrative": list(d.narrative),
        "exit_status": result.exit_status,
    }


def render_json(result: PipelineResult) -> str:
    return json.dumps(report_dict(result), sort_keys=True, indent=2)


def render_text(result: PipelineResult) -> str:
    d = result.diagnosis
    log = result.log
    lines = []
    lines.append(f"module {result.vm.name} (core sort {result.vm.core}), "
                 f"mode {result.mode.value}, seed {result.seed}")
    scope = " ".join(f"{s}={n}" for s, n in sorted(result.scope.counts.items()))
    lines.append(f"scope: {scope}")
    carriers = " ".join(f"{s}:{n}" for s, n in
                        sorted(result.structure.carriers.items()))
    lines.append(f"structure: {carriers}; {len(result.derived.terms)} core "
                 f"element(s) reachable"
                 + (f", {len(result.derived.unreachable)} unreachable "
                    f"(excluded from testing)" if result.derived.unreachable
                    else ""))
    for e, t in sorted(result.derived.terms.items()):
        lines.append(f"  element {e} <- {t}")
    lines.append(f"comparisons: {log.attempts} attempted, "
                 f"{len(log.l1) + len(log.l2)} distinct failures")
    lines.append("evidence:")
    lines.append("  L1 (observer, element): "
                 + (", ".join(f"({op}, {e})" for op, e in sorted(log.l1)) or "none"))
    lines.append("  L2 (transformer, element): "
                 + (", ".join(f"({op}, {e})" for op, e in sorted(log.l2)) or "none"))
    lines.append("  L3 (creator: failed observations on creator-only objects): "
                 + ", ".join(f"{c}={n}" for c, n in sorted(log.l3.items())))
    if log.construction_failures:
        lines.append("  construction failures:")
        for e, op, err in log.construction_failures:
            lines.append(f"    element {e}: {op} raised {err}")
    if d.guilty is not None:
        lines.append(f"verdict: guilty method is {d.guilty}")
    else:
        lines.append("verdict: inconclusive"
                     + ("" if log.is_clean() else " (failures observed)"))
    suspects = [s for s in sorted(d.fss)]
    lines.append("suspects (FSS): " + (", ".join(suspects) or "none"))
    lines.append("interpretation:")
    for note in d.narrative:
        lines.append(f"  - {note}")
    return "\n".join(lines)
