"""Deterministic report assembly and rendering (JSON / Markdown / CSV).

Key order inside the JSON report is fixed by construction; identical inputs
produce byte-identical output for a given package version.
"""

from __future__ import annotations

import json

from . import __version__, forms, invariants
from .groupspec import GroupSpec, character_lattice, relation_subgroup


def relation_to_doc(spec: GroupSpec, flat) -> list:
    """Flat center element rendered in the per-factor document shape."""
    st = spec.center()
    out = []
    for i, f in enumerate(spec.factors):
        comp = st.component(flat, i)
        if len(comp) == 1:
            out.append(comp[0])
        else:
            out.append([comp[0], comp[1]])
    return out


def doc_to_flat(spec: GroupSpec, entry) -> tuple[int, ...]:
    flat: list[int] = []
    for i, f in enumerate(spec.factors):
        x = entry[i]
        if isinstance(x, list):
            flat.extend(x)
        else:
            flat.append(x)
    return tuple(flat)


def group_string(factors) -> str:
    if not factors:
        return "0"
    if all(f == 2 for f in factors):
        return f"(Z/2)^{len(factors)}"
    return " x ".join(f"Z/{f}" for f in factors)


def generator_to_json(entry) -> dict:
    out = {"label": entry.label}
    if entry.factor is not None:
        out["factor"] = entry.factor
    if entry.vector is not None:
        out["vector"] = list(entry.vector)
    out["rendered"] = entry.render()
    return out


def build_report(
    spec: GroupSpec,
    input_echo: dict | None = None,
    oracle_height: int | None = None,
) -> dict:
    rsub = relation_subgroup(spec)
    st = spec.center()
    q = forms.invariant_forms_lattice(spec)
    dec = forms.decomposable_lattice(spec)
    red = forms.reductive_lattice(spec)
    ind = invariants.indecomposable_invariants(spec)
    redg = invariants.reductive_invariants(spec)
    data = invariants.reductive_rank_data(spec)
    cor = invariants.indecomposable_rank_formula(spec)
    gens = invariants.generator_report(spec)
    checks = invariants.cross_checks(spec, oracle_height=oracle_height)

    if input_echo is None:
        input_echo = {
            "factors": [{"type": f.ftype, "rank": f.n} for f in spec.factors],
            "mu_relations": [
                relation_to_doc(spec, g) for g in rsub.minimal_generators()
            ],
        }

    report = {
        "tool": "invcalc",
        "version": __version__,
        "input": input_echo,
        "center": {
            "moduli": list(st.moduli),
            "order": st.order,
            "relation_order": rsub.order,
            "relation_generators": [
                relation_to_doc(spec, g) for g in rsub.minimal_generators()
            ],
        },
        "character_lattice_basis": character_lattice(spec).basis_rows(),
        "invariant_forms_basis": q.basis_rows(),
        "decomposable_basis": dec.basis_rows(),
        "reductive_basis": red.basis_rows(),
        "indecomposable_factors": list(ind.invariant_factors),
        "reductive_factors": list(redg.invariant_factors),
        "formula": data.as_dict(),
        "corollary_rank": cor,
        "generators": [generator_to_json(e) for e in gens.entries],
        "generator_kernel_basis": [list(v) for v in gens.kernel_basis],
        "unramified": invariants.UNRAMIFIED_NOTE,
    }
    if oracle_height is not None:
        report["oracle_height"] = oracle_height
    report["verification"] = checks
    return report


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def to_markdown(report: dict) -> str:
    lines = []
    lines.append("# invcalc report")
    lines.append("")
    factors = report["input"]["factors"]
    desc = ", ".join(f"{f['type']}{f['rank']}" for f in factors)
    lines.append(f"- factors: {desc}")
    lines.append(
        f"- relations: {json.dumps(report['input'].get('mu_relations', []))}"
    )
    center = report["center"]
    lines.append(
        f"- center: moduli {center['moduli']}, order {center['order']}, "
        f"relation subgroup order {center['relation_order']}"
    )
    lines.append("")
    lines.append("## Invariant groups")
    lines.append("")
    lines.append("| group | structure | factors |")
    lines.append("| --- | --- | --- |")
    lines.append(
        "| indecomposable | "
        + group_string(report["indecomposable_factors"])
        + " | "
        + json.dumps(report["indecomposable_factors"])
        + " |"
    )
    lines.append(
        "| reductive | "
        + group_string(report["reductive_factors"])
        + " | "
        + json.dumps(report["reductive_factors"])
        + " |"
    )
    lines.append("")
    formula = report["formula"]
    quantities = ", ".join(f"{k}={v}" for k, v in formula.items() if k != "rank")
    lines.append(f"- closed-form reductive rank: {formula['rank']} ({quantities})")
    if report["corollary_rank"] is not None:
        lines.append(f"- closed-form indecomposable rank: {report['corollary_rank']}")
    gens = ", ".join(g["rendered"] for g in report["generators"]) or "(none)"
    lines.append(f"- generators: {gens}")
    lines.append(f"- unramified: {report['unramified']}")
    lines.append("")
    lines.append("## Lattices (d-coordinates)")
    lines.append("")
    for key in ("invariant_forms_basis", "decomposable_basis", "reductive_basis"):
        lines.append(f"- {key}: {json.dumps(report[key])}")
    lines.append("")
    lines.append("## Verification")
    lines.append("")
    checks = report["verification"]
    for key in (
        "reductive_rank_matches",
        "corollary_consistent",
        "generator_count_matches",
        "closed_form",
        "oracle",
    ):
        lines.append(f"- {key}: {checks[key]}")
    for w in checks["warnings"]:
        lines.append(f"- warning: {json.dumps(w)}")
    for ms in checks["mismatches"]:
        lines.append(f"- MISMATCH: {json.dumps(ms)}")
    return "\n".join(lines) + "\n"
