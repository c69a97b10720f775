SUMMARY_TEMPLATES = {
    "theorem": "ML degree {ml_degree} from the Chern class formula",
    "oracle-euler": "ML degree {ml_degree} from the signed Euler characteristic of the arrangement",
    "oracle-critical": "{ml_degree} critical points of the log-likelihood",
    "verify": "ML degree {ml_degree}; verdict {verdict}",
}


def create_summary(report):
    """
    Human-readable summary of a report dict for standard error
    """
    if "error" in report:
        error = report["error"]
        lines = [f"{report['mode']}: {error['type']}: {error['message']}"]
    else:
        template = SUMMARY_TEMPLATES.get(report["mode"], "{ml_degree}")
        lines = [template.format(ml_degree=report.get("ml_degree", "n/a"),
                                 verdict=report.get("verdict", "n/a"))]

    profile = report.get("profile")
    if profile:
        lines.append(f"- map degree d_f = {profile['d_f']}, reduced degrees {profile['reduced_degrees']}")
    for oracle in report.get("oracles", []):
        counts = [t["count"] for t in oracle.get("trials", [])]
        detail = f" (trials {counts})" if counts else ""
        lines.append(f"- oracle {oracle['name']}: {oracle['count']}{detail}")
    for skipped in report.get("skipped", []):
        lines.append(f"- oracle {skipped['name']} skipped: {skipped['reason']}")
    for warning in report.get("warnings", []):
        lines.append(f"- warning: {warning}")
    lines.extend(f"  hint: {hint}" for hint in generate_hints(report))
    return "\n".join(lines)


def generate_hints(report):
    """
    Follow-up suggestions based on the report contents
    """
    hints = []
    error_type = report.get("error", {}).get("type")
    if error_type == "BudgetExceededError":
        hints.append("Raise --budget-basis / --budget-degree or MLDEG_BUDGET_BASIS to allow a larger computation.")
    elif error_type == "NonLinearInputError":
        hints.append("The euler oracle needs linear forms; try 'oracle critical' or 'verify'.")
    elif error_type == "DisagreementError":
        hints.append("Rerun with more --trials or a different --seed.")
    elif error_type in ("NotDominantError", "CommonFactorError", "SharedReducedComponentError"):
        hints.append("Only surjective maps with a codimension-2 base locus are covered by the formula.")

    if report.get("verdict") == "ambiguous":
        hints.append("A squarefree part of degree >= 2 may be reducible; values can differ legitimately.")
    if "negative_ml_degree" in report.get("warnings", []):
        hints.append("A negative value usually means the input is degenerate.")
    return hints[:3]
