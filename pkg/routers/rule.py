import json

import click

import services.inflation as inflation_service
from schemas.rule import RuleCheckResponse, SubstitutionRuleSchema
from routers.deps import echo_json
from services.job import resolve_path


@click.group(name="rule")
def router():
    """Substitution rules as data."""


@router.command(name="export")
@click.option("--tiling", type=click.Choice(sorted(inflation_service.RULES)), default="ab", show_default=True)
@click.argument("path")
def export_rule_endpoint(tiling, path):
    """Write a built-in rule as JSON."""
    rule = SubstitutionRuleSchema(**inflation_service.rule_to_dict(inflation_service.get_rule(tiling)))
    target = resolve_path(path)
    with open(target, "w", encoding="utf-8") as fh:
        json.dump(rule.dict(), fh, sort_keys=True, indent=2)
    echo_json({"path": target, "rule": rule.name, "prototiles": [p.kind for p in rule.prototiles]})


@router.command(name="check")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def check_rule_endpoint(ctx, path):
    """Check a rule file: area, containment, disjoint children, Perron factor."""
    with open(path, encoding="utf-8") as fh:
        data = SubstitutionRuleSchema(**json.load(fh))
    rule = inflation_service.rule_from_dict(data.dict())
    report = {kind: RuleCheckResponse(**r).dict() for kind, r in inflation_service.verify_rule(rule).items()}
    matrix = inflation_service.substitution_matrix(rule)
    payload = {
        "rule": rule.name,
        "prototiles": report,
        "matrix": matrix.tolist(),
        "primitive": matrix.is_primitive(),
        "perron_matches_factor": inflation_service.perron_matches_factor(rule),
    }
    echo_json(payload)
    passed = payload["primitive"] and payload["perron_matches_factor"] and all(
        all(v for k, v in r.items() if k != "children") for r in report.values()
    )
    if not passed:
        ctx.exit(1)
