"""Kahler potentials on the blow-up of C^n: curvature, diastasis and a seeded verification suite."""

from ._core import (
    CheckReport,
    Condition,
    ChartDomainError,
    ConfigError,
    ConstructionError,
    DomainError,
    ExceptionalDivisorError,
    KahlerError,
    NotPositiveDefiniteError,
    Potential,
    SingularEvaluationError,
    chart_potential,
    closed_diastasis_eh,
    closed_diastasis_s,
    eguchi_hanson,
    flat,
    fubini_study,
    hyperbolic_ball,
    list_checks,
    parse_point,
    restrict_to_exceptional,
    run_check,
    run_checks,
    simanca,
    to_csv,
    to_json,
)

__all__ = [name for name in dir() if not name.startswith("_")]
