"""Python bindings for the visibility-maintenance controller toolkit."""

from ._vmp import (  # noqa: F401
    BasicScenario,
    CircleScenario,
    GainMatrix,
    InequalitySystem,
    UbbScenario,
    certify,
    check_chain,
    closed_chain_check,
    derive_conditions_fme,
    feasibility,
    gain_polytope,
    generate_schedule,
    max_chain_length,
    min_norm_gain,
    min_speed_schedule,
    parse_system,
    simulate,
    synthesize,
)

__all__ = [name for name in dir() if not name.startswith("_")]
