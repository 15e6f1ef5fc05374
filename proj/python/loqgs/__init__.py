"""Search of linear-optical interferometers for measurement-assisted quantum
gates (NS, CZ) maximizing heralded success probability under a
fidelity-equals-one constraint."""

from loqgs._core import (
    Evaluation,
    FockBasis,
    GAConfig,
    GateMetrics,
    GateSpec,
    GeneratorBasis,
    PhotonConfig,
    RunRecord,
    Schedule,
    ScheduleKind,
    TracePoint,
    TransformationMatrix,
    compute_metrics,
    cz_spec,
    default_config,
    enumerate_basis,
    evaluate,
    exp_map,
    fidelity,
    fitness,
    load_gate,
    load_unitary,
    matrix_exp,
    norm_bounds,
    ns_closed_form,
    ns_spec,
    permanent,
    project_transformation,
    resolve_gate,
    run_ga,
    save_unitary,
    standard_generators,
    success_probability,
    temperature,
    transition_amplitude,
)

__all__ = [
    "Evaluation",
    "FockBasis",
    "GAConfig",
    "GateMetrics",
    "GateSpec",
    "GeneratorBasis",
    "PhotonConfig",
    "RunRecord",
    "Schedule",
    "ScheduleKind",
    "TracePoint",
    "TransformationMatrix",
    "compute_metrics",
    "cz_spec",
    "default_config",
    "enumerate_basis",
    "evaluate",
    "exp_map",
    "fidelity",
    "fitness",
    "load_gate",
    "load_unitary",
    "matrix_exp",
    "norm_bounds",
    "ns_closed_form",
    "ns_spec",
    "permanent",
    "project_transformation",
    "resolve_gate",
    "run_ga",
    "save_unitary",
    "standard_generators",
    "success_probability",
    "temperature",
    "transition_amplitude",
]

__version__ = "0.1.0"
