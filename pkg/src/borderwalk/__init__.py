"""Probe a black-box feature-based classifier, locate its inter-class
borders, and emit near-identical input pairs that straddle them within
provable distance bounds."""

from .space import (
    Categorical,
    Integer,
    InvalidPointError,
    Natural,
    Point,
    Real,
    SamplingError,
    SchemaError,
    SpaceKind,
    SpaceSchema,
    Verdict,
    distance,
    diameter,
    load_schema,
    min_separation,
    random_point,
    random_pool,
    save_schema,
    schema_from_dict,
    schema_to_dict,
    validate_point,
)
from .morphisms import (
    Composition,
    ContractionInapplicableError,
    Direction,
    MidTowardTarget,
    PlanError,
    Traversal,
    all_traversals,
    apply_composition,
    apply_traversal,
    composition_from_text,
    composition_to_text,
    contraction_check,
    midpoint,
    plan_path,
)
from .classifiers import (
    CONCURRENT,
    SERIAL,
    Executor,
    Label,
    LabeledPoint,
    SUBJECT_NAMES,
    UnknownSubjectError,
    class_mass,
    constant_executor,
    make_subject,
    subject_schema,
)
from .bridge import (
    BridgeConfig,
    BridgeError,
    BridgeExecutor,
    ExecutionError,
    ExecutorClosedError,
    HandshakeError,
    ProtocolError,
    SchemaMismatchError,
    shutdown,
    spawn,
)
from .strategies import (
    DIRECTED_WALK,
    RANDOM_TARGET,
    RANDOM_WALK,
    STRATEGY_NAMES,
    ParetoPair,
    Provenance,
    StrategyConfig,
    StrategyError,
    WalkOutcome,
    directed_walk,
    random_target,
    random_walk,
    refine,
    run_walks,
    write_walk_records,
)
from .harness import (
    ExperimentPlan,
    ExplorationReport,
    NoFrontError,
    RepetitionResult,
    derive_seed,
    estimate_time,
    export_csv,
    render_front_svg,
    run_dir,
    run_experiment,
)

__version__ = "0.1.0"
