"""drbandits: simulation library for bandits that fuse absolute (reward)
and relative (dueling) feedback, with regret lower-bound calculators and a
reproducible experiment harness."""

__version__ = "0.1.0"

from .analysis import (
    LowerBoundReport,
    bernoulli_kl,
    collected_information,
    confidence_radius,
    emp_loglik_dueling,
    emp_loglik_reward,
    lower_bound_general,
    lower_bound_simplified,
)
from .core import (
    Action,
    BanditInstance,
    InstanceFileError,
    RegretLedger,
    RngStream,
    RoundOutcome,
    ValidationReport,
    accumulate,
    instantaneous_regret,
    load_instance,
    sample_round,
    validate_instance,
)
from .harness import (
    ExperimentConfig,
    ExperimentResult,
    SweepResult,
    checkpoint_times,
    load_config,
    run_experiment,
    simulate,
    sweep,
)
from .instances import builtin_instance, list_builtin_instances, resolve_instance
from .policies import (
    DecoFusion,
    ElimFusion,
    ElimNoFusion,
    MEDNoFusion,
    Policy,
    PolicyParams,
    SufficientStats,
    policy_init,
    statistics_update,
    warmup_action,
)
