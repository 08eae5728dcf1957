"""Learning linear regressors when only ``k`` attributes of each training
example may be observed."""

from .aer import AerConfig, AerState, aer_step, default_lambda, train_aer
from .baseline import (
    SurrogateLoss,
    accumulate_baseline,
    minimize_surrogate,
    surrogate_value,
    train_baseline,
    train_naive,
)
from .core import (
    AttributeOracle,
    BudgetExceeded,
    Dataset,
    LabeledExample,
    Model,
    evaluate_loss,
    rng_stream,
)
from .estimators import estimate_gradient, estimate_gram_and_instance, estimate_instance
from .full_info import FullInfoConfig, train_constrained, train_lasso, train_ridge
from .projection import project_l1, project_l2
from .quadratic import SolverConfig

__version__ = "0.1.0"
