from pydantic import BaseModel, ConfigDict, PositiveInt

from constants import (
    DEFAULT_GROUP_CAP,
    DEFAULT_ORACLE_MAX_CANDIDATES,
    DEFAULT_PRODUCT_DEPTH,
    DEFAULT_SEARCH_BUDGET,
    GEOMETRIC_N_MAX,
    GEOMETRIC_Q_MAX,
)


class DeciderConfig(BaseModel):
    """Budgets and scan bounds for one decision run.

    Frozen so it can key the decision memo.
    """

    model_config = ConfigDict(frozen=True)

    group_cap: PositiveInt = DEFAULT_GROUP_CAP
    search_budget: PositiveInt = DEFAULT_SEARCH_BUDGET
    oracle_max_candidates: PositiveInt = DEFAULT_ORACLE_MAX_CANDIDATES
    oracle_enabled: bool = True
    product_depth: PositiveInt = DEFAULT_PRODUCT_DEPTH
    geometric_q_max: PositiveInt = GEOMETRIC_Q_MAX
    geometric_n_max: PositiveInt = GEOMETRIC_N_MAX
