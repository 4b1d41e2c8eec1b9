"""
Adam optimizer service.
"""

from typing import Optional, Tuple

import numpy as np

from ..exceptions import ConfigurationError, NumericalError
from ..value_objects.adam_state import AdamState
from ..value_objects.model_params import ModelParams, require_same_shape


def init_adam(params: ModelParams, state: Optional[AdamState] = None) -> AdamState:
    """Zero-moment state sized for ``params``, keeping constants of ``state``."""
    if state is None:
        return AdamState.zeros(params.parameter_count)
    return AdamState.zeros(
        params.parameter_count,
        beta1=state.beta1,
        beta2=state.beta2,
        epsilon=state.epsilon,
    )


def adam_step(
    params: ModelParams,
    grads: ModelParams,
    state: AdamState,
    learning_rate: float,
) -> Tuple[ModelParams, AdamState]:
    """
    Apply one bias-corrected Adam update.

    Args:
        params: Current parameters
        grads: Gradient with the same structure as ``params``
        state: Moment estimates before the step
        learning_rate: Step size eta

    Returns:
        Updated parameters and the new state with step_count + 1

    Raises:
        ConfigurationError: If shapes disagree
        NumericalError: If the update produces non-finite parameters
    """
    require_same_shape([params, grads])
    gradient = grads.flatten()
    if gradient.shape != state.first_moment.shape:
        raise ConfigurationError(
            "Adam state does not match the parameter count",
            details={
                "parameters": gradient.size,
                "state": state.first_moment.size,
            },
        )

    step = state.step_count + 1
    first = state.beta1 * state.first_moment + (1.0 - state.beta1) * gradient
    second = (
        state.beta2 * state.second_moment + (1.0 - state.beta2) * gradient * gradient
    )
    first_hat = first / (1.0 - state.beta1**step)
    second_hat = second / (1.0 - state.beta2**step)
    update = learning_rate * first_hat / (np.sqrt(second_hat) + state.epsilon)

    updated = params.flatten() - update
    if not np.all(np.isfinite(updated)):
        raise NumericalError("Adam update produced non-finite parameters")

    new_state = AdamState(
        first_moment=first,
        second_moment=second,
        step_count=step,
        beta1=state.beta1,
        beta2=state.beta2,
        epsilon=state.epsilon,
    )
    return params.with_flat(updated), new_state
