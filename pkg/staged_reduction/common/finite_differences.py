from typing import Callable, List, Optional

import numpy as np

from staged_reduction.common.settings import finite_difference_steps


def partial_derivatives(func: Callable[[np.ndarray], np.ndarray], x: np.ndarray,
                        base_step: Optional[float] = None) -> List[np.ndarray]:
    """
    Central finite-difference partial derivatives of a (scalar, vector or matrix valued) function of x.
    :param func: function of the shape coordinates
    :param x: point at which to differentiate
    :param base_step: base step; the step of component i is base_step * max(1, |x_i|)
    :return: list with, for each coordinate x_i, the array d func / d x_i (same shape as func(x))
    """
    x = np.asarray(x, dtype=float)
    steps = finite_difference_steps(x, base_step=base_step)
    partials = []
    for index, step in enumerate(steps):
        forward = x.copy()
        backward = x.copy()
        forward[index] += step
        backward[index] -= step
        derivative = (np.asarray(func(forward), dtype=float) - np.asarray(func(backward), dtype=float)) / (2 * step)
        if not np.all(np.isfinite(derivative)):
            raise FloatingPointError(f"non-finite finite-difference sample in direction {index} at x={x}")
        partials.append(derivative)
    return partials


def directional_derivative(partials: List[np.ndarray], direction: np.ndarray) -> np.ndarray:
    """contract a list of partial derivatives with a direction: sum_i direction_i * partials[i]"""
    direction = np.asarray(direction, dtype=float)
    if len(partials) != len(direction):
        raise ValueError(f"direction has {len(direction)} components while {len(partials)} partials are given")
    result = np.zeros_like(partials[0]) if partials else np.zeros(0)
    for component, partial in zip(direction, partials):
        result = result + component * partial
    return result
