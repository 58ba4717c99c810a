import numpy as np


def gyro_measure(q_true: float, three_sigma: float, rng: np.random.Generator) -> float:
    """Rate measurement with additive Gaussian noise of standard deviation three_sigma / 3."""
    if three_sigma <= 0.0:
        return q_true
    return q_true + rng.normal(0.0, three_sigma / 3.0)


def attitude_measure(theta_true: float, three_sigma: float, rng: np.random.Generator) -> float:
    if three_sigma <= 0.0:
        return theta_true
    return theta_true + rng.normal(0.0, three_sigma / 3.0)
