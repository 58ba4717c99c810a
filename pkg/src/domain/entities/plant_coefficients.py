from dataclasses import dataclass


@dataclass(frozen=True)
class PlantCoefficients:
    """Normalised rigid-body coefficients derived from one trajectory point.

    mu_* act on the pitch acceleration (1/s^2), n_* on the lateral acceleration
    (m/s^2 per rad). The TWD coefficients (mu_n, n_n) multiply the nozzle
    angular acceleration.
    """

    mu_alpha: float
    mu_c: float
    mu_n: float
    n_alpha: float
    n_c: float
    n_n: float
    V: float
    l_alpha: float
    g: float
    theta0: float
