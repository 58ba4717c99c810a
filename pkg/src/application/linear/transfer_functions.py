"""Analytic plant and closed-loop transfer functions built by polynomial arithmetic."""
import math
from typing import Tuple

import numpy as np

from application.dynamics.launcher_model import TVC_DAMPING, TVC_OMEGA
from application.environment.dryden_wind import WIND_GAIN, WIND_POLE
from domain.entities.linear_models import TransferFunction
from domain.entities.plant_coefficients import PlantCoefficients
from domain.entities.tuning import GainSet
from domain.errors import LinearModelError


def _aero_damping(coeffs: PlantCoefficients, V: float | None, l_alpha: float | None) -> float:
    V = coeffs.V if V is None else V
    l_alpha = coeffs.l_alpha if l_alpha is None else l_alpha
    return l_alpha * coeffs.mu_alpha / V


def simplified_attitude_tf(coeffs: PlantCoefficients, V: float | None = None,
                           l_alpha: float | None = None) -> TransferFunction:
    """theta/beta with drift and TWD neglected."""
    return TransferFunction([-coeffs.mu_c], [1.0, _aero_damping(coeffs, V, l_alpha), -coeffs.mu_alpha])


def coupled_tf(coeffs: PlantCoefficients, V: float | None = None, l_alpha: float | None = None,
               g: float | None = None, theta0: float | None = None) -> Tuple[TransferFunction, TransferFunction]:
    """theta/beta and w/beta of the coupled pitch/drift model, solved by Cramer's rule."""
    V = coeffs.V if V is None else V
    l_alpha = coeffs.l_alpha if l_alpha is None else l_alpha
    g = coeffs.g if g is None else g
    theta0 = coeffs.theta0 if theta0 is None else theta0

    m11 = np.array([1.0, l_alpha * coeffs.mu_alpha / V, -coeffs.mu_alpha])
    m12 = np.array([-coeffs.mu_alpha / V])
    m21 = np.array([-l_alpha * coeffs.n_alpha / V, coeffs.n_alpha + g * math.sin(theta0)])
    m22 = np.array([1.0, coeffs.n_alpha / V])
    r1 = np.array([-coeffs.mu_n, 0.0, -coeffs.mu_c])
    r2 = np.array([-coeffs.n_n, 0.0, -coeffs.n_c])

    det = np.polysub(np.polymul(m11, m22), np.polymul(m12, m21))
    if not np.any(det):
        raise LinearModelError("coupled pitch/drift determinant is identically zero")
    theta_num = np.polysub(np.polymul(r1, m22), np.polymul(m12, r2))
    w_num = np.polysub(np.polymul(m11, r2), np.polymul(m21, r1))
    return TransferFunction(theta_num, det), TransferFunction(w_num, det)


def closed_loop_pd_tf(coeffs: PlantCoefficients, gains: GainSet, V: float | None = None,
                      l_alpha: float | None = None) -> TransferFunction:
    damping = _aero_damping(coeffs, V, l_alpha)
    return TransferFunction(
        [-coeffs.mu_c * gains.kP],
        [1.0, damping - coeffs.mu_c * gains.kD, -(coeffs.mu_alpha + coeffs.mu_c * gains.kP)],
    )


def closed_loop_pd_qdot_tf(coeffs: PlantCoefficients, gains: GainSet, V: float | None = None,
                           l_alpha: float | None = None) -> TransferFunction:
    kA = gains.kA or 0.0
    scale = 1.0 - coeffs.mu_c * kA
    if abs(scale) < 1e-12:
        raise LinearModelError("acceleration feedback makes 1 - mu_c*kA singular")
    damping = _aero_damping(coeffs, V, l_alpha)
    return TransferFunction(
        [-coeffs.mu_c * gains.kP / scale],
        [1.0, (damping - coeffs.mu_c * gains.kD) / scale, -(coeffs.mu_alpha + coeffs.mu_c * gains.kP) / scale],
    )


def tvc_tf() -> TransferFunction:
    return TransferFunction([TVC_OMEGA ** 2], [1.0, TVC_DAMPING, TVC_OMEGA ** 2])


def dryden_tf() -> TransferFunction:
    return TransferFunction([WIND_GAIN], [1.0, WIND_POLE])


def double_integrator_loop(kP: float, kD: float) -> TransferFunction:
    """Outer PD around an ideal inversion: (kP + kD s) / s^2."""
    return TransferFunction([kD, kP], [1.0, 0.0, 0.0])
