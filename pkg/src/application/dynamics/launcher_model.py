"""Planar rigid launcher (pitch + lateral drift + tail-wags-dog) and TVC actuator model."""
import math

import numpy as np

from domain.entities.plant_state import ActuatorState, PlantState
from domain.entities.trajectory_point import TRAJECTORY_COLUMNS, TrajectoryPoint

# G_TVC(s) = TVC_OMEGA^2 / (s^2 + TVC_DAMPING s + TVC_OMEGA^2)
TVC_OMEGA = 67.8
TVC_DAMPING = 90.9

_INDEX = {name: i for i, name in enumerate(TRAJECTORY_COLUMNS)}


class PlantParameters:
    """Frozen snapshot of the parameters the equations of motion read."""

    __slots__ = ("m", "J", "g", "T", "l_c", "l_alpha", "V", "aero_gain", "twd_force", "J_n")

    def __init__(self, m, J, g, T, l_c, l_alpha, V, aero_gain, twd_force, J_n):
        self.m = m
        self.J = J
        self.g = g
        self.T = T
        self.l_c = l_c
        self.l_alpha = l_alpha
        self.V = V
        self.aero_gain = aero_gain  # S * C_N_alpha * Q
        self.twd_force = twd_force  # m_n * l_n
        self.J_n = J_n

    @classmethod
    def from_point(cls, point: TrajectoryPoint) -> "PlantParameters":
        return cls(point.m, point.J, point.g, point.T, point.l_c, point.l_alpha, point.V,
                   point.S * point.C_N_alpha * point.dynamic_pressure, point.m_n * point.l_n, point.J_n)

    @classmethod
    def from_array(cls, row: np.ndarray) -> "PlantParameters":
        Q = 0.5 * row[_INDEX["rho"]] * row[_INDEX["V"]] ** 2
        return cls(
            float(row[_INDEX["m"]]), float(row[_INDEX["J"]]), float(row[_INDEX["g"]]), float(row[_INDEX["T"]]),
            float(row[_INDEX["l_c"]]), float(row[_INDEX["l_alpha"]]), float(row[_INDEX["V"]]),
            float(row[_INDEX["S"]] * row[_INDEX["C_N_alpha"]] * Q),
            float(row[_INDEX["m_n"]] * row[_INDEX["l_n"]]), float(row[_INDEX["J_n"]]),
        )


def dynamic_pressure(point: TrajectoryPoint) -> float:
    return 0.5 * point.rho * point.V ** 2


def alpha_of(params: PlantParameters, w: float, theta: float, q: float, v_w: float) -> float:
    return theta + math.atan((w - params.l_alpha * q - v_w) / params.V)


def accelerations(params: PlantParameters, w: float, theta: float, q: float, beta: float,
                  beta_ddot: float, v_w: float):
    """Newton-Euler lateral and pitch accelerations (w_dot, q_dot)."""
    f_alpha = -params.aero_gain * alpha_of(params, w, theta, q, v_w)
    m_alpha = -params.l_alpha * f_alpha
    f_c = -params.T * math.sin(beta)
    m_c = params.l_c * f_c
    f_n = -params.twd_force * beta_ddot
    m_n = params.l_c * f_n - params.J_n * beta_ddot
    w_dot = (f_alpha + f_c + f_n) / params.m - params.g * math.sin(theta)
    q_dot = (m_alpha + m_c + m_n) / params.J
    return w_dot, q_dot


def actuator_acceleration(beta: float, beta_dot: float, beta_cmd: float) -> float:
    return TVC_OMEGA * TVC_OMEGA * (beta_cmd - beta) - TVC_DAMPING * beta_dot


def angle_of_attack(state: PlantState, point: TrajectoryPoint, v_w: float) -> float:
    return state.theta + math.atan((state.w - point.l_alpha * state.q - v_w) / point.V)


def plant_derivatives(state: PlantState, point: TrajectoryPoint, beta: float, beta_ddot: float, v_w: float):
    """(z_dot, w_dot, theta_dot, q_dot) of the rigid plant."""
    w_dot, q_dot = accelerations(PlantParameters.from_point(point), state.w, state.theta, state.q,
                                 beta, beta_ddot, v_w)
    return state.w, w_dot, state.q, q_dot


def tvc_derivatives(act: ActuatorState, beta_cmd: float):
    return act.beta_dot, actuator_acceleration(act.beta, act.beta_dot, beta_cmd)
