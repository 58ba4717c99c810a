import logging

import pandas as pd

from application.linear.closed_loop_model import (
    NU_TO_THETA,
    LinearizationOptions,
    linearize_closed_loop,
    open_loop_response,
)
from application.linear.frequency_response import freq_response, frequency_frame, state_space_dict
from application.stability.margins import gain_phase_margins
from domain.entities.linear_models import LinearSystem
from domain.entities.margin_result import MarginResult
from domain.entities.scenario import SimScenario
from infrastructure.fs.artifact_writer import ArtifactWriter

logger = logging.getLogger(__name__)


class LinearizeService:
    def __init__(self, writer: ArtifactWriter):
        self.writer = writer

    def execute(self, scenario: SimScenario, t: float, channel: str = NU_TO_THETA,
                options: LinearizationOptions | None = None,
                omega=None) -> tuple[LinearSystem, MarginResult]:
        """
        Linearize the INDI closed loop at one instant and export the model.

        Args:
            scenario: scenario whose dispersion and tuning are used
            t: linearization time
            channel: 'nu_to_theta' or 'thetaerr_to_theta'
            options: which dynamics the model includes
            omega: frequency grid (rad/s)

        Returns:
            (state-space model, margins of the loop built on it)
        """
        system = linearize_closed_loop(scenario, t, channel, options)
        for warning in system.warnings:
            logger.warning("linearization at t=%.2f: %s", t, warning)
        loop = open_loop_response(system, scenario.tuning, channel, omega)
        margins = gain_phase_margins(loop)

        payload = state_space_dict(system)
        payload.update(t=t, channel=channel, controller=scenario.controller.value)
        self.writer.write_json("state_space.json", payload)
        self.writer.write_frame("frequency_response.csv", frequency_frame(freq_response(system, loop.omega, channel)))
        self.writer.write_frame("open_loop.csv", frequency_frame(loop))
        self.writer.write_frame("margins.csv", pd.DataFrame([{
            "t": t, "pm_deg": margins.phase_margin, "gm_db": margins.gain_margin,
            "wgc": margins.omega_gc, "wpc": margins.omega_pc, "stable": margins.stable,
        }]))
        return system, margins
