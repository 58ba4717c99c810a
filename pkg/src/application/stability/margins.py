"""Classical margins, closed-loop stability and Nichols data of open-loop responses."""
import logging
import math
from dataclasses import replace

import control
import numpy as np
import pandas as pd

from domain.entities.linear_models import FrequencyResponse
from domain.entities.margin_result import MarginResult
from domain.errors import LinearModelError

logger = logging.getLogger(__name__)

# Largest |delta log10|L|| between neighbours before the grid is considered too coarse
GRID_LOG_STEP = 0.1


def _margin_data(open_loop: FrequencyResponse):
    if open_loop.system is not None:
        return open_loop.system
    # sampled only: python-control interpolates the data as an FRD model
    values = open_loop.values
    return np.abs(values), np.degrees(np.unwrap(np.angle(values))), open_loop.omega


def gain_phase_margins(open_loop: FrequencyResponse) -> MarginResult:
    """Phase margin at every unity-gain crossing and gain margin at every -180 deg crossing.

    The smallest phase margin and the smallest gain margin in magnitude (the
    -180 deg crossing closest to 0 dB) are reported; all crossings above the
    lowest grid frequency are listed.
    """
    omega = open_loop.omega
    log_mag = np.log10(np.abs(open_loop.values))
    if open_loop.system is None and np.any(np.abs(np.diff(log_mag)) > GRID_LOG_STEP):
        logger.debug("open-loop grid is coarser than %.2f decades of gain between samples", GRID_LOG_STEP)

    with np.errstate(all="ignore"):
        gm, pm, _, w_pc, w_gc, _ = control.stability_margins(
            _margin_data(open_loop), returnall=True, epsw=float(omega[0]))

    gain_crossings = sorted(
        (float(w), float(p)) for w, p in zip(np.atleast_1d(w_gc), np.atleast_1d(pm)) if np.isfinite(w))
    phase_crossings = sorted(
        (float(w), float(control.mag2db(g))) for w, g in zip(np.atleast_1d(w_pc), np.atleast_1d(gm))
        if np.isfinite(w) and np.isfinite(g) and g > 0.0)

    result = MarginResult(
        stable=nyquist_stable(open_loop),
        gain_crossings=tuple(gain_crossings),
        phase_crossings=tuple(phase_crossings),
    )
    if gain_crossings:
        w, margin = min(gain_crossings, key=lambda c: c[1])
        result = replace(result, phase_margin=margin, omega_gc=w)
    if phase_crossings:
        w, margin = min(phase_crossings, key=lambda c: abs(c[1]))
        result = replace(result, gain_margin=margin, omega_pc=w)
    return result


def _estimate_origin_poles(resp: FrequencyResponse) -> int:
    mag = np.abs(resp.values[:2])
    slope = (math.log(mag[1]) - math.log(mag[0])) / (math.log(resp.omega[1]) - math.log(resp.omega[0]))
    return max(int(round(-slope)), 0)


def _sampled_encirclements(resp: FrequencyResponse) -> int:
    """Winding count of the sampled curve; poles at the origin are bypassed on the right."""
    shifted = 1.0 + resp.values
    phase = np.unwrap(np.angle(shifted))
    delta_positive = phase[-1] - phase[0]
    origin = resp.origin_poles if resp.origin_poles is not None else _estimate_origin_poles(resp)
    # the indentation maps arg(1+L) from -a to a, winding clockwise about origin*pi
    base = 2.0 * float(np.angle(shifted[0]))
    turns = round((-origin * math.pi - base) / (2.0 * math.pi))
    delta_indent = base + 2.0 * math.pi * turns
    total = 2.0 * delta_positive + delta_indent
    return -int(round(total / (2.0 * math.pi)))


def closed_loop_poles(resp: FrequencyResponse) -> np.ndarray:
    """Poles of L / (1 + L), the loop closed with unit negative feedback."""
    if resp.system is None:
        raise LinearModelError("closed-loop poles need the model behind the response")
    return np.asarray(control.feedback(resp.system, 1).poles())


def nyquist_encirclements(resp: FrequencyResponse) -> int:
    """Clockwise encirclements of -1 over the full Nyquist contour, N = Z - P.

    With a model, Z counts right-half-plane closed-loop poles and P open-loop
    ones, so slow poles below the grid are not missed. Sampled responses fall
    back to the winding count of the samples.
    """
    if resp.system is None:
        return _sampled_encirclements(resp)
    closed = int(np.sum(closed_loop_poles(resp).real > 0.0))
    open_loop = resp.unstable_poles
    if open_loop is None:
        open_loop = int(np.sum(np.asarray(resp.system.poles()).real > 0.0))
    return closed - open_loop


def nyquist_stable(resp: FrequencyResponse) -> bool:
    if resp.system is not None:
        return bool(np.all(closed_loop_poles(resp).real < 0.0))
    return _sampled_encirclements(resp) + (resp.unstable_poles or 0) == 0


def nichols_data(open_loop: FrequencyResponse) -> pd.DataFrame:
    """(omega, phase_deg, gain_db) rows with phase unwrapped continuously in omega."""
    phase = np.degrees(np.unwrap(np.angle(open_loop.values)))
    origin = open_loop.origin_poles if open_loop.origin_poles is not None else _estimate_origin_poles(open_loop)
    expected = -90.0 * origin - 180.0 * (open_loop.unstable_poles or 0)
    phase = phase + 360.0 * round((expected - phase[0]) / 360.0)
    return pd.DataFrame({
        "omega": open_loop.omega,
        "phase_deg": phase,
        "gain_db": control.mag2db(np.abs(open_loop.values)),
    })
