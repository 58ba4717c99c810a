import pandas as pd

from domain.entities.telemetry import TELEMETRY_COLUMNS, TelemetryLog


def telemetry_frame(log: TelemetryLog) -> pd.DataFrame:
    """Exported telemetry columns in header order (the true q-dot stays in memory only)."""
    return pd.DataFrame(log.columns(), columns=list(TELEMETRY_COLUMNS))
