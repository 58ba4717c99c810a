import logging
from pathlib import Path

import numpy as np
import pandas as pd

from domain.entities.trajectory_point import (
    TRAJECTORY_COLUMNS,
    TrajectoryPoint,
    TrajectoryTable,
)
from domain.errors import TrajectoryError
from domain.repositories.trajectory_repository import TrajectoryRepository

logger = logging.getLogger(__name__)


class CsvTrajectoryRepository(TrajectoryRepository):
    """Reads and writes trajectory tables as headed CSV files."""

    def load(self, path) -> TrajectoryTable:
        path = Path(path)
        try:
            frame = pd.read_csv(path)
        except pd.errors.EmptyDataError as exc:
            raise TrajectoryError(f"{path}: empty trajectory file") from exc
        except pd.errors.ParserError as exc:
            raise TrajectoryError(f"{path}: malformed CSV ({exc})") from exc

        frame.columns = [str(c).strip() for c in frame.columns]
        missing = [c for c in TRAJECTORY_COLUMNS if c not in frame.columns]
        if missing:
            raise TrajectoryError(f"{path}: missing column(s) {', '.join(missing)}")
        extra = [c for c in frame.columns if c not in TRAJECTORY_COLUMNS]
        if extra:
            logger.warning("%s: ignoring unknown column(s) %s", path, ", ".join(extra))

        frame = frame[list(TRAJECTORY_COLUMNS)]
        try:
            matrix = frame.apply(pd.to_numeric, errors="raise").to_numpy(dtype=float)
        except (ValueError, TypeError) as exc:
            raise TrajectoryError(f"{path}: non-numeric value ({exc})") from exc

        bad = ~np.isfinite(matrix)
        if bad.any():
            row, col = np.argwhere(bad)[0]
            raise TrajectoryError(
                f"{path}: non-finite value in column '{TRAJECTORY_COLUMNS[col]}' at row {row + 1}"
            )

        table = TrajectoryTable(tuple(TrajectoryPoint.from_array(r) for r in matrix))
        logger.debug("loaded %d trajectory points from %s", len(table), path)
        return table

    def save(self, table: TrajectoryTable, path):
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        frame = pd.DataFrame(table.matrix, columns=list(TRAJECTORY_COLUMNS))
        tmp = path.with_name(path.name + ".part")
        frame.to_csv(tmp, index=False, float_format="%.17g")
        tmp.replace(path)
        logger.debug("saved %d trajectory points to %s", len(table), path)


def load_trajectory(path) -> TrajectoryTable:
    return CsvTrajectoryRepository().load(path)


def save_trajectory(table: TrajectoryTable, path):
    CsvTrajectoryRepository().save(table, path)
