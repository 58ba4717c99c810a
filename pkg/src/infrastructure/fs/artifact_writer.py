import json
import logging
from pathlib import Path

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)


def _json_default(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, tuple):
        return list(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


class ArtifactWriter:
    """Writes result files into an output directory.

    Every file is written to a ``.part`` sibling first and renamed once complete,
    so a partially written artifact never carries its final name.
    """

    def __init__(self, base="results"):
        self.base = Path(base)
        self.base.mkdir(parents=True, exist_ok=True)

    def path(self, name) -> Path:
        return self.base / name

    def _commit(self, tmp: Path, final: Path):
        if final.exists():
            final.unlink()
        tmp.rename(final)
        logger.info("wrote %s", final)

    def write_frame(self, name, frame: pd.DataFrame) -> Path:
        final = self.path(name)
        tmp = final.with_name(final.name + ".part")
        frame.to_csv(tmp, index=False, na_rep="nan")
        self._commit(tmp, final)
        return final

    def write_json(self, name, payload) -> Path:
        final = self.path(name)
        tmp = final.with_name(final.name + ".part")
        with open(tmp, "w", encoding="utf-8") as fp:
            json.dump(payload, fp, indent=2, default=_json_default, allow_nan=True)
            fp.write("\n")
        self._commit(tmp, final)
        return final

    def write_text(self, name, text: str) -> Path:
        final = self.path(name)
        tmp = final.with_name(final.name + ".part")
        tmp.write_text(text, encoding="utf-8")
        self._commit(tmp, final)
        return final
