# src/gpfsums/loaders/report_writer.py
"""
Local writer for run reports.
Saves structured reports as canonical JSON and partial-sum series as
parquet with a metadata file alongside.
"""

import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional, Union

import pandas as pd

from ..errors import CheckpointError


logger = logging.getLogger(__name__)

REPORT_SCHEMA_VERSION = 1


def render_structured(document: Dict[str, Any]) -> str:
    """Canonical JSON: sorted keys, 2-space indent, trailing newline"""
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


class ReportWriter:
    """Write reports and series under an output directory"""

    def __init__(self, output_dir: Union[str, Path]):
        """
        Initialize report writer

        Args:
            output_dir: directory that receives reports and series
        """
        self.output_dir = Path(output_dir)

    def _prepare(self, path: Path):
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            logger.error(f"Cannot create output directory {path.parent}: {str(e)}")
            raise CheckpointError(f"Cannot create output directory {path.parent}: {e}") from e

    def write_report(self, document: Dict[str, Any], name: str) -> Path:
        """
        Write a structured report as canonical JSON

        Args:
            document: report document
            name: file name without extension

        Returns:
            Path of the written file
        """
        path = self.output_dir / f"{name}.json"
        self._prepare(path)
        try:
            path.write_text(render_structured(document))
        except OSError as e:
            logger.error(f"Failed to write report {path}: {str(e)}")
            raise CheckpointError(f"Failed to write report {path}: {e}") from e
        logger.info(f"Wrote report to {path}")
        return path

    def write_series(self, df: pd.DataFrame, name: str = "partial_sums") -> Optional[Path]:
        """
        Write a series DataFrame as parquet under <name>/data.parquet

        Returns:
            Path of the parquet file, or None for an empty frame
        """
        if df.empty:
            logger.warning(f"Empty DataFrame provided for {name}")
            return None

        path = self.output_dir / name / "data.parquet"
        self._prepare(path)
        try:
            df.to_parquet(path, index=False, engine="pyarrow")
        except OSError as e:
            logger.error(f"Failed to write series {path}: {str(e)}")
            raise CheckpointError(f"Failed to write series {path}: {e}") from e

        logger.info(f"Wrote {len(df)} rows to {path}")
        self._write_metadata(df, name, path)
        return path

    def _write_metadata(self, df: pd.DataFrame, name: str, data_path: Path):
        """Write metadata file alongside the data"""
        file_size_bytes = data_path.stat().st_size
        metadata = {
            "name": name,
            "record_count": len(df),
            "columns": list(df.columns),
            "file_size_bytes": file_size_bytes,
            "written_at": datetime.now().isoformat(),
            "path": str(data_path),
            "dtypes": df.dtypes.astype(str).to_dict(),
        }

        metadata_path = data_path.with_name("metadata.json")
        try:
            metadata_path.write_text(json.dumps(metadata, indent=2))
            logger.info(f"Wrote metadata to {metadata_path}")
        except OSError as e:
            logger.warning(f"Failed to write metadata: {str(e)}")

    def check_exists(self, name: str) -> bool:
        """True if a report <name>.json or a series <name>/data.parquet exists"""
        return (self.output_dir / f"{name}.json").exists() or (
            self.output_dir / name / "data.parquet"
        ).exists()
