# -*- coding: utf-8 -*-
"""
Reporte CSV de la métrica direccional (una fila por dataset/configuración).
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Dict, Optional

import pandas as pd

from src.utils.errors import DataError
from src.utils.files import PathLike, atomic_write_text

REPORT_COLUMNS = [
    "dataset",
    "kernel",
    "err_vertical",
    "err_horizontal",
    "label_v",
    "label_h",
    "nrmse_v",
    "nrmse_h",
]
NUMERIC_COLUMNS = ("err_vertical", "err_horizontal", "nrmse_v", "nrmse_h")


def format_number(value: Optional[float]) -> str:
    """6 cifras significativas, conservando ceros finales (0.5495 -> 0.549500)."""
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    return f"{float(value):#.6g}"


def _row_frame(row: Dict[str, object]) -> pd.DataFrame:
    unknown = set(row) - set(REPORT_COLUMNS)
    if unknown:
        raise DataError(f"Columnas desconocidas en el reporte: {sorted(unknown)}")
    values = {col: row.get(col) for col in REPORT_COLUMNS}
    for col in NUMERIC_COLUMNS:
        values[col] = format_number(values[col])
    return pd.DataFrame([values], columns=REPORT_COLUMNS).fillna("")


def append_report(path: PathLike, row: Dict[str, object]) -> Path:
    """Agrega una fila (y la cabecera si el archivo está vacío); reemplazo atómico."""
    path = Path(path)
    existing = path.read_text(encoding="utf-8") if path.exists() else ""
    if existing and not existing.endswith("\n"):
        existing += "\n"
    header = not existing.strip()
    chunk = _row_frame(row).to_csv(index=False, header=header, lineterminator="\n")
    return atomic_write_text(path, (existing if existing.strip() else "") + chunk)


def read_report(path: PathLike) -> pd.DataFrame:
    path = Path(path)
    if not path.exists():
        raise DataError(f"No existe el reporte: {path}")
    df = pd.read_csv(path, dtype={"dataset": str, "kernel": str, "label_v": str, "label_h": str})
    missing = [c for c in REPORT_COLUMNS if c not in df.columns]
    if missing:
        raise DataError(f"Reporte sin columnas: {missing}")
    return df
