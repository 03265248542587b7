# -*- coding: utf-8 -*-
"""
PGM binario (P5, 8 bits) para imágenes y máscaras.

Orientación: filas del archivo = eje y (segundo índice), columnas = eje x.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Optional, Tuple

import numpy as np
from loguru import logger

from src.utils.errors import DataError
from src.utils.files import PathLike, atomic_write_bytes

MID_GRAY = 128


def window_image(image: np.ndarray, window: Optional[Tuple[float, float]] = None) -> np.ndarray:
    """Ventaneo lineal a uint8 con saturación; lo == hi -> gris medio."""
    arr = np.asarray(image, dtype=float)
    if arr.ndim != 2:
        raise DataError(f"Se esperaba una imagen 2D, recibido {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DataError("Imagen con valores no finitos")
    lo, hi = (float(arr.min()), float(arr.max())) if window is None else map(float, window)
    if hi == lo:
        logger.warning(f"Ventana degenerada ({lo}, {hi}): imagen uniforme gris medio")
        return np.full(arr.shape, MID_GRAY, dtype=np.uint8)
    scaled = np.clip((arr - lo) / (hi - lo), 0.0, 1.0)
    return np.rint(scaled * 255).astype(np.uint8)


def write_pgm(path: PathLike, image: np.ndarray, window: Optional[Tuple[float, float]] = None) -> Path:
    pixels = window_image(image, window).T
    rows, cols = pixels.shape
    header = f"P5\n{cols} {rows}\n255\n".encode("ascii")
    return atomic_write_bytes(path, header + np.ascontiguousarray(pixels).tobytes())


def read_pgm(path: PathLike) -> np.ndarray:
    """Inverso de write_pgm: devuelve uint8 en la orientación [x, y]."""
    raw = Path(path).read_bytes()
    match = re.match(rb"P5\s+(\d+)\s+(\d+)\s+(\d+)\s", raw)
    if match is None:
        raise DataError(f"No es un PGM binario: {path}")
    cols, rows, maxval = (int(g) for g in match.groups())
    if maxval != 255:
        raise DataError(f"Solo PGM de 8 bits, maxval={maxval}")
    data = raw[match.end() :]
    if len(data) < rows * cols:
        raise DataError("PGM truncado")
    return np.frombuffer(data[: rows * cols], dtype=np.uint8).reshape(rows, cols).T.copy()
