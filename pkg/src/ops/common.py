# -*- coding: utf-8 -*-
"""
Ops: utilidades compartidas por los subcomandos (carga de tensores,
validación de rutas y parámetros).
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Optional, Tuple

import numpy as np

from src.core.types import KSpaceData, SamplingMask
from src.formats.tensor import read_tensor
from src.sampling.masks import uniform_mask
from src.utils.errors import DataError, UsageError


def check_distinct_paths(inputs: Iterable[Optional[str]], outputs: Iterable[Optional[str]]) -> None:
    """Ninguna salida puede pisar una entrada ni a otra salida."""
    ins = [Path(p).resolve() for p in inputs if p]
    outs = [Path(p).resolve() for p in outputs if p]
    if len(set(outs)) != len(outs):
        raise UsageError("Hay rutas de salida repetidas")
    clash = set(ins) & set(outs)
    if clash:
        raise UsageError(f"Una salida pisaría una entrada: {', '.join(str(p) for p in clash)}")


def load_kspace(path: str) -> KSpaceData:
    """Tensor [J x n_kx x n_ky] (o [n_kx x n_ky] para J=1) totalmente muestreado."""
    samples = read_tensor(path)
    if samples.ndim == 2:
        samples = samples[None]
    if samples.ndim != 3:
        raise DataError(f"Se esperaba k-space [J x n_kx x n_ky], recibido {samples.shape}")
    return KSpaceData.fully_sampled(samples)


def acr_shape(acr: int, grid: Tuple[int, int]) -> Tuple[int, int]:
    if acr < 1:
        raise UsageError(f"ACR inválida: {acr}")
    if acr > min(grid):
        raise DataError(f"ACR {acr}x{acr} no cabe en la grilla {grid[0]}x{grid[1]}")
    return acr, acr


def recon_mask(method: str, grid: Tuple[int, int], rx: int, ry: int, acr: int) -> SamplingMask:
    """AUTO-SMASH usa líneas ACS completas en k_x; el resto, una ACR cuadrada."""
    if method == "autosmash":
        if rx != 1:
            raise UsageError("AUTO-SMASH solo submuestrea en k_y (--rx 1)")
        return uniform_mask(grid[0], grid[1], 1, ry, (grid[0], acr_shape(acr, grid)[1]))
    return uniform_mask(grid[0], grid[1], rx, ry, acr_shape(acr, grid))


def mask_from_tensor(tensor: np.ndarray, acr: Optional[Tuple[int, int]]) -> SamplingMask:
    if tensor.ndim != 2:
        raise DataError(f"La máscara debe ser 2D, recibido {tensor.shape}")
    return SamplingMask(np.abs(tensor) > 0.5, acr)
