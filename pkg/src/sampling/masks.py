# -*- coding: utf-8 -*-
"""
Máscaras cartesianas uniformes con región de autocalibración (ACR) centrada.

Convención de direcciones: "horizontal" = submuestreo a lo largo de k_x
(R_x > 1, eje 0); "vertical" = a lo largo de k_y (R_y > 1, eje 1).
"""

from __future__ import annotations

from typing import Optional, Tuple

import numpy as np

from src.core.types import KSpaceData, SamplingMask, acr_slices
from src.utils.errors import DataError, UsageError


def default_offset(n_kx: int, n_ky: int, R_x: int, R_y: int) -> Tuple[int, int]:
    """Offset que deja adquirida la línea que pasa por DC."""
    return (n_kx // 2) % R_x, (n_ky // 2) % R_y


def uniform_mask(
    n_kx: int,
    n_ky: int,
    R_x: int = 1,
    R_y: int = 1,
    acr: Optional[Tuple[int, int]] = None,
    offset: Optional[Tuple[int, int]] = None,
) -> SamplingMask:
    """(i, j) adquirido sii (i - o_x) % R_x == 0 y (j - o_y) % R_y == 0, unión la ACR."""
    if R_x < 1 or R_y < 1:
        raise UsageError(f"Factores de reducción inválidos: R_x={R_x}, R_y={R_y}")
    if offset is None:
        offset = default_offset(n_kx, n_ky, R_x, R_y)

    i = np.arange(n_kx)[:, None]
    j = np.arange(n_ky)[None, :]
    acquired = ((i - offset[0]) % R_x == 0) & ((j - offset[1]) % R_y == 0)

    if acr is not None:
        sx, sy = acr_slices((n_kx, n_ky), acr)
        acquired[sx, sy] = True
    return SamplingMask(acquired, tuple(acr) if acr is not None else None)


def directional_mask(
    shape: Tuple[int, int], direction: str, R: int, acr: Optional[Tuple[int, int]] = None
) -> SamplingMask:
    if direction == "horizontal":
        return uniform_mask(shape[0], shape[1], R, 1, acr)
    if direction == "vertical":
        return uniform_mask(shape[0], shape[1], 1, R, acr)
    raise UsageError(f"Dirección desconocida: {direction}")


def acr_extract(ksp: KSpaceData, acr: Tuple[int, int]) -> np.ndarray:
    """Copia del bloque w x h centrado en DC, por bobina: [J x w x h]."""
    sx, sy = acr_slices(ksp.grid.shape, acr)
    if not ksp.mask.acquired[sx, sy].all():
        raise DataError(f"La ACR {acr[0]}x{acr[1]} no está completamente adquirida")
    return ksp.samples[:, sx, sy].copy()


def mask_to_image(mask: SamplingMask) -> np.ndarray:
    """0/1 en float, listo para PGM (blanco = adquirido)."""
    return mask.acquired.astype(float)
