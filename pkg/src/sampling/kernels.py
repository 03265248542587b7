# -*- coding: utf-8 -*-
"""
Enumeración de kernels GRAPPA: cada posición no adquirida se clasifica según
qué vecinos dentro del umbral (norma infinito) fueron adquiridos.

El vecindario se codifica como un entero de 64 bits (un bit por
desplazamiento de la ventana), de modo que las clases salen de un único
np.unique sobre las posiciones faltantes.
"""

from __future__ import annotations

from typing import List, Tuple

import numpy as np
from loguru import logger

from config.settings import SAMPLING_CONFIG
from src.core.fourier import grid_shift
from src.core.types import KernelPattern, SamplingMask
from src.utils.errors import DataError, UsageError

BOUNDARIES = ("periodic", "zero")


def window_offsets(threshold: Tuple[int, int]) -> List[Tuple[int, int]]:
    """Desplazamientos de la ventana sin el centro, en orden (u, v) lexicográfico."""
    tx, ty = threshold
    return [(u, v) for u in range(-tx, tx + 1) for v in range(-ty, ty + 1) if (u, v) != (0, 0)]


def _check_boundary(boundary: str) -> bool:
    if boundary not in BOUNDARIES:
        raise UsageError(f"Borde desconocido: {boundary} (usa {', '.join(BOUNDARIES)})")
    return boundary == "periodic"


def enumerate_kernels(
    mask: SamplingMask,
    threshold: Tuple[int, int] = (1, 1),
    boundary: str = SAMPLING_CONFIG["boundary"],
) -> List[KernelPattern]:
    """Partición de las posiciones no adquiridas en clases de vecindario.

    Las clases sin desplazamientos se devuelven igual (interpolatable=False).
    Orden determinista: por código de vecindario creciente.
    """
    tx, ty = threshold
    if tx < 0 or ty < 0:
        raise UsageError(f"Umbral inválido: {threshold}")
    periodic = _check_boundary(boundary)
    offsets = window_offsets(threshold)
    if len(offsets) > 64:
        raise UsageError(f"Umbral {threshold} excede 64 desplazamientos por ventana")

    missing = ~mask.acquired
    if not missing.any():
        return []

    codes = np.zeros(mask.shape, dtype=np.uint64)
    for bit, offset in enumerate(offsets):
        neighbor = grid_shift(mask.acquired, offset, periodic=periodic)
        codes |= neighbor.astype(np.uint64) << np.uint64(bit)

    locations = np.argwhere(missing)
    classes, inverse = np.unique(codes[missing], return_inverse=True)

    kernels = []
    for index, code in enumerate(classes):
        displacements = tuple(
            offsets[bit] for bit in range(len(offsets)) if (int(code) >> bit) & 1
        )
        targets = locations[inverse.ravel() == index]
        kernels.append(KernelPattern(displacements, targets, (tx, ty)))

    flagged = sum(len(k.targets) for k in kernels if not k.interpolatable)
    if flagged:
        logger.warning(f"{flagged} posiciones sin vecinos adquiridos dentro del umbral {threshold}")
    logger.debug(f"{len(kernels)} kernels para umbral {threshold} ({boundary})")
    return kernels


def kernel_from_pattern(pattern: np.ndarray) -> KernelPattern:
    """Patrón 0/1 de prueba -> KernelPattern.

    Orientación de pantalla: columnas = u (k_x), filas = v (k_y), centro del
    arreglo = objetivo. Un patrón [1 x k_w] es horizontal.
    """
    arr = np.atleast_2d(np.asarray(pattern))
    rows, cols = arr.shape
    if rows % 2 == 0 or cols % 2 == 0:
        raise UsageError(f"El patrón debe tener dimensiones impares, recibido {arr.shape}")
    cv, cu = rows // 2, cols // 2
    if arr[cv, cu] != 0:
        raise DataError("El centro del patrón debe ser 0")
    displacements = tuple(
        (c - cu, r - cv) for c in range(cols) for r in range(rows) if arr[r, c] != 0
    )
    return KernelPattern(displacements, np.zeros((0, 2), dtype=int), (cu, cv))
