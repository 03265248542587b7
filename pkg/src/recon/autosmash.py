# -*- coding: utf-8 -*-
"""
Interpolación AUTO-SMASH por líneas k_y.

Línea adquirida k: compuesto = sum_j n0_j S_j(k).
Línea faltante k': se toma la línea adquirida k' + m con el menor m >= 1
(circular) y compuesto(k') = sum_j n^(m)_j S_j(k' + m).
"""

from __future__ import annotations

import numpy as np
from loguru import logger

from src.core.types import AutoSmashWeights, KSpaceData
from src.utils.errors import DataError


def collected_lines(data: KSpaceData) -> np.ndarray:
    """Booleano por línea k_y; las líneas parciales se rechazan."""
    acquired = data.mask.acquired
    full = acquired.all(axis=0)
    partial = acquired.any(axis=0) & ~full
    if partial.any():
        raise DataError(
            f"AUTO-SMASH requiere líneas k_y completas; parciales: {np.flatnonzero(partial).tolist()}"
        )
    return full


def autosmash_reconstruct(data: KSpaceData, weights: AutoSmashWeights) -> np.ndarray:
    """Compuesto [n_kx x n_ky] listo para idft2."""
    lines = collected_lines(data)
    n_ky = data.grid.n_ky
    if weights.n0.shape != (data.coil_count,):
        raise DataError(f"n0 con {weights.n0.shape} componentes para J={data.coil_count}")

    composite = np.zeros(data.grid.shape, dtype=np.complex128)
    interpolated = 0
    for k in range(n_ky):
        if lines[k]:
            composite[:, k] = data.samples[:, :, k].T @ weights.n0
            continue
        m = next((m for m in range(1, n_ky) if lines[(k + m) % n_ky]), None)
        if m is None or m not in weights.nm:
            raise DataError(f"Faltan pesos n^(m) para la línea {k} (m={m})")
        source = (k + m) % n_ky
        composite[:, k] = data.samples[:, :, source].T @ weights.nm[m]
        interpolated += 1

    logger.debug(f"AUTO-SMASH: {interpolated} líneas interpoladas de {n_ky}")
    return composite
