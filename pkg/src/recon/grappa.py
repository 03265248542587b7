# -*- coding: utf-8 -*-
"""
Interpolación GRAPPA de un solo paso: cada muestra faltante se llena con
sum_d sum_j S_j(k + d) n_j^d usando los pesos de su kernel.
"""

from __future__ import annotations

from typing import Sequence, Tuple

import numpy as np
from loguru import logger

from config.settings import SAMPLING_CONFIG
from src.core.types import CalibrationWeights, KSpaceData, ReconResult
from src.recon.combine import coil_images, rsos_combine
from src.sampling.kernels import enumerate_kernels
from src.utils.errors import DataError


def gather_neighbors(
    samples: np.ndarray, targets: np.ndarray, displacements, periodic: bool
) -> np.ndarray:
    """[T x J*D]: columna d*J + j = S_j(objetivo + d)."""
    J, nx, ny = samples.shape
    cols = []
    for u, v in displacements:
        ix = targets[:, 0] + u
        iy = targets[:, 1] + v
        if periodic:
            cols.append(samples[:, ix % nx, iy % ny].T)
        else:
            inside = (ix >= 0) & (ix < nx) & (iy >= 0) & (iy < ny)
            block = np.zeros((len(targets), J), dtype=samples.dtype)
            block[inside] = samples[:, ix[inside], iy[inside]].T
            cols.append(block)
    return np.concatenate(cols, axis=1)


def grappa_reconstruct(
    data: KSpaceData,
    weights: Sequence[CalibrationWeights],
    threshold: Tuple[int, int] = (1, 1),
    boundary: str = SAMPLING_CONFIG["boundary"],
) -> ReconResult:
    kernels = enumerate_kernels(data.mask, threshold, boundary)
    by_pattern = {w.kernel.displacements: w for w in weights if w.kernel is not None}
    periodic = boundary == "periodic"

    filled = data.samples.copy()
    uninterpolatable = 0
    for kernel in kernels:
        if not kernel.interpolatable:
            uninterpolatable += len(kernel.targets)
            continue
        w = by_pattern.get(kernel.displacements)
        if w is None:
            raise DataError(f"Faltan pesos para el kernel {kernel.displacements}")
        if w.N.shape != (kernel.size * data.coil_count, data.coil_count):
            raise DataError(f"Pesos de forma {w.N.shape} incompatibles con J={data.coil_count}")
        A = gather_neighbors(data.samples, kernel.targets, kernel.displacements, periodic)
        values = A @ w.N
        filled[:, kernel.targets[:, 0], kernel.targets[:, 1]] = values.T

    if uninterpolatable:
        logger.warning(f"{uninterpolatable} posiciones no interpolables quedaron en 0")

    images = coil_images(filled)
    return ReconResult(
        kspace_full=filled,
        image=rsos_combine(images),
        per_coil_images=images,
        uninterpolatable=uninterpolatable,
    )
