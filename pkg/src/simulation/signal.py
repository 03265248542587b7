# -*- coding: utf-8 -*-
"""
Modelo directo S_j = DFT(C_j * rho) y ruido gaussiano complejo.
"""

from __future__ import annotations

from typing import Optional

import numpy as np
from loguru import logger

from src.core.fourier import dft2
from src.core.types import CoilSensitivities, ComplexImage, KSpaceData, KSpaceGrid, SamplingMask
from src.utils.errors import DataError


def forward_signal(rho: ComplexImage, sens: CoilSensitivities) -> KSpaceData:
    if tuple(sens.grid_shape) != tuple(rho.shape):
        raise DataError(
            f"Grilla de sensibilidades {tuple(sens.grid_shape)} no coincide con la imagen {rho.shape}"
        )
    samples = dft2(sens.maps * rho.data[None, :, :])
    return KSpaceData(samples, KSpaceGrid.for_image(rho), SamplingMask.full(rho.shape))


def add_noise(ksp: KSpaceData, sigma: float, seed: Optional[int] = None) -> KSpaceData:
    """Ruido i.i.d. complejo circular de desviación sigma por muestra (sigma^2 / 2 por componente).

    Solo se perturban las posiciones adquiridas.
    """
    if sigma < 0:
        raise DataError(f"sigma debe ser >= 0, recibido {sigma}")
    if sigma == 0:
        return ksp

    rng = np.random.default_rng(seed)
    shape = ksp.samples.shape
    noise = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) * (sigma / np.sqrt(2))
    logger.debug(f"Ruido agregado: sigma={sigma}, semilla={seed}")
    return KSpaceData(ksp.samples + noise * ksp.mask.acquired, ksp.grid, ksp.mask)
