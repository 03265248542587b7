# -*- coding: utf-8 -*-
"""
Pipelines completos sobre datos totalmente muestreados:
máscara retrospectiva -> ACR -> kernels -> calibración -> reconstrucción.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from config.settings import SAMPLING_CONFIG, SPIRIT_CONFIG
from src.calibration.autosmash import calibrate_autosmash
from src.calibration.grappa import calibrate_grappa
from src.calibration.spirit import check_kernel_size, spirit_calibrate
from src.core.fourier import idft2
from src.core.types import (
    AutoSmashWeights,
    CalibrationWeights,
    KSpaceData,
    ReconResult,
    SamplingMask,
    SpiritKernel,
)
from src.recon.autosmash import autosmash_reconstruct
from src.recon.grappa import grappa_reconstruct
from src.recon.spirit import spirit_reconstruct
from src.sampling.kernels import enumerate_kernels
from src.sampling.masks import acr_extract
from src.utils.errors import DataError


def kernel_threshold(kernel_size: int) -> Tuple[int, int]:
    """Kernel k x k -> umbral de norma infinito (k // 2, k // 2)."""
    kw, kh = check_kernel_size((kernel_size, kernel_size), minimum=3)
    return kw // 2, kh // 2


def undersample(full: KSpaceData, mask: SamplingMask) -> Tuple[KSpaceData, np.ndarray]:
    if mask.acr_rect is None:
        raise DataError("La máscara no declara una ACR para calibrar")
    data = full.undersample(mask)
    return data, acr_extract(data, mask.acr_rect)


def run_grappa(
    full: KSpaceData,
    mask: SamplingMask,
    kernel_size: int = 3,
    lam: Optional[float] = None,
    boundary: str = SAMPLING_CONFIG["boundary"],
    weights: Optional[Sequence[CalibrationWeights]] = None,
) -> Tuple[ReconResult, List[CalibrationWeights]]:
    threshold = kernel_threshold(kernel_size)
    data, acr = undersample(full, mask)
    if weights is None:
        kernels = enumerate_kernels(data.mask, threshold, boundary)
        weights = calibrate_grappa(acr, kernels, lam)
    logger.info(f"GRAPPA: {len(weights)} kernels calibrados, umbral {threshold}")
    return grappa_reconstruct(data, weights, threshold, boundary), list(weights)


def run_spirit(
    full: KSpaceData,
    mask: SamplingMask,
    kernel_size: int = 3,
    lam: Optional[float] = None,
    epsilon: float = SPIRIT_CONFIG["epsilon"],
    max_iter: Optional[int] = None,
    tol: float = SPIRIT_CONFIG["tol"],
    boundary: str = SAMPLING_CONFIG["boundary"],
    kernel: Optional[SpiritKernel] = None,
) -> Tuple[ReconResult, SpiritKernel]:
    data, acr = undersample(full, mask)
    if kernel is None:
        kernel = spirit_calibrate(acr, (kernel_size, kernel_size), lam)
    result = spirit_reconstruct(data, kernel, epsilon, max_iter, tol, boundary)
    return result, kernel


def run_autosmash(
    full: KSpaceData,
    mask: SamplingMask,
    n0: Optional[np.ndarray] = None,
    lam: float = 0.0,
    weights: Optional[AutoSmashWeights] = None,
) -> Tuple[ReconResult, AutoSmashWeights]:
    """M se deduce de la máscara (R_y de las líneas fuera de la ACS)."""
    data = full.undersample(mask)
    if weights is None:
        weights = calibrate_autosmash(data, reduction_along_ky(mask), n0, lam)
    composite = autosmash_reconstruct(data, weights)
    image = idft2(composite)
    result = ReconResult(
        kspace_full=composite[None],
        image=np.abs(image),
        per_coil_images=image[None],
    )
    return result, weights


def reduction_along_ky(mask: SamplingMask) -> int:
    """Mayor separación entre líneas k_y adquiridas consecutivas (circular)."""
    lines = np.flatnonzero(mask.acquired.all(axis=0))
    if lines.size == 0:
        raise DataError("No hay líneas k_y completas")
    n_ky = mask.shape[1]
    gaps = np.diff(np.append(lines, lines[0] + n_ky))
    return int(gaps.max())
