# -*- coding: utf-8 -*-
"""
Calibración SPIRiT: cada bobina se predice desde todas las derivaciones del
kernel k_w x k_h de todas las bobinas, salvo su propia muestra central.
"""

from __future__ import annotations

from typing import Optional, Tuple

import numpy as np
from loguru import logger

from src.calibration.grappa import assemble_grappa_system, solve_weights
from src.core.types import KernelPattern, SpiritKernel
from src.sampling.kernels import window_offsets
from src.utils.errors import UsageError


def check_kernel_size(kernel_size: Tuple[int, int], minimum: int = 1) -> Tuple[int, int]:
    kw, kh = int(kernel_size[0]), int(kernel_size[1])
    if kw % 2 == 0 or kh % 2 == 0 or kw < minimum or kh < minimum:
        raise UsageError(f"El kernel debe ser impar y >= {minimum}, recibido {kw}x{kh}")
    return kw, kh


def spirit_calibrate(
    acr: np.ndarray, kernel_size: Tuple[int, int] = (3, 3), lam: Optional[float] = None
) -> SpiritKernel:
    kw, kh = check_kernel_size(kernel_size, minimum=3)
    acr = np.asarray(acr)
    J = acr.shape[0]
    cw, ch = kw // 2, kh // 2

    offsets = window_offsets((cw, ch))
    full = KernelPattern(tuple(offsets), np.zeros((0, 2), dtype=int), (cw, ch))
    S, s_acr = assemble_grappa_system(acr, full)
    # columnas centrales al final: índice len(offsets) * J + i
    A = np.concatenate([S, s_acr], axis=1)
    taps = offsets + [(0, 0)]

    weights = np.zeros((J, J, kw, kh), dtype=np.complex128)
    residuals = np.zeros(J)
    for j in range(J):
        keep = np.ones(A.shape[1], dtype=bool)
        keep[len(offsets) * J + j] = False
        sol = solve_weights(A[:, keep], s_acr[:, j], lam)
        coeffs = np.zeros(A.shape[1], dtype=np.complex128)
        coeffs[keep] = sol.N[:, 0]
        for t, (u, v) in enumerate(taps):
            weights[j, :, cw + u, ch + v] = coeffs[t * J : (t + 1) * J]
        residuals[j] = sol.residual_rel

    logger.debug(f"SPIRiT {kw}x{kh}: residuo relativo máximo {residuals.max():.3e}")
    return SpiritKernel(weights, (kw, kh), residuals)
