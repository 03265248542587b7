# -*- coding: utf-8 -*-
"""
Calibración AUTO-SMASH sobre líneas ACS completas en k_y.

Para cada desplazamiento m, n^(m) combina las bobinas en la línea k_y de
modo que sum_j n_j^(m) S_j(k_x, k_y) estime el compuesto en k_y - m.
"""

from __future__ import annotations

from typing import Optional, Tuple

import numpy as np
from loguru import logger

from src.calibration.grappa import solve_weights
from src.core.types import AutoSmashWeights, KSpaceData
from src.utils.errors import DataError, UsageError


def assemble_autosmash_system(
    acs: np.ndarray, line: int, m: int, n0: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """acs: líneas consecutivas [J x n_kx x L]; line: índice local dentro de acs.

    Sigma [n_kx x J] = señales por bobina en la línea; b = compuesto de la línea line - m.
    """
    acs = np.asarray(acs)
    if acs.ndim != 3:
        raise DataError(f"Las líneas ACS deben ser [J x n_kx x L], recibido {acs.shape}")
    L = acs.shape[2]
    if not (0 <= line < L and 0 <= line - m < L):
        raise DataError(f"Faltan líneas ACS para k_y={line} y k_y-m={line - m}")
    n0 = np.asarray(n0)
    if n0.shape != (acs.shape[0],):
        raise DataError(f"n0 debe tener {acs.shape[0]} componentes")
    sigma = acs[:, :, line].T
    b = acs[:, :, line - m].T @ n0
    return sigma, b


def acs_block(data: KSpaceData) -> Tuple[np.ndarray, int]:
    """Bloque contiguo más largo de líneas k_y completas que contiene DC.

    Devuelve (líneas [J x n_kx x L], índice k_y de la primera línea).
    """
    full = data.mask.acquired.all(axis=0)
    center = data.grid.n_ky // 2
    if not full[center]:
        raise DataError("La línea DC no está completamente adquirida: no hay ACS")
    lo = center
    while lo > 0 and full[lo - 1]:
        lo -= 1
    hi = center
    while hi < data.grid.n_ky - 1 and full[hi + 1]:
        hi += 1
    return data.samples[:, :, lo : hi + 1], lo


def calibrate_autosmash(
    data: KSpaceData, M: int, n0: Optional[np.ndarray] = None, lam: float = 0.0
) -> AutoSmashWeights:
    """Apila los sistemas de todas las parejas de líneas ACS y resuelve n^(1..M-1)."""
    if M < 1:
        raise UsageError(f"Factor de reducción inválido: M={M}")
    J = data.coil_count
    n0 = np.ones(J, dtype=np.complex128) if n0 is None else np.asarray(n0, dtype=np.complex128)
    acs, _ = acs_block(data)
    L = acs.shape[2]
    if M > 1 and L <= M - 1:
        raise DataError(f"Se requieren más de {M - 1} líneas ACS, hay {L}")

    nm, residuals = {}, {}
    for m in range(1, M):
        systems = [assemble_autosmash_system(acs, line, m, n0) for line in range(m, L)]
        sigma = np.concatenate([s for s, _ in systems], axis=0)
        b = np.concatenate([rhs for _, rhs in systems])
        sol = solve_weights(sigma, b, lam)
        nm[m] = sol.N[:, 0]
        residuals[m] = sol.residual_rel
        logger.debug(f"AUTO-SMASH m={m}: {len(systems)} líneas, residuo {sol.residual_rel:.3e}")
    return AutoSmashWeights(n0, nm, residuals)
