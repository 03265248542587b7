# -*- coding: utf-8 -*-
"""
Calibración GRAPPA: un sistema de mínimos cuadrados por kernel sobre la ACR.

S  [eta_x*eta_y x J*D_k]: fila = una ubicación del objetivo dentro de la ACR,
   columna d*J + j = muestra de la bobina j en objetivo + desplazamiento d.
s_acr [eta_x*eta_y x J]: muestras en el objetivo.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from scipy.linalg import lstsq, qr, solve_triangular

from config.settings import CALIBRATION_CONFIG
from src.core.types import CalibrationWeights, KernelPattern
from src.utils.errors import DataError, NumericalError


def placement_range(acr_shape: Tuple[int, int], kernel: KernelPattern) -> Tuple[slice, slice]:
    """Slices de las posiciones del objetivo para las que todo el kernel cae en la ACR."""
    w, h = acr_shape
    u_min, u_max, v_min, v_max = kernel.bounding_box
    eta_x = w - (u_max - u_min)
    eta_y = h - (v_max - v_min)
    if eta_x < 1 or eta_y < 1:
        raise DataError(
            f"El kernel ({u_max - u_min + 1}x{v_max - v_min + 1}) no cabe en la ACR {w}x{h}"
        )
    return slice(-u_min, -u_min + eta_x), slice(-v_min, -v_min + eta_y)


def assemble_grappa_system(acr: np.ndarray, kernel: KernelPattern) -> Tuple[np.ndarray, np.ndarray]:
    acr = np.asarray(acr)
    if acr.ndim != 3:
        raise DataError(f"La ACR debe ser [J x w x h], recibido {acr.shape}")
    J = acr.shape[0]
    sx, sy = placement_range(acr.shape[1:], kernel)

    targets = acr[:, sx, sy]
    s_acr = targets.reshape(J, -1).T

    columns = []
    for u, v in kernel.displacements:
        block = acr[:, sx.start + u : sx.stop + u, sy.start + v : sy.stop + v]
        columns.append(block.reshape(J, -1).T)
    if columns:
        S = np.concatenate(columns, axis=1)
    else:
        S = np.zeros((s_acr.shape[0], 0), dtype=acr.dtype)
    return S, s_acr


def default_lambda(S: np.ndarray) -> float:
    """lambda = escala * ||S||_F / sqrt(columnas)."""
    if S.size == 0:
        return 0.0
    return CALIBRATION_CONFIG["tikhonov_scale"] * np.linalg.norm(S) / np.sqrt(S.shape[1])


def relative_residual(S: np.ndarray, N: np.ndarray, s_acr: np.ndarray) -> float:
    denom = np.linalg.norm(s_acr)
    if denom == 0:
        return float(np.linalg.norm(S @ N))
    return float(np.linalg.norm(S @ N - s_acr) / denom)


def solve_weights(
    S: np.ndarray,
    s_acr: np.ndarray,
    lam: Optional[float] = None,
    kernel: Optional[KernelPattern] = None,
) -> CalibrationWeights:
    """N = argmin ||S N - s_acr||_F^2 + lam^2 ||N||_F^2.

    lam=0: SVD (norma mínima si S no tiene rango completo).
    lam>0: QR del sistema apilado [S; lam I].
    lam=None: default_lambda(S).
    """
    S = np.asarray(S)
    s_acr = np.asarray(s_acr)
    if s_acr.ndim == 1:
        s_acr = s_acr[:, None]
    if S.ndim != 2 or S.shape[0] == 0 or S.shape[1] == 0:
        raise DataError(f"Sistema de calibración vacío: S {S.shape}")
    if S.shape[0] != s_acr.shape[0]:
        raise DataError(f"Filas incompatibles: S {S.shape}, s_acr {s_acr.shape}")
    if not (np.all(np.isfinite(S)) and np.all(np.isfinite(s_acr))):
        raise DataError("El sistema de calibración contiene valores no finitos")

    lam = default_lambda(S) if lam is None else float(lam)
    if lam < 0:
        raise DataError(f"lambda debe ser >= 0, recibido {lam}")

    if lam == 0:
        N, *_ = lstsq(S, s_acr, lapack_driver="gelsd")
    else:
        n = S.shape[1]
        stacked = np.vstack([S, lam * np.eye(n, dtype=S.dtype)])
        rhs = np.vstack([s_acr, np.zeros((n, s_acr.shape[1]), dtype=s_acr.dtype)])
        Q, R = qr(stacked, mode="economic")
        N = solve_triangular(R, Q.conj().T @ rhs)

    if not np.all(np.isfinite(N)):
        raise NumericalError("La solución de mínimos cuadrados no es finita")
    return CalibrationWeights(N, relative_residual(S, N, s_acr), kernel, lam)


def calibrate_grappa(
    acr: np.ndarray, kernels: Sequence[KernelPattern], lam: Optional[float] = None
) -> List[CalibrationWeights]:
    """Resuelve cada kernel interpolable, en el orden recibido."""
    weights = []
    for kernel in kernels:
        if not kernel.interpolatable:
            continue
        S, s_acr = assemble_grappa_system(acr, kernel)
        w = solve_weights(S, s_acr, lam, kernel)
        logger.debug(
            f"Kernel D_k={kernel.size}: S {S.shape}, residuo relativo {w.residual_rel:.3e}"
        )
        weights.append(w)
    return weights


def stack_weights(weights: Sequence[CalibrationWeights]) -> np.ndarray:
    """[K x J*D_max x J], filas sobrantes en 0, para el contenedor de tensores."""
    if not weights:
        raise DataError("No hay pesos para serializar")
    J = weights[0].N.shape[1]
    rows = max(w.N.shape[0] for w in weights)
    out = np.zeros((len(weights), rows, J), dtype=np.complex128)
    for k, w in enumerate(weights):
        out[k, : w.N.shape[0]] = w.N
    return out


def unstack_weights(tensor: np.ndarray, kernels: Sequence[KernelPattern]) -> List[CalibrationWeights]:
    """Inverso de stack_weights dados los kernels recalculados de la misma máscara."""
    interpolatable = [k for k in kernels if k.interpolatable]
    if tensor.ndim != 3 or tensor.shape[0] != len(interpolatable):
        raise DataError(
            f"El tensor de pesos {tensor.shape} no corresponde a {len(interpolatable)} kernels"
        )
    J = tensor.shape[2]
    weights = []
    for k, kernel in enumerate(interpolatable):
        rows = kernel.size * J
        if rows > tensor.shape[1]:
            raise DataError("El tensor de pesos tiene menos filas que el kernel")
        weights.append(CalibrationWeights(tensor[k, :rows].copy(), 0.0, kernel))
    return weights
