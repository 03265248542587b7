# -*- coding: utf-8 -*-
"""
Métrica direccional de exactitud.

Con la ACR totalmente muestreada se calibran dos kernels de prueba, uno
puramente horizontal y otro puramente vertical, y se reporta el residuo
relativo de cada sistema. Un residuo grande indica que submuestrear en esa
dirección no permite una buena reconstrucción.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np
from loguru import logger

from config.settings import METRIC_CONFIG, SAMPLING_CONFIG
from src.calibration.grappa import assemble_grappa_system, solve_weights
from src.calibration.patterns import metric_test_kernels
from src.core.types import KSpaceData
from src.recon.combine import nrmse, rsos_image
from src.recon.pipeline import run_grappa
from src.sampling.kernels import kernel_from_pattern
from src.sampling.masks import acr_extract, directional_mask
from src.utils.errors import DataError, UsageError

SMALL, LARGE = "small", "large"


@dataclass(frozen=True)
class AccuracyReport:
    kernel_size: Tuple[int, int]
    err_horizontal: float
    err_vertical: float
    threshold: float = METRIC_CONFIG["threshold"]
    label_h: str = SMALL
    label_v: str = SMALL

    @property
    def kernel_label(self) -> str:
        return f"{self.kernel_size[0]}x{self.kernel_size[1]}"


@dataclass(frozen=True)
class ConsistencyRecord:
    report: AccuracyReport
    nrmse_h: float
    nrmse_v: float
    reduction: int
    consistent: bool


def _label(error: float, threshold: float) -> str:
    return LARGE if error > threshold else SMALL


def classify_direction(report: AccuracyReport, threshold: float = METRIC_CONFIG["threshold"]) -> AccuracyReport:
    """'large' sii error > threshold (estricto)."""
    if threshold <= 0:
        raise UsageError(f"El umbral debe ser > 0, recibido {threshold}")
    return replace(
        report,
        threshold=threshold,
        label_h=_label(report.err_horizontal, threshold),
        label_v=_label(report.err_vertical, threshold),
    )


def directional_metric(
    acr: np.ndarray,
    kernel_size: Tuple[int, int] = (3, 3),
    threshold: float = METRIC_CONFIG["threshold"],
) -> AccuracyReport:
    acr = np.asarray(acr)
    if acr.ndim != 3:
        raise DataError(f"La ACR debe ser [J x w x h], recibido {acr.shape}")
    k_h, k_v = metric_test_kernels(kernel_size)
    _, w, h = acr.shape
    if w <= kernel_size[0] or h <= kernel_size[1]:
        raise DataError(f"La ACR {w}x{h} es demasiado chica para el kernel {kernel_size}")

    errors = []
    for pattern in (k_h, k_v):
        S, s_acr = assemble_grappa_system(acr, kernel_from_pattern(pattern))
        errors.append(solve_weights(S, s_acr, lam=0.0).residual_rel)

    report = AccuracyReport(tuple(kernel_size), errors[0], errors[1])
    logger.debug(f"Métrica {report.kernel_label}: horizontal {errors[0]:.4f}, vertical {errors[1]:.4f}")
    return classify_direction(report, threshold)


def is_consistent(report: AccuracyReport, nrmse_h: float, nrmse_v: float, quality_threshold: float) -> bool:
    """Etiquetas distintas: el orden de errores debe coincidir con el de NRMSE.
    Etiquetas iguales: ambas NRMSE del mismo lado del umbral de calidad (small = buena)."""
    if report.label_h != report.label_v:
        return (report.err_vertical > report.err_horizontal) == (nrmse_v > nrmse_h)
    if report.label_h == SMALL:
        return nrmse_h <= quality_threshold and nrmse_v <= quality_threshold
    return nrmse_h > quality_threshold and nrmse_v > quality_threshold


def metric_predicts_quality(
    dataset: KSpaceData,
    kernel_size: int = 3,
    R: int = 2,
    acr: Tuple[int, int] = (SAMPLING_CONFIG["acr"], SAMPLING_CONFIG["acr"]),
    threshold: float = METRIC_CONFIG["threshold"],
    quality_threshold: float = METRIC_CONFIG["quality_threshold"],
    lam: Optional[float] = None,
    boundary: str = SAMPLING_CONFIG["boundary"],
) -> ConsistencyRecord:
    """Métrica + GRAPPA en cada dirección a factor R, y comparación de órdenes."""
    if not dataset.mask.acquired.all():
        raise DataError("metric_predicts_quality requiere datos totalmente muestreados")

    full_acr = acr_extract(dataset, acr)
    report = directional_metric(full_acr, (kernel_size, kernel_size), threshold)
    reference = rsos_image(dataset.samples)

    scores = {}
    for direction in ("horizontal", "vertical"):
        mask = directional_mask(dataset.grid.shape, direction, R, acr)
        result, _ = run_grappa(dataset, mask, kernel_size, lam, boundary)
        scores[direction] = nrmse(result.image, reference)

    consistent = is_consistent(report, scores["horizontal"], scores["vertical"], quality_threshold)
    if not consistent:
        logger.warning(
            f"La métrica no predice la calidad: errores (h={report.err_horizontal:.3f}, "
            f"v={report.err_vertical:.3f}), NRMSE (h={scores['horizontal']:.3f}, v={scores['vertical']:.3f})"
        )
    return ConsistencyRecord(report, scores["horizontal"], scores["vertical"], R, consistent)

