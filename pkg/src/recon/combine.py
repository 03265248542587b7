# -*- coding: utf-8 -*-
"""Combinación de bobinas y métrica de calidad."""

from __future__ import annotations

import numpy as np
from loguru import logger

from config.settings import COMBINE_CONFIG
from src.core.fourier import idft2
from src.utils.errors import DataError, UsageError


def rsos_combine(per_coil_images: np.ndarray) -> np.ndarray:
    """sqrt(sum_j |I_j|^2) por píxel."""
    arr = np.asarray(per_coil_images)
    return np.sqrt(np.sum(np.abs(arr) ** 2, axis=0))


def coil_images(kspace: np.ndarray) -> np.ndarray:
    return idft2(kspace)


def rsos_image(kspace: np.ndarray) -> np.ndarray:
    return rsos_combine(coil_images(kspace))


def estimate_sensitivities(
    per_coil_images: np.ndarray, support_fraction: float = COMBINE_CONFIG["support_fraction"]
) -> np.ndarray:
    """Mapas I_j / rSoS sobre el soporte rSoS > fracción * max; 0 fuera de él."""
    if not 0.0 <= support_fraction < 1.0:
        raise UsageError(f"Fracción de soporte inválida: {support_fraction}")
    images = np.asarray(per_coil_images)
    if images.ndim != 3:
        raise DataError(f"Se esperaban imágenes [J x n_x x n_y], recibido {images.shape}")
    combined = rsos_combine(images)
    peak = combined.max()
    if peak == 0:
        raise DataError("Imagen nula: no hay soporte para estimar sensibilidades")
    support = combined > support_fraction * peak
    maps = np.zeros_like(images, dtype=np.complex128)
    maps[:, support] = images[:, support] / combined[support]
    logger.debug(f"Sensibilidades estimadas en {int(support.sum())} píxeles de soporte")
    return maps


def nrmse(recon: np.ndarray, reference: np.ndarray) -> float:
    recon = np.asarray(recon)
    reference = np.asarray(reference)
    if recon.shape != reference.shape:
        raise DataError(f"Dimensiones distintas: {recon.shape} vs {reference.shape}")
    denom = np.linalg.norm(reference)
    if denom == 0:
        raise DataError("La referencia es nula: NRMSE indefinido")
    return float(np.linalg.norm(recon - reference) / denom)
