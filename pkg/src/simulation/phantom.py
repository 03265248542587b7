# -*- coding: utf-8 -*-
"""
Fantoma Shepp-Logan (versión modificada de 10 elipses) como rho de referencia.
"""

from __future__ import annotations

from typing import Tuple

import numpy as np

from config.settings import SIMULATION_CONFIG
from src.core.fourier import image_coordinates
from src.core.types import ComplexImage
from src.utils.errors import DataError

# (intensidad, semieje a, semieje b, x0, y0, ángulo en grados) sobre [-1, 1]^2.
# Intensidades modificadas para mejor contraste: el resultado queda en [0, 1].
SHEPP_LOGAN_ELLIPSES: Tuple[Tuple[float, ...], ...] = (
    (1.0, 0.6900, 0.9200, 0.00, 0.0000, 0.0),
    (-0.8, 0.6624, 0.8740, 0.00, -0.0184, 0.0),
    (-0.2, 0.1100, 0.3100, 0.22, 0.0000, -18.0),
    (-0.2, 0.1600, 0.4100, -0.22, 0.0000, 18.0),
    (0.1, 0.2100, 0.2500, 0.00, 0.3500, 0.0),
    (0.1, 0.0460, 0.0460, 0.00, 0.1000, 0.0),
    (0.1, 0.0460, 0.0460, 0.00, -0.1000, 0.0),
    (0.1, 0.0460, 0.0230, -0.08, -0.6050, 0.0),
    (0.1, 0.0230, 0.0230, 0.00, -0.6060, 0.0),
    (0.1, 0.0230, 0.0460, 0.06, -0.6050, 0.0),
)


def normalized_coordinates(n_x: int, n_y: int) -> Tuple[np.ndarray, np.ndarray]:
    """Centros de píxel en [-1, 1) con el origen en el índice n // 2."""
    return image_coordinates((n_x, n_y), (2.0 / n_x, 2.0 / n_y))


def ellipse_membership(x: np.ndarray, y: np.ndarray, ellipse: Tuple[float, ...]) -> np.ndarray:
    _, a, b, x0, y0, phi_deg = ellipse
    phi = np.deg2rad(phi_deg)
    xr = (x - x0) * np.cos(phi) + (y - y0) * np.sin(phi)
    yr = -(x - x0) * np.sin(phi) + (y - y0) * np.cos(phi)
    return (xr / a) ** 2 + (yr / b) ** 2 <= 1.0


def shepp_logan(n_x: int, n_y: int, fov: Tuple[float, float] | None = None) -> ComplexImage:
    """Fantoma real no negativo con soporte estrictamente interior."""
    min_size = SIMULATION_CONFIG["min_phantom_size"]
    if n_x < min_size or n_y < min_size:
        raise DataError(f"El fantoma requiere al menos {min_size}x{min_size}, recibido {n_x}x{n_y}")
    fov = fov or SIMULATION_CONFIG["fov"]

    x, y = normalized_coordinates(n_x, n_y)
    rho = np.zeros((n_x, n_y))
    for ellipse in SHEPP_LOGAN_ELLIPSES:
        rho[ellipse_membership(x, y, ellipse)] += ellipse[0]

    # residuos de redondeo de las sumas (1 - 0.8 - 0.2)
    rho = np.clip(rho, 0.0, 1.0)
    return ComplexImage(rho.astype(np.complex128), (fov[0] / n_x, fov[1] / n_y))
