# -*- coding: utf-8 -*-
"""
Sensibilidades de bobina:
- Birdcage simulada con Biot-Savart (cada elemento es un lazo rectangular
  sobre el cilindro, discretizado en segmentos rectos).
- Bobinas "diseñadas" C_j = a_j exp(i(u_j dk_x x + v_j dk_y y)), que cumplen
  con igualdad la combinación lineal exponencial que asume GRAPPA.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from scipy.linalg import svdvals

from config.settings import BIRDCAGE_CONFIG, SIMULATION_CONFIG
from src.core.fourier import image_coordinates
from src.core.types import CoilSensitivities
from src.utils.errors import DataError, UsageError

MU0_OVER_4PI = 1e-7  # [T m / A]

PLANES = ("axial", "sagittal")


@dataclass(frozen=True)
class BirdcageSpec:
    elements: int = BIRDCAGE_CONFIG["elements"]
    coil_radius: float = BIRDCAGE_CONFIG["coil_radius"]
    element_length: float = BIRDCAGE_CONFIG["element_length"]
    plane: str = BIRDCAGE_CONFIG["plane"]
    fov: Tuple[float, float] = SIMULATION_CONFIG["fov"]
    grid: Tuple[int, int] = (SIMULATION_CONFIG["grid"], SIMULATION_CONFIG["grid"])
    segments_per_element: int = BIRDCAGE_CONFIG["segments_per_element"]
    arc_fraction: float = BIRDCAGE_CONFIG["arc_fraction"]

    def __post_init__(self):
        if self.elements < 2:
            raise DataError("La birdcage requiere al menos 2 elementos")
        if self.coil_radius <= 0 or self.element_length <= 0:
            raise DataError("Geometría degenerada: radio y largo deben ser > 0")
        if self.segments_per_element < 8:
            raise DataError("Se requieren al menos 8 segmentos por elemento")
        if self.plane not in PLANES:
            raise DataError(f"Plano desconocido: {self.plane}")
        if not 0 < self.arc_fraction <= 1:
            raise DataError("arc_fraction debe estar en (0, 1]")


@dataclass(frozen=True)
class DesignedCoilSpec:
    modes: Tuple[Tuple[int, int], ...]
    amplitudes: Optional[Tuple[complex, ...]] = None

    def __post_init__(self):
        modes = tuple((int(u), int(v)) for u, v in self.modes)
        if len(modes) == 0:
            raise DataError("Se requiere al menos un modo")
        if len(set(modes)) != len(modes):
            raise DataError("Los modos de las bobinas diseñadas deben ser distintos")
        object.__setattr__(self, "modes", modes)
        amps = self.amplitudes
        if amps is None:
            amps = tuple(1.0 + 0j for _ in modes)
        if len(amps) != len(modes) or any(a == 0 for a in amps):
            raise DataError("Se requiere una amplitud no nula por modo")
        object.__setattr__(self, "amplitudes", tuple(complex(a) for a in amps))

    @property
    def coil_count(self) -> int:
        return len(self.modes)


# ---------------------------
# Bobinas diseñadas
# ---------------------------
def mode_grid(size: int) -> Tuple[Tuple[int, int], ...]:
    """Modos simétricos {-s..s}^2 para una grilla size x size (size impar)."""
    if size < 1 or size % 2 == 0:
        raise UsageError(f"La grilla de modos debe ser impar, recibido {size}")
    s = size // 2
    return tuple((u, v) for u in range(-s, s + 1) for v in range(-s, s + 1))


def parse_modes(text: str) -> Tuple[Tuple[int, int], ...]:
    """'3x3' -> {-1,0,1}^2; 'x3' -> solo u en {-1,0,1}; 'y4' -> v en 0..3."""
    text = (text or "").strip().lower()
    m = re.fullmatch(r"(\d+)x(\d+)", text)
    if m:
        a, b = int(m.group(1)), int(m.group(2))
        if a != b:
            raise UsageError(f"Solo grillas cuadradas de modos: {text}")
        return mode_grid(a)
    m = re.fullmatch(r"([xy])(\d+)", text)
    if m:
        n = int(m.group(2))
        if n < 1:
            raise UsageError(f"Cantidad de modos inválida: {text}")
        offs = range(n) if n % 2 == 0 else range(-(n // 2), n // 2 + 1)
        if m.group(1) == "x":
            return tuple((u, 0) for u in offs)
        return tuple((0, v) for v in offs)
    raise UsageError(f"Formato de modos desconocido: '{text}' (usa 3x3, x3 o y4)")


def designed_sensitivities(spec: DesignedCoilSpec, grid: Tuple[int, int]) -> CoilSensitivities:
    """C_j = a_j exp(2 pi i (u_j (i_x - c_x)/n_x + v_j (i_y - c_y)/n_y))."""
    nx, ny = grid
    ix, iy = image_coordinates((nx, ny), (1.0 / nx, 1.0 / ny))
    maps = np.empty((spec.coil_count, nx, ny), dtype=np.complex128)
    for j, ((u, v), a) in enumerate(zip(spec.modes, spec.amplitudes)):
        maps[j] = a * np.exp(2j * np.pi * (u * ix + v * iy))
    return CoilSensitivities(maps)


def verify_designed_exactness(sens: CoilSensitivities, spec: DesignedCoilSpec) -> float:
    """Error máximo de exp(i d.r) C_l = (a_l / a_j') C_j' sobre todos los pares en el set."""
    nx, ny = sens.grid_shape
    ix, iy = image_coordinates((nx, ny), (1.0 / nx, 1.0 / ny))
    index = {mode: j for j, mode in enumerate(spec.modes)}
    worst = 0.0
    for l, (ul, vl) in enumerate(spec.modes):
        for (uj, vj), j in index.items():
            if j == l:
                continue
            u, v = uj - ul, vj - vl
            lhs = np.exp(2j * np.pi * (u * ix + v * iy)) * sens.maps[l]
            rhs = spec.amplitudes[l] / spec.amplitudes[j] * sens.maps[j]
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def uniform_coil(grid: Tuple[int, int]) -> CoilSensitivities:
    """Una sola bobina de sensibilidad constante (sin imagen paralela posible)."""
    return CoilSensitivities(np.ones((1, *grid), dtype=np.complex128))


# ---------------------------
# Birdcage por Biot-Savart
# ---------------------------
def birdcage_element_paths(spec: BirdcageSpec) -> List[np.ndarray]:
    """Vértices cerrados [S+1 x 3] del lazo de cada elemento.

    Cada lazo: peldaño ascendente en phi - w/2, arco superior, peldaño
    descendente en phi + w/2 y arco inferior de regreso.
    """
    n_arc = max(1, spec.segments_per_element // 4)
    n_rung = max(1, spec.segments_per_element // 2 - n_arc)
    half_len = spec.element_length / 2
    width = spec.arc_fraction * 2 * np.pi / spec.elements
    R = spec.coil_radius

    paths = []
    for j in range(spec.elements):
        phi = 2 * np.pi * j / spec.elements
        a, b = phi - width / 2, phi + width / 2
        z_up = np.linspace(-half_len, half_len, n_rung + 1)
        arc_top = np.linspace(a, b, n_arc + 1)[1:]
        z_down = np.linspace(half_len, -half_len, n_rung + 1)[1:]
        arc_bot = np.linspace(b, a, n_arc + 1)[1:]

        pts = [np.stack([np.full_like(z_up, R * np.cos(a)), np.full_like(z_up, R * np.sin(a)), z_up], axis=1)]
        pts.append(np.stack([R * np.cos(arc_top), R * np.sin(arc_top), np.full_like(arc_top, half_len)], axis=1))
        pts.append(np.stack([np.full_like(z_down, R * np.cos(b)), np.full_like(z_down, R * np.sin(b)), z_down], axis=1))
        pts.append(np.stack([R * np.cos(arc_bot), R * np.sin(arc_bot), np.full_like(arc_bot, -half_len)], axis=1))
        paths.append(np.concatenate(pts, axis=0))
    return paths


def transverse_field(path: np.ndarray, points: np.ndarray) -> np.ndarray:
    """B_x - i B_y en cada punto [P x 3] para corriente unitaria por el lazo.

    Forma cerrada del segmento finito:
    B = mu0/4pi (r1 x r2)(|r1| + |r2|) / (|r1||r2|(|r1||r2| + r1.r2)).
    """
    starts, ends = path[:-1], path[1:]
    r1 = points[:, None, :] - starts[None, :, :]
    r2 = points[:, None, :] - ends[None, :, :]
    n1 = np.linalg.norm(r1, axis=-1)
    n2 = np.linalg.norm(r2, axis=-1)
    denom = n1 * n2 * (n1 * n2 + np.sum(r1 * r2, axis=-1))
    with np.errstate(divide="ignore", invalid="ignore"):
        factor = np.where(denom > 0, (n1 + n2) / denom, 0.0)
    b = MU0_OVER_4PI * np.cross(r1, r2) * factor[..., None]
    b = b.sum(axis=1)
    return b[:, 0] - 1j * b[:, 1]


def plane_points(spec: BirdcageSpec) -> np.ndarray:
    """Puntos 3D [nx*ny x 3] del plano de imagen.

    axial: (h, v, 0). sagital: (0, h, v), el eje vertical de la imagen
    corre sobre el eje z de la bobina.
    """
    nx, ny = spec.grid
    h, v = image_coordinates((nx, ny), (spec.fov[0] / nx, spec.fov[1] / ny))
    h, v = h.ravel(), v.ravel()
    zero = np.zeros_like(h)
    if spec.plane == "axial":
        return np.stack([h, v, zero], axis=1)
    return np.stack([zero, h, v], axis=1)


def birdcage_sensitivities(spec: BirdcageSpec, chunk: int = 4096) -> CoilSensitivities:
    """Mapas complejos B_x - i B_y de cada elemento, normalizados a máximo 1."""
    nx, ny = spec.grid
    points = plane_points(spec)
    paths = birdcage_element_paths(spec)
    logger.debug(
        f"Biot-Savart: {spec.elements} elementos, {len(paths[0]) - 1} segmentos, "
        f"plano {spec.plane}, grilla {nx}x{ny}"
    )

    maps = np.empty((spec.elements, nx * ny), dtype=np.complex128)
    for j, path in enumerate(paths):
        for start in range(0, points.shape[0], chunk):
            maps[j, start:start + chunk] = transverse_field(path, points[start:start + chunk])

    peak = np.max(np.abs(maps))
    if peak == 0 or not np.isfinite(peak):
        raise DataError("El campo simulado es nulo o no finito")
    return CoilSensitivities((maps / peak).reshape(spec.elements, nx, ny))


# ---------------------------
# Diagnóstico de condición por línea
# ---------------------------
def line_condition_number(sens: CoilSensitivities, line: str, index: Optional[int] = None) -> float:
    """sigma_max / sigma_min de la matriz [n x J] de sensibilidades sobre una línea.

    Línea horizontal: varía x con y fijo; vertical: varía y con x fijo.
    Rango deficiente (o línea nula) -> inf.
    """
    nx, ny = sens.grid_shape
    if line == "horizontal":
        index = ny // 2 if index is None else index
        if not 0 <= index < ny:
            raise DataError(f"Índice de línea fuera de rango: {index}")
        matrix = sens.maps[:, :, index].T
    elif line == "vertical":
        index = nx // 2 if index is None else index
        if not 0 <= index < nx:
            raise DataError(f"Índice de línea fuera de rango: {index}")
        matrix = sens.maps[:, index, :].T
    else:
        raise UsageError(f"Línea desconocida: {line}")

    s = svdvals(matrix)
    if s.size == 0 or s[0] == 0:
        return float("inf")
    tol = s[0] * max(matrix.shape) * np.finfo(float).eps
    if s[-1] <= tol:
        return float("inf")
    return float(s[0] / s[-1])


def line_condition_report(sens: CoilSensitivities) -> dict:
    """Números de condición de las líneas centrales horizontal y vertical."""
    return {
        "horizontal": line_condition_number(sens, "horizontal"),
        "vertical": line_condition_number(sens, "vertical"),
    }


def random_amplitudes(count: int, seed: int) -> Sequence[complex]:
    rng = np.random.default_rng(seed)
    mags = rng.uniform(0.5, 1.5, count)
    phases = rng.uniform(-np.pi, np.pi, count)
    return tuple(mags * np.exp(1j * phases))
