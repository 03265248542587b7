# -*- coding: utf-8 -*-
"""
Tipos de dominio compartidos: imágenes complejas, grillas de k-space,
sensibilidades, datos multibobina, máscaras, kernels y pesos de calibración.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from src.utils.errors import DataError


def _require_finite(arr: np.ndarray, what: str) -> None:
    if not np.all(np.isfinite(arr)):
        raise DataError(f"{what} contiene valores no finitos (NaN/Inf)")


@dataclass(frozen=True)
class ComplexImage:
    """Grilla 2D compleja (densidad de espín rho o imagen de bobina)."""

    data: np.ndarray
    pixel_spacing: Tuple[float, float] = (1.0, 1.0)

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.complex128)
        if arr.ndim != 2 or min(arr.shape) < 1:
            raise DataError(f"ComplexImage requiere matriz 2D no vacía, recibido {arr.shape}")
        _require_finite(arr, "ComplexImage")
        object.__setattr__(self, "data", arr)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape


@dataclass(frozen=True)
class KSpaceGrid:
    """Grilla cartesiana centrada: DC en (n_kx // 2, n_ky // 2)."""

    n_kx: int
    n_ky: int
    dk: Tuple[float, float]
    centered: bool = True

    def __post_init__(self):
        if self.n_kx < 1 or self.n_ky < 1:
            raise DataError("KSpaceGrid requiere dimensiones >= 1")
        if self.dk[0] <= 0 or self.dk[1] <= 0:
            raise DataError("KSpaceGrid requiere dk > 0")

    @classmethod
    def for_image(cls, img: ComplexImage) -> "KSpaceGrid":
        nx, ny = img.shape
        dx, dy = img.pixel_spacing
        return cls(nx, ny, (2 * np.pi / (nx * dx), 2 * np.pi / (ny * dy)))

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.n_kx, self.n_ky)

    @property
    def center(self) -> Tuple[int, int]:
        return (self.n_kx // 2, self.n_ky // 2)


@dataclass(frozen=True)
class CoilSensitivities:
    """Pila de J mapas de sensibilidad complejos sobre la grilla de imagen."""

    maps: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.maps, dtype=np.complex128)
        if arr.ndim != 3 or arr.shape[0] < 1:
            raise DataError(f"CoilSensitivities requiere tensor [J x nx x ny], recibido {arr.shape}")
        _require_finite(arr, "CoilSensitivities")
        if not np.any(arr):
            raise DataError("Todas las sensibilidades son cero")
        object.__setattr__(self, "maps", arr)

    @property
    def coil_count(self) -> int:
        return self.maps.shape[0]

    @property
    def grid_shape(self) -> Tuple[int, int]:
        return self.maps.shape[1:]


@dataclass(frozen=True)
class SamplingMask:
    """Grilla booleana de adquisición con región de autocalibración opcional."""

    acquired: np.ndarray
    acr_rect: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        arr = np.asarray(self.acquired, dtype=bool)
        if arr.ndim != 2:
            raise DataError("SamplingMask requiere una matriz 2D")
        if not arr.any():
            raise DataError("SamplingMask sin muestras adquiridas")
        object.__setattr__(self, "acquired", arr)
        if self.acr_rect is not None:
            sx, sy = acr_slices(arr.shape, self.acr_rect)
            if not arr[sx, sy].all():
                raise DataError("La ACR declarada no está completamente adquirida")

    @property
    def shape(self) -> Tuple[int, int]:
        return self.acquired.shape

    @property
    def acquired_count(self) -> int:
        return int(self.acquired.sum())

    @classmethod
    def full(cls, shape: Tuple[int, int]) -> "SamplingMask":
        return cls(np.ones(shape, dtype=bool), None)


def acr_slices(shape: Tuple[int, int], acr: Tuple[int, int]) -> Tuple[slice, slice]:
    """Slices del rectángulo w x h centrado en el índice DC."""
    w, h = acr
    nx, ny = shape
    if w < 1 or h < 1 or w > nx or h > ny:
        raise DataError(f"ACR {w}x{h} no cabe en la grilla {nx}x{ny}")
    x0 = nx // 2 - w // 2
    y0 = ny // 2 - h // 2
    return slice(x0, x0 + w), slice(y0, y0 + h)


@dataclass
class KSpaceData:
    """Muestras multibobina [J x n_kx x n_ky]; lo no adquirido vale 0."""

    samples: np.ndarray
    grid: KSpaceGrid
    mask: SamplingMask

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.complex128)
        if self.samples.ndim != 3:
            raise DataError(f"KSpaceData requiere tensor [J x nx x ny], recibido {self.samples.shape}")
        if self.samples.shape[1:] != self.grid.shape or self.mask.shape != self.grid.shape:
            raise DataError("Dimensiones de muestras, grilla y máscara no coinciden")
        _require_finite(self.samples, "KSpaceData")
        if np.any(self.samples[:, ~self.mask.acquired]):
            raise DataError("Hay valores distintos de cero en posiciones no adquiridas")

    @property
    def coil_count(self) -> int:
        return self.samples.shape[0]

    @classmethod
    def fully_sampled(cls, samples: np.ndarray, grid: Optional[KSpaceGrid] = None) -> "KSpaceData":
        samples = np.asarray(samples, dtype=np.complex128)
        if grid is None:
            nx, ny = samples.shape[1:]
            grid = KSpaceGrid(nx, ny, (2 * np.pi / nx, 2 * np.pi / ny))
        return cls(samples, grid, SamplingMask.full(grid.shape))

    def undersample(self, mask: SamplingMask) -> "KSpaceData":
        """Submuestreo retrospectivo: anula lo que la máscara no adquiere."""
        if mask.shape != self.grid.shape:
            raise DataError("La máscara no coincide con la grilla")
        if np.any(mask.acquired & ~self.mask.acquired):
            raise DataError("La máscara pide muestras que no fueron adquiridas")
        return KSpaceData(self.samples * mask.acquired, self.grid, mask)


@dataclass(frozen=True)
class KernelPattern:
    """Clase de equivalencia de ubicaciones no adquiridas con igual vecindario.

    displacements: tuplas (u, v) desde el objetivo hacia muestras adquiridas.
    targets: arreglo [T x 2] de índices (i, j) del objetivo.
    """

    displacements: Tuple[Tuple[int, int], ...]
    targets: np.ndarray
    threshold: Tuple[int, int] = (1, 1)

    def __post_init__(self):
        for u, v in self.displacements:
            if (u, v) == (0, 0):
                raise DataError("(0, 0) no puede ser un desplazamiento")
            if abs(u) > self.threshold[0] or abs(v) > self.threshold[1]:
                raise DataError(f"Desplazamiento {(u, v)} fuera del umbral {self.threshold}")

    @property
    def size(self) -> int:
        return len(self.displacements)

    @property
    def interpolatable(self) -> bool:
        return len(self.displacements) > 0

    @property
    def bounding_box(self) -> Tuple[int, int, int, int]:
        """(u_min, u_max, v_min, v_max) incluyendo el objetivo (0, 0)."""
        us = [0] + [u for u, _ in self.displacements]
        vs = [0] + [v for _, v in self.displacements]
        return min(us), max(us), min(vs), max(vs)


@dataclass
class CalibrationWeights:
    """Matriz N [J*D_k x J] de un kernel, columnas ordenadas (desplazamiento, bobina)."""

    N: np.ndarray
    residual_rel: float
    kernel: Optional[KernelPattern] = None
    lam: float = 0.0

    def __post_init__(self):
        if self.residual_rel < 0:
            raise DataError("residual_rel debe ser >= 0")
        if self.kernel is not None and self.N.shape[0] != self.kernel.size * self.N.shape[1]:
            raise DataError(
                f"N tiene {self.N.shape[0]} filas, se esperaban J*D_k = "
                f"{self.N.shape[1]}*{self.kernel.size}"
            )


@dataclass
class SpiritKernel:
    """Pesos [J x J x k_w x k_h] con la derivación central propia en 0."""

    weights: np.ndarray
    kernel_size: Tuple[int, int]
    residuals: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        J = self.weights.shape[0]
        cw, ch = self.kernel_size[0] // 2, self.kernel_size[1] // 2
        if self.weights.shape != (J, J, *self.kernel_size):
            raise DataError(f"Forma de pesos SPIRiT inválida: {self.weights.shape}")
        if np.any(self.weights[np.arange(J), np.arange(J), cw, ch] != 0):
            raise DataError("El tap central de la propia bobina debe ser 0")

    @property
    def coil_count(self) -> int:
        return self.weights.shape[0]


@dataclass
class AutoSmashWeights:
    """n^(0) compuesto y n^(m) por desplazamiento m = 1..M-1."""

    n0: np.ndarray
    nm: Dict[int, np.ndarray]
    residuals: Dict[int, float] = field(default_factory=dict)

    def __post_init__(self):
        if any(m < 1 for m in self.nm):
            raise DataError("Los desplazamientos m deben ser >= 1")

    @property
    def reduction(self) -> int:
        return max(self.nm, default=0) + 1


@dataclass
class ReconResult:
    """Salida de una reconstrucción."""

    kspace_full: np.ndarray
    image: np.ndarray
    per_coil_images: np.ndarray
    iterations: int = 0
    objective_trace: np.ndarray = field(default_factory=lambda: np.zeros(0))
    converged: bool = True
    uninterpolatable: int = 0
