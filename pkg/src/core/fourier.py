# -*- coding: utf-8 -*-
"""
Transformadas de Fourier centradas y unitarias, desplazamientos enteros
en la grilla y separación híbrida (k_x, k_y, z) de datos 3D.

Convención: DC en el índice n // 2 de cada eje, normalización 1/sqrt(N).
"""

from __future__ import annotations

from typing import Sequence, Tuple, Union

import numpy as np

from src.core.types import ComplexImage
from src.utils.errors import DataError

ArrayLike = Union[np.ndarray, ComplexImage]


def _as_array(x: ArrayLike) -> np.ndarray:
    arr = np.asarray(x.data if isinstance(x, ComplexImage) else x)
    if not np.all(np.isfinite(arr)):
        raise DataError("Entrada no finita para la transformada")
    return arr


def dft2(img: ArrayLike) -> np.ndarray:
    """DFT 2D centrada y unitaria sobre los dos últimos ejes."""
    arr = _as_array(img)
    axes = (-2, -1)
    return np.fft.fftshift(
        np.fft.fft2(np.fft.ifftshift(arr, axes=axes), axes=axes, norm="ortho"), axes=axes
    )


def idft2(ksp: ArrayLike) -> np.ndarray:
    """Inversa exacta de dft2."""
    arr = _as_array(ksp)
    axes = (-2, -1)
    return np.fft.fftshift(
        np.fft.ifft2(np.fft.ifftshift(arr, axes=axes), axes=axes, norm="ortho"), axes=axes
    )


def fourier_shift(ksp: np.ndarray, shift: Tuple[int, int]) -> np.ndarray:
    """k-space de la imagen multiplicada por exp(i(m_x dk_x x + m_y dk_y y)).

    Por el teorema de desplazamiento equivale a un corrimiento circular de
    (m_x, m_y) índices sobre los dos últimos ejes.
    """
    mx, my = shift
    if int(mx) != mx or int(my) != my:
        raise DataError(f"Solo se admiten desplazamientos enteros, recibido {shift}")
    return np.roll(np.asarray(ksp), (int(mx), int(my)), axis=(-2, -1))


def grid_shift(arr: np.ndarray, offset: Tuple[int, int], periodic: bool = True) -> np.ndarray:
    """out[..., i, j] = arr[..., i + u, j + v].

    Con periodic=False lo que cae fuera de la grilla vale 0.
    """
    u, v = int(offset[0]), int(offset[1])
    if periodic:
        return np.roll(arr, (-u, -v), axis=(-2, -1))
    nx, ny = arr.shape[-2:]
    out = np.zeros_like(arr)
    if abs(u) >= nx or abs(v) >= ny:
        return out
    src_x = slice(max(u, 0), nx + min(u, 0))
    dst_x = slice(max(-u, 0), nx + min(-u, 0))
    src_y = slice(max(v, 0), ny + min(v, 0))
    dst_y = slice(max(-v, 0), ny + min(-v, 0))
    out[..., dst_x, dst_y] = arr[..., src_x, src_y]
    return out


def image_coordinates(shape: Sequence[int], spacing: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    """Coordenadas físicas centradas x = (i - n//2) dx, en formato ij."""
    nx, ny = shape
    x = (np.arange(nx) - nx // 2) * spacing[0]
    y = (np.arange(ny) - ny // 2) * spacing[1]
    return np.meshgrid(x, y, indexing="ij")


def readout_hybrid(ksp3d: np.ndarray, readout_axis: int = -1) -> np.ndarray:
    """IDFT 1D centrada a lo largo del eje de lectura.

    Devuelve la pila de cortes 2D indexada por z en el primer eje.
    """
    arr = _as_array(ksp3d)
    if arr.ndim != 3:
        raise DataError(f"Se esperaba un tensor 3D, recibido {arr.shape}")
    if not -3 <= readout_axis <= 2:
        raise DataError(f"Eje de lectura fuera de rango: {readout_axis}")
    hybrid = np.fft.fftshift(
        np.fft.ifft(np.fft.ifftshift(arr, axes=readout_axis), axis=readout_axis, norm="ortho"),
        axes=readout_axis,
    )
    return np.moveaxis(hybrid, readout_axis, 0)
