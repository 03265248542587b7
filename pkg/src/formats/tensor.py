# -*- coding: utf-8 -*-
"""
Contenedor binario de tensores complejos (little-endian en disco):

    magic   8 bytes  b"PILPTNSR"
    version u16      1
    rank    u16
    dims    rank x u64
    dtype   u8       0 = complex64, 1 = complex128
    payload          row-major, (real, imag) intercalados
"""

from __future__ import annotations

import struct
from pathlib import Path
from typing import Optional

import numpy as np

from src.utils.errors import (
    BadDtype,
    BadMagic,
    DataError,
    DimOverflow,
    TruncatedPayload,
    UnsupportedVersion,
)
from src.utils.files import PathLike, atomic_write_bytes

MAGIC = b"PILPTNSR"
VERSION = 1
MAX_RANK = 8

DTYPES = {0: np.dtype("<c8"), 1: np.dtype("<c16")}
DTYPE_CODES = {np.dtype(np.complex64): 0, np.dtype(np.complex128): 1}


def encode_tensor(tensor: np.ndarray, dtype: Optional[np.dtype] = None) -> bytes:
    arr = np.asarray(tensor)
    if dtype is None:
        dtype = arr.dtype if arr.dtype == np.complex64 else np.complex128
    code = DTYPE_CODES.get(np.dtype(dtype))
    if code is None:
        raise BadDtype(f"dtype no soportado: {dtype}")
    if arr.ndim < 1 or arr.ndim > MAX_RANK:
        raise DataError(f"Rango no soportado: {arr.ndim}")

    header = MAGIC + struct.pack("<HH", VERSION, arr.ndim)
    header += struct.pack(f"<{arr.ndim}Q", *arr.shape)
    header += struct.pack("<B", code)
    payload = np.ascontiguousarray(arr, dtype=DTYPES[code]).tobytes()
    return header + payload


def decode_tensor(raw: bytes) -> np.ndarray:
    if raw[:8] != MAGIC:
        raise BadMagic("El archivo no es un contenedor PILPTNSR")
    if len(raw) < 12:
        raise TruncatedPayload("Cabecera incompleta")
    version, rank = struct.unpack_from("<HH", raw, 8)
    if version != VERSION:
        raise UnsupportedVersion(f"Versión {version} no soportada")
    if rank < 1 or rank > MAX_RANK:
        raise DimOverflow(f"Rango fuera de rango: {rank}")

    offset = 12 + 8 * rank
    if len(raw) < offset + 1:
        raise TruncatedPayload("Cabecera incompleta")
    dims = struct.unpack_from(f"<{rank}Q", raw, 12)
    (code,) = struct.unpack_from("<B", raw, offset)
    dtype = DTYPES.get(code)
    if dtype is None:
        raise BadDtype(f"Código de dtype desconocido: {code}")

    count = 1
    for d in dims:
        count *= d
    expected = count * dtype.itemsize
    if count > np.iinfo(np.int64).max // dtype.itemsize:
        raise DimOverflow(f"Dimensiones {dims} desbordan el tamaño direccionable")

    payload = raw[offset + 1 :]
    if len(payload) < expected:
        raise TruncatedPayload(f"Se esperaban {expected} bytes de datos, hay {len(payload)}")
    if len(payload) > expected:
        raise DataError(f"Sobran {len(payload) - expected} bytes después de los datos")
    return np.frombuffer(payload, dtype=dtype).reshape(dims).copy()


def write_tensor(path: PathLike, tensor: np.ndarray, dtype: Optional[np.dtype] = None) -> Path:
    return atomic_write_bytes(path, encode_tensor(tensor, dtype))


def read_tensor(path: PathLike) -> np.ndarray:
    path = Path(path)
    if not path.is_file():
        raise DataError(f"No existe el archivo: {path}")
    return decode_tensor(path.read_bytes())
