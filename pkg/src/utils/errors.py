# -*- coding: utf-8 -*-
"""
Errores del paquete y su código de salida en la CLI.

0 éxito, 2 uso, 3 datos, 4 falla numérica.
"""

from __future__ import annotations


class PilpError(Exception):
    """Base de todos los errores del paquete."""

    exit_code = 4
    code = "PilpError"


class UsageError(PilpError):
    """Flags o parámetros inválidos."""

    exit_code = 2
    code = "Usage"


class DataError(PilpError, ValueError):
    """Datos de entrada inconsistentes (dimensiones, máscara, contenedor)."""

    exit_code = 3
    code = "Data"


class NumericalError(PilpError):
    """Falla numérica irrecuperable."""

    exit_code = 4
    code = "Numerical"


# --- Errores del contenedor de tensores ---

class BadMagic(DataError):
    code = "BadMagic"


class UnsupportedVersion(DataError):
    code = "UnsupportedVersion"


class BadDtype(DataError):
    code = "BadDtype"


class TruncatedPayload(DataError):
    code = "TruncatedPayload"


class DimOverflow(DataError):
    code = "DimOverflow"
