# -*- coding: utf-8 -*-
"""Kernels de prueba de la métrica direccional."""

from __future__ import annotations

from typing import Tuple

import numpy as np

from src.calibration.spirit import check_kernel_size


def metric_test_kernels(kernel_size: Tuple[int, int] = (3, 3)) -> Tuple[np.ndarray, np.ndarray]:
    """k_h [1 x k_w] y k_v [k_h x 1]: unos con el centro en 0."""
    kw, kh = check_kernel_size(kernel_size, minimum=3)
    k_h = np.ones((1, kw), dtype=int)
    k_h[0, kw // 2] = 0
    k_v = np.ones((kh, 1), dtype=int)
    k_v[kh // 2, 0] = 0
    return k_h, k_v
