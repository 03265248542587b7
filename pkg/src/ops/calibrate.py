# -*- coding: utf-8 -*-
"""
Ops: calibración sobre la ACR y serialización de los pesos.

Formato de los pesos en el contenedor de tensores:
- grappa:    [K x J*D_max x J], en el orden determinista de enumerate_kernels.
- spirit:    [J x J x k_w x k_h].
- autosmash: [M x J], fila 0 = n^(0), fila m = n^(m).
"""

from __future__ import annotations

from typing import List, Optional

import numpy as np

from src.calibration.autosmash import calibrate_autosmash
from src.calibration.grappa import calibrate_grappa, stack_weights, unstack_weights
from src.calibration.spirit import spirit_calibrate
from src.core.types import AutoSmashWeights, CalibrationWeights, SamplingMask, SpiritKernel
from src.formats.tensor import read_tensor, write_tensor
from src.ops.common import check_distinct_paths, load_kspace, recon_mask
from src.recon.pipeline import kernel_threshold, reduction_along_ky, undersample
from src.sampling.kernels import enumerate_kernels
from src.utils.errors import DataError


def autosmash_to_tensor(weights: AutoSmashWeights) -> np.ndarray:
    rows = [weights.n0] + [weights.nm[m] for m in sorted(weights.nm)]
    return np.stack(rows).astype(np.complex128)


def autosmash_from_tensor(tensor: np.ndarray) -> AutoSmashWeights:
    if tensor.ndim != 2 or tensor.shape[0] < 1:
        raise DataError(f"Pesos AUTO-SMASH inválidos: {tensor.shape}")
    return AutoSmashWeights(tensor[0].copy(), {m: tensor[m].copy() for m in range(1, tensor.shape[0])})


def load_grappa_weights(
    path: str, mask: SamplingMask, kernel_size: int, boundary: str
) -> List[CalibrationWeights]:
    kernels = enumerate_kernels(mask, kernel_threshold(kernel_size), boundary)
    return unstack_weights(read_tensor(path), kernels)


def load_spirit_kernel(path: str) -> SpiritKernel:
    tensor = read_tensor(path)
    if tensor.ndim != 4:
        raise DataError(f"Kernel SPIRiT inválido: {tensor.shape}")
    return SpiritKernel(tensor, tensor.shape[2:])


def calibrate_to_tensor(args, lam: Optional[float]) -> tuple[np.ndarray, str]:
    full = load_kspace(args.input)
    mask = recon_mask(args.method, full.grid.shape, args.rx, args.ry, args.acr)

    if args.method == "autosmash":
        data = full.undersample(mask)
        weights = calibrate_autosmash(data, reduction_along_ky(mask), lam=lam or 0.0)
        residuals = ", ".join(f"m={m}: {r:.3e}" for m, r in sorted(weights.residuals.items()))
        return autosmash_to_tensor(weights), residuals or "sin desplazamientos"

    data, acr = undersample(full, mask)
    if args.method == "spirit":
        kernel = spirit_calibrate(acr, (args.kernel, args.kernel), lam)
        return kernel.weights, f"máximo {kernel.residuals.max():.3e}"

    kernels = enumerate_kernels(data.mask, kernel_threshold(args.kernel), args.boundary)
    weights = calibrate_grappa(acr, kernels, lam)
    if not weights:
        raise DataError("No hay kernels interpolables que calibrar")
    worst = max(w.residual_rel for w in weights)
    return stack_weights(weights), f"{len(weights)} kernels, máximo {worst:.3e}"


def handle_calibrate(args) -> int:
    """Lógica principal del subcomando calibrate."""
    check_distinct_paths([args.input], [args.out])
    tensor, summary = calibrate_to_tensor(args, args.lam)
    write_tensor(args.out, tensor)

    print("=" * 60)
    print(f"🧮 Calibración {args.method}: kernel {args.kernel}x{args.kernel}, ACR {args.acr}")
    print(f"📉 Residuo relativo: {summary}")
    print(f"💾 Pesos: {args.out} {tuple(tensor.shape)}")
    print("=" * 60)
    return 0
