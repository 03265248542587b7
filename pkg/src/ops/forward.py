# -*- coding: utf-8 -*-
"""
Ops: fantoma + sensibilidades -> k-space multibobina (con ruido opcional).
"""

from __future__ import annotations

from src.core.types import CoilSensitivities, ComplexImage
from src.formats.tensor import read_tensor, write_tensor
from src.ops.common import check_distinct_paths
from src.simulation.signal import add_noise, forward_signal
from src.utils.errors import DataError


def handle_forward(args) -> int:
    """Lógica principal del subcomando forward."""
    check_distinct_paths([args.phantom, args.sens], [args.out])

    rho_data = read_tensor(args.phantom)
    if rho_data.ndim != 2:
        raise DataError(f"El fantoma debe ser 2D, recibido {rho_data.shape}")
    rho = ComplexImage(rho_data)
    sens = CoilSensitivities(read_tensor(args.sens))

    ksp = add_noise(forward_signal(rho, sens), args.sigma, args.seed)
    write_tensor(args.out, ksp.samples)

    print("=" * 60)
    print(f"📡 k-space: J={ksp.coil_count}, grilla {ksp.grid.n_kx}x{ksp.grid.n_ky}")
    print(f"🎲 Ruido: sigma={args.sigma} (semilla {args.seed})")
    print(f"💾 Salida: {args.out}")
    print("=" * 60)
    return 0
