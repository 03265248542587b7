# -*- coding: utf-8 -*-
"""
Ops: máscara de submuestreo (tensor 0/1 y PGM) con resumen de kernels.
"""

from __future__ import annotations

import numpy as np

from src.formats.pgm import write_pgm
from src.formats.tensor import write_tensor
from src.ops.common import check_distinct_paths, recon_mask
from src.recon.pipeline import kernel_threshold
from src.sampling.kernels import enumerate_kernels
from src.sampling.masks import mask_to_image


def handle_mask(args) -> int:
    """Lógica principal del subcomando mask."""
    check_distinct_paths([], [args.out, args.png])
    grid = (args.nx, args.ny or args.nx)
    mask = recon_mask(args.method, grid, args.rx, args.ry, args.acr)
    kernels = enumerate_kernels(mask, kernel_threshold(args.kernel), args.boundary)

    write_tensor(args.out, mask.acquired.astype(np.complex128))
    if args.png:
        write_pgm(args.png, mask_to_image(mask), (0.0, 1.0))

    flagged = sum(len(k.targets) for k in kernels if not k.interpolatable)
    total = mask.acquired.size
    print("=" * 60)
    print(f"🎭 Máscara {grid[0]}x{grid[1]}, R_x={args.rx}, R_y={args.ry}, ACR {mask.acr_rect}")
    print(f"📊 Adquiridas: {mask.acquired_count} de {total} ({mask.acquired_count / total:.1%})")
    print(f"🧩 Kernels (umbral {kernel_threshold(args.kernel)}): {len(kernels)}")
    for i, k in enumerate(kernels, 1):
        print(f"  {i:02d}. D_k={k.size:<3d} objetivos={len(k.targets)}")
    if flagged:
        print(f"⚠️  Posiciones no interpolables: {flagged}")
    print(f"💾 Salida: {args.out}")
    print("=" * 60)
    return 0
