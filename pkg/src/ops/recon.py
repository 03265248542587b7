# -*- coding: utf-8 -*-
"""
Ops: submuestreo retrospectivo + calibración + reconstrucción.
Escribe el k-space completo, el PGM rSoS y opcionalmente la traza del
objetivo de SPIRiT.
"""

from __future__ import annotations

import numpy as np
import pandas as pd
from loguru import logger

from src.core.fourier import idft2
from src.formats.pgm import write_pgm
from src.formats.tensor import read_tensor, write_tensor
from src.ops.calibrate import autosmash_from_tensor, load_grappa_weights, load_spirit_kernel
from src.ops.common import check_distinct_paths, load_kspace, mask_from_tensor, recon_mask
from src.recon.combine import estimate_sensitivities, nrmse, rsos_image
from src.recon.pipeline import run_autosmash, run_grappa, run_spirit
from src.utils.errors import UsageError
from src.utils.files import atomic_write_text


def build_mask(args, full):
    if args.mask:
        acr = (full.grid.n_kx, args.acr) if args.method == "autosmash" else (args.acr, args.acr)
        return mask_from_tensor(read_tensor(args.mask), acr)
    return recon_mask(args.method, full.grid.shape, args.rx, args.ry, args.acr)


def reconstruct(args, full, mask):
    if args.method == "grappa":
        weights = None
        if args.weights:
            weights = load_grappa_weights(args.weights, mask, args.kernel, args.boundary)
        result, _ = run_grappa(full, mask, args.kernel, args.lam, args.boundary, weights)
        return result

    if args.method == "spirit":
        kernel = load_spirit_kernel(args.weights) if args.weights else None
        result, _ = run_spirit(
            full,
            mask,
            args.kernel,
            args.lam,
            args.epsilon,
            args.max_iter,
            boundary=args.boundary,
            kernel=kernel,
        )
        return result

    weights = autosmash_from_tensor(read_tensor(args.weights)) if args.weights else None
    result, _ = run_autosmash(full, mask, lam=args.lam or 0.0, weights=weights)
    return result


def reference_image(args, method: str) -> np.ndarray:
    ref = load_kspace(args.reference)
    if method == "autosmash":
        n0 = np.ones(ref.coil_count)
        return np.abs(idft2(np.einsum("j,jxy->xy", n0, ref.samples)))
    return rsos_image(ref.samples)


def handle_recon(args) -> int:
    """Lógica principal del subcomando recon."""
    if args.dump_objective and args.method != "spirit":
        raise UsageError("--dump-objective solo aplica a --method spirit")
    if args.sens_out and not 0.0 <= args.sens_support < 1.0:
        raise UsageError(f"--sens-support debe estar en [0, 1), recibido {args.sens_support}")
    check_distinct_paths(
        [args.input, args.reference, args.weights, args.mask],
        [args.out, args.png, args.dump_objective, args.sens_out],
    )

    full = load_kspace(args.input)
    mask = build_mask(args, full)
    result = reconstruct(args, full, mask)
    score = nrmse(result.image, reference_image(args, args.method)) if args.reference else None

    write_tensor(args.out, result.kspace_full)
    if args.png:
        write_pgm(args.png, result.image)
    if args.sens_out:
        write_tensor(args.sens_out, estimate_sensitivities(result.per_coil_images, args.sens_support))
    if args.dump_objective:
        trace = pd.DataFrame(
            {"iteration": np.arange(len(result.objective_trace)), "objective": result.objective_trace}
        )
        atomic_write_text(args.dump_objective, trace.to_csv(index=False, lineterminator="\n"))

    print("=" * 60)
    print(f"🔧 Reconstrucción {args.method}: R_x={args.rx}, R_y={args.ry}, ACR {args.acr}, kernel {args.kernel}")
    if args.method == "spirit":
        status = "✅ convergió" if result.converged else "⚠️  no convergió"
        print(f"🔁 Iteraciones: {result.iterations} ({status})")
    if result.uninterpolatable:
        print(f"⚠️  Posiciones no interpolables: {result.uninterpolatable}")
    if score is not None:
        print(f"📏 NRMSE: {score:.6e}")
    else:
        logger.info("Sin --reference: se omite el NRMSE")
    print(f"💾 k-space: {args.out}")
    if args.png:
        print(f"🖼️  Imagen: {args.png}")
    if args.sens_out:
        print(f"🧲 Sensibilidades estimadas: {args.sens_out}")
    print("=" * 60)
    return 0
