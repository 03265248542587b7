# -*- coding: utf-8 -*-
"""
Ops: simulación de sensibilidades (birdcage o diseñadas) y del fantoma.
Imprime los números de condición de las líneas centrales.
"""

from __future__ import annotations

import math

from loguru import logger

from src.formats.tensor import write_tensor
from src.ops.common import check_distinct_paths
from src.simulation.coils import (
    BirdcageSpec,
    DesignedCoilSpec,
    birdcage_sensitivities,
    designed_sensitivities,
    line_condition_report,
    parse_modes,
    random_amplitudes,
    uniform_coil,
    verify_designed_exactness,
)
from src.simulation.phantom import shepp_logan
from src.utils.errors import NumericalError, UsageError

EXACTNESS_TOL = 1e-10


def build_sensitivities(args):
    grid = (args.grid, args.grid)
    if args.coils == "birdcage":
        if args.elements < 1:
            raise UsageError(f"--elements debe ser >= 1, recibido {args.elements}")
        if args.elements == 1:
            logger.warning("J=1: la imagen paralela es imposible; se usa una bobina uniforme")
            return uniform_coil(grid), None
        spec = BirdcageSpec(elements=args.elements, plane=args.plane, grid=grid)
        return birdcage_sensitivities(spec), None

    modes = parse_modes(args.modes)
    amplitudes = random_amplitudes(len(modes), args.seed) if args.random_amplitudes else None
    spec = DesignedCoilSpec(modes, amplitudes)
    return designed_sensitivities(spec, grid), spec


def handle_simulate(args) -> int:
    """Lógica principal del subcomando simulate."""
    check_distinct_paths([], [args.out, args.phantom_out])
    if args.coils == "designed" and args.plane != "axial":
        raise UsageError("--plane solo aplica a --coils birdcage")

    sens, spec = build_sensitivities(args)
    rho = shepp_logan(args.grid, args.grid)
    conditions = line_condition_report(sens)

    exactness = None
    if spec is not None:
        exactness = verify_designed_exactness(sens, spec)
        if exactness > EXACTNESS_TOL:
            raise NumericalError(f"Autoprueba de exactitud fallida: error {exactness:.3e}")

    write_tensor(args.out, sens.maps)
    if args.phantom_out:
        write_tensor(args.phantom_out, rho.data)

    h, v = conditions["horizontal"], conditions["vertical"]
    print("=" * 60)
    print(f"🧲 Bobinas: {args.coils} (J={sens.coil_count}), grilla {args.grid}x{args.grid}")
    if args.coils == "birdcage":
        print(f"📐 Plano: {args.plane}")
    print(f"📈 Condición línea horizontal central: {h:.4e}")
    print(f"📈 Condición línea vertical central:   {v:.4e}")
    if math.isfinite(h) and h > 0:
        print(f"↕️  Razón vertical/horizontal: {v / h:.4e}")
    if exactness is not None:
        print(f"✅ Autoprueba de exactitud: error máximo {exactness:.3e}")
    print(f"💾 Sensibilidades: {args.out}")
    if args.phantom_out:
        print(f"💾 Fantoma: {args.phantom_out}")
    print("=" * 60)
    return 0
