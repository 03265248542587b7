#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
PILP - Reconstrucción de MRI paralela por predictibilidad lineal - Ejecutor principal

Subcomandos:
    uv run python main.py simulate --coils birdcage|designed [--plane axial|sagittal] --out sens.tnsr
    uv run python main.py forward --phantom rho.tnsr --sens sens.tnsr --out ksp.tnsr
    uv run python main.py mask --nx 128 --rx 2 --out mask.tnsr [--png mask.pgm]
    uv run python main.py calibrate --method grappa|spirit|autosmash --in ksp.tnsr --out w.tnsr
    uv run python main.py recon --method grappa|spirit|autosmash --in ksp.tnsr --out recon.tnsr
    uv run python main.py metric --in ksp.tnsr [--report out.csv]
    uv run python main.py report --report out.csv
"""

import argparse
import sys
from pathlib import Path

# Rutas para imports locales
sys.path.append(str(Path(__file__).parent))

from config.settings import (
    BIRDCAGE_CONFIG,
    CALIBRATION_CONFIG,
    COMBINE_CONFIG,
    DEFAULT_SEED,
    METRIC_CONFIG,
    SAMPLING_CONFIG,
    SIMULATION_CONFIG,
    SPIRIT_CONFIG,
)
from src.utils.errors import PilpError
from src.utils.logger import get_logger

# Ops
from src.ops.calibrate import handle_calibrate
from src.ops.forward import handle_forward
from src.ops.mask import handle_mask
from src.ops.metric import handle_metric
from src.ops.recon import handle_recon
from src.ops.report import handle_report
from src.ops.simulate import handle_simulate

HANDLERS = {
    "simulate": handle_simulate,
    "forward": handle_forward,
    "mask": handle_mask,
    "calibrate": handle_calibrate,
    "recon": handle_recon,
    "metric": handle_metric,
    "report": handle_report,
}

METHODS = ["grappa", "spirit", "autosmash"]


# ---------------------------
# Argumentos CLI
# ---------------------------
def _add_sampling_args(p: argparse.ArgumentParser) -> None:
    p.add_argument('--rx', '--mask-rx', dest='rx', type=int, default=1,
                   help='Factor de reducción en k_x (submuestreo horizontal)')
    p.add_argument('--ry', '--mask-ry', dest='ry', type=int, default=1,
                   help='Factor de reducción en k_y (submuestreo vertical)')
    p.add_argument('--acr', type=int, default=SAMPLING_CONFIG["acr"],
                   help=f'Lado de la ACR centrada (default: {SAMPLING_CONFIG["acr"]})')
    p.add_argument('--kernel', type=int, default=CALIBRATION_CONFIG["kernel"],
                   help=f'Lado del kernel, impar >= 3 (default: {CALIBRATION_CONFIG["kernel"]})')
    p.add_argument('--boundary', choices=['periodic', 'zero'], default=SAMPLING_CONFIG["boundary"],
                   help='Vecindarios en el borde de la grilla (default: periodic)')


def _add_lambda_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument('--lam', type=float, default=None,
                   help='Tikhonov lambda (default: 1e-4 * ||S||_F / sqrt(columnas); 0 = sin regularizar)')


def parse_arguments(argv=None):
    parser = argparse.ArgumentParser(
        description='PILP - GRAPPA, SPIRiT y AUTO-SMASH con simulación y métrica direccional',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Ejemplos:
  uv run python main.py simulate --coils birdcage --plane sagittal --out sens.tnsr --phantom-out rho.tnsr
  uv run python main.py forward --phantom rho.tnsr --sens sens.tnsr --out ksp.tnsr
  uv run python main.py recon --method grappa --in ksp.tnsr --rx 2 --out recon.tnsr --png recon.pgm --reference ksp.tnsr
  uv run python main.py metric --in ksp.tnsr --kernel 3 --report metric.csv
        """
    )
    parser.add_argument('--debug', '-d', action='store_true', help='Modo debug (log DEBUG en consola)')
    parser.add_argument('--no-log-file', action='store_true', help='No escribir logs en archivo')
    sub = parser.add_subparsers(dest='command', required=True)

    # Simulate
    p = sub.add_parser('simulate', help='Sensibilidades + fantoma y números de condición')
    p.add_argument('--coils', choices=['birdcage', 'designed'], default='birdcage')
    p.add_argument('--plane', choices=['axial', 'sagittal'], default=BIRDCAGE_CONFIG["plane"])
    p.add_argument('--elements', type=int, default=BIRDCAGE_CONFIG["elements"],
                   help='Elementos de la birdcage (default: 8)')
    p.add_argument('--modes', default='3x3', help="Modos de bobinas diseñadas: 3x3, x3, y4 (default: 3x3)")
    p.add_argument('--random-amplitudes', action='store_true', help='Amplitudes complejas aleatorias')
    p.add_argument('--seed', type=int, default=DEFAULT_SEED)
    p.add_argument('--grid', type=int, default=SIMULATION_CONFIG["grid"])
    p.add_argument('--out', required=True, help='Tensor de sensibilidades [J x n x n]')
    p.add_argument('--phantom-out', default=None, help='Tensor del fantoma [n x n]')

    # Forward
    p = sub.add_parser('forward', help='Fantoma + sensibilidades -> k-space')
    p.add_argument('--phantom', required=True)
    p.add_argument('--sens', required=True)
    p.add_argument('--sigma', type=float, default=SIMULATION_CONFIG["noise_sigma"],
                   help='Desviación del ruido complejo por muestra (default: 0)')
    p.add_argument('--seed', type=int, default=DEFAULT_SEED)
    p.add_argument('--out', required=True)

    # Mask
    p = sub.add_parser('mask', help='Máscara de submuestreo y resumen de kernels')
    p.add_argument('--nx', type=int, default=SIMULATION_CONFIG["grid"])
    p.add_argument('--ny', type=int, default=None)
    p.add_argument('--method', choices=METHODS, default='grappa')
    _add_sampling_args(p)
    p.add_argument('--out', required=True)
    p.add_argument('--png', default=None)

    # Calibrate
    p = sub.add_parser('calibrate', help='Calibra pesos sobre la ACR')
    p.add_argument('--method', choices=METHODS, default='grappa')
    p.add_argument('--in', dest='input', required=True)
    _add_sampling_args(p)
    _add_lambda_arg(p)
    p.add_argument('--out', required=True)

    # Recon
    p = sub.add_parser('recon', help='Submuestreo retrospectivo y reconstrucción')
    p.add_argument('--method', choices=METHODS, default='grappa')
    p.add_argument('--in', dest='input', required=True, help='k-space totalmente muestreado')
    _add_sampling_args(p)
    _add_lambda_arg(p)
    p.add_argument('--mask', default=None, help='Tensor de máscara (reemplaza --rx/--ry)')
    p.add_argument('--weights', default=None, help='Pesos de un calibrate previo')
    p.add_argument('--epsilon', type=float, default=SPIRIT_CONFIG["epsilon"],
                   help='Cota de ruido de SPIRiT (0 = datos fijos)')
    p.add_argument('--max-iter', type=int, default=None)
    p.add_argument('--reference', default=None, help='k-space de referencia para el NRMSE')
    p.add_argument('--out', required=True)
    p.add_argument('--png', default=None)
    p.add_argument('--dump-objective', default=None, help='CSV con la traza del objetivo SPIRiT')
    p.add_argument('--sens-out', default=None, help='Tensor de sensibilidades estimadas de la reconstrucción')
    p.add_argument('--sens-support', type=float, default=COMBINE_CONFIG["support_fraction"],
                   help=f'Fracción del máximo rSoS que define el soporte (default: {COMBINE_CONFIG["support_fraction"]})')

    # Metric
    p = sub.add_parser('metric', help='Métrica direccional y fila del reporte')
    p.add_argument('--in', dest='input', required=True)
    p.add_argument('--acr', type=int, default=SAMPLING_CONFIG["acr"])
    p.add_argument('--kernel', type=int, default=CALIBRATION_CONFIG["kernel"])
    p.add_argument('--threshold', type=float, default=METRIC_CONFIG["threshold"],
                   help=f'Umbral de error "large" (default: {METRIC_CONFIG["threshold"]})')
    p.add_argument('--dataset', default=None, help='Nombre del dataset en el reporte')
    p.add_argument('--with-recon', action='store_true',
                   help='Reconstruye en ambas direcciones y completa nrmse_v/nrmse_h')
    p.add_argument('--r', type=int, default=2, help='Factor de reducción para --with-recon')
    p.add_argument('--boundary', choices=['periodic', 'zero'], default=SAMPLING_CONFIG["boundary"])
    _add_lambda_arg(p)
    p.add_argument('--report', default=None)

    # Report
    p = sub.add_parser('report', help='Muestra el reporte CSV')
    p.add_argument('--report', required=True)

    return parser.parse_args(argv)


# ---------------------------
# Main
# ---------------------------
def run(argv=None) -> int:
    args = parse_arguments(argv)
    logger = get_logger(debug_mode=args.debug, log_to_file=not args.no_log_file)
    try:
        return HANDLERS[args.command](args)
    except PilpError as e:
        logger.error(f"❌ {e.code}: {e}")
        print(f"\n❌ Error ({e.code}): {e}")
        return e.exit_code
    except Exception as e:
        logger.exception(f"❌ Error crítico durante la ejecución: {e}")
        print(f"\n❌ Error crítico: {e}")
        return 4


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
