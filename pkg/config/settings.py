"""
Configuración para la reconstrucción por predictibilidad lineal
"""

import os
from pathlib import Path

from dotenv import load_dotenv

# --- Carga de variables de entorno (.env) ---
load_dotenv()  # busca .env en el cwd o padres

PROJECT_ROOT = Path(__file__).parent.parent

# Directorio de logs
LOGS_DIR = PROJECT_ROOT / "logs"

# Semilla por defecto para ruido y pruebas reproducibles
DEFAULT_SEED = int(os.getenv("PILP_SEED", "0") or 0)

# Simulación (fantoma y forward)
SIMULATION_CONFIG = {
    "grid": 128,
    "fov": (1.6, 1.6),      # unidades de longitud arbitrarias, centrado
    "noise_sigma": 0.0,
    "min_phantom_size": 16,
}

# Bobina birdcage (Biot-Savart)
# El radio y el largo no vienen publicados; se eligen para que el fantoma
# quede dentro de la bobina.
BIRDCAGE_CONFIG = {
    "elements": 8,
    "coil_radius": 1.0,
    "element_length": 2.0,
    "segments_per_element": 64,
    "arc_fraction": 0.8,    # fracción del sector angular cubierta por cada elemento
    "plane": "axial",
}

# Submuestreo y kernels
SAMPLING_CONFIG = {
    "acr": 31,
    "boundary": "periodic",  # "periodic" | "zero"
}

# Calibración (GRAPPA / SPIRiT / AUTO-SMASH)
CALIBRATION_CONFIG = {
    "kernel": 3,
    "tikhonov_scale": 1e-4,  # lambda = escala * ||S||_F / sqrt(J * D_k)
}

# SPIRiT
SPIRIT_CONFIG = {
    "cg_max_iter": 200,
    "fista_max_iter": 500,
    "tol": 1e-9,
    "power_iterations": 20,
    "step_safety": 0.95,
    "epsilon": 0.0,
}

# Combinación de bobinas y sensibilidades estimadas
COMBINE_CONFIG = {
    "support_fraction": 0.1,  # fracción del máximo rSoS que define el soporte
}

# Métrica direccional
METRIC_CONFIG = {
    "threshold": 0.4,
    "quality_threshold": 0.1,
}

# Logging
LOG_CONFIG = {
    "level": os.getenv("PILP_LOG_LEVEL", "INFO").strip().upper() or "INFO",
    "format": "{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {message}",
    "rotation": "1 MB",
    "retention": "1 week",
}
