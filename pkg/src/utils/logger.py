"""
Configuración del logger para la reconstrucción
"""

import sys
from datetime import datetime

from loguru import logger

from config.settings import LOG_CONFIG, LOGS_DIR


def get_logger(debug_mode: bool = False, log_to_file: bool = True):
    """Configurar y retornar logger configurado"""

    # Remover configuración por defecto
    logger.remove()

    # Configurar nivel según modo debug
    console_level = "DEBUG" if debug_mode else LOG_CONFIG["level"]

    # Configurar salida a consola con colores
    logger.add(
        sys.stderr,
        format="<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{message}</cyan>",
        level=console_level,
        colorize=True
    )

    # Configurar salida a archivo
    if log_to_file:
        LOGS_DIR.mkdir(exist_ok=True)
        log_file = LOGS_DIR / f"pilp_{datetime.now().strftime('%Y-%m-%d')}.log"
        logger.add(
            log_file,
            format=LOG_CONFIG["format"],
            level="DEBUG",
            rotation=LOG_CONFIG["rotation"],
            retention=LOG_CONFIG["retention"],
            encoding="utf-8"
        )

    return logger
