# -*- coding: utf-8 -*-
"""Fixtures compartidas: escenarios de bobinas diseñadas y captura de logs."""

from __future__ import annotations

import numpy as np
import pytest
from loguru import logger

from src.simulation.coils import (
    DesignedCoilSpec,
    designed_sensitivities,
    mode_grid,
    random_amplitudes,
)
from src.simulation.phantom import shepp_logan
from src.simulation.signal import forward_signal


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def make_designed():
    """Factoría: k-space totalmente muestreado de bobinas diseñadas sobre el fantoma."""

    def build(modes, n=64, amplitudes=None):
        spec = DesignedCoilSpec(tuple(modes), amplitudes)
        sens = designed_sensitivities(spec, (n, n))
        return forward_signal(shepp_logan(n, n), sens)

    return build


@pytest.fixture(scope="session")
def designed9(make_designed):
    """Modos {-1,0,1}^2 (J=9) con amplitudes aleatorias, 64x64."""
    return make_designed(mode_grid(3), 64, random_amplitudes(9, 7))


@pytest.fixture
def log_messages():
    """Mensajes emitidos por loguru durante el test."""
    messages = []
    handler_id = logger.add(lambda m: messages.append(m.record), level="DEBUG")
    yield messages
    logger.remove(handler_id)
