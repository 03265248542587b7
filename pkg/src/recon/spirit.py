# -*- coding: utf-8 -*-
"""
Reconstrucción SPIRiT: autoconsistencia G(theta) = theta sobre todo el k-space.

- epsilon = 0: las muestras adquiridas quedan fijas y se resuelve
  min ||(G - I)(x_acq + z)||^2 sobre las posiciones libres z con CGLS.
- epsilon > 0: FISTA monótono sobre 0.5 ||(G - I) theta||^2 con proyección
  a la bola de datos ||D theta - y||^2 <= epsilon.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np
from loguru import logger

from config.settings import SAMPLING_CONFIG, SPIRIT_CONFIG
from src.core.fourier import grid_shift
from src.core.types import KSpaceData, ReconResult, SpiritKernel
from src.recon.combine import coil_images, rsos_combine
from src.utils.errors import DataError, UsageError

Operator = Callable[[np.ndarray], np.ndarray]


def _taps(kernel: SpiritKernel):
    kw, kh = kernel.kernel_size
    cw, ch = kw // 2, kh // 2
    for u in range(-cw, cw + 1):
        for v in range(-ch, ch + 1):
            w = kernel.weights[:, :, cw + u, ch + v]
            if np.any(w):
                yield (u, v), w


def spirit_operator(kernel: SpiritKernel, periodic: bool = True) -> Operator:
    """(G theta)_j(k) = sum_i sum_o w[j, i, o] theta_i(k + o)."""
    taps = list(_taps(kernel))

    def apply(theta: np.ndarray) -> np.ndarray:
        out = np.zeros_like(theta)
        for offset, w in taps:
            out += np.einsum("ji,ixy->jxy", w, grid_shift(theta, offset, periodic))
        return out

    return apply


def spirit_adjoint(kernel: SpiritKernel, periodic: bool = True) -> Operator:
    taps = list(_taps(kernel))

    def apply(r: np.ndarray) -> np.ndarray:
        out = np.zeros_like(r)
        for (u, v), w in taps:
            out += np.einsum("ji,jxy->ixy", w.conj(), grid_shift(r, (-u, -v), periodic))
        return out

    return apply


def power_iteration(normal: Operator, shape, iterations: int, seed: int = 0) -> float:
    """Estimación del mayor autovalor de un operador hermítico semidefinido."""
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    x /= np.linalg.norm(x)
    estimate = 0.0
    for _ in range(iterations):
        y = normal(x)
        estimate = float(np.real(np.vdot(x, y)))
        norm = np.linalg.norm(y)
        if norm == 0:
            return 0.0
        x = y / norm
    return estimate


@dataclass
class SolverState:
    """Traza común a CGLS y FISTA."""

    solution: np.ndarray
    objective: List[float] = field(default_factory=list)
    iterations: int = 0
    converged: bool = False


def cgls(
    A: Operator,
    AH: Operator,
    b: np.ndarray,
    max_iter: int,
    tol: float,
) -> SolverState:
    """CG sobre las ecuaciones normales A^H A z = A^H b sin formarlas.

    Objetivo 0.5 ||b - A z||^2, no creciente por construcción.
    """
    z = np.zeros_like(b)
    r = b.copy()
    s = AH(r)
    p = s.copy()
    gamma = float(np.vdot(s, s).real)
    b_norm = np.linalg.norm(b)
    state = SolverState(z, [0.5 * float(np.vdot(r, r).real)])

    if b_norm == 0 or gamma == 0:
        state.converged = True
        return state

    for it in range(1, max_iter + 1):
        q = A(p)
        qq = float(np.vdot(q, q).real)
        if qq == 0:
            state.converged = True
            break
        alpha = gamma / qq
        z += alpha * p
        r -= alpha * q
        s = AH(r)
        gamma_new = float(np.vdot(s, s).real)

        previous = state.objective[-1]
        current = 0.5 * float(np.vdot(r, r).real)
        state.objective.append(current)
        state.iterations = it

        if np.linalg.norm(r) <= 1e-12 * b_norm or gamma_new <= 1e-30 * gamma:
            state.converged = True
            break
        if previous > 0 and abs(previous - current) <= tol * previous:
            state.converged = True
            break

        p = s + (gamma_new / gamma) * p
        gamma = gamma_new

    state.solution = z
    return state


def project_data_ball(theta: np.ndarray, y: np.ndarray, acquired: np.ndarray, epsilon: float) -> np.ndarray:
    """Proyección a {theta : ||D theta - y||^2 <= epsilon}."""
    out = theta.copy()
    residual = theta[:, acquired] - y[:, acquired]
    norm = np.linalg.norm(residual)
    radius = np.sqrt(epsilon)
    if norm > radius:
        out[:, acquired] = y[:, acquired] + residual * (radius / norm)
    return out


def mfista(
    E: Operator,
    EH: Operator,
    x0: np.ndarray,
    project: Callable[[np.ndarray], np.ndarray],
    step: float,
    max_iter: int,
    tol: float,
) -> SolverState:
    """FISTA monótono: se acepta el nuevo punto solo si no empeora el objetivo."""

    def objective(x):
        r = E(x)
        return 0.5 * float(np.vdot(r, r).real)

    x = project(x0)
    f_x = objective(x)
    state = SolverState(x, [f_x])
    y = x.copy()
    t = 1.0

    for it in range(1, max_iter + 1):
        z = project(y - step * EH(E(y)))
        f_z = objective(z)
        t_next = (1 + np.sqrt(1 + 4 * t * t)) / 2
        x_prev = x
        if f_z <= f_x:
            x, f_new = z, f_z
        else:
            f_new = f_x
        y = x + (t / t_next) * (z - x) + ((t - 1) / t_next) * (x - x_prev)
        t = t_next

        change = abs(f_x - f_z)
        f_x = f_new
        state.objective.append(f_x)
        state.iterations = it
        if f_x == 0 or change <= tol * max(f_x, np.finfo(float).tiny):
            state.converged = True
            break

    state.solution = x
    return state


def spirit_reconstruct(
    data: KSpaceData,
    kernel: SpiritKernel,
    epsilon: float = SPIRIT_CONFIG["epsilon"],
    max_iter: Optional[int] = None,
    tol: float = SPIRIT_CONFIG["tol"],
    boundary: str = SAMPLING_CONFIG["boundary"],
    seed: int = 0,
) -> ReconResult:
    if kernel.coil_count != data.coil_count:
        raise DataError(f"Kernel para J={kernel.coil_count}, datos con J={data.coil_count}")
    if epsilon < 0:
        raise UsageError(f"epsilon debe ser >= 0, recibido {epsilon}")
    periodic = boundary == "periodic"
    G = spirit_operator(kernel, periodic)
    GH = spirit_adjoint(kernel, periodic)

    def E(x):
        return G(x) - x

    def EH(r):
        return GH(r) - r

    acquired = data.mask.acquired
    free = ~acquired

    if epsilon == 0:
        max_iter = max_iter or SPIRIT_CONFIG["cg_max_iter"]
        if not free.any():
            state = SolverState(data.samples.copy(), [], 0, True)
        else:
            x_acq = data.samples
            b = -E(x_acq)
            state = cgls(lambda z: E(z * free), lambda r: EH(r) * free, b, max_iter, tol)
            # el trazo de CGLS es 0.5 ||(G - I) theta||^2 porque b = -E(x_acq)
            state.solution = x_acq + state.solution * free
    else:
        max_iter = max_iter or SPIRIT_CONFIG["fista_max_iter"]
        L = power_iteration(
            lambda x: EH(E(x)), data.samples.shape, SPIRIT_CONFIG["power_iterations"], seed
        )
        if L <= 0:
            raise DataError("El operador (G - I) es nulo: kernel SPIRiT degenerado")
        step = SPIRIT_CONFIG["step_safety"] / L
        logger.debug(f"FISTA: L ~ {L:.4e}, paso {step:.4e}")
        state = mfista(
            E,
            EH,
            data.samples,
            lambda x: project_data_ball(x, data.samples, acquired, epsilon),
            step,
            max_iter,
            tol,
        )

    if not state.converged:
        logger.warning(
            f"SPIRiT no convergió en {state.iterations} iteraciones; se devuelve el mejor iterado"
        )
    else:
        logger.info(f"SPIRiT convergió en {state.iterations} iteraciones")

    images = coil_images(state.solution)
    return ReconResult(
        kspace_full=state.solution,
        image=rsos_combine(images),
        per_coil_images=images,
        iterations=state.iterations,
        objective_trace=np.asarray(state.objective, dtype=float),
        converged=state.converged,
    )


def self_consistency(kernel: SpiritKernel, kspace: np.ndarray, boundary: str = "periodic") -> float:
    """||G theta - theta|| / ||theta||."""
    G = spirit_operator(kernel, boundary == "periodic")
    norm = np.linalg.norm(kspace)
    if norm == 0:
        return 0.0
    return float(np.linalg.norm(G(kspace) - kspace) / norm)
