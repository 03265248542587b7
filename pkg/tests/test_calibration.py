# -*- coding: utf-8 -*-
import numpy as np
import pytest

from src.calibration.autosmash import acs_block, assemble_autosmash_system, calibrate_autosmash
from src.calibration.grappa import (
    assemble_grappa_system,
    calibrate_grappa,
    default_lambda,
    solve_weights,
    stack_weights,
    unstack_weights,
)
from src.calibration.spirit import spirit_calibrate
from src.core.types import KernelPattern, KSpaceData
from src.sampling.kernels import enumerate_kernels
from src.sampling.masks import acr_extract, uniform_mask
from src.simulation.coils import uniform_coil
from src.simulation.phantom import shepp_logan
from src.simulation.signal import forward_signal
from src.utils.errors import DataError, UsageError

RX2 = ((-1, -1), (-1, 0), (-1, 1), (1, -1), (1, 0), (1, 1))


def pattern(displacements, threshold=(1, 1)):
    return KernelPattern(tuple(displacements), np.zeros((0, 2), dtype=int), threshold)


def random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


# ---------------------------
# Sistema GRAPPA
# ---------------------------
def test_system_shape(rng):
    S, s_acr = assemble_grappa_system(random_complex(rng, (8, 31, 31)), pattern(RX2))
    assert S.shape == (841, 48)
    assert s_acr.shape == (841, 8)


def test_system_layout(rng):
    acr = random_complex(rng, (2, 5, 5))
    S, s_acr = assemble_grappa_system(acr, pattern(RX2))
    # primera fila: objetivo en (1, 1) de la ACR
    for d, (u, v) in enumerate(RX2):
        for j in range(2):
            assert S[0, d * 2 + j] == acr[j, 1 + u, 1 + v]
    np.testing.assert_array_equal(s_acr[0], acr[:, 1, 1])


def test_system_minimal_acr_and_single_coil(rng):
    S, _ = assemble_grappa_system(random_complex(rng, (3, 3, 3)), pattern(RX2))
    assert S.shape[0] == 1
    S, _ = assemble_grappa_system(random_complex(rng, (1, 9, 9)), pattern(RX2))
    assert S.shape[1] == len(RX2)


def test_kernel_larger_than_acr(rng):
    with pytest.raises(DataError):
        assemble_grappa_system(random_complex(rng, (2, 2, 8)), pattern(RX2))


# ---------------------------
# Solver
# ---------------------------
def test_construct_then_solve(rng):
    S = random_complex(rng, (200, 12))
    N_true = random_complex(rng, (12, 3))
    w = solve_weights(S, S @ N_true, lam=0.0)
    assert np.linalg.norm(w.N - N_true) / np.linalg.norm(N_true) < 1e-8
    assert w.residual_rel < 1e-10


def test_tikhonov_optimality(rng):
    S = random_complex(rng, (80, 10))
    s = random_complex(rng, (80, 2))
    lam = 0.5
    w = solve_weights(S, s, lam=lam)
    gradient = S.conj().T @ (S @ w.N - s) + lam**2 * w.N
    assert np.linalg.norm(gradient) / np.linalg.norm(S.conj().T @ s) < 1e-8
    assert w.lam == lam


def test_large_lambda_shrinks_weights(rng):
    S = random_complex(rng, (80, 10))
    s = random_complex(rng, (80, 2))
    free = solve_weights(S, s, lam=0.0)
    shrunk = solve_weights(S, s, lam=1e8)
    assert np.linalg.norm(shrunk.N) < 1e-4 * np.linalg.norm(free.N)


def test_default_lambda(rng):
    S = random_complex(rng, (50, 4))
    assert default_lambda(S) == pytest.approx(1e-4 * np.linalg.norm(S) / 2)
    assert solve_weights(S, random_complex(rng, (50, 1))).lam == pytest.approx(default_lambda(S))


def test_solver_errors(rng):
    with pytest.raises(DataError):
        solve_weights(np.zeros((0, 4)), np.zeros((0, 1)))
    with pytest.raises(DataError):
        solve_weights(random_complex(rng, (5, 2)), random_complex(rng, (5, 1)), lam=-1.0)
    with pytest.raises(DataError):
        solve_weights(random_complex(rng, (5, 2)), random_complex(rng, (4, 1)))


def test_designed_coils_calibrate_exactly(designed9):
    acr = acr_extract(designed9, (31, 31))
    (w,) = calibrate_grappa(acr, [pattern(RX2)], lam=0.0)
    assert w.residual_rel < 1e-10
    assert w.N.shape == (54, 9)


def test_calibrate_skips_uninterpolatable(designed9):
    acr = acr_extract(designed9, (31, 31))
    kernels = [pattern(()), pattern(RX2)]
    assert len(calibrate_grappa(acr, kernels, lam=0.0)) == 1


def test_stack_and_unstack(designed9):
    data = designed9.undersample(uniform_mask(64, 64, 2, 2, (31, 31)))
    kernels = enumerate_kernels(data.mask)
    weights = calibrate_grappa(acr_extract(data, (31, 31)), kernels, lam=0.0)
    tensor = stack_weights(weights)
    assert tensor.shape == (len(weights), max(w.N.shape[0] for w in weights), 9)
    for original, restored in zip(weights, unstack_weights(tensor, kernels)):
        np.testing.assert_array_equal(original.N, restored.N)
        assert original.kernel.displacements == restored.kernel.displacements
    with pytest.raises(DataError):
        unstack_weights(tensor[:1], kernels)


# ---------------------------
# SPIRiT
# ---------------------------
def test_spirit_kernel_shape_and_zero_center(designed9):
    kernel = spirit_calibrate(acr_extract(designed9, (31, 31)), (3, 3), lam=0.0)
    assert kernel.weights.shape == (9, 9, 3, 3)
    assert not np.any(kernel.weights[np.arange(9), np.arange(9), 1, 1])
    assert kernel.residuals.max() < 1e-8


def test_spirit_constant_signal_weights_sum_to_one():
    kernel = spirit_calibrate(np.ones((1, 7, 7), dtype=complex), (3, 3), lam=0.0)
    assert kernel.weights.sum() == pytest.approx(1.0, abs=1e-8)


def test_spirit_even_kernel_rejected():
    with pytest.raises(UsageError):
        spirit_calibrate(np.ones((1, 7, 7), dtype=complex), (4, 4))


# ---------------------------
# AUTO-SMASH
# ---------------------------
def test_autosmash_zero_shift_returns_composite(make_designed):
    data = make_designed(((0, 0), (0, 1)), 32)
    n0 = np.array([1.0, 0.5j])
    sigma, b = assemble_autosmash_system(data.samples[:, :, 10:20], 3, 0, n0)
    w = solve_weights(sigma, b, lam=0.0)
    np.testing.assert_allclose(w.N[:, 0], n0, atol=1e-8)


def test_autosmash_designed_shift_is_exact(make_designed):
    full = make_designed(((0, 0), (0, 1)), 64)
    data = full.undersample(uniform_mask(64, 64, 1, 2, (64, 8)))
    weights = calibrate_autosmash(data, 2, n0=np.array([1.0, 0.0]))
    assert weights.residuals[1] < 1e-10
    np.testing.assert_allclose(weights.nm[1], [0.0, 1.0], atol=1e-8)
    assert weights.reduction == 2


def test_autosmash_single_coil_cannot_shift():
    full = forward_signal(shepp_logan(64, 64), uniform_coil((64, 64)))
    data = full.undersample(uniform_mask(64, 64, 1, 2, (64, 8)))
    weights = calibrate_autosmash(data, 2)
    assert weights.residuals[1] > 0.1


def test_autosmash_acs_block(make_designed):
    full = make_designed(((0, 0), (0, 1)), 32)
    data = full.undersample(uniform_mask(32, 32, 1, 2, (32, 6)))
    lines, lo = acs_block(data)
    # la línea par 12 también está completa
    assert lo == 12 and lines.shape == (2, 32, 7)


def test_autosmash_missing_acs_lines():
    acs = np.ones((2, 8, 3), dtype=complex)
    with pytest.raises(DataError):
        assemble_autosmash_system(acs, 1, 2, np.ones(2))
    data = KSpaceData.fully_sampled(np.ones((1, 8, 8), dtype=complex))
    sparse = data.undersample(uniform_mask(8, 8, 1, 2, offset=(0, 1)))
    with pytest.raises(DataError):
        acs_block(sparse)
