# -*- coding: utf-8 -*-
import numpy as np
import pytest

from src.calibration.grappa import calibrate_grappa
from src.calibration.spirit import spirit_calibrate
from src.core.types import AutoSmashWeights, SamplingMask, SpiritKernel
from src.recon.autosmash import autosmash_reconstruct, collected_lines
from src.recon.combine import coil_images, estimate_sensitivities, nrmse, rsos_combine, rsos_image
from src.recon.grappa import grappa_reconstruct
from src.recon.pipeline import (
    reduction_along_ky,
    run_autosmash,
    run_grappa,
    run_spirit,
    undersample,
)
from src.recon.spirit import (
    power_iteration,
    self_consistency,
    spirit_adjoint,
    spirit_operator,
    spirit_reconstruct,
)
from src.sampling.kernels import enumerate_kernels
from src.sampling.masks import acr_extract, uniform_mask
from src.simulation.coils import (
    DesignedCoilSpec,
    designed_sensitivities,
    mode_grid,
    random_amplitudes,
    uniform_coil,
)
from src.simulation.phantom import shepp_logan
from src.simulation.signal import add_noise, forward_signal
from src.utils.errors import DataError, UsageError


def relative_error(a, b):
    return np.linalg.norm(a - b) / np.linalg.norm(b)


# ---------------------------
# Combinación y NRMSE
# ---------------------------
def test_rsos_combine(rng):
    image = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
    np.testing.assert_allclose(rsos_combine(image[None]), np.abs(image))
    np.testing.assert_allclose(rsos_combine(np.stack([image] * 4)), 2 * np.abs(image))
    assert not np.any(rsos_combine(np.zeros((3, 4, 4))))


def test_nrmse():
    ref = np.arange(1.0, 17.0).reshape(4, 4)
    assert nrmse(ref, ref) == 0
    assert nrmse(np.zeros_like(ref), ref) == pytest.approx(1.0)
    assert nrmse(2 * ref, ref) == pytest.approx(1.0)
    with pytest.raises(DataError):
        nrmse(ref, np.zeros_like(ref))
    with pytest.raises(DataError):
        nrmse(ref, ref[:2])


@pytest.fixture(scope="module")
def designed9_maps():
    spec = DesignedCoilSpec(mode_grid(3), random_amplitudes(9, 7))
    return designed_sensitivities(spec, (64, 64)).maps


def test_estimated_sensitivities_match_normalized_maps(designed9, designed9_maps):
    estimate = estimate_sensitivities(coil_images(designed9.samples), 0.1)
    rho = shepp_logan(64, 64).data.real
    support = rho > 0.1 * rho.max()
    expected = designed9_maps / np.sqrt(np.sum(np.abs(designed9_maps) ** 2, axis=0))
    np.testing.assert_allclose(estimate[:, support], expected[:, support], atol=1e-10)
    assert not np.any(estimate[:, ~support])


def test_estimated_sensitivities_from_grappa_recon(designed9, designed9_maps):
    mask = uniform_mask(64, 64, 2, 1, (31, 31))
    result, _ = run_grappa(designed9, mask, 3, lam=0.0)
    estimate = estimate_sensitivities(result.per_coil_images)
    support = np.any(estimate != 0, axis=0)
    expected = designed9_maps / np.sqrt(np.sum(np.abs(designed9_maps) ** 2, axis=0))
    np.testing.assert_allclose(estimate[:, support], expected[:, support], atol=1e-6)


def test_estimated_sensitivities_errors():
    with pytest.raises(UsageError):
        estimate_sensitivities(np.ones((2, 4, 4)), 1.0)
    with pytest.raises(DataError):
        estimate_sensitivities(np.ones((4, 4)))
    with pytest.raises(DataError):
        estimate_sensitivities(np.zeros((2, 4, 4)))


# ---------------------------
# GRAPPA
# ---------------------------
def test_grappa_fully_sampled_is_identity(designed9):
    result = grappa_reconstruct(designed9, [])
    np.testing.assert_array_equal(result.kspace_full, designed9.samples)
    assert result.uninterpolatable == 0


@pytest.mark.parametrize("reduction", [(2, 1), (1, 2)])
def test_grappa_designed_coils_exact(designed9, reduction):
    mask = uniform_mask(64, 64, *reduction, (31, 31))
    result, weights = run_grappa(designed9, mask, 3, lam=0.0)
    assert relative_error(result.kspace_full, designed9.samples) < 1e-8
    assert all(w.residual_rel < 1e-10 for w in weights)
    reference = rsos_image(designed9.samples)
    assert nrmse(result.image, reference) < 1e-8


def test_grappa_preserves_acquired_samples(designed9):
    mask = uniform_mask(64, 64, 2, 2, (31, 31))
    result, _ = run_grappa(designed9, mask, 3)
    np.testing.assert_array_equal(
        result.kspace_full[:, mask.acquired], designed9.samples[:, mask.acquired]
    )


def test_grappa_zero_weights_leave_missing_at_zero(designed9):
    mask = uniform_mask(64, 64, 2, 1, (31, 31))
    data, acr = undersample(designed9, mask)
    weights = calibrate_grappa(acr, enumerate_kernels(mask), lam=0.0)
    for w in weights:
        w.N = np.zeros_like(w.N)
    result = grappa_reconstruct(data, weights)
    assert not np.any(result.kspace_full[:, ~mask.acquired])
    np.testing.assert_array_equal(result.kspace_full[:, mask.acquired], data.samples[:, mask.acquired])


def test_grappa_missing_weights(designed9):
    data = designed9.undersample(uniform_mask(64, 64, 2, 1, (31, 31)))
    with pytest.raises(DataError):
        grappa_reconstruct(data, [])


def test_grappa_counts_uninterpolatable(designed9):
    mask = uniform_mask(64, 64, 4, 1, offset=(0, 0))
    data = designed9.undersample(mask)
    acr = designed9.samples[:, 16:48, 16:48]
    weights = calibrate_grappa(acr, enumerate_kernels(mask), lam=0.0)
    result = grappa_reconstruct(data, weights)
    assert result.uninterpolatable == 16 * 64
    assert not np.any(result.kspace_full[:, 2::4])


def test_grappa_zero_boundary_runs(designed9):
    mask = uniform_mask(64, 64, 2, 1, (31, 31))
    result, weights = run_grappa(designed9, mask, 3, lam=0.0, boundary="zero")
    assert len(weights) > 1
    assert result.uninterpolatable == 0


# ---------------------------
# SPIRiT: operador
# ---------------------------
def random_kernel(rng, J=3):
    weights = rng.standard_normal((J, J, 3, 3)) + 1j * rng.standard_normal((J, J, 3, 3))
    weights[np.arange(J), np.arange(J), 1, 1] = 0
    return SpiritKernel(weights, (3, 3))


@pytest.mark.parametrize("periodic", [True, False])
def test_spirit_adjoint_identity(rng, periodic):
    kernel = random_kernel(rng)
    x = rng.standard_normal((3, 12, 10)) + 1j * rng.standard_normal((3, 12, 10))
    y = rng.standard_normal((3, 12, 10)) + 1j * rng.standard_normal((3, 12, 10))
    G = spirit_operator(kernel, periodic)
    GH = spirit_adjoint(kernel, periodic)
    assert np.vdot(y, G(x)) == pytest.approx(np.vdot(GH(y), x), rel=1e-10)


def test_power_iteration_on_scaled_identity():
    assert power_iteration(lambda x: 2 * x, (2, 4, 4), 5) == pytest.approx(2.0)


def test_spirit_kernel_rejects_self_center(rng):
    weights = np.ones((2, 2, 3, 3), dtype=complex)
    with pytest.raises(DataError):
        SpiritKernel(weights, (3, 3))


# ---------------------------
# SPIRiT: reconstrucción
# ---------------------------
def test_spirit_fully_sampled_is_identity(designed9):
    kernel = spirit_calibrate(acr_extract(designed9, (31, 31)), (3, 3), lam=0.0)
    result = spirit_reconstruct(designed9, kernel)
    np.testing.assert_array_equal(result.kspace_full, designed9.samples)
    assert result.iterations == 0 and result.converged


def test_spirit_designed_coils_exact(designed9):
    mask = uniform_mask(64, 64, 2, 1, (31, 31))
    result, kernel = run_spirit(designed9, mask, 3, lam=0.0)
    assert result.iterations <= 200
    assert relative_error(result.kspace_full, designed9.samples) < 1e-4
    assert nrmse(result.image, rsos_image(designed9.samples)) < 1e-4
    assert self_consistency(kernel, result.kspace_full) < 1e-6
    np.testing.assert_array_equal(
        result.kspace_full[:, mask.acquired], designed9.samples[:, mask.acquired]
    )
    trace = result.objective_trace
    assert np.all(np.diff(trace) <= 1e-12 * trace[0])


def test_spirit_recovers_hole_grappa_cannot(make_designed):
    full = make_designed(((0, 0), (0, 1), (0, 2), (0, 3)), 64)
    acquired = np.ones((64, 64), dtype=bool)
    acquired[7:10, 7:10] = False
    mask = SamplingMask(acquired, (31, 31))

    grappa, _ = run_grappa(full, mask, 3, lam=0.0)
    assert grappa.uninterpolatable == 1

    spirit, _ = run_spirit(full, mask, 3, lam=0.0)
    hole = ~acquired
    assert relative_error(spirit.kspace_full[:, hole], full.samples[:, hole]) < 1e-6
    # centro del hueco: sin vecinos adquiridos en el kernel 3x3
    assert relative_error(spirit.kspace_full[:, 8, 8], full.samples[:, 8, 8]) < 1e-6
    assert not np.any(grappa.kspace_full[:, 8, 8])


def test_spirit_noise_ball_is_monotone(make_designed):
    clean = make_designed(((0, 0), (0, 1), (1, 0), (1, 1)), 32)
    noisy = add_noise(clean, 1e-3, seed=3)
    mask = uniform_mask(32, 32, 2, 1, (15, 15))
    epsilon = 1e-6 * mask.acquired_count * clean.coil_count
    result, _ = run_spirit(noisy, mask, 3, lam=0.0, epsilon=epsilon, max_iter=50)
    trace = result.objective_trace
    assert np.all(np.diff(trace) <= 0)
    data = noisy.samples * mask.acquired
    misfit = np.linalg.norm((result.kspace_full - data)[:, mask.acquired]) ** 2
    assert misfit <= epsilon * (1 + 1e-9)


def test_spirit_errors(designed9, make_designed):
    kernel = spirit_calibrate(acr_extract(designed9, (31, 31)), (3, 3))
    data = designed9.undersample(uniform_mask(64, 64, 2, 1, (31, 31)))
    with pytest.raises(UsageError):
        spirit_reconstruct(data, kernel, epsilon=-1.0)
    other = make_designed(((0, 0), (0, 1)), 64)
    with pytest.raises(DataError):
        spirit_reconstruct(other, kernel)


# ---------------------------
# AUTO-SMASH
# ---------------------------
def test_autosmash_without_shifts_is_composite(designed9):
    weights = AutoSmashWeights(np.ones(9, dtype=complex), {})
    composite = autosmash_reconstruct(designed9, weights)
    np.testing.assert_allclose(composite, designed9.samples.sum(axis=0), atol=1e-12)


def test_autosmash_designed_recovers_image(make_designed):
    full = make_designed(((0, 0), (0, 1)), 64)
    mask = uniform_mask(64, 64, 1, 2, (64, 8))
    result, weights = run_autosmash(full, mask, n0=np.array([1.0, 0.0]))
    rho = shepp_logan(64, 64).data
    assert relative_error(result.per_coil_images[0], rho) < 1e-6
    assert weights.reduction == 2


def test_autosmash_single_coil_aliases():
    full = forward_signal(shepp_logan(64, 64), uniform_coil((64, 64)))
    mask = uniform_mask(64, 64, 1, 2, (64, 8))
    result, _ = run_autosmash(full, mask)
    assert nrmse(result.image, np.abs(shepp_logan(64, 64).data)) > 0.1


def test_autosmash_rejects_partial_lines(make_designed):
    full = make_designed(((0, 0), (0, 1)), 32)
    data = full.undersample(uniform_mask(32, 32, 2, 1, (4, 32)))
    with pytest.raises(DataError):
        collected_lines(data)


def test_autosmash_missing_shift_weights(make_designed):
    full = make_designed(((0, 0), (0, 1)), 32)
    data = full.undersample(uniform_mask(32, 32, 1, 2, (32, 6)))
    with pytest.raises(DataError):
        autosmash_reconstruct(data, AutoSmashWeights(np.ones(2, dtype=complex), {}))


def test_reduction_along_ky():
    assert reduction_along_ky(uniform_mask(32, 32, 1, 3, (32, 5))) == 3
    assert reduction_along_ky(SamplingMask.full((8, 8))) == 1
