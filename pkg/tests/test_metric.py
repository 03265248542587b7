# -*- coding: utf-8 -*-
import numpy as np
import pytest

from src.metric.accuracy import (
    LARGE,
    SMALL,
    AccuracyReport,
    classify_direction,
    directional_metric,
    is_consistent,
    metric_predicts_quality,
)
from src.sampling.masks import acr_extract, uniform_mask
from src.simulation.coils import parse_modes
from src.utils.errors import DataError, UsageError


@pytest.fixture(scope="module")
def x_modes_acr(make_designed):
    return acr_extract(make_designed(parse_modes("x3"), 64), (31, 31))


def test_x_modes_predict_only_horizontally(x_modes_acr):
    report = directional_metric(x_modes_acr, (3, 3))
    assert report.err_horizontal < 1e-8
    assert report.err_vertical >= 0.3
    assert (report.label_h, report.label_v) == (SMALL, LARGE)
    assert report.kernel_label == "3x3"


def test_constant_acr_is_trivially_predictable():
    report = directional_metric(np.ones((1, 9, 9), dtype=complex), (3, 3))
    assert report.err_horizontal < 1e-10 and report.err_vertical < 1e-10


def test_metric_is_scale_invariant(x_modes_acr):
    base = directional_metric(x_modes_acr)
    scaled = directional_metric((2 - 3j) * x_modes_acr)
    assert scaled.err_vertical == pytest.approx(base.err_vertical, rel=1e-10)
    assert scaled.err_horizontal == pytest.approx(base.err_horizontal, abs=1e-10)


def test_metric_transpose_swaps_directions(x_modes_acr):
    base = directional_metric(x_modes_acr)
    swapped = directional_metric(x_modes_acr.transpose(0, 2, 1))
    assert swapped.err_horizontal == pytest.approx(base.err_vertical, rel=1e-10)
    assert swapped.err_vertical == pytest.approx(base.err_horizontal, abs=1e-10)


def test_metric_acr_too_small():
    with pytest.raises(DataError):
        directional_metric(np.ones((2, 3, 3), dtype=complex), (3, 3))


def test_classify_direction_threshold_is_strict():
    report = AccuracyReport((3, 3), err_horizontal=0.171, err_vertical=0.55)
    labeled = classify_direction(report, 0.4)
    assert (labeled.label_h, labeled.label_v) == (SMALL, LARGE)
    at_threshold = classify_direction(AccuracyReport((3, 3), 0.4, 0.4), 0.4)
    assert (at_threshold.label_h, at_threshold.label_v) == (SMALL, SMALL)
    with pytest.raises(UsageError):
        classify_direction(report, 0.0)


@pytest.mark.parametrize(
    "errors, nrmse_h, nrmse_v, expected",
    [
        ((0.1, 0.6), 0.02, 0.3, True),
        ((0.1, 0.6), 0.3, 0.02, False),
        ((0.1, 0.2), 0.02, 0.05, True),
        ((0.1, 0.2), 0.02, 0.5, False),
        ((0.7, 0.6), 0.5, 0.3, True),
        ((0.7, 0.6), 0.5, 0.05, False),
    ],
)
def test_is_consistent(errors, nrmse_h, nrmse_v, expected):
    report = classify_direction(AccuracyReport((3, 3), *errors), 0.4)
    assert is_consistent(report, nrmse_h, nrmse_v, 0.1) is expected


def test_symmetric_designed_coils_are_consistent(designed9):
    record = metric_predicts_quality(designed9, 3, 2, (31, 31), lam=0.0)
    assert (record.report.label_h, record.report.label_v) == (SMALL, SMALL)
    assert record.nrmse_h < 0.1 and record.nrmse_v < 0.1
    assert record.consistent
    assert record.reduction == 2


def test_metric_predicts_quality_needs_full_data(designed9):
    sparse = designed9.undersample(uniform_mask(64, 64, 2, 1, (31, 31)))
    with pytest.raises(DataError):
        metric_predicts_quality(sparse)
