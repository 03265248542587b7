# -*- coding: utf-8 -*-
"""
Ops: métrica direccional sobre la ACR y fila del reporte CSV.
"""

from __future__ import annotations

from pathlib import Path

from src.formats.report import append_report
from src.metric.accuracy import directional_metric, metric_predicts_quality
from src.ops.common import acr_shape, check_distinct_paths, load_kspace
from src.sampling.masks import acr_extract


def handle_metric(args) -> int:
    """Lógica principal del subcomando metric."""
    check_distinct_paths([args.input], [args.report])
    full = load_kspace(args.input)
    acr = acr_shape(args.acr, full.grid.shape)
    dataset = args.dataset or Path(args.input).stem

    nrmse_h = nrmse_v = None
    consistent = None
    if args.with_recon:
        record = metric_predicts_quality(
            full, args.kernel, args.r, acr, args.threshold, lam=args.lam, boundary=args.boundary
        )
        report, nrmse_h, nrmse_v, consistent = (
            record.report,
            record.nrmse_h,
            record.nrmse_v,
            record.consistent,
        )
    else:
        report = directional_metric(acr_extract(full, acr), (args.kernel, args.kernel), args.threshold)

    row = {
        "dataset": dataset,
        "kernel": report.kernel_label,
        "err_vertical": report.err_vertical,
        "err_horizontal": report.err_horizontal,
        "label_v": report.label_v,
        "label_h": report.label_h,
        "nrmse_v": nrmse_v,
        "nrmse_h": nrmse_h,
    }
    if args.report:
        append_report(args.report, row)

    print("=" * 60)
    print(f"🧭 Métrica direccional: {dataset}, kernel {report.kernel_label}, umbral {report.threshold}")
    print(f"↔️  Horizontal: {report.err_horizontal:.1%} ({report.label_h})")
    print(f"↕️  Vertical:   {report.err_vertical:.1%} ({report.label_v})")
    if consistent is not None:
        print(f"📏 NRMSE R={args.r}: horizontal {nrmse_h:.4e}, vertical {nrmse_v:.4e}")
        print("✅ La métrica predice la calidad" if consistent else "⚠️  La métrica NO predice la calidad")
    if args.report:
        print(f"📝 Reporte: {args.report}")
    print("=" * 60)
    return 0
