# -*- coding: utf-8 -*-
"""
Ops: muestra el reporte CSV como tabla.
"""

from __future__ import annotations

from src.formats.report import read_report


def handle_report(args) -> int:
    """Lógica principal del subcomando report."""
    df = read_report(args.report)
    print("=" * 72)
    print(f"📊 Reporte: {args.report} ({len(df)} filas)")
    print("=" * 72)
    if df.empty:
        print("(sin filas)")
    else:
        print(df.to_string(index=False, na_rep="-"))
    large = df[(df["label_v"] == "large") | (df["label_h"] == "large")]
    print("-" * 72)
    print(f"Direcciones a evitar (error grande): {len(large)} filas")
    print("=" * 72)
    return 0
