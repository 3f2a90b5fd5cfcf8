"""Minimal dependency-free SVG writer for faceted score histograms.

Bars and axis labels only; output carries no timestamps or other
run-varying metadata, so identical inputs produce identical bytes.
"""
from __future__ import annotations

from xml.sax.saxutils import escape

from .scoring import ScoreHistogram

_FACET_W = 640
_FACET_H = 120
_MARGIN_L = 56
_MARGIN_B = 24
_TITLE_H = 18
_BAR_GAP = 4


def _facet(
    name: str, bins: dict[int, int], y_offset: int, max_count: int
) -> list[str]:
    parts = [
        f'<text x="{_MARGIN_L}" y="{y_offset + 14}" font-size="13" '
        f'font-family="sans-serif" font-weight="bold">{escape(name)}</text>'
    ]
    plot_h = _FACET_H - _TITLE_H - _MARGIN_B
    plot_top = y_offset + _TITLE_H
    scores = sorted(bins)
    if not scores:
        return parts
    slot = (_FACET_W - _MARGIN_L) / len(scores)
    bar_w = max(1.0, slot - _BAR_GAP)
    parts.append(
        f'<text x="{_MARGIN_L - 6}" y="{plot_top + 10}" font-size="10" '
        f'font-family="sans-serif" text-anchor="end">{max_count}</text>'
    )
    parts.append(
        f'<line x1="{_MARGIN_L}" y1="{plot_top + plot_h}" x2="{_FACET_W}" '
        f'y2="{plot_top + plot_h}" stroke="#444" stroke-width="1"/>'
    )
    for i, score in enumerate(scores):
        count = bins[score]
        h = 0.0 if max_count == 0 else plot_h * count / max_count
        x = _MARGIN_L + i * slot + _BAR_GAP / 2
        y = plot_top + plot_h - h
        color = "#2b8cbe" if score > 0 else ("#e34a33" if score < 0 else "#999999")
        parts.append(
            f'<rect x="{x:.1f}" y="{y:.1f}" width="{bar_w:.1f}" height="{h:.1f}" '
            f'fill="{color}"/>'
        )
        parts.append(
            f'<text x="{x + bar_w / 2:.1f}" y="{plot_top + plot_h + 14}" '
            f'font-size="10" font-family="sans-serif" text-anchor="middle">'
            f"{score}</text>"
        )
    return parts


def render_histogram_svg(hist: ScoreHistogram, title: str = "Sentiment scores") -> str:
    """One facet for the whole corpus plus one per candidate."""
    facets: list[tuple[str, dict[int, int]]] = [("ALL", hist.bins)]
    facets.extend((name, hist.per_candidate[name]) for name in sorted(hist.per_candidate))
    max_count = max((c for _, bins in facets for c in bins.values()), default=0)
    height = _TITLE_H + len(facets) * _FACET_H
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_FACET_W}" '
        f'height="{height}" viewBox="0 0 {_FACET_W} {height}">',
        f'<text x="8" y="14" font-size="14" font-family="sans-serif">'
        f"{escape(title)}</text>",
    ]
    for i, (name, bins) in enumerate(facets):
        parts.extend(_facet(name, bins, _TITLE_H + i * _FACET_H, max_count))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
