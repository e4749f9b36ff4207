"""Minimal SVG polyline drawings of backbones and tip paths."""

import xml.etree.ElementTree as ET

import numpy as np

COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")


def polylines_svg(polylines, labels=None, width=480, height=480, margin=24):
    """SVG document text with one <polyline> per entry of ``polylines``.

    Each polyline is an (n, 2) array of (horizontal, vertical) points in any
    consistent unit; the drawing keeps aspect ratio and puts +vertical up.
    """
    arrays = [np.asarray(p, dtype=float).reshape(-1, 2) for p in polylines]
    allpts = np.vstack(arrays) if arrays else np.zeros((1, 2))
    lo, hi = allpts.min(axis=0), allpts.max(axis=0)
    span = max(float((hi - lo).max()), 1e-12)
    scale = min(width, height) - 2 * margin
    scale /= span

    root = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", version="1.1",
                      width=str(width), height=str(height),
                      viewBox=f"0 0 {width} {height}")
    for i, pts in enumerate(arrays):
        px = margin + (pts[:, 0] - lo[0]) * scale
        py = height - margin - (pts[:, 1] - lo[1]) * scale
        line = ET.SubElement(root, "polyline", fill="none",
                             stroke=COLORS[i % len(COLORS)], **{"stroke-width": "2"},
                             points=" ".join(f"{x:.3f},{y:.3f}" for x, y in zip(px, py)))
        if labels:
            ET.SubElement(line, "title").text = str(labels[i])
    return ET.tostring(root, encoding="unicode")


def write_svg(path, polylines, labels=None, **kw):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(polylines_svg(polylines, labels, **kw))
        fh.write("\n")
