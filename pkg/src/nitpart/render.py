"""Tessellation pictures of two-particle nit sets.

The n x n grid has cell (r, c) holding state (r - 1) * n + c. Partition 1 is
drawn with one visual channel (letters in ASCII, fill colour in SVG) and
partition 2 with another (bracket style in ASCII, hatching in SVG). A third
panel overlays both, so each of the n^2 block intersections is visible as a
unique letter/bracket or colour/hatch combination.
"""

from __future__ import annotations

import colorsys
import xml.etree.ElementTree as ET

from nitpart.errors import UnsupportedCase
from nitpart.partitions import NitSet

LETTERS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
BRACKETS = ["()", "[]", "{}", "<>", "||", "//", "\\\\", "**", "::", "++", "==", "~~"]

CELL = 40
GAP = 30
MARGIN = 20
TITLE_H = 24


def _check(s: NitSet) -> None:
    if s.k != 2 or len(s.partitions) != 2:
        raise UnsupportedCase(f"tessellations need exactly two partitions, got k = {s.k}")
    if s.n > len(BRACKETS):
        raise UnsupportedCase(f"at most {len(BRACKETS)} outcomes per particle can be drawn, got n = {s.n}")


def _num(x: float) -> str:
    return f"{x:.12g}"


def render_ascii(s: NitSet) -> str:
    _check(s)
    n = s.n
    width = len(str(s.params.N))
    labels = [s.block_of(i) for i in range(1, s.params.N + 1)]

    def cell(i: int, first: bool, second: bool) -> str:
        b1, b2 = labels[i - 1]
        text = str(i).rjust(width)
        if second:
            text = BRACKETS[b2][0] + text + BRACKETS[b2][1]
        if first:
            text = LETTERS[b1] + text
        return text

    out = []
    for title, first, second in (
        ("partition 1 (letters)", True, False),
        ("partition 2 (brackets)", False, True),
        ("partitions 1 & 2", True, True),
    ):
        out.append(title)
        for r in range(n):
            out.append(" ".join(cell(r * n + c + 1, first, second) for c in range(n)))
        out.append("")
    out.append("legend")
    for b, block in enumerate(s.partitions[0]):
        out.append(f"  {LETTERS[b]}: " + ",".join(map(str, block)))
    for b, block in enumerate(s.partitions[1]):
        out.append(f"  {BRACKETS[b]}: " + ",".join(map(str, block)))
    return "\n".join(out) + "\n"


def _fill(b: int, n: int) -> str:
    r, g, bl = colorsys.hls_to_rgb(b / n, 0.8, 0.7)
    return "#{:02x}{:02x}{:02x}".format(round(r * 255), round(g * 255), round(bl * 255))


def render_svg(s: NitSet) -> str:
    _check(s)
    n = s.n
    side = n * CELL
    width = 2 * MARGIN + 3 * side + 2 * GAP
    height = 2 * MARGIN + TITLE_H + side
    labels = [s.block_of(i) for i in range(1, s.params.N + 1)]

    svg = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "version": "1.1",
            "width": str(width),
            "height": str(height),
            "viewBox": f"0 0 {width} {height}",
        },
    )
    defs = ET.SubElement(svg, "defs")
    for b in range(n):
        angle = 180.0 * b / n + 45.0
        pat = ET.SubElement(
            defs,
            "pattern",
            {
                "id": f"hatch{b}",
                "patternUnits": "userSpaceOnUse",
                "width": "8",
                "height": "8",
                "patternTransform": f"rotate({_num(angle)})",
            },
        )
        ET.SubElement(pat, "line", {"x1": "0", "y1": "0", "x2": "0", "y2": "8", "stroke": "#000000", "stroke-width": str(1 + b % 3)})

    panels = [("partition 1", True, False), ("partition 2", False, True), ("partitions 1 & 2", True, True)]
    for p, (title, first, second) in enumerate(panels):
        x0 = MARGIN + p * (side + GAP)
        y0 = MARGIN + TITLE_H
        g = ET.SubElement(svg, "g", {"id": f"panel{p + 1}"})
        t = ET.SubElement(g, "text", {"x": str(x0), "y": str(MARGIN + 14), "font-family": "sans-serif", "font-size": "14"})
        t.text = title
        for r in range(n):
            for c in range(n):
                state = r * n + c + 1
                b1, b2 = labels[state - 1]
                x, y = x0 + c * CELL, y0 + r * CELL
                box = {"x": str(x), "y": str(y), "width": str(CELL), "height": str(CELL)}
                ET.SubElement(g, "rect", {**box, "fill": _fill(b1, n) if first else "#ffffff", "stroke": "#000000"})
                if second:
                    ET.SubElement(g, "rect", {**box, "fill": f"url(#hatch{b2})", "fill-opacity": "0.35", "stroke": "none"})
                label = ET.SubElement(
                    g,
                    "text",
                    {
                        "x": _num(x + CELL / 2),
                        "y": _num(y + CELL / 2 + 5),
                        "text-anchor": "middle",
                        "font-family": "sans-serif",
                        "font-size": "14",
                    },
                )
                label.text = str(state)
    body = ET.tostring(svg, encoding="unicode")
    return '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n' + body + "\n"


def render_tessellation(s: NitSet, format: str = "ascii") -> str:
    if format == "ascii":
        return render_ascii(s)
    if format == "svg":
        return render_svg(s)
    raise UnsupportedCase(f"unknown tessellation format {format!r}")
