"""Self-contained SVG emitters: grayscale heatmaps and two-color label maps.

Every emitted file is plain text with no external assets, and each cell rect
carries its lattice coordinates and sampled value as data attributes at full
precision, so plots double as machine-readable scan records.
"""

from __future__ import annotations

BOUNDARY_HEADER = "x,y,u,v,label_u,label_v"

PANEL = 300.0      # drawing area per panel, px
MARGIN_L = 56.0
MARGIN_T = 34.0
MARGIN_B = 44.0
GAP = 48.0

LABEL_COLORS = {-1: "#4575b4", 0: "#eeeeee", 1: "#d73027"}


def _fmt(v: float) -> str:
    return f"{v:.4f}".rstrip("0").rstrip(".")


def _gray(t: float) -> str:
    level = int(round(255.0 * min(max(t, 0.0), 1.0)))
    return f"#{level:02x}{level:02x}{level:02x}"


def _header(width: float, height: float, title: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f'<title>{title}</title>',
        f'<rect width="{_fmt(width)}" height="{_fmt(height)}" fill="white"/>',
        f'<text x="{_fmt(MARGIN_L)}" y="20" font-family="monospace" '
        f'font-size="13">{title}</text>',
    ]


def _panel_frame(ox: float, box, caption: str) -> list[str]:
    x_min, x_max, y_min, y_max = box
    top, bottom = MARGIN_T, MARGIN_T + PANEL
    parts = [
        f'<rect x="{_fmt(ox)}" y="{_fmt(top)}" width="{_fmt(PANEL)}" '
        f'height="{_fmt(PANEL)}" fill="none" stroke="black" stroke-width="1"/>',
        f'<text x="{_fmt(ox)}" y="{_fmt(bottom + 16)}" font-family="monospace" '
        f'font-size="11">x={_fmt(x_min)}</text>',
        f'<text x="{_fmt(ox + PANEL - 40)}" y="{_fmt(bottom + 16)}" '
        f'font-family="monospace" font-size="11">x={_fmt(x_max)}</text>',
        f'<text x="{_fmt(ox - 50)}" y="{_fmt(bottom)}" font-family="monospace" '
        f'font-size="11">y={_fmt(y_min)}</text>',
        f'<text x="{_fmt(ox - 50)}" y="{_fmt(top + 10)}" font-family="monospace" '
        f'font-size="11">y={_fmt(y_max)}</text>',
        f'<text x="{_fmt(ox)}" y="{_fmt(bottom + 32)}" font-family="monospace" '
        f'font-size="11">{caption}</text>',
    ]
    return parts


def heatmap_svg(title: str, box, grid, rows) -> str:
    """Two-panel grayscale heatmap of u and v over the box.

    `rows` holds row-major (x, y, u, v) lattice samples as produced by the
    holomorphy lattice.  Each panel scales linearly between its own scanned
    min and max (shown in the caption); cells carry data-x/data-y/data-u or
    data-v attributes with 17 significant digits.
    """
    n_x, n_y = grid
    if len(rows) != n_x * n_y:
        raise ValueError(f"expected {n_x * n_y} rows, got {len(rows)}")
    us = [r[2] for r in rows]
    vs = [r[3] for r in rows]
    panels = [
        ("u", 2, min(us), max(us)),
        ("v", 3, min(vs), max(vs)),
    ]
    width = MARGIN_L + 2 * PANEL + GAP + 20
    height = MARGIN_T + PANEL + MARGIN_B
    out = _header(width, height, title)
    cw, ch = PANEL / n_x, PANEL / n_y
    for p, (comp, idx, vmin, vmax) in enumerate(panels):
        ox = MARGIN_L + p * (PANEL + GAP)
        span = vmax - vmin
        caption = f"{comp} in [{vmin:.6g}, {vmax:.6g}]"
        out += _panel_frame(ox, box, caption)
        for k, row in enumerate(rows):
            i, j = divmod(k, n_y)
            val = row[idx]
            t = 0.5 if span == 0 else (val - vmin) / span
            px = ox + i * cw
            py = MARGIN_T + (n_y - 1 - j) * ch
            out.append(
                f'<rect x="{_fmt(px)}" y="{_fmt(py)}" width="{_fmt(cw)}" '
                f'height="{_fmt(ch)}" fill="{_gray(t)}" '
                f'data-x="{row[0]:.17g}" data-y="{row[1]:.17g}" '
                f'data-{comp}="{val:.17g}"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def parse_boundary_csv(text: str) -> list[tuple[float, float, float, float, int, int]]:
    """Read back the decision-boundary CSV (x,y,u,v,label_u,label_v)."""
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines or lines[0].strip() != BOUNDARY_HEADER:
        raise ValueError(f"boundary CSV must start with header {BOUNDARY_HEADER!r}")
    rows = []
    for ln in lines[1:]:
        cells = ln.split(",")
        if len(cells) != 6:
            raise ValueError(f"malformed boundary row {ln!r}")
        x, y, u, v = (float(c) for c in cells[:4])
        lu, lv = int(cells[4]), int(cells[5])
        if lu not in LABEL_COLORS or lv not in LABEL_COLORS:
            raise ValueError(f"labels must be -1, 0 or 1, got {ln!r}")
        rows.append((x, y, u, v, lu, lv))
    if not rows:
        raise ValueError("boundary CSV has no data rows")
    return rows


def label_map_svg(title: str, rows) -> str:
    """Two-panel label map from decision-boundary rows.

    `rows` are (x, y, u, v, label_u, label_v); labels -1/+1 get the two main
    colors and 0 (exactly on the boundary) a neutral band color.
    """
    xs = sorted({r[0] for r in rows})
    ys = sorted({r[1] for r in rows})
    n_x, n_y = len(xs), len(ys)
    if len(rows) != n_x * n_y:
        raise ValueError("rows do not form a full lattice")
    box = (xs[0], xs[-1], ys[0], ys[-1])
    x_index = {x: i for i, x in enumerate(xs)}
    y_index = {y: j for j, y in enumerate(ys)}
    width = MARGIN_L + 2 * PANEL + GAP + 20
    height = MARGIN_T + PANEL + MARGIN_B
    out = _header(width, height, title)
    cw, ch = PANEL / n_x, PANEL / n_y
    for p, (comp, idx) in enumerate((("label_u", 4), ("label_v", 5))):
        ox = MARGIN_L + p * (PANEL + GAP)
        out += _panel_frame(ox, box, f"{comp}: -1 blue, +1 red, 0 neutral")
        for row in rows:
            label = int(row[idx])
            px = ox + x_index[row[0]] * cw
            py = MARGIN_T + (n_y - 1 - y_index[row[1]]) * ch
            out.append(
                f'<rect x="{_fmt(px)}" y="{_fmt(py)}" width="{_fmt(cw)}" '
                f'height="{_fmt(ch)}" fill="{LABEL_COLORS[label]}" '
                f'data-x="{row[0]:.17g}" data-y="{row[1]:.17g}" '
                f'data-label="{label}"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
