"""
Deterministic SVG drawings of B2 alcoves.

``fig1`` shows the alcoves around the restricted region with the linked
family A..E labelled; ``fig2`` shows the same family translated by p*omega_2
with the two lower walls of the strip (s = p and 2r + s = 2p) drawn thick.

Points are drawn in the Euclidean embedding ``(r, s) -> (r + s/2, s/2)`` so
that the walls meet at their true angles. Labels sit at the vertex average of
their alcove, which is always strictly inside it. Output depends only on the
arguments: coordinates are printed with fixed precision and elements are
emitted in a fixed order.
"""

from fractions import Fraction

from .affine import B2_FAMILY_BANDS, alcove_polygon, enumerate_alcoves, is_odd_prime
from .errors import InvalidInput
from .rootsys import build_root_system

FAMILY = "ABCDE"
FIG1_WINDOW = [(1, 1), (1, 2), (1, 3), (1, 2)]
FIG2_WINDOW = [(1, 1), (2, 3), (2, 4), (2, 3)]


def scale_for(p: int, width: int) -> Fraction:
    return Fraction(width, 2 * p)


def to_svg(point, p: int, width: int = 400) -> tuple[Fraction, Fraction]:
    r, s = point
    k = scale_for(p, width)
    return (k * (r + Fraction(s, 2)), -k * Fraction(s, 2))


def from_svg(x, y, p: int, width: int = 400) -> tuple[Fraction, Fraction]:
    k = scale_for(p, width)
    s = -2 * Fraction(y) / k
    return (Fraction(x) / k - s / 2, s)


def _num(v) -> str:
    return f"{float(v):.3f}"


def translated_bands(bands):
    """Bands of an alcove moved by p*omega_2: every root but a1 crosses one more wall."""
    return (bands[0],) + tuple(n + 1 for n in bands[1:])


def _check_p(p: int) -> None:
    rs = build_root_system("B", 2)
    if not is_odd_prime(p) or p < rs.h:
        raise InvalidInput(f"p={p} must be an odd prime >= h = {rs.h}")


def render(mode: str, p: int, width: int = 400, height: int = 400) -> str:
    if mode not in ("fig1", "fig2"):
        raise InvalidInput(f"unknown figure {mode!r}; choose fig1 or fig2")
    _check_p(p)
    rs = build_root_system("B", 2)
    if mode == "fig1":
        window, labels = FIG1_WINDOW, {k: B2_FAMILY_BANDS[k] for k in FAMILY}
        title = f"Some alcoves for type B2, p={p}"
    else:
        window = FIG2_WINDOW
        labels = {k: translated_bands(B2_FAMILY_BANDS[k]) for k in FAMILY}
        title = f"Translated alcoves along the wall s=p, type B2, p={p}"
    alcoves = enumerate_alcoves(rs, p, window)
    by_bands = {a.bands: a for a in alcoves}
    missing = [k for k, b in labels.items() if b not in by_bands]
    if missing:
        raise InvalidInput(f"alcoves {missing} fall outside the drawing window")

    polys = {a.bands: [to_svg(v, p, width) for v in alcove_polygon(a.bands, p, rs)] for a in alcoves}
    xs = [x for poly in polys.values() for x, _ in poly]
    ys = [y for poly in polys.values() for _, y in poly]
    pad = scale_for(p, width) * Fraction(1, 2)
    vb = (min(xs) - pad, min(ys) - pad, max(xs) - min(xs) + 2 * pad, max(ys) - min(ys) + 3 * pad)

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="{_num(vb[0])} {_num(vb[1])} {_num(vb[2])} {_num(vb[3])}">',
        f"<title>{title}</title>",
        f'<desc>Euclidean embedding x = (r + s/2, s/2) of rho-shifted coordinates (r, s); scale {_num(scale_for(p, width))} per unit.</desc>',
        '<g id="alcoves" fill="none" stroke="#000000" stroke-width="1">',
    ]
    for bands in sorted(polys):
        pts = " ".join(f"{_num(x)},{_num(y)}" for x, y in polys[bands])
        tag = "-".join(map(str, bands))
        out.append(f'<polygon data-bands="{tag}" points="{pts}"/>')
    out.append("</g>")

    if mode == "fig2":
        out.append('<g id="strip-boundary" stroke="#000000" stroke-width="4">')
        for k in FAMILY:
            verts = alcove_polygon(labels[k], p, rs)
            for i, a in enumerate(verts):
                b = verts[(i + 1) % len(verts)]
                on_s = a[1] == b[1] == p
                on_diag = 2 * a[0] + a[1] == 2 * b[0] + b[1] == 2 * p
                if on_s or on_diag:
                    (x1, y1), (x2, y2) = to_svg(a, p, width), to_svg(b, p, width)
                    out.append(f'<line x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" y2="{_num(y2)}"/>')
        out.append("</g>")

    font = _num(scale_for(p, width) * Fraction(3, 5))
    out.append(f'<g id="labels" font-family="serif" font-size="{font}" text-anchor="middle">')
    for k in FAMILY:
        x, y = to_svg(by_bands[labels[k]].sample, p, width)
        tag = "-".join(map(str, labels[k]))
        out.append(f'<text id="label-{k}" data-bands="{tag}" x="{_num(x)}" y="{_num(y)}">{k}</text>')
    out.append("</g>")
    lx, ly = vb[0] + pad / 2, vb[1] + vb[3] - pad / 2
    out.append(f'<text id="legend" x="{_num(lx)}" y="{_num(ly)}" font-family="serif" font-size="{font}">'
               f"B2, p={p}, x = (r + s/2, s/2)</text>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write(mode: str, p: int, path, width: int = 400, height: int = 400) -> None:
    text = render(mode, p, width, height)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
