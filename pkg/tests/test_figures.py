import re
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from alcove.affine import Alcove, B2_FAMILY_BANDS
from alcove.errors import InvalidInput
from alcove.figures import from_svg, render, to_svg, translated_bands, write
from alcove.rootsys import build_root_system

SVG = "{http://www.w3.org/2000/svg}"
B2 = build_root_system("B", 2)


def _labels(text):
    root = ET.fromstring(text.encode())
    return {
        t.get("id")[len("label-"):]: (t.get("data-bands"), Fraction(t.get("x")), Fraction(t.get("y")))
        for t in root.iter(SVG + "text") if (t.get("id") or "").startswith("label-")
    }


def test_coordinate_round_trip():
    for pt in [(1, 1), (3, 6), (Fraction(7, 3), Fraction(2, 5))]:
        assert from_svg(*to_svg(pt, 5), 5) == tuple(Fraction(c) for c in pt)


@pytest.mark.parametrize("mode", ["fig1", "fig2"])
@pytest.mark.parametrize("p", [5, 7, 11])
def test_labels_inside_their_alcoves(mode, p):
    text = render(mode, p)
    labels = _labels(text)
    assert sorted(labels) == list("ABCDE")
    for k, (tag, x, y) in labels.items():
        bands = tuple(int(b) for b in tag.split("-"))
        expected = B2_FAMILY_BANDS[k] if mode == "fig1" else translated_bands(B2_FAMILY_BANDS[k])
        assert bands == expected
        # coordinates are printed to 3 decimals; the anchor stays inside after rounding
        assert Alcove(bands, B2, p).contains(from_svg(x, y, p))


def test_fig2_label_a_is_alcove_of_translated_weight():
    labels = _labels(render("fig2", 5))
    assert labels["A"][0] == "1-2-3-2"


def test_fig2_draws_strip_boundary():
    root = ET.fromstring(render("fig2", 5).encode())
    groups = {g.get("id"): g for g in root.iter(SVG + "g")}
    lines = list(groups["strip-boundary"].iter(SVG + "line"))
    assert lines
    for ln in lines:
        a = from_svg(Fraction(ln.get("x1")), Fraction(ln.get("y1")), 5)
        b = from_svg(Fraction(ln.get("x2")), Fraction(ln.get("y2")), 5)
        assert (a[1] == b[1] == 5) or (2 * a[0] + a[1] == 2 * b[0] + b[1] == 10)


@pytest.mark.parametrize("mode", ["fig1", "fig2"])
def test_byte_stable(mode, tmp_path):
    write(mode, 5, tmp_path / "a.svg")
    write(mode, 5, tmp_path / "b.svg")
    assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()


def test_svg_header_and_size():
    text = render("fig1", 5, 600, 300)
    root = ET.fromstring(text.encode())
    assert root.get("version") == "1.1"
    assert (root.get("width"), root.get("height")) == ("600", "300")
    assert re.search(r"x = \(r \+ s/2, s/2\)", text)


@pytest.mark.parametrize("p", [4, 3, 9, 2])
def test_bad_p(p):
    with pytest.raises(InvalidInput):
        render("fig1", p)


def test_bad_mode():
    with pytest.raises(InvalidInput):
        render("fig3", 5)
