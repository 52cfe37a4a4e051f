"""Orthographic SVG rendering: determinism and witness label placement."""

from __future__ import annotations

from sphereflow.flows import FlowInstance, decode_witness, encode_nzk
from sphereflow.render import render_svg, witness_point_labels
from sphereflow.solver import sat_solve


def test_render_is_byte_deterministic(icosi):
    a = render_svg(icosi, title="unit test")
    b = render_svg(icosi, title="unit test")
    assert a == b
    assert a.startswith("<svg")
    assert a.rstrip().endswith("</svg>")


def test_render_draws_all_points_and_circles(icosi):
    svg = render_svg(icosi)
    # every point is one circle element; plus silhouette and triple planes
    assert svg.count("<circle") >= icosi.n_points + 1
    assert "<ellipse" in svg
    assert "-0.000" not in svg


def test_render_labels_appear(icosi, icosi_q):
    inst = FlowInstance(icosi_q, 4)
    lab = decode_witness(sat_solve(encode_nzk(inst)).model, inst)
    labels = witness_point_labels(icosi_q, lab.values)
    assert set(labels) == set(range(icosi.n_points))
    svg = render_svg(icosi, labels=labels, title="icosi k=4")
    # signed value text appears for every point
    assert svg.count("<text") >= icosi.n_points
    assert ("&gt;+" not in svg)
    for i, value in labels.items():
        assert value != 0
        rep, sign = icosi_q.orientation[i]
        assert value == lab.values[rep] * sign


def test_antipodal_points_carry_negated_labels(icosi, icosi_q):
    values = tuple(range(1, icosi_q.n_reps + 1))
    labels = witness_point_labels(icosi_q, values)
    # find the antipode partner of each point through the quotient
    by_rep: dict[int, list[int]] = {}
    for i, (rep, _) in enumerate(icosi_q.orientation):
        by_rep.setdefault(rep, []).append(i)
    for rep, members in by_rep.items():
        assert len(members) == 2
        a, b = members
        assert labels[a] == -labels[b]
        assert abs(labels[a]) == values[rep]


def test_render_varies_with_title_but_layout_stable(icosi):
    a = render_svg(icosi, title="one")
    b = render_svg(icosi, title="two")
    # titles differ but the projected geometry is identical
    strip = lambda s: "\n".join(
        line for line in s.splitlines() if "<text" not in line
    )
    assert strip(a) == strip(b)
    assert a != b
