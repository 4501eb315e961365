import re

from src.front_core import cable_link_front, lambda_front, meridian_eye_front, torus_braid_front
from src.moves import stabilize
from src.svg_render import SvgOptions, render_steps, render_svg


def _root_attribute(svg: str, name: str) -> str:
    return re.search(rf'<svg[^>]* {name}="([^"]*)"', svg).group(1)


def _component_paths(svg: str):
    return re.findall(r'<path class="component"[^>]*/>', svg)


def test_lambda_zero_is_one_uncusped_path():
    svg = render_svg(lambda_front(1))
    assert svg.startswith("<?xml")
    assert len(_component_paths(svg)) == 1
    assert _root_attribute(svg, "data-cusps") == "0"
    assert _root_attribute(svg, "data-crossings") == "0"


def test_stabilized_lambda_has_two_cusps():
    svg = render_svg(stabilize(lambda_front(1), 0, "+"))
    assert _root_attribute(svg, "data-cusps") == "2"
    assert len(_component_paths(svg)) == 1


def test_torus_braid_counts():
    svg = render_svg(torus_braid_front(2, 3))
    assert _root_attribute(svg, "data-crossings") == "4"
    assert _root_attribute(svg, "data-cusps") == "0"
    assert _root_attribute(svg, "data-components") == "1"


def test_one_path_per_component_with_labels():
    diagram = cable_link_front(2, 3).replace(labels={0: 1, 1: 0})
    svg = render_svg(diagram)
    paths = _component_paths(svg)
    assert len(paths) == 2
    assert 'data-label="1"' in paths[0] and 'data-label="0"' in paths[1]
    assert svg.count('class="seam"') == 2


def test_rendering_is_deterministic():
    diagram = meridian_eye_front()
    assert render_svg(diagram) == render_svg(diagram)


def test_options_from_config():
    options = SvgOptions.from_config({"svg": {"x_step": 10, "margin": 5, "palette": ["#000000"]}})
    assert options.x_step == 10.0 and options.margin == 5.0
    assert options.palette == ("#000000",)
    assert options.z_step == SvgOptions().z_step
    svg = render_svg(meridian_eye_front(), options)
    # four events at 10 each plus two margins
    assert 'width="50.00"' in svg
    assert 'stroke="#000000"' in svg


def test_render_steps_one_document_per_front():
    fronts = [lambda_front(1), stabilize(lambda_front(1), 0, "-")]
    documents = render_steps(fronts)
    assert len(documents) == 2
    assert _root_attribute(documents[1], "data-cusps") == "2"
