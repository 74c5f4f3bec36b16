import os

import pytest

from stirling_gautschi.core import DomainError
from stirling_gautschi.figures import SCHEMAS, FigureBuilder, FigureId, render_svg


@pytest.fixture
def builder(scanner, tmpdir):
    return FigureBuilder(
        x_max=1.0, x_step=0.25, alpha_samples=5, out_dir=str(tmpdir), scanner=scanner
    )


def test_parse():
    assert FigureId.parse("m-half") is FigureId.M_HALF
    with pytest.raises(DomainError, match="unknown figure"):
        FigureId.parse("m-three")


def test_schemas_cover_every_figure():
    assert set(SCHEMAS) == set(FigureId)
    for schema in SCHEMAS.values():
        assert schema.abscissa in ("x", "y")
        assert schema.curves


def test_m_half(builder):
    series = builder.build("m-half")
    assert series.header == [
        "abscissa",
        "m_half",
        "lower_24x12",
        "upper_24x12sqrt5",
    ]
    assert series.abscissa == (0.0, 0.25, 0.5, 0.75, 1.0)
    assert series.column("lower_24x12")[0] == -1 / 12
    assert series.column("m_half")[-1] == pytest.approx(-0.0271362, abs=1e-7)
    assert series.inconsistencies() == []


@pytest.mark.parametrize(
    "figure_id, first",
    [
        (FigureId.M_ZERO, 0.25),
        (FigureId.M_ONE, 0.0),
        (FigureId.M_NEGHALF, 0.75),
        (FigureId.M_TWO, 0.0),
    ],
)
def test_stirling_figures(builder, figure_id, first):
    series = builder.build(figure_id)
    assert series.abscissa[0] == first
    assert series.abscissa[-1] == 1.0
    assert len(series.columns) == 3
    assert series.inconsistencies() == []


def test_iota_bounds(builder):
    series = builder.build(FigureId.IOTA_BOUNDS)
    assert series.columns == ("iota_max_over_alpha", "upper_8y3", "upper_conj_8y4")
    assert series.abscissa == (0.0, 0.25, 0.5, 0.75, 1.0)
    # at y = 0 the only point is (0, 0)
    assert series.column("iota_max_over_alpha")[0] == pytest.approx(0, abs=1e-10)
    assert series.column("upper_8y3")[0] == pytest.approx(1 / 3)
    assert series.inconsistencies() == []


@pytest.mark.parametrize(
    "figure_id", [FigureId.MHAT_UPPER, FigureId.MHAT_LOWER, FigureId.MHAT_TWO_SIDED]
)
def test_mhat_figures(builder, figure_id):
    series = builder.build(figure_id)
    schema = SCHEMAS[figure_id]
    assert series.columns == schema.curves + schema.lower + schema.upper
    assert all(len(row) == len(series.columns) for row in series.values)
    assert series.inconsistencies() == []


def test_two_sided_envelope(builder):
    series = builder.build(FigureId.MHAT_TWO_SIDED)
    low = series.column("mhat_min_over_alpha")
    high = series.column("mhat_max_over_alpha")
    assert all(lo <= hi for lo, hi in zip(low, high))
    # only alpha = 0 lies over y = 0
    assert low[0] == high[0]
    assert low[0] == pytest.approx(-0.0723649, abs=1e-7)


def test_csv_is_reproducible(builder, tmpdir):
    first = builder.write("m-half", out=str(tmpdir.join("a.csv")))
    second = builder.write("m-half", out=str(tmpdir.join("b.csv")))
    with open(first, "rb") as f:
        a = f.read()
    with open(second, "rb") as f:
        b = f.read()
    assert a == b
    assert b"\r" not in a
    assert a.startswith(b"abscissa,m_half,lower_24x12,upper_24x12sqrt5\n")
    assert len(a.splitlines()) == 6


def test_default_path(builder, tmpdir):
    path = builder.write(FigureId.M_ONE)
    assert path == os.path.join(str(tmpdir), "m-one.csv")
    assert os.path.exists(path)


def test_svg(builder, tmpdir):
    path = builder.write("m-zero", fmt="svg", out=str(tmpdir.join("sub", "m.svg")))
    with open(path) as f:
        svg = f.read()
    assert svg.startswith("<svg")
    assert svg.rstrip().endswith("</svg>")
    assert svg.count("<polyline") == 3
    assert "<title>m-zero</title>" in svg
    assert render_svg(builder.build("m-zero")) == svg


def test_write_errors(builder):
    with pytest.raises(DomainError, match="csv or svg"):
        builder.write("m-half", fmt="png")
    with pytest.raises(DomainError, match="unknown figure"):
        builder.write("no-such-figure")


@pytest.mark.slow
def test_write_all(scanner, tmpdir):
    builder = FigureBuilder(out_dir=str(tmpdir), scanner=scanner)
    paths = builder.write_all()
    assert len(paths) == len(FigureId)
    for figure_id in FigureId:
        assert builder.build(figure_id).inconsistencies() == []


def test_conjectured_stretch(builder):
    series = builder.build(FigureId.MHAT_TWO_SIDED)
    # x_max = 1 keeps every abscissa below y = 2
    assert series.conjectured("upper_star") == list(series.abscissa)
    assert series.conjectured("lower_24y12") == []
    svg = render_svg(series)
    assert svg.count("stroke-dasharray") == 2
    assert "upper_star (conjectured below y=2)" in svg


def test_conjectured_stretch_ends_at_two(scanner, tmpdir):
    builder = FigureBuilder(
        x_max=3.0, x_step=0.5, alpha_samples=3, out_dir=str(tmpdir), scanner=scanner
    )
    series = builder.build(FigureId.MHAT_UPPER)
    assert series.conjectured("upper_star") == [0.0, 0.5, 1.0, 1.5]
    assert series.conjectured("upper_plus") == []
    svg = render_svg(series)
    # one dashed and one solid polyline for upper_star
    assert svg.count("<polyline") == len(series.columns) + 1
    assert series.inconsistencies() == []
