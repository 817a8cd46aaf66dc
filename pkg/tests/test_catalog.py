import pytest

from mgk.catalog import (
    FIGURE_VERTICES,
    FOUR_REGULAR_COUNTS,
    TWO_FOUR_REGULAR_COUNTS,
    catalog_directory,
    figure_number,
    load_graph,
)

from conftest import corpus_text


@pytest.fixture(scope="module")
def summary():
    return catalog_directory()


def test_published_totals():
    assert sum(FOUR_REGULAR_COUNTS.values()) == 39
    assert sum(TWO_FOUR_REGULAR_COUNTS.values()) == 66


def test_figure_number():
    assert figure_number("fig09.tikz") == 9
    assert figure_number("notes.tikz") is None


def test_caption_map_covers_corpus():
    assert FIGURE_VERTICES[2] == 64 and FIGURE_VERTICES[16] == 38


def test_load_graph_sniffs_format(corpus_refined):
    from mgk.mgf import write_mgf

    text = write_mgf(corpus_refined["fig11/0"])
    assert load_graph(text).n_vertices == 31
    assert load_graph(corpus_text("fig11")).n_vertices == 31


def test_summary_ok(summary):
    assert summary.ok
    assert len(summary.entries) == 15
    assert len(summary.classes) == 15


def test_tallies(summary):
    t = summary.tallies()
    assert t["FourRegular"] == {64: 1}
    assert t["TwoFourRegular"] == {22: 2, 30: 2, 31: 2, 35: 3, 37: 3, 38: 2}


def test_table_statuses(summary):
    rows = {(r.part, r.vertices): r for r in summary.table()}
    assert rows[("I", 64)].status == "match"
    assert rows[("I", 67)].status == "not embedded" and rows[("I", 67)].computed is None
    for n in (22, 35, 37, 38):
        assert rows[("II", n)].status == "match", n
    assert rows[("II", 30)].status == "mismatch"
    assert rows[("II", 31)].status == "mismatch"
    assert rows[("II", 41)].status == "not embedded"


def test_fig10_discrepancy_surfaced(summary):
    assert summary.discrepancies == ["fig10/0 has 31 vertices; its figure is captioned 30"]


def test_records_schema(summary):
    rec = summary.entries[0].record()
    assert set(rec) >= {
        "id", "vertices", "edges", "regularity", "max_length_deviation", "min_separation",
        "connected", "rank", "internal_dof", "classification", "degree2_distance", "refinement",
    }


def test_degree2_distance_only_for_part_two(summary):
    for e in summary.entries:
        assert (e.degree2_distance is None) == (e.id == "fig02/0")


def test_format_table_text(summary):
    text = summary.format_table()
    assert "not embedded" in text and "fig10/0" in text
