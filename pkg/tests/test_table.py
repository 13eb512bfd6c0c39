import json

import pytest

from gw24.engine import Engine
from gw24.table import (
    GOLDEN_Q,
    build_rows,
    render_csv,
    render_json,
    render_markdown,
)


@pytest.fixture(scope="module")
def engine6():
    eng = Engine()
    eng.solve_up_to(6)
    return eng


def test_rows_match_reference(engine6):
    rows = build_rows(engine6, 6, with_nd=True)
    assert [(r.d, r.q_d, r.n_points) for r in rows[:3]] == [
        (1, 0, 5), (2, 2, 9), (3, 504, 13),
    ]
    assert (rows[5].d, rows[5].q_d, rows[5].n_points) == (6, 67992124121040, 25)
    for r in rows:
        assert r.n_points == 4 * r.d + 1
        assert r.n_d == r.d**3 * r.q_d
        assert r.caveat == (r.d < 3)
        assert r.q_d == GOLDEN_Q[r.d]


def test_markdown_note_on_degree_two(engine6):
    text = render_markdown(build_rows(engine6, 3))
    assert "twice the number of quadrics" in text
    assert text.count("twice") == 1


def test_rendering_is_pure(engine6):
    rows = build_rows(engine6, 4, with_nd=True)
    assert render_markdown(rows) == render_markdown(list(rows))
    assert render_csv(rows) == render_csv(list(rows))
    assert render_json(rows) == render_json(list(rows))


def test_json_values_are_decimal_strings(engine6):
    rows = build_rows(engine6, 6, with_nd=True)
    payload = json.loads(render_json(rows))
    for entry, row in zip(payload["rows"], rows):
        assert entry["q_d"] == str(row.q_d)
        assert int(entry["q_d"]) == row.q_d
        assert int(entry["n_d"]) == row.n_d


def test_build_rows_rejects_degree_zero(engine6):
    with pytest.raises(ValueError):
        build_rows(engine6, 0)
