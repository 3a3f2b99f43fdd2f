import io
import math

from detsssp.bench import FIELDS, bench_graph, bench_row, run_bench, write_csv


def _stable(row):
    return {k: v for k, v in row.items() if k != "wall_time"}


def test_rows_follow_the_sizes():
    rows = run_bench([256, 512, 1024], W=64, warm=False)
    assert [r["m"] for r in rows] == [256, 512, 1024]
    assert all(r["outcome"] == "distances" for r in rows)
    assert all(r["W"] == 64 for r in rows)


def test_non_timing_columns_are_deterministic():
    a = bench_row(1 << 13, seed=4)
    b = bench_row(1 << 13, seed=4)
    assert _stable(a) == _stable(b)


def test_recursion_shape_at_a_recursive_size():
    row = bench_row(1 << 13)
    m = row["m"]
    assert row["recursion_depth"] > 0
    assert row["max_level_edges"] <= 2 * m
    # every level of every scaling iteration is at most about m edges
    levels = row["iterations"] * (row["recursion_depth"] + 1)
    assert row["total_recursive_edges"] <= 2 * m * levels
    assert row["recursion_depth"] <= 4 * math.log2(m)


def test_bench_graph_has_the_full_negative_range():
    g = bench_graph(1024, 1 << 10, 0)
    assert g.W == 1 << 10 and g.n == 256


def test_csv_header():
    buf = io.StringIO()
    write_csv(run_bench([64], warm=False), buf)
    assert buf.getvalue().splitlines()[0] == ",".join(FIELDS)
