import pytest

from synthminer.eventlog import EventLog
from synthminer.ordering import (
    STRATEGY_NAMES,
    OrderingStrategy,
    make_order,
    order_bfs,
    order_dfs,
    order_frequency,
    sort_dfa,
)


def test_sort_dfa_b(ls_log):
    assert sort_dfa("b", ls_log) == ["c", "e"]


def test_sort_dfa_c(ls_log):
    # f:4, d:3, e:3 successions; d before e lexicographically.
    assert sort_dfa("c", ls_log) == ["f", "d", "e"]


def test_sort_dfa_no_successors(ls_log):
    # g only ends traces or is followed by d; check an activity with none.
    log = EventLog([(("a", "b"), 1)])
    assert sort_dfa("b", log) == []


def test_order_frequency(ls_log):
    assert order_frequency(ls_log) == ["b", "c", "d", "e", "f", "g"]


def test_order_frequency_small():
    assert order_frequency(EventLog([(("a",), 1)])) == ["a"]
    assert order_frequency(EventLog([(("b",), 2), (("a",), 1)])) == ["b", "a"]


def test_order_bfs_start(ls_log):
    assert order_bfs(ls_log) == ["b", "e", "c", "f", "d", "g"]


def test_order_bfs_end(ls_log):
    assert order_bfs(ls_log.reverse()) == ["g", "d", "f", "c", "e", "b"]


def test_order_bfs_sequential():
    log = EventLog([(("a", "b", "c"), 5)])
    assert order_bfs(log) == ["a", "b", "c"]


def test_order_dfs_start(ls_log):
    assert order_dfs(ls_log) == ["b", "c", "f", "g", "d", "e"]


def test_order_dfs_end(ls_log):
    assert order_dfs(ls_log.reverse()) == ["g", "f", "c", "b", "e", "d"]


def test_order_dfs_sequential_matches_bfs():
    log = EventLog([(("a", "b", "c"), 5)])
    assert order_dfs(log) == order_bfs(log)


def test_order_dfs_single_trace_first_occurrence():
    log = EventLog([(("c", "a", "b", "a"), 1)])
    assert order_dfs(log) == ["c", "a", "b"]


def test_order_dfs_empty():
    assert order_dfs(EventLog()) == []


def test_make_order_dispatch(ls_log):
    expected = {
        "freq": ["b", "c", "d", "e", "f", "g"],
        "bfs-start": ["b", "e", "c", "f", "d", "g"],
        "bfs-end": ["g", "d", "f", "c", "e", "b"],
        "dfs-start": ["b", "c", "f", "g", "d", "e"],
        "dfs-end": ["g", "f", "c", "b", "e", "d"],
    }
    for name in STRATEGY_NAMES:
        assert make_order(ls_log, OrderingStrategy.from_name(name)) == expected[name]


def test_strategy_names_round_trip():
    for name in STRATEGY_NAMES:
        assert OrderingStrategy.from_name(name).name == name
    with pytest.raises(ValueError):
        OrderingStrategy.from_name("alphabetical")


def test_multiple_starts_are_all_seeds():
    # Every start activity seeds the exploration, ranked by start count.
    log = EventLog([(("a", "b"), 5), (("x", "y"), 2)])
    assert order_bfs(log) == ["a", "x", "b", "y"]


def test_orders_are_permutations(ls_log):
    for name in STRATEGY_NAMES:
        order = make_order(ls_log, OrderingStrategy.from_name(name))
        assert sorted(order) == sorted(ls_log.activities)
