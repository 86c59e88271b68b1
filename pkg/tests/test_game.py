import itertools

import pytest
from hypothesis import given, strategies as st

from synq.game import (
    GameSpec,
    Graph,
    check_counit_condition,
    check_star,
    complete_graph,
    cycle_graph,
    make_easiest,
    make_graph_game,
    sync_forced,
    validate_synchronous,
)

from . import oracles


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))) if pairs else set()
    return Graph.from_pairs(n, chosen)


@st.composite
def small_games(draw):
    n = draw(st.integers(1, 3))
    cells = [
        t
        for t in itertools.product(range(n), repeat=4)
        if not (t[2] == t[3])  # off-diagonal question pairs only
    ]
    extra = draw(st.sets(st.sampled_from(cells), max_size=6)) if cells else set()
    return GameSpec.synchronous(n, n, extra)


class TestConstructors:
    @pytest.mark.parametrize("sizes, count", [((2, 3), 12), ((1, 1), 0), ((3, 2), 6)])
    def test_easiest_counts(self, sizes, count):
        spec = make_easiest(*sizes)
        assert len(spec.forbidden) == count
        assert spec.forbidden == sync_forced(*sizes)

    @pytest.mark.parametrize("sizes", [(0, 2), (2, 0)])
    def test_easiest_rejects_empty(self, sizes):
        with pytest.raises(ValueError):
            make_easiest(*sizes)

    def test_k2_and_c5_counts_match_enumeration(self):
        for g, expected in [(complete_graph(2), 8), (cycle_graph(5), 250)]:
            lam = oracles.graph_lambda(g.n, g.sorted_edges())
            assert oracles.count_forbidden(g.n, g.n, lam) == expected
            assert len(make_graph_game(g).forbidden) == expected

    def test_c5_split(self):
        spec = make_graph_game(cycle_graph(5))
        sync = sync_forced(5, 5)
        assert len(spec.forbidden & sync) == 100
        assert len(spec.forbidden - sync) == 150

    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_empty_graph_only_sync(self, n):
        spec = make_graph_game(Graph(n))
        assert len(spec.forbidden) == n * n * (n - 1)

    @given(graphs())
    def test_graph_game_matches_definition(self, g):
        lam = oracles.graph_lambda(g.n, g.sorted_edges())
        spec = make_graph_game(g)
        for a, b, x, y in itertools.product(range(g.n), repeat=4):
            assert spec.lam(a, b, x, y) == lam(a, b, x, y)
        assert validate_synchronous(spec) == []

    def test_diagonal_rule_rejected(self):
        with pytest.raises(ValueError, match="diagonal"):
            GameSpec.synchronous(2, 2, [(0, 0, 1, 1)])

    def test_out_of_range_rule(self):
        with pytest.raises(ValueError):
            GameSpec(2, 2, frozenset({(0, 2, 0, 1)}))


class TestGraph:
    def test_loop(self):
        with pytest.raises(ValueError, match="loop"):
            Graph.from_pairs(2, [(0, 0)])

    def test_range(self):
        with pytest.raises(ValueError, match="range"):
            Graph.from_pairs(3, [(0, 5)])

    def test_duplicate(self):
        with pytest.raises(ValueError, match="duplicate"):
            Graph.from_pairs(3, [(0, 1), (1, 0)])


class TestStar:
    def test_k3_holds(self):
        assert check_star(make_graph_game(complete_graph(3))) == (True, None)

    def test_easiest_holds_exhaustively(self):
        spec = make_easiest(3, 3)
        assert oracles.star_witness(3, oracles.table_lambda(spec.forbidden)) is None
        assert check_star(spec) == (True, None)

    def test_crafted_witness(self, crafted_star):
        lam = oracles.closed(oracles.table_lambda(crafted_star.forbidden))
        assert oracles.star_witness(2, lam) == (0, 0, 0, 1, 1, 1)
        assert check_star(crafted_star) == (False, (0, 0, 0, 1, 1, 1))

    def test_crafted_raw_rules(self, crafted_star):
        # read verbatim, lambda(0,0,1,0) = 1 and (r,s) = (1,0) already connects
        lam = oracles.table_lambda(crafted_star.forbidden)
        assert oracles.star_witness(2, lam) == (0, 0, 0, 1, 1, 0)
        assert check_star(crafted_star, closed=False) == (False, (0, 0, 0, 1, 1, 0))

    def test_rejects_rectangular(self):
        with pytest.raises(ValueError):
            check_star(make_easiest(2, 3))

    @given(small_games())
    def test_matches_bruteforce(self, spec):
        n = spec.inputs
        raw = oracles.table_lambda(spec.forbidden)
        ok, w = check_star(spec)
        assert w == oracles.star_witness(n, oracles.closed(raw))
        assert ok == (w is None)
        assert check_star(spec, closed=False)[1] == oracles.star_witness(n, raw)

    @given(small_games(), st.tuples(*[st.integers(0, 2)] * 4))
    def test_adding_a_rule_rechecked(self, spec, t):
        # no monotonicity in either direction: re-check from scratch
        n = spec.inputs
        t = tuple(v % n for v in t)
        if t[2] == t[3]:
            return
        bigger = GameSpec.synchronous(n, n, spec.forbidden - sync_forced(n, n) | {t})
        lam = oracles.closed(oracles.table_lambda(bigger.forbidden))
        assert check_star(bigger)[1] == oracles.star_witness(n, lam)

    @given(graphs())
    def test_graph_games_satisfy_star(self, g):
        assert check_star(make_graph_game(g))[0]


class TestCounit:
    def test_c5(self):
        assert check_counit_condition(make_graph_game(cycle_graph(5))) == (True, None)

    def test_easiest(self):
        assert check_counit_condition(make_easiest(4, 4)) == (True, None)

    def test_crafted(self, crafted_counit):
        assert check_counit_condition(crafted_counit) == (False, (0, 1))

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            check_counit_condition(make_easiest(3, 2))

    @given(graphs())
    def test_graph_games(self, g):
        assert check_counit_condition(make_graph_game(g))[0]


class TestValidate:
    def test_easiest_ok(self):
        assert validate_synchronous(make_easiest(2, 2)) == []

    def test_missing(self):
        spec = GameSpec(2, 2, sync_forced(2, 2) - {(0, 1, 0, 0)})
        assert validate_synchronous(spec) == ["missing (0,1,0,0)"]

    def test_diagonal(self):
        spec = GameSpec(2, 2, sync_forced(2, 2) | {(0, 0, 1, 1)})
        assert validate_synchronous(spec) == ["diagonal allowed pair forbidden (0,0,1,1)"]
