import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from synq.classical import (
    ClassicalPoint,
    NotAPointError,
    cayley_table,
    convolution_closed,
    convolve,
    enumerate_classical_points,
    is_point,
    point_to_model,
    point_violations,
)
from synq.game import Graph, GameSpec, complete_graph, cycle_graph, make_easiest, make_graph_game, petersen_graph
from synq.presentation import delta_on_generator, evaluate_on_points
from synq.repcheck import verify_model

from . import oracles
from .conftest import named_graphs


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))) if pairs else set()
    return Graph.from_pairs(n, chosen)


@st.composite
def small_games(draw):
    n_in, n_out = draw(st.integers(1, 3)), draw(st.integers(1, 3))
    cells = [t for t in itertools.product(range(n_out), range(n_out), range(n_in), range(n_in)) if t[2] != t[3]]
    extra = draw(st.sets(st.sampled_from(cells), max_size=8)) if cells else set()
    return GameSpec.synchronous(n_in, n_out, extra)


def maps(points):
    return [p.map for p in points]


def rotation(k, n=5):
    return ClassicalPoint(tuple((x + k) % n for x in range(n)), True)


class TestEnumeration:
    def test_easiest_all_maps(self):
        assert maps(enumerate_classical_points(make_easiest(2, 3))) == list(itertools.product(range(3), repeat=2))

    def test_counts(self, c5):
        assert len(enumerate_classical_points(c5, invertible=True)) == 10
        assert len(enumerate_classical_points(make_graph_game(petersen_graph()), invertible=True)) == 120
        assert len(enumerate_classical_points(make_graph_game(complete_graph(4)))) == 24

    def test_k3_endomorphisms_are_bijections(self):
        pts = enumerate_classical_points(make_graph_game(complete_graph(3)))
        assert maps(pts) == list(itertools.permutations(range(3)))

    def test_invertible_needs_square(self):
        with pytest.raises(ValueError):
            enumerate_classical_points(make_easiest(2, 3), invertible=True)

    @pytest.mark.parametrize("name", sorted(named_graphs()))
    def test_named_graphs_against_oracle(self, name):
        g = named_graphs()[name]
        spec = make_graph_game(g)
        assert maps(enumerate_classical_points(spec, True)) == oracles.automorphisms(g.n, g.sorted_edges())
        if g.n <= 7:
            assert maps(enumerate_classical_points(spec)) == oracles.homomorphisms(g.n, g.sorted_edges())

    @given(graphs())
    def test_homomorphisms_match_oracle(self, g):
        spec = make_graph_game(g)
        assert maps(enumerate_classical_points(spec)) == oracles.homomorphisms(g.n, g.sorted_edges())
        assert maps(enumerate_classical_points(spec, True)) == oracles.automorphisms(g.n, g.sorted_edges())

    @given(small_games())
    def test_game_points_match_oracle(self, spec):
        lam = oracles.table_lambda(spec.forbidden)
        assert maps(enumerate_classical_points(spec)) == oracles.game_points(spec.inputs, spec.outputs, lam)


class TestPoint:
    def test_str(self):
        assert str(ClassicalPoint((2, 0))) == "f: 0->2 1->0"

    def test_invertible_requires_bijection(self):
        with pytest.raises(NotAPointError):
            ClassicalPoint((0, 0), invertible=True)

    def test_violations(self, c5):
        # sending both ends of edge {0,1} to 0 loses
        bad = point_violations(c5, (0, 0, 2, 3, 4))
        assert (0, 0, 0, 1) in bad and (0, 0, 1, 0) in bad
        assert not is_point(c5, (0, 0, 2, 3, 4))
        assert not is_point(c5, (0, 1))
        assert is_point(c5, (0, 1, 2, 3, 4), invertible=True)


class TestConvolution:
    def test_rotations(self, c5):
        assert convolve(c5, rotation(1), rotation(2)) == rotation(3)

    def test_identity(self, c5):
        ident = rotation(0)
        for g in enumerate_classical_points(c5, True):
            assert convolve(c5, ident, g) == g == convolve(c5, g, ident)

    def test_order_is_g_after_f(self, c5):
        f = rotation(1)
        s = ClassicalPoint((0, 4, 3, 2, 1), True)
        assert convolve(c5, f, s).map == tuple(s.map[f.map[x]] for x in range(5))
        assert convolve(c5, f, s) != convolve(c5, s, f)

    def test_symbolic_cross_check(self, c5):
        pts = enumerate_classical_points(c5, True)
        for f, g in itertools.product(pts, repeat=2):
            h = convolve(c5, f, g)
            for i, j in itertools.product(range(5), repeat=2):
                assert evaluate_on_points(delta_on_generator(i, j, 5), (f, g)) == int(h.map[i] == j)

    def test_needs_square(self):
        spec = make_easiest(2, 3)
        with pytest.raises(ValueError):
            convolve(spec, ClassicalPoint((0, 1)), ClassicalPoint((1, 0)))

    @given(small_games())
    def test_closure_when_star_holds(self, spec):
        from synq.game import check_star

        if not spec.is_square or not check_star(spec)[0]:
            return
        pts = enumerate_classical_points(spec)
        table = cayley_table(spec, pts)
        assert table.closed


def dihedral_presentation_holds(table, ident, order):
    """Find r of order n and an involution s outside <r> with s r s = r^-1."""
    n = len(table)
    mul = lambda a, b: table[a][b]

    def power(a, k):
        out = ident
        for _ in range(k):
            out = mul(out, a)
        return out

    for r in range(n):
        if power(r, order) != ident or any(power(r, k) == ident for k in range(1, order)):
            continue
        cyclic = {power(r, k) for k in range(order)}
        inv_r = power(r, order - 1)
        for s in range(n):
            if s not in cyclic and mul(s, s) == ident and mul(mul(s, r), s) == inv_r:
                generated = cyclic | {mul(s, c) for c in cyclic}
                return len(generated) == n
    return False


class TestCayley:
    def test_aut_c5_is_dihedral(self, c5):
        t = cayley_table(c5, enumerate_classical_points(c5, True))
        assert t.closed and t.is_group and t.identity == 0
        assert all(v >= 0 for v in t.inverses)
        assert dihedral_presentation_holds(t.table, t.identity, 5)
        # nonabelian
        assert any(t.table[i][j] != t.table[j][i] for i in range(10) for j in range(10))

    def test_k3_is_s3(self):
        spec = make_graph_game(complete_graph(3))
        t = cayley_table(spec, enumerate_classical_points(spec))
        perms = [p.map for p in t.points]
        for i, j in itertools.product(range(6), repeat=2):
            composed = tuple(perms[j][perms[i][x]] for x in range(3))
            assert perms[t.table[i][j]] == composed
        assert t.identity == 0 and t.is_group is None

    def test_easiest_transformation_monoid(self):
        spec = make_easiest(3, 3)
        pts = enumerate_classical_points(spec)
        t = cayley_table(spec, pts)
        assert len(pts) == 27 and t.closed
        for i, j in itertools.product(range(27), repeat=2):
            f, g = pts[i].map, pts[j].map
            assert pts[t.table[i][j]].map == tuple(g[f[x]] for x in range(3))

    def test_associative(self, c5):
        spec = make_graph_game(cycle_graph(4))
        t = cayley_table(spec, enumerate_classical_points(spec)).table
        n = len(t)
        assert all(t[t[a][b]][c] == t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n))

    def test_missing_products_marked(self, c5):
        t = cayley_table(c5, [rotation(1)])
        assert t.table == [[-1]] and not t.closed and t.identity is None
        assert t.is_group is False

    def test_csv(self, c5):
        csv = cayley_table(c5, enumerate_classical_points(c5, True)).to_csv()
        lines = csv.splitlines()
        assert lines[0] == "," + ",".join(map(str, range(10)))
        assert lines[1].startswith("0,0,1,2")
        assert len(lines) == 11


class TestPointModel:
    def test_identity_pattern(self):
        m = point_to_model(ClassicalPoint((0, 1, 2)))
        assert m.entries.shape == (3, 3, 1, 1)
        assert (m.entries[:, :, 0, 0] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]).all()

    def test_rotation_pattern(self):
        m = point_to_model(rotation(1))
        assert all(m[x, (x + 1) % 5][0, 0] == 1 for x in range(5))
        assert m.entries.sum() == 5

    def test_passes_at_zero_tolerance(self, c5):
        for f in enumerate_classical_points(c5, True):
            rep = verify_model(c5, point_to_model(f), "bistochastic", tol=0.0)
            assert rep.passed and set(rep.residuals.values()) == {0.0}

    def test_non_square(self):
        spec = make_easiest(2, 3)
        for f in enumerate_classical_points(spec):
            assert verify_model(spec, point_to_model(f, 3), tol=0.0).passed


class TestClosureCheck:
    @given(small_games())
    def test_agrees_with_table(self, spec):
        if not spec.is_square:
            return
        pts = enumerate_classical_points(spec)
        closed, checked = convolution_closed(spec, pts)
        assert closed == cayley_table(spec, pts).closed
        assert checked == len(pts) ** 2

    def test_sampled(self, c5):
        pts = enumerate_classical_points(c5)
        assert convolution_closed(c5, pts, max_pairs=50, seed=3) == (True, 50)
        bad = GameSpec.synchronous(2, 2, [(0, 0, 0, 1)])
        assert convolution_closed(bad, enumerate_classical_points(bad))[0] is False
