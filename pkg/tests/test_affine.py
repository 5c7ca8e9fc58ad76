from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from qsupport.affine import AffineWeylGroup, reflection_length_bound_holds, wall_signs_hold, theta_is_dominant
from qsupport.errors import InvalidInput
from qsupport.roots import build, phi_lambda

GROUPS = {
    "A1": (("A", 1), 5), "A2": (("A", 2), 5), "B2": (("B", 2), 5), "G2": (("G", 2), 7), "A3": (("A", 3), 5),
}


def group(name):
    key, ell = GROUPS[name]
    return AffineWeylGroup(build(*key), ell)


def minimal_oracle(G, lam_minus, target, max_length):
    """Shortest y with y . lam_minus == target, by brute force over the Cayley ball."""
    ball = G.bfs(max_length)
    hits = [y for y in ball if G.dot(y, lam_minus) == target]
    best = min(ball[y] for y in hits)
    return best, [y for y in hits if ball[y] == best]


def subword_leq(G, y, w):
    word = G.reduced_word(w)
    ly = G.length(y)
    for idx in combinations(range(len(word)), ly):
        if G.from_word([word[i] for i in idx]) == y:
            return True
    return False


class TestGroupLaw:
    def test_semidirect_product(self):
        G = group("B2")
        ball = list(G.bfs(3))
        for a in ball[:15]:
            for b in ball[:15]:
                ab = G.mul(a, b)
                assert ab.theta == tuple(p + q for p, q in zip(a.theta, a.x.act_root(b.theta)))
                assert ab.x == a.x * b.x

    def test_generators_are_involutions(self):
        for name in GROUPS:
            G = group(name)
            for i in range(G.rank + 1):
                g = G.from_word([i])
                assert G.mul(g, g) == G.identity
                assert G.length(g) == 1

    def test_inverse(self):
        G = group("A2")
        for w in G.bfs(4):
            assert G.mul(w, G.inverse(w)) == G.identity

    def test_level_mismatch(self):
        G, H = group("A1"), AffineWeylGroup(build("A", 1), 7)
        with pytest.raises(InvalidInput):
            G.dot(H.from_word([0]), (0,))


class TestLength:
    @pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "A3"])
    def test_matches_bfs(self, name):
        G = group(name)
        for w, d in G.bfs(10 if name != "A3" else 7).items():
            assert G.length(w) == d

    @pytest.mark.parametrize("name", ["A1", "A2", "B2"])
    def test_dominant_theta_formula(self, name):
        G = group(name)
        R = G.R
        seen = 0
        for w, d in G.bfs(10).items():
            wt = R.root_lattice_to_weight(w.theta)
            if R.is_dominant(wt):
                assert d == w.x.length + 2 * sum(w.theta)
                seen += 1
        assert seen > 1

    def test_examples(self):
        G = group("A1")
        assert G.length(G.identity) == 0
        assert G.length(G.translation((1,))) == 2
        assert G.length(G.from_word([0])) == 1

    def test_reduced_word_round_trip(self):
        G = group("G2")
        for w in G.bfs(6):
            word = G.reduced_word(w)
            assert len(word) == G.length(w)
            assert G.from_word(word) == w


class TestDot:
    def test_identity(self):
        G = group("A2")
        assert G.dot(G.identity, (3, 1)) == (3, 1)

    def test_affine_reflection_fixes_wall(self):
        G = group("A1")
        assert G.dot(G.from_word([0]), (-6,)) == (-6,)

    def test_a1_example(self):
        G = group("A1")
        assert G.dot(G.from_word([1]), (-6,)) == (4,)

    def test_is_action(self):
        G = group("B2")
        ball = list(G.bfs(3))
        for a in ball[:10]:
            for b in ball[:10]:
                assert G.dot(G.mul(a, b), (1, 2)) == G.dot(a, G.dot(b, (1, 2)))

    @given(st.tuples(st.integers(0, 12), st.integers(0, 12)), st.integers(0, 4), st.integers(0, 3))
    @settings(max_examples=60)
    def test_phi_lambda_equivariance(self, lam, k, seed):
        G = group("B2")
        R = G.R
        ws = list(G.bfs(k))
        y = ws[seed % len(ws)]
        mu = G.dot(y, lam)
        left = set(phi_lambda(R, mu, G.ell)[0])
        right = {y.x.act_root(b) for b in phi_lambda(R, lam, G.ell)[0]}
        assert left == right


class TestReduction:
    def test_a2_zero(self):
        G = group("A2")
        red = G.reduce_to_fundamental((0, 0))
        assert red.lambda_minus == (-2, -2)
        assert red.w.theta == (0, 0) and red.w.x == G.R.longest_element
        assert G.length(red.w) == 3 and red.I == () and red.a_count == 0
        best, hits = minimal_oracle(G, red.lambda_minus, (0, 0), 6)
        assert best == 3 and hits == [red.w]

    def test_a1_wall(self):
        G = group("A1")
        red = G.reduce_to_fundamental((4,))
        assert red.lambda_minus == (-6,)
        assert G.reduced_word(red.w) == (1,)
        assert red.I == (0,) and red.a_count == 1
        best, hits = minimal_oracle(G, (-6,), (4,), 6)
        assert best == 1 and red.w in hits

    def test_a1_interior(self):
        G = group("A1")
        red = G.reduce_to_fundamental((3,))
        assert red.lambda_minus == (-5,)
        assert G.reduced_word(red.w) == (1,) and red.I == ()

    def test_rejects_non_dominant(self):
        with pytest.raises(InvalidInput):
            group("A2").reduce_to_fundamental((-1, 0))

    @pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2"])
    def test_invariants_on_sweep(self, name):
        G = group(name)
        R = G.R
        for lam in _weights(R.rank, 2 * G.ell):
            red = G.reduce_to_fundamental(lam)
            assert G.dot(red.w, red.lambda_minus) == lam
            assert G.in_closed_antidominant_alcove(red.lambda_minus)
            assert G.is_min_coset_rep(red.w, red.I)
            assert theta_is_dominant(G, red.w)
            assert wall_signs_hold(G, red)
            for i in red.I:
                assert G.dot(G.from_word([i]), red.lambda_minus) == red.lambda_minus

    @pytest.mark.parametrize("name", ["A1", "A2", "B2"])
    def test_minimality_oracle(self, name):
        G = group(name)
        for lam in _weights(G.rank, G.ell):
            red = G.reduce_to_fundamental(lam)
            lw = G.length(red.w)
            if lw > 8:
                continue
            best, hits = minimal_oracle(G, red.lambda_minus, lam, lw)
            assert best == lw and red.w in hits

    def test_linked_weights_share_lambda_minus(self):
        G = group("A2")
        for lam in _weights(2, 10):
            red = G.reduce_to_fundamental(lam)
            for y in G.bfs(3):
                mu = G.dot(y, lam)
                if G.R.is_dominant(mu):
                    assert G.reduce_to_fundamental(mu).lambda_minus == red.lambda_minus


def _weights(rank, below):
    return [tuple(c) for c in product(range(below), repeat=rank)]


class TestReflectionLength:
    @pytest.mark.parametrize("key", [("A", 1), ("A", 4), ("B", 3), ("B", 4), ("C", 4), ("D", 4),
                                     ("G", 2), ("F", 4)])
    def test_bound_below_twice_height(self, key):
        R = build(*key)
        for b in R.positive_roots:
            assert reflection_length_bound_holds(R, b)


class TestParabolic:
    def test_subgroup_sizes(self):
        G = group("A2")
        assert len(G.parabolic_subgroup(())) == 1
        assert len(G.parabolic_subgroup((0,))) == 2
        assert len(G.parabolic_subgroup((0, 1))) == 6
        with pytest.raises(InvalidInput):
            G.parabolic_subgroup((0, 1, 2))

    def test_enumerate_length_zero(self):
        G = group("A1")
        assert G.enumerate_dominant_coset((-6,), (0,), 0) == [G.identity]

    def test_enumerate_regular_a1(self):
        G = group("A1")
        out = G.enumerate_dominant_coset((-5,), (), 2)
        # the whole ball of radius 2 in the infinite dihedral group
        assert len(out) == 5 and out == sorted(out, key=G.length)
        dom = G.enumerate_dominant_coset((-5,), (), 2, dominant_only=True)
        assert [G.dot(y, (-5,)) for y in dom] == [(3,), (5,)]

    def test_enumerate_min_reps(self):
        G = group("A2")
        out = G.enumerate_dominant_coset((-1, -4), (1,), 4)
        lengths = [G.length(y) for y in out]
        assert lengths == sorted(lengths)
        assert all(G.is_min_coset_rep(y, (1,)) for y in out)
        # every element of the ball is uniquely y x with x in W_I
        ball = G.bfs(4)
        reps = {G.min_coset_rep(u, (1,)) for u in ball}
        assert set(out) == {r for r in reps if G.length(r) <= 4}

    def test_enumerate_rejects_outside(self):
        with pytest.raises(InvalidInput):
            group("A1").enumerate_dominant_coset((0,), (), 2)


class TestBruhat:
    def test_trivial(self):
        G = group("A2")
        for w in G.bfs(4):
            assert G.bruhat_leq(G.identity, w)
            assert G.bruhat_leq(w, w)

    @pytest.mark.parametrize("name", ["A1", "A2", "B2"])
    def test_against_subwords(self, name):
        G = group(name)
        ball = list(G.bfs(5))
        for w in ball:
            lower = G.lower_interval(w)
            for y in ball:
                leq = G.bruhat_leq(y, w)
                assert leq == subword_leq(G, y, w)
                assert leq == (y in lower)
                if G.length(y) > G.length(w):
                    assert not leq
