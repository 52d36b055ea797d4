import itertools
import random

import pytest

from quiverstab.linalg import Mat
from quiverstab.quiver import (
    Quiver,
    apply_matrix,
    classify,
    coxeter_matrix,
    defect,
    defect_weight,
    euler_form,
    euler_matrix,
    tits_form,
    weight_from_dimvec,
)


def d5_quiver():
    return Quiver.from_names(
        ["1", "2", "3", "4", "5", "6"],
        [("a1", "1", "5"), ("a2", "4", "5"), ("a3", "5", "6"),
         ("a4", "6", "2"), ("a5", "6", "3")])


def a3_quiver():
    return Quiver.from_names(["1", "2", "3"], [("a1", "1", "2"), ("a2", "2", "3")])


def kronecker(arrows):
    return Quiver.from_names(
        ["1", "2"], [(f"a{i}", "1", "2") for i in range(arrows)])


DELTA = (1, 1, 1, 1, 2, 2)
DIM_E1 = (1, 1, 1, 1, 1, 1)
E5 = (0, 0, 0, 0, 1, 0)
E6 = (0, 0, 0, 0, 0, 1)


class TestConstruction:
    def test_cycle_rejected(self):
        with pytest.raises(ValueError, match="cycle"):
            Quiver.from_names(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])

    def test_disconnected_rejected(self):
        with pytest.raises(ValueError, match="connected"):
            Quiver.from_names(["1", "2", "3"], [("a", "1", "2")])

    def test_unknown_vertex_rejected(self):
        with pytest.raises(ValueError, match="unknown vertex"):
            Quiver.from_names(["1", "2"], [("a", "1", "9")])

    def test_duplicate_names_rejected(self):
        with pytest.raises(ValueError):
            Quiver.from_names(["1", "1"], [])


class TestEulerForm:
    def test_units(self):
        q = d5_quiver()
        for x in range(q.n):
            e = q.unit_vector(x)
            assert euler_form(q, e, e) == 1

    def test_delta_isotropic(self):
        assert euler_form(d5_quiver(), DELTA, DELTA) == 0

    def test_e1_vs_e2(self):
        assert euler_form(d5_quiver(), DIM_E1, E5) == -1

    def test_unit_pairs_count_arrows(self):
        q = d5_quiver()
        for x, y in itertools.product(range(q.n), repeat=2):
            arrows = sum(1 for a in q.arrows if (a.tail, a.head) == (x, y))
            expected = (1 if x == y else 0) - arrows
            assert euler_form(q, q.unit_vector(x), q.unit_vector(y)) == expected

    def test_bilinear(self):
        q = d5_quiver()
        rng = random.Random(7)
        for _ in range(20):
            a, b, c = (tuple(rng.randint(-3, 3) for _ in range(q.n))
                       for _ in range(3))
            ab = tuple(x + y for x, y in zip(a, b))
            assert euler_form(q, ab, c) == euler_form(q, a, c) + euler_form(q, b, c)
            assert euler_form(q, c, ab) == euler_form(q, c, a) + euler_form(q, c, b)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            euler_form(d5_quiver(), (1, 2), DELTA)


class TestTitsForm:
    def test_units(self):
        q = a3_quiver()
        assert all(tits_form(q, q.unit_vector(x)) == 1 for x in range(3))

    def test_delta(self):
        assert tits_form(d5_quiver(), DELTA) == 0

    def test_three_kronecker(self):
        assert tits_form(kronecker(3), (1, 1)) == -1


class TestClassify:
    def test_a3_dynkin(self):
        assert classify(a3_quiver()).kind == "Dynkin"

    def test_d5_euclidean(self):
        result = classify(d5_quiver())
        assert result.kind == "Euclidean"
        assert result.delta == DELTA

    def test_k2_euclidean(self):
        result = classify(kronecker(2))
        assert result.kind == "Euclidean"
        assert result.delta == (1, 1)

    def test_k3_wild(self):
        assert classify(kronecker(3)).kind == "Wild"

    def test_orientation_independent_dynkin(self):
        # every orientation of the A4 line and the D4 star stays Dynkin
        for bits in itertools.product([0, 1], repeat=3):
            edges = [("1", "2"), ("2", "3"), ("3", "4")]
            arrows = [(f"a{i}", e[b], e[1 - b])
                      for i, (e, b) in enumerate(zip(edges, bits))]
            assert classify(Quiver.from_names(["1", "2", "3", "4"], arrows)).kind == "Dynkin"
        for bits in itertools.product([0, 1], repeat=3):
            edges = [("1", "0"), ("2", "0"), ("3", "0")]
            arrows = [(f"a{i}", e[b], e[1 - b])
                      for i, (e, b) in enumerate(zip(edges, bits))]
            assert classify(Quiver.from_names(["0", "1", "2", "3"], arrows)).kind == "Dynkin"

    def test_orientation_independent_euclidean(self):
        # D4 with doubled center: every orientation of the 4-spoke star plus
        # one extra leaf keeps the same radical vector
        for bits in itertools.product([0, 1], repeat=4):
            edges = [("1", "0"), ("2", "0"), ("3", "0"), ("4", "0")]
            arrows = [(f"a{i}", e[b], e[1 - b])
                      for i, (e, b) in enumerate(zip(edges, bits))]
            result = classify(Quiver.from_names(["0", "1", "2", "3", "4"], arrows))
            assert result.kind == "Euclidean"
            assert result.delta == (2, 1, 1, 1, 1)


class TestDefect:
    def test_radical_vector(self):
        assert defect(d5_quiver(), DELTA, DELTA) == 0

    def test_simple_at_source(self):
        q = d5_quiver()
        assert defect(q, DELTA, q.unit_vector(0)) == 1

    def test_regular(self):
        assert defect(d5_quiver(), DELTA, DIM_E1) == 0

    def test_additive(self):
        q = d5_quiver()
        rng = random.Random(3)
        for _ in range(10):
            a = tuple(rng.randint(0, 3) for _ in range(q.n))
            b = tuple(rng.randint(0, 3) for _ in range(q.n))
            ab = tuple(x + y for x, y in zip(a, b))
            assert defect(q, DELTA, ab) == defect(q, DELTA, a) + defect(q, DELTA, b)

    def test_non_euclidean_rejected(self):
        with pytest.raises(ValueError, match="not Euclidean"):
            defect(a3_quiver(), (1, 1, 1), (1, 0, 0))
        with pytest.raises(ValueError, match="radical"):
            defect(d5_quiver(), (2, 2, 2, 2, 4, 4), DELTA)


class TestDefectWeight:
    def test_d5(self):
        q = d5_quiver()
        dw = defect_weight(q, DELTA)
        assert dw == (1, -1, -1, 1, 0, 0)

    def test_vanishes_on_delta(self):
        dw = defect_weight(d5_quiver(), DELTA)
        assert sum(t * c for t, c in zip(dw, DELTA)) == 0

    def test_matches_defect(self):
        q = d5_quiver()
        dw = defect_weight(q, DELTA)
        rng = random.Random(1)
        for _ in range(10):
            a = tuple(rng.randint(0, 3) for _ in range(q.n))
            assert sum(t * c for t, c in zip(dw, a)) == defect(q, DELTA, a)

    def test_negative_on_preprojective(self):
        # the simple at the sink vertex 2 is preprojective on this orientation
        q = d5_quiver()
        dw = defect_weight(q, DELTA)
        assert dw[1] < 0 and dw[2] < 0


class TestCoxeter:
    def test_fixes_delta(self):
        phi = coxeter_matrix(d5_quiver())
        assert apply_matrix(phi, DELTA) == DELTA

    def test_tube_orbit(self):
        phi = coxeter_matrix(d5_quiver())
        assert apply_matrix(phi, DIM_E1) == E5
        assert apply_matrix(phi, E5) == E6
        assert apply_matrix(phi, E6) == DIM_E1

    def test_defining_identity(self):
        # <beta, Phi alpha> = -<alpha, beta> on random integer vectors
        for q in (d5_quiver(), a3_quiver(), kronecker(3)):
            phi = coxeter_matrix(q)
            rng = random.Random(11)
            for _ in range(15):
                a = tuple(rng.randint(-3, 3) for _ in range(q.n))
                b = tuple(rng.randint(-3, 3) for _ in range(q.n))
                assert euler_form(q, b, apply_matrix(phi, a)) == -euler_form(q, a, b)

    def test_matrix_identity(self):
        # C Phi + C^T = 0 exactly
        for q in (d5_quiver(), a3_quiver(), kronecker(2)):
            c = euler_matrix(q)
            phi = Mat.from_rows(coxeter_matrix(q))
            assert (c @ phi + c.transpose()).is_zero()


class TestWeightFromDimvec:
    def test_a3_sincere(self):
        assert weight_from_dimvec(a3_quiver(), (1, 1, 1)) == (1, 0, -1)

    def test_vanishes_on_itself(self):
        q = d5_quiver()
        rng = random.Random(5)
        for _ in range(10):
            a = tuple(rng.randint(0, 3) for _ in range(q.n))
            w = weight_from_dimvec(q, a)
            assert sum(t * c for t, c in zip(w, a)) == 0

    def test_single_arrow(self):
        # arrow y -> x; the weight of e_x evaluates to +1 on e_y
        q = Quiver.from_names(["x", "y"], [("a", "y", "x")])
        w = weight_from_dimvec(q, (1, 0))
        assert w[1] == 1
        assert w == (0, 1)
