import random

import pytest

from ytwo.clifford import PinRep, conjugation_matrix
from ytwo.ortho import OrthoRep
from ytwo.presentation import (
    b_word,
    evaluate,
    invert_word,
    relator_failures,
    s_letter,
    schedule,
    st_letter,
    word_str,
)
from ytwo.quadspace import QuadSpace, transvection

from oracles import factorial, perm_closure


class TestBWords:
    def test_base(self):
        assert b_word(1, 3) == ("a",)

    def test_one_conjugation(self):
        assert b_word(2, 3) == ("S1", "a", "S1")

    def test_two_conjugations(self):
        assert b_word(3, 5) == ("S2", "S1", "a", "S1", "S2")

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            b_word(5, 4)
        with pytest.raises(IndexError):
            b_word(0, 4)

    def test_y_style(self):
        assert b_word(1, 4, style="y") == ("a",)
        assert b_word(2, 4, style="y") == ("s1", "A", "s1")
        assert b_word(3, 4, style="y") == ("s2", "s1", "a", "s1", "s2")

    def test_styles_agree_under_phi_and_psi(self):
        for m in (3, 4, 5):
            phi = OrthoRep(QuadSpace(m))
            psi = PinRep(m)
            for i in range(1, m + 1):
                st = b_word(i, m)
                y = b_word(i, m, style="y")
                assert evaluate(st, phi) == evaluate(y, phi)
                assert evaluate(st, psi) == evaluate(y, psi)

    def test_phi_b2_is_transvection_product(self):
        sp = QuadSpace(4)
        phi = OrthoRep(sp)
        r_u = transvection(sp, sp.basis_vector(0))
        r_v2 = transvection(sp, sp.basis_vector(2))
        assert evaluate(b_word(2, 4), phi) == r_u * r_v2


class TestSchedule:
    def test_names_ytilde(self):
        names = schedule(3, 2, "y-tilde").names()
        for expected in (
            "tau_sq",
            "braid_12",
            "comm_k1",
            "comm_k2",
            "inv_s2",
            "tau_inverts_a",
        ):
            assert expected in names

    def test_y_flavor_coxeter(self):
        sched = dict(schedule(3, 1, "y"))
        assert sched["sq_s1"] == ("s1", "s1")
        assert sched["sq_s2"] == ("s2", "s2")
        assert sched["braid_12"] == ("s1", "s2") * 3

    def test_y_flavor_words(self):
        sched = dict(schedule(4, 2, "y"))
        assert sched["comm_k1"] == ("s1", "A", "s1", "a", "s1", "A", "s1", "a")
        assert sched["inv_s3"] == ("s3", "a", "s3", "a")

    def test_Y_flavor_count(self):
        sched = schedule(4, 1, "Y")
        # 12 ordered pairs, k in {1, -1}
        assert len(sched) == 24
        names = sched.names()
        assert "bb_1_2_k1" in names and "bb_1_2_k-1" in names

    def test_bad_params(self):
        with pytest.raises(ValueError):
            schedule(2, 1, "y")
        with pytest.raises(ValueError):
            schedule(3, 0, "y")
        with pytest.raises(ValueError):
            schedule(3, 1, "nope")

    def test_word_str_round(self):
        assert word_str(("t", "a", "S1")) == "taS1"
        assert invert_word(("a", "s1", "A")) == ("a", "s1", "A")
        assert invert_word(("t", "a")) == ("A", "t")


class TestEvaluate:
    def test_empty_word(self):
        phi = OrthoRep(QuadSpace(3))
        assert evaluate((), phi).is_identity

    def test_tau_inverts_a(self):
        phi = OrthoRep(QuadSpace(4))
        assert evaluate(("t", "a", "t", "a"), phi).is_identity

    def test_monoid_homomorphism(self):
        phi = OrthoRep(QuadSpace(4))
        letters = phi.letters()
        rng = random.Random(42)
        for _ in range(100):
            w1 = tuple(rng.choice(letters) for _ in range(rng.randint(0, 10)))
            w2 = tuple(rng.choice(letters) for _ in range(rng.randint(0, 10)))
            assert evaluate(w1 + w2, phi) == evaluate(w1, phi) * evaluate(w2, phi)

    def test_unsupported_letter(self):
        phi = OrthoRep(QuadSpace(3))
        with pytest.raises(ValueError):
            evaluate(("s9",), phi)

    def test_twisted_letters_factor(self):
        # S<i> = t * s<i> holds in every representation carrying both
        for rep in (OrthoRep(QuadSpace(4)), PinRep(4)):
            for i in (1, 2, 3):
                assert rep.image(st_letter(i)) == rep.image("t") * rep.image(
                    s_letter(i)
                )


class TestSymmetricAction:
    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_full_symmetric_group(self, m):
        """Images of the twisted transpositions permute v_1..v_m as the
        full symmetric group; checked by explicit permutation closure."""
        for rep_cls in (lambda: OrthoRep(QuadSpace(m)), lambda: PinRep(m)):
            rep = rep_cls()
            perms = []
            for i in range(1, m):
                mat = rep.image(st_letter(i))
                if isinstance(rep, PinRep):
                    mat = conjugation_matrix(mat)
                perm = []
                for r in range(m + 1):
                    row = mat.rows[r]
                    nonzero = [j for j, x in enumerate(row) if x]
                    assert len(nonzero) == 1 and row[nonzero[0]].is_one
                    perm.append(nonzero[0])
                assert perm[0] == 0  # u is fixed
                perms.append(tuple(perm))
            assert perm_closure(perms) == factorial(m)

    def test_orbit_of_v1_is_everything(self):
        m = 5
        rep = OrthoRep(QuadSpace(m))
        orbit = {1}
        frontier = [1]
        while frontier:
            nxt = []
            for idx in frontier:
                for i in range(1, m):
                    row = rep.image(st_letter(i)).rows[idx]
                    j = max(jj for jj, x in enumerate(row) if x)
                    if j not in orbit:
                        orbit.add(j)
                        nxt.append(j)
            frontier = nxt
        assert orbit == set(range(1, m + 1))


class TestRelatorSuites:
    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_phi_psi_small(self, m):
        sched = schedule(m, 5, "y-tilde")
        assert relator_failures(sched, OrthoRep(QuadSpace(m))) == []
        assert relator_failures(sched, PinRep(m)) == []

    @pytest.mark.parametrize("m", [3, 4])
    def test_Y_flavor(self, m):
        sched = schedule(m, 2, "Y")
        assert relator_failures(sched, OrthoRep(QuadSpace(m))) == []
        assert relator_failures(sched, PinRep(m)) == []
