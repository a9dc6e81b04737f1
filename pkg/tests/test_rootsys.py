import pytest

from exceis.config import load_config
from exceis.rootsys import ParabolicSpec, mat_vec, dot


@pytest.fixture(scope="module")
def cfg():
    return load_config()


class TestGenerate:
    def test_f4(self, cfg):
        f4 = cfg.system("F4")
        assert len(f4.roots) == 48
        assert f4.weyl_order() == 1152

    def test_g2(self, cfg):
        g2 = cfg.system("G2")
        assert len(g2.roots) == 12
        assert g2.weyl_order() == 12

    def test_d4_simple_roots(self, cfg):
        d4 = cfg.system("D4")
        assert len(d4.roots) == 24
        assert d4.simples[0] == (1, -1, 0, 0)
        assert d4.simples[3] == (0, 0, 1, 1)

    def test_weyl_order_matches_bfs_oracle(self, cfg):
        for name in ("G2", "B3", "C3", "D4", "F4"):
            sys = cfg.system(name)
            assert len(sys.enumerate_group()) == sys.weyl_order()

    def test_absolute_systems(self, cfg):
        expected = {
            "D5abs": (40, 1920), "D6abs": (60, 23040), "D7abs": (84, 322560),
            "E6abs": (72, 51840), "E7abs": (126, 2903040),
            "E8abs": (240, 696729600),
        }
        for name, (nroots, order) in expected.items():
            sys = cfg.system(name)
            assert len(sys.roots) == nroots
            assert sys.weyl_order() == order

    def test_reflections_preserve_roots_and_form(self, cfg):
        sys = cfg.system("F4")
        roots = set(sys.roots)
        for i in range(1, sys.rank + 1):
            m = sys.word_matrix([i])
            for r in sys.roots:
                assert mat_vec(m, r) in roots
            # orthogonality: columns have the same pairwise dots as the basis
            cols = list(zip(*m))
            for a in range(sys.dim):
                for b in range(sys.dim):
                    assert dot(cols[a], cols[b]) == (1 if a == b else 0)


class TestCosets:
    def test_positivity_conditions(self, cfg):
        sys = cfg.system("F4")
        left = sys.parabolic("M2")
        right = sys.parabolic("M1")
        lset = set(left.levi(sys.rank))
        rset = set(right.levi(sys.rank))
        for w in sys.double_coset_reps(left, right):
            m = sys.word_matrix(w)
            minv = sys.word_matrix(tuple(reversed(w)))
            for j in rset:
                assert sys.is_positive_root(mat_vec(m, sys.simples[j - 1]))
            for j in lset:
                assert sys.is_positive_root(mat_vec(minv, sys.simples[j - 1]))

    def test_identity_present_and_sorted(self, cfg):
        sys = cfg.system("B3")
        reps = sys.double_coset_reps(sys.parabolic("M1"), sys.parabolic("M2"))
        assert reps[0] == ()
        assert reps == sorted(reps, key=lambda w: (len(w), w))

    def test_trivial_parabolic(self, cfg):
        sys = cfg.system("D4")
        full = sys.parabolic("full")
        assert sys.double_coset_reps(full, full) == [()]

    def test_f4_coset_count_quotient(self, cfg):
        # |[W/W_M1]| = |W(F4)| / |W(C3)|
        f4 = cfg.system("F4")
        reps = f4.coset_reps(f4.parabolic("M1"))
        assert len(reps) == 1152 // 48 == 24

    def test_double_cosets_partition_group(self, cfg):
        # sum of |W_L w W_M| over minimal reps recovers |W| (brute force)
        for name, lL, lR in (("G2", "M1", "M1"), ("B3", "M1", "M2")):
            sys = cfg.system(name)
            left, right = sys.parabolic(lL), sys.parabolic(lR)
            group = set(sys.enumerate_group())
            wl = [sys.word_matrix(w) for w in
                  _subgroup_words(sys, left.levi(sys.rank))]
            wm = [sys.word_matrix(w) for w in
                  _subgroup_words(sys, right.levi(sys.rank))]
            total = 0
            from exceis.rootsys import mat_mul
            for w in sys.double_coset_reps(left, right):
                mw = sys.word_matrix(w)
                coset = {mat_mul(a, mat_mul(mw, b)) for a in wl for b in wm}
                assert coset <= group
                total += len(coset)
            assert total == len(group)

    def test_longest_rep(self, cfg):
        f4 = cfg.system("F4")
        w0 = f4.longest_rep(f4.parabolic("M1"))
        assert len(w0) == 15
        assert f4.word_matrix(w0) == f4.word_matrix(
            [1, 2, 3, 4, 2, 3, 1, 2, 3, 4, 1, 2, 3, 2, 1])
        g2 = cfg.system("G2")
        assert g2.word_matrix(g2.longest_rep(g2.parabolic("M1"))) == \
            g2.word_matrix([2, 1, 2, 1, 2])

    def test_longest_length_formula(self, cfg):
        for name, lab in (("F4", "M1"), ("C3", "M3"), ("G2", "M2"), ("B3", "M2")):
            sys = cfg.system(name)
            p = sys.parabolic(lab)
            w0 = sys.longest_rep(p)
            assert len(w0) == len(sys.positives) - sys.levi_positive_count(p)

    def test_c3_siegel_longest(self, cfg):
        # length 6, equal as a group element to the product of the four
        # described reflections (the last one of length 3)
        c3 = cfg.system("C3")
        w0 = c3.longest_rep(c3.parabolic("M3"))
        assert len(w0) == 6
        assert c3.word_matrix(w0) == c3.word_matrix([3, 2, 1, 3, 2, 3])


def _subgroup_words(sys, levi):
    """All elements of the standard Levi subgroup's Weyl group, as words."""
    from exceis.rootsys import identity_matrix, mat_mul
    seen = {identity_matrix(sys.dim): ()}
    frontier = [identity_matrix(sys.dim)]
    while frontier:
        new = []
        for m in frontier:
            for i in levi:
                m2 = mat_mul(sys.word_matrix([i]), m)
                if m2 not in seen:
                    seen[m2] = (i,) + seen[m]
                    new.append(m2)
        frontier = new
    return list(seen.values())


class TestAssociatedSimples:
    def test_f4_examples(self, cfg):
        f4 = cfg.system("F4")
        m2 = f4.parabolic("M2")
        p1 = f4.parabolic("P1")
        assert f4.associated_simple_roots((2, 3, 2, 1), m2, p1) == (1, 4)
        m4 = f4.parabolic("M4")
        assert f4.associated_simple_roots((), m4, p1) == (1,)

    def test_trivial_levi(self, cfg):
        f4 = cfg.system("F4")
        p0 = f4.parabolic("P0")
        w0 = f4.longest_rep(f4.parabolic("M1"))
        assert f4.associated_simple_roots(w0, p0, f4.parabolic("P1")) == ()

    def test_rejects_non_minimal(self, cfg):
        from exceis.rootsys import NotMinimalRepresentativeError
        f4 = cfg.system("F4")
        with pytest.raises(NotMinimalRepresentativeError):
            f4.associated_simple_roots((2, 2), f4.parabolic("M2"),
                                       f4.parabolic("P1"))


class TestPairingsAndModulus:
    def test_c3_pairing(self, cfg):
        from exceis.eiscalc import CoordVector
        c3 = cfg.system("C3")
        lam = CoordVector.lambda_s(c3)
        # the long root in the third coordinate pairs to s-1
        assert str(lam.pairing(c3, (0, 0, 2))) == "s-1"

    def test_e6_pairing(self, cfg):
        from exceis.eiscalc import CoordVector
        a2 = cfg.system("A2-E6rational")
        lam = CoordVector.lambda_s(a2)
        assert str(lam.pairing(a2, (1, -1, 0))) == "s-8"

    def test_zero_vector_pairing(self, cfg):
        c3 = cfg.system("C3")
        z = c3.coroot_pairing((0, 0, 0), (0, 0, 0), (0, 0, 2))
        assert z.slope == 0 and z.intercept == 0

    def test_modulus_exponents(self, cfg):
        expected = {
            ("D5abs", "P1"): 8, ("D6abs", "P1"): 10, ("D7abs", "P1"): 12,
            ("C3", "P3"): 18, ("F4", "P1"): 29,
            ("G2", "P1"): 5, ("D4", "P2"): 5, ("B3", "P2"): 5,
        }
        for (name, lab), want in expected.items():
            sys = cfg.system(name)
            assert sys.modulus_exponent(sys.parabolic(lab)) == want

    def test_modulus_rejects_non_maximal(self, cfg):
        sys = cfg.system("F4")
        with pytest.raises(ValueError):
            sys.modulus_exponent(ParabolicSpec.of([1, 2]))

    def test_weighted_rho(self, cfg):
        assert cfg.system("C3").rho_weighted() == (17, 9, 1)
        assert cfg.system("G2").rho_weighted() == (5, -1, -4)
        assert cfg.system("F4").rho_weighted() == (23, 6, 5, 4)
