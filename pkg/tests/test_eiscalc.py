from fractions import Fraction

import pytest

from exceis.config import load_config
from exceis.eiscalc import (ConvergenceVerdict, CoordVector, ZetaFactor,
                            ZetaProduct, apply_word, convergence_verdict,
                            gk_cfunction, order_report, parse_factor,
                            rational_cfunction, shifted_exponent)
from exceis.exactnum import AffineForm


@pytest.fixture(scope="module")
def cfg():
    return load_config()


def forms(trace):
    return [str(st.printed) for st in trace.steps]


class TestLambdaAndTraces:
    def test_lambda_printed_vectors(self, cfg):
        for name in cfg.cases:
            case = cfg.cases[name]
            if case.lambda_printed is None:
                continue
            system = cfg.system(case.system)
            lam = CoordVector.lambda_s(system)
            assert list(lam.entries()) == case.lambda_printed, name

    def test_c3_trace(self, cfg):
        c3 = cfg.system("C3")
        lam = CoordVector.lambda_s(c3)
        tr = apply_word(c3, lam, (3, 2, 1, 3, 2, 3))
        assert forms(tr) == ["s-1", "2s-10", "s-9", "2s-18", "2s-26", "s-17"]
        assert [str(e) for e in tr.final.entries()] == ["-s+1", "-s+9", "-s+17"]

    def test_g2_trace(self, cfg):
        g2 = cfg.system("G2")
        lam = CoordVector.lambda_s(g2)
        tr = apply_word(g2, lam, (2, 1, 2, 1, 2))
        assert forms(tr) == ["s-1", "s-2", "2s-5", "s-3", "s-4"]

    def test_empty_trace(self, cfg):
        c3 = cfg.system("C3")
        lam = CoordVector.lambda_s(c3)
        tr = apply_word(c3, lam, ())
        assert tr.steps == () and tr.final == lam

    def test_non_reduced_rejected(self, cfg):
        c3 = cfg.system("C3")
        with pytest.raises(ValueError):
            apply_word(c3, CoordVector.lambda_s(c3), (3, 3))

    def test_shifted_exponents_c3(self, cfg):
        c3 = cfg.system("C3")
        lam = CoordVector.lambda_s(c3)
        assert [str(e) for e in shifted_exponent(c3, lam, (3, 2, 3)).entries()] \
            == ["s", "-s+10", "-s+10"]
        assert [str(e) for e in shifted_exponent(c3, lam, (3, 2, 1, 3, 2, 3)).entries()] \
            == ["-s+18", "-s+18", "-s+18"]

    def test_shifted_exponent_f4_pairings(self, cfg):
        f4 = cfg.system("F4")
        lam = CoordVector.lambda_s(f4)
        lp = shifted_exponent(f4, lam, (3, 4, 2, 3, 2, 1))
        a1, a2 = f4.simples[0], f4.simples[1]
        assert str(lp.printed_pairing(f4, a1)) == "s-10"
        assert str(lp.printed_pairing(f4, a2)) == "s-17"


class TestZetaProducts:
    def test_parse_and_str(self):
        p = ZetaProduct.parse(["zeta(s-9)", "zeta(s)^-1", "poch(s/2-5/2;2)"])
        assert p.factors[ZetaFactor("zeta", AffineForm(1, -9))] == 1
        assert p.factors[ZetaFactor("zeta", AffineForm(1, 0))] == -1

    def test_opaque_symbol_parse(self):
        f, e = parse_factor("gammaR(s-8+v)^-1")
        assert f.sym == "v" and f.sym_sign == 1 and e == -1

    def test_theta_expansion_idempotent(self):
        p = ZetaProduct.parse(["zetaTheta(s-5)", "zetaTheta(s-1)^-1"])
        e1 = p.expanded()
        assert e1 == e1.expanded()
        want = ZetaProduct.parse(["zeta(s-5)", "zeta(s-8)",
                                  "zeta(s-1)^-1", "zeta(s-4)^-1"])
        assert e1 == want

    def test_cancellation(self):
        p = ZetaProduct.parse(["zeta(s-1)", "zeta(s-1)^-1"])
        assert p == ZetaProduct.one()

    def test_min_numerator_argument(self):
        p = ZetaProduct.parse(["zetaTheta(s-5)", "zeta(s-1)", "zeta(s)^-1"])
        # expanded numerator arguments at s=14: 9, 6, 13
        assert p.min_numerator_argument(14) == 6
        assert ZetaProduct.one().min_numerator_argument(5) is None


class TestGK:
    def test_identity_is_one(self, cfg):
        d5 = cfg.system("D5abs")
        oracle = cfg.oracle("D5")
        assert gk_cfunction(d5, oracle.lambda_abs(), ()) == ZetaProduct.one()

    def test_d5_printed_form(self, cfg):
        oracle = cfg.oracle("D5")
        assert [str(e) for e in oracle.lambda_abs().entries()] \
            == ["s-4", "-3", "-2", "-1", "0"]
        got = oracle.gk_restricted((1,))
        want = ZetaProduct.parse(["zeta(s-4)", "zeta(s-7)",
                                  "zeta(s)^-1", "zeta(s-3)^-1"])
        assert got.same_function(want)

    def test_e7_simple_step(self, cfg):
        oracle = cfg.oracle("E7")
        got = oracle.gk_restricted((3,))
        assert got.same_function(ZetaProduct.parse(["zeta(s-1)", "zeta(s)^-1"]))

    def test_cocycle_property(self, cfg):
        # gk(w1 w2) = gk(w1, w2 lam) * gk(w2, lam) when lengths add
        d5 = cfg.system("D5abs")
        lam = cfg.oracle("D5").lambda_abs()
        w1, w2 = (1, 2), (3, 4, 5, 4, 3, 2, 1)
        w = w1 + w2
        assert d5.length(w) == d5.length(w1) + d5.length(w2)
        m2 = d5.word_matrix(w2)
        from exceis.rootsys import mat_vec
        lam2 = CoordVector(mat_vec(m2, lam.slope), mat_vec(m2, lam.icept))
        assert gk_cfunction(d5, lam, w) == \
            gk_cfunction(d5, lam2, w1) * gk_cfunction(d5, lam, w2)


class TestRationalCFunctions:
    def c(self, cfg, name, word):
        case = cfg.case(name)
        system = cfg.system(case.system)
        rules = cfg.system_rules(case.system, case.etale_variant or "")
        return rational_cfunction(system, rules, CoordVector.lambda_s(system), word)

    def test_e7_list(self, cfg):
        assert self.c(cfg, "E7-siegel", ()) == ZetaProduct.one()
        assert self.c(cfg, "E7-siegel", (3, 2, 3)).same_function(
            ZetaProduct.parse(["zeta(s-5)", "zeta(s-9)",
                               "zeta(s)^-1", "zeta(s-4)^-1"]))
        assert self.c(cfg, "E7-siegel", (3, 2, 1, 3, 2, 3)).same_function(
            ZetaProduct.parse(["zeta(s-9)", "zeta(s-13)", "zeta(s-17)",
                               "zeta(s)^-1", "zeta(s-4)^-1", "zeta(s-8)^-1"]))

    def test_d6_terms(self, cfg):
        for word, want in [
            ((1,), ["zeta(s-1)", "zeta(s)^-1"]),
            ((2, 1), ["zeta(s-5)", "zeta(s-8)", "zeta(s)^-1", "zeta(s-4)^-1"]),
            ((1, 2, 1), ["zeta(s-5)", "zeta(s-9)", "zeta(s)^-1", "zeta(s-4)^-1"]),
        ]:
            assert self.c(cfg, "D6-min", word).same_function(ZetaProduct.parse(want))

    def test_missing_rule_raises(self, cfg):
        d5 = cfg.system("D5rel")
        lam = CoordVector.lambda_s(d5)
        with pytest.raises(KeyError):
            rational_cfunction(d5, {}, lam, (1,))

    def test_composition_law(self, cfg):
        # c(w1 w2, lam) = c(w1, w2 lam) * c(w2, lam) when lengths add,
        # mirroring the factorization of the intertwining operators
        c3 = cfg.system("C3")
        rules = cfg.system_rules("C3-E7rational", "")
        lam = CoordVector.lambda_s(c3)
        w1, w2 = (3, 2, 1), (3, 2, 3)
        w = w1 + w2
        assert c3.length(w) == c3.length(w1) + c3.length(w2)
        from exceis.rootsys import mat_vec
        m2 = c3.word_matrix(w2)
        lam2 = CoordVector(mat_vec(m2, lam.slope), mat_vec(m2, lam.icept))
        assert rational_cfunction(c3, rules, lam, w) == \
            rational_cfunction(c3, rules, lam2, w1) * \
            rational_cfunction(c3, rules, lam, w2)


class TestOrderReports:
    def test_d5_regular(self):
        p = ZetaProduct.parse(["zeta(s-4)", "zeta(s-7)",
                               "zeta(s)^-1", "zeta(s-3)^-1"])
        rep = order_report(p, 5)
        assert rep.total == 0 and rep.classification == "Regular"
        by_factor = {str(e.factor): e.contribution for e in rep.entries}
        assert by_factor["zeta(s-4)"] == -1
        assert by_factor["zeta(s-7)"] == 1

    def test_e7_simple_pole_at_14(self):
        p = ZetaProduct.parse(["zeta(s-9)", "zeta(s-13)", "zeta(s-17)",
                               "zeta(s)^-1", "zeta(s-4)^-1", "zeta(s-8)^-1"])
        rep = order_report(p, 14)
        assert rep.total == -1 and rep.classification == "SimplePole"

    def test_d7_ledger_at_7(self):
        p = ZetaProduct.parse([
            "zeta(s-6)", "zeta(s-11)", "zeta(s)^-1", "zeta(s-5)^-1",
            "poch(s/2-5/2;2)", "gamma(s-6)", "poch(s/2-7;2)",
            "poch(s/2-1;3)^-1", "gamma(s-2)^-1", "poch(s/2-11/2;3)^-1"])
        rep = order_report(p, 7)
        assert rep.total == -1 and rep.classification == "SimplePole"
        by_factor = {str(e.factor): e.contribution for e in rep.entries}
        assert by_factor["zeta(s-6)"] == -1        # pole of zeta at 1
        assert by_factor["zeta(s-11)"] == 1        # zero of zeta at -4
        assert by_factor["poch(s/2-11/2;3)"] == -1  # denominator zero

    def test_opaque_symbols_undecided_until_bound(self):
        p = ZetaProduct.parse(["gammaR(s-8+v)^-1"])
        rep = order_report(p, 6)
        assert rep.total is None and rep.classification == "Undecided"
        rep2 = order_report(p, 6, {"v": Fraction(0)})
        assert rep2.total == 1   # pole of Gamma_R at -2, inverted

    def test_opaque_field_zeta(self):
        p = ZetaProduct.parse(["zetaE(s-4)"], variant="field")
        assert order_report(p, 6).total == 0       # Euler product range
        assert order_report(p, 5).total == -1      # Dedekind pole at 1
        assert order_report(p, 3).total is None    # below 1: opaque, not guessed
        assert order_report(p, 3).classification == "Undecided"

    def test_zeta_facts(self):
        one = ZetaProduct.parse(["zeta(s)"])
        assert order_report(one, 1).total == -1
        assert order_report(one, -2).total == 1
        assert order_report(one, -3).total == 0
        assert order_report(one, Fraction(1, 2)).total == 0

    def test_order_additive_under_multiplication(self):
        import itertools
        pool = [
            ZetaProduct.parse(["zeta(s-4)", "zeta(s)^-1"]),
            ZetaProduct.parse(["zetaTheta(s-4)", "zetaTheta(s)^-1"]),
            ZetaProduct.parse(["gamma(s-5)", "gammaR(s-5)^-1"]),
            ZetaProduct.parse(["poch(s/2-5/2;3)"]),
        ]
        for s0 in (5, 6, 7):
            for a, b in itertools.combinations(pool, 2):
                assert order_report(a * b, s0).total == \
                    order_report(a, s0).total + order_report(b, s0).total


class TestConvergence:
    def test_margin_six(self):
        v = convergence_verdict(AffineForm(1, -6), 24, 12)
        assert v.status == "AbsolutelyConvergent" and v.margin == 6

    def test_boundary(self):
        v = convergence_verdict(AffineForm(1, -1), 5, 4)
        assert v.status == "Boundary" and v.margin == 0

    def test_trivial(self):
        v = convergence_verdict(AffineForm(1, -3), 5, 1)
        assert v.status == "AbsolutelyConvergent" and v.margin == 1

    def test_not_convergent(self):
        assert ConvergenceVerdict.compare(3, 8).status == "NotConvergent"
