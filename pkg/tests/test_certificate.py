import dataclasses
import json
from fractions import Fraction

import mpmath
import pytest

from oracles import sieve
from torsionbound.arith import phi_lower_constant
from torsionbound.bounds import (
    AraiConfig,
    LogBound,
    TraceStep,
    certificate_from_json,
    certificate_to_json,
    evaluate_bound,
    replay_trace,
    synthesize_certificate,
    toy_certificate,
    verify_certificate,
)
from torsionbound.errors import SchemaError


def _z_oracle(eps: Fraction) -> int:
    # 60 digits is plenty for the exponents used here
    with mpmath.workdps(60):
        x = mpmath.mpf(24) ** (1 + mpmath.mpf(eps.denominator) / eps.numerator)
        z = int(mpmath.floor(x)) + 1
    return z


@pytest.fixture(scope="module")
def cert():
    return synthesize_certificate("0.1")


class TestZSelection:
    @pytest.mark.parametrize("eps", ["1", "0.5", "2", "0.4"])
    def test_z_only(self, eps):
        c = synthesize_certificate(eps, z_only=True)
        assert c.Z == _z_oracle(Fraction(eps)) and c.z_only
        assert all(ok for _, ok in verify_certificate(c))

    def test_eps_one(self):
        c = synthesize_certificate(1, z_only=True)
        assert c.Z == 577 and c.pi_Z == len(sieve(577)) and c.pi_Z_exact

    def test_exact_powers(self):
        assert synthesize_certificate("0.25", z_only=True).Z == 24**5 + 1
        assert synthesize_certificate("0.5", z_only=True).Z == 24**3 + 1

    def test_pi_upper_bound_for_huge_z(self):
        c = synthesize_certificate("0.05", z_only=True)
        assert c.Z == 24**21 + 1 and not c.pi_Z_exact
        assert c.pi_Z >= c.Z / mpmath.log(c.Z)


class TestSynthesis:
    @pytest.mark.parametrize("eps", ["0.4", "0.25", "0.01"])
    def test_replays(self, eps):
        c = synthesize_certificate(eps)
        assert c.Z == _z_oracle(Fraction(eps))
        assert dict(verify_certificate(c)) == {k: True for k, _ in verify_certificate(c)}
        assert float(c.c1.ln_upper) > float(mpmath.log(2)) and c.c_point.ln_upper > 0
        assert 0 < c.b < 1

    def test_exponents(self, cert):
        assert cert.exponent_point == Fraction(3, 5)
        assert cert.exponent_cyclic == Fraction(6, 4)
        assert cert.exponent_exp == Fraction(41, 10)
        assert cert.exponent_order == Fraction(51, 10)

    def test_default_table_is_conditional(self, cert):
        assert cert.conditional
        full = AraiConfig(1, {p: 0 for p in sieve(37)}, "all zero")
        assert not synthesize_certificate("0.1", arai=full).conditional

    def test_arai_values_raise_constant(self, cert):
        bigger = synthesize_certificate("0.1", arai=AraiConfig(1, {2: 3}))
        assert bigger.c_exp.ln_upper > cert.c_exp.ln_upper
        assert bigger.c_point == cert.c_point

    def test_b_source(self):
        src = phi_lower_constant("0.25")
        c = synthesize_certificate("0.25", src)
        assert c.b == src.b and all(ok for _, ok in verify_certificate(c))
        with pytest.raises(ValueError):
            synthesize_certificate("0.1", src)

    @pytest.mark.parametrize("eps", ["0", "-0.1", "0.5", "0.7"])
    def test_range(self, eps):
        with pytest.raises(ValueError):
            synthesize_certificate(eps)

    def test_d0_must_be_one(self):
        with pytest.raises(ValueError):
            synthesize_certificate("0.1", arai=AraiConfig(2, {}))


class TestReplay:
    def test_tampered_output(self, cert):
        steps = list(cert.trace)
        i = next(i for i, s in enumerate(steps) if s.id == "c1")
        q = Fraction(steps[i].output) - Fraction(1, 10**6)
        steps[i] = dataclasses.replace(steps[i], output=f"{q.numerator}/{q.denominator}")
        rep = replay_trace(steps)
        assert not rep.ok and any(m.startswith("c1:") for m in rep.mismatches)

    def test_tampered_headline(self, cert):
        bad = dataclasses.replace(cert, Z=cert.Z + 1)
        assert not dict(verify_certificate(bad))["Z_matches_trace"]
        bad = dataclasses.replace(cert, c_exp=LogBound(cert.c_exp.ln_upper - 1))
        assert not dict(verify_certificate(bad))["constants_match_trace"]

    def test_unknown_step_and_dangling_reference(self):
        rep = replay_trace([TraceStep("x", "nope", "", {}, "1")])
        assert not rep.ok
        rep = replay_trace([TraceStep("y", "prime_pi", "", {"x": "@missing"}, "1")])
        assert not rep.ok

    def test_formula_text_is_checked(self, cert):
        steps = list(cert.trace)
        steps[0] = dataclasses.replace(steps[0], formula="something else")
        assert not replay_trace(steps).ok

    def test_toy_does_not_verify(self):
        toy = toy_certificate("0.1", Fraction(14), Fraction(7))
        assert not all(ok for _, ok in verify_certificate(toy))


class TestJson:
    def test_roundtrip(self, cert):
        text = json.dumps(certificate_to_json(cert))
        back = certificate_from_json(json.loads(text))
        assert back == cert
        assert all(ok for _, ok in verify_certificate(back))

    def test_rational_strings(self, cert):
        data = certificate_to_json(cert)
        for key in ("epsilon", "b"):
            num, den = data[key].split("/")
            assert int(num) > 0 and int(den) > 0
        assert {"epsilon", "Z", "pi_Z", "c1", "b", "c_point", "c_cyclic", "c_exp", "c_order", "trace"} <= set(data)

    def test_schema_version(self, cert):
        data = certificate_to_json(cert)
        data["schema_version"] = 99
        with pytest.raises(SchemaError):
            certificate_from_json(data)

    @pytest.mark.parametrize("mutate", [
        lambda d: d.pop("trace"),
        lambda d: d.__setitem__("b", "zero"),
        lambda d: d.__setitem__("Z", "x"),
    ])
    def test_malformed(self, cert, mutate):
        data = certificate_to_json(cert)
        mutate(data)
        with pytest.raises(SchemaError):
            certificate_from_json(data)


class TestEvaluate:
    def test_degree_one(self, cert):
        e, o = evaluate_bound(cert, 1)
        assert e.ln_upper >= cert.c_exp.ln_upper and o.ln_upper >= cert.c_order.ln_upper
        assert e.ln_upper - cert.c_exp.ln_upper < Fraction(1, 10**30)

    def test_monotone(self, cert):
        prev = None
        for d in (1, 2, 3, 10, 100, 10**4, 10**9):
            e, o = evaluate_bound(cert, d)
            if prev:
                assert e.ln_upper > prev[0].ln_upper and o.ln_upper > prev[1].ln_upper
            prev = (e, o)

    def test_matches_float_estimate(self, cert):
        e, _ = evaluate_bound(cert, 1000)
        want = float(cert.c_exp.ln_upper) + float(cert.exponent_exp) * float(mpmath.log(1000))
        assert abs(float(e.ln_upper) - want) < 1e-6 * want

    def test_z_only_rejected(self):
        with pytest.raises(ValueError):
            evaluate_bound(synthesize_certificate(1, z_only=True), 5)


class TestLogBound:
    def test_admits_exact(self):
        lb = LogBound(Fraction(0))
        assert lb.admits(1) and not lb.admits(2)
        ln100 = LogBound(Fraction(4605170185988091, 10**15))  # just below ln 100
        assert ln100.admits(99) and not ln100.admits(100)

    def test_admits_huge(self):
        lb = LogBound(Fraction(10**4))
        with mpmath.workdps(5000):
            x = int(mpmath.floor(mpmath.exp(10**4)))
        assert lb.admits(x) and not lb.admits(x + 1)

    def test_str_and_json(self):
        lb = LogBound(Fraction(10**6))
        assert str(lb).startswith("10^434294.")
        assert LogBound.from_json(lb.to_json()) == lb

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            LogBound(Fraction(1)).admits(0)
