import json
from fractions import Fraction

import pytest

from torsionbound.audit import (
    RULES,
    CurveRecord,
    audit,
    audit_record,
    generate_records,
    hypothesis_gaps,
    parse_dataset,
    score_against_truth,
    write_dataset,
)
from torsionbound.bounds import synthesize_certificate, toy_certificate
from torsionbound.errors import SchemaError

HEADER = "id,field_degree,j_degree,isogeny_degree,torsion_d,torsion_N\n"


@pytest.fixture(scope="module")
def cert():
    return synthesize_certificate("0.1")


@pytest.fixture(scope="module")
def toy():
    return toy_certificate("0.1", Fraction(14), Fraction(7))


def _rec(rid="r", D=1, j=1, iso=1, d=1, N=1, cm=False):
    return CurveRecord(rid, D, j, iso, d, N, cm)


class TestParse:
    def test_header_only(self, tmp_path):
        p = tmp_path / "a.csv"
        p.write_text(HEADER)
        assert parse_dataset(p) == []

    def test_one_row(self, tmp_path):
        p = tmp_path / "a.csv"
        p.write_text(HEADER + "e1,840,1,1,1,41\n")
        assert parse_dataset(p) == [_rec("e1", 840, N=41)]

    def test_d_must_divide_N(self, tmp_path):
        p = tmp_path / "a.csv"
        p.write_text(HEADER + "e1,4,1,1,2,3\n")
        with pytest.raises(SchemaError, match="2"):
            parse_dataset(p)

    def test_line_numbers_reported(self, tmp_path):
        p = tmp_path / "a.csv"
        p.write_text(HEADER + "ok,1,1,1,1,7\nbad,x,1,1,1,7\nworse,1,1,1,0,7\n")
        with pytest.raises(SchemaError) as info:
            parse_dataset(p)
        assert "3" in str(info.value) and "4" in str(info.value)

    def test_jsonl(self, tmp_path):
        p = tmp_path / "a.jsonl"
        rows = [{"id": "a", "field_degree": 840, "j_degree": 1, "isogeny_degree": 1, "torsion_d": 1,
                 "torsion_N": 41, "cm": False},
                {"id": "b", "field_degree": 2, "j_degree": 1, "isogeny_degree": 1, "torsion_d": 2,
                 "torsion_N": 2}]
        p.write_text("\n".join(json.dumps(r) for r in rows) + "\n")
        assert [r.id for r in parse_dataset(p)] == ["a", "b"]

    def test_missing_field(self, tmp_path):
        p = tmp_path / "a.jsonl"
        p.write_text(json.dumps({"id": "a", "field_degree": 2}) + "\n")
        with pytest.raises(SchemaError, match="missing"):
            parse_dataset(p)

    def test_duplicate_ids(self, tmp_path):
        p = tmp_path / "a.csv"
        p.write_text(HEADER + "x,1,1,1,1,1\nx,2,1,1,1,1\n")
        with pytest.raises(SchemaError):
            parse_dataset(p)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            parse_dataset(tmp_path / "nope.csv")

    @pytest.mark.parametrize("suffix", [".csv", ".jsonl"])
    def test_write_roundtrip(self, tmp_path, suffix):
        recs = [_rec("a", 840, N=41), _rec("b", 2, d=2, N=2, cm=True), _rec("c", 6, iso=0, N=9, d=3)]
        p = tmp_path / f"out{suffix}"
        write_dataset(recs, p)
        assert parse_dataset(p) == recs


class TestRules:
    def test_small_degree_order_41_fails(self, cert):
        rep = audit_record(_rec(D=2, N=41), cert)
        assert rep.verdicts["RULE_DIV"] == "FAIL" and "840" in rep.checks[0].detail

    def test_degree_840_order_41_passes(self, cert):
        assert audit_record(_rec(D=840, N=41), cert).verdicts["RULE_DIV"] == "PASS"

    def test_vacuous(self, cert):
        assert audit_record(_rec(D=1, N=7), cert).status == "PASS"

    def test_isogeny_valuation_strengthens_requirement(self, cert):
        # with 41^2 | isogeny degree the requirement becomes 840 * 41
        weak = audit_record(_rec(D=840, N=41, iso=41**2, j=1), cert)
        assert weak.verdicts["RULE_DIV"] == "FAIL"
        assert audit_record(_rec(D=840 * 41, N=41, iso=41**2), cert).verdicts["RULE_DIV"] == "PASS"

    def test_weil(self, cert):
        assert audit_record(_rec(D=3, d=5, N=5), cert).verdicts["RULE_WEIL"] == "FAIL"
        assert audit_record(_rec(D=4, d=5, N=5), cert).verdicts["RULE_WEIL"] == "PASS"

    def test_cm_is_inconclusive_not_fail(self, cert):
        rep = audit_record(_rec(D=2, N=41, cm=True), cert)
        assert rep.verdicts["RULE_DIV"] == "INCONCLUSIVE"

    def test_gaps(self):
        assert hypothesis_gaps(_rec()) == []
        assert len(hypothesis_gaps(_rec(iso=0))) == 1
        assert any("divide" in g for g in hypothesis_gaps(_rec(D=3, j=2, iso=3)))
        assert any("psi" in g for g in hypothesis_gaps(_rec(D=10, j=10, iso=2)))

    def test_genuine_bounds_pass(self, cert):
        rep = audit_record(_rec(D=1, d=2, N=10**40 * 2), cert)
        assert rep.verdicts["RULE_EXP"] == "PASS" and rep.verdicts["RULE_ORDER"] == "PASS"

    def test_toy_bounds(self, toy):
        # exp(14) ~ 1.2e6, exp(7) ~ 1096
        rep = audit_record(_rec(D=1, N=2**21), toy)
        assert rep.verdicts["RULE_EXP"] == "FAIL"
        rep = audit_record(_rec(D=1, d=2, N=2**10), toy)
        assert rep.verdicts["RULE_EXP"] == "PASS" and rep.verdicts["RULE_ORDER"] == "FAIL"

    def test_conditional_certificate_never_fails_bounds(self, cert, toy):
        import dataclasses
        cond = dataclasses.replace(toy, conditional=True)
        rep = audit_record(_rec(D=1, N=2**21), cond)
        assert rep.verdicts["RULE_EXP"] == "INCONCLUSIVE"

    def test_sorted_and_z_only_rejected(self, cert):
        reps = audit([_rec("b"), _rec("a")], cert)
        assert [r.record_id for r in reps] == ["a", "b"]
        with pytest.raises(ValueError):
            audit([_rec()], synthesize_certificate(1, z_only=True))

    def test_report_json(self, cert):
        data = audit_record(_rec(D=2, N=41), cert).to_json()
        assert data["status"] == "FAIL" and [c["rule"] for c in data["checks"]] == list(RULES)


class TestGenerator:
    @pytest.mark.parametrize("which", ["cert", "toy"])
    def test_zero_false_verdicts(self, which, request):
        c = request.getfixturevalue(which)
        gen = generate_records(400, c, seed=3)
        conf = score_against_truth(gen, audit([g.record for g in gen], c))
        assert conf.false_pass == 0 and conf.false_fail == 0, conf.mismatches[:5]

    def test_violations_are_single(self, toy):
        gen = generate_records(200, toy, seed=1)
        bad = [g for g in gen if g.violated]
        assert len(bad) == 100
        for g in bad:
            assert [r for r, v in g.expected.items() if v == "FAIL"] == [g.violated]
        assert {g.violated for g in bad} == set(RULES)

    def test_genuine_certificate_violates_only_div_and_weil(self, cert):
        gen = generate_records(100, cert, seed=2)
        assert {g.violated for g in gen if g.violated} == {"RULE_DIV", "RULE_WEIL"}

    def test_deterministic(self, cert):
        a = generate_records(50, cert, seed=9)
        b = generate_records(50, cert, seed=9)
        assert [g.record for g in a] == [g.record for g in b]

    def test_records_validate(self, toy):
        for g in generate_records(300, toy, seed=4):
            g.record.validate()
