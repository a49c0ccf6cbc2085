import json
from pathlib import Path

import pytest

from unipdade.cycpoly import CycError, int_valuation
from unipdade.genre import GroupDescriptor
from unipdade.uniphc import BlockId, check_ell
from unipdade.verify import (MAX_MISMATCHES, Row, VerificationReport, census_summary, dump_json,
                             verify_ctc_cardinality, verify_dade)

GOLDEN = Path(__file__).parent / "golden"
GL3 = GroupDescriptor("A", 3, "gl")
SP4 = GroupDescriptor("C", 2)


def rows(rep):
    return {(str(r.block), r.d): (r.lhs, r.rhs, r.rhs_delta) for r in rep.rows}


class TestDade:
    def test_gl3_golden(self):
        rep = verify_dade(GL3, 2, 3)
        assert rep.to_text() == (GOLDEN / "dade_A3gl_q2_l3.txt").read_text()

    def test_gl3_rows(self):
        for G in (GL3, GroupDescriptor("A", 3, "sc")):
            rep = verify_dade(G, 2, 3)
            assert rep.passed
            assert rows(rep)[("[1]", 1)] == (2, 2, 2)

    @pytest.mark.parametrize("q,e", [(2, 2), (4, 1)])
    def test_sp4_ell3(self, q, e):
        rep = verify_dade(SP4, q, 3)
        assert rep.e == e and rep.passed

    def test_ell_dividing_q_rejected(self):
        with pytest.raises(CycError):
            verify_dade(SP4, 3, 3)

    def test_nothing_splits(self):
        rep = verify_dade(GL3, 2, 5)
        assert rep.passed and rep.census == {0: 1}
        assert all(r.lhs == r.rhs == 0 for r in rep.rows)

    def test_aggregate_mode(self):
        rep = verify_dade(GroupDescriptor("A", 4, "gl"), 5, 3, mode="aggregate")
        assert rep.passed and {str(r.block) for r in rep.rows} == {"ALL"}

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            verify_dade(GL3, 2, 3, mode="both")

    def test_parallel_matches_sequential(self):
        G = GroupDescriptor("C", 3)
        a, b = verify_dade(G, 5, 3), verify_dade(G, 5, 3, jobs=2)
        assert a.to_json() == b.to_json()

    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("q,ell", [(2, 3), (4, 3), (4, 5), (5, 3), (3, 7)])
    def test_model_independence(self, n, q, ell):
        gl = verify_dade(GroupDescriptor("A", n, "gl"), q, ell)
        sc = verify_dade(GroupDescriptor("A", n, "sc"), q, ell)
        assert gl.passed and sc.passed
        shift = int_valuation(q - 1, ell)
        assert (shift > 0) == (check_ell(q, ell) == 1)
        assert rows(gl) == {(b, d + shift): v for (b, d), v in rows(sc).items()}


class TestCtc:
    def test_gl3(self):
        rep = verify_ctc_cardinality(GL3, 2, 3)
        assert rep.passed
        assert rows(rep)[("[1]", 1)][:2] == (2, 2)

    def test_sp4_q3_ell5(self):
        assert verify_ctc_cardinality(SP4, 3, 5).passed


class TestReport:
    def test_json_round_trip(self):
        text = verify_dade(SP4, 3, 5).to_json()
        obj = json.loads(text)
        assert obj["schema_version"] == 1 and obj["pass"] is True
        assert dump_json(obj) == text

    def test_csv_columns(self):
        head = verify_dade(GL3, 2, 3).to_csv().splitlines()
        assert head[0] == "block,unipotent,d,lhs,rhs,rhs_delta,equal"
        assert head[1] == "[1],1,1,2,2,2,1"

    def test_failure_lists_mismatches(self):
        bad = [Row(BlockId(f"x{i}"), 0, 1, 0, 0) for i in range(25)]
        rep = VerificationReport("dade", GL3, 2, 3, 2, "per-block", bad, {0: 1}, 0,
                                 contributions={(BlockId("x0"), 0): ["G > L [1] x1"]})
        text = rep.to_text()
        assert not rep.passed and text.endswith("FAIL\n")
        assert len(rep.mismatches()) == MAX_MISMATCHES
        assert "first 20 mismatching rows:" in text and "from G > L [1] x1" in text

    def test_issue_fails_report(self):
        rep = VerificationReport("dade", GL3, 2, 3, 2, "per-block", [], {0: 1}, 0, issues=["boom"])
        assert not rep.passed and "issue: boom" in rep.to_text()


class TestCensusSummary:
    def test_gl3(self):
        assert census_summary(GL3, 2)["by_length"] == {0: 1, 1: 1}

    def test_trivial(self):
        assert census_summary(GL3, 7)["by_length"] == {0: 1}

    def test_gl4_period_one(self):
        s = census_summary(GroupDescriptor("A", 4, "gl"), 1)
        assert s["total"] == sum(s["by_length"].values())


class TestDetectsBreakage:
    def test_inflated_deep_counts_fail(self, monkeypatch):
        from unipdade import verify as mod
        real = mod.local_count

        def inflated(chain, gamma, q, ell):
            table = real(chain, gamma, q, ell)
            if chain.length == 2:
                table = table.add(table)
            return table

        monkeypatch.setattr(mod, "local_count", inflated)
        rep = verify_dade(GroupDescriptor("A", 3, "gl"), 4, 3)
        assert not rep.passed
        assert any("does not cancel" in msg for msg in rep.issues)
        assert any(r.rhs != r.rhs_delta for r in rep.rows)
        assert not verify_ctc_cardinality(GroupDescriptor("A", 3, "gl"), 4, 3).passed
