import json

import pytest

from greedy_lebesgue import spaces as sp
from greedy_lebesgue.params import SearchConfig
from greedy_lebesgue.verify import (SUITES, ConfigError, SuiteSpec, VerificationReport,
                                    _record, default_spec, emit_report, parse_report,
                                    ratio_series, run_suite)

SMALL = {
    "summing_remark": {"m_range": [1, 6]},
    "f1_chain": {"spaces": ["c0_summing", "lp_quasi:1"], "window": 4, "m_range": [1, 3]},
    "main1_sandwich": {"spaces": ["lp_quasi:1/2", "c0_sup"], "window": 4, "m_range": [1, 3],
                       "samples": 20},
    "quasi_relations": {"spaces": ["c0_summing"], "window": 4, "m_range": [1, 3]},
    "mu_squares": {"spaces": ["c0_summing", "lp_quasi:1/2"], "window": 4, "m_range": [1, 2]},
    "t3v3_schauder": {"spaces": ["c0_summing"], "window": 4, "m_range": [1, 3]},
    "trunc_bound": {"spaces": ["c0_summing", "lp_quasi:1"], "window": 4, "m_range": [1, 3]},
    "ctga_dominates": {"window": 5, "m_range": [1, 3], "samples": 40},
    "cheby_bound": {"spaces": ["c0_summing", "lp_quasi:1"], "window": 4, "m_range": [1, 2],
                    "samples": 10},
    "oldbound_compare": {"window": 4, "m_range": [1, 3]},
    "prop5_witness": {"samples": 20},
    "prop6_witness": {"samples": 20},
    "lemma_convexity_report": {"window": 4, "m_range": [1, 2], "samples": 10},
}


def small(suite):
    return SuiteSpec.from_dict({"suite": suite} | SMALL[suite])


def test_small_table_covers_all_suites():
    assert set(SMALL) == set(SUITES)


@pytest.mark.parametrize("suite", SUITES)
def test_small_suite_runs_clean(suite):
    rep = run_suite(small(suite))
    assert rep.checks
    assert rep.ok, [c.check_id for c in rep.failures]
    for c in rep.checks:
        assert c.check_class in ("exact", "windowed", "report_only")
        if c.check_class == "report_only":
            assert c.status == "report"
            assert c.note.endswith(("holds", "violated"))


def test_lemma_report_records_formula_constant_failure():
    rep = run_suite(small("lemma_convexity_report"))
    half = [c for c in rep.checks if "1/2" in c.check_id and "formula" in c.check_id]
    assert half and any(c.note.endswith("violated") for c in half)


@pytest.mark.parametrize("fmt", ["json", "csv"])
def test_emit_deterministic_and_roundtrip(fmt, tmp_path):
    a = emit_report(run_suite(small("trunc_bound")), fmt)
    b = emit_report(run_suite(small("trunc_bound")), fmt, path=tmp_path / "r")
    assert a == b
    assert (tmp_path / "r").read_text() == a
    back = parse_report(a, fmt)
    assert emit_report(back, fmt) == a


def test_json_report_shape():
    rep = run_suite(small("summing_remark"))
    d = json.loads(emit_report(rep))
    assert set(d) == {"suite", "config", "summary", "checks"}
    assert d["config"]["m_range"] == [1, 6]
    assert d["summary"]["fail"] == 0
    assert sum(d["summary"].values()) == len(d["checks"])


def test_empty_and_single_reports():
    empty = VerificationReport("f1_chain", {"suite": "f1_chain"})
    js = json.loads(emit_report(empty))
    assert js["checks"] == [] and js["summary"] == {"pass": 0, "fail": 0, "report": 0}
    one = VerificationReport("f1_chain", {}, (_record("x", "exact", 1, "<=", 2, "c"),))
    lines = emit_report(one, "csv").splitlines()
    assert len(lines) == 4  # two comment lines, header, one row
    assert parse_report(emit_report(one, "csv"), "csv").checks == one.checks


def test_record_semantics():
    r = _record("a", "exact", 3, "<=", 2)
    assert r.status == "fail" and r.margin == -1
    r = _record("a", "report_only", 3, "<=", 2)
    assert r.status == "report" and r.note == "violated"
    r = _record("a", "windowed", 1.0, "=", 1.0 + 1e-12, exact=False)
    assert r.status == "pass" and -1e-11 < r.margin <= 0


def test_nan_serializes_as_string():
    rep = VerificationReport("f1_chain", {}, (_record("n", "report_only", float("inf"), "<=", 1,
                                                      exact=False),))
    text = emit_report(rep)
    assert json.loads(text)["checks"][0]["lhs"] == "inf"


@pytest.mark.parametrize("bad", [
    {"suite": "nope"},
    {"suite": "f1_chain", "colour": 1},
    {"spaces": ["c0_sup"]},
    {"suite": "f1_chain", "m_range": [3, 1]},
    {"suite": "f1_chain", "window": 0},
])
def test_config_errors(bad):
    with pytest.raises(ConfigError):
        SuiteSpec.from_dict(bad)


@pytest.mark.parametrize("bad", [
    {"suite": "t3v3_schauder", "spaces": ["prop6_space:2x6:loose"]},
    {"suite": "prop5_witness", "spaces": ["prop5_space:4x6:loose"]},
    {"suite": "prop6_witness", "spaces": ["c0_sup"]},
    {"suite": "f1_chain", "spaces": ["hilbert"]},
])
def test_config_errors_at_run(bad):
    with pytest.raises(ConfigError):
        run_suite(SuiteSpec.from_dict(bad | {"window": 3}))


def test_config_echo_contains_defaults():
    spec = default_spec("prop6_witness")
    echo = spec.echo()
    assert echo["spaces"][0]["scales"] == [[1297, 6]]
    assert SuiteSpec.from_dict(json.loads(json.dumps({"suite": "prop6_witness"}))) == spec


# -- ratio series --------------------------------------------------------------

def test_ratio_series_lp1_mu_flat():
    rs = ratio_series(sp.lp_quasi(1, exact=True), "mu", "mu_d", 1, (1, 4),
                      SearchConfig(pool_size=20))
    assert [r for *_, r in rs.rows] == [1.0] * 4
    assert rs.slope == pytest.approx(0.0, abs=1e-12)


def test_ratio_series_summing_mu_t_windowed():
    rs = ratio_series(sp.c0_summing(exact=True), "mu_t", "mu_t_d", 1, (1, 4), mode="windowed",
                      N=4, grid=(0, 1, -1))
    assert all(0 < r <= 2 + 1e-12 for *_, r in rs.rows)
    assert rs.to_dict()["mode"] == "windowed"


def test_ratio_series_errors():
    with pytest.raises(ZeroDivisionError):
        ratio_series(sp.c0_summing(exact=True), "g", "g_c", 1, (0, 1), mode="windowed", N=3)
    with pytest.raises(ValueError):
        ratio_series(sp.c0_sup(), "g", "g", 1, mode="bogus")
