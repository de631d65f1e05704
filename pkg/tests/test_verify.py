from __future__ import annotations

import json

from m2codes.verify import (
    check_code_cardinality,
    check_f3_table,
    check_isometry,
    check_quotient_lattices,
    run_verification,
)


def test_full_suite_p2():
    rep = run_verification(2)
    status = {c.name: c.status for c in rep.checks}
    assert rep.ok
    assert status["isometry"] == "pass"
    assert status["quotient_lattices"] == "reported"
    assert status["module_rank_formula_n3"] == "pass" and status["module_rank_formula_n7"] == "pass"
    assert status["cardinality_2s_n3"] == "reported" and status["cardinality_2s_n7"] == "pass"
    doc = rep.to_json()
    assert doc["summary"]["fail"] == 0
    assert json.dumps(doc, default=str) == json.dumps(run_verification(2).to_json(), default=str)


def test_isometry_reported_at_p3():
    c = check_isometry(3)
    assert c.status == "reported"
    assert c.details["agree"] == 57 and len(c.details["mismatches"]) == 24


def test_f3_table_reported():
    c = check_f3_table()
    assert c.status == "reported"


def test_quotient_lattices_reported():
    c = check_quotient_lattices(2)
    assert c.status == "reported" and c.details["three_chains"] == 6


def test_code_cardinality_checks_p7():
    checks = {c.name: c.status for c in check_code_cardinality(7)}
    assert checks == {"cardinality_2s_n3": "pass", "module_rank_formula_n3": "pass"}
