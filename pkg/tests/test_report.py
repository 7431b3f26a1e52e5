import json
from fractions import Fraction

import pytest

from realcremona.report import Report, dumps
from realcremona.suites import render_all, suite_determinism, verify_family
from realcremona.conjugacy import Config7
from realcremona.families import FamilySpec


def test_duplicate_ids_rejected():
    rep = Report("r")
    rep.add("a", "claim", True)
    with pytest.raises(ValueError):
        rep.add("a", "claim", True)


def test_bad_status_rejected():
    with pytest.raises(ValueError):
        Report("r").add("a", "claim", "maybe")


def test_crashing_check_fails_with_message():
    rep = Report("r")
    c = rep.run("a", "claim", lambda: 1 / 0)
    assert c.status == "fail" and "ZeroDivisionError" in c.detail and rep.failed


def test_inconclusive_is_not_pass():
    rep = Report("r")
    rep.add("a", "claim", "inconclusive")
    assert not rep.passed and not rep.failed
    assert rep.counts() == {"pass": 0, "fail": 0, "inconclusive": 1}


def test_dumps_is_sorted_with_rational_strings():
    text = dumps({"b": Fraction(1, 2), "a": {Fraction(3), Fraction(-2, 3)}})
    assert json.loads(text) == {"a": ["-2/3", "3"], "b": "1/2"}
    assert text.index('"a"') < text.index('"b"')


def test_determinism_suite_detects_difference():
    rendered = render_all()
    assert suite_determinism(rendered).passed
    assert suite_determinism(rendered + " ").failed


def test_verify_family_records_non_lifting_scaling():
    rep = verify_family(FamilySpec(7, config7=Config7.of(["i", "3i"])))
    assert not rep.failed
