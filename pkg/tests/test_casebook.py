import pytest

from setbelief import UnknownCaseError, available_cases, run_case
from setbelief.casebook import load_case, run_all


EXPECTED_CASES = {
    "killer",
    "material_implication",
    "rough_set_gap",
    "shampoo_base",
    "shampoo_prose_counts",
    "shampoo_relabel",
    "two_experts_intro",
}


def test_available_cases():
    assert set(available_cases()) == EXPECTED_CASES


@pytest.mark.parametrize("name", sorted(EXPECTED_CASES))
def test_case_passes(name):
    report = run_case(name)
    failures = [r for r in report.results if not r.passed]
    assert not failures, failures
    assert report.results  # every case checks something


def test_shampoo_base_has_48_quantities():
    report = run_case("shampoo_base")
    assert len(report.results) == 48
    kinds = {r.quantity.split(" ")[0] for r in report.results}
    assert kinds == {"m", "bel"}


def test_killer_reports_embedding_mismatch():
    report = run_case("killer")
    assert any("stored vs embedded" in o for o in report.observations)
    assert any("embedded-route" in o for o in report.observations)


def test_every_expected_value_carries_a_source():
    for name in available_cases():
        case = load_case(name)
        for check in case.checks:
            assert check.source, f"{name}: {check.quantity} lacks a provenance note"


def test_discrepancy_notes_present():
    assert load_case("shampoo_prose_counts").notes
    assert load_case("two_experts_intro").notes
    assert load_case("killer").notes
    assert load_case("shampoo_relabel").notes


def test_unknown_case():
    with pytest.raises(UnknownCaseError, match="shampoo_base"):
        run_case("nonexistent")


def test_run_all():
    reports = run_all()
    assert len(reports) == len(EXPECTED_CASES)
    assert all(r.passed for r in reports)
