import pytest

from properties import ALL_CHECKS, run_check


@pytest.mark.parametrize("name", list(ALL_CHECKS) + ["normalization"])
def test_property_suite(name):
    passed, message, _ = run_check(name)
    assert passed, message
