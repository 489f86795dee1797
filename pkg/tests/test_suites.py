import pytest

from torsionbound.suites import SUITES, cartan_properties, prime_powers_under, run_suite, scalar_div_properties


def test_prime_powers_under_default_cap():
    pp = prime_powers_under(5_000_000)
    assert (47, 1) in pp and (7, 2) in pp and (2, 5) in pp
    assert (53, 1) not in pp and (2, 6) not in pp


@pytest.mark.parametrize("name", ["CARTAN_DEG", "CERT_REPLAY"])
def test_fast_suites_pass(name):
    rep = run_suite(name)
    assert rep.ok and rep.first_failure is None and rep.results


def test_group_orders_small_cap():
    rep = run_suite("GROUP_ORDERS", cap=20_000)
    assert rep.ok and len(rep.results) == len(prime_powers_under(20_000))


def test_scalar_div_subset():
    assert all(r.ok for r in scalar_div_properties(n_max=20, random_groups=10))


def test_failure_is_reported():
    res = list(cartan_properties(primes=(9,)))
    assert not res[0].ok and "UnsupportedSubgroup" in res[0].detail


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("NOPE")
    assert "ALL" in SUITES


def test_json_shape():
    data = run_suite("CERT_REPLAY").to_json(timings=False)
    assert data["ok"] and all("seconds" not in p for p in data["properties"])
