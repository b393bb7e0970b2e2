import time

import pytest

from geo4 import certificates as C
from geo4 import grouppres as gp


@pytest.mark.parametrize("name", sorted(C.REGISTRY))
def test_certificate_passes(name):
    cert = C.REGISTRY[name]()
    assert cert.passed, cert.to_json()
    assert cert.anchor


def test_half_surgery_is_z2():
    G = C.cyclic_surgery_group(2)
    assert gp.coset_enumeration(G).index == 2
    assert gp.abelianization(G).invariant_factors == [2]


@pytest.mark.parametrize("n", range(7))
def test_cyclic_family(n):
    assert gp.abelianization(C.cyclic_surgery_group(n)).invariant_factors == [n]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_sigma_minus3_trivial(k):
    assert gp.group_order(C.sigma_minus3_group(k)) == 1


def test_variants_cover_all_signs():
    assert len(C.r16_groups()) == 16 and len(C.r613_groups()) == 256


def test_drop_fresh_removes_symbols():
    G = C.r25_group()
    assert "g" not in G.generators and "w" not in G.generators


def test_registry_is_fast():
    for name in C.REGISTRY:
        t = time.perf_counter()
        C.REGISTRY[name]()
        assert time.perf_counter() - t < 1.0, name


def test_json_shape():
    j = C.run("r14_amalgam").to_json()
    assert j["claim"] == "order 2" and j["passed"] and j["detail"]["divisors"] == [2]
