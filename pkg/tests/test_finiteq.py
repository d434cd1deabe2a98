import json

import pytest

from ddquant import (
    FiniteQuantale,
    check_downset_equality,
    diag_homset,
    drastic_chain,
    lukasiewicz_chain,
    residuate,
    validate_quantale,
    verify_quantaloid_laws,
)
from ddquant.finiteq import chain_with_min, load_quantale, quantale_from_dict, quantale_to_dict


def test_malformed_tables_rejected():
    with pytest.raises(ValueError):
        FiniteQuantale(("a", "a"), ((True, True), (True, True)), (("a", "a"), ("a", "a")), "a")
    with pytest.raises(ValueError):
        FiniteQuantale(("a", "b"), ((True,),), (("a", "b"), ("b", "a")), "b")
    with pytest.raises(ValueError):
        FiniteQuantale(("a", "b"), ((True, True), (False, True)),
                       (("a", "c"), ("c", "a")), "b")
    with pytest.raises(ValueError):
        FiniteQuantale(("a", "b"), ((True, True), (False, True)),
                       (("a", "b"), ("b", "b")), "z")


def test_validation_reports_broken_axioms():
    # commutative but non-associative toy table on a 2-chain
    q = FiniteQuantale(
        ("0", "1"),
        ((True, True), (False, True)),
        (("1", "0"), ("0", "1")),
        "1",
    )
    report = validate_quantale(q)
    assert not report.ok
    assert any("associative" in p or "bottom" in p or "distribute" in p
               for p in report.problems)


def test_non_lattice_reported():
    # two incomparable elements with no top: not even a lattice
    q = FiniteQuantale(
        ("a", "b"),
        ((True, False), (False, True)),
        (("a", "a"), ("a", "b")),
        "a",
    )
    report = validate_quantale(q)
    assert not report.ok
    assert any("greatest" in p or "join" in p for p in report.problems)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_lukasiewicz_chains_fully_divisible(n):
    q = lukasiewicz_chain(n)
    assert validate_quantale(q).ok
    laws = verify_quantaloid_laws(q)
    assert laws.ok
    assert not laws.join_gaps
    down = check_downset_equality(q)
    assert down.divisible
    assert down.equal_everywhere


def test_luk3_products_and_residuals():
    q = lukasiewicz_chain(3)
    m = "1/2"
    assert q.mult[q.index[m]][q.index[m]] == "0"
    assert residuate(q, m, "0") == m
    assert residuate(q, "1", "1/2") == "1/2"
    assert residuate(q, "0", "0") == "1"


def test_min_chain_divisible():
    q = chain_with_min(("0", "x", "1"))
    assert validate_quantale(q).ok
    assert check_downset_equality(q).divisible
    assert verify_quantaloid_laws(q).ok


def test_drastic_chain_negative_space():
    q = drastic_chain()
    assert validate_quantale(q).ok
    laws = verify_quantaloid_laws(q)
    assert laws.ok  # category laws hold even without divisibility
    down = check_downset_equality(q)
    assert not down.divisible
    assert not down.equal_everywhere
    assert ("b", "b") in down.mismatched_pairs
    hom = diag_homset(q, "b", "b").members
    assert hom == {"0", "b"}
    # the downset of b is strictly larger
    assert q.downset(q.index["b"]) == {q.index["0"], q.index["a"], q.index["b"]}
    assert residuate(q, "b", "a") == "b"


def test_drastic_residual_witness():
    # b * (b -> a) = b * b = 0 != a, the divisibility failure in the flesh
    q = drastic_chain()
    arrow = residuate(q, "b", "a")
    assert q.mult[q.index["b"]][q.index[arrow]] == "0"


def test_json_round_trip(tmp_path):
    q = drastic_chain()
    data = quantale_to_dict(q)
    assert quantale_from_dict(data) == q
    path = tmp_path / "q.json"
    path.write_text(json.dumps(data))
    assert load_quantale(path) == q


def test_load_rejects_oversized_carrier(tmp_path):
    q = lukasiewicz_chain(9)
    path = tmp_path / "big.json"
    path.write_text(json.dumps(quantale_to_dict(q)))
    with pytest.raises(ValueError, match="capped"):
        load_quantale(path)
    assert load_quantale(path, max_elements=9) == q


def test_missing_fields_rejected():
    with pytest.raises(ValueError, match="missing"):
        quantale_from_dict({"elements": ["a"]})
