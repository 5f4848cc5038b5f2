import json

import pytest

from novikov.catalog import Catalog, Node, condition_holds, eval_scalar, free_symbols
from novikov.errors import CatalogError, InadmissibleParameter
from novikov.exactnum import Scalar
from novikov.lie import LieClass
from novikov.models.schemas import NodeRef, TargetRef


def S(text: str) -> Scalar:
    return Scalar.of(text)


# ──────────────────────────────────────────────
# Expressions and conditions
# ──────────────────────────────────────────────

def test_conditions():
    assert condition_holds("a + l == 0", {"a": S("-2"), "l": S("2")})
    assert condition_holds("a != 1/2", {"a": S("1/3")})
    assert not condition_holds("a != 1/2", {"a": S("1/2")})
    # undefined sides make both forms false
    assert not condition_holds("1/a == 2", {"a": S("0")})
    assert not condition_holds("1/a != 2", {"a": S("0")})
    with pytest.raises(CatalogError):
        condition_holds("a > 0", {"a": S("1")})


def test_expression_helpers():
    assert free_symbols("(a+l)/a^2 * t + i") == {"a", "l"}
    assert eval_scalar("(b+1/2)*(b+1)", {"b": S("1")}) == S("3")


# ──────────────────────────────────────────────
# Families
# ──────────────────────────────────────────────

def test_instantiate_parametric_families(catalog):
    B5 = catalog.instantiate("B5", {"b": "1/2"})
    assert B5.c[0][1][2] == S("1/2")
    assert B5.c[1][0][2] == S("-1/2")

    E1 = catalog.instantiate("E1", {"l": "2", "a": "-1"})
    assert E1.c[0][0][0] == S("-1")
    assert E1.c[0][1][1] == S("0")
    assert E1.c[0][2][2] == S("1")
    assert E1.c[1][0][1] == S("-1")
    assert E1.c[2][0][2] == S("-1")


def test_excluded_parameters_are_rejected(catalog):
    with pytest.raises(InadmissibleParameter) as exc:
        catalog.instantiate("C7", {"c": "0"})
    assert exc.value.exclusion == "c != 0"
    with pytest.raises(InadmissibleParameter):
        catalog.instantiate("E1", {"l": "0", "a": "1"})


def test_parameter_names_must_match(catalog):
    with pytest.raises(CatalogError):
        catalog.instantiate("B5", {"a": "1"})
    with pytest.raises(CatalogError):
        catalog.instantiate("B5")
    with pytest.raises(CatalogError):
        catalog.family("Z1")


@pytest.mark.parametrize("family, params, expected", [
    ("A4", {}, 0),
    ("A5", {}, 5),
    ("B5", {"b": "1/2"}, 6),
    ("B5", {"b": "2"}, 4),
    ("C6", {"b": "-1"}, 2),
    ("C6", {"b": "1"}, 1),
    ("E1", {"l": "1", "a": "-1"}, 6),
    ("E1", {"l": "2", "a": "-2"}, 3),
    ("E1", {"l": "2", "a": "1"}, 2),
])
def test_der_dim_expected(catalog, family, params, expected):
    assert catalog.der_dim_expected(family, params) == expected


def test_trace_formula(catalog):
    assert catalog.family("E4").trace_formula({}, 1, 1) == S("9/5")
    assert catalog.family("C7").trace_formula({"c": S("-1")}, 1, 1) == S("2")
    # Σμ² vanishes at a = (-1+i)/2
    assert catalog.family("C5").trace_formula({"a": S("-1/2 + 1/2*i")}, 1, 1) is None
    with pytest.raises(CatalogError):
        catalog.family("A2").trace_formula({}, 1, 1)


# ──────────────────────────────────────────────
# Iso-classes
# ──────────────────────────────────────────────

def test_b5_iso_classes(catalog):
    assert catalog.node("B5", {"b": "4/5"}) == catalog.node("B5", {"b": "1/5"})
    assert catalog.node("B5", {"b": "4/5"}).label == "B5(1/5)"
    assert catalog.node("B5", {"b": "1"}) == catalog.node("B5", {"b": "0"})
    labels = [n.label for n in catalog.grid_nodes("B5")]
    assert labels == ["B5(-1/3)", "B5(0)", "B5(1/5)", "B5(1/2)"]


def test_e1_iso_classes(catalog):
    node = catalog.node("E1", {"l": "2", "a": "-1"})
    assert node == catalog.node("E1", {"l": "1/2", "a": "-1/2"})
    assert node.label == "E1(l=1/2, a=-1/2)"
    assert catalog.lie_class_of(node) == LieClass.r3_lambda(2)
    members = catalog.members(node)
    assert {"l": S("2"), "a": S("-1")} in members
    assert len(members) == 2


def test_node_membership_uses_every_member(catalog):
    b0 = catalog.node("B5", {"b": "0"})
    assert catalog.node_matches(b0, NodeRef(family="B5", when=["b == 1"]))
    assert not catalog.node_matches(b0, NodeRef(family="B4"))
    assert catalog.pattern_nodes(NodeRef(family="B5", when=["b == 1/2"])) == [catalog.node("B5", {"b": "1/2"})]


def test_target_instances(catalog):
    ref = TargetRef(family="B5", params={"b": "a"})
    assert catalog.target_instances(ref, {"a": S("4/5")}) == [catalog.node("B5", {"b": "1/5"})]
    fixed = TargetRef(family="C7", params={"c": "b"})
    # computed parameter violates the C7 exclusion
    assert catalog.target_instances(fixed, {"b": S("0")}) == []
    all_b4 = catalog.target_instances(TargetRef(family="B4"), {})
    assert all_b4 == catalog.grid_nodes("B4")


def test_pair_types(catalog):
    a7, a2 = catalog.node("A7"), catalog.node("A2")
    assert catalog.pair_type(a7, a2) == 1
    assert catalog.pair_type(catalog.node("E4"), a2) == 10
    assert catalog.pair_type(catalog.node("D1"), catalog.node("E4")) == 12
    assert catalog.pair_type(a2, catalog.node("B3")) is None
    assert [f.name for f in catalog.families_for_types([4])] == ["D1", "D2"]


def test_obstruction_lookup(catalog):
    hints = catalog.obstructions_for(catalog.node("A7"), catalog.node("A2"))
    assert [h.kind.value for h in hints] == ["trace_invariant"]
    assert hints[0].payload == {"kind": "c", "i": "1", "j": "1"}
    b4 = catalog.node("B4", {"a": "1/2"})
    kinds = {h.kind.value for h in catalog.obstructions_for(catalog.node("B1"), b4)}
    assert "operator_identity" in kinds


def test_identities_for_nodes(catalog):
    names = [name for name, _ in catalog.identities_for(catalog.node("C5", {"a": "1/3"}))]
    assert "R_cubed" in names
    assert "universal" not in names
    assert any(n.startswith("T_C5") for n in names)
    names0 = [name for name, _ in catalog.identities_for(catalog.node("C5", {"a": "0"}))]
    assert not any(n.startswith("T_C5") for n in names0)
    assert [name for name, _ in catalog.universal_identities()] == ["universal"]


def test_weight_triples(catalog):
    fixed = catalog.weight_triples_for([])
    assert fixed == [
        (S("0"), S("1"), S("0")),
        (S("0"), S("0"), S("1")),
        (S("1"), S("1"), S("0")),
        (S("1"), S("0"), S("1")),
    ]
    at_one = catalog.weight_triples_for([S("1")])
    assert at_one[4:] == [(S("1"), S("1"), S("1")), (S("0"), S("1"), S("-1/2"))]


def test_witness_lookup(catalog):
    w = catalog.witness("1")
    assert (w.source, w.target, w.type) == ("A4", "A3", 1)
    assert not w.is_parametric
    with pytest.raises(CatalogError):
        catalog.witness("no-such-witness")
    ids = [w.id for w in catalog.witnesses]
    assert ids[:3] == ["1", "2", "3"]


def test_node_label_without_params():
    assert Node("A4").label == "A4"
    assert str(Node("A4")) == "A4"


# ──────────────────────────────────────────────
# Loading
# ──────────────────────────────────────────────

def test_sample_overrides(tmp_path, catalog_file):
    samples = tmp_path / "samples.json"
    samples.write_text(json.dumps({"B4": [{"a": "2"}, {"a": "-3/7"}]}), encoding="utf-8")
    cat = Catalog.load(catalog_file, samples)
    assert cat.default_samples("B4") == [{"a": S("2")}, {"a": S("-3/7")}]


def test_inadmissible_sample_override(tmp_path, catalog_file):
    samples = tmp_path / "samples.json"
    samples.write_text(json.dumps({"C7": [{"c": "0"}]}), encoding="utf-8")
    with pytest.raises(CatalogError):
        Catalog.load(catalog_file, samples)


def test_dangling_reference(raw_catalog, write_catalog):
    raw_catalog["obstructions"].append(
        {"type": 1, "source": {"family": "A9"}, "target": {"family": "Z9"}, "kind": "manual"}
    )
    with pytest.raises(CatalogError):
        Catalog.load(write_catalog(raw_catalog))


def test_schema_version_mismatch(raw_catalog, write_catalog):
    raw_catalog["schema_version"] = 2
    with pytest.raises(CatalogError):
        Catalog.load(write_catalog(raw_catalog))


def test_malformed_files(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(CatalogError):
        Catalog.load(broken)
    with pytest.raises(CatalogError):
        Catalog.load(tmp_path / "missing.json")


def test_invalid_product_key(raw_catalog, write_catalog):
    raw_catalog["families"][0]["products"] = {"1x": {"1": "1"}}
    with pytest.raises(CatalogError):
        Catalog.load(write_catalog(raw_catalog))
