import pytest

from groupoidal import (
    AlgebraElement,
    FixtureFormatError,
    HaarSystem,
    validate_equivalence,
    validate_groupoid,
    validate_haar,
)
from groupoidal.fileio import (
    dump_element,
    dump_equivalence,
    dump_groupoid,
    element_from_dict,
    equivalence_from_dict,
    groupoid_from_dict,
    load_equivalence,
    load_groupoid,
    write_json,
)
from groupoidal.fixtures import (
    cyclic_group,
    pair_groupoid,
    source_weighted_haar,
    transitive_equivalence,
)


class TestGroupoidRoundTrip:
    def test_identical_structure(self, tmp_path):
        g = pair_groupoid(3)
        w = source_weighted_haar(g, {"1": 1.0, "2": 2.0, "3": 4.0})
        path = tmp_path / "pair3.json"
        write_json(path, dump_groupoid(g, w))
        g2, w2 = load_groupoid(path)
        assert g2.units == g.units
        assert g2.arrows == g.arrows
        assert g2.compose == g.compose
        assert g2.inverse == g.inverse
        assert g2.unit_arrow == g.unit_arrow
        assert w2.weights == w.weights
        assert validate_groupoid(g2).ok and validate_haar(g2, w2).ok

    def test_missing_haar_defaults_to_counting(self):
        g = cyclic_group(3)
        payload = dump_groupoid(g, None)
        g2, w2 = groupoid_from_dict(payload)
        assert w2.weights == HaarSystem.counting(g2).weights

    def test_emitted_bytes_are_stable(self, tmp_path):
        g = cyclic_group(2)
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        write_json(a, dump_groupoid(g, HaarSystem.counting(g)))
        write_json(b, dump_groupoid(g, HaarSystem.counting(g)))
        assert a.read_bytes() == b.read_bytes()


class TestEquivalenceRoundTrip:
    def test_inline_groupoids(self, tmp_path):
        Z = transitive_equivalence(2, 2)
        wl = HaarSystem.counting(Z.left_groupoid)
        wr = HaarSystem.counting(Z.right_groupoid)
        path = tmp_path / "equiv.json"
        write_json(path, dump_equivalence(Z, wl, wr))
        Z2, wl2, wr2 = load_equivalence(path)
        assert Z2.points == Z.points
        assert Z2.r_map == Z.r_map and Z2.s_map == Z.s_map
        assert Z2.left_action == Z.left_action
        assert Z2.right_action == Z.right_action
        assert wl2.weights == wl.weights and wr2.weights == wr.weights
        assert validate_equivalence(Z2).ok

    def test_groupoids_by_path_reference(self, tmp_path):
        Z = transitive_equivalence(2, 2)
        wl = HaarSystem.counting(Z.left_groupoid)
        wr = HaarSystem.counting(Z.right_groupoid)
        write_json(tmp_path / "g.json", dump_groupoid(Z.left_groupoid, wl))
        write_json(tmp_path / "h.json", dump_groupoid(Z.right_groupoid, wr))
        payload = dump_equivalence(Z, wl, wr)
        payload["G"] = "g.json"
        payload["H"] = "h.json"
        write_json(tmp_path / "equiv.json", payload)
        Z2, _, _ = load_equivalence(tmp_path / "equiv.json")
        assert Z2.left_groupoid.arrows == Z.left_groupoid.arrows
        assert validate_equivalence(Z2).ok


class TestElementRoundTrip:
    def test_values_preserved(self):
        f = AlgebraElement("Z", {"z1": 1.5 - 2.0j, "z2": 0.25j})
        f2 = element_from_dict(dump_element(f))
        assert f2.carrier == "Z"
        assert f2.values == f.values

    def test_bad_carrier_rejected(self):
        with pytest.raises(FixtureFormatError):
            element_from_dict({"carrier": "Q", "values": []})


class TestMalformedInput:
    def test_missing_key(self):
        with pytest.raises(FixtureFormatError):
            groupoid_from_dict({"units": []})

    def test_bad_row_shape(self):
        with pytest.raises(FixtureFormatError):
            groupoid_from_dict({"units": [], "arrows": [], "compose": [["a", "b"]]})

    def test_unreadable_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(FixtureFormatError):
            load_groupoid(path)

    def test_non_numeric_weight(self):
        g = cyclic_group(2)
        payload = dump_groupoid(g, HaarSystem.counting(g))
        payload["haar"] = [["g0", "heavy"], ["g1", 1.0]]
        with pytest.raises(FixtureFormatError):
            groupoid_from_dict(payload)

    def test_equivalence_missing_actions(self):
        with pytest.raises(FixtureFormatError):
            equivalence_from_dict({"G": {}, "H": {}, "points": []})
