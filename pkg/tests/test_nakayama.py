import pytest

from dyck_cluster.dyckcore import DyckPath, PeakPath, catalan
from dyck_cluster.errors import InvalidInputError
from dyck_cluster.nakayama import (
    KupischSeries, NvSpec, ar_quiver_nakayama, dyck_from_kupisch,
    enumerate_kupisch, kupisch_from_dyck, kupisch_from_relations, nv_objects,
    nv_spec_from_kupisch, parse_kupisch, parse_relations, validate_kupisch,
)
from dyck_cluster.shiftcat import ar_quiver, linear_subchain

EXAMPLE = KupischSeries((3, 3, 2, 2, 1))


class TestKupisch:
    @pytest.mark.parametrize("c, valid", [
        ((3, 3, 2, 2, 1), True),
        ((1,), True),
        ((5, 4, 3, 2, 1), True),
        ((2, 2, 2), False),
        ((1, 3, 1), False),
        ((3, 1, 1), False),
        ((2, 1, 2), False),
        ((), False),
    ])
    def test_validate(self, c, valid):
        assert validate_kupisch(c) == valid

    def test_invalid_series_rejected(self):
        with pytest.raises(InvalidInputError):
            KupischSeries((2, 2, 2))

    def test_parse(self):
        assert parse_kupisch("[3, 3, 2,2,1]") == EXAMPLE
        assert str(EXAMPLE) == "3,3,2,2,1"
        with pytest.raises(InvalidInputError):
            parse_kupisch("3,a")

    def test_enumerate_small(self):
        assert [k.c for k in enumerate_kupisch(3)] == [
            (1, 1, 1), (1, 2, 1), (2, 1, 1), (2, 2, 1), (3, 2, 1),
        ]

    @pytest.mark.parametrize("m", range(1, 8))
    def test_enumerate_counts(self, m):
        assert len(enumerate_kupisch(m)) == catalan(m)


class TestDyckCorrespondence:
    @pytest.mark.parametrize("c, steps", [
        ((3, 3, 2, 2, 1), "UUUDUDDUDD"),
        ((1,), "UD"),
        ((1, 1), "UDUD"),
        ((3, 2, 1), "UUUDDD"),
    ])
    def test_dyck_from_kupisch(self, c, steps):
        assert dyck_from_kupisch(KupischSeries(c)) == DyckPath(steps)

    def test_example_round_trip(self):
        assert kupisch_from_dyck(DyckPath("UUUDUDDUDD")) == EXAMPLE

    @pytest.mark.parametrize("m", range(1, 7))
    def test_bijection(self, m):
        series = enumerate_kupisch(m)
        paths = [dyck_from_kupisch(k) for k in series]
        assert len(set(paths)) == catalan(m)
        for k, p in zip(series, paths):
            assert kupisch_from_dyck(p) == k


class TestRelations:
    def test_parse(self):
        assert parse_relations("3-4,1-3") == [(3, 4), (1, 3)]
        with pytest.raises(InvalidInputError):
            parse_relations("3_4")

    def test_example(self):
        assert kupisch_from_relations(5, parse_relations("3-4,1-3")) == EXAMPLE

    def test_no_relations_is_hereditary(self):
        assert kupisch_from_relations(4, []).c == (4, 3, 2, 1)

    @pytest.mark.parametrize("relation", [(4, 4), (0, 2), (3, 5)])
    def test_relation_range(self, relation):
        with pytest.raises(InvalidInputError):
            kupisch_from_relations(5, [relation])


class TestModules:
    def test_nv_spec(self):
        spec = nv_spec_from_kupisch(EXAMPLE)
        assert spec == NvSpec(5, (2, 1, 1, 0, 0))
        assert spec.bounds() == EXAMPLE.c
        assert spec.is_partition()

    def test_nv_spec_bounds_checked(self):
        with pytest.raises(InvalidInputError):
            NvSpec(3, (3, 0, 0))

    def test_objects(self):
        objects = nv_objects(nv_spec_from_kupisch(EXAMPLE))
        assert len(objects) == 11
        assert objects[:3] == [PeakPath(6, 1, 1), PeakPath(6, 1, 2), PeakPath(6, 1, 3)]
        assert PeakPath(6, 1, 4) not in objects

    def test_ar_quiver(self):
        quiver = ar_quiver_nakayama(EXAMPLE)
        assert len(quiver.vertices) == 11
        assert set(quiver.projectives()) == {
            PeakPath(6, 1, 3), PeakPath(6, 2, 4), PeakPath(6, 3, 4),
            PeakPath(6, 4, 5), PeakPath(6, 5, 5),
        }
        assert quiver.tau(PeakPath(6, 1, 1)) == PeakPath(6, 2, 2)
        assert quiver.tau(PeakPath(6, 2, 3)) == PeakPath(6, 3, 4)
        assert quiver.meshes_commute()

    def test_staircase_gives_linear_ar_quiver(self):
        staircase = KupischSeries((5, 4, 3, 2, 1))
        assert ar_quiver_nakayama(staircase) == ar_quiver(linear_subchain(6))
