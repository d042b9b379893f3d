import pytest
from hypothesis import given, strategies as st

from setbelief import (
    Frame,
    FrameMismatchError,
    NotProductFrameError,
    SubsetRef,
    UnknownAtomError,
    cylindrical_extension,
    product,
    project_subset,
)
from setbelief.frame import MAX_ATOMS_ENV


class TestFrameConstruction:
    def test_quality_frame(self):
        f = Frame(["H", "M", "S", "D"])
        assert f.atoms == ("H", "M", "S", "D")
        assert f.size == 4
        assert not f.is_product

    def test_single_atom(self):
        f = Frame(["a"])
        assert f.size == 1
        assert f.full() == f.subset(["a"])

    def test_duplicate_name_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            Frame(["x", "x"])

    def test_empty_rejected(self):
        with pytest.raises(ValueError, match="at least one"):
            Frame([])

    def test_size_cap_default(self):
        Frame([f"a{i}" for i in range(24)])
        with pytest.raises(ValueError, match="exceeds"):
            Frame([f"a{i}" for i in range(25)])

    def test_size_cap_env_override(self, monkeypatch):
        monkeypatch.setenv(MAX_ATOMS_ENV, "32")
        f = Frame([f"a{i}" for i in range(30)])
        assert f.size == 30
        monkeypatch.setenv(MAX_ATOMS_ENV, "zebra")
        with pytest.raises(ValueError, match="integer"):
            Frame(["a"])

    def test_equality_by_atom_list(self):
        assert Frame(["a", "b"]) == Frame(["a", "b"])
        assert Frame(["a", "b"]) != Frame(["b", "a"])


class TestProduct:
    def test_quality_times_shop(self, joint_frame):
        assert joint_frame.size == 8
        assert joint_frame.factor_shape == (4, 2)
        assert joint_frame.atoms[:3] == ("(H,B)", "(H,G)", "(M,B)")

    def test_unit_factor(self):
        f = Frame(["x", "y"])
        j = product(f, Frame(["u"]))
        assert j.size == f.size
        assert j.atoms == ("(x,u)", "(y,u)")

    def test_two_five_atom_frames(self, monkeypatch):
        five = [f"a{i}" for i in range(5)]
        with pytest.raises(ValueError, match="exceeds"):
            product(Frame(five), Frame([f"b{i}" for i in range(5)]))
        monkeypatch.setenv(MAX_ATOMS_ENV, "32")
        j = product(Frame(five), Frame([f"b{i}" for i in range(5)]))
        assert j.size == 25


class TestSubsets:
    def test_encode_singleton(self, quality_frame):
        s = quality_frame.subset(["H"])
        assert s.atoms() == ("H",)
        assert len(s) == 1

    def test_encode_joint_pair(self, joint_frame):
        s = joint_frame.subset(["(H,B)", "(H,G)"])
        assert s.atoms() == ("(H,B)", "(H,G)")

    def test_encode_empty(self, quality_frame):
        assert quality_frame.subset([]).is_empty()

    def test_unknown_atom(self, quality_frame):
        with pytest.raises(UnknownAtomError, match="'Z'"):
            quality_frame.subset(["Z"])

    def test_roundtrip_exhaustive_up_to_six_atoms(self):
        for n in range(1, 7):
            f = Frame([f"a{i}" for i in range(n)])
            for s in f.all_subsets():
                assert f.subset(s.atoms()) == s

    def test_set_algebra(self, quality_frame):
        hm = quality_frame.subset(["H", "M"])
        ms = quality_frame.subset(["M", "S"])
        assert (hm & ms) == quality_frame.subset(["M"])
        assert (hm | ms) == quality_frame.subset(["H", "M", "S"])
        assert ~quality_frame.subset(["S", "D"]) == hm
        assert quality_frame.subset(["H"]) <= hm
        assert not hm <= quality_frame.subset(["H"])
        assert "H" in hm and "S" not in hm

    def test_frame_mismatch(self, quality_frame, shop_frame):
        with pytest.raises(FrameMismatchError):
            quality_frame.subset(["H"]) & shop_frame.subset(["B"])

    @given(a=st.integers(0, 63), b=st.integers(0, 63))
    def test_algebra_laws(self, a, b):
        f = Frame(list("abcdef"))
        sa, sb = SubsetRef(f, a), SubsetRef(f, b)
        assert ~~sa == sa
        assert (sa & f.full()) == sa
        assert (sa | f.empty()) == sa
        assert (sa & sb).issubset(sa)
        assert sa.issubset(sa | sb)


class TestFactorMaps:
    def test_extension_of_gun(self):
        weapons = Frame(["gun", "knife"])
        outcome = Frame(["rescue", "letdie"])
        joint = product(weapons, outcome)
        ext = cylindrical_extension(joint, 0, weapons.subset(["gun"]))
        assert ext.atoms() == ("(gun,rescue)", "(gun,letdie)")

    def test_extension_of_full_factor(self, joint_frame, shop_frame):
        assert cylindrical_extension(joint_frame, 1, shop_frame.full()).is_full()

    def test_extension_matches_name_enumeration(self, joint_frame, quality_frame):
        # Oracle: pick joint atoms by their rendered name prefix.
        ext = cylindrical_extension(joint_frame, 0, quality_frame.subset(["H"]))
        expected = tuple(a for a in joint_frame.atoms if a.startswith("(H,"))
        assert ext.atoms() == expected == ("(H,B)", "(H,G)")

    def test_projection_examples(self, joint_frame, quality_frame, shop_frame):
        a = joint_frame.subset(["(H,B)", "(S,G)"])
        assert project_subset(joint_frame, 0, a) == quality_frame.subset(["H", "S"])
        assert project_subset(joint_frame, 1, a) == shop_frame.subset(["B", "G"])
        assert project_subset(joint_frame, 0, joint_frame.empty()).is_empty()
        assert project_subset(joint_frame, 1, joint_frame.full()) == shop_frame.full()

    def test_extension_then_projection_is_identity(self, joint_frame, quality_frame, shop_frame):
        for index, factor in ((0, quality_frame), (1, shop_frame)):
            for a in factor.all_subsets(include_empty=False):
                ext = cylindrical_extension(joint_frame, index, a)
                assert project_subset(joint_frame, index, ext) == a

    def test_not_a_product(self, quality_frame):
        with pytest.raises(NotProductFrameError):
            cylindrical_extension(quality_frame, 0, quality_frame.subset(["H"]))

    def test_bad_factor_index(self, joint_frame, quality_frame):
        with pytest.raises(ValueError, match="factor index"):
            cylindrical_extension(joint_frame, 2, quality_frame.subset(["H"]))

    def test_factor_frame_mismatch(self, joint_frame, shop_frame):
        with pytest.raises(FrameMismatchError):
            cylindrical_extension(joint_frame, 0, shop_frame.subset(["B"]))
