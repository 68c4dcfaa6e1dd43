from fractions import Fraction

import pytest

from sunflower_lab import Disk, Halfspace3, ParseError, Scene2, Scene3, SetFamily, point2, point3
from sunflower_lab.fileio import (
    dumps_scene,
    dumps_setfam,
    loads_scene,
    loads_setfam,
    read_scene,
    read_setfam,
    write_scene,
    write_setfam,
)


class TestSetfamFormat:
    def test_round_trip_is_fixed_point(self, tmp_path):
        fam = SetFamily.from_sets(5, [[0, 2, 4], [1], []], multifamily=True)
        p1 = tmp_path / "a.setfam"
        write_setfam(fam, p1)
        again = read_setfam(p1)
        assert again == fam
        p2 = tmp_path / "b.setfam"
        write_setfam(again, p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_text_shape(self):
        fam = SetFamily.from_sets(3, [[0, 1]])
        assert dumps_setfam(fam) == "setfam 1 3 1\n2: 0 1\n"
        multi = SetFamily.from_sets(2, [[0], [0]], multifamily=True)
        assert dumps_setfam(multi).startswith("setfam 1 2 2 multi\n")

    def test_comments_blanks_and_crlf_tolerated(self):
        text = "# comment\r\nsetfam 1 3 2\r\n\r\n2: 0 1\r\n1: 2\r\n"
        fam = loads_setfam(text)
        assert fam.members == ((0, 1), (2,))

    def test_parse_errors_carry_line_numbers(self):
        with pytest.raises(ParseError) as exc:
            loads_setfam("setfam 1 3 1\n2: 0\n", path="x.setfam")
        assert exc.value.line == 2
        with pytest.raises(ParseError):
            loads_setfam("")
        with pytest.raises(ParseError):
            loads_setfam("setfam 2 1 0\n")
        with pytest.raises(ParseError):
            loads_setfam("setfam 1 3 1 weird\n1: 0\n")
        with pytest.raises(ParseError):
            loads_setfam("setfam 1 3 2\n1: 0\n")  # missing member line

    def test_invalid_family_reported_as_parse_error(self):
        with pytest.raises(ParseError):
            loads_setfam("setfam 1 2 1\n1: 5\n")  # element out of range
        with pytest.raises(ParseError):
            loads_setfam("setfam 1 2 2\n1: 0\n1: 0\n")  # dup without multi flag


class TestSceneFormat:
    def test_scene2_round_trip(self, tmp_path):
        scene = Scene2(
            points=(point2(Fraction(1, 2), 0), point2(3, Fraction(-7, 3))),
            disks=(Disk(point2(0, 0), Fraction(5, 2)),),
        )
        path = tmp_path / "s.scene"
        write_scene(scene, path)
        again = read_scene(path)
        assert again == scene
        path2 = tmp_path / "t.scene"
        write_scene(again, path2)
        assert path.read_bytes() == path2.read_bytes()

    def test_scene3_round_trip(self):
        scene = Scene3(
            points=(point3(0, 0, 1), point3(1, 2, 3)),
            halfspaces=(Halfspace3(Fraction(1), Fraction(0), Fraction(-2, 5), Fraction(7)),),
        )
        assert loads_scene(dumps_scene(scene)) == scene

    def test_rationals_and_integers_accepted(self):
        scene = loads_scene("scene2 1 1\np 1/2 -3\nd 0 0 9/4\n")
        assert scene.points[0].x == Fraction(1, 2)
        assert scene.disks[0].radius_squared == Fraction(9, 4)

    def test_bad_rational_rejected(self):
        with pytest.raises(ParseError):
            loads_scene("scene2 1 1\np 1/0 2\n")

    def test_wrong_counts_rejected(self):
        with pytest.raises(ParseError):
            loads_scene("scene2 1 2\np 0 0\n")
        with pytest.raises(ParseError):
            loads_scene("scene2 1 1\np 0 0\np 1 1\n")

    def test_tags_must_match_dimension(self):
        with pytest.raises(ParseError):
            loads_scene("scene2 1 1\np 0 0\nh 1 0 0 0\n")
        with pytest.raises(ParseError):
            loads_scene("scene3 1 1\np 0 0 0\nd 0 0 1\n")
