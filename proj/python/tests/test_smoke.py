import pytest

import waring


def test_field_basics():
    f7 = waring.Field(7)
    assert f7.q == 7
    assert f7.inv(3) == 5
    assert f7.kth_power_image(2) == [0, 1, 2, 4]
    assert not f7.minus_one_is_kth_power(2)
    f9 = waring.Field.parse("3^2")
    assert str(f9) == "3^2/1,0,1"
    assert f9.mul(3, 3) == 2


def test_errors_carry_kind():
    with pytest.raises(waring.WaringError) as info:
        waring.Field(4)
    assert waring.error_kind(info.value) == "NotPrime"
    with pytest.raises(ValueError):
        waring.Matrix(waring.Field(7), "1,2;3,4")


def test_matrix_round_trip_and_roots():
    f7 = waring.Field(7)
    c = waring.Matrix(f7, "1,1;4")
    assert c.to_text() == "1,1;4"
    assert c[0, 1] == 1
    a = waring.kth_root_distinct_diag(c, 2)
    assert str(a) == "1,5;2"
    assert a ** 2 == c
    f13 = waring.Field(13)
    s = waring.Matrix(f13, "1,1,0;12,0;1")
    assert waring.kth_root_sparse(s, 2) ** 2 == s


def test_decompose_two_and_three():
    f13 = waring.Field(13)
    c = waring.Matrix(f13, "0,1;0")
    r = waring.decompose(c, 2)
    assert r["verified"]
    parts = [waring.Matrix(f13, t) for t in r["parts"]]
    assert parts[0] ** 2 + parts[1] ** 2 == c
    assert waring.verify_decomposition(c, parts, 2)

    f7 = waring.Field(7)
    fail = waring.decompose(waring.Matrix(f7, "0,1;0"), 2)
    assert not fail["verified"]
    assert fail["failure"]["kind"] == "InsufficientClasses"
    three = waring.decompose(waring.Matrix(f7, "0,1;0"), 2, parts=3)
    assert three["verified"] and len(three["parts"]) == 3


def test_structured_and_canonical():
    f13 = waring.Field(13)
    c = waring.parse_presentation(f13, "12|34:13")
    assert waring.is_indecomposable(c)
    out = waring.decompose_structured(c, 2)
    assert out["result"]["verified"]
    seven = waring.Matrix(f13, "0,1,1,0,0,0,0;0,0,0,0,1,0;0,1,0,0,0;0,1,1,0;0,0,0;0,1;0")
    blocked = waring.decompose_structured(seven, 2)
    assert "result" not in blocked
    assert blocked["obstruction"]["explored"] == 128

    w = waring.diagonalize_distinct(waring.Matrix(f13, "1,1,1;2,1;3"))
    assert w["after"] == "1,0,0;2,0;3" and w["verified"]


def test_oracle():
    f3 = waring.Field(3)
    assert waring.min_waring_number(waring.Matrix(f3, "0,1;0"), 2) == 3
    assert waring.min_waring_number(waring.Matrix(f3, "0,1;0"), 2, cap=2) is None
    f7 = waring.Field(7)
    assert waring.bn_conjugate(waring.Matrix(f7, "1,1;2"), waring.Matrix(f7, "1,0;2"))["S"] == "1,1;1"
    assert waring.bn_conjugate(waring.Matrix(f7, "1,1;2"), waring.Matrix(f7, "2,0;1")) is None
    assert waring.negative_checks(f3, 2)["all_hold"]
    assert waring.lang_weil_check(waring.Field(13), 3, [1, 1])["ok"]
    cls = waring.classify_solutions(waring.Field(13), 0, 3)
    assert cls["class_count"] == 5
