import math

import liesym


def test_classify_and_dimension_table():
    info = liesym.classify(a="3/10", b="1", d="1/2", e="2")
    assert info["case_id"] == "2.1"
    assert info["dimension"] == 2
    assert info["algebra"] == "abelian"

    quarter = liesym.classify(a="1/4", b="0", d="1/4", e="0")
    assert quarter["case_id"] == "1.4"
    assert quarter["dimension"] == 9

    assert len(liesym.case_ids()) == 16
    dims = liesym.dimension_table()
    assert dims["1.1"] == 6 and dims["2.1"] == 2 and dims["3.2"] == 6
    assert sum(dims.values()) == 91


def test_determining_system_rows():
    rows = liesym.determining_system("ls")
    assert len(rows) == 27
    lookup = dict(rows)
    assert lookup["u_xt"] == "-x*tau_x"
    assert lookup["u_yt"] == "-y*tau_y"
    assert len(liesym.determining_system("heat")) >= 10


def test_basis_round_trip_and_rejection():
    fields = liesym.basis("2.1")
    assert [f["name"] for f in fields] == ["v1", "v2"]
    for f in fields:
        rep = liesym.check_field("2.1", f["xi"], f["gamma"], f["tau"], f["phi"])
        assert rep["ok"] and rep["symbolic_ok"]
        assert rep["max_residual"] < 1e-10

    bad = liesym.check_field("2.1", "x", "0", "0", "0")
    assert not bad["ok"]
    assert bad["failures"]

    heat = liesym.basis("heat")
    assert len(heat) == 6
    assert heat[5]["xi"] == "4*x*t"
    kernel_gen = liesym.check_field(
        "heat", heat[5]["xi"], heat[5]["gamma"], heat[5]["tau"], heat[5]["phi"]
    )
    assert kernel_gen["ok"]


def test_brackets_structure_and_grid():
    tab = liesym.bracket_table("3.2")
    assert tab["closed"] and tab["antisymmetric"] and tab["jacobi"]
    assert len(tab["names"]) == 6

    rep = liesym.structure("3.2")
    assert rep["reference"] == "M"
    assert rep["label"] == "sl2 semidirect h3"
    assert rep["witness_verified"]

    diffs = liesym.transcription_diffs("2.3")
    assert [(d["i"], d["j"]) for d in diffs] == [(2, 3)]

    grid = liesym.isomorphism_grid()
    assert len(grid["isomorphisms"]) == 22
    assert all(g["verified"] for g in grid["isomorphisms"])
    assert len(grid["inclusions"]) == 16
    assert all(g["verified"] for g in grid["inclusions"])


def test_flows_and_transport():
    closed = liesym.flow("1.1", 4, 0.2, x=1.0, y=1.0, t=0.0)
    assert closed["kind"].startswith("sqrt_shift(x")
    assert math.isclose(closed["x"], 1.21, abs_tol=1e-12)

    rk4 = liesym.flow("1.1", 4, 0.2, x=1.0, y=1.0, t=0.0, method="rk4")
    assert math.isclose(closed["x"], rk4["x"], abs_tol=1e-7)
    assert math.isclose(closed["u"], rk4["u"], abs_tol=1e-7)

    res = liesym.transported_residual("1.2", 1, 0.05, x=1.3, y=0.9, t=0.2)
    assert res < 1e-5

    val = liesym.transform_value("heat", 6, 0.3, x=1.0, t=0.5)
    denom = 1.0 + 4.0 * 0.3 * 0.5
    expected = denom ** -0.5 * math.exp(-0.3 / denom)
    assert math.isclose(val, expected, rel_tol=1e-12)


def test_error_paths():
    import pytest

    with pytest.raises(ValueError):
        liesym.classify(a="1/0", b="1", d="1/2", e="2")
    with pytest.raises(IndexError):
        liesym.flow("2.1", 5, 0.1, x=1.0)
    with pytest.raises(ValueError):
        liesym.flow("1.4", 1, 2.0, x=1.0, t=0.8)  # outside the validity domain
