import json
from pathlib import Path

import pytest

import linfty

DATA = Path(__file__).resolve().parents[2] / "data"


def test_example1_jacobi_and_mutation():
    ex = linfty.example1(max_arity=8)
    assert linfty.verify_jacobi(ex["v"], 8)["passed"]

    mutated = linfty.example1(max_arity=4)["v"]
    mutated.set(["v2", "w", "w", "w"], {"w": "1"})
    report = linfty.verify_jacobi(mutated, 4)
    assert not report["passed"]
    assert report["arities"][3]["inputs"] == ["v1", "v2", "w", "w"]
    assert report["arities"][3]["defect"] == {"w": "2"}


def test_example1_delta_and_equivalence():
    ex = linfty.example1(max_arity=8, order=13)
    delta = ex["delta"]
    assert linfty.delta_squared_check(delta, 12)["passed"]
    assert linfty.nilpotency_holds(delta)
    generated = linfty.brackets_from_delta(delta, 8)
    assert linfty.first_difference(generated, ex["w"], 8) is None
    names = [name for name, _ in ex["w"].generators]
    assert linfty.first_difference(linfty.desuspend(ex["v"], names), ex["w"], 8) is None


def test_example2_jacobi():
    ex = linfty.example2(dim0=3, dim1=3, max_arity=5)
    assert ex["delta"] is None
    assert linfty.verify_jacobi(ex["v"], 5)["passed"]
    assert ex["w"].eval(["theta2", "x1", "x1", "x3"]) == {"x2": "4"}


def test_coefficients():
    assert [linfty.b_closed(m) for m in range(5)] == ["1", "1", "-1", "4", "-27"]
    assert linfty.lambert_w_series(3) == ["0", "1", "-1", "3/2"]
    assert [linfty.c2_daily(n) for n in (3, 4, 5)] == ["1", "-4", "-27"]
    assert all(linfty.c1_closed(n) == linfty.c1_recursive(n) for n in range(3, 15))
    assert linfty.g_series(3) == ["1", "1", "-1/2", "2/3"]
    with pytest.raises(ValueError):
        linfty.c1_closed(2)


def test_one_boson_residual():
    order = 6
    one_plus_p = ["1", "1"] + ["0"] * (order - 1)
    assert linfty.nilcheck_one_boson(["0"] * (order + 1), ["0"] * (order + 1), one_plus_p, one_plus_p) == ["0"] * order


def test_documents_round_trip():
    brackets, delta = linfty.parse_document((DATA / "example1.json").read_text())
    assert brackets.symmetry == linfty.Symmetry.skew
    assert delta is not None
    text = linfty.dump_document(brackets, delta)
    again, _ = linfty.parse_document(text)
    assert again == brackets
    assert json.loads(text)["version"] == "1"
    with pytest.raises(ValueError):
        linfty.parse_document("{}")


def test_truncation_error():
    ex = linfty.example1(max_arity=4, order=4)
    with pytest.raises(linfty.TruncationError):
        linfty.delta_squared_check(ex["delta"], 6)
