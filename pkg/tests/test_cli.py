# -*- coding: utf-8 -*-
import json

import pytest

from bouquet_o.cli import _protect_negative, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_negative_literals_are_protected():
    assert _protect_negative(["slice", "2", "-1/2", "--out", "tsv", "-3", "-.5"]) == [
        "slice",
        "2",
        "−1/2",
        "--out",
        "tsv",
        "−3",
        "−.5",
    ]


def test_slice_tsv(capsys):
    code, out, _ = run(capsys, "slice", "2", "-2", "--out", "tsv")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 6
    header = lines[0].split("\t")
    assert header[:2] == ["label", "sign_vector"]
    assert header[-2:] == ["socle", "support_dim"]


def test_slice_json(capsys):
    code, out, _ = run(capsys, "slice", "2", "-5/2")
    assert code == 0
    payload = json.loads(out)
    assert payload["lambda"] == "-5/2"
    assert len(payload["chambers"]) == 5
    assert sorted(len(block) for block in payload["blocks"]) == [1, 2, 2]
    assert payload["arrangement"]["orientation"] == -1


def test_slice_level_four_chamber_count(capsys):
    code, out, _ = run(capsys, "slice", "4", "-5")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["chambers"]) == 13


def test_slice_non_regular(capsys):
    code, out, err = run(capsys, "slice", "2", "0")
    assert code == 3
    assert out == ""
    assert "NON_REGULAR" in err


def test_sign_vectors_from_file(capsys, toy_arrangement_file):
    code, out, _ = run(capsys, "sign-vectors", "--arrangement", str(toy_arrangement_file))
    assert code == 0
    payload = json.loads(out)
    assert payload["feasible"] == ["++", "-+", "--"]
    assert payload["bounded_feasible"] == ["-+", "--"]
    assert payload["lattice_point_warnings"] == ["--"]
    assert payload["linked"] is True


def test_sign_vectors_bad_file(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"ambient_dim": 2, "lattice_basis": [[1, 2, 3]], "base_point": ["0", "1"], "xi": ["1"]}', encoding="utf-8")
    code, _, err = run(capsys, "sign-vectors", "--arrangement", str(path))
    assert code == 2
    assert "BAD_INPUT" in err


def test_sign_vectors_non_regular_still_lists_vectors(capsys):
    code, out, err = run(capsys, "sign-vectors", "2", "0")
    assert code == 0
    payload = json.loads(out)
    assert payload["feasible"]
    assert set(payload["bounded_feasible"]) <= set(payload["feasible"])
    assert payload["regular"] is False
    assert payload["lattice_point_warnings"] == []
    assert "NON_REGULAR" in err


def test_sign_vectors_reports_regular_slice(capsys):
    code, out, _ = run(capsys, "sign-vectors", "2", "-2")
    assert code == 0
    payload = json.loads(out)
    assert payload["regular"] is True
    assert len(payload["bounded_feasible"]) == 5


def test_sign_vectors_needs_input(capsys):
    code, _, _ = run(capsys, "sign-vectors")
    assert code == 2


@pytest.mark.parametrize("n, ell, count", [(2, 5, 10), (1, 3, 1), (3, 2, 18)])
def test_fixed_points_counts(capsys, n, ell, count):
    code, out, _ = run(capsys, "fixed-points", str(n), str(ell))
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == count
    assert len(payload["fixed_points"]) == count


def test_fixed_points_ascii(capsys):
    code, out, _ = run(capsys, "fixed-points", "2", "2", "--out", "ascii")
    assert code == 0
    assert "v0 --X1--> v1" in out
    assert out.count("# p") == 4


def test_fixed_points_out_of_range(capsys):
    code, _, err = run(capsys, "fixed-points", "4", "2")
    assert code == 3
    assert "UNSUPPORTED_DIM" in err


def test_fixed_components_tsv(capsys):
    code, out, _ = run(capsys, "fixed-components", "3", "NU_PRIME", "--lam", "-1/2", "--out", "tsv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split("\t") == ["component", "dim", "quantization", "period"]
    assert lines[1].split("\t")[-1] == "-1"
    assert lines[2].split("\t")[-1] == "1"


def test_fixed_components_unknown_kind(capsys):
    code, _, err = run(capsys, "fixed-components", "3", "SL2")
    assert code == 2
    assert "UNKNOWN_KIND" in err


def test_leaves_and_dims(capsys):
    code, out, _ = run(capsys, "leaves", "2", "3")
    assert code == 0
    assert len(out.strip().splitlines()) == 5
    code, out, _ = run(capsys, "dims", "2", "3")
    assert code == 0
    assert json.loads(out)["resolution_dim"] == 14


def test_classify_single(capsys):
    code, out, _ = run(capsys, "classify", "2", "-1/2")
    assert code == 0
    payload = json.loads(out)
    assert payload["singular"] is True
    assert payload["regime"] == "SINGULAR"


def test_classify_sample_is_deterministic(capsys):
    _, first, _ = run(capsys, "classify", "3", "--sample", "20", "--seed", "4", "--out", "tsv")
    _, second, _ = run(capsys, "classify", "3", "--sample", "20", "--seed", "4", "--out", "tsv")
    assert first == second
    assert len(first.strip().splitlines()) == 21


def test_classify_bad_rational(capsys):
    code, out, err = run(capsys, "classify", "2", "abc")
    assert code == 2
    assert out == ""
    assert "BAD_INPUT" in err


def test_homs_dot(capsys):
    code, out, _ = run(capsys, "homs", "3", "-3", "--out", "dot")
    assert code == 0
    assert out.startswith('digraph "homs_l3_INTEGRAL_LARGE"')
    assert out.count("->") == 8


def test_homs_json(capsys):
    code, out, _ = run(capsys, "homs", "3", "-7/2")
    assert code == 0
    payload = json.loads(out)
    assert payload["regime"] == "HALF_INTEGRAL_LARGE"
    assert payload["ringel_symmetric"] is True
    assert len(payload["edges"]) == 3


def test_mult_tsv(capsys):
    code, out, _ = run(capsys, "mult", "2", "-2")
    assert code == 0
    assert out.splitlines()[0] == "simple\tΔ1\tΔ2\tΔ3\tΔ4"


def test_mult_singular(capsys):
    code, _, err = run(capsys, "mult", "2", "0")
    assert code == 3
    assert "REGIME_OUT_OF_SCOPE" in err


def test_socles_and_res(capsys):
    code, out, _ = run(capsys, "socles", "3", "-4")
    assert code == 0
    assert json.loads(out)["Δ1"] == "S6"
    code, out, _ = run(capsys, "res", "2", "-2", "--convention", "SUPPORT_ALIGNED")
    assert code == 0
    assert json.loads(out)["delta_images"]["Δ1"] == "Δ_α1 ⊕ Δ_β1"


def test_unsupported_format(capsys):
    code, _, _ = run(capsys, "res", "2", "-2", "--out", "tsv")
    assert code == 2


def test_support(capsys):
    code, out, _ = run(capsys, "support", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 7
    assert all(line.endswith("True") for line in lines[1:])


def test_audit_ascii(capsys):
    code, out, _ = run(capsys, "audit", "3", "-4", "--out", "ascii")
    assert code == 0
    assert "=" * 60 in out
    assert "AMBIGUOUS" in out


def test_audit_json_is_deterministic(capsys):
    _, first, _ = run(capsys, "audit", "2", "-5/2")
    _, second, _ = run(capsys, "audit", "2", "-5/2")
    assert first == second
    assert json.loads(first)["regime"] == "HALF_INTEGRAL_LARGE"


def test_reflect(capsys):
    code, out, _ = run(capsys, "reflect", "-3/4")
    assert code == 0
    assert json.loads(out) == {"lambda": "-3/4", "reflected": "-1/4"}
