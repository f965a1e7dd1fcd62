"""The vcn command: verbs, formats, exit codes, and determinism."""

import json

import pytest

from vcn import (
    ExtensionHypergraph,
    FiniteStructure,
    GroundFamily,
    RelStructure,
    SetSystem,
    points,
)
from vcn.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_zar_table_csv(capsys):
    code, out, err = run(capsys, "zar-table", "--n", "2", "--m", "1..3", "--d", "2")
    assert code == 0 and not err
    lines = out.strip().splitlines()
    assert lines[0] == "n,m,d,z,status,erdos_bound"
    assert lines[1].startswith("2,1,2,2,exact,")
    assert lines[3].startswith("2,3,2,7,exact,")


def test_zar_table_json_and_range_forms(capsys):
    code, out, _ = run(capsys, "zar-table", "--n", "1", "--m", "2,4", "--d", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert [row["z"] for row in doc] == [2, 2]


def test_zar_table_deterministic(capsys):
    args = ("zar-table", "--n", "2", "--m", "1..4", "--d", "2")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_bad_range_is_input_error(capsys):
    code, _, err = run(capsys, "zar-table", "--n", "2", "--m", "x..y", "--d", "2")
    assert code == 1 and "error:" in err


def test_missing_verb_is_input_error(capsys):
    code, _, err = run(capsys)
    assert code == 1 and "error:" in err


def test_dim_and_shatter_and_verify(tmp_path, capsys):
    code, out, _ = run(capsys, "extremal", "--n", "2", "--d", "1", "--m", "2")
    assert code == 0
    path = tmp_path / "fam.json"
    path.write_text(out.strip() + "\n")

    code, out, _ = run(capsys, "dim", str(path))
    assert code == 0 and out.strip() == "1"
    code, out, _ = run(capsys, "dim", str(path), "--format", "json")
    assert json.loads(out) == {"dim": 1}

    code, out, _ = run(capsys, "shatter", str(path), "--m", "1..2")
    lines = out.strip().splitlines()
    assert lines[0] == "m,pi,bound,tight"
    assert lines[2] == "2,8,15,false"

    code, out, _ = run(capsys, "verify-bounds", str(path), "--m", "1..2")
    assert code == 0
    assert all(line.endswith("true") for line in out.strip().splitlines()[1:])


def test_shift_round_trip(tmp_path, capsys):
    fam = GroundFamily(3, (0b101, 0b011, 0b111))
    path = tmp_path / "fam.json"
    path.write_text(fam.to_json())
    code, out, _ = run(capsys, "shift", str(path))
    assert code == 0
    shifted = GroundFamily.from_json(out.strip())
    assert shifted.members == (0, 2, 4)


def test_counterexample_verb(capsys):
    code, out, _ = run(capsys, "counterexample", "--m", "2")
    assert code == 0
    s = FiniteStructure.from_json(out.strip())
    assert s.domain_size == 10


def test_arrow_verb(tmp_path, capsys):
    for name, size in [("a", 2), ("b", 3), ("c6", 6), ("c5", 5)]:
        (tmp_path / f"{name}.json").write_text(points(size).to_json())
    code, out, _ = run(
        capsys, "arrow", str(tmp_path / "a.json"), str(tmp_path / "b.json"),
        str(tmp_path / "c6.json"), "--k", "2",
    )
    assert code == 0
    assert out.strip().splitlines()[1] == "2,3,6,2,true,32768"
    code, out, _ = run(
        capsys, "arrow", str(tmp_path / "a.json"), str(tmp_path / "b.json"),
        str(tmp_path / "c5.json"), "--k", "2",
    )
    assert out.strip().splitlines()[1].startswith("2,3,5,2,false,")


def test_arrow_budget_exit_code(tmp_path, capsys):
    for name, size in [("a", 2), ("b", 3), ("c", 6)]:
        (tmp_path / f"{name}.json").write_text(points(size).to_json())
    code, _, err = run(
        capsys, "arrow", str(tmp_path / "a.json"), str(tmp_path / "b.json"),
        str(tmp_path / "c.json"), "--k", "2", "--budget", "10",
    )
    assert code == 2 and "refused:" in err


def test_direct_sum_verb(tmp_path, capsys):
    (tmp_path / "pt.json").write_text(points(1).to_json())
    (tmp_path / "two.json").write_text(points(2).to_json())
    code, out, _ = run(
        capsys, "direct-sum", str(tmp_path / "pt.json"), str(tmp_path / "two.json"),
        str(tmp_path / "pt.json"), str(tmp_path / "two.json"), "--k", "2",
    )
    assert code == 0
    witness = RelStructure.from_json(out.strip())
    assert witness.part_sizes == (17, 3)


def test_encode_partite_verb(tmp_path, capsys):
    g = RelStructure(3, None, 2, frozenset({frozenset({0, 1})}))
    path = tmp_path / "g.json"
    path.write_text(g.to_json())
    code, out, _ = run(capsys, "encode-partite", str(path))
    assert code == 0
    d = RelStructure.from_json(out.strip())
    assert d.part_sizes == (3, 3)
    assert d.edges == frozenset({frozenset({0, 4})})


def test_gen_random_verb_and_outfile(tmp_path, capsys):
    out_path = tmp_path / "h.json"
    code, out, _ = run(
        capsys, "gen-random", "--n", "2", "--m", "8", "--t", "1",
        "--seed", "3", "--out", str(out_path),
    )
    assert code == 0 and out == ""
    eh = ExtensionHypergraph.from_json(out_path.read_text())
    assert eh.t == 1 and eh.seed == 3


def test_gen_random_refusal_exit_code(capsys):
    code, _, err = run(
        capsys, "gen-random", "--n", "2", "--m", "2", "--t", "2",
        "--seed", "0", "--budget", "3",
    )
    assert code == 2 and "refused:" in err


def test_walk_verb(tmp_path, capsys):
    code, out, _ = run(
        capsys, "gen-random", "--n", "2", "--m", "12", "--t", "1", "--seed", "9",
    )
    h_path = tmp_path / "h.json"
    h_path.write_text(out.strip())
    pair = {"w": [[0, 2], [1, 3], [0, 7], [1, 8]], "w_prime": [[0, 3], [1, 3], [0, 9], [1, 8]]}
    p_path = tmp_path / "pair.json"
    p_path.write_text(json.dumps(pair))
    code, out, _ = run(capsys, "walk", str(h_path), str(p_path))
    assert code == 0
    doc = json.loads(out)
    assert doc["length"] == len(doc["steps"]) - 1
    assert doc["steps"][0] == pair["w"]


def test_walk_bad_pair_is_input_error(tmp_path, capsys):
    code, out, _ = run(capsys, "gen-random", "--n", "2", "--m", "6", "--t", "0", "--seed", "1")
    h_path = tmp_path / "h.json"
    h_path.write_text(out.strip())
    p_path = tmp_path / "pair.json"
    p_path.write_text('{"w": [[0, 0]]}')
    code, _, err = run(capsys, "walk", str(h_path), str(p_path))
    assert code == 1 and "error:" in err


def test_missing_file_is_input_error(capsys):
    code, _, err = run(capsys, "dim", "/nonexistent/system.json")
    assert code == 1 and "error:" in err


def test_threads_env_is_validated(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("VCN_THREADS", "2")
    code, out, _ = run(capsys, "zar-table", "--n", "1", "--m", "2", "--d", "2")
    assert code == 0
    monkeypatch.setenv("VCN_THREADS", "zero")
    code, _, err = run(capsys, "zar-table", "--n", "1", "--m", "2", "--d", "2")
    assert code == 1 and "VCN_THREADS" in err


def test_system_json_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "dim", str(path))
    assert code == 1
