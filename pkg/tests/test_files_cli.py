import json
import subprocess
import sys

import pytest

from crcodes import constructions as con
from crcodes import files
from crcodes.cli import main
from crcodes.graphs import GraphSpec

S63 = GraphSpec("grassmann", 2, 6, 3)


def test_code_file_round_trip(tmp_path):
    code = con.hyperplane_code(S63)
    path = tmp_path / "h.code"
    files.write_code(path, code)
    text = path.read_text()
    assert text.splitlines()[0] == "code graph=jq:2,6,3 size=155 label=hyperplane"
    back = files.read_code(path)
    assert back.spec == code.spec
    assert back.ids.tolist() == code.ids.tolist()
    assert back.label == "hyperplane"


def test_code_file_rejects_bad_size(tmp_path):
    code = con.hyperplane_code(S63)
    lines = files.code_to_text(code).splitlines()
    bad = "\n".join([lines[0]] + lines[1:-1])
    with pytest.raises(ValueError):
        files.code_from_text(bad)


def test_design_file_round_trip(tmp_path):
    spread = con.desarguesian_2spread(2, 6)
    path = tmp_path / "spread.design"
    files.write_design(path, spread)
    assert path.read_text().splitlines()[0] == "design n=6 k=2 q=2"
    back = files.read_design(path)
    assert back.blocks == spread.blocks


def test_johnson_code_file_round_trip(tmp_path):
    s166 = GraphSpec("johnson", 1, 16, 6)
    code = con.avoid_code(s166, con.extended_hamming_sqs(4))
    path = tmp_path / "sqs.code"
    files.write_code(path, code)
    back = files.read_code(path)
    assert back.ids.tolist() == code.ids.tolist()


def test_cli_eigenvalues_json(capsys):
    assert main(["eigenvalues", "--graph", "jq:2,6,3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["eigenvalues"] == [98, 35, 5, -7]
    assert data["valency"] == 98


def test_cli_eigenvalues_csv(capsys):
    assert main(["eigenvalues", "--graph", "jq:2,4,2", "--format", "csv"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "i,theta"
    assert out[1:] == ["0,18", "1,3", "2,-3"]


def test_cli_construct_verify_round_trip(tmp_path, capsys):
    code_path = tmp_path / "h.code"
    assert main(["construct", "--kind", "hyperplane", "--graph", "jq:2,6,3",
                 "--out", str(code_path)]) == 0
    assert main(["verify", "--graph", "jq:2,6,3", "--code", str(code_path)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["completely_regular"] is True
    assert report["beta"] == [56] and report["gamma"] == [7]


def test_cli_verify_rejects_perturbed_code(tmp_path, capsys):
    code_path = tmp_path / "s.code"
    assert main(["construct", "--kind", "symplectic", "--graph", "jq:2,6,3",
                 "--out", str(code_path)]) == 0
    lines = code_path.read_text().splitlines()
    # swap one codeword for a vertex outside the code
    from crcodes import files as f
    code = f.read_code(code_path)
    outside = next(v for v in range(1395) if v not in set(code.ids.tolist()))
    from crcodes.graphs import vertex_index
    idx = vertex_index(S63)
    lines[1] = idx[outside].serialize()
    code_path.write_text("\n".join([lines[0]] + sorted(set(lines[1:]))) + "\n")
    rc = main(["verify", "--graph", "jq:2,6,3", "--code", str(code_path)])
    report = json.loads(capsys.readouterr().out)
    assert rc == 1
    assert report["completely_regular"] is False
    assert "counterexample" in report


def test_cli_construct_avoid_empty_boundary(tmp_path, capsys):
    out = tmp_path / "empty.code"
    rc = main(["construct", "--kind", "avoid", "--graph", "jq:2,6,4",
               "--design", "spread", "--out", str(out)])
    assert rc == 0
    assert "size=0" in out.read_text().splitlines()[0]
    rc = main(["verify", "--graph", "jq:2,6,4", "--code", str(out)])
    report = json.loads(capsys.readouterr().out)
    assert rc == 1
    assert report["error"] == "code is empty"


def test_cli_construct_sqs_and_avoid(tmp_path):
    design_path = tmp_path / "sqs.design"
    assert main(["construct", "--kind", "sqs", "--m", "4",
                 "--out", str(design_path)]) == 0
    code_path = tmp_path / "avoid.code"
    assert main(["construct", "--kind", "avoid", "--graph", "j:16,6",
                 "--design", f"@{design_path}", "--out", str(code_path)]) == 0
    assert code_path.read_text().splitlines()[0].endswith(
        "graph=j:16,6 size=448 label=avoid")


def test_cli_search_small_sweep(tmp_path, capsys):
    rc = main(["search", "--graph", "jq:2,4,2", "--group", "singer:5",
               "--theta", "-3", "--mode", "first", "--max-seconds", "30",
               "--out", str(tmp_path)])
    assert rc == 0
    data = json.loads((tmp_path / "verdicts.json").read_text())
    got = {v["gamma1"]: v["status"] for v in data["verdicts"]}
    assert got == {3: "SAT", 6: "SAT", 9: "SAT"}
    assert all(v["lift_verified"] for v in data["verdicts"])
    assert (tmp_path / "g3.code").exists()


def test_cli_search_single_point_no_probes(capsys):
    rc = main(["search", "--graph", "jq:2,4,2", "--group", "singer:5",
               "--beta0", "18", "--gamma1", "3", "--mode", "count",
               "--no-probes"])
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert out["verdicts"][0]["count"] == 11


def test_cli_search_integrality_screen(capsys):
    rc = main(["search", "--graph", "jq:2,6,3", "--group", "singer:21",
               "--theta", "5", "--gamma1", "4"])
    assert rc == 64  # rejected before solving: 4 is not 0 mod 3
    assert "integrality" in capsys.readouterr().err


def test_cli_search_identity_group_sweep(capsys, tmp_path):
    rc = main(["search", "--graph", "jq:2,4,2", "--group", "identity",
               "--theta", "-3", "--max-seconds", "60",
               "--out", str(tmp_path)])
    assert rc in (0, 2)
    data = json.loads((tmp_path / "verdicts.json").read_text())
    assert [v["gamma1"] for v in data["verdicts"]] == [3, 6, 9]


def test_cli_search_parallel_jobs(tmp_path):
    rc = main(["search", "--graph", "jq:2,4,2", "--group", "singer:5",
               "--theta", "-3", "--jobs", "2", "--max-seconds", "60",
               "--out", str(tmp_path)])
    assert rc == 0
    data = json.loads((tmp_path / "verdicts.json").read_text())
    assert {v["gamma1"]: v["status"] for v in data["verdicts"]} == \
        {3: "SAT", 6: "SAT", 9: "SAT"}


def test_cli_search_opb_export(tmp_path):
    rc = main(["search", "--graph", "jq:2,4,2", "--group", "singer:5",
               "--theta", "-3", "--format", "opb", "--out", str(tmp_path)])
    assert rc == 0
    text = (tmp_path / "g3.opb").read_text()
    assert text.startswith("* #variable= 15 #constraint= 16")
    rc = main(["search", "--graph", "jq:2,4,2", "--group", "singer:5",
               "--theta", "-3", "--format", "lp", "--out", str(tmp_path)])
    assert (tmp_path / "g3.lp").read_text().rstrip().endswith("End")


def test_cli_construct_avoid_large_grassmann(tmp_path):
    out = tmp_path / "big.code"
    rc = main(["construct", "--kind", "avoid", "--graph", "jq:2,8,4",
               "--design", "spread", "--out", str(out)])
    assert rc == 0
    assert "size=146880" in out.read_text(encoding="utf-8").splitlines()[0]


def test_cli_search_csv_verdicts(tmp_path):
    rc = main(["search", "--graph", "jq:2,4,2", "--group", "singer:5",
               "--beta0", "18", "--gamma1", "3", "--format", "csv",
               "--out", str(tmp_path)])
    assert rc == 0
    lines = (tmp_path / "verdicts.csv").read_text().splitlines()
    assert lines[0] == "gamma1,beta0,status,stage,code_size"
    assert lines[1].startswith("3,18,SAT,")


def test_cli_table1_text_and_json(capsys, tmp_path):
    assert main(["table1"]) == 0
    text = capsys.readouterr().out
    assert "gamma1 mod 7 = 0" in text
    assert "hyperplane" in text and "symplectic" in text
    assert main(["table1", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    rows = {r["eigenvalue"]: r for r in data["rows"]}
    assert rows[35]["feasible_gamma1"] == [7, 14, 21, 28]
    built35 = {e["gamma1"] for e in rows[35]["verified_constructions"]}
    assert built35 == {7, 14}
    built5 = {e["gamma1"] for e in rows[5]["verified_constructions"]}
    assert built5 == {9, 21}
    assert rows[-7]["verified_constructions"] == []
    assert rows[-7]["open"] == [21, 42]


def test_cli_table1_merges_cached_verdicts(tmp_path, capsys):
    rc = main(["search", "--graph", "jq:2,6,3", "--group", "singer:21",
               "--theta", "5", "--gamma1", "12", "--max-seconds", "120",
               "--out", str(tmp_path)])
    assert rc == 0
    assert main(["table1", "--results", str(tmp_path),
                 "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    row5 = next(r for r in data["rows"] if r["eigenvalue"] == 5)
    assert 12 in row5["search_sat"]
    assert 12 not in row5["open"]


@pytest.mark.parametrize("construct_args,graph", [
    (["--kind", "hyperplane", "--graph", "jq:2,6,3"], "jq:2,6,3"),
    (["--kind", "hyperplane-point", "--graph", "jq:2,6,3"], "jq:2,6,3"),
    (["--kind", "symplectic", "--graph", "jq:2,6,3"], "jq:2,6,3"),
    (["--kind", "avoid", "--graph", "jq:2,6,3", "--design", "spread"],
     "jq:2,6,3"),
    (["--kind", "avoid", "--graph", "j:16,6", "--design", "sqs"], "j:16,6"),
])
def test_cli_verify_of_construct_exits_zero(tmp_path, capsys, construct_args,
                                            graph):
    path = tmp_path / "c.code"
    assert main(["construct", *construct_args, "--out", str(path)]) == 0
    assert main(["verify", "--graph", graph, "--code", str(path)]) == 0
    assert json.loads(capsys.readouterr().out)["completely_regular"] is True


def test_cli_usage_errors(capsys):
    assert main(["verify", "--graph", "nope", "--code", "x"]) == 64
    assert main(["search", "--graph", "jq:2,4,2", "--group", "mystery",
                 "--theta", "-3"]) == 64
    assert main(["frobnicate"]) == 64


def test_cli_json_byte_stability(tmp_path):
    out = subprocess.run(
        [sys.executable, "-m", "crcodes.cli", "eigenvalues",
         "--graph", "jq:2,6,3"],
        capture_output=True, text=True, check=True)
    out2 = subprocess.run(
        [sys.executable, "-m", "crcodes.cli", "eigenvalues",
         "--graph", "jq:2,6,3"],
        capture_output=True, text=True, check=True)
    assert out.stdout == out2.stdout
    assert json.loads(out.stdout)["eigenvalues"] == [98, 35, 5, -7]
