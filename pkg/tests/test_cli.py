import json
from itertools import combinations

import pytest

from hyperdense import parse_hypergraph
from hyperdense.cli import main
from hyperdense.reduced import complete_reduced, serialize_reduced_json

from conftest import C5_MINUS_TEXT

K4_TEXT = "3 4 4\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n"
EMPTY10_TEXT = "3 10 0\n"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_decide_pi1_witness(tmp_path, capsys):
    path = write(tmp_path, "c5.hyg", C5_MINUS_TEXT)
    code, out, _ = run(capsys, "decide-pi1", path)
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert payload["result"]["witness"]["ordering"] == [1, 4, 2, 0, 3]


def test_decide_pi1_none(tmp_path, capsys):
    path = write(tmp_path, "k4.hyg", K4_TEXT)
    code, out, _ = run(capsys, "decide-pi1", path)
    assert code == 1
    assert json.loads(out)["result"]["witness"] == "none"


def test_decide_pi1_bad_input(tmp_path, capsys):
    path = write(tmp_path, "bad.hyg", "3 3 1\n0 1 9\n")
    code, _, err = run(capsys, "decide-pi1", path)
    assert code == 2
    assert "line 2" in err


def test_decide_pi1_missing_file(capsys):
    code, _, err = run(capsys, "decide-pi1", "/nonexistent/file.hyg")
    assert code == 2


def test_frequent_witness_and_none(tmp_path, capsys):
    edge = write(tmp_path, "edge.hyg", "3 3 1\n0 1 2\n")
    code, out, _ = run(capsys, "frequent", edge)
    assert code == 0
    assert json.loads(out)["result"]["witness"]["length"] == 1
    k4 = write(tmp_path, "k4.hyg", K4_TEXT)
    code, out, _ = run(capsys, "frequent", k4)
    assert code == 1


def test_generate_ternary(tmp_path, capsys):
    out_path = tmp_path / "t2.hyg"
    code, _, _ = run(capsys, "generate", "ternary", "3", "2", "-o", str(out_path))
    assert code == 0
    host = parse_hypergraph(out_path.read_text())
    assert host.n == 9 and len(host.edges) == 30


def test_generate_hphi_deterministic(capsys):
    code, out1, _ = run(capsys, "generate", "hphi", "12", "--seed", "7")
    assert code == 0
    code, out2, _ = run(capsys, "generate", "hphi", "12", "--seed", "7")
    assert out1 == out2
    code, out3, _ = run(capsys, "generate", "hphi", "12", "--seed", "8")
    assert out3 != out1


def test_generate_hphi_explicit_colouring(tmp_path, capsys):
    colouring = write(tmp_path, "phi.txt", "3 3\n0 1 3\n0 2 2\n1 2 1\n")
    code, out, _ = run(capsys, "generate", "hphi", "3", "--colouring", colouring)
    assert code == 0
    host = parse_hypergraph(out)
    assert host.edges == ((0, 1, 2),)


def test_generate_hphi_k4_flags_the_generalization(tmp_path, capsys):
    colouring = write(tmp_path, "phi4.txt", "4 4\n1 2 3 1\n0 2 3 2\n0 1 3 3\n0 1 2 4\n")
    code, out, _ = run(capsys, "generate", "hphi", "4", "--k", "4", "--colouring", colouring)
    assert code == 0
    assert "generalisation" in out
    host = parse_hypergraph(out)
    assert host.k == 4 and host.edges == ((0, 1, 2, 3),)


def test_embed_uniformity_mismatch_is_input_error(tmp_path, capsys):
    edge3 = write(tmp_path, "e3.hyg", "3 3 1\n0 1 2\n")
    edge4 = write(tmp_path, "e4.hyg", "4 4 1\n0 1 2 3\n")
    code, _, err = run(capsys, "embed", edge3, edge4)
    assert code == 2
    assert "mismatch" in err


def test_audit_vertex_violated(tmp_path, capsys):
    path = write(tmp_path, "empty.hyg", EMPTY10_TEXT)
    code, out, _ = run(capsys, "audit", "vertex", path, "--d", "0.5", "--eta", "0.01")
    assert code == 1
    result = json.loads(out)["result"]
    assert result["verdict"] == "violated"
    assert result["certificate"]["U"] == list(range(10))


def test_audit_vertex_satisfied(tmp_path, capsys):
    complete = "3 6 20\n" + "\n".join(
        " ".join(map(str, e)) for e in combinations(range(6), 3)
    ) + "\n"
    path = write(tmp_path, "k6.hyg", complete)
    code, out, _ = run(capsys, "audit", "vertex", path, "--d", "1.0", "--eta", "0.01")
    assert code == 0
    assert json.loads(out)["result"]["verdict"] == "satisfied"


def test_audit_heuristic_unresolved_exit_code(tmp_path, capsys):
    path = write(tmp_path, "empty.hyg", EMPTY10_TEXT)
    code, out, _ = run(
        capsys, "audit", "vertex", path, "--d", "0.0", "--eta", "0.5",
        "--mode", "heuristic", "--restarts", "2", "--budget", "10",
    )
    assert code == 3
    assert json.loads(out)["result"]["verdict"] == "unresolved"


def test_audit_profile(tmp_path, capsys):
    t2_text = None
    code, out, _ = run(capsys, "generate", "ternary", "3", "2")
    t2_text = out
    path = write(tmp_path, "t2.hyg", t2_text)
    code, out, _ = run(capsys, "audit", "profile", path, "--eta-grid", "1.0")
    assert code == 0
    entry = json.loads(out)["result"]["entries"][0]
    assert abs(entry["density"] - 30 / 84) < 1e-12


def test_sweep_small(capsys):
    code, out, _ = run(capsys, "sweep", "3")
    assert code == 0
    result = json.loads(out)["result"]
    assert result["patterns"] == 2
    assert result["consistent"] is True


def test_sweep_f4_classes(capsys):
    code, out, _ = run(capsys, "sweep", "4")
    result = json.loads(out)["result"]
    assert result["patterns"] == 16
    assert result["classes"]["frequent_and_orderable"] == 11
    assert result["classes"]["neither"] == 5
    assert result["classes"]["frequent_not_orderable"] == 0


def test_reduced_select_and_verify(tmp_path, capsys):
    rh = complete_reduced(5, 2)
    path = write(tmp_path, "reduced.json", serialize_reduced_json(rh))
    code, out, _ = run(capsys, "reduced", "select", path, "--mu", "1.0", "--f", "3")
    assert code == 0
    selection = json.loads(out)["result"]["selection"]
    sel_path = write(tmp_path, "sel.json", json.dumps(selection))
    code, out, _ = run(capsys, "reduced", "verify", path, "--selection", sel_path)
    assert code == 0
    assert json.loads(out)["result"]["valid"] is True


def test_reduced_select_rejects_sparse(tmp_path, capsys):
    rh = complete_reduced(4, 2)
    data = json.loads(serialize_reduced_json(rh))
    del data["constituents"]["0,1,2"]
    path = write(tmp_path, "sparse.json", json.dumps(data))
    code, _, err = run(capsys, "reduced", "select", path, "--mu", "0.5", "--f", "3")
    assert code == 2
    assert "dense" in err


def test_verify_fact7(capsys):
    code, out, _ = run(capsys, "verify-fact7", "--resolution", "51")
    assert code == 0
    result = json.loads(out)["result"]
    assert result["minimum"] >= -1e-9
    assert abs(result["gap_at_110"]) < 1e-12


def test_audit_tn(capsys):
    code, out, _ = run(capsys, "audit-tn", "--level", "2", "--mode", "exact")
    assert code == 0
    assert json.loads(out)["result"]["violations"] == []


def test_optimality(capsys):
    code, out, _ = run(capsys, "optimality", "--r", "1", "--n", "3")
    result = json.loads(out)["result"]
    assert result["edges"] == 60
    assert abs(result["eta"] - 2 / 3) < 1e-12


def test_supersat(tmp_path, capsys):
    path = write(tmp_path, "edge.hyg", "3 3 1\n0 1 2\n")
    code, out, _ = run(capsys, "supersat", "--file", path, "--nmax", "2")
    assert code == 0
    entries = json.loads(out)["result"]["entries"]
    assert entries[0]["hom"] == 6 and entries[1]["hom"] == 180


def test_supersat_rejects_non_embeddable(tmp_path, capsys):
    path = write(tmp_path, "k4.hyg", K4_TEXT)
    code, _, err = run(capsys, "supersat", "--file", path, "--nmax", "2")
    assert code == 2


def test_hom_count_and_embed(tmp_path, capsys):
    edge = write(tmp_path, "edge.hyg", "3 3 1\n0 1 2\n")
    c5 = write(tmp_path, "c5.hyg", C5_MINUS_TEXT)
    code, out, _ = run(capsys, "hom-count", edge, c5)
    assert code == 0
    assert json.loads(out)["result"]["count"] == 24
    code, out, _ = run(capsys, "embed", edge, c5)
    assert code == 0
    code, out, _ = run(capsys, "embed", c5, edge)
    assert code == 1


def test_reports_embed_config_and_seed(tmp_path, capsys):
    path = write(tmp_path, "c5.hyg", C5_MINUS_TEXT)
    code, out, _ = run(capsys, "decide-pi1", path, "--seed", "99")
    payload = json.loads(out)
    assert payload["config"]["seed"] == 99
    assert payload["config"]["threads"] == 1


def test_runs_are_deterministic(tmp_path, capsys):
    path = write(tmp_path, "empty.hyg", EMPTY10_TEXT)
    args = ("audit", "vertex", path, "--d", "0.9", "--eta", "0.001",
            "--mode", "heuristic", "--seed", "5", "--restarts", "4")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_threads_flag_does_not_change_output(tmp_path, capsys):
    path = write(tmp_path, "c5.hyg", C5_MINUS_TEXT)
    _, out1, _ = run(capsys, "decide-pi1", path)
    _, out2, _ = run(capsys, "--threads", "4", "decide-pi1", path)
    assert json.loads(out1)["result"] == json.loads(out2)["result"]


def test_unknown_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as err:
        main(["no-such-command"])
    assert err.value.code == 2
