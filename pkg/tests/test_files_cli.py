import subprocess
import sys

import pytest

from quasimat import files, fixtures
from quasimat.cli import main
from quasimat.matroid import MatroidView
from quasimat.multigraph import Multigraph
from quasimat.tripartition import QuasiBiasedGraph


def roundtrip(obj):
    return files.parse(files.serialize(obj))


def test_multigraph_roundtrip():
    g = Multigraph([0, 1, 2], [(0, 0, 1), (1, 1, 2), (2, 0, 2), (3, 0, 0)])
    g2 = roundtrip(g)
    assert isinstance(g2, Multigraph)
    assert g2.edges == g.edges


def test_signed_roundtrip():
    q = fixtures.signed_complete(4, (0, 3), fixtures.F)
    q2 = roundtrip(q)
    assert isinstance(q2, QuasiBiasedGraph)
    assert q2.assignment == q.assignment


def test_explicit_roundtrip():
    q = fixtures.rank2_two_vertex_split_bias()
    q2 = roundtrip(q)
    assert q2.assignment == q.assignment


def test_canonical_file_roundtrips_byte_identical():
    q = fixtures.signed_complete(4, (0, 5), fixtures.F)
    text = files.serialize(q)
    assert files.serialize(files.parse(text)) == text
    g = Multigraph([0, 1, 2], [(0, 0, 1), (1, 1, 2), (2, 0, 2)])
    gtext = files.serialize(g)
    assert files.serialize(files.parse(gtext)) == gtext


def test_missing_sign_names_edge():
    text = "vertices 2\nedge 0 0 1\nedge 1 0 1\nbias signed\nsign 0 +\nrule alllift\n"
    with pytest.raises(files.ParseError, match="edge 1"):
        files.parse(text)


def test_unknown_cycle_rejected_with_line():
    text = (
        "vertices 3\nedge 0 0 1\nedge 1 1 2\nedge 2 0 2\n"
        "bias explicit\ncycle balanced 0 1 2\ncycle lift 0 1\n"
    )
    with pytest.raises(files.ParseError, match="line 7"):
        files.parse(text)


def test_check_theorem_csv_format(capsys):
    assert main(["check-theorem", "FIG3", "--format", "csv"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "claim,checked,applicable,violations,conforms"
    assert out[1].startswith("FIG3,4,4,0,")


@pytest.mark.parametrize(
    "text",
    [
        "edge 0 0 1\n",  # missing vertices
        "vertices 2\nedge 0 0 1\nbias maybe\n",
        "vertices 2\nedge 0 0 1\nsign 0 +\n",  # sign outside bias block
        "vertices 2\nedge 0 0 1\nbias signed\nsign 0 ?\nrule alllift\n",
        "vertices 2\nedge 0 0 1\nbias signed\nsign 0 +\n",  # missing rule
        "vertices 2\nedge zero 0 1\n",
        "vertices 2\nnonsense 1 2\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(files.ParseError):
        files.parse(text)


@pytest.fixture
def instance_file(tmp_path):
    path = tmp_path / "k4.qm"
    path.write_text(files.serialize(fixtures.signed_complete(4, (0, 5), fixtures.F)))
    return str(path)


@pytest.fixture
def balanced_file(tmp_path):
    from quasimat.multigraph import complete_graph
    from quasimat.tripartition import all_balanced

    path = tmp_path / "bk4.qm"
    path.write_text(files.serialize(all_balanced(complete_graph(4))))
    return str(path)


def test_cli_validate_and_rank(instance_file, capsys):
    assert main(["validate", instance_file]) == 0
    assert main(["rank", instance_file]) == 0
    out = capsys.readouterr().out
    assert out.strip().endswith("4")
    assert main(["rank", instance_file, "--edges", "0,1"]) == 0


def test_cli_circuits(instance_file, capsys):
    assert main(["circuits", instance_file]) == 0
    lines = [l for l in capsys.readouterr().out.splitlines() if l]
    q = fixtures.signed_complete(4, (0, 5), fixtures.F)
    assert len(lines) == len(MatroidView(q).circuits())


def test_cli_connectivity_exit_codes(instance_file, balanced_file):
    assert main(["is-connected", instance_file]) == 0
    assert main(["is-3connected", instance_file]) == 1  # has a 2-separation
    assert main(["is-3connected", balanced_file]) == 0
    assert main(["is-unbreakable", balanced_file]) == 0


def test_cli_breakable_and_witness(tmp_path, capsys):
    from quasimat.multigraph import complete_graph
    from quasimat.tripartition import all_balanced

    path = tmp_path / "broken.qm"
    path.write_text(
        files.serialize(all_balanced(complete_graph(4).delete_edges([0])))
    )
    assert main(["is-unbreakable", str(path), "--witness"]) == 1
    out = capsys.readouterr().out
    assert "breakable" in out and "flat" in out


def test_cli_shape_and_structure(instance_file, capsys):
    assert main(["classify-shape", instance_file]) == 0
    rc = main(["structure", instance_file])
    assert rc in (0, 1)


def test_cli_balancing_sets(instance_file, balanced_file):
    assert main(["balancing-sets", instance_file]) == 0
    assert main(["balancing-sets", balanced_file]) == 2  # undefined when balanced


def test_cli_minor_roundtrip(instance_file, capsys):
    assert main(["minor", instance_file, "--delete", "5", "--contract", "1"]) == 0
    out = capsys.readouterr().out
    obj = files.parse(out)
    assert isinstance(obj, QuasiBiasedGraph)
    assert 5 not in obj.graph.edges and 1 not in obj.graph.edges


def test_cli_linksum_and_verify(tmp_path, capsys):
    left = fixtures.signed_complete(4, (0, 5), fixtures.F)
    lpath = tmp_path / "left.qm"
    lpath.write_text(files.serialize(left))
    tri = Multigraph([0, 1, 2], [(1, 0, 1), (90, 1, 2), (91, 0, 2)])
    rpath = tmp_path / "right.qm"
    rpath.write_text(files.serialize(tri))
    assert main(["linksum", str(lpath), str(rpath), "1"]) == 0
    glued_text = capsys.readouterr().out
    gpath = tmp_path / "glued.qm"
    gpath.write_text(glued_text)
    assert (
        main(
            [
                "verify-decomposition",
                str(gpath),
                str(lpath),
                "--join",
                f"1:{rpath}",
            ]
        )
        == 0
    )


def test_cli_free_elements(balanced_file, tmp_path):
    assert main(["free-elements", balanced_file]) == 1  # complete: none
    from quasimat.multigraph import cycle_graph
    from quasimat.tripartition import all_balanced

    path = tmp_path / "cyc.qm"
    path.write_text(files.serialize(all_balanced(cycle_graph(4))))
    assert main(["free-elements", str(path)]) == 0


def test_cli_enumerate_count(capsys):
    assert main(["enumerate", "--vertices", "2", "--edges", "3", "--count"]) == 0
    n = int(capsys.readouterr().out.strip())
    assert n > 0


def test_cli_check_theorem(capsys):
    assert main(["check-theorem", "--list"]) == 0
    assert main(["check-theorem", "FIG3"]) == 0
    out = capsys.readouterr().out
    assert "FIG3: conforms" in out
    assert main(["check-theorem", "NOPE"]) == 2
    assert main(["check-theorem"]) == 2


def test_cli_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.qm"
    bad.write_text("edge 0 0 1\n")
    assert main(["rank", str(bad)]) == 2
    assert main(["rank", str(tmp_path / "missing.qm")]) == 2


def test_console_script_installed():
    proc = subprocess.run(
        ["quasimat", "check-theorem", "--list"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "T1.1" in proc.stdout
