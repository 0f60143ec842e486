import json
import subprocess
import sys

import pytest

from nowheredense.cli import EXIT_BUDGET, EXIT_CERT, EXIT_OK, EXIT_USAGE, run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_and_types_on_powerset(tmp_path, capsys):
    g = tmp_path / "p.g"
    assert call(capsys, "gen", "P:n=3,r=1", str(g))[0] == EXIT_OK
    code, out, _ = call(capsys, "types", str(g), "dist<=1", "A=v-part")
    assert code == EXIT_OK and out == "8\n"
    code, out, _ = call(capsys, "types", str(g), "dist<=1", "A=v-part", "--dump")
    assert out.splitlines()[1:] == sorted(out.splitlines()[1:]) and len(out.splitlines()) == 9


def test_uqw_then_verify(tmp_path, capsys):
    g, cert = tmp_path / "star.g", tmp_path / "cert.json"
    call(capsys, "gen", "star:6", str(g))
    code, _, err = call(capsys, "uqw", str(g), "A=leaves", "r=2", "t=3", "--out", str(cert))
    assert code == EXIT_OK and "separated" in err
    assert json.loads(cert.read_text())["S"] == [0]
    code, out, _ = call(capsys, "verify", str(g), str(cert))
    assert code == EXIT_OK and out == "PASS\n"
    data = json.loads(cert.read_text())
    data["S"] = []
    cert.write_text(json.dumps(data))
    code, out, _ = call(capsys, "verify", str(g), str(cert))
    assert code == EXIT_CERT and out.startswith("FAIL")


def test_garbage_certificate(tmp_path, capsys):
    g, cert = tmp_path / "star.g", tmp_path / "cert.json"
    call(capsys, "gen", "star:3", str(g))
    cert.write_text("{not json")
    assert call(capsys, "verify", str(g), str(cert))[0] == EXIT_CERT


def test_guaranteed_shortfall_exits_with_budget_code(capsys):
    code, _, err = call(capsys, "uqw", "path:5", "A=0,2,4", "r=2", "t=2", "m=3", "mode=guaranteed")
    assert code == EXIT_BUDGET and "target" in err


def test_tuple_uqw(tmp_path, capsys):
    tf = tmp_path / "t.txt"
    tf.write_text("2 3\n0 1\n2 3\n4 5\n")
    code, out, _ = call(capsys, "tuple-uqw", "matching:3", str(tf), "r=1")
    assert code == EXIT_OK
    assert json.loads(out)["variant"] == "mutually_separated"


def test_ladder_and_duality(capsys):
    assert call(capsys, "ladder", "half:4", "E(x,y)")[1] == "4\n"
    assert call(capsys, "duality", "clique:3", "E(x,y)")[1] == "nu=1 tau=2\n"
    # the family is {empty set}: one member packs, nothing hits it
    assert call(capsys, "duality", "edgeless:3", "E(x,y)")[1] == "nu=1 tau=inf\n"


def test_sweep_is_byte_identical(capsys):
    args = ["sweep", "grid:6x6", "dist<=2", "sizes=4,8", "trials=2", "seed=3"]
    first = call(capsys, *args)[1]
    assert first == call(capsys, *args)[1]
    assert first.splitlines()[0].startswith("family,graph_id")
    assert len(first.splitlines()) == 1 + 4


def test_locality_report(capsys):
    code, out, _ = call(capsys, "locality", "path:9", "exists z. E(x,z) & E(z,y)",
                        "A=0,1,2", "B=6,7,8", "S=4")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["min_p"] is not None


@pytest.mark.parametrize("argv, code", [
    ([], EXIT_USAGE),
    (["frobnicate"], EXIT_USAGE),
    (["types", "nofile.g", "E(x,y)"], EXIT_USAGE),
    (["types", "star:3", "E(x,"], EXIT_USAGE),
    (["types", "star:3", "E(x,y)", "A=v-part"], EXIT_USAGE),
    (["types", "star:30", "dist<=1", "--budget-types", "5"], EXIT_BUDGET),
    (["uqw", "star:3", "r=0"], EXIT_USAGE),
    (["sweep", "dist<=1"], EXIT_USAGE),
    (["locality", "path:4", "E(x,y)", "A=0", "B=1"], EXIT_USAGE),
])
def test_exit_codes(capsys, argv, code):
    assert call(capsys, *argv)[0] == code


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "nowheredense", "ladder", "half:3", "E(x,y)"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "3\n"
