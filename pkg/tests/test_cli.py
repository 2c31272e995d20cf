import csv
import io
import json
import math

import numpy as np
import pytest

from conevol import polytope as pc
from conevol.cli import main

CUBE = {"dim": 3, "vertices": pc.cube(3).vertices.tolist(), "name": "cube"}


def write(tmp_path, data, name="body.json"):
    p = tmp_path / name
    p.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_measure_cube(tmp_path, capsys):
    code, out, _ = run(capsys, "measure", write(tmp_path, CUBE))
    d = json.loads(out)
    assert code == 0
    assert d["surface"]["total"] == pytest.approx(24.0)
    assert d["cone_volume"]["total"] == pytest.approx(8.0)
    assert len(d["surface"]["atoms"]) == 6


def test_measure_p0_sums_to_volume(tmp_path, capsys):
    T = pc.regular_simplex(3)
    f = write(tmp_path, {"dim": 3, "vertices": T.vertices.tolist()})
    code, out, _ = run(capsys, "measure", f, "--p", "0")
    d = json.loads(out)
    assert code == 0 and d["lp"]["total"] == pytest.approx(3 * d["volume"])
    assert d["cone_volume"]["total"] == pytest.approx(d["volume"])


def test_measure_domain_error(tmp_path, capsys):
    shifted = {"dim": 3, "vertices": (pc.cube(3).vertices + 2.0).tolist()}
    code, _, err = run(capsys, "measure", write(tmp_path, shifted), "--p", "2")
    assert code == 1 and "error" in err


def test_measure_csv(tmp_path, capsys):
    code, out, _ = run(capsys, "measure", write(tmp_path, CUBE), "--output", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 18
    assert sum(float(r["mass"]) for r in rows if r["measure"] == "cone_volume") == pytest.approx(8)


def test_check_cube(tmp_path, capsys):
    code, out, _ = run(capsys, "check", write(tmp_path, CUBE))
    reps = json.loads(out)["reports"]
    assert code == 0 and len(reps) == 3
    assert {r["classification"] for r in reps} == {"PrismEquality"}


def test_check_direction_and_csv(tmp_path, capsys):
    code, out, _ = run(capsys, "check", write(tmp_path, CUBE), "--direction", "0", "0", "2",
                       "--output", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 1 and float(rows[0]["psi"]) == pytest.approx(1.0)


def test_check_all_directions(tmp_path, capsys):
    T = pc.regular_simplex(3)
    f = write(tmp_path, {"dim": 3, "vertices": T.vertices.tolist()})
    code, out, _ = run(capsys, "check", f, "--all-directions")
    reps = json.loads(out)["reports"]
    vacuous = [r for r in reps if r["psi"] == 0.0]
    assert code == 0 and len(reps) == 4 + len(vacuous) and vacuous
    for r in vacuous:
        assert sorted(abs(c) for c in r["direction"]) == [0.0, 0.0, 1.0]


def test_check_uncentred(tmp_path, capsys):
    f = write(tmp_path, {"dim": 3, "vertices": pc.standard_simplex(3).vertices.tolist()})
    code, _, err = run(capsys, "check", f)
    assert code == 1 and "centroid" in err
    code, out, _ = run(capsys, "check", f, "--center")
    assert code == 0
    assert {r["classification"] for r in json.loads(out)["reports"]} == {"ConeEquality"}


def test_check_tol_parsing(tmp_path, capsys):
    f = write(tmp_path, CUBE)
    assert run(capsys, "check", f, "--tol", "tol_eq=1e-9")[0] == 0
    code, _, err = run(capsys, "check", f, "--tol", "bogus=1")
    assert code == 1 and "NAME=VALUE" in err
    assert run(capsys, "check", f, "--tol", "tol_eq=abc")[0] == 1


def test_parse_errors(tmp_path, capsys):
    code, _, err = run(capsys, "check", write(tmp_path, '{"dim": 3,\n "vertices": [1,'))
    assert code == 1 and "line 2" in err
    code, _, err = run(capsys, "check", write(tmp_path, {"dim": 3, "vertices": [[0, 0]]}))
    assert code == 1 and "vertices[0]" in err
    code, _, err = run(capsys, "check", write(tmp_path, "OFF\n8 0 0\n1 2 3\n", "x.off"))
    assert code == 1 and "expected 8 vertex lines" in err
    assert run(capsys, "check", str(tmp_path / "missing.json"))[0] == 1
    assert run(capsys, "nonsense")[0] == 1


def test_off_input(tmp_path, capsys):
    text = "OFF\n8 6 0\n" + "\n".join(" ".join(map(str, v)) for v in pc.cube(3).vertices) + "\n"
    code, out, _ = run(capsys, "measure", write(tmp_path, text, "cube.off"))
    assert code == 0 and json.loads(out)["volume"] == pytest.approx(8.0)


def test_halfspace_input(tmp_path, capsys):
    hs = [{"normal": list(s * e), "offset": 1.0} for e in np.eye(3) for s in (1, -1)]
    code, out, _ = run(capsys, "check", write(tmp_path, {"dim": 3, "halfspaces": hs}))
    assert code == 0 and len(json.loads(out)["reports"]) == 3


def test_symmetrize(tmp_path, capsys):
    f = write(tmp_path, CUBE)
    code, out, _ = run(capsys, "symmetrize", f, "--direction", "1", "1", "1", "--resolution", "64")
    d = json.loads(out)
    assert code == 0 and d["volume_profile"] == pytest.approx(8.0)
    assert d["prop1"]["volume"]["rel_dev"] < 1e-9
    code, out, _ = run(capsys, "symmetrize", f, "--output", "csv", "--resolution", "32")
    assert out.splitlines()[0] == "t,area,radius"


def test_reduce(tmp_path, capsys):
    P = pc.pyramid(pc.cube_base(3), [0, 0, 1.0]).translate_to_centroid()
    f = write(tmp_path, {"dim": 3, "vertices": P.vertices.tolist()})
    code, out, _ = run(capsys, "reduce", f, "--direction", "0", "0", "1")
    d = json.loads(out)
    assert code == 0 and d["comparison"]["ok"]
    # the apex radius is roundoff-sized, so the ratio is inf or astronomically large
    assert d["ratio"] == "inf" or d["ratio"] > 1e12


def test_cone_table(capsys):
    code, out, _ = run(capsys, "cone-table", "--n", "3", "--t", "2")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert [r["t"] for r in rows] == ["1", "2", "inf"]
    assert float(rows[-1]["x"]) == pytest.approx(0.25) and float(rows[-1]["y"]) == 0.0
    assert rows[0]["key_ratio"] == "inf"
    code, out, _ = run(capsys, "cone-table", "--n", "2", "--output", "json")
    assert json.loads(out)["rows"][-1]["t"] == "inf"


def test_verify_lemmas_fails_on_reference_values(capsys):
    code, out, err = run(capsys, "verify-lemmas", "--n-min", "3", "--n-max", "3")
    d = json.loads(out)
    assert code == 3 and not d["all_proven"]
    assert any(c["stage"] == "reference-identities" for c in d["certificates"])


def test_verify_lemmas_n2(capsys):
    code, out, _ = run(capsys, "verify-lemmas", "--n-min", "2", "--n-max", "2", "--allow-n2")
    assert code == 0 and json.loads(out)["all_proven"]
    assert run(capsys, "verify-lemmas", "--n-min", "2", "--n-max", "2")[0] == 1


def test_verify_lemmas_fault_injection(capsys):
    code, out, _ = run(capsys, "verify-lemmas", "--n-min", "3", "--n-max", "3",
                       "--method", "chain", "--inject-p1-fault", "0:1")
    stages = {c["stage"] for c in json.loads(out)["certificates"]}
    assert code == 3 and "p1-chain" in stages


def test_audit_and_replay(tmp_path, capsys):
    code, out, _ = run(capsys, "audit", "--dim", "3", "--count", "3", "--seed", "5",
                       "--resolution", "256")
    d = json.loads(out)
    assert code == 0 and d["bodies"] == 3 and d["failures"] == []
    # a hand-made record replays to the same body and the same numbers twice
    rec = {"failures": [{"config": d["config"], "index": 1}]}
    f = write(tmp_path, rec, "fail.json")
    _, a, _ = run(capsys, "audit", "--replay", f)
    _, b, _ = run(capsys, "audit", "--replay", f)
    assert a == b
    assert json.loads(a)["replayed"][0]["index"] == 1


def test_audit_bad_config(capsys):
    code, _, err = run(capsys, "audit", "--dim", "9")
    assert code == 1
