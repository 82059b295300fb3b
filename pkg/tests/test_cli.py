import json
import re

import pytest

from lebshape.cli import run


def call(capsys, *args):
    code = run(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_normalize_catalog(capsys):
    code, out, _ = call(capsys, "normalize", "--catalog", "sommerville")
    assert code == 0
    doc = json.loads(out)
    assert doc["key"]["exact"] == ["1/2", "1/2", "1/2", "0", "1/2"]
    assert doc["violations"] == []


def test_normalize_vertices(capsys):
    code, out, _ = call(capsys, "normalize", "--vertices", "0,0,0; 1,0,0; 1,1,0; 1,1,1")
    assert code == 0
    assert json.loads(out)["key"]["exact"] == ["1/3", "2/9", "2/3", "1/9", "1/6"]


def test_normalize_lengths_by_name(capsys):
    code, out, _ = call(capsys, "normalize", "--lengths", "01=1,02=1,03=1,12=2,13=2,23=2")
    assert json.loads(out)["key"]["exact"] == ["1/2", "1/4", "1/2", "1/4", "1/2"]


def test_round_trip_through_key(capsys):
    _, out, _ = call(capsys, "normalize", "--catalog", "T4")
    exact = json.loads(out)["key"]["exact"]
    _, out2, _ = call(capsys, "normalize", "--key", ",".join(exact))
    assert json.loads(out2)["key"]["exact"] == exact


def test_decimal_digits(capsys):
    _, out, _ = call(capsys, "normalize", "--catalog", "sommerville")
    assert json.loads(out)["key"]["point"]["z2"] == "0.707106781187"


def test_input_errors(capsys):
    assert call(capsys, "normalize", "--key", "1/0,1,1,1,1")[0] == 2
    assert call(capsys, "normalize", "--catalog", "nope")[0] == 2
    assert call(capsys, "normalize", "--vertices", "0,0,0; 1,0,0; 2,0,0; 3,0,0")[0] == 2
    assert call(capsys, "normalize")[0] == 2
    assert call(capsys, "normalize", "--catalog", "path", "--key", "1,1,1,1,1")[0] == 2
    assert call(capsys, "orbit", "--catalog", "path", "--mode", "fuzzy")[0] == 2


def test_inconsistent_labelings_exit_code(capsys):
    # lengths of tau2; swapping A and B gives its mirror twin
    lengths = "1,1/2,881/1000,1/2,821/1000,361/1000"
    assert call(capsys, "normalize", "--lengths", lengths)[0] == 0
    code, out, err = call(capsys, "normalize", "--lengths", lengths, "--strict")
    assert code == 3
    assert "distinct keys" in err


def test_json_input(tmp_path, capsys):
    f = tmp_path / "in.json"
    f.write_text(json.dumps({"catalog": "T4", "max_iter": 100}))
    code, out, _ = call(capsys, "orbit", "--input", str(f), "--no-nodes")
    doc = json.loads(out)
    assert code == 0 and doc["node_count"] == 43 and doc["closed"]
    f.write_text(json.dumps({"vertices": [["0", "0", "0"]], "key": ["1"] * 5}))
    assert call(capsys, "orbit", "--input", str(f))[0] == 2


def test_orbit_summary_and_files(tmp_path, capsys):
    dot, pts, met = tmp_path / "g.dot", tmp_path / "p.csv", tmp_path / "m.csv"
    code, out, _ = call(capsys, "orbit", "--catalog", "sommerville", "--out-graph", str(dot),
                        "--out-points", str(pts), "--out-metrics", str(met))
    assert code == 0
    doc = json.loads(out)
    assert doc["node_count"] == 4 and doc["closed"] is True
    assert doc["frontier_counts"] == [1, 1, 1, 1, 0]
    assert doc["cycles"] == [[1, 2, 3]]
    assert len(doc["nodes"]) == 4
    text = dot.read_text()
    assert text.startswith("digraph orbit {") and text.rstrip().endswith("}")
    edges = re.findall(r'n(\d+) -> n(\d+) \[label="([LR])", color=(red|blue)\];', text)
    assert len(edges) == 8
    assert all((lab == "L") == (col == "red") for _, _, lab, col in edges)
    assert pts.read_text().splitlines()[0] == "z1,z2,w1,w2,t"
    lines = met.read_text().splitlines()
    assert lines[0] == "iter,new_shapes,min_dihedral_deg,min_face_deg,min_norm_vol_pct"
    assert len(lines) == 5


def test_orbit_open_exit_zero(capsys):
    code, out, _ = call(capsys, "orbit", "--catalog", "regular", "--max-iter", "5", "--no-nodes")
    doc = json.loads(out)
    assert code == 0 and doc["closed"] is False and doc["length"] == "open"


def test_csv_outputs_are_byte_stable(tmp_path, capsys):
    runs = []
    for n in range(2):
        p, m = tmp_path / ("p%d.csv" % n), tmp_path / ("m%d.csv" % n)
        call(capsys, "orbit", "--catalog", "perturbed-sommerville", "--out-points", str(p),
             "--out-metrics", str(m), "--threads", str(1 + n))
        runs.append((p.read_bytes(), m.read_bytes()))
    assert runs[0] == runs[1]


def test_sweep(capsys):
    code, out, _ = call(capsys, "sweep", "--family", "5", "--start", "1/100", "--stop", "3/100")
    assert code == 0
    assert out.splitlines() == ["alpha,length", "1/100,8", "1/50,8", "3/100,8"]
    code, out, _ = call(capsys, "sweep", "--family", "1", "--start", "-7/10", "--stop", "-7/10")
    assert out.splitlines()[1] == "-7/10,invalid"


def test_distance(capsys):
    code, out, _ = call(capsys, "distance", "sommerville", "perturbed-sommerville")
    assert code == 0 and float(out) == pytest.approx(7.75e-2, abs=5e-4)
    _, out, _ = call(capsys, "distance", "halves", "1/2,1/4,1/2,1/4,1/4")
    assert float(out) == 0.0


def test_distance_cluster(capsys):
    from radicals import key_of
    from reference_orbits import PERTURBED_SOMMERVILLE

    members = ";".join(",".join(key_of(r).exact()) for r in PERTURBED_SOMMERVILLE[1:11])
    code, out, _ = call(capsys, "distance", "--cluster", members, "--ref", "halves")
    assert code == 0 and float(out) == pytest.approx(8.41e-2, abs=5e-4)


def test_word(capsys):
    assert call(capsys, "word", "--catalog", "regular", "--to", "cube-corner")[1].strip() == "LRLRLLL"
    assert call(capsys, "word", "--catalog", "sommerville", "--from", "halves", "--to", "halves")[1] == "\n"
    assert call(capsys, "word", "--catalog", "sommerville", "--from", "path",
                "--to", "sommerville")[1].strip() == "unreachable"


def test_apply(capsys):
    code, out, _ = call(capsys, "apply", "--catalog", "sommerville", "LL")
    assert [n["exact"] for n in json.loads(out)][-1] == ["1/3", "2/9", "2/3", "1/9", "1/6"]


def test_catalog_export(capsys):
    code, out, _ = call(capsys, "catalog")
    assert code == 0 and len(json.loads(out)["entries"]) >= 19
