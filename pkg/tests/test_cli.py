import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from minkpoly.cli import EXIT_FAIL, EXIT_IO, EXIT_OK, EXIT_USAGE, main
from minkpoly.report import unflat


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_build_simplex_volume(capsys):
    code, doc = run_json(capsys, "build", "simplex", "--scale", "1")
    assert code == EXIT_OK
    assert doc["meta"]["schema_version"] == "1"
    assert doc["meta"]["command"] == ["build", "simplex", "--scale", "1"]
    assert abs(doc["shape"]["metrics"]["volume"] - 0.8660254) <= 1e-7
    assert doc["shape"]["metrics"]["volume"] == pytest.approx(math.sqrt(3) / 2, rel=1e-9)


def test_build_parallelotope_vertices(capsys):
    code, doc = run_json(capsys, "build", "parallelotope")
    assert code == EXIT_OK
    v = unflat(doc["shape"]["vertices"])
    labels = doc["shape"]["labels"]
    assert v.shape == (16, 4)
    assert np.allclose(v[labels.index("ffpp")], [0, math.sqrt(3), 0, 0])


@pytest.mark.parametrize("shape", ["simplex", "diamond", "parallelotope", "tetra13", "tetra22", "parallelepiped"])
def test_build_every_shape(capsys, shape):
    code, doc = run_json(capsys, "build", shape, "--scale", "0.5")
    assert code == EXIT_OK and "shape" in doc


def test_build_csv(capsys):
    code, out, _ = run(capsys, "build", "parallelotope", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["label", "t", "x", "y", "z"] and len(rows) == 17
    assert rows[1] == ["pppp", "-1.0", "0.0", "0.0", "0.0"]


def test_usage_errors(capsys):
    assert run(capsys, "build", "simplex", "--scale", "-1")[0] == EXIT_USAGE
    assert run(capsys, "build", "cube")[0] == EXIT_USAGE
    assert run(capsys, "tile", "--extent", "1,1,1")[0] == EXIT_USAGE
    assert run(capsys, "tile", "--extent", "0,1,1,1")[0] == EXIT_USAGE
    assert run(capsys, "verify", "simplex", "--with-lattice")[0] == EXIT_USAGE
    assert run(capsys)[0] == EXIT_USAGE


def test_verify_shapes(capsys):
    code, doc = run_json(capsys, "verify", "simplex", "--trials", "20", "--seed", "7")
    assert code == EXIT_OK
    recs = {r["name"]: r for r in doc["report"]["records"]}
    assert recs["causal_profile"]["actual"][:2] == [[2, 3], [1, 6, 3]]
    assert recs["obstruction"]["actual"] == [6, 4, False]
    assert doc["report"]["summary"]["fail"] == 0

    code, doc = run_json(capsys, "verify", "diamond", "--trials", "5")
    recs = {r["name"]: r for r in doc["report"]["records"]}
    assert code == EXIT_OK and recs["obstruction"]["actual"] == [4, 12, False]

    code, doc = run_json(capsys, "verify", "parallelotope", "--trials", "5")
    recs = {r["name"]: r for r in doc["report"]["records"]}
    assert code == EXIT_OK and recs["obstruction"]["actual"] == [12, 12, True]


@pytest.mark.parametrize("shape", ["tetra13", "tetra22", "parallelepiped"])
def test_verify_hyperface_shapes(capsys, shape):
    assert run(capsys, "verify", shape)[0] == EXIT_OK


def test_round_trip_and_failures(capsys, tmp_path):
    path = tmp_path / "s.json"
    assert run(capsys, "build", "simplex", "--out", str(path))[0] == EXIT_OK
    assert run(capsys, "verify", str(path))[0] == EXIT_OK

    doc = json.loads(path.read_text())
    doc["shape"]["vertices"]["data"][0] += 0.01
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", str(bad))
    assert code == EXIT_FAIL
    assert json.loads(out)["report"]["records"][0]["name"] == "assembly"

    path = tmp_path / "t.json"
    run(capsys, "build", "tetra22", "--out", str(path))
    doc = json.loads(path.read_text())
    doc["shape"]["face_areas"][0] += 0.01
    path.write_text(json.dumps(doc))
    assert run(capsys, "verify", str(path))[0] == EXIT_FAIL


def test_io_errors(capsys, tmp_path):
    assert run(capsys, "verify", str(tmp_path / "missing.json"))[0] == EXIT_IO
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    assert run(capsys, "verify", str(junk))[0] == EXIT_IO
    assert run(capsys, "build", "simplex", "--out", str(tmp_path / "no" / "dir.json"))[0] == EXIT_IO


def test_tile_single(capsys):
    code, doc = run_json(capsys, "tile", "--extent", "1,1,1,1")
    assert code == EXIT_OK
    b = doc["block"]
    assert (len(b["cells"]), len(unflat(b["vertices"])), b["faces"], b["hyperfaces"]) == (1, 16, 24, 8)
    assert "lattice" not in doc


def test_tile_with_lattice(capsys):
    code, doc = run_json(capsys, "tile", "--extent", "2,2,2,2", "--with-lattice")
    assert code == EXIT_OK
    lat = doc["lattice"]
    assert lat["interior_degree_histogram"] == {"8": 1}
    cos = np.array(doc["report"]["ray_cosines"])
    assert np.max(np.abs(cos[~np.eye(4, dtype=bool)] + 1 / 3)) <= 1e-9


def test_deterministic_apart_from_timestamp(capsys):
    def strip(text):
        return [line for line in text.splitlines() if '"generated"' not in line]

    a = run(capsys, "verify", "parallelotope", "--trials", "5", "--seed", "3")[1]
    b = run(capsys, "verify", "parallelotope", "--trials", "5", "--seed", "3")[1]
    assert strip(a) == strip(b)


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "minkpoly.cli", "build", "tetra13"],
                         capture_output=True, text=True, check=False)
    assert out.returncode == 0
    assert json.loads(out.stdout)["shape"]["type"] == [1, 3]
