import json
import xml.etree.ElementTree as ET

import pydot
import pytest
from hypothesis import given, strategies as st

from netcolor.cli import main
from netcolor.generators import gen_comb, gen_k4, gen_random, gen_star_pairs
from netcolor.io import (
    InstanceFormatError,
    dumps,
    instance_from_dict,
    instance_to_dict,
    load_instance,
    save_instance,
)


def _same(a, b):
    assert a.space.edges == b.space.edges
    assert a.space.nodes == b.space.nodes
    assert sorted(a.objects, key=lambda o: str(o.id)) == sorted(b.objects, key=lambda o: str(o.id))


@given(st.integers(0, 5000), st.sampled_from([("tree", "balls"), ("tree", "subtrees"), ("planar", "balls")]))
def test_round_trip(seed, kinds):
    inst = gen_random(*kinds, seed=seed, t=3 + seed % 8, n=1 + seed % 12)
    doc = json.loads(dumps(instance_to_dict(inst)))
    _same(inst, instance_from_dict(doc))


def test_round_trip_through_file(tmp_path):
    for inst in (gen_comb(3), gen_k4(), gen_star_pairs(6, 3, 4)):
        path = tmp_path / "i.json"
        save_instance(inst, path)
        _same(inst, load_instance(path))


def test_rationals_are_strings():
    doc = instance_to_dict(gen_k4())
    assert doc["objects"][0]["radius"] == "2/3"
    assert doc["space"]["edges"][0]["len"] == "1"


def test_malformed_documents():
    doc = instance_to_dict(gen_k4())
    doc["objects"][0]["radius"] = "two"
    with pytest.raises(InstanceFormatError):
        instance_from_dict(doc)
    doc = instance_to_dict(gen_k4())
    doc["objects"][0]["kind"] = "blob"
    with pytest.raises(InstanceFormatError):
        instance_from_dict(doc)
    with pytest.raises(InstanceFormatError):
        instance_from_dict({"space": {}})


def _run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path, capsys):
    paths = {}
    for name, argv in {
        "sp": ["star-pairs", "--k", 6, "--ell", 3, "--n", 4],
        "comb": ["comb", "--t", 3],
        "k4": ["k4"],
        "line": ["random", "--objects", "subtrees", "--t", 0, "--n", 1, "--ell", 1, "--seed", 3],
    }.items():
        path = tmp_path / f"{name}.json"
        assert _run(capsys, "gen", *argv, "--out", path)[0] == 0
        paths[name] = path
    return paths


def test_color_and_validate(files, tmp_path, capsys):
    out = tmp_path / "c.json"
    code, text, _ = _run(capsys, "color", files["sp"], "--algorithm", "nm-trees", "--out", out)
    assert code == 0 and "respected=True" in text
    doc = json.loads(out.read_text())
    assert doc["palette_size"] == 4 and doc["bound"]["respected"]
    assert set(doc) == {"algorithm", "palette_size", "colors", "bound"}
    assert _run(capsys, "validate", files["sp"], out, "--mode", "nm")[0] == 0


def test_comb_cf_balls_tree(files, tmp_path, capsys):
    out = tmp_path / "c.json"
    assert _run(capsys, "color", files["comb"], "--algorithm", "cf-balls-tree", "--out", out)[0] == 0
    doc = json.loads(out.read_text())
    assert doc["palette_size"] <= 5
    assert _run(capsys, "validate", files["comb"], out, "--mode", "cf")[0] == 0


def test_single_interval_chain(files, capsys):
    code, text, _ = _run(capsys, "color", files["line"], "--algorithm", "nm-chain")
    assert code == 0 and json.loads(text)["palette_size"] in (1, 2)


def test_tampered_coloring_fails_with_witness(files, tmp_path, capsys):
    out = tmp_path / "c.json"
    _run(capsys, "color", files["sp"], "--algorithm", "nm-trees", "--out", out)
    doc = json.loads(out.read_text())
    doc["colors"]["1"] = doc["colors"]["0"]
    out.write_text(json.dumps(doc))
    code, text, _ = _run(capsys, "validate", files["sp"], out, "--mode", "nm")
    assert code == 1 and "monochromatic" in text and "Point(" in text


def test_input_errors(files, tmp_path, capsys):
    assert _run(capsys, "color", tmp_path / "missing.json", "--algorithm", "nm-trees")[0] == 2
    assert _run(capsys, "color", files["sp"], "--algorithm", "nm-balls-tree")[0] == 2
    assert _run(capsys, "color", files["sp"], "--algorithm", "bogus")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert _run(capsys, "validate", files["sp"], bad, "--mode", "nm")[0] == 2
    assert _run(capsys, "oracle", files["sp"], "--mode", "nm", "--limit", 2)[0] == 2


def test_oracle_k4(files, capsys):
    code, text, _ = _run(capsys, "oracle", files["k4"], "--mode", "nm")
    assert code == 0 and text.strip() == "4"


def test_gen_twice_identical_bytes(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        _run(capsys, "gen", "random", "--kind", "planar", "--seed", 9, "--t", 8, "--n", 10, "--out", p)
    assert a.read_bytes() == b.read_bytes()


def test_export_formats_parse(files, tmp_path, capsys):
    col = tmp_path / "c.json"
    _run(capsys, "color", files["k4"], "--algorithm", "nm-balls-planar", "--out", col)
    svg = tmp_path / "k4.svg"
    assert _run(capsys, "export", files["k4"], "svg", "--coloring", col, "--out", svg)[0] == 0
    root = ET.fromstring(svg.read_text())
    assert root.tag.endswith("svg") and len(root) > 6
    code, dot, _ = _run(capsys, "export", files["sp"], "dot")
    assert code == 0
    graphs = pydot.graph_from_dot_data(dot)
    assert graphs and len(graphs[0].get_edges()) >= 6


def test_bench_stdout_is_reproducible(capsys):
    runs = [_run(capsys, "bench", "--algorithm", "nm-balls-tree", "--sizes", "4,8", "--seeds", 2) for _ in range(2)]
    assert runs[0][0] == 0 and runs[0][1] == runs[1][1]
    assert "wall time" in runs[0][2]
    assert runs[0][1].splitlines()[0].startswith("size\t")
