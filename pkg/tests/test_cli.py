"""End-to-end exercises of the command line interface, run in process.

Exit code contract: 0 all checks passed, 1 a verification failed,
2 bad input, 3 resource bound exceeded."""

import json

import numpy as np
import pytest

from braceblocks import __version__, cli


def run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, argv):
    code, out = run(capsys, argv + ["--export", "json"])
    return code, json.loads(out)


# -- envelope and exit codes ---------------------------------------------


def test_block_heisenberg_passes(capsys):
    code, report = run_json(capsys, ["block", "heisenberg", "--modulus", "3"])
    assert code == 0
    assert report["tool"] == "braceblocks"
    assert report["version"] == __version__
    assert report["command"] == "block"
    assert report["ok"] is True
    assert "wall_time_s" in report
    entry = report["results"]["entry"]
    assert entry["name"] == "heisenberg3"
    assert entry["operations"] == ["dot", "scalar[1]", "scalar[2]"]
    block = report["results"]["block"]
    assert block["failures"] == [] and all(block["group_ok"])


def test_text_output_ends_with_result_line(capsys):
    code, out = run(capsys, ["block", "heisenberg", "--modulus", "3"])
    assert code == 0
    assert out.strip().endswith("RESULT ok")
    assert out.startswith("braceblocks block")


def test_corrupted_block_fails_with_counterexample(capsys):
    code, report = run_json(
        capsys, ["block", "heisenberg", "--modulus", "3", "--corrupt", "1"]
    )
    assert code == 1
    assert report["ok"] is False
    block = report["results"]["block"]
    assert block["group_ok"][1] is False
    assert block["operations"][1] == "scalar[1]+corrupt"


def test_corrupt_cell_triple_hits_identity_row(capsys):
    code, report = run_json(
        capsys, ["block", "heisenberg", "--modulus", "3", "--corrupt", "0,1,5"]
    )
    assert code == 1
    # cell (0, 1) of the first deformation holds 1: rewriting it to the
    # same value is rejected as a no-op
    code2, report2 = run_json(
        capsys, ["block", "heisenberg", "--modulus", "3", "--corrupt", "0,1,1"]
    )
    assert code2 == 2
    assert "no-op" in report2["error"]["message"]


@pytest.mark.parametrize(
    "argv",
    [
        ["block", "mystery-family"],
        ["block", "--group", "q8"],
        ["block", "heisenberg", "--corrupt", "x"],
        ["block", "heisenberg", "--corrupt", "99"],
        ["block", "power"],
        ["block", "power", "--group", "ut4"],
        ["block", "heisenberg", "--mode", "bogus"],
        ["yb", "heisenberg", "--maps", "bogus"],
        ["yb", "heisenberg", "--step", "9"],
        ["yb", "trivial"],
        ["catalog", "--name", "nonsense"],
        ["verify"],
    ],
)
def test_bad_input_exits_two(capsys, argv):
    code, report = run_json(capsys, argv)
    assert code == 2
    assert "error" in report and report["error"]["message"]


def test_graph_above_bound_exits_three(capsys):
    code, report = run_json(capsys, ["graph", "--order", "12"])
    assert code == 3
    assert report["error"]["code"] == "bound-exceeded"


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.strip() == __version__


# -- block families ---------------------------------------------------------


def test_block_powers_filter(capsys):
    code, report = run_json(
        capsys, ["block", "heisenberg", "--modulus", "5", "--powers", "1,2"]
    )
    assert code == 0
    assert report["results"]["entry"]["operations"] == [
        "dot",
        "scalar[1]",
        "scalar[2]",
    ]


def test_block_catalog_entry_as_family(capsys):
    code, report = run_json(capsys, ["block", "ut33-power"])
    assert code == 0
    assert report["results"]["entry"]["name"] == "ut33-power"


def test_block_group_spec_dispatch(capsys):
    # a bare --group heisenberg builds the scalar family
    code, report = run_json(capsys, ["block", "--group", "heisenberg"])
    assert code == 0
    assert report["results"]["entry"]["name"] == "heisenberg3"
    # other carriers fall back to the power family
    code, report = run_json(capsys, ["block", "--group", "ut3"])
    assert code == 0
    assert report["results"]["entry"]["operations"] == [
        "dot",
        "power[1]",
        "power[2]",
    ]


def test_sampled_mode_is_echoed(capsys):
    code, report = run_json(
        capsys,
        ["block", "heisenberg", "--modulus", "4", "--mode", "sampled:42:1000"],
    )
    assert code == 0
    block = report["results"]["block"]
    assert block["mode"] == "sampled"
    assert block["seed"] == 42
    # four operations give six unordered pairs, sampled in both roles
    assert block["triples_checked"] == 12000


# -- yang-baxter command ----------------------------------------------------


def test_yb_trivial_certificate(capsys):
    code, report = run_json(
        capsys, ["yb", "trivial", "--group", "c4", "--certificate"]
    )
    assert code == 0
    maps = report["results"]["maps"]
    assert sorted(maps) == ["r", "r_prime", "r_tilde", "r_tilde_prime"]
    for rep in maps.values():
        assert rep["braid_ok"] and rep["nondegenerate"]
        assert rep["map"]["carrier"] == 4
    pairs = report["results"]["inverse_pairs"]
    assert pairs == {"r|r_prime": True, "r_tilde|r_tilde_prime": True}
    # the zero deformation of an abelian carrier gives the flip
    rmap = np.asarray(maps["r"]["map"]["rmap"])
    n = 4
    sigma, tau = np.divmod(rmap, n)
    g, h = np.divmod(np.arange(n * n), n)
    assert np.array_equal(sigma, h) and np.array_equal(tau, g)


def test_yb_which_variants(capsys):
    for which, names in [
        ("corollary", ["r", "r_prime", "r_tilde", "r_tilde_prime"]),
        ("theorem", ["r", "r_prime"]),
        ("generic", ["r", "r_prime"]),
    ]:
        code, report = run_json(
            capsys, ["yb", "heisenberg", "--modulus", "3", "--which", which]
        )
        assert code == 0, which
        assert sorted(report["results"]["maps"]) == sorted(names)


def test_yb_maps_filter_and_step(capsys):
    code, report = run_json(
        capsys,
        ["yb", "heisenberg", "--modulus", "3", "--step", "2",
         "--maps", "r,r_tilde"],
    )
    assert code == 0
    assert sorted(report["results"]["maps"]) == ["r", "r_tilde"]
    assert report["results"]["step"] == 2


def test_yb_theorem_with_phi_step(capsys):
    code, report = run_json(
        capsys,
        ["yb", "heisenberg", "--modulus", "3", "--which", "theorem",
         "--phi-step", "2"],
    )
    assert code == 0
    assert all(rep["braid_ok"] for rep in report["results"]["maps"].values())


# -- graph command ------------------------------------------------------------


def test_graph_order_four(capsys):
    code, report = run_json(capsys, ["graph", "--order", "4", "--classes"])
    assert code == 0
    res = report["results"]
    assert res["vertex_count"] == 4
    assert sorted(map(tuple, res["edges"])) == [(0, 1), (0, 2), (0, 3)]
    assert sorted(map(len, res["classes"])) == [1, 3]


def test_graph_order_one_and_count_only(capsys):
    code, report = run_json(capsys, ["graph", "--order", "1"])
    assert code == 0
    assert report["results"]["vertex_count"] == 1
    code, report = run_json(capsys, ["graph", "--order", "6", "--count-only"])
    assert code == 0
    assert report["results"] == {"points": 6, "vertex_count": 80}


def test_graph_dot_export(capsys):
    code, out = run(capsys, ["graph", "--order", "4", "--export", "dot"])
    assert code == 0
    assert out.startswith("graph normalising {")
    assert out.count(" -- ") == 3


# -- catalog and verify commands ---------------------------------------------


def test_catalog_listing_matches_registry(capsys):
    from braceblocks.catalog import BUILTIN_CATALOG

    code, report = run_json(capsys, ["catalog"])
    assert code == 0
    names = [e["name"] for e in report["results"]["entries"]]
    assert names == sorted(BUILTIN_CATALOG)
    assert all(e["info"] for e in report["results"]["entries"])


def test_catalog_describe_entry(capsys):
    code, report = run_json(capsys, ["catalog", "--name", "heisenberg3"])
    assert code == 0
    assert report["results"]["entry"]["order"] == 27
    assert "scalar" in report["results"]["info"]


def test_verify_builtin_carrier(capsys):
    code, report = run_json(
        capsys, ["verify", "--group", "s4", "--mode", "sampled:7:500"]
    )
    assert code == 0
    rep = report["results"]["report"]
    assert rep["mode"] == "sampled" and rep["seed"] == 7
    assert rep["triples_checked"] == 500
    assert report["results"]["order"] == 24


def test_verify_cayley_file_failure(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"table": [[0, 1], [1, 1]], "label": "broken"}))
    code, report = run_json(capsys, ["verify", "--group", f"cayley:{path}"])
    assert code == 1
    rep = report["results"]["report"]
    # element 1 never multiplies back to the identity
    assert rep["ok"] is False and rep["inverses_ok"] is False


def test_verify_cayley_file_input_errors(capsys, tmp_path):
    missing = tmp_path / "nope.json"
    code, report = run_json(capsys, ["verify", "--group", f"cayley:{missing}"])
    assert code == 2
    bad = tmp_path / "notjson.json"
    bad.write_text("{")
    code, _ = run_json(capsys, ["verify", "--group", f"cayley:{bad}"])
    assert code == 2
    jagged = tmp_path / "jagged.json"
    jagged.write_text(json.dumps({"table": [[0, 1]]}))
    code, _ = run_json(capsys, ["verify", "--group", f"cayley:{jagged}"])
    assert code == 2


def test_block_cayley_file_carrier(capsys, tmp_path):
    n = 6
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    path = tmp_path / "c6.json"
    path.write_text(json.dumps({"table": table, "label": "file-c6"}))
    code, report = run_json(capsys, ["block", "trivial", "--group", f"cayley:{path}"])
    assert code == 0
    assert report["results"]["entry"]["group"] == "file-c6"


# -- config files and output redirection ---------------------------------------


def test_config_supplies_defaults(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"group": "s3", "mode": "sampled:5:200"}))
    code, report = run_json(capsys, ["verify", "--config", str(cfg)])
    assert code == 0
    assert report["config"]["group"] == "s3"
    rep = report["results"]["report"]
    assert rep["seed"] == 5 and rep["triples_checked"] == 200


def test_flags_beat_config(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"group": "s3"}))
    code, report = run_json(
        capsys, ["verify", "--config", str(cfg), "--group", "c4"]
    )
    assert code == 0
    assert report["results"]["group"] == "cyclic(4)"


def test_config_can_fill_the_family_argument(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"family": "ut33-power"}))
    code, report = run_json(capsys, ["block", "--config", str(cfg)])
    assert code == 0
    assert report["results"]["entry"]["name"] == "ut33-power"


def test_unknown_config_key_rejected(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"grouo": "s3"}))
    code, report = run_json(capsys, ["verify", "--config", str(cfg)])
    assert code == 2
    assert "grouo" in report["error"]["message"]


def test_output_goes_to_file(capsys, tmp_path):
    out_path = tmp_path / "report.json"
    code = cli.main(
        ["verify", "--group", "c4", "--export", "json",
         "--output", str(out_path)]
    )
    assert code == 0
    assert capsys.readouterr().out == ""
    report = json.loads(out_path.read_text())
    assert report["ok"] is True
