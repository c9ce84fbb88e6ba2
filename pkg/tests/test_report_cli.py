import hashlib
import json
from pathlib import Path

import pytest

from jicert import (
    CertifyOptions,
    InputFormatError,
    SchurTable,
    certify_system,
    class_from_names,
    emit_report,
    input_digest,
    make_report,
    parse_report,
    parse_system,
)
from jicert.cli import main

DATA = Path(__file__).parent / "data"
PREFIX_PATH = DATA / "s4_s3_prefix.json"
GOLDEN_PATH = DATA / "s4_s3_report.json"

CHECK_ARGS = [
    "check",
    str(PREFIX_PATH),
    "--wilson",
    "--commuting-conjugates",
    "--strengthened",
    "--count-class",
    "C2,C3",
]

FAILING_DOC = {
    "format": "jicert-system/1",
    "stages": [
        {"degree": 2, "generators": [[1, 0]], "a": [[1, 0]], "b0": []},
        {
            "degree": 4,
            "generators": [[1, 2, 3, 0]],
            "images": [[1, 0]],
            "a": [[2, 3, 0, 1]],
        },
    ],
}


def build_golden_report() -> dict:
    data = PREFIX_PATH.read_bytes()
    prefix = parse_system(data.decode())
    options = CertifyOptions(
        wilson=True,
        commuting_conjugates=True,
        strengthened=True,
        count_class=class_from_names(["C2", "C3"], SchurTable.load()),
    )
    verdict = certify_system(prefix, options)
    return make_report(
        verdict,
        digest=input_digest(data),
        orders=[g.order for g in prefix.groups],
        degrees=[g.degree for g in prefix.groups],
        options={
            "wilson": True,
            "commuting_conjugates": True,
            "strengthened": True,
            "subgroup_bound": 2000,
            "dense_bound": 2_000_000,
            "seed": 0,
            "count_class": ["C2", "C3"],
        },
    )


# -- report document ------------------------------------------------------------


def test_report_key_set():
    report = build_golden_report()
    assert set(report) == {
        "format",
        "tool",
        "input",
        "options",
        "stages",
        "summary",
        "limit_claim",
        "class_factor_counts",
        "completeness",
    }
    assert report["format"] == "jicert-report/1"
    assert report["tool"] == {"name": "jicert", "version": "0.1.0"}
    assert report["input"]["stages"] == 2
    assert report["input"]["orders"] == [6, 24]
    assert report["input"]["degrees"] == [3, 4]
    assert report["completeness"] == "complete"
    assert report["class_factor_counts"]["counts"] == [2, 4]


def test_input_digest_is_prefixed_sha256():
    data = b"some prefix bytes"
    assert input_digest(data) == "sha256:" + hashlib.sha256(data).hexdigest()


def test_emit_parse_round_trip():
    report = build_golden_report()
    assert parse_report(emit_report(report)) == report


def test_emit_rejects_unknown_format():
    with pytest.raises(ValueError):
        emit_report(build_golden_report(), "yaml")


def test_parse_report_rejects_bad_input():
    with pytest.raises(InputFormatError, match="unreadable"):
        parse_report(b"{ not json")
    with pytest.raises(InputFormatError, match="format tag"):
        parse_report(json.dumps({"format": "something-else"}).encode())
    with pytest.raises(InputFormatError, match="format tag"):
        parse_report(b"[1, 2]")


def test_report_bytes_deterministic():
    first = emit_report(build_golden_report())
    second = emit_report(build_golden_report())
    assert first == second


def test_golden_report_bytes_frozen():
    assert emit_report(build_golden_report()) == GOLDEN_PATH.read_bytes()


# -- check subcommand -----------------------------------------------------------


def test_check_writes_golden_json(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(CHECK_ARGS + ["--json", str(out)])
    capsys.readouterr()
    assert code == 0
    assert out.read_bytes() == GOLDEN_PATH.read_bytes()


def test_check_text_rendering(capsys):
    assert main(CHECK_ARGS) == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[0] == "jicert 0.1.0 certificate report"
    assert lines[1].startswith("input: sha256:")
    assert lines[1].endswith("(2 stages)")
    assert "stage 0: order 6, degree 3" in lines
    assert "stage 1: order 24, degree 4" in lines
    assert "  critical_pair: pass (pair orders (6, 3))" in lines
    assert "class factors (C2, C3): 2, 4 (strictly increasing)" in lines
    assert "summary: all requested checks pass at every applicable stage" in lines
    assert "completeness: complete" in lines


def test_check_same_seed_runs_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(CHECK_ARGS + ["--seed", "5", "--json", str(a)]) == 0
    assert main(CHECK_ARGS + ["--seed", "5", "--json", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_check_exit_fail(tmp_path, capsys):
    path = tmp_path / "tower.json"
    path.write_text(json.dumps(FAILING_DOC))
    code = main(["check", str(path)])
    out = capsys.readouterr().out
    assert code == 1
    assert "centralizer_product: fail" in out
    assert "witness:" in out


def test_check_exit_bounded(tmp_path, capsys):
    out = tmp_path / "bounded.json"
    code = main(
        ["check", str(PREFIX_PATH), "--wilson", "--subgroup-bound", "2", "--json", str(out)]
    )
    text = capsys.readouterr().out
    assert code == 3
    assert "wilson_ii: bounded" in text
    report = parse_report(out.read_bytes())
    assert report["completeness"] == "bounded"
    assert report["options"]["subgroup_bound"] == 2


def test_check_exit_fail_beats_bounded(tmp_path, capsys):
    path = tmp_path / "tower.json"
    path.write_text(json.dumps(FAILING_DOC))
    code = main(["check", str(path), "--wilson", "--subgroup-bound", "1"])
    capsys.readouterr()
    assert code == 1


def test_check_missing_file(capsys):
    code = main(["check", "/no/such/prefix.json"])
    err = capsys.readouterr().err
    assert code == 2
    assert err.startswith("error: cannot read")


def test_check_bad_json(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{ nope")
    code = main(["check", str(path)])
    err = capsys.readouterr().err
    assert code == 2
    assert err.startswith("error:")


def test_check_bad_count_class(capsys):
    code = main(["check", str(PREFIX_PATH), "--count-class", "C4"])
    err = capsys.readouterr().err
    assert code == 2
    assert "bad --count-class" in err


# -- build-wreath subcommand ----------------------------------------------------


def test_build_wreath_to_file(tmp_path, capsys):
    out = tmp_path / "tower.json"
    code = main(["build-wreath", "S3:3", "--depth", "2", "-o", str(out)])
    stdout = capsys.readouterr().out
    assert code == 0
    assert f"wrote {out}: 2 stages, orders 6, 1296" in stdout
    prefix = parse_system(out.read_text())
    assert [g.order for g in prefix.groups] == [6, 1296]
    assert prefix.kernels[1].order == 216


def test_build_wreath_to_stdout(capsys):
    code = main(["build-wreath", "C2:2", "--depth", "1"])
    out = capsys.readouterr().out
    assert code == 0
    prefix = parse_system(out)
    assert [g.order for g in prefix.groups] == [2]


def test_build_wreath_bad_spec(capsys):
    code = main(["build-wreath", "S3", "--depth", "2"])
    err = capsys.readouterr().err
    assert code == 2
    assert "bad base spec" in err


def test_build_wreath_unknown_base(capsys):
    code = main(["build-wreath", "B7:7", "--depth", "1"])
    err = capsys.readouterr().err
    assert code == 2
    assert err.startswith("error:")


# -- lattice subcommand ---------------------------------------------------------


def test_lattice_default_stage(capsys):
    code = main(["lattice", str(PREFIX_PATH)])
    out = capsys.readouterr().out
    assert code == 0
    assert out.splitlines() == [
        "stage 0: order 6, degree 3",
        "normal subgroup orders: 1, 3, 6",
        "minimal normal orders: 3",
        "maximal normal orders: 3",
        "critical pairs (top, bottom): (3, 1), (6, 3)",
        "chief series orders: 1, 3, 6",
        "composition factors: C2 x 1, C3 x 1",
    ]


def test_lattice_deeper_stage(capsys):
    code = main(["lattice", str(PREFIX_PATH), "--stage", "1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "stage 1: order 24, degree 4" in out
    assert "normal subgroup orders: 1, 4, 12, 24" in out
    assert "critical pairs (top, bottom): (4, 1), (12, 4), (24, 12)" in out
    assert "composition factors: C2 x 3, C3 x 1" in out


def test_lattice_stage_out_of_range(capsys):
    code = main(["lattice", str(PREFIX_PATH), "--stage", "5"])
    err = capsys.readouterr().err
    assert code == 2
    assert "out of range" in err
