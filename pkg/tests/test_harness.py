from __future__ import annotations

import json

import pytest

from localperiods import ledger
from localperiods.errors import ConfigError
from localperiods.harness import (
    CSV_FIELDS,
    Report,
    emit_report,
    load_config,
    main,
    parse_config,
    prepare,
    render,
    run_suite,
)
from localperiods.harness.report import format_point
from localperiods.harness.runner import errors_of, random_chars
from localperiods.paths import DEFAULT_SUITE_PATH
from localperiods.settings import Settings, load_settings, parse_settings

INERT = {"tag": "U-INERT", "params": {"p": 3, "chars": [[0, 1], 1], "mu1": 0.9}}


def suite(*cases, **extra):
    data = {"name": "t", "seed": 1, "cases": list(cases)}
    data.update(extra)
    return data


@pytest.fixture
def isolated_ledger():
    previous = ledger.current_path()
    yield
    ledger.close_connection()
    ledger.configure(previous)
    ledger.set_enabled(True)


@pytest.fixture
def settings_file(tmp_path):
    path = tmp_path / "test.env"
    path.write_text("LOCALPERIODS_LEDGER_PATH=ledger.db\nLOCALPERIODS_WORKERS=2\n", encoding="utf-8")
    return path


# -- settings ---------------------------------------------------------------------
def test_settings_defaults():
    settings = parse_settings({})
    assert settings == Settings()
    assert settings.precision == 40 and settings.workers == 1 and settings.ledger_enabled


def test_settings_parse_values(tmp_path):
    settings = parse_settings(
        {
            "LOCALPERIODS_PRECISION": "60",
            "LOCALPERIODS_LEDGER_ENABLED": "off",
            "LOCALPERIODS_LEDGER_PATH": "runs/l.db",
            "LOCALPERIODS_TOL": "1e-8",
        },
        base=tmp_path,
    )
    assert settings.precision == 60
    assert not settings.ledger_enabled
    assert settings.ledger_path == (tmp_path / "runs" / "l.db").resolve()
    assert settings.tol == 1e-8


@pytest.mark.parametrize(
    "values",
    [
        {"LOCALPERIODS_WORKERS": "many"},
        {"LOCALPERIODS_WORKERS": "0"},
        {"LOCALPERIODS_LEDGER_ENABLED": "maybe"},
        {"LOCALPERIODS_TOL": "2"},
        {"LOCALPERIODS_COLOUR": "blue"},
    ],
)
def test_settings_reject_bad_values(values):
    with pytest.raises(ConfigError):
        parse_settings(values)


def test_settings_ignore_the_environment(settings_file, monkeypatch):
    monkeypatch.setenv("LOCALPERIODS_PRECISION", "99")
    settings = load_settings(settings_file)
    assert settings.precision == 40
    assert settings.workers == 2
    assert settings.ledger_path == (settings_file.parent / "ledger.db").resolve()


def test_missing_explicit_settings_file(tmp_path):
    with pytest.raises(ConfigError):
        load_settings(tmp_path / "absent.env")


# -- config -----------------------------------------------------------------------
def test_default_suite_parses():
    config = load_config(DEFAULT_SUITE_PATH)
    tags = {d.tag for d in config.descriptors}
    assert {"U-INERT", "U-SPLIT", "R1-RAMEXT", "R2-SPECIAL", "R3-SC-SPLIT", "R4-RAMCHI", "R5-JOINT", "MC-SC-INERT"} <= tags
    assert config.format == "json"


def test_parse_config_reads_complex_values():
    config = parse_config(suite(dict(INERT, s=[0.25, [0.1, 0.2]], checks=["P0"])))
    descriptor = config.descriptors[0]
    assert descriptor.params["chars"] == (1j, 1 + 0j)
    assert descriptor.s == (0.25 + 0j, 0.1 + 0.2j)
    assert descriptor.checks == ("P0",)
    assert descriptor.name == "U-INERT p=3"


@pytest.mark.parametrize(
    "data",
    [
        suite(INERT, colour="blue"),
        suite(dict(INERT, colour="blue")),
        suite({"tag": "U-INERT", "params": {"p": 3, "central": 1}}),
        suite(dict(INERT, checks=["oracle-Q"])),
        suite({"tag": "U-NOWHERE"}),
        suite({"tag": "decomp", "params": {"q": 3}}),
        suite({"tag": "decomp", "params": {"q": 3, "c": 2}, "checks": ["P0"]}),
        suite({"tag": "kirillov-moment", "params": {"p": 3, "c": 2}}),
        suite({"tag": "torus-sum", "params": {"p": 3, "c": 2, "central": 1}}),
        suite(dict(INERT, tailMode="guess")),
        suite(dict(INERT, s=["a"])),
        suite(INERT, format="xml"),
        suite(INERT, tol=0),
        [INERT],
    ],
)
def test_parse_config_rejects(data):
    with pytest.raises(ConfigError):
        parse_config(data)


def test_load_config_reports_bad_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(path)


# -- runner -----------------------------------------------------------------------
def test_construction_failures_are_per_descriptor():
    config = parse_config(suite({"tag": "U-INERT", "params": {"p": 3, "D": 1}, "checks": ["P0"]}, dict(INERT, checks=["P0"])))
    prepared = prepare(config)
    assert prepared[0].case is None and prepared[0].error
    assert prepared[1].case is not None
    report = run_suite(config)
    assert [r.kind for r in report.records] == ["construct", "P0"]
    assert not report.records[0].passed
    assert report.records[1].passed
    assert report.failed
    assert report.summary()["errors"] == 1


def test_normalization_checks_pass():
    config = parse_config(suite(dict(INERT, s=[0.1, 0.25], checks=["P0", "denominator"])))
    report = run_suite(config)
    assert len(report.records) == 3
    assert all(r.passed for r in report.records)


def test_lemma_checks():
    config = parse_config(
        suite(
            {"tag": "decomp", "params": {"q": 3, "c": 3}},
            {"tag": "gauss-shift", "params": {"p": 3, "k": 1, "i": [0, 1, 2]}},
        )
    )
    report = run_suite(config)
    assert [r.kind for r in report.records] == ["decomp"] * 4 + ["gauss-shift"] * 3
    assert all(r.passed for r in report.records)


def test_character_lemma_checks():
    config = parse_config(
        suite(
            {"tag": "torus-sum", "params": {"p": 3, "c": 2}},
            {"tag": "torus-sum", "params": {"p": 3, "c": 1}},
            {"tag": "square-level", "params": {"p": 5, "c": 2}},
        )
    )
    report = run_suite(config)
    assert [r.kind for r in report.records] == ["torus-sum"] * 6 + ["square-level"]
    assert [r.case for r in report.records[3:5]] == ["torus-sum p=3 c=2 b2"] * 2
    assert report.records[2].closed == 1
    # 16 of the 20 characters of (Z/25)* have level 2
    assert report.records[-1].oracle == report.records[-1].closed == 16
    assert all(r.passed for r in report.records)


def test_square_level_needs_level_two():
    report = run_suite(parse_config(suite({"tag": "square-level", "params": {"p": 3, "c": 1}})))
    (record,) = report.records
    assert not record.passed
    assert record.error.startswith("ContextError")


def test_representation_lemma_checks():
    config = parse_config(
        suite(
            {"tag": "weil-relations", "params": {"p": 3, "c": 1}},
            {"tag": "kirillov-relations", "params": {"p": 3, "c": 2}},
            {"tag": "kirillov-moment", "params": {"p": 3, "c": 2, "central": 1.3}},
        )
    )
    report = run_suite(config)
    kinds = [r.kind for r in report.records]
    assert kinds == ["weil-relations"] * 4 + ["kirillov-relations"] * 12 + ["kirillov-moment"] * 6
    assert all(r.passed for r in report.records), [r for r in report.records if not r.passed]
    twists = [r for r in report.records if r.case.endswith("twist")]
    assert [r.oracle for r in twists] == [2, 2, 4, 6]


def test_matrix_coefficient_checks():
    config = parse_config(
        suite(
            {"tag": "MC-SC-INERT", "params": {"p": 3, "c": 2}, "checks": ["matrix-coefficient"]},
            {"tag": "MC-SC-INERT", "params": {"p": 3, "c": 3}, "checks": ["matrix-coefficient"]},
        )
    )
    report = run_suite(config)
    assert [r.oracle for r in report.records] == [pytest.approx(1 / 6), 0j]
    assert all(r.passed for r in report.records)


def test_engine_errors_become_failed_records():
    pole = {"tag": "U-INERT", "params": {"p": 3, "chars": [1, 1], "mu1": 1}, "s": [0.0], "checks": ["oracle-I"], "valuations": [0]}
    report = run_suite(parse_config(suite(pole)))
    (record,) = report.records
    assert not record.passed
    assert record.error.startswith("PoleError")


def test_oracle_I_check():
    config = parse_config(suite(dict(INERT, checks=["oracle-I"], valuations=[0, 1])))
    report = run_suite(config, workers=2)
    assert [r.v for r in report.records] == [0, 1]
    assert all(r.passed for r in report.records)


def test_random_chars_follow_the_seed():
    first = random_chars("U-SPLIT", 3, 0)
    assert first == random_chars("U-SPLIT", 3, 0)
    assert first != random_chars("U-SPLIT", 4, 0)
    assert len(first) == 4
    assert all(abs(abs(z) - 1) < 1e-12 for z in first)


def test_relative_error_is_absolute_at_zero():
    assert errors_of(1e-10, 0) == (1e-10, 1e-10)
    assert errors_of(1.5, 1.0) == (0.5, 0.5)


# -- reports ------------------------------------------------------------------------
def test_empty_report_is_valid():
    report = Report("empty", 0, ())
    data = json.loads(render(report, "json"))
    assert data["checks"] == []
    assert data["summary"]["total"] == 0
    assert render(report, "csv") == ",".join(CSV_FIELDS) + "\n"


def test_csv_header_and_rows():
    report = run_suite(parse_config(suite(dict(INERT, checks=["P0"]))))
    lines = render(report, "csv").splitlines()
    assert lines[0] == "case,point_s,point_w,oracle_re,oracle_im,closed_re,closed_im,rel_err,pass"
    assert lines[1].startswith("U-INERT p=3/P0,0.25,0.5,")
    assert lines[1].endswith(",true")


def test_json_values_are_pairs_with_fifteen_digits():
    report = run_suite(parse_config(suite(dict(INERT, checks=["P0"]))))
    record = json.loads(render(report, "json"))["checks"][0]
    assert record["s"] == [0.25, 0.0]
    assert all(x == float(f"{x:.15g}") for x in record["oracle"])
    assert "wallTime" not in record


def test_format_point():
    assert format_point(0.25) == "0.25"
    assert format_point(0.1 - 0.2j) == "0.1-0.2j"


def test_emit_report_surfaces_the_path(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x", encoding="utf-8")
    with pytest.raises(OSError) as info:
        emit_report(Report("r", 0, ()), "json", blocker / "report.json")
    assert str(blocker / "report.json") in str(info.value)


# -- command line -------------------------------------------------------------------
def _write_config(tmp_path, data):
    path = tmp_path / "suite.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


def test_verify_is_byte_stable(tmp_path, settings_file, isolated_ledger):
    config = _write_config(tmp_path, suite(dict(INERT, checks=["P0", "denominator"]), {"tag": "decomp", "params": {"q": 3, "c": 2}}))
    outputs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        code = main(["verify", "--config", str(config), "--out", str(out), "--settings", str(settings_file), "--quiet"])
        assert code == 0
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]
    assert outputs[0].endswith(b"\n")
    assert ledger.count_checks() == 2 * 5


def test_verify_exit_status_on_failure(tmp_path, settings_file, isolated_ledger):
    config = _write_config(tmp_path, suite({"tag": "U-INERT", "params": {"p": 3, "D": 1}, "checks": ["P0"]}))
    out = tmp_path / "r.csv"
    code = main(["verify", "--config", str(config), "--out", str(out), "--format", "csv", "--settings", str(settings_file), "--quiet"])
    assert code == 1
    assert out.read_text(encoding="utf-8").splitlines()[1].endswith(",false")


def test_bad_config_exits_with_usage_error(tmp_path, settings_file, isolated_ledger, capsys):
    config = _write_config(tmp_path, suite(INERT, colour="blue"))
    assert main(["verify", "--config", str(config), "--settings", str(settings_file)]) == 2
    assert "ERROR: ConfigError" in capsys.readouterr().err


def test_ledger_subcommand_lists_checks(tmp_path, settings_file, isolated_ledger, capsys):
    config = _write_config(tmp_path, suite(dict(INERT, checks=["P0"])))
    main(["verify", "--config", str(config), "--out", str(tmp_path / "r.json"), "--settings", str(settings_file), "--quiet"])
    capsys.readouterr()
    assert main(["ledger", "--settings", str(settings_file)]) == 0
    out = capsys.readouterr().out
    assert "U-INERT p=3/P0 pass" in out


def test_table_subcommand(settings_file, isolated_ledger, capsys):
    code = main(["table", "--tag", "R2-SPECIAL", "--param", "p=3", "--param", "chars=[1, 1, -1]", "--s", "0.25", "--settings", str(settings_file)])
    assert code == 0
    out = capsys.readouterr().out
    assert "chi^E(1)" in out
    assert "P0 at w = 1/2" in out


def test_probe_subcommand(settings_file, isolated_ledger, capsys):
    args = ["probe", "--tag", "U-INERT", "--param", "p=3", "--param", "chars=[[0, 1], 1]", "--param", "mu1=0.9"]
    code = main(args + ["--s", "0.25", "--v", "1", "--settings", str(settings_file), "--quiet"])
    assert code == 0
    assert "pass" in capsys.readouterr().out
    assert ledger.query_checks(limit=1)[0]["kind"] == "oracle-I"
