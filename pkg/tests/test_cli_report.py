import csv
import io
import json
import subprocess
import sys

import pytest
from hypothesis import given

from blockforge import cli
from blockforge.errors import ConsistencyError
from blockforge.fusion import make_block
from blockforge.invariants import IntRange
from blockforge.report import SOURCES, ReportDocument, build_report, iter_reports, scan_blocks

from .conftest import blocks


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def test_report_json_p3():
    code, text = run("report", "--p", "3", "--m", "2", "--n", "1", "--l", "1", "--e", "2", "--format", "json")
    assert code == 0
    doc = ReportDocument.from_json(text)
    assert doc.value("invariants", "k") == 10
    assert doc.get("invariants", "k").source == "paper_exact"
    assert doc.value("group", "class_count", "brute_force") == 11


def test_report_extraspecial_intervals():
    code, text = run("report", "--p", "5", "--m", "2", "--n", "1", "--l", "1", "--e", "4", "--format", "json")
    doc = ReportDocument.from_json(text)
    assert doc.value("invariants", "k") == IntRange(26, 28)
    assert doc.value("invariants", "k0") == IntRange(22, 25, frozenset({23, 24}))
    assert doc.value("invariants", "l") == IntRange(4, 6)


def test_every_numeric_field_is_tagged():
    data = json.loads(run("report", "--p", "3", "--m", "3", "--n", "1", "--l", "2", "--e", "2", "--format", "json")[1])
    for entries in data["sections"].values():
        for cell in entries:
            assert cell["source"] in SOURCES
    for c in data["conjectures"]:
        assert c["source"] in SOURCES

    def no_floats(v):
        assert not isinstance(v, float)
        if isinstance(v, dict):
            for x in v.values():
                no_floats(x)
        if isinstance(v, list):
            for x in v:
                no_floats(x)

    no_floats(data)


@pytest.mark.parametrize(
    "argv",
    [
        ("report", "--p", "3", "--m", "1", "--n", "1", "--l", "1"),
        ("report", "--p", "4", "--m", "2", "--n", "1", "--l", "1"),
        ("report", "--p", "3", "--m", "2", "--n", "1", "--l", "1", "--e", "4"),
        ("scan", "--primes", "4"),
    ],
)
def test_invalid_input_exits_1(argv, capsys):
    code, out = run(*argv)
    assert code == 1 and out == ""
    assert capsys.readouterr().err.startswith("blockforge: ")


def test_malformed_flags_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        run("report", "--p", "x", "--m", "2", "--n", "1", "--l", "1")
    assert exc.value.code == 1
    assert "invalid int value" in capsys.readouterr().err


def test_budget_exceeded_exits_2(monkeypatch, capsys):
    monkeypatch.setenv("BLOCKFORGE_BUDGET", "10")
    code, _ = run("report", "--p", "3", "--m", "2", "--n", "1", "--l", "1", "--brute-force", "always")
    assert code == 2
    assert "budget" in capsys.readouterr().err
    monkeypatch.setenv("BLOCKFORGE_BUDGET", "oops")
    code, _ = run("report", "--p", "3", "--m", "2", "--n", "1", "--l", "1")
    assert code == 1


def test_auto_mode_skips_brute_force_over_budget():
    doc = build_report(make_block(3, 2, 1, 1, 2), budget=10)
    assert all(q.source != "brute_force" for qs in doc.sections.values() for q in qs)
    assert doc.value("invariants", "k") == 10


def test_consistency_violation_exits_3(monkeypatch):
    import blockforge.report as report

    monkeypatch.setattr(report, "k_lower_formula", lambda block: 999)
    code, _ = run("report", "--p", "3", "--m", "2", "--n", "1", "--l", "1", "--e", "2")
    assert code == 3
    with pytest.raises(ConsistencyError, match=r"\(3, 2, 1, 1, 1\)"):
        list(iter_reports([3], 27))


@given(blocks())
def test_json_and_csv_round_trip(block):
    doc = build_report(block)
    assert ReportDocument.from_json(doc.to_json()) == doc
    assert ReportDocument.from_csv(doc.to_csv()) == [doc]


def test_csv_is_parseable_with_standard_reader():
    _, text = run("report", "--p", "5", "--m", "2", "--n", "1", "--l", "1", "--e", "4", "--format", "csv")
    rows = list(csv.reader(io.StringIO(text, newline="")))
    assert rows[0] == ["p", "m", "n", "l", "e", "section", "field", "value", "source"]
    assert all(len(r) == 9 for r in rows)
    k0 = [r for r in rows if r[5] == "invariants" and r[6] == "k0"][0]
    assert json.loads(k0[7]) == {"lo": 22, "hi": 25, "excluded": [23, 24]}


def test_text_report():
    _, text = run("report", "--p", "3", "--m", "2", "--n", "1", "--l", "1", "--e", "2")
    assert "block p=3 m=2 n=1 l=1 e=2" in text
    assert "holds" in text and "FAILS" not in text


def test_scan_small_grids():
    assert [b.as_tuple() for b in scan_blocks([3], 27)] == [(3, 2, 1, 1, 1), (3, 2, 1, 1, 2)]
    assert scan_blocks([], 10**6) == []
    tuples = [b.as_tuple() for b in scan_blocks([3], 729)]
    expected = [
        (3, m, n, l, e)
        for m in range(1, 7) for n in range(1, 7) for l in range(1, m)
        for e in (1, 2)
        if m - l <= n and m + n <= 6
    ]
    assert tuples == sorted(expected)
    code, out = run("scan", "--primes", "", "--format", "json")
    assert code == 0 and out == ""


def test_scan_json_lines_and_threads():
    _, serial = run("scan", "--primes", "3,5", "--max-order", "243", "--format", "json")
    _, threaded = run("scan", "--primes", "3,5", "--max-order", "243", "--format", "json", "--jobs", "4")
    assert serial == threaded
    params = [tuple(json.loads(line)["parameters"].values()) for line in serial.splitlines()]
    assert params == sorted(params)


def test_scan_csv_single_header():
    _, text = run("scan", "--primes", "3", "--max-order", "81", "--format", "csv")
    docs = ReportDocument.from_csv(text)
    assert len(docs) == len(scan_blocks([3], 81))
    assert text.count("p,m,n,l,e,section") == 1


def test_table_command():
    code, text = run("table", "--p", "3", "--m", "2")
    assert code == 0 and text.count("\r\n") == 12


def test_lattice_commands():
    _, text = run("lattice", "forms", "--det", "9", "--divisors", "1,9", "--format", "json")
    assert [json.loads(x) for x in text.splitlines()] == [{"a": 1, "b": 0, "c": 9}, {"a": 2, "b": 1, "c": 5}]
    _, text = run("lattice", "deficits", "--p", "5", "--cap", "15", "--format", "json")
    assert [json.loads(x)["deficit"] for x in text.splitlines()] == [1, 2, 4, 5, 7, 10, 13]
    _, text = run("lattice", "heights", "--p", "13", "--format", "json")
    assert {"profile": {"2": 19, "3": 1}, "residue_sum": 2} in [json.loads(x) for x in text.splitlines()]
    _, text = run("lattice", "roots", "--r", "4", "--value", "2", "--format", "csv")
    assert text.splitlines()[0] == "vector,shape" and len(text.splitlines()) == 31
    code, _ = run("lattice", "forms", "--det", "9", "--divisors", "1,2,3")
    assert code == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "blockforge", "report", "--p", "3", "--m", "1", "--n", "1", "--l", "1"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 1
    assert proc.stdout == "" and "l < m" in proc.stderr
