import json
import subprocess
import sys

import jsonschema
import pytest

from irrseries.cli import main
from irrseries.specfile import SpecError, build_spec, load_schema

from conftest import SPECS

COMMANDS = [
    ["eval", "telescoping.json", "--depth", "12", "--prec", "1e-15"],
    ["eval", "liouville.json", "--depth", "4"],
    ["eval", "zero.json"],
    ["check", "erdos-straus", "telescoping.json", "--Bmax", "4", "--qmax", "2"],
    ["check", "erdos-straus", "e_minus_2.json", "--Bmax", "8", "--qmax", "3", "--jobs", "2"],
    ["check", "erdos-straus-cor", "e_minus_2.json"],
    ["check", "prime-series", "prime_cantor.json"],
    ["check", "hancl", "liouville.json", "--A", "2", "--Qmax", "1000"],
    ["check", "hancl-cor2", "double_exp.json", "--A", "2"],
    ["check", "hancl-rucki-1", "liouville.json", "--delta", "1"],
    ["check", "hancl-rucki-2", "liouville.json", "--t", "2"],
    ["counterexample", "--delta", "1", "--A", "3", "--kmax", "12"],
    ["primes", "--nmin", "1", "--nmax", "2000", "--N", "1000", "--epsilon", "1/10"],
    ["roth", "liouville.json", "--kmax", "6"],
]


def _argv(cmd):
    return [str(SPECS / a) if a.endswith(".json") else a for a in cmd]


def _run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("cmd", COMMANDS, ids=lambda c: " ".join(c[:2]))
def test_schema_and_determinism(capsys, cmd):
    code1, out1, _ = _run(capsys, _argv(cmd))
    code2, out2, _ = _run(capsys, _argv(cmd))
    assert code1 == code2 == 0
    d1, d2 = json.loads(out1), json.loads(out2)
    jsonschema.validate(d1, load_schema("report"))
    d1.pop("runtime_ms"), d2.pop("runtime_ms")
    assert json.dumps(d1, sort_keys=True) == json.dumps(d2, sort_keys=True)


def test_numbers_are_exact_strings(capsys):
    _, out, _ = _run(capsys, _argv(["eval", "liouville.json", "--depth", "4"]))
    doc = json.loads(out)
    assert doc["values"]["partial_sum"] == "12845057/16777216"
    assert doc["values"]["decimal"].startswith("0.765625059604644775390625")
    assert "." not in doc["values"]["enclosure"]["lo"]


def test_telescoping_witness_payload(capsys):
    _, out, _ = _run(capsys, _argv(["check", "erdos-straus", "telescoping.json", "--Bmax", "4"]))
    w = json.loads(out)["values"]["search"]["witness"]
    assert w["B"] == 1 and w["N"] == 1 and set(w["c"]) == {"1"}


def test_counterexample_payload(capsys):
    _, out, _ = _run(capsys, ["counterexample", "--A", "1.5"])
    doc = json.loads(out)
    assert doc["values"]["failures"] == [] and doc["verdict"]["status"] == "CertifiedTrue"
    _, out, _ = _run(capsys, ["counterexample", "--kmax", "1"])
    assert json.loads(out)["values"]["terms"] == ["2", "8"]


def test_verdicts_do_not_change_exit_code(capsys):
    code, out, _ = _run(capsys, _argv(["check", "hancl-cor2", "double_exp.json", "--A", "2"]))
    assert code == 0 and json.loads(out)["verdict"] == {
        "status": "RefutedAt", "index": 6, "reason": "a(6)^(1/2^6) (1 + 4 (2/3)^6) > 2"}


def test_wrong_form_names_required_form(capsys):
    code, out, err = _run(capsys, _argv(["check", "hancl", "telescoping.json", "--A", "2"]))
    assert code == 1 and out == "" and "plain-form" in err
    code, _, err = _run(capsys, _argv(["check", "erdos-straus", "liouville.json"]))
    assert code == 1 and "cantor-form" in err


def test_input_errors_exit_one(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"form": "plain", "a": {"kind": "closed_form", "expr": "n +"}, '
                   '"b": {"kind": "closed_form", "expr": "1"}}')
    code, _, err = _run(capsys, ["eval", str(bad)])
    assert code == 1 and "line 1, column 4" in err
    bad.write_text("{not json")
    assert _run(capsys, ["eval", str(bad)])[0] == 1
    assert _run(capsys, ["eval", str(tmp_path / "missing.json")])[0] == 1
    assert _run(capsys, ["counterexample", "--A", "1"])[0] == 1
    assert _run(capsys, ["eval", str(SPECS / "zero.json"), "--prec", "-1"])[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["primes", "--bogus"])
    assert exc.value.code == 1


def test_resource_cap_exit_two(capsys, tmp_path):
    spec = tmp_path / "big.json"
    spec.write_text(json.dumps({
        "form": "plain", "a": {"kind": "closed_form", "expr": "2^(2^(n+40))"},
        "b": {"kind": "closed_form", "expr": "1"},
        "facts": [{"kind": "ratio_dominated", "c": "1/2"}]}))
    assert _run(capsys, ["roth", str(spec), "--kmax", "2"])[0] == 2


def test_precision_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("IRRSERIES_PREC", "1e-10")
    _, out, _ = _run(capsys, _argv(["eval", "telescoping.json"]))
    assert json.loads(out)["precision"] == "1/10000000000"


def test_output_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    assert main(_argv(["eval", "zero.json", "--output", str(target)])) == 0
    doc = json.loads(target.read_text())
    assert doc["values"]["enclosure"] == {"lo": "0", "hi": "0"}


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "irrseries.cli", "counterexample", "--kmax", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["analysis"] == "counterexample"


@pytest.mark.parametrize("path", sorted(SPECS.glob("*.json")), ids=lambda p: p.name)
def test_shipped_specs_validate(path):
    build_spec(json.loads(path.read_text()))


@pytest.mark.parametrize("name", ["series_spec", "report"])
def test_docs_schema_matches_package(name):
    docs = SPECS.parents[1] / "docs" / f"{name}.schema.json"
    assert json.loads(docs.read_text()) == load_schema(name)


@pytest.mark.parametrize("doc, fragment", [
    ({"form": "plain", "a": {"kind": "closed_form"}, "b": {"kind": "primes"}}, "expr"),
    ({"form": "plain", "a": {"kind": "table", "values": [1]}, "b": {"kind": "primes"},
      "extra": 1}, "extra"),
    ({"form": "plain", "a": {"kind": "closed_form", "expr": "n"},
      "b": {"kind": "closed_form", "expr": "1"}, "facts": [{"kind": "ratio_dominated"}]}, "c"),
    ({"form": "plain", "a": {"kind": "closed_form", "expr": "k * n"},
      "b": {"kind": "closed_form", "expr": "1"}}, "unknown identifier"),
    ({"form": "plain", "a": {"kind": "closed_form", "expr": "n"},
      "b": {"kind": "closed_form", "expr": "1"},
      "facts": [{"kind": "log_tail_dominated", "on": "d", "C": 1, "r": "1/2"}]}, "no d sequence"),
])
def test_spec_errors(doc, fragment):
    with pytest.raises(SpecError, match=fragment):
        build_spec(doc)


def test_params_and_cross_references():
    spec = build_spec({"form": "cantor", "params": {"k": 3, "m": "1/1"},
                       "a": {"kind": "closed_form", "expr": "k + n"},
                       "b": {"kind": "closed_form", "expr": "m * a(n) - 3"}})
    assert spec.series.a_term(2) == 5 and spec.series.b_term(2) == 2
