import json
import subprocess
import sys
import tempfile
from pathlib import Path

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from gaglrc.cli import run
from gaglrc.formats import GOLDEN, data_path, golden_text

EXAMPLE = str(data_path("f3_example.json"))
BASE = json.loads(Path(EXAMPLE).read_text())


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_descriptor(directory, desc):
    path = Path(directory) / "code.json"
    path.write_text(json.dumps(desc))
    return str(path)


@pytest.mark.parametrize("stage", GOLDEN)
def test_build_reproduces_golden_bytes(capsys, stage):
    code, out, _ = call(capsys, "build", "--descriptor", EXAMPLE, "--stage", stage)
    assert code == 0
    assert out == golden_text(stage)


def test_golden_contents():
    assert golden_text("G_RS").splitlines()[1:] == ["1 1 1", "0 1 2"]
    assert golden_text("G").splitlines()[1] == "1 1 1 1 1 1 1 1 1"
    assert golden_text("G1").splitlines()[3] == "1 1 2 0 1 2"


def test_family_line(capsys):
    code, out, _ = call(capsys, "family", "--q", "3")
    assert code == 0 and out.strip() == "n=9 k=5 d=3 r=2 defect=0"


def test_family_writes_descriptor(capsys, tmp_path):
    dest = tmp_path / "fam.json"
    assert call(capsys, "family", "--q", "4", "--descriptor-out", str(dest))[0] == 0
    code, out, _ = call(capsys, "mindist", "--descriptor", str(dest))
    assert code == 0 and out.strip() == "d=3"


def test_table1(capsys):
    code, out, _ = call(capsys, "table1")
    assert code == 0
    assert out.splitlines() == [
        "n=9 k=3 d=4 defect=2",
        "n=9 k=4 d=4 defect=1",
        "n=9 k=5 d=3 defect=0",
    ]


def test_mindist(capsys):
    assert call(capsys, "mindist", "--descriptor", EXAMPLE)[1].strip() == "d=3"
    code, out, _ = call(capsys, "mindist", "--descriptor", EXAMPLE, "--claim", "3")
    assert code == 0 and out.strip() == "d_lower=3 d_upper=5"
    # f = (x^2+2x+2)(x^2+1) vanishes on the first two blocks
    code, out, _ = call(capsys, "mindist", "--descriptor", EXAMPLE, "--claim", "3",
                        "--witness", "2,2,0,2,1")
    assert code == 0 and out.strip() == "d_lower=3 d_upper=3"


def test_mindist_budget_exit_code(capsys):
    code, _, err = call(capsys, "mindist", "--descriptor", EXAMPLE, "--budget", "10")
    assert code == 2 and err.startswith("error: budget:")


def test_repair_single(capsys):
    code, out, _ = call(
        capsys, "repair", "--descriptor", EXAMPLE, "--word", "1,?,1,1,1,1,1,1,1", "--erase", "2"
    )
    assert code == 0 and out.strip() == "symbol=1 recovery_set=1,3"


def test_repair_sweep_is_seeded(capsys):
    a = call(capsys, "repair", "--descriptor", EXAMPLE, "--sweep", "5", "--seed", "3")
    b = call(capsys, "repair", "--descriptor", EXAMPLE, "--sweep", "5", "--seed", "3")
    assert a == b and a[0] == 0
    assert a[1].strip() == "trials=45 repaired=45 max_recovery=2"


def test_repair_rejects_bad_position(capsys):
    code, _, err = call(capsys, "repair", "--descriptor", EXAMPLE, "--word", "1,1,1,1,1,1,1,1,1",
                        "--erase", "10")
    assert code == 1 and err.startswith("error: usage:")


def test_locality(capsys):
    code, out, _ = call(capsys, "locality", "--descriptor", EXAMPLE)
    lines = out.splitlines()
    assert code == 0 and lines[0] == "locality=2" and lines[1] == "c1: 2,3"


def test_concat(capsys):
    code, out, _ = call(capsys, "concat", "--q", "2", "--r", "2", "--outer", "rs:4:2")
    assert code == 0
    fields = dict(kv.split("=") for kv in out.split())
    assert (fields["n"], fields["k"], fields["d_product"]) == ("12", "4", "6")
    assert int(fields["d"]) >= 6


def test_concat_rejects_extension_base(capsys):
    assert call(capsys, "concat", "--q", "4", "--r", "2", "--outer", "rs:4:2")[0] == 1


def test_bounds_lines(capsys):
    assert call(capsys, "bounds", "--kind", "singleton", "--n", "24", "--k", "8", "--r", "2",
                "--d", "8")[1].strip() == "d_max=14 defect=6"
    assert call(capsys, "bounds", "--kind", "dv", "--q", "2", "--r", "4")[1].strip() == "dv=3/4"
    assert call(capsys, "bounds", "--kind", "gs", "--q", "3", "--ell", "3")[1].strip() == (
        "genus<=36 b1>=78 ratio>=2"
    )
    out = call(capsys, "bounds", "--kind", "gv", "--q", "3", "--r", "2", "--delta", "1")[1]
    assert out.startswith("rate>=0 ") and "clamped" in out
    out = call(capsys, "bounds", "--kind", "gv", "--q", "2", "--r", "2", "--delta", "1/10")[1]
    assert out.startswith("rate>=0.")


def test_bounds_asymptotic_flags_example(capsys):
    out = call(capsys, "bounds", "--kind", "asymptotic", "--q", "4", "--r", "2")[1]
    assert "concatenated=4/9" in out and "generalized_ag_locality2=2/5" in out
    assert "flag: concatenated" in out


def test_bounds_missing_args(capsys):
    code, _, err = call(capsys, "bounds", "--kind", "singleton", "--n", "9")
    assert code == 1 and "--k" in err


def test_bounds_inconsistent_distance(capsys):
    code, _, err = call(capsys, "bounds", "--kind", "singleton", "--n", "9", "--k", "5", "--r", "2",
                        "--d", "4")
    assert code == 1 and err.startswith("error: BoundError:")


@pytest.mark.parametrize(
    "argv",
    [
        ["family", "--q", "3"],
        ["table1"],
        ["mindist", "--descriptor", EXAMPLE],
        ["locality", "--descriptor", EXAMPLE],
        ["bounds", "--kind", "asymptotic", "--q", "4", "--r", "2", "--ell", "3"],
        ["bounds", "--kind", "gv", "--q", "2", "--r", "2", "--delta", "0.1"],
        ["build", "--descriptor", EXAMPLE],
    ],
)
def test_structured_output_is_json(capsys, argv):
    code, out, _ = call(capsys, *argv, "--format", "structured")
    assert code == 0
    doc = json.loads(out)
    assert doc["format"] == "gaglrc-report"


def set_place(i, text):
    def mutate(d):
        if isinstance(d.get("places"), list):
            d["places"][i] = text
        else:
            d["places"] = text

    return mutate


MUTATIONS = {
    "field_not_prime_power": lambda d: d.update(field={"p": 4, "m": 1}),
    "field_missing": lambda d: d.pop("field", None),
    "reducible_place": set_place(1, "2,0,1"),
    "non_monic_place": set_place(0, "1,1,2"),
    "repeated_place": set_place(2, "2,2,1"),
    "divisor_too_large": lambda d: d.update(divisor_degree=6),
    "divisor_negative": lambda d: d.update(divisor_degree=-1),
    "inner_too_short": lambda d: d["inner"].update(points=["0", "1"]),
    "bad_format_tag": lambda d: d.update(format="other"),
    "bad_element": lambda d: d["inner"].update(points=["0", "1", "7"]),
    "field_wrong_type": lambda d: d.update(field="GF(3)"),
    "places_wrong_type": lambda d: d.update(places=17),
}


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.lists(st.sampled_from(sorted(MUTATIONS)), min_size=1, max_size=3, unique=True),
       st.sampled_from(["build", "mindist", "locality"]))
def test_malformed_descriptors_exit_1(capsys, names, command):
    desc = json.loads(json.dumps(BASE))
    for name in names:
        MUTATIONS[name](desc)
    with tempfile.TemporaryDirectory() as tmp:
        code, out, err = call(capsys, command, "--descriptor", write_descriptor(tmp, desc))
    assert code == 1
    assert out == ""
    assert len(err.strip().splitlines()) == 1 and err.startswith("error: ")


def test_unreadable_descriptor(capsys, tmp_path):
    bad = tmp_path / "x.json"
    bad.write_text("{not json")
    assert call(capsys, "build", "--descriptor", str(bad))[0] == 1
    assert call(capsys, "build", "--descriptor", str(tmp_path / "missing.json"))[0] == 1


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "gaglrc", "family", "--q", "3"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.strip() == "n=9 k=5 d=3 r=2 defect=0"
