"""CLI behaviour: subcommands, exit codes, output formats."""

import json
import os

import numpy as np

from mfclib.cli import main
from mfclib.invariants import ZMatrix
from mfclib.serialize import encode_to_path

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_enumerate_su2_4(capsys):
    code, out, _ = run(capsys, "enumerate", "su2_4", "--physical")
    assert code == 0
    assert out.startswith("2 invariant(s)")


def test_enumerate_structured(capsys):
    code, out, _ = run(capsys, "--format", "structured",
                       "enumerate", "ising", "--physical")
    assert code == 0
    doc = json.loads(out)
    assert doc["count"] == 1


def test_validate_catalog_and_file(tmp_path, capsys):
    code, out, _ = run(capsys, "validate", "su2_3")
    assert code == 0 and "overall: pass" in out
    code, _, err = run(capsys, "validate", "not_a_real_id")
    assert code == 2 and "error" in err


def test_validate_corrupted_file(tmp_path, capsys):
    path = tmp_path / "corrupted.mfc"
    path.write_text("garbage{")
    code, _, err = run(capsys, "validate", str(path))
    assert code == 2
    assert "error" in err


def test_catalog_export_then_validate(tmp_path, capsys):
    out_file = tmp_path / "fib.mfc"
    code, _, _ = run(capsys, "catalog", "export", "fibonacci",
                     "-o", str(out_file))
    assert code == 0
    code, out, _ = run(capsys, "validate", str(out_file))
    assert code == 0 and "overall: pass" in out


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0
    assert "su2_28" in out and "ising" in out


def test_check_invariant_and_noninvariant(tmp_path, capsys):
    good = os.path.join(FIXTURE_DIR, "su2_4_d4.mfc")
    code, out, _ = run(capsys, "check", "su2_4", good)
    assert code == 0 and "invariant" in out
    bad = np.zeros((5, 5), dtype=np.int64)
    bad[0, 0] = 1
    bad[0, 1] = 1
    bad_path = tmp_path / "bad.mfc"
    encode_to_path(ZMatrix(bad), str(bad_path))
    code, out, _ = run(capsys, "check", "su2_4", str(bad_path))
    assert code == 1 and "not an invariant" in out


def test_obstruct_fixture_pair(capsys):
    e6 = os.path.join(FIXTURE_DIR, "su2_10_e6.mfc")
    code, out, _ = run(capsys, "obstruct", "su2_10", e6, e6, "-n", "3")
    assert code == 0
    assert "verdict: pass" in out
    assert "rhs=12" in out         # n=2 value is Tr(Z Z^t)


def test_obstruct_failure_exits_one(tmp_path, capsys):
    z = np.eye(3, dtype=np.int64)
    z[0, 2] = 1               # normalized but outside the commutant
    path = tmp_path / "z.mfc"
    encode_to_path(ZMatrix(z), str(path))
    code, out, _ = run(capsys, "obstruct", "ising", str(path), "-n", "1")
    assert code == 1
    assert "verdict: fail" in out


def test_series(capsys):
    a5 = os.path.join(FIXTURE_DIR, "su2_4_a5.mfc")
    code, out, _ = run(capsys, "series", "su2_4", a5, "-n", "2")
    assert code == 0
    assert "lambda^0: 1" in out


def test_exponents_context_id_and_file(tmp_path, capsys):
    code, out, _ = run(capsys, "exponents", "su2_4:D4")
    assert code == 0 and "overall: pass" in out
    from mfclib.context_fixtures import e6_context
    path = tmp_path / "e6_ctx.mfc"
    encode_to_path(e6_context(), str(path))
    code, out, _ = run(capsys, "exponents", str(path))
    assert code == 0


def test_double_z(capsys):
    d4 = os.path.join(FIXTURE_DIR, "su2_4_d4.mfc")
    a5 = os.path.join(FIXTURE_DIR, "su2_4_a5.mfc")
    code, out, _ = run(capsys, "double-z", "su2_4", d4, a5)
    assert code == 0
    assert "mu * trace = 4" in out


def test_ortho_relations(tmp_path, capsys):
    from mfclib.catalog import fibonacci
    from mfclib.characters import vacuum_dimension_table, trivial_double_table
    from mfclib.context_fixtures import trivial_context
    md = fibonacci()
    ctx = trivial_context(md)
    ctx_path = tmp_path / "ctx.mfc"
    encode_to_path(ctx, str(ctx_path))
    chi_path = tmp_path / "chi.mfc"
    encode_to_path(vacuum_dimension_table(md, ctx), str(chi_path))
    for relation in ("1", "2"):
        code, out, _ = run(capsys, "ortho", str(ctx_path), str(chi_path),
                           "--relation", relation)
        assert code == 0, out
    xi_path = tmp_path / "xi.mfc"
    encode_to_path(trivial_double_table(md, ctx), str(xi_path))
    code, out, _ = run(capsys, "ortho", str(ctx_path), str(xi_path),
                       "--relation", "trace")
    assert code == 0, out
    # chi table against the trace relation is an input error
    code, _, err = run(capsys, "ortho", str(ctx_path), str(chi_path),
                       "--relation", "trace")
    assert code == 2


def test_fusion_output(capsys):
    code, out, _ = run(capsys, "fusion", "ising")
    assert code == 0
    assert "N[sigma, sigma -> 1] = 1" in out


def test_structured_outputs_are_json(capsys):
    d4 = os.path.join(FIXTURE_DIR, "su2_4_d4.mfc")
    commands = [
        ("validate", "su2_2"),
        ("fusion", "fibonacci"),
        ("check", "su2_4", d4),
        ("obstruct", "su2_4", d4, "-n", "2"),
        ("series", "su2_4", d4, "-n", "2"),
        ("exponents", "su2_4:D4"),
        ("double-z", "su2_4", d4, d4),
    ]
    for argv in commands:
        code, out, _ = run(capsys, "--format", "structured", *argv)
        assert code == 0, argv
        json.loads(out)
