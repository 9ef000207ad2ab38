import json

import pytest

from orbindex.cli import EXIT_DOMAIN, EXIT_OK, EXIT_PARSE, EXIT_UNSUPPORTED, at_level, main
from orbindex.index import football_model, pt_zn_model
from orbindex.scalars import cyclo_embed_root


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_star_examples(capsys):
    assert run(capsys, "star", "p1", "q1")[:2] == (EXIT_OK, "p1*q1 + h\n")
    assert run(capsys, "star", "1", "q1")[:2] == (EXIT_OK, "q1\n")


def test_star_errors(capsys):
    code, out, err = run(capsys, "star", "p1 +")
    assert code == EXIT_PARSE and out == "" and "position" in err
    assert run(capsys, "star", "p3", "--n", "2")[0] == EXIT_DOMAIN
    assert run(capsys, "star", "p1", "z1")[0] == EXIT_DOMAIN
    assert run(capsys, "--nonsense")[0] == EXIT_PARSE


def test_verify_examples(capsys):
    code, out, _ = run(capsys, "verify", "local-rr", "--k", "1", "--lambda", "zeta(3)", "--N", "1")
    assert code == EXIT_OK and "FAIL" not in out and "PASS" in out
    code, out, _ = run(capsys, "verify", "cocycle", "--k", "1", "--seed", "7")
    assert code == EXIT_OK and "FAIL" not in out
    assert run(capsys, "verify", "local-rr", "--k", "5")[0] == EXIT_UNSUPPORTED


def test_verify_trace_and_homology(capsys):
    assert run(capsys, "verify", "trace", "--lambda=-1,zeta(4)", "--count", "3")[0] == EXIT_OK
    assert run(capsys, "verify", "homology", "--n", "1", "--degree", "3")[0] == EXIT_OK
    assert run(capsys, "verify", "trace", "--lambda", "1")[0] == EXIT_DOMAIN


def test_index_examples(capsys):
    assert run(capsys, "index", "football_z2.model", "--kawasaki")[:2] == (EXIT_OK, "1\n")
    assert run(capsys, "index", "pt_z3_regular.model", "--kawasaki")[:2] == (EXIT_OK, "1\n")
    assert run(capsys, "index", "empty.model")[:2] == (EXIT_OK, "0\n")
    code, out, _ = run(capsys, "index", "football_z3.model", "--oracle")
    assert code == EXIT_OK and "agrees" in out


def test_index_structured_output(capsys):
    code, out, _ = run(capsys, "index", "t2_z2.model", "--kawasaki", "--format", "structured")
    data = json.loads(out)
    assert code == EXIT_OK and data["result"] == "1" and data["mode"] == "kawasaki"


def test_index_errors(capsys, tmp_path):
    bad = football_model(2, 0)
    bad["sectors"][0]["m"] = "one"
    p = tmp_path / "bad.model"
    p.write_text(json.dumps(bad))
    code, out, err = run(capsys, "index", str(p))
    assert code == EXIT_PARSE and "$.sectors[0].m" in err and out == ""
    one = football_model(2, 0)
    one["sectors"][1]["normal_blocks"][0]["lambda"] = "1"
    p.write_text(json.dumps(one))
    assert run(capsys, "index", str(p))[0] == EXIT_DOMAIN
    assert run(capsys, "index", str(tmp_path / "missing.model"))[0] == EXIT_PARSE
    p.write_text(json.dumps(pt_zn_model(2, [0])))
    assert run(capsys, "index", str(p), "--kawasaki")[:2] == (EXIT_OK, "1\n")


def test_at_level_lifts_and_refuses():
    z3 = cyclo_embed_root(3, 1)
    assert at_level(z3, 6) == z3
    assert at_level(z3, 6).level == 6
