"""CLI exit codes, artifact determinism, and the embedded selfcheck."""

import pytest

from symindep import avoidance, cli


@pytest.fixture()
def golden_spec(tmp_path):
    path = tmp_path / "golden.sft"
    path.write_text("p=2\nkind=sft\nforbidden=11\n")
    return str(path)


@pytest.fixture()
def tm_spec(tmp_path):
    path = tmp_path / "tm.sub"
    path.write_text("p=2\nkind=substitution\nrules=0:01;1:10\n")
    return str(path)


def run_to_file(tmp_path, name, argv):
    out = tmp_path / name
    code = cli.main(argv + ["--out", str(out)])
    return code, out.read_bytes() if out.exists() else b""


def test_families_ok(tmp_path):
    code, body = run_to_file(
        tmp_path, "fam.txt", ["families", "--set", "100;0,2,4,6", "--window", "2"]
    )
    assert code == 0
    assert b"syndetic_with_gap" in body


def test_indep_density_csv(tmp_path, golden_spec):
    code, body = run_to_file(
        tmp_path,
        "prof.csv",
        ["indep", "density", "--spec", golden_spec, "--targets", "0,1", "--K", "8"],
    )
    assert code == 0
    lines = body.decode().strip().splitlines()
    assert lines[0] == "k,a_k,ratio"
    assert lines[1] == "1,1,1"
    assert lines[8] == "8,4,1/2"


def test_indep_check_conclusive_false_is_exit_zero(tmp_path, golden_spec):
    code, body = run_to_file(
        tmp_path,
        "check.txt",
        ["indep", "check", "--spec", golden_spec, "--targets", "0,1", "--set", "4;0,1"],
    )
    assert code == 0
    assert b"independent=False" in body


def test_avoid_solves(tmp_path):
    code, body = run_to_file(
        tmp_path,
        "x.txt",
        ["avoid", "--p", "2", "--m", "6", "--l", "1", "--seed", "42", "--len", "200"],
    )
    assert code == 0
    word, verdict = body.decode().splitlines()
    assert len(word) == 200 and set(word) <= {"0", "1"}
    assert "verified" in verdict


def test_avoid_dead_end_is_inconclusive(tmp_path):
    instance = tmp_path / "dead.inst"
    instance.write_text("2 2 2 3\n0: 00\n1: 01,11\n2: 00,01\n")
    code, body = run_to_file(
        tmp_path, "dead.txt", ["avoid", "--instance", str(instance), "--len", "10"]
    )
    assert code == 1
    assert b"exhausted" in body


def test_single_not_found_is_inconclusive(tmp_path, golden_spec):
    code, body = run_to_file(
        tmp_path,
        "single.txt",
        [
            "indep", "single", "--spec", golden_spec, "--targets", "1",
            "--family", "explicit:5;0,1", "--horizon", "5",
        ],
    )
    assert code == 1
    assert b"found=false" in body


def test_obstruct_certificate(tmp_path, tm_spec):
    code, body = run_to_file(
        tmp_path,
        "cert.txt",
        ["obstruct", "--spec", tm_spec, "--set", "30;" + ",".join(map(str, range(30))),
         "--depth", "10"],
    )
    assert code == 0
    assert b"[refutation]" in body and b"core=0,1,2" in body


def test_missing_file_is_invalid(tmp_path):
    code = cli.main(["subshift", "--spec", str(tmp_path / "absent.sft"), "--lang", "2"])
    assert code == 3


def test_malformed_window_is_invalid(tmp_path, golden_spec):
    code = cli.main(
        ["indep", "check", "--spec", golden_spec, "--targets", "0,1", "--set", "oops"]
    )
    assert code == 3


def test_unknown_subcommand_is_invalid(capsys):
    assert cli.main(["frobnicate"]) == 3
    capsys.readouterr()


def test_selfcheck_passes(tmp_path):
    code, body = run_to_file(tmp_path, "self.txt", ["selfcheck"])
    assert code == 0
    assert body.decode().count("ok ") == 4


def test_selfcheck_fault_injection(tmp_path, monkeypatch, capsys):
    real = avoidance.bookkeeping

    def off_by_one(instance, count):
        bk = real(instance, count)
        poisoned = bk.c[:10] + (frozenset(bk.c[10] | {0}),) + bk.c[11:]
        return avoidance.Bookkeeping(bk.p, bk.m, bk.b, poisoned, bk.d)

    monkeypatch.setattr(avoidance, "bookkeeping", off_by_one)
    code = cli.main(["selfcheck"])
    err = capsys.readouterr().err
    assert code == 2
    assert "appendix-verify_bounds" in err


def test_artifact_determinism(tmp_path, golden_spec, tm_spec):
    commands = {
        "families": ["families", "--family", "ip:1+2+4", "--horizon", "50"],
        "subshift": ["subshift", "--spec", golden_spec, "--lang", "5"],
        "indep": ["indep", "density", "--spec", golden_spec, "--targets", "0,1", "--K", "6"],
        "avoid": ["avoid", "--p", "2", "--m", "6", "--l", "1", "--seed", "9", "--len", "150"],
        "obstruct": ["obstruct", "--spec", tm_spec,
                     "--set", "25;" + ",".join(map(str, range(25))), "--depth", "8"],
        "construct": ["construct", "--toy", "2"],
        "explore": ["explore", "--p", "2", "--l", "1", "--trials", "3", "--seed", "5",
                    "--len", "100"],
    }
    for name, argv in commands.items():
        outputs = set()
        for run in range(3):
            code, body = run_to_file(tmp_path, f"{name}.{run}", argv)
            assert code == 0, name
            outputs.add(body)
        assert len(outputs) == 1, f"{name} artifacts differ between runs"
