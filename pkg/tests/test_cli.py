import math

import pytest

from etdyn.cli import load_system, main, parse_system_text, run, InputError


def spec(tmp_path, name, f, g=None, extra=""):
    body = f'name = "{name}"\nf = "{f}"\n'
    if g is not None:
        body += f'g = "{g}"\n'
    path = tmp_path / f"{name}.spec"
    path.write_text(body + extra)
    return str(path)


@pytest.fixture
def files(tmp_path):
    return {
        "helmet": spec(tmp_path, "helmet", "1+u1+u2", "u3-2"),
        "p2": spec(tmp_path, "P2", "1+u1+u2", "u3+2"),
        "h3": spec(tmp_path, "H3", "1+u1+u2", "u3-3"),
        "g1": spec(tmp_path, "g1", "1+u1+u2", "u3^2+2*u3+10"),
        "bad": spec(tmp_path, "bad", "1+u1+u1*u2", "u3+1"),
        "tmp": tmp_path,
    }


def test_load_system(files, tmp_path):
    s = load_system(files["helmet"])
    assert s.name == "helmet" and str(s.g) == "-2 + u1"
    with pytest.raises(InputError, match="missing key g"):
        load_system(spec(tmp_path, "nog", "1+u1+u2"))
    with pytest.raises(InputError, match="g must be an ordinary polynomial"):
        load_system(spec(tmp_path, "neg", "1+u1+u2", "u3^-1-2"))
    with pytest.raises(InputError):
        load_system(str(tmp_path / "missing.spec"))
    with pytest.raises(InputError, match="cannot parse f"):
        parse_system_text('f = "1+"\ng = "u3-2"')
    with pytest.raises(InputError):
        parse_system_text('f = "1+u1+u2"\ng = "u3-2"\ncolor = "red"')
    s = parse_system_text('# comment\nf = "1+u1+u2"\n\ng = "u3-2"\ntol = "1e-9"')
    assert s.tol == 1e-9


def test_classify(files):
    r = run(["classify", "--system", files["helmet"]])
    assert r.exit_code == 0 and r.text == "ET: yes (a=1, margin=1)"
    r = run(["classify", "--system", files["bad"]])
    assert r.exit_code == 1 and r.text.startswith("ET: no")


def test_mahler():
    r = run(["mahler", "--poly", "u3^2+2*u3+10", "--arity", "1"])
    assert r.exit_code == 0 and "2.302585092994" in r.text
    r = run(["mahler", "--poly", "1+u1+u2", "--log2"])
    assert f"{0.3230659472194505 / math.log(2):.12f}" in r.text
    assert run(["mahler", "--poly", "1+u1+u2", "--arity", "3"]).exit_code == 3


def test_entropy(files):
    r = run(["entropy", "--system", files["g1"], "--lattice", "1,0,0;0,1,-1"])
    assert r.exit_code == 0 and "2.302585092994" in r.text
    assert r.csv.splitlines()[0] == "lattice,variant,value,error"
    r = run(["entropy", "--system", files["helmet"], "--lattice", "1,0,0;0,1,0"])
    assert r.exit_code == 0 and "planar" in r.text
    assert run(["entropy", "--system", files["helmet"]]).exit_code == 3
    assert run(["entropy", "--system", files["helmet"], "--lattice", "1,2,3;2,4,6"]).exit_code == 3
    assert run(["entropy", "--system", files["bad"], "--lattice", "1,0,0;0,1,-1"]).exit_code == 3


def test_equiv_exit_codes(files):
    r = run(["equiv", "--system1", files["helmet"], "--system2", files["p2"], "--bound", "1"])
    assert r.exit_code == 0 and "equivalent" in r.text
    r = run(["equiv", "--system1", files["helmet"], "--system2", files["h3"], "--lattice", "1,0,0;0,1,-1"])
    assert r.exit_code == 1 and "not-equivalent" in r.text
    # mismatched planar data: inconclusive
    r = run(["equiv", "--system1", files["helmet"], "--system2", files["g1"], "--lattice", "1,0,0;0,1,0"])
    assert r.exit_code == 0
    other = spec(files["tmp"], "N", "1+u1^2+u2^2", "u3-2")
    r = run(["equiv", "--system1", files["helmet"], "--system2", other, "--lattice", "1,0,0;0,1,0"])
    assert r.exit_code == 2 and "inconclusive" in r.text


def test_equiv_csv(files, tmp_path):
    out = tmp_path / "eq.csv"
    args = ["equiv", "--system1", files["helmet"], "--system2", files["p2"], "--bound", "1", "--csv", str(out)]
    r1 = run(args)
    first = out.read_bytes()
    r2 = run(args)
    assert out.read_bytes() == first and r1.csv == r2.csv
    lines = first.decode().split("\n")
    assert lines[0] == "lattice,variant1,value1,err1,variant2,value2,err2,verdict"
    assert b"\r" not in first
    assert len(lines) == 34 + 2  # header, rows, trailing newline


def test_mixing(files, tmp_path):
    out = tmp_path / "mix.csv"
    r = run(["mixing", "--system", files["helmet"], "--bound", "2", "--csv", str(out)])
    assert r.exit_code == 0 and "124/124" in r.text
    lines = out.read_text().splitlines()
    assert lines[0] == "n1,n2,n3,status,witness,value,error" and len(lines) == 125
    assert run(["mixing", "--system", files["helmet"], "--bound", "0"]).exit_code == 3


def test_helmet(tmp_path):
    seeds = tmp_path / "seeds.csv"
    seeds.write_text("n1,n2,n3,value\n0,0,0,0.25\n")
    r = run(["helmet", "--dims", "2,2,2", "--seed-file", str(seeds)])
    assert r.exit_code == 0 and "max residual" in r.text
    rows = {tuple(map(int, l.split(",")[:3])): float(l.split(",")[3]) for l in r.csv.splitlines()[1:]}
    assert rows[(0, 0, 1)] == pytest.approx(0.5)
    assert run(["helmet", "--dims", "1,2,2"]).exit_code == 3
    assert run(["helmet", "--dims", "2,x,2"]).exit_code == 3
    seeds.write_text("0,1,1,0.5\n")
    assert run(["helmet", "--dims", "2,2,2", "--seed-file", str(seeds)]).exit_code == 3


def test_parse_and_usage():
    r = run(["parse", "--poly", "2u1(1+u2)", "--arity", "2"])
    assert r.exit_code == 0 and r.text == "2*u1 + 2*u1*u2"
    r = run(["parse", "--poly", "1 +", "--arity", "2"])
    assert r.exit_code == 3
    r = run(["frobnicate"])
    assert r.exit_code == 3 and "usage" in r.text
    assert run(["classify", "--system", "x", "--bogus"]).exit_code == 3
    assert run([]).exit_code == 3


def test_main_prints(files, capsys):
    assert main(["classify", "--system", files["helmet"]]) == 0
    assert "ET: yes" in capsys.readouterr().out
    assert main(["classify"]) == 3
    assert "error" in capsys.readouterr().err
