import pytest

from inseq import isa, satc
from inseq.cli import main
from inseq.reduction import build_reachability_formula, normalize_for_reduction
from inseq.sat import to_3cnf
from inseq.semantics import TruthTable, computes
from inseq.synthesis import inseq_from_table


def _file(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_run_examples(tmp_path, capsys):
    p = _file(tmp_path, "p.is", "out.set:T ; !")
    assert _run(capsys, "run", "--input", "", p) == (0, "out=1\n", "")
    q = _file(tmp_path, "q.is", "+in:1.get ; out.set:T ; !")
    assert _run(capsys, "run", "--input", "0", q)[:2] == (0, "out=0\n")
    assert _run(capsys, "run", "--input", "1", q)[:2] == (0, "out=1\n")


def test_run_inaction_exits_1(tmp_path, capsys):
    p = _file(tmp_path, "p.is", "#0")
    code, out, err = _run(capsys, "run", "--input", "", p)
    assert code == 1 and out == "" and "inaction" in err


def test_parse_errors_exit_2(tmp_path, capsys):
    p = _file(tmp_path, "bad.is", "in:1.set:T ; !")
    code, _, err = _run(capsys, "check", p)
    assert code == 2 and err
    code, _, _ = _run(capsys, "run", "--input", "12", _file(tmp_path, "ok.is", "!"))
    assert code == 2
    assert _run(capsys, "check", str(tmp_path / "missing.is"))[0] == 2
    assert _run(capsys, "frobnicate")[0] == 2
    assert _run(capsys)[0] == 2


def test_satc_example(tmp_path, capsys):
    assert _run(capsys, "satc", _file(tmp_path, "i.txt", "110\n")) == (0, "0\n", "")
    assert _run(capsys, "satc", _file(tmp_path, "j.txt", "100\n"))[1] == "1\n"


def test_check_format(tmp_path, capsys):
    p = _file(tmp_path, "p.is", "+in:2.get ; aux:3.set:T ; #3 ; out.set:T ; !")
    assert _run(capsys, "check", p)[1] == "in_arity=2 max_aux=3 max_jump=3 psize=5\n"


def test_table(tmp_path, capsys):
    p = _file(tmp_path, "p.is", "-in:1.get ; out.set:T ; !")
    assert _run(capsys, "table", p, "1")[1] == "n=1\n10\n"
    assert _run(capsys, "table", _file(tmp_path, "d.is", "+in:1.get ; ! ; #0"), "1")[0] == 1


def test_compile_each_kind(tmp_path, capsys):
    t = _file(tmp_path, "t.txt", "n=2\n0110\n")
    code, out, _ = _run(capsys, "compile", "table", t)
    assert code == 0
    x = isa.parse(out)
    assert x == inseq_from_table(TruthTable(2, (False, True, True, False)))
    assert computes(x, TruthTable(2, (False, True, True, False)))

    sources = {
        "cnf": "p cnf 2 2\n1 2 0\n-1 0\n",
        "formula": "v1 & ~v2",
        "circuit": "g1 = AND in1 in2\nout = g1\n",
    }
    expected = {
        "cnf": (False, True, False, False),
        "formula": (False, False, True, False),
        "circuit": (False, False, False, True),
    }
    for kind, text in sources.items():
        code, out, err = _run(capsys, "compile", kind, _file(tmp_path, kind, text))
        assert code == 0, err
        assert computes(isa.parse(out), TruthTable(2, expected[kind])), kind
    assert _run(capsys, "compile", "cnf", _file(tmp_path, "bad.cnf", "p cnf x\n"))[0] == 2


def test_transform(tmp_path, capsys):
    src = "+in:1.get ; out.set:F ; out.set:T ; !"
    p = _file(tmp_path, "p.is", src)
    code, out, _ = _run(capsys, "transform", "eliminate-set-false", p)
    y = isa.parse(out)
    assert code == 0 and "out.set:F" not in out
    assert computes(y, TruthTable(1, (True, True)))
    q = _file(tmp_path, "q.is", "out.set:T ; ! ; out.set:T ; !")
    code, out, _ = _run(capsys, "transform", "normalize", q)
    assert code == 0 and out.count("out.set:T") == 1


def test_reduce_matches_library(tmp_path, capsys):
    src = "+in:2.get ; out.set:T ; !"
    p = _file(tmp_path, "p.is", src)
    m = tmp_path / "map.txt"
    code, out, _ = _run(capsys, "reduce", p, "--fixed", "1", "--m", "1", "--map", str(m))
    rf = build_reachability_formula(normalize_for_reduction(isa.parse(src)), (True,), 1)
    assert code == 0
    assert out == satc.bits_to_text(satc.encode_cnf(to_3cnf(rf.formula))) + "\n"
    assert m.read_text() == rf.variable_map()
    assert m.read_text().splitlines()[:3] == ["1 in:1", "2 in:2", "3 pos:1"]
    assert satc.satc_eval(satc.text_to_bits(out)) is True


def test_reduce_without_target(tmp_path, capsys):
    p = _file(tmp_path, "p.is", "+in:1.get ; !")
    code, out, err = _run(capsys, "reduce", p, "--fixed", "1", "--m", "0")
    assert (code, out) == (0, "110\n") and err
    assert _run(capsys, "reduce", p, "--fixed", "1", "--m", "-1")[0] == 2


def test_rank_unrank(capsys):
    assert _run(capsys, "rank", "v1,~v1,v2") == (0, "7\n", "")
    assert _run(capsys, "unrank", "7") == (0, "v1,~v1,v2\n", "")
    assert _run(capsys, "unrank", "2")[1] == "~v1\n"
    assert _run(capsys, "unrank", "0")[0] == 2
    assert _run(capsys, "rank", "x1")[0] == 2


@pytest.mark.parametrize("i", [1, 5, 14, 41, 100, 175])
def test_rank_unrank_round_trip(capsys, i):
    _, out, _ = _run(capsys, "unrank", str(i))
    assert _run(capsys, "rank", out.strip())[1] == f"{i}\n"
