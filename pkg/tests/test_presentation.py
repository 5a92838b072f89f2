import pytest

from twalex.exprio import parse_word
from twalex.freegroup import Word, abelian_degree
from twalex.presentation import Presentation, braid_group, validate, welded_braid_group


def test_b3():
    p = braid_group(3)
    assert p.gens == ("s1", "s2")
    assert p.m == 1
    assert p.relators[0] == parse_word("s1 s2 s1 s2^-1 s1^-1 s2^-1", p.gens)


def test_b4_relator_order():
    p = braid_group(4)
    assert p.labels == ("[1,2]", "[1,3]", "[2,3]")
    assert p.relators[1] == parse_word("s1 s3 s1^-1 s3^-1", p.gens)
    assert p.relators[2] == parse_word("s2 s3 s2 s3^-1 s2^-1 s3^-1", p.gens)


@pytest.mark.parametrize("n", range(2, 9))
def test_braid_relator_count(n):
    p = braid_group(n)
    assert p.l == n - 1
    assert p.m == (n - 1) * (n - 2) // 2
    assert validate(p).valid


def test_wb3_relators():
    p = welded_braid_group(3)
    assert p.gens == ("s1", "s2", "t1", "t2")
    expected = [
        "s1 s2 s1 s2^-1 s1^-1 s2^-1",
        "t1 t2 t1 t2^-1 t1^-1 t2^-1",
        "t1 t1",
        "t2 t2",
        "s1 t2 t1 s2^-1 t1^-1 t2^-1",
        "t1 s2 s1 t2^-1 s1^-1 s2^-1",
    ]
    assert [r.to_text(p.gens) for r in p.relators] == expected
    assert p.abel == (1, 1, 0, 0)


@pytest.mark.parametrize("n", range(2, 7))
def test_welded_balance(n):
    p = welded_braid_group(n)
    assert p.l == 2 * (n - 1)
    assert all(abelian_degree(r, p.abel) == 0 for r in p.relators)
    assert validate(p).valid


def test_validate_reports():
    r = validate(braid_group(3))
    assert (r.valid, r.l, r.m, r.degenerate) == (True, 2, 1, False)
    r = validate(braid_group(4))
    assert (r.l, r.m) == (3, 3)
    bad = Presentation("bad", ("s1",), (Word.gen(0),), (1,))
    r = validate(bad)
    assert not r.valid
    assert "unbalanced" in r.problems[0]


def test_validate_flags_degenerate_and_duplicates():
    p = Presentation("free", ("x", "y", "w"), (), (1, 1, 1))
    assert validate(p).degenerate
    dup = Presentation("dup", ("x", "x"), (), (1, 1))
    assert not validate(dup).valid


def test_small_n_rejected():
    with pytest.raises(ValueError):
        braid_group(1)
    with pytest.raises(ValueError):
        welded_braid_group(1)


def test_gen_index():
    p = braid_group(4)
    assert p.gen_index("s3") == 2
    with pytest.raises(KeyError):
        p.gen_index("s9")
