from liveupdate.formula import (
    atom,
    canonical,
    f_and,
    f_eventually,
    f_globally,
    f_iff,
    f_implies,
    f_next,
    f_or,
    f_release,
    f_until,
    natom,
    neg,
    prop_equivalent,
    subformulas,
    t_false,
    t_true,
)
from liveupdate.parser import parse_formula

a, b, c = atom("a"), atom("b"), atom("c")


def test_hash_consing_identity():
    assert f_until(a, b) is f_until(a, b)
    assert f_and((a, b)) is f_and((b, a))
    assert f_and((a, b)).key == f_and((b, a)).key


def test_constant_folding():
    assert f_and((a, t_true())) is a
    assert f_and((a, t_false())) is t_false()
    assert f_or((a, t_true())) is t_true()
    assert f_or((a, t_false())) is a
    assert f_next(t_true()) is t_true()
    assert f_until(a, t_true()) is t_true()
    assert f_until(t_false(), b) is b
    assert f_release(t_true(), b) is b


def test_complement_and_absorption():
    assert f_and((a, natom("a"))) is t_false()
    assert f_or((a, natom("a"))) is t_true()
    assert f_and((a, f_or((a, b)))) is a
    assert f_or((a, f_and((a, b)))) is a


def test_flatten_dedup():
    f = f_and((a, f_and((b, a))))
    assert f.kind == "and"
    assert set(f.children) == {a, b}


def test_neg_is_pnf_involution():
    f = parse_formula("G (a -> X F b) && (a U (b R c))")
    g = neg(f)
    for sub in subformulas(g):
        assert sub.kind != "not"  # negation exists only as natom
    assert neg(g) is f


def test_neg_dualities():
    assert neg(f_until(a, b)) is f_release(natom("a"), natom("b"))
    assert neg(f_next(a)) is f_next(natom("a"))
    assert neg(f_and((a, b))) is f_or((natom("a"), natom("b")))


def test_sugar():
    assert f_eventually(a) is f_until(t_true(), a)
    assert f_globally(a) is f_release(t_false(), a)
    assert f_implies(a, b) is f_or((natom("a"), b))
    assert f_iff(a, a) is t_true()


def test_print_parse_roundtrip():
    for text in ["a U b", "G (m1 -> X F i1)", "F a && G b || X (a U b R c)",
                 "!a && !(b U c)", "true", "false", "X X a"]:
        f = parse_formula(text)
        assert parse_formula(str(f)) is f


def test_canonical_two_level():
    deep = f_or((f_and((a, f_or((b, f_and((c, a)))))), c))
    g = canonical(deep)
    # or-of-ands over units only
    assert g.kind in ("or", "and", "atom")
    if g.kind == "or":
        for d in g.children:
            assert d.kind != "or"


def test_prop_equivalent_opaque_blocks():
    f = f_or((f_eventually(a), f_eventually(a)))
    assert prop_equivalent(f, f_eventually(a))
    assert not prop_equivalent(f_eventually(a), f_next(f_eventually(a)))
    assert prop_equivalent(f_or((a, natom("a"))), t_true())


def test_atoms_and_depth():
    f = parse_formula("G (m1 -> X F i1)")
    assert f.atoms == {"m1", "i1"}
    assert f.temporal_depth == 3  # R over X over U
    assert not f.is_release_free()
    assert parse_formula("F i1").is_release_free()
