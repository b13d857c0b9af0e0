import pytest

from avoidstat.avoiders import total_occurrences
from avoidstat.bijection import (BijectionError, ColoredTree, apply_F, apply_F_inverse, apply_f,
                                 apply_f_inverse, classify, colored_trees, has_black_root,
                                 left_subtrees_kept, make_colored, side_patterns,
                                 verify_bijection)
from avoidstat.trees import entry_labels


def node_of(ct, label):
    return {v: k for k, v in entry_labels(ct.tree).items()}[label]


def test_make_colored():
    ct = make_colored((2, 1, 3), (1, 2, 3))
    assert ct.black == (1, 2, 3) and ct.side == "A" and ct.pattern == (2, 1, 3)
    ct = make_colored((2, 3, 1, 4), (1, 3, 4))
    assert ct.entries == (2, 1, 4) and ct.side == "A"
    ct = make_colored((2, 3, 4, 1), (1, 2, 4))
    assert ct.entries == (2, 3, 1) and ct.side == "B"


def test_make_colored_rejects():
    with pytest.raises(BijectionError):
        make_colored((2, 1, 3), (1, 2, 3), q=(1,), t=(1,), u=2, k=1, m=1)  # wrong h
    with pytest.raises(BijectionError):
        make_colored((1, 2, 3), (1, 2, 3))  # 123 is neither side
    with pytest.raises(BijectionError):
        make_colored((1, 3, 2), (1, 2, 3))  # not an avoider


def test_make_colored_with_patterns():
    ct = make_colored((2, 3, 1, 4), (1, 3, 4), q=(1,), t=(1,))
    assert ct.pattern == (2, 1, 3)
    assert make_colored((2, 3, 1, 4), (1, 2, 3), q=(1,), t=(1,)).side == "B"
    with pytest.raises(BijectionError):
        make_colored((3, 2, 1), (1, 2, 3), q=(1,), t=(1,))  # 321 is neither 213 nor 231
    with pytest.raises(BijectionError):
        make_colored((2, 1, 3), (1, 2, 3), q=(1, 2), t=(1,))  # q longer than k


def test_classify_examples():
    assert classify(make_colored((2, 1, 3), (1, 2, 3))).case == 1
    tag = classify(make_colored((2, 3, 1, 4), (1, 3, 4)))
    ct = make_colored((2, 3, 1, 4), (1, 3, 4))
    assert tag.case == 2 and entry_labels(ct.tree)[tag.pivot] == 3
    assert classify(make_colored((2, 3, 1, 4), (2, 3, 4))).case == 1


def test_f_worked_examples():
    a1 = make_colored((2, 1, 3), (1, 2, 3))
    b1 = apply_f(a1)
    assert b1.perm == (2, 3, 1) and b1.black == (1, 2, 3)
    assert apply_f_inverse(b1) == a1
    a2 = make_colored((2, 3, 1, 4), (1, 3, 4))
    b2 = apply_f(a2)
    assert b2.perm == (2, 3, 4, 1) and b2.black == (1, 2, 4) and b2.entries == (2, 3, 1)
    assert apply_f_inverse(b2) == a2
    # ancestor test picks the branch of the inverse
    assert has_black_root(b1) and not has_black_root(b2)


def test_cardinality_three():
    assert len(list(colored_trees(3, (2, 1, 3), 1, 1, 1))) == 1
    assert len(list(colored_trees(3, (2, 3, 1), 1, 1, 1))) == 1


@pytest.mark.parametrize("n", range(3, 8))
def test_f_round_trips_and_agrees_with_F(n):
    for ct in colored_trees(n, (2, 1, 3), 1, 1, 1):
        img = apply_f(ct)
        assert img.pattern == (2, 3, 1)
        assert apply_f_inverse(img) == ct
        assert apply_F(ct) == img
        # case 1 images have a black vertex above the other two, case 2 images do not
        assert has_black_root(img) == (classify(ct).case == 1)
        assert left_subtrees_kept(ct)
    for ct in colored_trees(n, (2, 3, 1), 1, 1, 1):
        assert apply_f(apply_f_inverse(ct)) == ct


@pytest.mark.parametrize("q,t,u,n", [
    ((1,), (1,), 2, 6), ((1, 2), (1,), 1, 6), ((1,), (1, 2), 1, 6), ((1, 2), (1, 2), 2, 7),
    ((2, 1, 3), (1,), 1, 6), ((1,), (1,), 3, 6),
])
def test_F_properties(q, t, u, n):
    a_pat, b_pat = side_patterns(q, t, u)
    k, m = len(q), len(t)
    for ct in colored_trees(n, a_pat, k, m, u):
        tag = classify(ct)
        if tag.case == 2:
            assert tag.pivot not in ct.black
        img = apply_F(ct)
        assert img.pattern == b_pat
        assert has_black_root(img) == (tag.case == 1)
        assert apply_F_inverse(img) == ct
        assert left_subtrees_kept(ct)


def test_six_letter_pair():
    a_pat, b_pat = side_patterns((1, 2), (1, 2), 2)
    assert a_pat == (3, 4, 1, 2, 5, 6) and b_pat == (3, 4, 5, 6, 1, 2)
    # the smallest instance: the pattern coloured in itself
    ct = make_colored(a_pat, tuple(range(1, 7)), k=2, m=2, u=2, q=(1, 2), t=(1, 2))
    img = apply_F(ct)
    assert img.pattern == b_pat and img.perm == b_pat


def test_F_rejects_wrong_side():
    b = make_colored((2, 3, 1), (1, 2, 3))
    with pytest.raises(BijectionError):
        apply_F(b)
    with pytest.raises(BijectionError):
        apply_F_inverse(make_colored((2, 1, 3), (1, 2, 3)))
    with pytest.raises(BijectionError):
        apply_f(b)


def test_verify_rejects_bad_q():
    with pytest.raises(BijectionError):
        verify_bijection(5, (2, 1), (1,), 1)


def test_verify_guard():
    with pytest.raises(BijectionError):
        verify_bijection(13, (1,), (1,), 1)
    with pytest.raises(BijectionError):
        verify_bijection(12, (1,), (1,), 2)


@pytest.mark.parametrize("n,q,t,u", [(3, (1,), (1,), 1), (6, (1,), (1,), 1), (5, (1,), (1,), 2)])
def test_verify_examples(n, q, t, u):
    rep = verify_bijection(n, q, t, u)
    a_pat, b_pat = side_patterns(q, t, u)
    assert rep.ok, rep.counterexample
    assert rep.size_a == rep.size_b == total_occurrences(n, a_pat) == total_occurrences(n, b_pat)


def test_text_format():
    ct = make_colored((2, 3, 1, 4), (1, 3, 4))
    text = ct.to_text()
    assert text == "(((..)(..)).);1,3,4;1,1,1"
    assert ColoredTree.from_text(text) == ct
    with pytest.raises(BijectionError):
        ColoredTree.from_text("(..);1")
    with pytest.raises(BijectionError):
        ColoredTree.from_text("((..).);1,2;1,1,1")  # 2 black, h = 3
