import random
from fractions import Fraction as F

import pytest

from tropid.identities import U2_NORMALISED, check_identity_symbolic
from tropid.matrix import DimensionError, TropMatrix, madd, mpow, substitute
from tropid.poly import TropPoly
from tropid.scalar import NEG_INF
from tropid.symbolic import (Identity, Word, evaluate_word, evaluate_word_symbolic,
                             matrices_e_equivalent, parse_identity, parse_word,
                             substitute_assignment, template_assignment)
from tropid.text import ParseError, parse_matrix, parse_poly

A11 = TropMatrix([[-1, 1], [NEG_INF, 1]])
B11 = TropMatrix([[1, 1], [NEG_INF, -1]])


def M(text):
    return TropMatrix(parse_matrix(text))


def test_parse_word_and_identity():
    w = parse_word("A B^2 A")
    assert w.letters == ("A", "B", "B", "A")
    assert w.runs() == [("A", 1), ("B", 2), ("A", 1)]
    assert str(w) == "A B^2 A"
    assert parse_word("AB^2A") == w
    ident = parse_identity("X1 X2 = X2 X1")
    assert ident.alphabet == ("X1", "X2")
    assert str(parse_identity("A A B = B A^2")) == "A^2 B = B A^2"


@pytest.mark.parametrize("text", ["A = ", "A B", "A = B = C", "A^0 = A", "a = A", "A = B^"])
def test_bad_identities(text):
    with pytest.raises(ParseError):
        parse_identity(text)


def test_word_substitution():
    w = parse_word("A B A").substitute({"A": Word(("A", "A"))})
    assert str(w) == "A^2 B A^2"
    with pytest.raises(ValueError):
        Word(())


def test_bicyclic_generator_products():
    env = {"A": A11, "B": B11}
    assert evaluate_word(parse_word("A B"), env) == M("[[0,0],[-inf,0]]")
    assert evaluate_word(parse_word("B A"), env) == M("[[0,2],[-inf,0]]")
    assert evaluate_word(parse_word("A"), env) == A11


def test_unbound_and_mismatched_letters():
    with pytest.raises(KeyError):
        evaluate_word(parse_word("A C"), {"A": A11})
    with pytest.raises(DimensionError):
        evaluate_word(parse_word("A B"), {"A": A11, "B": TropMatrix.identity(3)})


def test_single_letter_symbolic_is_template():
    t = template_assignment(["A"], [["var", "var"], ["var", "var"]])
    assert evaluate_word_symbolic(parse_word("A"), t) == t["A"]


def test_template_numbering():
    t = template_assignment(["A", "B"], U2_NORMALISED)
    assert t["A"][0, 1] == parse_poly("x1", 4)
    assert t["A"][1, 1] == parse_poly("x2", 4)
    assert t["B"][0, 1] == parse_poly("x3", 4)
    assert t["B"][1, 0] == TropPoly.zero(4)
    assert t["B"][0, 0] == TropPoly.one(4)


def test_matrix_polynomials_differ_where_scalar_ones_agree():
    a = M("[[-inf,0],[0,-inf]]")
    i = TropMatrix.identity(2)
    assert madd(madd(mpow(a, 2), a), i) == M("[[0,0],[0,0]]")
    # A^2 is the identity, so G(A) = A^2 + I = I; the two matrix polynomials differ at A
    assert madd(mpow(a, 2), i) == i
    assert madd(madd(mpow(a, 2), a), i) != madd(mpow(a, 2), i)


def test_substitute_at_neg_inf():
    t = template_assignment(["A"], [[0, "var"], ["-inf", "var"]])["A"]
    assert substitute(t, (NEG_INF, NEG_INF)) == M("[[0,-inf],[-inf,-inf]]")


def test_matrix_equivalence_self_and_distinct():
    t = template_assignment(["A", "B"], U2_NORMALISED)
    ab = evaluate_word_symbolic(parse_word("A B"), t)
    ba = evaluate_word_symbolic(parse_word("B A"), t)
    assert matrices_e_equivalent(ab, ab)
    verdict = matrices_e_equivalent(ab, ba)
    assert not verdict
    assert verdict.offending == (0, 1)
    point = verdict.witness
    concrete = substitute_assignment(t, point)
    assert evaluate_word(parse_word("A B"), concrete) != evaluate_word(parse_word("B A"), concrete)


def test_upper_triangular_template_entries():
    t = template_assignment(["A", "B"], U2_NORMALISED)
    ident = parse_identity("A B^2 A A B A B^2 A = A B^2 A B A A B^2 A")
    f = evaluate_word_symbolic(ident.lhs, t)
    g = evaluate_word_symbolic(ident.rhs, t)
    assert f[0, 0] == g[0, 0] == TropPoly.one(4)
    assert f[1, 0].is_neg_inf and g[1, 0].is_neg_inf
    assert f[1, 1] == g[1, 1] == parse_poly("x2^5*x4^5", 4)
    assert check_identity_symbolic(ident, t)


def _random_template(rng, letters, m):
    out = {}
    for x in letters:
        rows = []
        for _ in range(2):
            row = []
            for _ in range(2):
                if rng.random() < 0.15:
                    row.append(TropPoly.zero(m))
                else:
                    exps = tuple(rng.randint(0, 2) for _ in range(m))
                    row.append(TropPoly(m, [(exps, F(rng.randint(-3, 3)))]))
            rows.append(row)
        out[x] = TropMatrix(rows)
    return out


def test_diagram_commutes():
    rng = random.Random(21)
    for _ in range(150):
        m = rng.randint(1, 4)
        letters = ["A", "B", "C"][: rng.randint(1, 3)]
        word = Word(tuple(rng.choice(letters) for _ in range(rng.randint(1, 8))))
        t = _random_template(rng, letters, m)
        point = tuple(NEG_INF if rng.random() < 0.1 else F(rng.randint(-9, 9), rng.randint(1, 3))
                      for _ in range(m))
        sym = substitute(evaluate_word_symbolic(word, {x: t[x] for x in word.alphabet}), point)
        conc = evaluate_word(word, {x: substitute(t[x], point) for x in word.alphabet})
        assert sym == conc


def test_equivalence_implies_concrete_equality():
    t = template_assignment(["A", "B"], U2_NORMALISED)
    ident = parse_identity("A B^2 A A B A B^2 A = A B^2 A B A A B^2 A")
    rng = random.Random(22)
    for _ in range(100):
        point = tuple(F(rng.randint(-20, 20), rng.randint(1, 4)) for _ in range(4))
        env = substitute_assignment(t, point)
        assert evaluate_word(ident.lhs, env) == evaluate_word(ident.rhs, env)


def test_identity_type_substitute():
    ident = Identity(parse_word("A B"), parse_word("B A"))
    assert str(ident.substitute({"A": parse_word("A A")})) == "A^2 B = B A^2"
