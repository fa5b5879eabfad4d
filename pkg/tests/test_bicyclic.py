import itertools
import random

import pytest

from tropid.bicyclic import (ELEM_A, ELEM_B, GEN_A, GEN_B, IDENTITY, BicyclicElem,
                             check_adjan_on_B, check_identity, parse_elem, reduce_word,
                             represent, star)
from tropid.identities import adjan_identity
from tropid.matrix import TropMatrix, mmul
from tropid.scalar import NEG_INF
from tropid.text import parse_matrix


def test_reduce_examples():
    assert reduce_word("ab") == IDENTITY
    assert reduce_word("abba") == BicyclicElem(1, 1)
    assert reduce_word("ba") == BicyclicElem(1, 1)
    assert reduce_word("bbaaa") == BicyclicElem(2, 3)
    assert reduce_word("") == IDENTITY
    with pytest.raises(ValueError):
        reduce_word("abc")


def test_star_examples():
    assert star(BicyclicElem(1, 2), BicyclicElem(1, 3)) == BicyclicElem(1, 4)
    assert star(BicyclicElem(1, 2), BicyclicElem(5, 0)) == BicyclicElem(4, 0)
    assert star(ELEM_A, ELEM_B) == IDENTITY
    assert star(ELEM_B, ELEM_A) == BicyclicElem(1, 1)


def test_representation_examples():
    assert represent(BicyclicElem(1, 1)) == TropMatrix(parse_matrix("[[0,2],[-inf,0]]"))
    assert represent(ELEM_A) == GEN_A
    assert represent(ELEM_B) == GEN_B
    # a semigroup morphism only: the unit goes to E, not I
    assert represent(IDENTITY) == TropMatrix(parse_matrix("[[0,0],[-inf,0]]"))
    assert represent(IDENTITY) != TropMatrix.identity(2)


def test_reduction_is_a_morphism():
    rng = random.Random(31)
    for _ in range(500):
        u = "".join(rng.choice("ab") for _ in range(rng.randint(0, 12)))
        v = "".join(rng.choice("ab") for _ in range(rng.randint(0, 12)))
        assert reduce_word(u + v) == star(reduce_word(u), reduce_word(v))


def test_representation_is_a_morphism_and_image_shape():
    for i, j, h, k in itertools.product(range(8), repeat=4):
        x, y = BicyclicElem(i, j), BicyclicElem(h, k)
        assert represent(star(x, y)) == mmul(represent(x), represent(y))
    for i, j in itertools.product(range(10), repeat=2):
        (a, b), (c, d) = represent(BicyclicElem(i, j)).rows
        assert c is NEG_INF and a == -d and b == i + j


def test_representation_is_injective_small():
    images = {represent(BicyclicElem(i, j)) for i in range(20) for j in range(20)}
    assert len(images) == 400


def test_adjan_star_examples():
    assert check_adjan_on_B(ELEM_B, ELEM_A)
    assert check_adjan_on_B(BicyclicElem(2, 3), BicyclicElem(2, 3))
    env = {"A": BicyclicElem(3, 1), "B": BicyclicElem(0, 4)}
    assert check_identity(adjan_identity(), env)


def test_commutativity_fails_in_B():
    from tropid.symbolic import parse_identity
    assert not check_identity(parse_identity("A B = B A"), {"A": ELEM_A, "B": ELEM_B})


@pytest.mark.parametrize("text,elem", [("(2, 5)", BicyclicElem(2, 5)), ("b^3 a^2", BicyclicElem(3, 2)),
                                       ("b a", BicyclicElem(1, 1)), ("a^4", BicyclicElem(0, 4)),
                                       ("b^2", BicyclicElem(2, 0)), ("abba", BicyclicElem(1, 1)),
                                       ("1", IDENTITY)])
def test_parse_elem(text, elem):
    assert parse_elem(text) == elem


@pytest.mark.parametrize("text", ["", "(1,)", "(-1,2)", "c", "a^2 b"])
def test_parse_elem_rejects(text):
    with pytest.raises(ValueError):
        parse_elem(text)
