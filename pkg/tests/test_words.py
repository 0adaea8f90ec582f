"""Word arithmetic, pinch reduction, and canonical normal forms."""

import random

import pytest

from bstwist.errors import WordSyntaxError
from bstwist.words import (
    A, B, GroupSpec, Word, are_equal, britton_reduce, exp_sum, format_word,
    invert, multiply, normal_form, parse_word, power, relator, standardize,
    substitute, word,
)

GRID = [GroupSpec(1, 2), GroupSpec(1, 3), GroupSpec(1, -2), GroupSpec(2, 3),
        GroupSpec(2, -3), GroupSpec(2, -2), GroupSpec(2, 2), GroupSpec(3, 3)]


def random_word(rng, max_syllables=12):
    return word([(rng.choice((A, B)), rng.choice((-3, -2, -1, 1, 2, 3)))
                 for _ in range(rng.randrange(max_syllables + 1))])


class TestParsing:
    def test_basic(self):
        w = parse_word("a^-1 b^2 a")
        assert [(s.base, s.exp) for s in w] == [(A, -1), (B, 2), (A, 1)]

    def test_capitals_are_inverses(self):
        assert parse_word("A B") == word([(A, -1), (B, -1)])

    def test_capitals_with_exponent(self):
        assert parse_word("B^3") == word([(B, -3)])

    def test_free_reduction_on_parse(self):
        # b B cancels, then the b after it stands alone
        w = parse_word("A b B b a")
        assert [(s.base, s.exp) for s in w] == [(A, -1), (B, 1), (A, 1)]

    def test_compact_text(self):
        assert parse_word("a^2b^-1") == word([(A, 2), (B, -1)])

    def test_identity_token(self):
        assert parse_word("1") == Word()
        assert parse_word(" 1 ") == Word()

    def test_empty_text(self):
        assert parse_word("") == Word()
        assert parse_word("   ") == Word()

    def test_syntax_error_position(self):
        with pytest.raises(WordSyntaxError) as info:
            parse_word("a c")
        assert info.value.position == 1
        assert info.value.token == "c"

    def test_bad_caret(self):
        with pytest.raises(WordSyntaxError):
            parse_word("a^x")

    def test_format_round_trip(self):
        rng = random.Random(7)
        for _ in range(300):
            w = random_word(rng)
            assert parse_word(format_word(w)) == w

    def test_format_identity(self):
        assert format_word(Word()) == "1"


class TestFreeArithmetic:
    def test_multiply_cascades(self):
        u = parse_word("a b a")
        v = parse_word("a^-1 b^-1 a^-1")
        assert multiply(u, v) == Word()

    def test_invert_involutive_and_inverse(self):
        rng = random.Random(11)
        for _ in range(200):
            w = random_word(rng)
            assert invert(invert(w)) == w
            assert multiply(w, invert(w)) == Word()

    def test_power(self):
        w = parse_word("a b")
        assert power(w, 3) == parse_word("a b a b a b")
        assert power(w, -2) == invert(power(w, 2))
        assert power(w, 0) == Word()

    def test_word_rejects_unreduced(self):
        from bstwist.words import Syllable
        with pytest.raises(ValueError):
            Word((Syllable(A, 1), Syllable(A, 2)))

    def test_exp_sum(self):
        w = parse_word("a^-1 b^2 a b^-5")
        assert exp_sum(w, A) == 0
        assert exp_sum(w, B) == -3


class TestBritton:
    def test_forward_pinch(self):
        g = GroupSpec(2, 3)
        assert britton_reduce(parse_word("a^-1 b^2 a"), g) == parse_word("b^3")

    def test_backward_pinch(self):
        g = GroupSpec(2, 3)
        assert britton_reduce(parse_word("a b^3 a^-1"), g) == parse_word("b^2")

    def test_blocked_pinch_left_alone(self):
        g = GroupSpec(2, 3)
        w = parse_word("a^-1 b a")
        assert britton_reduce(w, g) == w

    def test_nested_pinches(self):
        g = GroupSpec(1, 2)
        w = parse_word("a^-2 b a^2")
        assert britton_reduce(w, g) == parse_word("b^4")

    def test_relator_trivial_on_grid(self):
        for g in GRID:
            assert britton_reduce(relator(g), g) == Word()

    def test_pinch_grid(self):
        for g in GRID:
            for t in range(-5, 6):
                lhs = word([(A, -1), (B, g.m * t), (A, 1)])
                assert britton_reduce(lhs, g) == word([(B, g.n * t)])

    def test_negative_m_pinch(self):
        g = GroupSpec(-2, 3)
        assert britton_reduce(parse_word("a^-1 b^-2 a"), g) == parse_word("b^3")

    def test_reduced_word_is_fixed_point(self):
        rng = random.Random(5)
        for g in GRID:
            for _ in range(100):
                r = britton_reduce(random_word(rng), g)
                assert britton_reduce(r, g) == r


class TestNormalForm:
    def test_coset_range_positive_a(self):
        g = GroupSpec(2, 3)
        nf = normal_form(parse_word("b^5 a"), g).word
        # b-exponent before a must lie in [0, m)
        assert nf == parse_word("b a b^6")

    def test_coset_range_negative_a(self):
        g = GroupSpec(2, 3)
        nf = normal_form(parse_word("b^5 a^-1"), g).word
        # b-exponent before a^-1 must lie in [0, n)
        assert nf == parse_word("b^2 a^-1 b^2")

    def test_idempotent(self):
        rng = random.Random(13)
        for g in GRID:
            for _ in range(100):
                nf = normal_form(random_word(rng), g).word
                assert normal_form(nf, g).word == nf

    def test_canonical_iff_equal(self):
        rng = random.Random(17)
        for g in GRID:
            for _ in range(150):
                u, v = random_word(rng), random_word(rng)
                same = are_equal(u, v, g)
                assert (normal_form(u, g).word == normal_form(v, g).word) == same

    def test_normal_form_preserves_element(self):
        rng = random.Random(19)
        for g in GRID:
            for _ in range(100):
                w = random_word(rng)
                assert are_equal(w, normal_form(w, g).word, g)


class TestEquality:
    def test_relation_instances(self):
        g = GroupSpec(2, 3)
        assert are_equal(parse_word("a^-1 b^2 a"), parse_word("b^3"), g)
        assert not are_equal(parse_word("a^-1 b a"), parse_word("b"), g)

    def test_equality_is_congruence(self):
        rng = random.Random(23)
        g = GroupSpec(2, 3)
        for _ in range(50):
            u, c = random_word(rng), random_word(rng)
            v = multiply(multiply(c, relator(g)), multiply(invert(c), u))
            assert are_equal(u, v, g)

    def test_torsion_free_sample(self):
        g = GroupSpec(2, 3)
        for text in ("a", "b", "a b", "a^-1 b^2"):
            w = parse_word(text)
            for k in (2, 3):
                assert not are_equal(power(w, k), Word(), g)


class TestSubstitute:
    def test_simple(self):
        w = parse_word("a b^2")
        out = substitute(w, parse_word("a^3"), parse_word("b a"))
        assert out == parse_word("a^3 b a b a")

    def test_homomorphism_property(self):
        rng = random.Random(29)
        ia, ib = parse_word("a b"), parse_word("b^2")
        for _ in range(100):
            u, v = random_word(rng), random_word(rng)
            assert substitute(multiply(u, v), ia, ib) == \
                multiply(substitute(u, ia, ib), substitute(v, ia, ib))


class TestStandardize:
    @pytest.mark.parametrize("m,n,mm,nn", [
        (2, 3, 2, 3),
        (-2, -3, 2, 3),
        (3, 2, 2, 3),
        (-3, 2, 2, -3),
        (2, -3, 2, -3),
        (1, 1, 1, 1),
        (-1, -1, 1, 1),
        (1, -1, 1, -1),
        (-5, -5, 5, 5),
    ])
    def test_target_indices(self, m, n, mm, nn):
        target, _ = standardize(GroupSpec(m, n))
        assert (target.m, target.n) == (mm, nn)
        assert 0 < target.m <= abs(target.n)

    def test_map_kills_relator(self):
        # the generator map must send the source relator to 1 in the target
        for m in range(-3, 4):
            for n in range(-3, 4):
                if m == 0 or n == 0:
                    continue
                source = GroupSpec(m, n)
                target, (ia, ib) = standardize(source)
                image = substitute(relator(source), ia, ib)
                assert are_equal(image, Word(), target), (m, n)

    def test_map_is_invertible_on_generators(self):
        # images are a or a^-1 and b, so the map is onto
        for source in (GroupSpec(3, 2), GroupSpec(-2, -3), GroupSpec(-3, 2)):
            _, (ia, ib) = standardize(source)
            assert ia in (parse_word("a"), parse_word("a^-1"))
            assert ib == parse_word("b")


class TestGroupSpec:
    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            GroupSpec(0, 2)
        with pytest.raises(ValueError):
            GroupSpec(2, 0)

    def test_case_flags(self):
        assert GroupSpec(1, 5).is_solvable_case
        assert GroupSpec(3, 3).is_equal_case
        assert GroupSpec(2, -2).is_minus_case
        assert not GroupSpec(2, 3).is_solvable_case
