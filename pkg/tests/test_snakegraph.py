import random
from collections import Counter

import networkx as nx
import pytest

from dyck_cluster.dyckcore import DyckPath, PeakPath, enumerate_S
from dyck_cluster.errors import IndexRangeError, InvalidInputError
from dyck_cluster.laurent import canonical_string
from dyck_cluster.shiftcat import enumerate_subchains, parse_chain
from dyck_cluster.snakegraph import (
    E, HWord, Letter, LetterKind, PerfectMatching, SnakeGraph, Step, alphabet,
    compatibility_relation, edge_letters, enumerate_matchings, is_matching_of,
    letter_path, matching_count, matching_weight, parse_letter, parse_word,
    reflect, restricted_words, snake_from_subchain, sub_snake, support_snake,
    word_from_matching, words_X_C,
)

EXAMPLE = "j1,i2,j4"
R, U = Step.RIGHT, Step.ABOVE


def chains_up_to(nmax, nmin=3):
    return [c for n in range(nmin, nmax + 1) for c in enumerate_subchains(n)]


class TestAlphabet:
    def test_letters_of_h3(self):
        assert letter_path(E, 3) == DyckPath("UUUDDD")
        assert letter_path(Letter(LetterKind.U1, 1), 3) == DyckPath("UUDDUD")
        assert letter_path(Letter(LetterKind.U2, 1), 3) == DyckPath("UDUUDD")

    def test_letter_paths_are_distinct(self):
        paths = [letter_path(sym, 6) for sym in alphabet(6)]
        assert len(alphabet(6)) == 9
        assert len(set(paths)) == len(paths)

    def test_letter_outside_alphabet(self):
        with pytest.raises(InvalidInputError):
            letter_path(Letter(LetterKind.U1, 3), 4)

    def test_weights(self):
        assert Letter(LetterKind.U1, 3).weight_index() == 4
        assert Letter(LetterKind.U2, 3).weight_index() == 3
        assert E.weight_index() == 0

    @pytest.mark.parametrize("token", ["U3^1", "U1^", "U1^x", "e"])
    def test_parse_letter_rejects(self, token):
        with pytest.raises(InvalidInputError):
            parse_letter(token)


class TestWords:
    def test_parse_and_render(self):
        word = parse_word("U2^1.U1^2.U1^3", 5)
        assert word.letters == (
            Letter(LetterKind.U2, 1), Letter(LetterKind.U1, 2), Letter(LetterKind.U1, 3),
        )
        assert str(word) == "U2^1.U1^2.U1^3"

    def test_empty_word_for_n2(self):
        assert parse_word("", 2) == HWord(2, ())

    def test_position_checked(self):
        with pytest.raises(InvalidInputError):
            parse_word("U1^2.E.E", 5)

    def test_length_checked(self):
        with pytest.raises(InvalidInputError):
            parse_word("E.E", 5)


class TestSnake:
    def test_example_shape(self):
        g = snake_from_subchain(parse_chain(EXAMPLE, 5))
        assert g.steps == (R, R, U)
        assert g.d == 4
        assert g.tiles() == [(0, 0), (1, 0), (2, 0), (2, 1)]

    def test_zigzag_shape(self):
        g = snake_from_subchain(parse_chain("j1,i3,j5", 6))
        assert g.steps == (R, U, U, R)

    def test_single_tile(self):
        g = snake_from_subchain(parse_chain("j1", 2))
        assert g.steps == ()
        assert g.d == 1
        assert matching_count(g) == 2

    @pytest.mark.parametrize("c", chains_up_to(7), ids=str)
    def test_snakes_are_valid(self, c):
        assert snake_from_subchain(c).is_valid()

    def test_staircase_is_valid(self):
        assert SnakeGraph((R, U, R, U)).is_valid()

    def test_reflect(self):
        g = snake_from_subchain(parse_chain(EXAMPLE, 5))
        mirrored = reflect(g)
        assert mirrored.steps == (U, U, R)
        assert reflect(mirrored) == g
        assert matching_count(mirrored) == matching_count(g)

    @pytest.mark.parametrize("c", chains_up_to(7), ids=str)
    def test_reflect_keeps_words(self, c):
        def words(g):
            return Counter(str(word_from_matching(p, g, c)) for p in enumerate_matchings(g))

        pieces = [snake_from_subchain(c)] + [support_snake(y, c) for y in enumerate_S(c.n)]
        for g in pieces:
            assert words(reflect(g)) == words(g)

    def test_sub_snake_range(self):
        g = snake_from_subchain(parse_chain(EXAMPLE, 5))
        with pytest.raises(IndexRangeError):
            sub_snake(g, 2, 5)

    def test_support_snake_keeps_parent_labels(self):
        c = parse_chain(EXAMPLE, 5)
        g = support_snake(PeakPath(5, 2, 3), c)
        assert (g.first, g.steps, g.lead, g.trail) == (2, (R,), R, U)
        assert sorted(str(letter) for letter in edge_letters(g).values()) == [
            "U1^2", "U1^3", "U2^1", "U2^2",
        ]

    def test_json(self):
        g = snake_from_subchain(parse_chain(EXAMPLE, 5))
        assert g.to_json() == {"steps": ["R", "R", "U"], "first": 1, "lead": None, "trail": None}


class TestMatchings:
    def test_example_count(self):
        g = snake_from_subchain(parse_chain(EXAMPLE, 5))
        assert matching_count(g) == 7
        assert len(enumerate_matchings(g)) == 7

    @pytest.mark.parametrize("steps, count", [
        ((), 2),
        ((R,), 3),
        ((R, R), 5),
        ((R, R, R), 8),
        ((R, U), 4),
        ((R, U, R), 5),
    ])
    def test_straight_and_zigzag_counts(self, steps, count):
        assert matching_count(SnakeGraph(steps)) == count

    @pytest.mark.parametrize("c", chains_up_to(7), ids=str)
    def test_enumeration_matches_transfer_count(self, c):
        g = snake_from_subchain(c)
        graph = g.graph()
        matchings = enumerate_matchings(g)
        assert len(matchings) == matching_count(g)
        assert len(set(matchings)) == len(matchings)
        for p in matchings:
            assert nx.is_perfect_matching(graph, set(p.edges))
        for y in enumerate_S(c.n):
            piece = support_snake(y, c)
            assert len(enumerate_matchings(piece)) == matching_count(piece)

    @pytest.mark.parametrize("d", [1, 2, 5, 10, 15, 20])
    def test_long_straight_and_zigzag_snakes(self, d):
        straight = SnakeGraph((R,) * (d - 1))
        zigzag = SnakeGraph(tuple(R if k % 2 == 0 else U for k in range(d - 1)))
        assert len(enumerate_matchings(straight)) == matching_count(straight)
        assert len(enumerate_matchings(zigzag)) == matching_count(zigzag) == d + 1

    @pytest.mark.parametrize("seed", range(10))
    def test_random_snakes(self, seed):
        rng = random.Random(seed)
        d = rng.randint(2, 20)
        g = SnakeGraph(tuple(rng.choice((R, U)) for _ in range(d - 1)))
        assert g.is_valid()
        assert len(enumerate_matchings(g)) == matching_count(g)

    def test_is_matching_of(self):
        g = SnakeGraph(())
        assert is_matching_of(PerfectMatching((((0, 0), (0, 1)), ((1, 0), (1, 1)))), g)
        assert not is_matching_of(PerfectMatching((((0, 0), (0, 1)),)), g)
        assert not is_matching_of(PerfectMatching((((0, 0), (1, 1)), ((0, 1), (1, 0)))), g)

    def test_word_rejects_non_matching(self):
        c = parse_chain(EXAMPLE, 5)
        g = snake_from_subchain(c)
        with pytest.raises(InvalidInputError):
            word_from_matching(PerfectMatching(), g, c)


class TestWordSets:
    def test_worked_example(self):
        c = parse_chain(EXAMPLE, 5)
        y = PeakPath(5, 2, 3)
        assert [str(w) for w in restricted_words(y, c)] == [
            "E.E.U1^3", "E.U2^2.E", "U2^1.U1^2.U1^3",
        ]
        g = support_snake(y, c)
        weights = {canonical_string(matching_weight(p, g, 4)) for p in enumerate_matchings(g)}
        assert weights == {"x4", "x2", "x1*x3*x4"}

    def test_example_word_set(self):
        words = words_X_C(parse_chain(EXAMPLE, 5))
        assert len(words) == 7
        assert {str(w) for w in words} == {
            "E.E.U1^3", "E.U2^2.E", "E.U2^2.U2^3", "U1^1.E.U1^3",
            "U1^1.U2^2.E", "U1^1.U2^2.U2^3", "U2^1.U1^2.U1^3",
        }

    def test_word_of_one_matching(self):
        c = parse_chain(EXAMPLE, 5)
        g = snake_from_subchain(c)
        p = PerfectMatching((
            ((0, 0), (0, 1)),
            ((1, 0), (2, 0)),
            ((1, 1), (2, 1)),
            ((2, 2), (3, 2)),
            ((3, 0), (3, 1)),
        ))
        assert p in enumerate_matchings(g)
        assert str(word_from_matching(p, g, c)) == "U2^1.U1^2.U1^3"

    @pytest.mark.parametrize("c", chains_up_to(6), ids=str)
    def test_all_e_word_needs_a_straight_snake(self, c):
        g = snake_from_subchain(c)
        all_e = [
            p for p in enumerate_matchings(g)
            if all(letter == E for letter in word_from_matching(p, g, c).letters)
        ]
        straight = all(step == g.steps[0] for step in g.steps)
        assert len(all_e) == (1 if straight else 0)

    def test_bent_snakes_have_no_all_e_word(self):
        for chain, n in ((EXAMPLE, 5), ("i1,j3", 4)):
            words = words_X_C(parse_chain(chain, n))
            assert HWord(n, (E,) * (n - 2)) not in words

    def test_x_c_for_two_element_chain_is_h3(self):
        words = words_X_C(parse_chain("j1,i2", 3))
        assert {w.letters for w in words} == {(sym,) for sym in alphabet(3)}

    @pytest.mark.parametrize("c", chains_up_to(9), ids=str)
    def test_words_biject_with_matchings(self, c):
        assert len(words_X_C(c)) == matching_count(snake_from_subchain(c))

    @pytest.mark.parametrize("c", chains_up_to(8), ids=str)
    def test_restricted_words_biject_with_support_matchings(self, c):
        for y in enumerate_S(c.n):
            assert len(restricted_words(y, c)) == matching_count(support_snake(y, c))

    @pytest.mark.parametrize("c", chains_up_to(8), ids=str)
    def test_full_support_gives_x_c(self, c):
        assert restricted_words(PeakPath(c.n, 1, c.n - 1), c) == words_X_C(c)

    def test_n2_words_collapse(self):
        c = parse_chain("j1", 2)
        assert words_X_C(c) == [HWord(2, ())]
        assert matching_count(snake_from_subchain(c)) == 2

    def test_word_letters_sit_at_their_junction(self):
        c = parse_chain("j1,i3,j5", 6)
        for word in words_X_C(c):
            assert len(word.letters) == 4

    def test_compatibility_relation(self):
        pairs = compatibility_relation(parse_chain("j1,i2", 3))
        assert pairs == []
        pairs = compatibility_relation(parse_chain(EXAMPLE, 5))
        assert ("U2^1", "U1^2") in pairs
        assert ("U1^1", "U1^2") not in pairs
