import pytest
from hypothesis import given, strategies as st

from fslinks.braid import (
    BraidWord,
    FIBER_TABLE,
    FiberData,
    closure_component_count,
    embed_with_trivial_strands,
    format_braid,
    generators_all_present,
    is_homogeneous,
    is_pure,
    make_bk,
    make_Lnm,
    make_omega,
    named_constant_braids,
    parse_braid,
    permutation_of,
    seifert_genus,
)
from fslinks.errors import (
    BraidParseError,
    DomainError,
    NonHomogeneousError,
)


def words(max_strands=8, max_len=20):
    return st.integers(2, max_strands).flatmap(
        lambda n: st.lists(
            st.integers(1, n - 1).flatmap(
                lambda i: st.sampled_from([i, -i])
            ),
            max_size=max_len,
        ).map(lambda ls: BraidWord(n, tuple(ls)))
    )


class TestPermutation:
    def test_identity_braid(self):
        assert permutation_of(BraidWord(3, ())).is_identity()

    def test_single_letter(self):
        p = permutation_of(BraidWord(2, (1,)))
        assert p.image == (2, 1)

    def test_borromean_word_is_pure(self):
        # (s1 s2^-1)^3 composes six transpositions back to the identity
        assert permutation_of(BraidWord(3, (1, -2) * 3)).is_identity()

    def test_cycles_canonical(self):
        # strand 1 walks to position 4; 2, 3, 4 each shift down one
        p = permutation_of(BraidWord(4, (1, 2, 3)))
        assert p.cycles() == ((1, 4, 3, 2),)

    @given(words())
    def test_cycle_count_parity(self, b):
        # cycle count has the parity of n - length (mod 2)
        cc = closure_component_count(b)
        assert (cc - b.strands + b.length()) % 2 == 0


class TestPredicates:
    def test_is_pure(self):
        assert is_pure(BraidWord(3, (-1, -1, 2, 2)))
        assert not is_pure(BraidWord(2, (1,)))

    def test_closure_component_count(self):
        assert closure_component_count(BraidWord(4, ())) == 4
        assert closure_component_count(BraidWord(3, (1, -2) * 3)) == 3
        assert closure_component_count(BraidWord(2, (1, -1, -1))) == 1

    def test_is_homogeneous(self):
        assert is_homogeneous(BraidWord(3, (-2, 1, -2, 1, -2, 1)))
        assert not is_homogeneous(BraidWord(2, (1, -1)))
        assert is_homogeneous(BraidWord(3, (1, 1, 1, 2, 2, 1, 1, 2, 2, 1)))

    def test_generators_all_present(self):
        assert generators_all_present(BraidWord(2, (1, -1, -1)))
        assert not generators_all_present(BraidWord(3, (1,)))
        for k in range(1, 9):
            assert generators_all_present(make_bk(k))


class TestSeifertGenus:
    @pytest.mark.parametrize("name,expected", sorted(FIBER_TABLE.items()))
    def test_fiber_table(self, name, expected):
        b = named_constant_braids()[name]
        assert seifert_genus(b) == expected

    def test_rejects_nonhomogeneous(self):
        with pytest.raises(NonHomogeneousError):
            seifert_genus(BraidWord(2, (1, -1)))

    def test_rejects_empty(self):
        with pytest.raises(NonHomogeneousError):
            seifert_genus(BraidWord(2, ()))


class TestFamilies:
    def test_b1(self):
        assert make_bk(1) == BraidWord(3, (-1, -1, 2, 2))

    def test_b2_matches_monodromy_word(self):
        assert make_bk(2).letters == (3, 2, 1, 1, -2, 3, 4, 3, 2, 2, 3, 4)
        assert make_bk(2).strands == 5

    def test_b3_strands(self):
        b = make_bk(3)
        assert b.strands == 6

    @pytest.mark.parametrize("k", range(2, 13))
    def test_bk_strand_count(self, k):
        assert make_bk(k).strands == k + 3

    @pytest.mark.parametrize("k", [2, 4, 6, 8, 10, 12])
    def test_bk_even_pure(self, k):
        assert is_pure(make_bk(k))

    @pytest.mark.parametrize("k", [3, 5, 7, 9, 11])
    def test_bk_odd_closure_components(self, k):
        # the odd words start with a lone generator, so strands 1 and 2
        # merge and the braided link has k+3 components
        b = make_bk(k)
        assert permutation_of(b).cycles()[0] == (1, 2)
        assert closure_component_count(b) == k + 2

    def test_omega4_is_b1(self):
        assert make_omega(4) == make_bk(1)

    def test_omega9_display(self):
        expected = (
            (4, 3, 3, 4)
            + (5, 4, 3, 2, 2, 3, 4, 5)
            + (6, 5, 4, 3, 2, 1, 1, -2, 3, 4, 5, 6)
            + (7, 6, 5, 4, 3, 2, 2, -3, 4, 5, 6, 7)
        )
        w = make_omega(9)
        assert w.letters == expected
        assert w.strands == 8

    def test_omega_5_7_embeddings(self):
        for m in (5, 7):
            w = make_omega(m)
            prev = make_omega(m - 1)
            assert w.letters == prev.letters
            assert w.strands == prev.strands + 1

    @pytest.mark.parametrize("m", range(4, 16))
    def test_omega_pure(self, m):
        w = make_omega(m)
        assert is_pure(w)
        assert w.strands == m - 1

    @pytest.mark.parametrize("n", range(4, 9))
    @pytest.mark.parametrize("m", range(1, 5))
    def test_Lnm_counts(self, n, m):
        b = make_Lnm(n, m)
        expected_c = 2 * m + 11 if n == 4 else 2 * m + 4 * n - 8
        assert b.length() == expected_c
        assert b.strands == (5 if n == 4 else n)
        assert is_homogeneous(b)
        fib = seifert_genus(b)
        assert fib.boundary == n
        assert fib.genus == (m + 2 if n == 4 else m + n - 3)

    def test_Lnm_contains_borromean_restriction(self):
        b = make_Lnm(6, 2)
        low = tuple(e for e in b.letters if abs(e) <= 2)
        assert low == (-2, 1, -2, 1, -2, 1)

    def test_Lnm_contains_stallings_subword(self):
        for n in range(4, 8):
            b = make_Lnm(n, 1)
            s = " ".join(map(str, b.letters))
            assert "3 3 -4" in s

    def test_Lnm_domain(self):
        with pytest.raises(DomainError):
            make_Lnm(3, 1)
        with pytest.raises(DomainError):
            make_Lnm(5, 0)

    def test_embed_with_trivial_strands(self):
        b1 = make_bk(1)
        e = embed_with_trivial_strands(b1, 2)
        assert e.letters == b1.letters
        assert e.strands == 4
        assert closure_component_count(e) == closure_component_count(b1) + 1
        e2 = embed_with_trivial_strands(BraidWord(2, ()), 3)
        assert e2.strands == 4

    @given(words(max_strands=5, max_len=10), st.integers(2, 4))
    def test_embed_preserves_letters_and_purity(self, b, p):
        e = embed_with_trivial_strands(b, p)
        assert e.letters == b.letters
        assert is_pure(e) == is_pure(b)
        assert (closure_component_count(e)
                == closure_component_count(b) + p - 1)

    def test_named_constants(self):
        cat = named_constant_braids()
        assert cat["L6a4"] == BraidWord(3, (1, -2) * 3)
        assert cat["L8n7"].letters == (1, -2, -2, 1, -3, -2, -2, -3)
        rc = cat["remark-closed-braid"]
        assert rc.strands == 6
        assert rc.letters == (4, 3, 2, 1, 1, 2, -3, 4, 5, 4, 3, 3, 4, 5,
                              1, 2, 3, 4, 5, 5, 4, 3, 2, 1)


class TestTextFormat:
    def test_round_trip_example(self):
        b = parse_braid("B3: -1 -1 2 2")
        assert b == make_bk(1)
        assert format_braid(b) == "B3: -1 -1 2 2"

    def test_empty_word(self):
        b = parse_braid("B4:")
        assert b.strands == 4 and b.letters == ()
        assert format_braid(b) == "B4:"

    def test_parse_errors_carry_position(self):
        with pytest.raises(BraidParseError) as ei:
            parse_braid("B3: 1 x")
        assert ei.value.position == 6
        with pytest.raises(BraidParseError):
            parse_braid("3: 1")
        with pytest.raises(BraidParseError):
            parse_braid("B3: 5")

    @given(words())
    def test_round_trip_property(self, b):
        assert parse_braid(format_braid(b)) == b
