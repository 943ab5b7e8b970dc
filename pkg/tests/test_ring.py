import pytest
from hypothesis import given
from hypothesis import strategies as st

from diamondlab.perm import act
from diamondlab.ring import (
    AFFINE_IDEAL_ORDER,
    SCOPES,
    ZERO,
    CutDefinition,
    Gf4Pattern,
    additive_closure,
    affine_patterns,
    census_report,
    cut_census,
    cut_census_slice,
    cuts_uninterrupted,
    gf2_rank,
    is_affine_pattern,
    pattern_add,
    relation_bits,
    solution_count,
)
from diamondlab.perm import ClosureCapExceeded
from diamondlab.symmetry import color_interchange, is_symmetric
from diamondlab.tiles import Gf4, Pattern, decode, encode

gf4_patterns = st.lists(st.integers(0, 3), min_size=16, max_size=16).map(lambda v: Gf4Pattern(tuple(v)))


class TestAddition:
    @given(gf4_patterns)
    def test_pack_round_trip(self, p):
        assert Gf4Pattern.unpack(p.pack()) == p

    @given(gf4_patterns, gf4_patterns, gf4_patterns)
    def test_group_laws(self, p, q, r):
        assert p + q == q + p
        assert (p + q) + r == p + (q + r)
        assert p + ZERO == p
        assert p + p == ZERO

    @given(gf4_patterns, gf4_patterns)
    def test_cellwise_field_addition(self, p, q):
        s = p + q
        assert all(s[i] == p[i] + q[i] for i in range(16))

    def test_pattern_round_trip(self, diamond):
        assert Gf4Pattern.from_pattern(diamond).to_pattern() == diamond

    def test_diamond_plus_interchange_is_one(self, diamond):
        assert pattern_add(diamond, color_interchange(diamond)) == Gf4Pattern.constant(Gf4(1))

    def test_grids(self, diamond):
        g = Gf4Pattern.from_pattern(diamond)
        assert g.s_grid == sum(t.s << i for i, t in enumerate(diamond))
        assert g.d_grid == sum(t.d << i for i, t in enumerate(diamond))

    def test_rejects_bad_values(self):
        with pytest.raises(ValueError):
            Gf4Pattern((4,) * 16)
        with pytest.raises(ValueError):
            Gf4Pattern((0,) * 15)


class TestAffine:
    def test_count(self):
        affine = affine_patterns()
        assert len(affine) == len(set(affine)) == AFFINE_IDEAL_ORDER

    def test_filter_agrees_with_parametrisation(self):
        assert all(is_affine_pattern(p) for p in affine_patterns())

    def test_examples(self, diamond):
        assert is_affine_pattern(diamond)
        assert is_affine_pattern(Pattern.constant(2))
        assert not is_affine_pattern(decode("1000000000000000"))

    def test_orbit_closure(self, diamond_orbit):
        closure = additive_closure(diamond_orbit)
        assert len(closure) == AFFINE_IDEAL_ORDER
        assert closure == set(affine_patterns())

    def test_closure_of_single_seed(self, diamond):
        assert additive_closure([diamond]) == {ZERO, Gf4Pattern.from_pattern(diamond)}

    def test_closure_cap(self, diamond_orbit):
        with pytest.raises(ClosureCapExceeded):
            additive_closure(diamond_orbit, cap=100)

    def test_closure_needs_seed(self):
        with pytest.raises(ValueError):
            additive_closure([])

    def test_affine_set_invariant_under_group(self, group, rng):
        affine = set(affine_patterns())
        sample = rng.sample(sorted(affine), 50)
        for _ in range(20):
            g = tuple(int(x) for x in group.elements[rng.randrange(len(group))])
            for p in sample:
                assert Gf4Pattern.from_pattern(act(g, p.to_pattern())) in affine

    def test_all_affine_symmetric(self):
        assert all(is_symmetric(p.to_pattern()) for p in affine_patterns())


class TestCuts:
    def test_relation_bits_diamond(self, diamond):
        bits = relation_bits(diamond)
        assert sorted(bits) == [("h", 0), ("h", 1), ("h", 2), ("v", 0), ("v", 1), ("v", 2)]
        assert all(len(v) == 4 for v in bits.values())

    def test_diamond_has_constant_relations(self, diamond):
        assert cuts_uninterrupted(diamond, "ConstantRelation")

    def test_all_match_example(self):
        # shade alternates down columns and s ^ d alternates along rows
        p = decode("0202" "3131" "0202" "3131")
        assert cuts_uninterrupted(p, CutDefinition.ALL_MATCH)
        assert not cuts_uninterrupted(p, CutDefinition.ALL_CONTRAST)

    def test_all_contrast_example(self):
        p = decode("0303" * 4)
        assert cuts_uninterrupted(p, CutDefinition.ALL_CONTRAST)

    def test_bad_scope(self, diamond):
        with pytest.raises(ValueError):
            cuts_uninterrupted(diamond, "AllMatch", scope="diagonal")

    # Across a horizontal line the relation bit is s_a ^ s_b ^ 1; across a
    # vertical one it is t_a ^ t_b ^ 1 with t = s ^ d.  So each definition
    # constrains the s grid by columns and the t grid by rows independently.
    @pytest.mark.parametrize("definition, scope, expected", [
        ("AllMatch", "both", 2 ** 4 * 2 ** 4),
        ("AllContrast", "both", 2 ** 4 * 2 ** 4),
        ("ConstantRelation", "both", 2 ** 7 * 2 ** 7),
        ("AllMatch", "horizontal", 2 ** 4 * 2 ** 16),
        ("AllContrast", "vertical", 2 ** 16 * 2 ** 4),
        ("ConstantRelation", "horizontal", 2 ** 7 * 2 ** 16),
        ("ConstantRelation", "vertical", 2 ** 16 * 2 ** 7),
    ])
    def test_census_analytic(self, definition, scope, expected):
        assert cut_census(definition, scope) == expected

    @pytest.mark.parametrize("definition", [d.value for d in CutDefinition])
    @pytest.mark.parametrize("scope", SCOPES)
    def test_rank_count_matches_brute_force_slice(self, definition, scope, rng):
        free = sorted(rng.sample(range(32), 12))
        base = rng.getrandbits(32)
        fixed = {b: base >> b & 1 for b in range(32) if b not in free}
        assert cut_census(definition, scope, fixed) == cut_census_slice(definition, free, scope, base)

    def test_slice_over_first_two_rows(self):
        # shade of rows 0-1 and direction of row 0 free, everything else zero
        free = list(range(8)) + list(range(16, 20))
        for d in CutDefinition:
            assert cut_census(d, fixed={b: 0 for b in range(32) if b not in free}) == \
                cut_census_slice(d, free)

    def test_report_honest(self):
        reports = {d.value: census_report(d) for d in CutDefinition}
        assert reports["ConstantRelation"].count == 16384
        assert reports["ConstantRelation"].affine_satisfying == AFFINE_IDEAL_ORDER
        assert not any(r.equals_affine_set for r in reports.values())
        assert set(reports["AllMatch"].to_dict()) == {
            "definition", "count", "equals_affine_set", "affine_satisfying"}


class TestLinearAlgebra:
    def test_rank(self):
        assert gf2_rank([]) == 0
        assert gf2_rank([0b11, 0b01, 0b10]) == 2

    def test_solution_count(self):
        assert solution_count([(0b11, 1)], 2) == 2
        assert solution_count([(0b11, 1), (0b11, 0)], 2) == 0
        assert solution_count([], 3) == 8
