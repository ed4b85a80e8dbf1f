import pytest

from crglobal import families
from crglobal.breakable import (
    a2_characterization,
    a2_counterexample,
    a3_characterization,
    a3_counterexample,
    enumerate_a3,
    enumerate_a2_masks,
    enumerate_a2bar_masks,
    enumerate_a3_masks,
    left_zero_subset_masks,
    satisfies_an,
    structural_form,
)
from crglobal.core import Subset
from crglobal.errors import NotA3Error, NotIdempotentError, NotSubsemigroupError, OrderTooLargeError
from crglobal.globaldet import power_of


def test_satisfies_an_examples():
    z2 = families.cyclic_group(2)
    assert satisfies_an(z2, Subset.full(2), 3)
    assert not satisfies_an(z2, Subset.full(2), 2)
    z3 = families.cyclic_group(3)
    assert not satisfies_an(z3, Subset.full(3), 3)
    l3 = families.left_zero(3)
    assert satisfies_an(l3, Subset.of(3, [0, 2]), 2)


def test_satisfies_an_requires_closure():
    with pytest.raises(NotSubsemigroupError):
        satisfies_an(families.cyclic_group(2), Subset.singleton(2, 1), 2)


def test_enumerate_counts(named):
    l2 = families.left_zero(2)
    assert enumerate_a2_masks(l2) == [1, 2, 3]
    assert enumerate_a2bar_masks(l2) == [1, 2, 3]
    z2 = families.cyclic_group(2)
    assert enumerate_a3_masks(z2) == [1, 3]
    assert enumerate_a2_masks(z2) == [1]
    c3 = named["clifford-3"]
    assert enumerate_a2_masks(c3) == [1, 2, 3]
    assert enumerate_a3_masks(c3) == [1, 2, 3, 6, 7]
    assert enumerate_a2bar_masks(c3) == [1, 2]


def test_enumerate_bound():
    with pytest.raises(OrderTooLargeError):
        enumerate_a3(families.tower_12(), max_order=11)


def test_containment_chain(cr6):
    for name, s in cr6:
        ep = set(power_of(s).idempotent_masks())
        a2 = set(enumerate_a2_masks(s))
        a3 = set(enumerate_a3_masks(s))
        a2bar = set(enumerate_a2bar_masks(s))
        assert a2bar <= a2 <= a3 <= ep, name


def test_structural_form_clifford(named):
    c3 = named["clifford-3"]
    form = structural_form(c3, Subset.full(3))
    assert form.chunks == (Subset.of(3, [0]), Subset.of(3, [1, 2]))
    assert form.kinds == ("left-zero", "two-group-top")
    assert form.has_group_top
    pair = structural_form(c3, Subset.of(3, [0, 1]))
    assert pair.chunks == (Subset.of(3, [0]), Subset.of(3, [1]))
    assert pair.kinds == ("left-zero", "left-zero")
    single = structural_form(c3, Subset.singleton(3, 1))
    assert single.chunks == (Subset.singleton(3, 1),) and not single.has_group_top


def test_structural_form_rejects_non_a3():
    with pytest.raises(NotA3Error):
        structural_form(families.cyclic_group(3), Subset.full(3))


def test_structural_form_group_top_only_without_pair_condition(cr6):
    for name, s in cr6:
        a2 = set(enumerate_a2_masks(s))
        for am in enumerate_a3_masks(s):
            form = structural_form(s, Subset(s.order, am))
            assert form.has_group_top == (am not in a2), (name, am)


def test_a3_characterization_examples():
    z2 = families.cyclic_group(2)
    assert a3_characterization(power_of(z2), Subset.full(2))
    z3 = families.cyclic_group(3)
    witness = a3_counterexample(power_of(z3), Subset.full(3))
    p = power_of(z3)
    assert witness is not None and witness.mask != 0b111
    assert p.product_mask(witness.mask, witness.mask) == 0b111
    assert p.product_mask(witness.mask, 0b111) == 0b111
    assert a3_characterization(power_of(z2), Subset.singleton(2, 0))
    with pytest.raises(NotIdempotentError):
        a3_characterization(power_of(z2), Subset.singleton(2, 1))


def test_a2_characterization_examples(named):
    c3 = named["clifford-3"]
    p = power_of(c3)
    assert not a2_characterization(p, Subset.full(3))
    witness = a2_counterexample(p, Subset.full(3))
    assert p.product_mask(witness.mask, witness.mask) != witness.mask
    assert a2_characterization(p, Subset.of(3, [0, 1]))
    assert a2_characterization(p, Subset.singleton(3, 0))
    with pytest.raises(NotA3Error):
        a2_characterization(p, Subset.of(3, [0, 2]))


def test_characterizations_match_direct_conditions(cr5):
    from crglobal.breakable import satisfies_an_mask
    from crglobal.core import is_subsemigroup_mask

    for name, s in cr5:
        p = power_of(s)
        for am in p.idempotent_masks():
            direct3 = is_subsemigroup_mask(s, am) and satisfies_an_mask(s, am, 3)
            assert a3_characterization(p, Subset(s.order, am)) == direct3, (name, am)
            if direct3:
                direct2 = satisfies_an_mask(s, am, 2)
                assert a2_characterization(p, Subset(s.order, am)) == direct2, (name, am)


def test_even_condition_implies_pair_and_odd_implies_triple(cr4):
    from crglobal.breakable import satisfies_an_mask
    from crglobal.core import is_subsemigroup_mask

    for name, s in cr4:
        full = (1 << s.order) - 1
        for am in range(1, full + 1):
            if not is_subsemigroup_mask(s, am):
                continue
            if satisfies_an_mask(s, am, 4):
                assert satisfies_an_mask(s, am, 2), (name, am)
            if satisfies_an_mask(s, am, 5):
                assert satisfies_an_mask(s, am, 3), (name, am)


def test_left_zero_subset_masks():
    rb = families.rect_band(2, 2)
    got = left_zero_subset_masks(rb)
    # L-classes {0,2} and {1,3} are left zero, as is every idempotent alone
    assert 0b0101 in got and 0b1010 in got
    assert all((1 << e) in got for e in range(4))
    assert 0b0011 not in got
