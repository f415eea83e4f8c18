import numpy as np
import pytest

from cycloskew import (
    build_field,
    bruteforce_table,
    classes,
    closed_form_table,
    cyclotomic_number_bruteforce,
    cyclotomic_numbers_order4,
    cyclotomic_numbers_order8,
    delta_via_cycnums,
    internal_differences,
)
from cycloskew.constructions import prime_powers
from cycloskew.cyclotomy import classwise_profile
from cycloskew.errors import IndexOutOfRange, NotOneMod4, NotOneMod8, OrderDoesNotDivide


def count_pairs(field, part, i, j):
    """Independent oracle: enumerate all pairs z_i + 1 = z_j directly."""
    ci = set(int(c) for c in part.members[i])
    cj = set(int(c) for c in part.members[j])
    return sum(1 for z in ci if field.add(z, 1) in cj)


def test_classes_gf13(gf13, gf13_7):
    p4 = classes(gf13, 4)
    assert [list(m) for m in p4.members] == [[1, 3, 9], [2, 5, 6], [4, 10, 12], [7, 8, 11]]
    p47 = classes(gf13_7, 4)
    assert list(p47.members[1]) == [7, 8, 11]
    assert list(p47.members[3]) == [2, 5, 6]


def test_classes_order_one(gf13):
    p1 = classes(gf13, 1)
    assert list(p1.members[0]) == list(range(1, 13))


def test_classes_errors(gf13):
    with pytest.raises(OrderDoesNotDivide):
        classes(gf13, 5)


def test_bruteforce_entries_gf13(gf13):
    p4 = classes(gf13, 4)
    assert cyclotomic_number_bruteforce(p4, 0, 0) == 0 == count_pairs(gf13, p4, 0, 0)
    assert cyclotomic_number_bruteforce(p4, 0, 2) == 2 == count_pairs(gf13, p4, 0, 2)
    with pytest.raises(IndexOutOfRange):
        cyclotomic_number_bruteforce(p4, 0, 4)
    p1 = classes(gf13, 1)
    assert cyclotomic_number_bruteforce(p1, 0, 0) == gf13.q - 2


def test_bruteforce_table_matches_entrywise(gf13, gf25):
    for f, e in ((gf13, 4), (gf25, 8)):
        part = classes(f, e)
        table = bruteforce_table(part)
        for i in range(e):
            for j in range(e):
                assert table.counts[i, j] == count_pairs(f, part, i, j)


def test_order4_gf13_letters(gf13):
    table = cyclotomic_numbers_order4(gf13)
    # with s = -3, t = -2 and f odd the five letter values are 0,1,2,0,1
    assert table.counts[0, 0] == 0
    assert table.counts[0, 1] == 1
    assert table.counts[0, 2] == 2
    assert table.counts[0, 3] == 0
    assert table.counts[1, 0] == 1
    assert np.array_equal(table.counts, bruteforce_table(classes(gf13, 4)).counts)


def test_order4_row_sums():
    f = build_field(29)
    table = cyclotomic_numbers_order4(f)
    sums = table.counts.sum(axis=1)
    assert set(int(v) for v in sums) <= {6, 7}


def test_order4_gf9(gf9):
    assert np.array_equal(
        cyclotomic_numbers_order4(gf9).counts, bruteforce_table(classes(gf9, 4)).counts
    )
    with pytest.raises(NotOneMod4):
        cyclotomic_numbers_order4(build_field(7))


def test_order8_gf9_gf17(gf9, gf17):
    for f in (gf9, gf17):
        table = cyclotomic_numbers_order8(f)
        assert np.array_equal(table.counts, bruteforce_table(classes(f, 8)).counts)
        assert table.resolved_y is not None and table.resolved_b is not None
    with pytest.raises(NotOneMod8):
        cyclotomic_numbers_order8(build_field(13))


def test_order8_row_sums():
    f = build_field(41)
    table = cyclotomic_numbers_order8(f)
    sums = table.counts.sum(axis=1)
    assert set(int(v) for v in sums) == {4, 5}


def test_symmetry_spot_checks():
    # f odd: (1,0)_4 = (3,3)_4; q = 9 (mod 16): (0,0)_8 = (4,0)_8 = (4,4)_8
    for q, p, m in prime_powers(5, 300):
        if q % 4 != 1:
            continue
        f = build_field(p, m)
        t4 = bruteforce_table(classes(f, 4)).counts
        if ((q - 1) // 4) % 2 == 1:
            assert t4[1, 0] == t4[3, 3]
        if q % 16 == 9:
            t8 = bruteforce_table(classes(f, 8)).counts
            assert t8[0, 0] == t8[4, 0] == t8[4, 4]


def test_delta_profiles_match_lemma(gf13):
    p4 = classes(gf13, 4)
    table = bruteforce_table(p4)
    for j in range(4):
        predicted = delta_via_cycnums(p4, table, j)
        actual = classwise_profile(p4, internal_differences(gf13, p4.members[j]))
        assert actual is not None and np.array_equal(predicted, actual)


def test_delta_profile_order2(gf13):
    p2 = classes(gf13, 2)
    predicted = delta_via_cycnums(p2, bruteforce_table(p2), 0)
    assert list(predicted) == [2, 3]


def test_delta_cross_part_two(gf13):
    from cycloskew import cross_differences

    p4 = classes(gf13, 4)
    table = bruteforce_table(p4)
    for j in range(4):
        for l in range(4):
            predicted = delta_via_cycnums(p4, table, j, l)
            counts = cross_differences(gf13, p4.members[(j + l) % 4], p4.members[l])
            counts[0] = 0
            actual = classwise_profile(p4, counts)
            assert actual is not None and np.array_equal(predicted, actual)


def test_closed_form_order2(gf13, gf9):
    for f in (gf13, gf9, build_field(7), build_field(11)):
        assert np.array_equal(
            closed_form_table(f, 2).counts, bruteforce_table(classes(f, 2)).counts
        )


def test_row_sum_invariant_generic():
    for q, p, m in prime_powers(5, 200):
        f = build_field(p, m)
        for e in (2, 4, 8):
            if (q - 1) % e:
                continue
            part = classes(f, e)
            table = bruteforce_table(part)
            heavy = (f.dlog(f.neg(1))) % e
            for i in range(e):
                expect = part.f - (1 if i == heavy else 0)
                assert int(table.counts[i].sum()) == expect
