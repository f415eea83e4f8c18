"""Cyclotomic class partitions and cyclotomic number tables.

The class of a nonzero element is its discrete log mod e, so membership
queries are O(1) through the field's log table.  Cyclotomic number
tables come in two provenances: "brute-force" (one O(q) pass over the
field, counting solutions of z + 1 = w classwise) and "closed-form"
(assembled from the quadratic form representations of q).  Closed forms
exist for e = 2, 4, 8.

The order-8 closed form determines y and b only up to sign.  Signs are
resolved by evaluating every candidate table and keeping the one that
reproduces the brute-force table; CalibrationAmbiguous means no sign
assignment works, i.e. a transcription bug, and is never expected.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (
    CalibrationAmbiguous,
    IndexOutOfRange,
    NotOneMod4,
    NotOneMod8,
    OrderDoesNotDivide,
)
from .field import Field
from .numtheory import (
    a2_2b2_rep,
    two_is_quartic_residue,
    two_squares_rep,
    x2_4y2_rep,
)


@dataclass
class ClassPartition:
    """Partition of the nonzero elements into the e cyclotomic classes."""

    field: Field
    e: int
    f: int
    cls_of: np.ndarray  # length q, class index per code, -1 at code 0
    members: list[np.ndarray]  # e arrays of f codes each, ascending

    def class_of(self, code: int) -> int:
        c = int(self.cls_of[code])
        if c < 0:
            raise IndexOutOfRange("0 belongs to no cyclotomic class")
        return c

    def union(self, *indices: int) -> np.ndarray:
        """Sorted codes of the union of the given classes."""
        for i in indices:
            if not 0 <= i < self.e:
                raise IndexOutOfRange(f"class index {i} out of range for e={self.e}")
        return np.sort(np.concatenate([self.members[i] for i in indices]))


def classes(field: Field, e: int) -> ClassPartition:
    q = field.q
    if e < 1 or (q - 1) % e != 0:
        raise OrderDoesNotDivide(f"e = {e} does not divide q-1 = {q - 1}")
    cls_of = np.where(field.log >= 0, field.log % e, -1)
    members = [np.flatnonzero(cls_of == i).astype(np.int64) for i in range(e)]
    return ClassPartition(field, e, (q - 1) // e, cls_of, members)


@dataclass
class CycNumTable:
    e: int
    counts: np.ndarray  # e x e matrix of (i,j)_e
    provenance: str  # "brute-force" or "closed-form"
    reps: dict = dc_field(default_factory=dict)  # s,t,x,y,a,b actually used
    resolved_y: int | None = None
    resolved_b: int | None = None


def cyclotomic_number_bruteforce(part: ClassPartition, i: int, j: int) -> int:
    """(i,j)_e by direct enumeration over C_i, O(f)."""
    e = part.e
    if not (0 <= i < e and 0 <= j < e):
        raise IndexOutOfRange(f"({i},{j}) out of range for e={e}")
    z1 = part.field.succ_codes(part.members[i])
    ok = z1 != 0
    return int(np.count_nonzero(part.cls_of[z1[ok]] == j))


def bruteforce_table(part: ClassPartition) -> CycNumTable:
    """All e x e cyclotomic numbers in one pass over the nonzero elements."""
    field, e = part.field, part.e
    z = field.nonzero_codes()
    z1 = field.succ_codes(z)
    keep = z1 != 0
    ci = part.cls_of[z[keep]]
    cj = part.cls_of[z1[keep]]
    counts = np.bincount(ci * e + cj, minlength=e * e).reshape(e, e)
    return CycNumTable(e, counts.astype(np.int64), "brute-force")


# ---- closed forms ----

# order 4: letter -> cells, per parity of f
_CELLS4_F_EVEN = {
    "A": [(0, 0)],
    "B": [(1, 0), (0, 1), (3, 3)],
    "C": [(2, 0), (0, 2), (2, 2)],
    "D": [(3, 0), (0, 3), (1, 1)],
    "E": [(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)],
}
_CELLS4_F_ODD = {
    "A": [(0, 0), (2, 0), (2, 2)],
    "B": [(0, 1), (1, 3), (3, 2)],
    "C": [(0, 2)],
    "D": [(0, 3), (1, 2), (3, 1)],
    "E": [(1, 0), (1, 1), (2, 1), (2, 3), (3, 0), (3, 3)],
}


def _order4_numerators(q: int, s: int, t: int, f_even: bool) -> dict[str, int]:
    if f_even:
        return {
            "A": q - 11 - 6 * s,
            "B": q - 3 + 2 * s + 4 * t,
            "C": q - 3 + 2 * s,
            "D": q - 3 + 2 * s - 4 * t,
            "E": q + 1 - 2 * s,
        }
    return {
        "A": q - 7 + 2 * s,
        "B": q + 1 + 2 * s - 4 * t,
        "C": q + 1 - 6 * s,
        "D": q + 1 + 2 * s + 4 * t,
        "E": q - 3 - 2 * s,
    }


def _fill(e: int, cells: dict[str, list[tuple[int, int]]], values: dict[str, int]) -> np.ndarray:
    counts = np.full((e, e), -1, dtype=np.int64)
    for letter, cl in cells.items():
        for i, j in cl:
            counts[i, j] = values[letter]
    return counts


def cyclotomic_numbers_order4(field: Field) -> CycNumTable:
    """Closed-form 4x4 table from the two-squares representation."""
    q = field.q
    if q % 4 != 1:
        raise NotOneMod4(f"q = {q} is not 1 mod 4")
    s, t = two_squares_rep(field)
    f_even = ((q - 1) // 4) % 2 == 0
    nums = _order4_numerators(q, s, t, f_even)
    values = {}
    for letter, num in nums.items():
        if num % 16 or num < 0:
            raise CalibrationAmbiguous(f"order-4 entry {letter} = {num}/16 is not a count")
        values[letter] = num // 16
    counts = _fill(4, _CELLS4_F_EVEN if f_even else _CELLS4_F_ODD, values)
    return CycNumTable(4, counts, "closed-form", reps={"s": s, "t": t})


# order 8: letter -> cells, per parity of f
_CELLS8_F_ODD = {
    "A": [(0, 0), (4, 0), (4, 4)],
    "B": [(0, 1), (3, 7), (5, 4)],
    "C": [(0, 2), (2, 6), (6, 4)],
    "D": [(0, 3), (1, 5), (7, 4)],
    "E": [(0, 4)],
    "F": [(0, 5), (1, 4), (7, 3)],
    "G": [(0, 6), (2, 4), (6, 2)],
    "H": [(0, 7), (3, 4), (5, 1)],
    "I": [(1, 0), (3, 3), (4, 1), (4, 5), (5, 0), (7, 7)],
    "J": [(1, 1), (3, 0), (4, 3), (4, 7), (5, 5), (7, 0)],
    "K": [(1, 2), (2, 7), (3, 6), (5, 3), (6, 5), (7, 1)],
    "L": [(1, 3), (1, 6), (2, 5), (6, 3), (7, 2), (7, 5)],
    "M": [(1, 7), (2, 3), (3, 5), (5, 2), (6, 1), (7, 6)],
    "N": [(2, 0), (2, 2), (4, 2), (4, 6), (6, 0), (6, 6)],
    "O": [(2, 1), (3, 1), (3, 2), (5, 6), (5, 7), (6, 7)],
}
_CELLS8_F_EVEN = {
    "A": [(0, 0)],
    "B": [(0, 1), (1, 0), (7, 7)],
    "C": [(0, 2), (2, 0), (6, 6)],
    "D": [(0, 3), (3, 0), (5, 5)],
    "E": [(0, 4), (4, 0), (4, 4)],
    "F": [(0, 5), (5, 0), (3, 3)],
    "G": [(0, 6), (6, 0), (2, 2)],
    "H": [(0, 7), (7, 0), (1, 1)],
    "I": [(1, 2), (2, 1), (1, 7), (7, 1), (6, 7), (7, 6)],
    "J": [(1, 3), (3, 1), (2, 7), (7, 2), (5, 6), (6, 5)],
    "K": [(1, 4), (4, 1), (3, 7), (7, 3), (4, 5), (5, 4)],
    "L": [(1, 5), (5, 1), (3, 4), (4, 3), (4, 7), (7, 4)],
    "M": [(1, 6), (6, 1), (2, 3), (3, 2), (5, 7), (7, 5)],
    "N": [(2, 4), (4, 2), (2, 6), (6, 4), (4, 6), (6, 2)],
    "O": [(2, 5), (5, 2), (3, 5), (5, 3), (3, 6), (6, 3)],
}


def _order8_numerators(q, x, y, a, b, two_qr: bool, f_odd: bool) -> dict[str, int]:
    if f_odd:
        if two_qr:
            return {
                "A": q - 15 - 2 * x,
                "B": q + 1 + 2 * x - 4 * a + 16 * y,
                "C": q + 1 + 6 * x + 8 * a - 16 * y,
                "D": q + 1 + 2 * x - 4 * a - 16 * y,
                "E": q + 1 - 18 * x,
                "F": q + 1 + 2 * x - 4 * a + 16 * y,
                "G": q + 1 + 6 * x + 8 * a + 16 * y,
                "H": q + 1 + 2 * x - 4 * a - 16 * y,
                "I": q - 7 + 2 * x + 4 * a,
                "J": q - 7 + 2 * x + 4 * a,
                "K": q + 1 - 6 * x + 4 * a + 16 * b,
                "L": q + 1 + 2 * x - 4 * a,
                "M": q + 1 - 6 * x + 4 * a - 16 * b,
                "N": q - 7 - 2 * x - 8 * a,
                "O": q + 1 + 2 * x - 4 * a,
            }
        return {
            "A": q - 15 - 10 * x - 8 * a,
            "B": q + 1 + 2 * x - 4 * a - 16 * b,
            "C": q + 1 - 2 * x + 16 * y,
            "D": q + 1 + 2 * x - 4 * a - 16 * b,
            "E": q + 1 + 6 * x + 24 * a,
            "F": q + 1 + 2 * x - 4 * a + 16 * b,
            "G": q + 1 - 2 * x - 16 * y,
            "H": q + 1 + 2 * x - 4 * a + 16 * b,
            "I": q - 7 + 2 * x + 4 * a + 16 * y,
            "J": q - 7 + 2 * x + 4 * a - 16 * y,
            "K": q + 1 + 2 * x - 4 * a,
            "L": q + 1 - 6 * x + 4 * a,
            "M": q + 1 + 2 * x - 4 * a,
            "N": q - 7 + 6 * x,
            "O": q + 1 - 6 * x + 4 * a,
        }
    if two_qr:
        return {
            "A": q - 23 - 18 * x - 24 * a,
            "B": q - 7 + 2 * x + 4 * a + 16 * y + 16 * b,
            "C": q - 7 + 6 * x + 16 * y,
            "D": q - 7 + 2 * x + 4 * a - 16 * y + 16 * b,
            "E": q - 7 - 2 * x + 8 * a,
            "F": q - 7 + 2 * x + 4 * a + 16 * y - 16 * b,
            "G": q - 7 + 6 * x - 16 * y,
            "H": q - 7 + 2 * x + 4 * a - 16 * y - 16 * b,
            "I": q + 1 + 2 * x - 4 * a,
            "J": q + 1 - 6 * x + 4 * a,
            "K": q + 1 + 2 * x - 4 * a,
            "L": q + 1 + 2 * x - 4 * a,
            "M": q + 1 - 6 * x + 4 * a,
            "N": q + 1 - 2 * x,
            "O": q + 1 + 2 * x - 4 * a,
        }
    return {
        "A": q - 23 + 6 * x,
        "B": q - 7 + 2 * x + 4 * a,
        "C": q - 7 - 2 * x - 8 * a - 16 * y,
        "D": q - 7 + 2 * x + 4 * a,
        "E": q - 7 - 10 * x,
        "F": q - 7 + 2 * x + 4 * a,
        "G": q - 7 - 2 * x - 8 * a + 16 * y,
        "H": q - 7 + 2 * x + 4 * a,
        "I": q + 1 - 6 * x + 4 * a,
        "J": q + 1 + 2 * x - 4 * a - 16 * b,
        "K": q + 1 + 2 * x - 4 * a + 16 * y,
        "L": q + 1 + 2 * x - 4 * a - 16 * y,
        "M": q + 1 + 2 * x - 4 * a + 16 * b,
        "N": q + 1 + 6 * x + 8 * a,
        "O": q + 1 - 6 * x + 4 * a,
    }


def _order8_candidate(q, x, y, a, b, two_qr: bool, f_odd: bool) -> np.ndarray | None:
    nums = _order8_numerators(q, x, y, a, b, two_qr, f_odd)
    values = {}
    for letter, num in nums.items():
        if num % 64 or num < 0:
            return None
        values[letter] = num // 64
    return _fill(8, _CELLS8_F_ODD if f_odd else _CELLS8_F_EVEN, values)


def cyclotomic_numbers_order8(field: Field) -> CycNumTable:
    """Closed-form 8x8 table with the signs of y and b calibrated against
    the brute-force table for this field and generator."""
    q, p, m = field.q, field.p, field.m
    if q % 8 != 1:
        raise NotOneMod8(f"q = {q} is not 1 mod 8")
    x, y_mag = x2_4y2_rep(q, p, m)
    a, b_mag = a2_2b2_rep(q, p, m)
    two_qr = two_is_quartic_residue(field)
    f_odd = ((q - 1) // 8) % 2 == 1
    brute = bruteforce_table(classes(field, 8))

    ys = [y_mag] if y_mag == 0 else [y_mag, -y_mag]
    bs = [b_mag] if b_mag == 0 else [b_mag, -b_mag]
    for y in ys:
        for b in bs:
            cand = _order8_candidate(q, x, y, a, b, two_qr, f_odd)
            if cand is not None and np.array_equal(cand, brute.counts):
                return CycNumTable(
                    8,
                    cand,
                    "closed-form",
                    reps={"x": x, "y": y, "a": a, "b": b},
                    resolved_y=y,
                    resolved_b=b,
                )
    raise CalibrationAmbiguous(
        f"no sign assignment of (y, b) = (+-{y_mag}, +-{b_mag}) reproduces the "
        f"brute-force order-8 table for q = {q}"
    )


def _order2_table(field: Field) -> CycNumTable:
    q = field.q
    if q % 4 == 1:
        counts = np.array([[(q - 5) // 4, (q - 1) // 4], [(q - 1) // 4, (q - 1) // 4]])
    else:
        counts = np.array([[(q - 3) // 4, (q + 1) // 4], [(q - 3) // 4, (q - 3) // 4]])
    return CycNumTable(2, counts.astype(np.int64), "closed-form")


def closed_form_table(field: Field, e: int) -> CycNumTable:
    if (field.q - 1) % e != 0:
        raise OrderDoesNotDivide(f"e = {e} does not divide q-1 = {field.q - 1}")
    if e == 2:
        return _order2_table(field)
    if e == 4:
        return cyclotomic_numbers_order4(field)
    if e == 8:
        return cyclotomic_numbers_order8(field)
    raise OrderDoesNotDivide(f"no closed form for e = {e}")


def delta_via_cycnums(part: ClassPartition, table: CycNumTable, j: int, l: int | None = None) -> np.ndarray:
    """Predicted classwise multiplicities: entry c is the multiplicity of
    each element of C_c in Delta(C_j) (l omitted) or in
    Delta(C_{j+l}, C_l)."""
    e = part.e
    if table.e != e:
        raise IndexOutOfRange("table order does not match partition order")
    if not 0 <= j < e or (l is not None and not 0 <= l < e):
        raise IndexOutOfRange(f"class index out of range for e={e}")
    prof = np.zeros(e, dtype=np.int64)
    if l is None:
        for i in range(e):
            prof[(i + j) % e] = table.counts[i, 0]
    else:
        for i in range(e):
            prof[(i + l) % e] = table.counts[i, j]
    return prof


def classwise_profile(part: ClassPartition, counts: np.ndarray) -> np.ndarray | None:
    """Collapse a length-q count vector to an e-vector if it is constant on
    every class, else None."""
    prof = np.empty(part.e, dtype=np.int64)
    for i, mem in enumerate(part.members):
        vals = np.unique(counts[mem])
        if len(vals) != 1:
            return None
        prof[i] = vals[0]
    return prof
