"""Prime power recognition, quadratic form representations, quartic residues.

Three binary quadratic forms drive the closed-form cyclotomic number
tables: q = s^2 + t^2, q = x^2 + 4y^2 and q = a^2 + 2b^2.  The first
coordinate of each is normalized to 1 mod 4; the sign of t is pinned by
a congruence against the field's chosen generator, while y and b are
returned as magnitudes (their signs are resolved downstream against a
brute-force table).
"""

from __future__ import annotations

from math import isqrt
from typing import NamedTuple

from .errors import (
    CycloskewError,
    NoRepresentation,
    NotOneMod4,
    NotPrimePower,
    OrderNotDivisible,
)
from .field import Field, is_prime


class QuadRepST(NamedTuple):
    s: int
    t: int


class QuadRepXY(NamedTuple):
    x: int
    y: int


class QuadRepAB(NamedTuple):
    a: int
    b: int


def prime_power_decompose(q: int) -> tuple[int, int]:
    """Write q = p^m with p prime, or raise NotPrimePower."""
    if q < 2:
        raise NotPrimePower(f"{q} < 2")
    if is_prime(q):
        return q, 1
    d = 2
    while d * d <= q:
        if q % d == 0:
            n, m = q, 0
            while n % d == 0:
                n //= d
                m += 1
            if n != 1:
                raise NotPrimePower(f"{q} has at least two prime factors")
            return d, m
        d += 1 if d == 2 else 2
    raise NotPrimePower(f"{q} is not a prime power")


def is_prime_power(q: int) -> bool:
    try:
        prime_power_decompose(q)
        return True
    except NotPrimePower:
        return False


def _norm_1_mod_4(c: int) -> int:
    return c if c % 4 == 1 else -c


def two_squares_rep(field: Field) -> QuadRepST:
    """q = s^2 + t^2 with the classical sign conventions.

    For p = 3 mod 4 (m even) this degenerates to ((-p)^(m/2), 0).  For
    p = 1 mod 4, s is the unique odd value with p not dividing s and
    s = 1 mod 4, and the sign of t satisfies g^((q-1)/4) = s/t mod p
    for the field's generator g.  The result is generator-dependent by
    design: changing the generator can only flip the sign of t.
    """
    q, p, m = field.q, field.p, field.m
    if q % 4 != 1:
        raise NotOneMod4(f"q = {q} is not 1 mod 4")
    if p % 4 == 3:
        return QuadRepST((-p) ** (m // 2), 0)
    for c in range(1, isqrt(q) + 1, 2):
        if c % p == 0:
            continue
        r = q - c * c
        t0 = isqrt(r)
        if t0 * t0 != r:
            continue
        s = _norm_1_mod_4(c)
        i = int(field.exp[(q - 1) // 4])
        if i >= p:
            # the primitive 4th root of unity must lie in the prime subfield
            raise CycloskewError(f"g^((q-1)/4) = code {i} is outside GF({p})")
        for t in (t0, -t0):
            if (t * i - s) % p == 0:
                return QuadRepST(s, t)
        raise CycloskewError("no sign of t satisfies the defining congruence")
    raise NoRepresentation(f"{q} has no proper two-squares representation")


def x2_4y2_rep(q: int, p: int, m: int) -> QuadRepXY:
    """q = x^2 + 4y^2 with x = 1 mod 4; y returned non-negative.

    Proper (p does not divide x) when p = 1 mod 4; otherwise the
    degenerate (+-p^(m/2), 0), still normalized to x = 1 mod 4.
    """
    if q % 4 != 1:
        raise NoRepresentation(f"q = {q} is not 1 mod 4")
    if p % 4 == 1:
        for c in range(1, isqrt(q) + 1, 2):
            if c % p == 0:
                continue
            r = q - c * c
            if r % 4:
                continue
            y = isqrt(r // 4)
            if 4 * y * y == r:
                return QuadRepXY(_norm_1_mod_4(c), y)
        raise NoRepresentation(f"{q} has no proper x^2+4y^2 representation")
    return QuadRepXY(_norm_1_mod_4(p ** (m // 2)), 0)


def a2_2b2_rep(q: int, p: int, m: int) -> QuadRepAB:
    """q = a^2 + 2b^2 with a = 1 mod 4; b returned non-negative.

    Proper when p = 1 or 3 mod 8; for p = 5, 7 mod 8 (m even) the
    degenerate (+-p^(m/2), 0) is normalized to a = 1 mod 4 as well, so
    applicability predicates stay deterministic.
    """
    if p % 8 in (1, 3):
        for c in range(1, isqrt(q) + 1, 2):
            if c % p == 0:
                continue
            r = q - c * c
            b = isqrt(r // 2)
            if 2 * b * b == r:
                return QuadRepAB(_norm_1_mod_4(c), b)
        raise NoRepresentation(f"{q} has no proper a^2+2b^2 representation")
    if m % 2 == 0:
        return QuadRepAB(_norm_1_mod_4(p ** (m // 2)), 0)
    raise NoRepresentation(f"{q} is not representable as a^2 + 2b^2")


def is_quartic_residue(field: Field, code: int) -> bool:
    """True iff the discrete log of the element is divisible by 4."""
    if (field.q - 1) % 4 != 0:
        raise OrderNotDivisible(f"4 does not divide q-1 = {field.q - 1}")
    return field.dlog(code) % 4 == 0


def two_is_quartic_residue(field: Field) -> bool:
    return is_quartic_residue(field, field.element(2))
