"""Difference multisets and the certification layer.

A difference multiset is a length-q integer count vector indexed by
element code.  Every classifier below recomputes counts from scratch by
direct pair enumeration (vectorized and chunked, but exact); nothing is
inferred from formulas, so a certificate is an independent witness.

Certificate kinds: PDS, SkewPDS, TrivialSkewPDS, ADS, DDF, EDF, DPDF,
EPDF, RelativeDPDF, RelativeEPDF, or None on failure.  All counts are
exact integers; there are no tolerances anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import isqrt

import numpy as np

from .errors import ContainsZero, DuplicateElement, IndexOutOfRange, NotDisjoint
from .field import Field, FieldSpec

_CHUNK = 1 << 23  # elements per difference chunk
_FOLD_LIMIT = 1 << 27  # max folded bincount size


def as_element_set(field: Field, codes) -> np.ndarray:
    """Sorted array of distinct element codes; duplicates are rejected."""
    arr = np.asarray(sorted(int(c) for c in codes), dtype=np.int64)
    if len(arr) == 0:
        return arr
    if arr[0] < 0 or arr[-1] >= field.q:
        raise IndexOutOfRange(f"element code out of range [0, {field.q})")
    if len(np.unique(arr)) != len(arr):
        raise DuplicateElement("set contains a repeated element")
    return arr


def _diff_counts_folded(field: Field, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    # radix-2p trick: one bincount per chunk, digit folding at the end
    p, m, q = field.p, field.m, field.q
    radix = 2 * p
    xd = [d.astype(np.int32) for d in field.digits(X)]
    yd = [d.astype(np.int32) for d in field.digits(Y)]
    weights = [radix**i for i in range(m)]
    offset = np.int32(sum(p * w for w in weights))
    total = np.zeros(radix**m, dtype=np.int64)
    step = max(1, _CHUNK // max(1, len(Y)))
    for lo in range(0, len(X), step):
        idx = xd[0][lo : lo + step, None] - yd[0][None, :]
        idx += offset
        for i in range(1, m):
            idx += (xd[i][lo : lo + step, None] - yd[i][None, :]) * np.int32(weights[i])
        total += np.bincount(idx.ravel(), minlength=radix**m)
    # fold each radix-2p digit back to base p
    shape = (radix,) * m
    arr = total.reshape(shape)
    for axis in range(m):
        lo = arr.take(range(0, p), axis=axis)
        hi = arr.take(range(p, 2 * p), axis=axis)
        arr = lo + hi
    # axis order: digit m-1 varies slowest in the reshape, which matches the
    # base-p code layout, so a plain ravel restores code indexing
    out = arr.reshape(q)
    return out


def _diff_counts_mod(field: Field, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    counts = np.zeros(field.q, dtype=np.int64)
    step = max(1, _CHUNK // max(1, len(Y)))
    for lo in range(0, len(X), step):
        d = field.sub_codes(X[lo : lo + step, None], Y[None, :])
        counts += np.bincount(d.ravel(), minlength=field.q)
    return counts


def diff_counts(field: Field, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Counts of x - y over all ordered pairs, including x == y hits at 0."""
    if len(X) == 0 or len(Y) == 0:
        return np.zeros(field.q, dtype=np.int64)
    if (2**field.m) * field.q <= _FOLD_LIMIT:
        return _diff_counts_folded(field, X, Y)
    return _diff_counts_mod(field, X, Y)


def internal_differences(field: Field, D) -> np.ndarray:
    """Delta(D): counts of x - y over distinct x, y in D."""
    d = as_element_set(field, D)
    counts = diff_counts(field, d, d)
    counts[0] = 0
    return counts


def cross_differences(field: Field, D1, D2) -> np.ndarray:
    """Delta(D1, D2): counts of x - y over x in D1, y in D2.  Zero hits are
    included; callers working with disjoint sets never see any."""
    return diff_counts(field, as_element_set(field, D1), as_element_set(field, D2))


def _validated_family(field: Field, family) -> list[np.ndarray]:
    fam = [as_element_set(field, s) for s in family]
    if any(len(s) and s[0] == 0 for s in fam):
        raise ContainsZero("family sets must avoid 0")
    if fam:
        allc = np.concatenate(fam)
        if len(np.unique(allc)) != len(allc):
            raise NotDisjoint("family sets are not pairwise disjoint")
    return fam


_BATCH_SET = 512  # sets at most this big go through one flattened pair list


def family_internal(field: Field, family) -> np.ndarray:
    """Int: the sum of the internal difference multisets of the family."""
    fam = _validated_family(field, family)
    counts = np.zeros(field.q, dtype=np.int64)
    xs, ys = [], []
    for s in fam:
        if len(s) > _BATCH_SET:
            counts += diff_counts(field, s, s)
        elif len(s) >= 2:
            xs.append(np.repeat(s, len(s)))
            ys.append(np.tile(s, len(s)))
    if xs:
        d = field.sub_codes(np.concatenate(xs), np.concatenate(ys))
        counts += np.bincount(d, minlength=field.q)
    counts[0] = 0
    return counts


def family_external(field: Field, family) -> np.ndarray:
    """Ext: the sum of Delta(D_i, D_j) over ordered pairs i != j, computed
    as Delta(D_i, S minus D_i) per set."""
    fam = _validated_family(field, family)
    counts = np.zeros(field.q, dtype=np.int64)
    if len(fam) < 2:
        return counts
    union = np.sort(np.concatenate(fam))
    xs, ys = [], []
    pending = 0
    for s in fam:
        rest = np.setdiff1d(union, s, assume_unique=True)
        if len(s) * len(rest) > _CHUNK:
            counts += diff_counts(field, s, rest)
        else:
            xs.append(np.repeat(s, len(rest)))
            ys.append(np.tile(rest, len(s)))
            pending += len(s) * len(rest)
        if pending > _CHUNK:
            d = field.sub_codes(np.concatenate(xs), np.concatenate(ys))
            counts += np.bincount(d, minlength=field.q)
            xs, ys = [], []
            pending = 0
    if xs:
        d = field.sub_codes(np.concatenate(xs), np.concatenate(ys))
        counts += np.bincount(d, minlength=field.q)
    return counts


# ---- certificates ----


@dataclass
class Certificate:
    kind: str
    field: FieldSpec
    sets: list[list[int]]
    reference_set: list[int] | None
    params: dict = dc_field(default_factory=dict)
    pds_type: str | None = None
    pds_type_args: tuple[int, int] | None = None
    regular: bool | None = None
    trivial: bool = False
    translate_offset: int | None = None

    @property
    def ok(self) -> bool:
        return self.kind != "None"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "field": self.field.as_dict(),
            "sets": [[int(c) for c in s] for s in self.sets],
            "reference_set": None
            if self.reference_set is None
            else [int(c) for c in self.reference_set],
            "params": {k: (list(v) if isinstance(v, (list, tuple)) else int(v)) for k, v in self.params.items()},
            "pds_type": self.pds_type,
            "pds_type_args": None if self.pds_type_args is None else list(self.pds_type_args),
            "regular": self.regular,
            "trivial": self.trivial,
            "translate_offset": self.translate_offset,
        }

    @staticmethod
    def from_json(d: dict) -> "Certificate":
        fs = d["field"]
        return Certificate(
            kind=d["kind"],
            field=FieldSpec(fs["p"], fs["m"], tuple(fs["poly"]), fs["generator"]),
            sets=[list(s) for s in d["sets"]],
            reference_set=None if d["reference_set"] is None else list(d["reference_set"]),
            params={k: (list(v) if isinstance(v, list) else v) for k, v in d["params"].items()},
            pds_type=d.get("pds_type"),
            pds_type_args=None if d.get("pds_type_args") is None else tuple(d["pds_type_args"]),
            regular=d.get("regular"),
            trivial=d.get("trivial", False),
            translate_offset=d.get("translate_offset"),
        )


def _none_cert(field: Field, sets: list[np.ndarray]) -> Certificate:
    return Certificate("None", field.spec, [[int(c) for c in s] for s in sets], None)


def _is_symmetric(field: Field, A: np.ndarray) -> bool:
    return np.array_equal(np.sort(field.neg_codes(A)), A)


def _pds_type(v: int, k: int, lam: int, mu: int, regular: bool):
    if lam != mu and regular and v % 4 == 1 and (k, lam, mu) == ((v - 1) // 2, (v - 5) // 4, (v - 1) // 4):
        return "Paley", None
    if lam == mu:
        return "DS", None
    n = isqrt(v)
    if n * n == v:
        if n > 1 and k % (n - 1) == 0:
            r = k // (n - 1)
            if (lam, mu) == (n + r * r - 3 * r, r * r - r):
                return "LatinSquare", (n, r)
        if k % (n + 1) == 0:
            r = k // (n + 1)
            if (lam, mu) == (-n + r * r + 3 * r, r * r + r):
                return "NegativeLatinSquare", (n, r)
    return "Other", None


def check_pds(field: Field, A) -> Certificate:
    """Certify A as a (v, k, lambda, mu) partial difference set."""
    a = as_element_set(field, A)
    prof = internal_differences(field, a)
    q = field.q
    a_star = a[a != 0]
    off = np.ones(q, dtype=bool)
    off[a] = False
    off[0] = False
    lam_vals = np.unique(prof[a_star]) if len(a_star) else np.empty(0, dtype=np.int64)
    mu_vals = np.unique(prof[off]) if off.any() else np.empty(0, dtype=np.int64)
    if len(lam_vals) > 1 or len(mu_vals) > 1:
        return _none_cert(field, [a])
    lam = int(lam_vals[0]) if len(lam_vals) else (int(mu_vals[0]) if len(mu_vals) else 0)
    mu = int(mu_vals[0]) if len(mu_vals) else lam
    regular = bool(0 not in a and _is_symmetric(field, a))
    ptype, pargs = _pds_type(q, len(a), lam, mu, regular)
    return Certificate(
        "PDS",
        field.spec,
        [[int(c) for c in a]],
        [int(c) for c in a],
        {"v": q, "k": len(a), "lambda": lam, "mu": mu},
        pds_type=ptype,
        pds_type_args=pargs,
        regular=regular,
    )


def _translate_offset(field: Field, D: np.ndarray, A: np.ndarray) -> int | None:
    """Offset a with D == a + A, or None.  When p does not divide |A| the
    candidate is pinned by the field sums; otherwise every d - A[0] is
    tried."""
    if len(D) != len(A) or len(A) == 0:
        return None
    kmod = len(A) % field.p
    if kmod:
        diff = field.sub(field.sum_codes(D), field.sum_codes(A))
        cands = [field.mul(diff, field.inv(field.element(kmod)))]
    else:
        cands = [int(c) for c in field.sub_codes(D, int(A[0]))]
    for cand in cands:
        if np.array_equal(np.sort(field.add_codes(A, cand)), D):
            return int(cand)
    return None


def check_skew_pds(field: Field, D) -> Certificate:
    """Certify D as a skew PDS: its difference profile must be two-valued
    and match the profile of an actual PDS of the same size, recovered
    from the profile itself (the support of either value, with or
    without 0 adjoined)."""
    d = as_element_set(field, D)
    prof = internal_differences(field, d)
    vals = np.unique(prof[1:])
    if len(vals) != 2:
        return _none_cert(field, [d])
    for val in vals:
        supp = np.flatnonzero(prof == val)
        supp = supp[supp != 0]
        for with_zero in (False, True):
            cand = np.sort(np.concatenate([supp, [0]])) if with_zero else supp
            if len(cand) != len(d):
                continue
            if not np.array_equal(internal_differences(field, cand), prof):
                continue
            lam = int(val)
            mu = int(vals[0] if vals[1] == val else vals[1])
            regular = bool(0 not in cand and _is_symmetric(field, cand))
            ptype, pargs = _pds_type(field.q, len(cand), lam, mu, regular)
            offset = _translate_offset(field, d, cand)
            return Certificate(
                "TrivialSkewPDS" if offset is not None else "SkewPDS",
                field.spec,
                [[int(c) for c in d]],
                [int(c) for c in cand],
                {"v": field.q, "k": len(d), "lambda": lam, "mu": mu},
                pds_type=ptype,
                pds_type_args=pargs,
                regular=regular,
                trivial=offset is not None,
                translate_offset=offset,
            )
    return _none_cert(field, [d])


def check_family(field: Field, family, mode: str, reference=None) -> Certificate:
    """Certify a disjoint family as a (relative) DPDF/EPDF or DDF/EDF.

    mode "internal" classifies Int, mode "external" classifies Ext.
    Without a reference the two-valued profile must align with the union
    S; with a reference T it must be constant on T and on G* minus T.
    A constant nonzero profile is the lambda == mu degeneration and is
    reported as DDF/EDF; an empty difference multiset certifies nothing.
    """
    if mode not in ("internal", "external"):
        raise ValueError(f"unknown family mode {mode!r}")
    fam = _validated_family(field, family)
    prof = family_internal(field, fam) if mode == "internal" else family_external(field, fam)
    q = field.q
    sets_out = [[int(c) for c in s] for s in fam]
    ks = [len(s) for s in fam]
    params: dict = {"v": q, "m": len(fam)}
    if len(set(ks)) == 1:
        params["k"] = ks[0]
    else:
        params["ks"] = ks
    union = np.sort(np.concatenate(fam)) if fam else np.empty(0, dtype=np.int64)

    if prof.sum() == 0:
        return _none_cert(field, fam)
    vals = np.unique(prof[1:])
    if len(vals) == 1:
        params["lambda"] = int(vals[0])
        kind = "DDF" if mode == "internal" else "EDF"
        return Certificate(kind, field.spec, sets_out, None, params)
    if len(vals) != 2:
        return _none_cert(field, fam)

    if reference is not None:
        t = as_element_set(field, reference)
        if len(t) and t[0] == 0:
            raise ContainsZero("reference set must avoid 0")
        off = np.ones(q, dtype=bool)
        off[t] = False
        off[0] = False
        lam_vals = np.unique(prof[t])
        mu_vals = np.unique(prof[off])
        if len(lam_vals) != 1 or len(mu_vals) != 1:
            return _none_cert(field, fam)
        params["lambda"] = int(lam_vals[0])
        params["mu"] = int(mu_vals[0])
        kind = "RelativeDPDF" if mode == "internal" else "RelativeEPDF"
        comp = np.setdiff1d(field.nonzero_codes(), union, assume_unique=True)
        trivial = bool(np.array_equal(t, union) or np.array_equal(t, comp))
        return Certificate(
            kind, field.spec, sets_out, [int(c) for c in t], params, trivial=trivial
        )

    off = np.ones(q, dtype=bool)
    off[union] = False
    off[0] = False
    lam_vals = np.unique(prof[union])
    mu_vals = np.unique(prof[off])
    if len(lam_vals) != 1 or len(mu_vals) != 1:
        return _none_cert(field, fam)
    params["lambda"] = int(lam_vals[0])
    params["mu"] = int(mu_vals[0])
    kind = "DPDF" if mode == "internal" else "EPDF"
    return Certificate(kind, field.spec, sets_out, [int(c) for c in union], params)


def check_ads(field: Field, D) -> Certificate:
    """Certify D as an almost difference set: nonzero counts are lambda on
    some t-subset and lambda + 1 elsewhere."""
    d = as_element_set(field, D)
    prof = internal_differences(field, d)
    vals = np.unique(prof[1:])
    if len(vals) == 1:
        lam = int(vals[0])
    elif len(vals) == 2 and vals[1] == vals[0] + 1:
        lam = int(vals[0])
    else:
        return _none_cert(field, [d])
    t_set = np.flatnonzero(prof == lam)
    t_set = t_set[t_set != 0]
    return Certificate(
        "ADS",
        field.spec,
        [[int(c) for c in d]],
        [int(c) for c in t_set],
        {"v": field.q, "k": len(d), "lambda": lam, "t": len(t_set)},
    )


def verify_certificate(field: Field, cert: Certificate) -> bool:
    """Recompute the certificate from its stored sets and compare exactly."""
    kind = cert.kind
    if kind == "PDS":
        redo = check_pds(field, cert.sets[0])
    elif kind in ("SkewPDS", "TrivialSkewPDS"):
        redo = check_skew_pds(field, cert.sets[0])
    elif kind == "ADS":
        redo = check_ads(field, cert.sets[0])
    elif kind in ("DDF", "DPDF"):
        redo = check_family(field, cert.sets, "internal")
    elif kind in ("EDF", "EPDF"):
        redo = check_family(field, cert.sets, "external")
    elif kind == "RelativeDPDF":
        redo = check_family(field, cert.sets, "internal", reference=cert.reference_set)
    elif kind == "RelativeEPDF":
        redo = check_family(field, cert.sets, "external", reference=cert.reference_set)
    else:
        return False
    return redo.to_json() == cert.to_json()
