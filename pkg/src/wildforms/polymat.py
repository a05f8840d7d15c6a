"""Fraction-free elimination for matrices with polynomial entries.

A polynomial is a dict from packed exponent keys to nonzero int
coefficients; the empty dict is zero.  An exponent tuple packs into a
single int, 16 bits per variable with the first variable in the top
field, so multiplying monomials is one integer addition and comparing
packed keys is lex comparison.  Bareiss two-step elimination keeps
every division exact over Z[x], and the Gauss-Jordan variant clears
above the pivots as well, which produces polynomial kernel vectors
with no rational functions in sight.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .poly import Form

SHIFT = 16

Poly = dict[int, int]


def guard_mask(nvars: int) -> int:
    high = 1 << (SHIFT - 1)
    out = 0
    for _ in range(nvars):
        out = (out << SHIFT) | high
    return out


def pack(exponent: Sequence[int]) -> int:
    key = 0
    for e in exponent:
        if not 0 <= e < (1 << (SHIFT - 1)):
            raise ValueError(f"exponent {e} out of packing range")
        key = (key << SHIFT) | e
    return key


def unpack(key: int, nvars: int) -> tuple[int, ...]:
    out = []
    for _ in range(nvars):
        out.append(key & ((1 << SHIFT) - 1))
        key >>= SHIFT
    return tuple(reversed(out))


def pneg(a: Poly) -> Poly:
    return {k: -v for k, v in a.items()}


def padd(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for k, v in b.items():
        acc = out.get(k, 0) + v
        if acc:
            out[k] = acc
        else:
            out.pop(k, None)
    return out


def psub(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for k, v in b.items():
        acc = out.get(k, 0) - v
        if acc:
            out[k] = acc
        else:
            out.pop(k, None)
    return out


def pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out: Poly = {}
    get = out.get
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            acc = get(k, 0) + ca * cb
            if acc:
                out[k] = acc
            else:
                del out[k]
    return out


def pdivexact(num: Poly, den: Poly, guard: int) -> Poly:
    """Quotient num/den when the division is exact over Z[x]."""
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    if not num:
        return {}
    rem = dict(num)
    quot: Poly = {}
    kd = max(den)
    cd = den[kd]
    while rem:
        kn = max(rem)
        cn = rem[kn]
        kq = kn - kd
        if kq < 0 or (kq & guard) or cn % cd:
            raise ArithmeticError("inexact polynomial division")
        cq = cn // cd
        quot[kq] = cq
        for k2, c2 in den.items():
            k = kq + k2
            acc = rem.get(k, 0) - cq * c2
            if acc:
                rem[k] = acc
            else:
                rem.pop(k, None)
    return quot


def peval(p: Poly, point: Sequence[int], nvars: int) -> int:
    total = 0
    for key, coefficient in p.items():
        piece = coefficient
        for v, e in zip(point, unpack(key, nvars)):
            if e:
                piece *= v ** e
        total += piece
    return total


def from_form(f: "Form | None", scale: int) -> Poly:
    """Pack scale*f into int coefficients; scale must clear denominators."""
    if f is None:
        return {}
    out: Poly = {}
    for e, c in f.terms.items():
        value = c * scale
        if value.denominator != 1:
            raise ValueError("scale does not clear the denominators")
        out[pack(e)] = int(value)
    return out


def to_form(p: Poly, variables: Sequence[str], divide: int = 1) -> "Form | None":
    if not p:
        return None
    n = len(variables)
    terms = {unpack(k, n): Fraction(c, divide) for k, c in p.items()}
    return Form(variables, sum(next(iter(terms))), terms)


def common_scale(entries) -> int:
    """lcm of all coefficient denominators across a matrix of Forms."""
    from math import lcm
    scale = 1
    for row in entries:
        for f in row:
            if f is None:
                continue
            for c in f.terms.values():
                scale = lcm(scale, c.denominator)
    return scale


def bareiss_det(rows: list[list[Poly]], guard: int) -> Poly:
    """Exact determinant of a square polynomial matrix."""
    n = len(rows)
    if n == 0:
        return {0: 1}
    work = [list(row) for row in rows]
    sign = 1
    prev: Poly = {0: 1}
    for c in range(n - 1):
        pivot_row = None
        best = None
        for i in range(c, n):
            if work[i][c]:
                size = len(work[i][c])
                if best is None or size < best:
                    best = size
                    pivot_row = i
        if pivot_row is None:
            return {}
        if pivot_row != c:
            work[c], work[pivot_row] = work[pivot_row], work[c]
            sign = -sign
        piv = work[c][c]
        base = work[c]
        for i in range(c + 1, n):
            row = work[i]
            f = row[c]
            for j in range(c + 1, n):
                if f:
                    t = psub(pmul(piv, row[j]), pmul(f, base[j]))
                else:
                    t = pmul(piv, row[j])
                row[j] = pdivexact(t, prev, guard)
            row[c] = {}
        prev = piv
    d = work[n - 1][n - 1]
    return d if sign == 1 else pneg(d)


class JordanResult:
    """Outcome of fraction-free Gauss-Jordan elimination."""

    __slots__ = ("rank", "pivot_cols", "rows", "ncols")

    def __init__(self, rank: int, pivot_cols: list[int],
                 rows: list[list[Poly]], ncols: int):
        self.rank = rank
        self.pivot_cols = pivot_cols
        self.rows = rows
        self.ncols = ncols


def bareiss_jordan(rows: list[list[Poly]], guard: int) -> JordanResult:
    """Fraction-free Gauss-Jordan; divisions stay exact above pivots too."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    work = [list(row) for row in rows]
    prev: Poly = {0: 1}
    pivot_cols: list[int] = []
    r = 0
    for c in range(n):
        pivot_row = None
        best = None
        for i in range(r, m):
            if work[i][c]:
                size = len(work[i][c])
                if best is None or size < best:
                    best = size
                    pivot_row = i
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        piv = work[r][c]
        base = work[r]
        for i in range(m):
            if i == r:
                continue
            row = work[i]
            f = row[c]
            for j in range(n):
                if j == c:
                    continue
                if f:
                    t = psub(pmul(piv, row[j]), pmul(f, base[j]))
                elif row[j]:
                    t = pmul(piv, row[j])
                else:
                    continue
                row[j] = pdivexact(t, prev, guard)
            row[c] = {}
        prev = piv
        pivot_cols.append(c)
        r += 1
        if r == m:
            break
    return JordanResult(r, pivot_cols, work[:r], n)


def kernel_vector(result: JordanResult, guard: int) -> list[Poly] | None:
    """One right-kernel vector with polynomial entries, or None if full rank.

    Uses the first free column.  The pivot block of a fraction-free
    Gauss-Jordan result is diagonal with entries +-p, p the final
    pivot, which the construction below checks row by row.
    """
    free = [c for c in range(result.ncols) if c not in result.pivot_cols]
    if not free:
        return None
    c = free[0]
    vector: list[Poly] = [{} for _ in range(result.ncols)]
    if result.rank == 0:
        vector[c] = {0: 1}
        return vector
    p = result.rows[0][result.pivot_cols[0]]
    vector[c] = p
    for i, pc in enumerate(result.pivot_cols):
        diag = result.rows[i][pc]
        entry = result.rows[i][c]
        if diag == p:
            vector[pc] = pneg(entry)
        elif diag == pneg(p):
            vector[pc] = entry
        else:
            # fall back to an exact per-row rescale
            vector[pc] = pneg(pdivexact(pmul(entry, p), diag, guard))
    return vector
