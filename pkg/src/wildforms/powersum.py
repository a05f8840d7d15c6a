"""Power sum decompositions and the Waring side of the toolkit.

A decomposition is a list of pairwise non-proportional linear forms
with nonzero rational scalars whose scaled d-th powers sum to the
target exactly.  The Veronese coordinate matrix W_k of a decomposition
evaluates the degree-k apolar basis monomials at the points, and the
mixed Hessian of the target factors as d!/(l-k)! * W_{d-l} * D * W_k^t
with D diagonal in the scaled powers; that identity is what
factorization_check verifies entry by entry.

Binary Waring ranks follow the annihilator scan: the rank is the least
r whose kernel slice contains a squarefree operator.  Squarefreeness of
one binary form is an exact gcd test on a dehomogenization with degree
bookkeeping for the root at infinity; whether a whole kernel slice
contains any squarefree member is decided exactly through the
resultant of the partials of a symbolic member, with fast sampled
shortcuts tried first.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import product as iter_product

from . import linalg, polymat
from .apolar import apolar_basis, catalecticant, require_analysis_form
from .poly import Form, LinearForm, form_sum, power, scale


class PowerSumDecomposition:
    """Exact scaled power sum: sum of c_i * l_i^d equal to the target."""

    def __init__(self, linear_forms, degree: int, scalars=None,
                 target: Form | None = None):
        forms = tuple(linear_forms)
        if not forms:
            raise ValueError("a decomposition needs at least one linear form")
        if degree < 1:
            raise ValueError("degree must be at least 1")
        if scalars is None:
            weights = tuple(Fraction(1) for _ in forms)
        else:
            weights = tuple(Fraction(c) for c in scalars)
        if len(weights) != len(forms):
            raise ValueError("scalar list length does not match the forms")
        if any(c == 0 for c in weights):
            raise ValueError("zero scalars are not allowed")
        for i in range(len(forms)):
            for j in range(i + 1, len(forms)):
                if forms[i].proportional(forms[j]):
                    raise ValueError(
                        f"linear forms {i} and {j} are proportional")
        total = form_sum(scale(power(l, degree), c)
                         for l, c in zip(forms, weights))
        if total is None:
            raise ValueError("the scaled powers cancel to zero")
        if target is not None and total != target:
            raise ValueError("the scaled powers do not sum to the target")
        self.linear_forms = forms
        self.scalars = weights
        self.degree = degree
        self.target = total

    @property
    def length(self) -> int:
        return len(self.linear_forms)

    @property
    def is_pure(self) -> bool:
        return all(c == 1 for c in self.scalars)


def verify_decomposition(dec: PowerSumDecomposition) -> bool:
    """Recompute the scaled power sum and compare with the target."""
    total = form_sum(scale(power(l, dec.degree), c)
                     for l, c in zip(dec.linear_forms, dec.scalars))
    return total == dec.target


class VeroneseMatrix:
    """Degree-k apolar basis monomials evaluated at the decomposition points."""

    def __init__(self, dec: PowerSumDecomposition, k: int):
        if k < 0 or k > dec.degree:
            raise ValueError(f"need 0 <= k <= {dec.degree}")
        self.basis = apolar_basis(dec.target, k)
        self.k = k
        self.entries: list[list[Fraction]] = []
        for exponent in self.basis.monomials:
            row = []
            for l in dec.linear_forms:
                value = Fraction(1)
                for a, e in zip(l.coefficients, exponent):
                    if e:
                        value *= a ** e
                row.append(value)
            self.entries.append(row)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def rank(self) -> int:
        return linalg.rank(self.entries) if self.entries else 0


def veronese_matrix(dec: PowerSumDecomposition, k: int) -> VeroneseMatrix:
    return VeroneseMatrix(dec, k)


def factorization_check(dec: PowerSumDecomposition, k: int, l: int) -> bool:
    """Exact test of mixed Hessian = d!/(l-k)! * W_{d-l} * D_{k,l} * W_k^t.

    The diagonal D carries the decomposition scalars along with the
    powers l_r^(l-k), which keeps the identity true for signed inputs.
    """
    from .hessian import mixed_hessian

    d = dec.degree
    if not (0 <= k <= l and k + l <= d):
        raise ValueError(f"need 0 <= k <= l with k+l <= {d}, got ({k}, {l})")
    target = dec.target
    hess = mixed_hessian(target, d - l, k)
    w_left = veronese_matrix(dec, d - l)
    w_right = veronese_matrix(dec, k)
    if (hess.row_basis.monomials != w_left.basis.monomials
            or hess.col_basis.monomials != w_right.basis.monomials):
        raise RuntimeError("basis mismatch between Hessian and W matrices")
    scalar = math.factorial(d) // math.factorial(l - k)
    middle = [scale(power(lin, l - k), c * scalar)
              for lin, c in zip(dec.linear_forms, dec.scalars)]
    for i in range(hess.nrows):
        for j in range(hess.ncols):
            pieces = []
            for r in range(dec.length):
                c = w_left.entries[i][r] * w_right.entries[j][r]
                if c != 0:
                    pieces.append(scale(middle[r], c))
            if form_sum(pieces) != hess.entries[i][j]:
                return False
    return True


def hessian_nonvanishing(dec: PowerSumDecomposition, k: int) -> bool:
    """Whether a length-a_k decomposition certifies hess^k != 0.

    With s = a_k the factorization is square, D is invertible, and W_k
    of full rank forces a nonzero determinant; the rank of W_k is the
    only thing left to check.
    """
    d = dec.degree
    if 2 * k > d:
        raise ValueError(f"need 2k <= {d}")
    w = veronese_matrix(dec, k)
    if dec.length != w.nrows:
        raise ValueError(
            f"decomposition length {dec.length} is not a_{k} = {w.nrows}")
    return w.rank() == dec.length


def _dehomogenized(f: Form) -> list[Fraction]:
    """Coefficients of f(t, 1) by ascending power of t."""
    out = [Fraction(0)] * (f.degree + 1)
    for (a, _), c in f.terms.items():
        out[a] = c
    return out


def _poly_degree(coeffs: list[Fraction]) -> int:
    for i in range(len(coeffs) - 1, -1, -1):
        if coeffs[i]:
            return i
    return -1


def _poly_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    db = _poly_degree(b)
    lead = b[db]
    while True:
        da = _poly_degree(a)
        if da < db:
            return a[:max(da + 1, 0)]
        q = a[da] / lead
        shift = da - db
        for i in range(db + 1):
            a[shift + i] -= q * b[i]
        a[da] = Fraction(0)


def _gcd_degree(a: list[Fraction], b: list[Fraction]) -> int:
    while _poly_degree(b) >= 0:
        a, b = b, _poly_mod(a, b)
    return _poly_degree(a)


def is_squarefree_binary(f: Form) -> bool:
    """No repeated root on the projective line, decided exactly."""
    require_analysis_form(f)
    if f.nvars != 2:
        raise ValueError("squarefree test is for binary forms")
    p = _dehomogenized(f)
    dp = _poly_degree(p)
    if f.degree - dp > 1:
        return False  # root at infinity with multiplicity >= 2
    if dp < 1:
        return True
    derivative = [i * p[i] for i in range(1, dp + 1)]
    return _gcd_degree(p, derivative) == 0


def _sylvester_resultant(a: list[polymat.Poly], b: list[polymat.Poly],
                         guard: int) -> polymat.Poly:
    """Resultant of two binary forms given by descending coefficient lists."""
    m = len(a) - 1
    n = len(b) - 1
    size = m + n
    rows: list[list[polymat.Poly]] = []
    for i in range(n):
        rows.append([{} for _ in range(i)] + list(a)
                    + [{} for _ in range(size - i - m - 1)])
    for i in range(m):
        rows.append([{} for _ in range(i)] + list(b)
                    + [{} for _ in range(size - i - n - 1)])
    return polymat.bareiss_det(rows, guard)


def _space_has_squarefree(basis: list[Form]) -> bool:
    """Whether a linear space of binary forms has a squarefree member.

    Samples cheap candidates first; the exact fallback tests whether
    the resultant of the partials of a symbolic member vanishes
    identically, which settles existence over the complex numbers.
    """
    for g in basis:
        if is_squarefree_binary(g):
            return True
    dim = len(basis)
    if dim == 1:
        return False
    variables = basis[0].variables
    degree = basis[0].degree
    if dim <= 3:
        for combo in iter_product(range(-2, 3), repeat=dim):
            candidate = form_sum(scale(g, c) for g, c in zip(basis, combo))
            if candidate is not None and is_squarefree_binary(candidate):
                return True
    else:
        rng = random.Random(0)
        for _ in range(32):
            combo = [rng.randint(-9, 9) for _ in range(dim)]
            candidate = form_sum(scale(g, c) for g, c in zip(basis, combo))
            if candidate is not None and is_squarefree_binary(candidate):
                return True
    if degree == 1:
        return True  # nonzero linear forms are squarefree
    # exact decision: member F(t) = sum t_i g_i, test Res(F_x, F_y) == 0
    scaled = []
    for g in basis:
        lcm = math.lcm(*(c.denominator for c in g.terms.values()))
        scaled.append({e: int(c * lcm) for e, c in g.terms.items()})
    guard = polymat.guard_mask(dim)
    fx: list[polymat.Poly] = []
    fy: list[polymat.Poly] = []
    # coefficient of x^a y^(degree-1-a) in each partial, descending in a
    for a in range(degree - 1, -1, -1):
        cx: polymat.Poly = {}
        cy: polymat.Poly = {}
        for i, g in enumerate(scaled):
            key = polymat.pack(tuple(1 if j == i else 0 for j in range(dim)))
            vx = (a + 1) * g.get((a + 1, degree - a - 1), 0)
            vy = (degree - a) * g.get((a, degree - a), 0)
            if vx:
                cx[key] = cx.get(key, 0) + vx
            if vy:
                cy[key] = cy.get(key, 0) + vy
        fx.append(cx)
        fy.append(cy)
    return bool(_sylvester_resultant(fx, fy, guard))


def binary_waring_rank(f: Form) -> int:
    """Least r whose annihilator slice contains a squarefree operator."""
    require_analysis_form(f)
    if f.nvars != 2:
        raise ValueError("binary forms only")
    for r in range(1, f.degree + 1):
        kernel = catalecticant(f, r).kernel_basis
        if kernel and _space_has_squarefree(kernel):
            return r
    raise RuntimeError("no squarefree annihilator found through the degree")
