"""Catalecticant slices, Hilbert functions and conciseness checks.

The degree-k catalecticant of a degree-d form f maps degree-k
differential operators to their derivatives of degree d-k.  Its rank is
the k-th value of the Hilbert function of the apolar algebra, and its
left kernel is the degree-k slice of the annihilator.  All ranks are
exact; see linalg for the elimination details.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import comb

from . import linalg
from .poly import DiffOp, Exponent, Form, apply, monomial, monomials


def require_analysis_form(f: object) -> Form:
    """Reject the zero marker and degree-0 constants up front."""
    if f is None:
        raise ValueError("the zero polynomial is rejected (no degree)")
    if not isinstance(f, Form):
        raise TypeError(f"expected a Form, got {type(f).__name__}")
    if f.degree < 1:
        raise ValueError("analyses need a form of degree at least 1")
    return f


class CatalecticantSlice:
    """The degree-k differentiation map out of a fixed form."""

    def __init__(self, form: Form, k: int):
        require_analysis_form(form)
        if not 0 <= k <= form.degree:
            raise ValueError(f"slice degree {k} outside 0..{form.degree}")
        self.form = form
        self.k = k
        self.row_monomials: list[Exponent] = monomials(form.nvars, k)
        self.col_monomials: list[Exponent] = monomials(form.nvars, form.degree - k)
        col_index = {e: j for j, e in enumerate(self.col_monomials)}
        rows: list[dict[int, Fraction]] = []
        for e in self.row_monomials:
            image = apply(monomial(form.variables, e), form)
            if image is None:
                rows.append({})
            else:
                rows.append({col_index[m]: c for m, c in image.terms.items()})
        self.rows = rows
        self.rank = linalg.sparse_rank(rows)

    @property
    def nrows(self) -> int:
        return len(self.row_monomials)

    @property
    def ncols(self) -> int:
        return len(self.col_monomials)

    @cached_property
    def kernel_basis(self) -> list[DiffOp]:
        """Degree-k annihilator slice, reduced echelon over the row order."""
        transpose = [[row.get(j, Fraction(0)) for row in self.rows]
                     for j in range(self.ncols)]
        if not transpose:
            transpose = [[Fraction(0)] * self.nrows]
        basis = []
        for vector in linalg.nullspace(transpose):
            terms = {self.row_monomials[i]: c
                     for i, c in enumerate(vector) if c != 0}
            basis.append(Form(self.form.variables, self.k, terms))
        return basis


def catalecticant(f: Form, k: int) -> CatalecticantSlice:
    return CatalecticantSlice(f, k)


class HilbertFunction(tuple):
    """Rank vector (a_0, ..., a_d) of the apolar algebra."""

    @property
    def is_symmetric(self) -> bool:
        return tuple(self) == tuple(reversed(self))

    @property
    def is_unimodal(self) -> bool:
        return is_unimodal(self)


def hilbert(f: Form) -> HilbertFunction:
    """Exact Hilbert function, every slice rank computed independently."""
    require_analysis_form(f)
    return HilbertFunction(catalecticant(f, k).rank for k in range(f.degree + 1))


def is_unimodal(values) -> bool:
    """No strict valley: rises first, falls after, never dips and recovers."""
    seq = list(values)
    if not seq:
        raise ValueError("empty Hilbert vector")
    descending = False
    for a, b in zip(seq, seq[1:]):
        if b < a:
            descending = True
        elif b > a and descending:
            return False
    return True


def maximal_hilbert_through(f: Form, k: int) -> bool:
    """Whether a_j equals dim Q_j for every j <= k."""
    require_analysis_form(f)
    if k < 0:
        raise ValueError("negative degree")
    n = f.nvars
    return all(catalecticant(f, j).rank == comb(n - 1 + j, j)
               for j in range(k, -1, -1))


def is_k_concise(f: Form, k: int) -> bool:
    """Maximal Hilbert growth through degree k; defined when d >= 2k+1."""
    require_analysis_form(f)
    if k < 0:
        raise ValueError("negative degree")
    if 2 * k + 1 > f.degree:
        raise ValueError(
            f"{k}-conciseness needs degree >= {2 * k + 1}, form has degree {f.degree}")
    return maximal_hilbert_through(f, k)


def conciseness(f: Form) -> int:
    """Largest admissible k with maximal growth through degree k."""
    require_analysis_form(f)
    best = 0
    for k in range(1, (f.degree - 1) // 2 + 1):
        if not maximal_hilbert_through(f, k):
            break
        best = k
    return best


class ApolarBasis:
    """Monomial basis of a graded piece of the apolar algebra.

    The monomials are the greedy-first independent rows of the
    catalecticant under the graded-lex row order, so the choice is
    canonical for a fixed form.
    """

    def __init__(self, form: Form, k: int, indices: list[int],
                 monomial_list: list[Exponent]):
        self.form = form
        self.k = k
        self.row_indices = tuple(indices)
        self.monomials = tuple(monomial_list)

    def __len__(self) -> int:
        return len(self.monomials)

    def __repr__(self) -> str:
        names = [repr(monomial(self.form.variables, e)) for e in self.monomials]
        return f"ApolarBasis(k={self.k}, [{', '.join(names)}])"


def apolar_basis(f: Form, k: int) -> ApolarBasis:
    slice_ = catalecticant(f, k)
    kept = linalg.greedy_independent(slice_.rows)
    if len(kept) != slice_.rank:
        raise RuntimeError("greedy basis size disagrees with slice rank")
    return ApolarBasis(f, k, kept, [slice_.row_monomials[i] for i in kept])
