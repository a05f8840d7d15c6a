"""Mixed Hessians, certified rank reports and Lefschetz checks.

The (k,l) mixed Hessian of f is the matrix of second-kind derivatives
alpha*beta(f) over the chosen monomial bases of the apolar algebra in
degrees k and l.  Rank questions about multiplication maps of the
algebra reduce to evaluated ranks of these matrices, which is what the
Lefschetz checks use.

Rank certification runs a ladder: exact evaluation at seeded integer
points gives a certified lower bound, the bipartite matching number of
the nonzero-entry support gives a certified upper bound, and when the
two meet the rank is settled without symbolic work.  Otherwise a
fraction-free symbolic elimination decides the rank below a size cap,
and above the cap the report is labelled probabilistic with its
Schwartz-Zippel odds, never silently.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg, polymat
from .apolar import apolar_basis, require_analysis_form
from .poly import Form, LinearForm, apply, monomial, monomials, multiply


class BudgetExceeded(RuntimeError):
    """Raised when a certification budget is exceeded under strict policy."""


@dataclass
class RankPolicy:
    seed: int = 0
    trials: int = 8
    window: int = 1 << 16
    max_symbolic_dim: int = 12
    max_entry_degree: int = 12
    strict: bool = False


@dataclass
class RankReport:
    value: int
    certainty: str  # certified-symbolic | certified-structural | probabilistic
    method: str
    nrows: int
    ncols: int
    degenerate: bool
    support_bound: int
    trials: int = 0
    witness_point: tuple | None = None
    kernel_witness: list | None = None
    error_bound: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.certainty != "probabilistic"

    def to_dict(self) -> dict:
        out = {
            "value": self.value,
            "certainty": self.certainty,
            "method": self.method,
            "shape": [self.nrows, self.ncols],
            "degenerate": self.degenerate,
            "support_bound": self.support_bound,
            "trials": self.trials,
        }
        if self.witness_point is not None:
            out["witness_point"] = [str(x) for x in self.witness_point]
        if self.kernel_witness is not None:
            out["kernel_witness"] = ["0" if w is None else repr(w)
                                     for w in self.kernel_witness]
        if self.error_bound is not None:
            out["error_bound"] = self.error_bound
        if self.notes:
            out["notes"] = list(self.notes)
        return out


class MixedHessian:
    """Matrix [alpha_i beta_j (f)] over apolar basis monomials."""

    def __init__(self, form: Form, k: int, l: int, row_basis, col_basis,
                 entries: list[list[Form | None]]):
        self.form = form
        self.k = k
        self.l = l
        self.row_basis = row_basis
        self.col_basis = col_basis
        self.entries = entries

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def entry_degree(self) -> int:
        return self.form.degree - self.k - self.l


def mixed_hessian(f: Form, k: int, l: int) -> MixedHessian:
    require_analysis_form(f)
    if k < 0 or l < 0 or k + l > f.degree:
        raise ValueError(f"need k, l >= 0 with k+l <= {f.degree}, got ({k}, {l})")
    rows = apolar_basis(f, k)
    cols = apolar_basis(f, l)
    entries: list[list[Form | None]] = []
    for er in rows.monomials:
        line = []
        for ec in cols.monomials:
            op = monomial(f.variables, tuple(a + b for a, b in zip(er, ec)))
            line.append(apply(op, f))
        entries.append(line)
    return MixedHessian(f, k, l, rows, cols, entries)


def evaluated_rank(hess: MixedHessian, point) -> int:
    """Exact rank of the Hessian evaluated at one rational point."""
    if not hess.entries or not hess.entries[0]:
        return 0
    matrix = [[Fraction(0) if e is None else e.evaluate(point) for e in row]
              for row in hess.entries]
    return linalg.rank(matrix)


def _symbolic_rows(hess: MixedHessian) -> tuple[list[list[polymat.Poly]], int, int]:
    scale = polymat.common_scale(hess.entries)
    guard = polymat.guard_mask(hess.form.nvars)
    rows = [[polymat.from_form(e, scale) for e in row] for row in hess.entries]
    return rows, scale, guard


def generic_rank(hess: MixedHessian, policy: RankPolicy | None = None) -> RankReport:
    """Generic rank of the Hessian, certified whenever the ladder allows."""
    policy = policy or RankPolicy()
    m, n = hess.nrows, hess.ncols
    cap = min(m, n)
    support = [set(j for j, e in enumerate(row) if e is not None)
               for row in hess.entries]
    bound = linalg.max_matching(support)
    if cap == 0 or bound == 0:
        return RankReport(0, "certified-structural", "empty support",
                          m, n, degenerate=cap > 0, support_bound=bound)

    rng = random.Random(policy.seed)
    best = 0
    witness = None
    trials = 0
    target = min(cap, bound)
    for _ in range(policy.trials):
        point = tuple(rng.randint(1, policy.window) for _ in hess.form.variables)
        trials += 1
        r = evaluated_rank(hess, point)
        if r > best:
            best, witness = r, point
        if best >= target:
            break

    if best == cap:
        return RankReport(best, "certified-structural",
                          "evaluation witness at full rank", m, n,
                          degenerate=False, support_bound=bound,
                          trials=trials, witness_point=witness)

    delta = hess.entry_degree
    if max(m, n) <= policy.max_symbolic_dim and delta <= policy.max_entry_degree:
        rows, _, guard = _symbolic_rows(hess)
        result = polymat.bareiss_jordan(rows, guard)
        value = result.rank
        if value < best:
            raise RuntimeError("symbolic rank below an evaluation witness")
        witness_forms = None
        if value < cap:
            vector = polymat.kernel_vector(result, guard)
            if vector is None:
                raise RuntimeError("degenerate matrix without a kernel vector")
            for row in rows:
                acc: polymat.Poly = {}
                for entry, w in zip(row, vector):
                    if entry and w:
                        acc = polymat.padd(acc, polymat.pmul(entry, w))
                if acc:
                    raise RuntimeError("kernel witness failed exact verification")
            content = math.gcd(*(c for w in vector for c in w.values())) or 1
            witness_forms = [polymat.to_form(w, hess.form.variables, divide=content)
                             for w in vector]
        return RankReport(value, "certified-symbolic",
                          "fraction-free Gauss-Jordan elimination", m, n,
                          degenerate=value < cap, support_bound=bound,
                          trials=trials, witness_point=witness,
                          kernel_witness=witness_forms)

    if best == bound:
        # above the symbolic cap, but the support pattern already caps the rank
        return RankReport(best, "certified-structural",
                          "evaluation witness meets support matching bound",
                          m, n, degenerate=best < cap, support_bound=bound,
                          trials=trials, witness_point=witness)

    if policy.strict:
        raise BudgetExceeded(
            f"symbolic certification is capped at dimension {policy.max_symbolic_dim} "
            f"and entry degree {policy.max_entry_degree}; this Hessian is {m}x{n} "
            f"with entries of degree {delta}")
    odds = Fraction((best + 1) * max(delta, 1), policy.window)
    return RankReport(best, "probabilistic", "seeded integer evaluations", m, n,
                      degenerate=best < cap, support_bound=bound,
                      trials=trials, witness_point=witness,
                      error_bound=f"missed-rank odds <= ({odds})^{trials}",
                      notes=["the value is a certified lower bound; "
                             "degeneracy is not certified"])


def hessian_determinant(f: Form, k: int,
                        policy: RankPolicy | None = None) -> Form | None:
    """Exact determinant of the k-th Hessian; None is the zero marker."""
    policy = policy or RankPolicy()
    require_analysis_form(f)
    if k < 0 or 2 * k > f.degree:
        raise ValueError(f"hessian determinant needs 0 <= 2k <= {f.degree}")
    hess = mixed_hessian(f, k, k)
    m = hess.nrows
    if m > policy.max_symbolic_dim:
        raise BudgetExceeded(
            f"symbolic determinant is capped at dimension {policy.max_symbolic_dim}, "
            f"this Hessian is {m}x{m}")
    scale = polymat.common_scale(hess.entries)
    rows = [[polymat.from_form(e, scale) for e in row] for row in hess.entries]
    det = polymat.bareiss_det(rows, polymat.guard_mask(f.nvars))
    return polymat.to_form(det, f.variables, divide=scale ** m)


def _criterion_maps(f: Form, prop: str) -> list[tuple[int, int]]:
    d = f.degree
    if prop == "slp":
        return [(k, k) for k in range(d // 2 + 1)]
    if prop == "wlp":
        q, odd = divmod(d, 2)
        if odd:
            return [(q, q)]
        return [(q - 1, q)] if q >= 1 else [(0, 0)]
    raise ValueError("property must be 'wlp' or 'slp'")


@dataclass
class LefschetzReport:
    property: str
    verdict: str  # holds | fails | undetermined
    element: LinearForm | None
    checks: list[dict]
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "property": self.property,
            "verdict": self.verdict,
            "element": None if self.element is None
            else [str(c) for c in self.element.coefficients],
            "checks": self.checks,
            "notes": list(self.notes),
        }


def lefschetz_check(f: Form, L: LinearForm, prop: str) -> LefschetzReport:
    """Decide the property for one given linear element, exactly."""
    require_analysis_form(f)
    if L.variables != f.variables:
        raise ValueError("element and form use different variable tuples")
    checks = []
    ok = True
    for k, l in _criterion_maps(f, prop):
        hess = mixed_hessian(f, k, l)
        required = min(hess.nrows, hess.ncols)
        achieved = evaluated_rank(hess, L.point())
        checks.append({"hessian": [k, l], "source": l, "target": f.degree - k,
                       "required": required, "achieved": achieved})
        ok = ok and achieved == required
    return LefschetzReport(prop, "holds" if ok else "fails", L, checks)


def lefschetz_property(f: Form, prop: str,
                       policy: RankPolicy | None = None) -> LefschetzReport:
    """Existence version: does some linear element have the property.

    Holds when a sampled element passes (existence is enough); fails
    only on a certified generic obstruction; otherwise undetermined.
    """
    policy = policy or RankPolicy()
    require_analysis_form(f)
    maps = _criterion_maps(f, prop)
    hessians = [mixed_hessian(f, k, l) for k, l in maps]
    required = [min(h.nrows, h.ncols) for h in hessians]
    rng = random.Random(policy.seed)
    for _ in range(policy.trials):
        point = tuple(rng.randint(1, policy.window) for _ in f.variables)
        achieved = [evaluated_rank(h, point) for h in hessians]
        if all(a == r for a, r in zip(achieved, required)):
            checks = [{"hessian": [h.k, h.l], "source": h.l,
                       "target": f.degree - h.k, "required": r, "achieved": a}
                      for h, r, a in zip(hessians, required, achieved)]
            return LefschetzReport(prop, "holds", LinearForm(f.variables, point),
                                   checks, ["sampled witness element recorded"])
    verdict = "undetermined"
    checks = []
    notes = []
    for h, r in zip(hessians, required):
        report = generic_rank(h, policy)
        checks.append({"hessian": [h.k, h.l], "source": h.l,
                       "target": f.degree - h.k, "required": r,
                       "achieved": report.value, "certainty": report.certainty})
        if report.certified and report.value < r:
            verdict = "fails"
            notes.append(f"multiplication from degree {h.l} into degree "
                         f"{f.degree - h.k} has certified generic rank "
                         f"{report.value} < {r}, for every linear element")
    if verdict != "fails":
        notes.append("no sampled element passed and no certified obstruction found")
    return LefschetzReport(prop, verdict, None, checks, notes)


def multiplication_map_rank(f: Form, L: LinearForm, k: int, l: int) -> int:
    """Rank of multiplication by L^(l-k) from degree k to degree l.

    Built directly by reducing products modulo the annihilator, so it is
    an independent cross-check for the evaluated Hessian rank.
    """
    require_analysis_form(f)
    if not 0 <= k < l <= f.degree:
        raise ValueError(f"need 0 <= k < l <= {f.degree}, got ({k}, {l})")
    if L.variables != f.variables:
        raise ValueError("element and form use different variable tuples")
    basis_k = apolar_basis(f, k)
    basis_l = apolar_basis(f, l)
    cols_mono = monomials(f.nvars, f.degree - l)
    index = {e: i for i, e in enumerate(cols_mono)}

    def vectorize(form: Form | None) -> list[Fraction]:
        v = [Fraction(0)] * len(cols_mono)
        if form is not None:
            for e, c in form.terms.items():
                v[index[e]] = c
        return v

    images = [vectorize(apply(monomial(f.variables, e), f))
              for e in basis_l.monomials]
    ell = L.to_form()
    op = ell
    for _ in range(l - k - 1):
        op = multiply(op, ell)
    matrix_cols = []
    for e in basis_k.monomials:
        q = multiply(op, monomial(f.variables, e))
        coords = linalg.solve_columns(images, vectorize(apply(q, f)))
        if coords is None:
            raise RuntimeError("product image left the span of the basis images")
        matrix_cols.append(coords)
    matrix = [[col[i] for col in matrix_cols] for i in range(len(basis_l))]
    if not matrix or not matrix[0]:
        return 0
    return linalg.rank(matrix)
