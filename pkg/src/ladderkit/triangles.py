"""Exact weighted-path diagrams behind the amplitude power series.

A diagram is a staggered array of nodes T(r, n) (row r, column n) built by
walking directed links: the link column n -> n+1 carries weight w_right(n),
the link n+1 -> n carries w_left(n), and each node sums path contributions
from the row above,

    T(r+1, n) = w_right(n-1) T(r, n-1) + w_left(n) T(r, n+1),

from a single seed T(0, start_column) = 1.  Triangular diagrams keep
columns n >= 0 (paths never cross the border); diamonds allow all integer
columns.  Only sites with r = n - start_column (mod 2) are occupied.

Column n then codes a power series: the coefficient of y^r is
(-1)^((r - (n - start))/2) T(r, n) / r!.  With weights w_right(n) = n+1,
w_left(n) = n+p both directions read off coupling labels and column 0
yields the Euler (p=1) and tangent (p=2) numbers; unit weights on a
diamond give Pascal's triangle and Bessel coefficients; unit weights on a
triangle count border-respecting lattice paths (Catalan and ballot
numbers).

Everything here is exact rational arithmetic; no floats enter a diagram.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .algebra import AlgebraSpec
from .gn import bessel_jn


@dataclass(frozen=True)
class WeightRule:
    """Directed-link weights, both maps column index -> exact rational."""

    name: str
    w_right: Callable[[int], Fraction]
    w_left: Callable[[int], Fraction]


def unit_rule() -> WeightRule:
    one = Fraction(1)
    return WeightRule("unit", lambda n: one, lambda n: one)


def tilde_rule(p) -> WeightRule:
    p = Fraction(p)
    return WeightRule(f"tilde({p})", lambda n: Fraction(n + 1), lambda n: n + p)


def bar_rule(p) -> WeightRule:
    p = Fraction(p)
    return WeightRule(f"bar({p})", lambda n: n + p, lambda n: Fraction(n + 1))


def gauss_tilde_rule() -> WeightRule:
    one = Fraction(1)
    return WeightRule("gauss-tilde", lambda n: one, lambda n: Fraction(n + 1))


def gauss_bar_rule() -> WeightRule:
    one = Fraction(1)
    return WeightRule("gauss-bar", lambda n: Fraction(n + 1), lambda n: one)


def _rational_sqrt(x: Fraction) -> Fraction:
    if x < 0:
        raise ValueError("negative coupling squared")
    pn, pd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if pn * pn != x.numerator or pd * pd != x.denominator:
        raise ValueError(f"{x} is not the square of a rational")
    return Fraction(pn, pd)


def lambda_symmetric_rule(spec: AlgebraSpec) -> WeightRule:
    """Both link directions carry the coupling lambda_n itself.

    Exactness demands rational lambda_n, so this accepts only parametric
    specs whose lambda_n^2 are perfect rational squares (e.g. alpha = beta).
    Profiles with square roots should go through the tilde/bar rescalings
    instead.
    """
    if not spec.is_parametric:
        raise ValueError("lambda-symmetric rule needs a parametric spec")
    al = Fraction(spec.alpha)
    be = Fraction(spec.beta)
    si = Fraction(spec.sigma)

    def lam(n: int) -> Fraction:
        return _rational_sqrt(si * (al + n) * (be + n))

    for probe in range(4):
        lam(probe)
    return WeightRule(f"lambda-symmetric{spec.label()}", lam, lam)


_BOUNDARIES = ("triangular", "diamond")


@dataclass(frozen=True)
class CoeffDiagram:
    """Exact node table T(r, n), rows 0..num_rows-1, sparse over columns."""

    rule_name: str
    boundary: str
    start_column: int
    rows: tuple[dict, ...]

    def value(self, r: int, n: int) -> Fraction:
        if not 0 <= r < len(self.rows):
            raise IndexError(f"row {r} not generated")
        return self.rows[r].get(n, Fraction(0))

    def occupied(self, r: int) -> list[int]:
        return sorted(self.rows[r])

    @property
    def num_rows(self) -> int:
        return len(self.rows)


def generate(rule: WeightRule, boundary: str, start_column: int,
             num_rows: int) -> CoeffDiagram:
    """Build the diagram row by row from the seed column."""
    if boundary not in _BOUNDARIES:
        raise ValueError(f"boundary must be one of {_BOUNDARIES}")
    if num_rows < 1:
        raise ValueError("need at least one row")
    if boundary == "triangular" and start_column < 0:
        raise ValueError("triangular diagrams start at a column >= 0")
    rows = [{start_column: Fraction(1)}]
    for _ in range(1, num_rows):
        prev = rows[-1]
        cur: dict[int, Fraction] = {}
        targets = set()
        for n in prev:
            targets.add(n - 1)
            targets.add(n + 1)
        for n in sorted(targets):
            if boundary == "triangular" and n < 0:
                continue
            v = Fraction(0)
            if (n - 1) in prev:
                v += rule.w_right(n - 1) * prev[n - 1]
            if (n + 1) in prev:
                v += rule.w_left(n) * prev[n + 1]
            if v:
                cur[n] = v
        rows.append(cur)
    return CoeffDiagram(rule.name, boundary, start_column, tuple(rows))


def column_series(d: CoeffDiagram, n: int) -> list[tuple[int, Fraction]]:
    """Truncated power series coded by column n: pairs (power r,
    signed exact coefficient (-1)^((r - (n - start))/2) T(r, n) / r!)."""
    out = []
    for r in range(d.num_rows):
        t = d.rows[r].get(n)
        if t is None:
            continue
        sign = -1 if ((r - (n - d.start_column)) // 2) % 2 else 1
        out.append((r, sign * t / math.factorial(r)))
    return out


def evaluate_column(d: CoeffDiagram, n: int, y: float) -> float:
    return sum(float(c) * y ** r for r, c in column_series(d, n))


def series_match(d: CoeffDiagram, n: int, target_fn, y_grid) -> float:
    """Max deviation of the truncated column series from a target function
    over a grid (keep |y| well inside the truncation radius)."""
    return max(abs(evaluate_column(d, n, y) - target_fn(y)) for y in y_grid)


def row_sums(d: CoeffDiagram, signs: str = "plain") -> list[Fraction]:
    """Per-row node sums; the alternating variant flips sign at every
    occupied site left to right (occupied sites step by two columns)."""
    if signs not in ("plain", "alternating"):
        raise ValueError("signs must be 'plain' or 'alternating'")
    out = []
    for r in range(d.num_rows):
        cols = d.occupied(r)
        if not cols:
            out.append(Fraction(0))
            continue
        if signs == "plain":
            out.append(sum(d.rows[r][n] for n in cols))
        else:
            n_min = cols[0]
            out.append(sum((-1) ** (((n - n_min) // 2) % 2) * d.rows[r][n]
                           for n in cols))
    return out


def path_count_diagram(m: int, num_rows: int) -> CoeffDiagram:
    """Unit-weight triangular diagram seeded at column m: node values count
    the border-respecting lattice paths from m down to each column."""
    return generate(unit_rule(), "triangular", m, num_rows)


def _integral_j1_over_z(y: float) -> float:
    # int_0^y J_1(2z)/z dz by termwise integration of the series
    total, term = 0.0, y
    j = 0
    while True:
        total += term / (2 * j + 1)
        j += 1
        nxt = term * (-(y * y)) / (j * (j + 1))
        if abs(nxt) < 1e-18 * max(1.0, abs(total)) or j > 200:
            break
        term = nxt
    return total


SUMRULE_NAMES = ("bessel-unity", "bessel-cos", "bessel-sin",
                 "phase-unity", "phase-integral")


def sumrule_check(name: str, y: float, k_max: int) -> float:
    """|lhs - rhs| of the named Bessel sum rule with partial sums to k_max.

    bessel-unity:   J_0(2y) + 2 sum_k J_2k(2y)          = 1
    bessel-cos:     J_0(2y) + 2 sum_k (-1)^k J_2k(2y)   = cos(2y)
    bessel-sin:     2 sum_k (-1)^(k+1) J_{2k-1}(2y)     = sin(2y)
    phase-unity:    (1/y) sum_k (2k+1) J_{2k+1}(2y)     = 1
    phase-integral: (1/y) sum_k 2k J_2k(2y)             = int_0^y J_1(2z)/z dz
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    x = 2.0 * y
    if name == "bessel-unity":
        lhs = bessel_jn(0, x) + 2.0 * sum(bessel_jn(2 * k, x)
                                          for k in range(1, k_max + 1))
        return abs(lhs - 1.0)
    if name == "bessel-cos":
        lhs = bessel_jn(0, x) + 2.0 * sum((-1.0) ** k * bessel_jn(2 * k, x)
                                          for k in range(1, k_max + 1))
        return abs(lhs - math.cos(x))
    if name == "bessel-sin":
        lhs = 2.0 * sum((-1.0) ** (k + 1) * bessel_jn(2 * k - 1, x)
                        for k in range(1, k_max + 1))
        return abs(lhs - math.sin(x))
    if name == "phase-unity":
        lhs = sum((2 * k + 1) * bessel_jn(2 * k + 1, x)
                  for k in range(0, k_max + 1)) / y
        return abs(lhs - 1.0)
    if name == "phase-integral":
        lhs = sum(2 * k * bessel_jn(2 * k, x)
                  for k in range(1, k_max + 1)) / y
        return abs(lhs - _integral_j1_over_z(y))
    raise ValueError(f"unknown sum rule {name!r}; choose from {SUMRULE_NAMES}")


def render_ascii(d: CoeffDiagram) -> str:
    """Node values laid out on their staggered columns, one text row per
    diagram row."""
    cols = sorted({n for row in d.rows for n in row})
    if not cols:
        return ""
    width = max(len(str(row[n])) for row in d.rows for n in row) + 2
    col_pos = {n: i for i, n in enumerate(range(cols[0], cols[-1] + 1))}
    header = "".join(f"n={n}".center(width) for n in range(cols[0], cols[-1] + 1))
    lines = [header]
    for r in range(d.num_rows):
        cells = [" " * width] * (cols[-1] - cols[0] + 1)
        for n, v in sorted(d.rows[r].items()):
            cells[col_pos[n]] = str(v).center(width)
        lines.append("".join(cells).rstrip())
    return "\n".join(lines)


def to_records(d: CoeffDiagram) -> list[dict]:
    """One machine-readable record per node; numerator/denominator as
    strings so arbitrary-size integers survive serialization."""
    recs = []
    for r in range(d.num_rows):
        for n in d.occupied(r):
            v = d.rows[r][n]
            recs.append({"row": r, "column": n,
                         "numerator": str(v.numerator),
                         "denominator": str(v.denominator)})
    return recs
