"""Exact linear algebra over Q and Z.

Everything here works on Python ints and :class:`fractions.Fraction`; no
floating point is involved.  Pivoting always takes the first nonzero entry in
column order so bases come out deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major Fractions

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(Fraction(x) for r in rows for x in r))

    def row(self, i: int) -> list[Fraction]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    def __matmul__(self, v):
        return [sum((a * b for a, b in zip(self.row(i), v)), Fraction(0)) for i in range(self.rows)]

    def drop_columns(self, cols: set[int]) -> "RationalMatrix":
        keep = [c for c in range(self.cols) if c not in cols]
        return RationalMatrix.from_rows([[r[c] for c in keep] for r in self.to_rows()], len(keep))


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    return [x // g for x in row] if g > 1 else row


def integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    """Scale each rational row by its common denominator (row space unchanged)."""
    out = []
    for r in rows:
        fr = [Fraction(x) for x in r]
        d = lcm(*(x.denominator for x in fr)) if fr else 1
        out.append(_primitive([int(x * d) for x in fr]))
    return out


def int_rref(rows: Sequence[Sequence[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free Gauss-Jordan elimination on integer rows.

    Returns nonzero rows of a reduced echelon form (each row primitive, pivot
    entries positive, zero above and below every pivot) and the pivot columns.
    """
    work = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    top = 0
    for c in range(ncols):
        if top == len(work):
            break
        p = next((i for i in range(top, len(work)) if work[i][c]), None)
        if p is None:
            continue
        work[top], work[p] = work[p], work[top]
        prow = work[top]
        if prow[c] < 0:
            prow = [-x for x in prow]
        prow = _primitive(prow)
        work[top] = prow
        a = prow[c]
        for i in range(len(work)):
            if i == top:
                continue
            b = work[i][c]
            if b:
                g = gcd(a, b)
                fa, fb = a // g, b // g
                work[i] = _primitive([fa * x - fb * y for x, y in zip(work[i], prow)])
        pivots.append(c)
        top += 1
        work = work[:top] + [r for r in work[top:] if any(r)]
    return work[:top], pivots


def rank(m) -> int:
    rows = m.to_rows() if isinstance(m, RationalMatrix) else m
    ncols = m.cols if isinstance(m, RationalMatrix) else (len(rows[0]) if rows else 0)
    return len(int_rref(integer_rows(rows), ncols)[1])


def _kernel_pairs(rows, ncols):
    red, pivots = int_rref(rows, ncols)
    pivset = set(pivots)
    scale = lcm(*(red[i][p] for i, p in enumerate(pivots))) if pivots else 1
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = scale
        for i, p in enumerate(pivots):
            v[p] = -red[i][f] * (scale // red[i][p])
        out.append((f, _primitive(v)))
    return out


def int_kernel_vectors(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Primitive integer vectors spanning the rational right kernel.

    One vector per free column of the reduced echelon form, in column order;
    each is zero on the other free columns.
    """
    return [v for _, v in _kernel_pairs(rows, ncols)]


def kernel_basis(m: RationalMatrix) -> list[list[Fraction]]:
    """Right kernel basis read off the reduced echelon form, free coordinate 1."""
    return [
        [Fraction(x, v[f]) for x in v]
        for f, v in _kernel_pairs(integer_rows(m.to_rows()), m.cols)
    ]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a - (a // b) * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf(rows: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """Row Hermite normal form of the lattice spanned by integer rows.

    Output rows are in echelon form with positive pivots, entries above each
    pivot reduced into ``[0, pivot)``, zero rows removed.
    """
    work = [list(r) for r in rows]
    if ncols is None:
        ncols = len(work[0]) if work else 0
    top = 0
    for c in range(ncols):
        nz = [i for i in range(top, len(work)) if work[i][c]]
        if not nz:
            continue
        p = nz[0]
        work[top], work[p] = work[p], work[top]
        for i in range(top + 1, len(work)):
            b = work[i][c]
            if not b:
                continue
            a = work[top][c]
            g, x, y = _xgcd(a, b)
            # unimodular 2x2: [x y; -b/g a/g]
            ra, rb = work[top], work[i]
            work[top] = [x * u + y * w for u, w in zip(ra, rb)]
            work[i] = [(-b // g) * u + (a // g) * w for u, w in zip(ra, rb)]
        if work[top][c] < 0:
            work[top] = [-u for u in work[top]]
        piv = work[top][c]
        for i in range(top):
            q = work[i][c] // piv
            if q:
                work[i] = [u - q * w for u, w in zip(work[i], work[top])]
        top += 1
        if top == len(work):
            break
    return [r for r in work[:top] if any(r)]


@dataclass(frozen=True)
class IntegerLattice:
    rank: int
    basis: tuple  # tuple of int tuples, row HNF

    @classmethod
    def from_basis(cls, rows: Sequence[Sequence[int]], ncols: int) -> "IntegerLattice":
        h = hnf(rows, ncols)
        return cls(len(h), tuple(tuple(r) for r in h))

    def contains(self, v: Sequence[int]) -> bool:
        """Membership by reduction against the HNF pivots."""
        v = list(v)
        for r in self.basis:
            c = next(k for k, x in enumerate(r) if x)
            if v[c] % r[c]:
                return False
            q = v[c] // r[c]
            v = [a - q * b for a, b in zip(v, r)]
        return not any(v)


def integer_kernel(m) -> IntegerLattice:
    """Saturated integer kernel ``ker(m) ∩ Z^cols`` in Hermite normal form.

    Row-reduces ``[m^T | I]`` by unimodular integer operations; the identity
    parts of the rows whose ``m^T`` part vanishes form a Z-basis of the kernel.
    """
    rows = m.to_rows() if isinstance(m, RationalMatrix) else [list(r) for r in m]
    ncols = m.cols if isinstance(m, RationalMatrix) else (len(rows[0]) if rows else 0)
    a = integer_rows(rows) if rows else []
    k = len(a)
    aug = [[a[i][j] for i in range(k)] + [int(j == t) for t in range(ncols)] for j in range(ncols)]
    red = hnf(aug, k + ncols)
    kern = [r[k:] for r in red if not any(r[:k])]
    return IntegerLattice.from_basis(kern, ncols)


def saturate(rows: Sequence[Sequence[int]], ncols: int) -> IntegerLattice:
    """``span_Q(rows) ∩ Z^ncols`` as the integer kernel of the rational dual."""
    dual = int_kernel_vectors(rows, ncols)
    if not dual:
        return IntegerLattice.from_basis([[int(i == j) for j in range(ncols)] for i in range(ncols)], ncols)
    return integer_kernel(dual)


def intersect_rowspaces(ms: Sequence[RationalMatrix]) -> RationalMatrix:
    """Basis (as rows) of the intersection of the row spaces of ``ms``.

    Uses rowspace(M) = ker(M)^perp, so the intersection is the orthogonal
    complement of the sum of the kernels.
    """
    if not ms:
        raise ValueError("need at least one matrix")
    ncols = ms[0].cols
    if any(m.cols != ncols for m in ms):
        raise ValueError("column counts differ")
    kern: list[list[int]] = []
    for m in ms:
        kern.extend(int_kernel_vectors(integer_rows(m.to_rows()), ncols))
    if not kern:
        return RationalMatrix.from_rows([[int(i == j) for j in range(ncols)] for i in range(ncols)], ncols)
    inter = int_kernel_vectors(kern, ncols)
    if not inter:
        return RationalMatrix(0, ncols, ())
    red, _ = int_rref(inter, ncols)
    return RationalMatrix.from_rows(red, ncols)
