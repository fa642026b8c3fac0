"""Dense matrices over Q(u, q) and exact rational linear algebra.

Matrices over the function field are plain lists of rows of
:class:`~heckebranch.exactfield.RatFunc`.  Heavy linear algebra happens
after specialization, over Q, through FLINT's ``fmpq_mat``/``fmpz_mat``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

import flint

from .exactfield import ONE, ZERO, RatFunc, Specialization, specialize

Matrix = list[list[RatFunc]]
QMatrix = list[list[Fraction]]


def identity(d: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(d)] for i in range(d)]


def zeros(d: int, e: int | None = None) -> Matrix:
    return [[ZERO] * (d if e is None else e) for _ in range(d)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, m = len(a), len(b[0]) if b else 0
    inner = len(b)
    out = []
    for i in range(n):
        row_a = a[i]
        nz = [(k, row_a[k]) for k in range(inner) if not row_a[k].is_zero()]
        row = []
        for j in range(m):
            s = ZERO
            for k, x in nz:
                y = b[k][j]
                if not y.is_zero():
                    s = s + x * y
            row.append(s)
        out.append(row)
    return out


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, c) -> Matrix:
    c = c if isinstance(c, RatFunc) else RatFunc(c)
    return [[x * c for x in row] for row in a]


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))


def is_zero(a: Matrix) -> bool:
    return all(x.is_zero() for row in a for x in row)


def transpose(a):
    return [list(r) for r in zip(*a)] if a else []


def trace(a: Matrix) -> RatFunc:
    s = ZERO
    for i in range(len(a)):
        s = s + a[i][i]
    return s


def det2(a: Matrix) -> RatFunc:
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def specialize_matrix(a: Matrix, s: Specialization) -> QMatrix:
    return [[specialize(x, s) for x in row] for row in a]


def subs_u_matrix(a: Matrix, value=1) -> Matrix:
    return [[x.subs_u(value) for x in row] for row in a]


def to_strings(a: Matrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in a]


# -- rational linear algebra -------------------------------------------------


def to_fmpq(a: Sequence[Sequence[Fraction]]) -> flint.fmpq_mat:
    rows = len(a)
    cols = len(a[0]) if rows else 0
    return flint.fmpq_mat(rows, cols, [flint.fmpq(x.numerator, x.denominator)
                                       for row in a for x in row])


def from_fmpq(m: flint.fmpq_mat) -> QMatrix:
    return [[Fraction(int(x.p), int(x.q)) for x in row] for row in m.tolist()]


def rank_q(a: Sequence[Sequence[Fraction]]) -> int:
    if not a or not a[0]:
        return 0
    return to_fmpq(a).rank()


def _to_fmpz_rows(a: Sequence[Sequence[Fraction]]) -> flint.fmpz_mat:
    """Scale each row by the lcm of its denominators."""
    from math import lcm
    rows = []
    for row in a:
        m = lcm(*(x.denominator for x in row)) if row else 1
        rows.append([int(x * m) for x in row])
    return flint.fmpz_mat(rows)


def nullspace_q(a: Sequence[Sequence[Fraction]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : a x = 0} over Q."""
    if not a:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    z = _to_fmpz_rows(a)
    basis, nullity = z.nullspace()
    cols = basis.tolist()
    out = []
    for j in range(nullity):
        out.append([Fraction(int(cols[i][j])) for i in range(len(cols))])
    return out


def nullity_mod_p(a: Sequence[Sequence[Fraction]], p: int = 2**31 - 1) -> int:
    """Nullity over F_p; an upper bound for the nullity over Q."""
    if not a:
        return 0
    rows = []
    for row in a:
        rows.append([(x.numerator * pow(x.denominator, -1, p)) % p for x in row])
    m = flint.nmod_mat(rows, p)
    return m.ncols() - m.rank()


def solve_q(a: QMatrix, b: QMatrix) -> QMatrix:
    return from_fmpq(to_fmpq(a).solve(to_fmpq(b)))


def det_q(a: QMatrix) -> Fraction:
    d = to_fmpq(a).det()
    return Fraction(int(d.p), int(d.q))


def random_small(rng: random.Random, lo: int = -9, hi: int = 9) -> int:
    x = 0
    while x == 0:
        x = rng.randint(lo, hi)
    return x
