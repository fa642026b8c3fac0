"""Seminormal (Hoefsmit) matrices for the type-B Hecke algebra.

Matrix convention: ``A[S][T]`` is the coefficient of ``v_S`` in ``g v_T``, so
words multiply in the written order, ``A(g h) = A(g) A(h)``.  In the row
notation ``g v_T = sum_S g_{T,S} v_S`` this is ``g_{T,S} = A[S][T]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from . import linalg
from .bitableaux import Bipartition, StandardBitableau, axial_distance, enumerate_standard
from .exactfield import ONE, Q, U, FieldDivisionByZero, RatFunc, Specialization
from .linalg import Matrix


def kernel_matrix(k: int, y: RatFunc, variant: str = "M") -> Matrix:
    """The 2x2 block M(k, y) or its b-version M'(k, y)."""
    q = Q
    qk_y = q**k * y
    den = 1 - qk_y
    if den.is_zero():
        raise FieldDivisionByZero(f"1 - q^{k} y vanishes for y = {y}")
    if variant == "M":
        inv = den.inverse()
        return [
            [(q - 1) * inv, (1 - q ** (k + 1) * y) * inv],
            [q * (1 - q ** (k - 1) * y) * inv, -qk_y * (q - 1) * inv],
        ]
    if variant in ("M'", "Mprime", "b"):
        inv = ((q + 1) * den).inverse()
        diag = (q - 1) * (1 + qk_y) * inv
        return [
            [diag, 2 * (1 - q ** (k + 1) * y) * inv],
            [2 * q * (1 - q ** (k - 1) * y) * inv, -diag],
        ]
    raise ValueError(f"unknown kernel variant {variant!r}")


def u_param(c: int, u_one: bool) -> RatFunc:
    """u_1 = u (or 1 at u = 1), u_2 = -1."""
    if c == 1:
        return ONE if u_one else U
    return -ONE


def pair_position(t: StandardBitableau, i: int) -> str:
    """Where i-1 and i sit: 'row', 'col' or 'apart'."""
    c1, r1, j1 = t.cell(i - 1)
    c2, r2, j2 = t.cell(i)
    if c1 == c2 and r1 == r2:
        return "row"
    if c1 == c2 and j1 == j2:
        return "col"
    return "apart"


@dataclass
class Representation:
    shape: Bipartition
    basis: list[StandardBitableau]
    gen_kind: str
    u_one: bool
    gen_matrices: dict[str, Matrix] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def n(self) -> int:
        return self.shape.n

    def index(self, t: StandardBitableau) -> int:
        return self._index[t]

    def __post_init__(self):
        self._index = {t: k for k, t in enumerate(self.basis)}

    def gen(self, i: int) -> Matrix:
        return self.gen_matrices[f"{self.gen_kind}{i}"]

    def specialize(self, s: Specialization) -> dict[str, linalg.QMatrix]:
        return {k: linalg.specialize_matrix(m, s) for k, m in self.gen_matrices.items()}

    def to_json(self) -> dict:
        return {
            "shape": str(self.shape),
            "gens": self.gen_kind,
            "u": "1" if self.u_one else "u",
            "basis": [str(t) for t in self.basis],
            "matrices": {k: linalg.to_strings(m) for k, m in self.gen_matrices.items()},
        }


def _generator_matrix(shape: Bipartition, basis, index, i: int, kind: str, u_one: bool) -> Matrix:
    d = len(basis)
    A = linalg.zeros(d)
    variant = "M" if kind == "a" else "M'"
    q = Q
    for col, t in enumerate(basis):
        if i == 1:
            c = t.rho(1)
            if kind == "a":
                A[col][col] = u_param(c, u_one)
            else:
                A[col][col] = ONE if c == 1 else -ONE
            continue
        where = pair_position(t, i)
        if where == "row":
            A[col][col] = q if kind == "a" else ONE
        elif where == "col":
            A[col][col] = -ONE
        else:
            st = t.swap_entries(i)
            row = index[st]
            k = axial_distance(t, i, i - 1)
            y = u_param(t.rho(i - 1), u_one) / u_param(t.rho(i), u_one)
            M = kernel_matrix(k, y, variant)
            A[col][col] = M[0][0]
            A[row][col] = M[1][0]
    return A


@lru_cache(maxsize=None)
def build_rep(shape: Bipartition, gen_kind: str = "b", u_one: bool = False) -> Representation:
    """Seminormal matrices of all generators of one kind ('a' or 'b')."""
    if gen_kind not in ("a", "b"):
        raise ValueError("gen_kind must be 'a' or 'b'")
    if shape.n < 1:
        raise ValueError("shape must be nonempty")
    basis = enumerate_standard(shape)
    index = {t: k for k, t in enumerate(basis)}
    mats = {f"{gen_kind}{i}": _generator_matrix(shape, basis, index, i, gen_kind, u_one)
            for i in range(1, shape.n + 1)}
    return Representation(shape, basis, gen_kind, u_one, mats)


def affine_b_from_a(rep_a: Representation) -> dict[str, Matrix]:
    """(2 A_i - (q_i - 1) I) / (q_i + 1) from the a-matrices."""
    d = rep_a.dim
    out = {}
    for i in range(1, rep_a.n + 1):
        qi = (ONE if rep_a.u_one else U) if i == 1 else Q
        A = rep_a.gen(i)
        m = linalg.mat_sub(linalg.mat_scale(A, 2), linalg.mat_scale(linalg.identity(d), qi - 1))
        out[f"b{i}"] = linalg.mat_scale(m, (qi + 1).inverse())
    return out


def parse_symbol(sym) -> tuple[str, int]:
    if isinstance(sym, int):
        return "", sym
    sym = str(sym).strip()
    return sym[0], int(sym[1:])


def rep_word(rep: Representation, word: Sequence) -> Matrix:
    """Ordered product of generator matrices; ints use the rep's own kind."""
    out = linalg.identity(rep.dim)
    for sym in word:
        kind, i = parse_symbol(sym)
        key = f"{kind or rep.gen_kind}{i}"
        if key not in rep.gen_matrices:
            raise KeyError(f"unknown generator symbol {sym!r} for a {rep.gen_kind}-representation")
        out = linalg.mat_mul(out, rep.gen_matrices[key])
    return out


def verify_relations(rep: Representation) -> list[dict]:
    """Check the defining relations of the generator kind exactly."""
    n, d = rep.n, rep.dim
    I = linalg.identity(d)
    g = [None] + [rep.gen(i) for i in range(1, n + 1)]
    mm = linalg.mat_mul
    u = ONE if rep.u_one else U
    q = Q
    out = []

    def record(name, ok):
        out.append({"relation": name, "status": "pass" if ok else "fail"})

    if rep.gen_kind == "a":
        for i in range(1, n + 1):
            qi = u if i == 1 else q
            lhs = mm(g[i], g[i])
            rhs = linalg.mat_add(linalg.mat_scale(g[i], qi - 1), linalg.mat_scale(I, qi))
            record(f"quadratic a{i}", linalg.mat_eq(lhs, rhs))
        if n >= 2:
            record("four-term braid a1a2", linalg.mat_eq(mm(mm(g[1], g[2]), mm(g[1], g[2])),
                                                   mm(mm(g[2], g[1]), mm(g[2], g[1]))))
        for i in range(2, n):
            record(f"braid a{i}a{i+1}", linalg.mat_eq(mm(mm(g[i], g[i + 1]), g[i]),
                                                      mm(mm(g[i + 1], g[i]), g[i + 1])))
    else:
        for i in range(1, n + 1):
            record(f"b{i}^2 = 1", linalg.mat_eq(mm(g[i], g[i]), I))
        if n >= 2:
            c = -2 * (u - 1) * (q - 1) / ((u + 1) * (q + 1))
            lhs = mm(mm(g[1], g[2]), mm(g[1], g[2]))
            rhs = linalg.mat_add(mm(mm(g[2], g[1]), mm(g[2], g[1])),
                                 linalg.mat_scale(linalg.mat_sub(mm(g[1], g[2]), mm(g[2], g[1])), c))
            record("deformed four-term braid b1b2", linalg.mat_eq(lhs, rhs))
        r = ((q - 1) / (q + 1)) ** 2
        for i in range(2, n):
            lhs = mm(mm(g[i], g[i + 1]), g[i])
            rhs = linalg.mat_sub(mm(mm(g[i + 1], g[i]), g[i + 1]),
                                 linalg.mat_scale(linalg.mat_sub(g[i], g[i + 1]), r))
            record(f"deformed braid b{i}b{i+1}", linalg.mat_eq(lhs, rhs))
    for i in range(1, n + 1):
        for j in range(i + 2, n + 1):
            record(f"commute {rep.gen_kind}{i}{rep.gen_kind}{j}",
                   linalg.mat_eq(mm(g[i], g[j]), mm(g[j], g[i])))
    return out
