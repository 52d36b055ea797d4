"""Representations, Hom spaces, endomorphism algebras, modular reduction.

A representation assigns a rational vector space to each vertex and a matrix
of shape dim(head) x dim(tail) to each arrow.  Hom spaces are computed as
the exact kernel of the commutation system

    phi(head a) V(a) = W(a) phi(tail a)   for every arrow a,

assembled as one sparse linear system over all vertices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import Mat, kernel_basis, rref, sparse_kernel_basis
from .quiver import Quiver, euler_form

__all__ = [
    "Representation",
    "Morphism",
    "EndAlgebra",
    "RepModP",
    "BadPrime",
    "simple_rep",
    "hom_space",
    "hom_dim",
    "ext1_dim",
    "end_algebra",
    "radical_dim",
    "is_schur",
    "is_indecomposable",
    "are_isomorphic",
    "direct_sum",
    "reduce_mod_p",
]


class BadPrime(Exception):
    """Raised when a matrix entry denominator vanishes modulo the prime."""


@dataclass(frozen=True)
class Representation:
    """Per-vertex dimensions plus one rational matrix per arrow.

    ``matrices`` is aligned with ``quiver.arrows``; the matrix for arrow a
    maps the tail space into the head space, so its shape is
    dim(head) x dim(tail).
    """

    quiver: Quiver
    dim: tuple[int, ...]
    matrices: tuple[Mat, ...]

    def __post_init__(self):
        if len(self.dim) != self.quiver.n:
            raise ValueError("dimension vector length mismatch")
        if any(d < 0 for d in self.dim):
            raise ValueError("negative dimension")
        if len(self.matrices) != len(self.quiver.arrows):
            raise ValueError("one matrix per arrow required")
        for a, m in zip(self.quiver.arrows, self.matrices):
            want = (self.dim[a.head], self.dim[a.tail])
            if (m.rows, m.cols) != want:
                raise ValueError(
                    f"arrow {a.name}: matrix is {m.rows}x{m.cols}, "
                    f"expected {want[0]}x{want[1]}")

    @classmethod
    def from_dict(cls, quiver: Quiver, dim: Sequence[int],
                  matrices: dict[str, Sequence[Sequence]] | None = None) -> "Representation":
        """Build from a dimension vector and matrices keyed by arrow name.

        Arrows missing from ``matrices`` get the zero matrix of the right
        shape, which is the common case for simples.
        """
        dims = quiver.check_vector(dim)
        matrices = matrices or {}
        known = {a.name for a in quiver.arrows}
        for name in matrices:
            if name not in known:
                raise ValueError(f"matrix given for unknown arrow {name!r}")
        mats = []
        for a in quiver.arrows:
            shape = (dims[a.head], dims[a.tail])
            if a.name in matrices:
                mats.append(Mat.shaped(shape[0], shape[1], matrices[a.name]))
            else:
                mats.append(Mat.zeros(*shape))
        return cls(quiver, dims, tuple(mats))

    @property
    def total_dim(self) -> int:
        return sum(self.dim)

    def is_zero(self) -> bool:
        return self.total_dim == 0


def simple_rep(quiver: Quiver, vertex: int | str) -> Representation:
    """The one-dimensional representation supported at a single vertex."""
    x = quiver.vertex_index[vertex] if isinstance(vertex, str) else vertex
    return Representation.from_dict(quiver, quiver.unit_vector(x))


# A morphism V -> W is a per-vertex tuple of matrices phi(x) of shape
# dim_W(x) x dim_V(x) satisfying the commutation equations.
Morphism = tuple[Mat, ...]


def _check_same_quiver(v: Representation, w: Representation) -> None:
    if v.quiver != w.quiver:
        raise ValueError("representations live on different quivers")


def hom_space(v: Representation, w: Representation) -> list[Morphism]:
    """Basis of Hom(v, w), each element a per-vertex matrix tuple.

    The commutation equations form one sparse homogeneous system in the
    entries of all phi(x); its kernel is the Hom space.
    """
    _check_same_quiver(v, w)
    q = v.quiver
    offsets = []
    total = 0
    for x in range(q.n):
        offsets.append(total)
        total += w.dim[x] * v.dim[x]

    def unknown(x: int, r: int, c: int) -> int:
        return offsets[x] + r * v.dim[x] + c

    equations: list[dict[int, Fraction]] = []
    for ai, a in enumerate(q.arrows):
        va, wa = v.matrices[ai], w.matrices[ai]
        for r in range(w.dim[a.head]):
            for c in range(v.dim[a.tail]):
                eq: dict[int, Fraction] = {}
                for k in range(v.dim[a.head]):
                    coeff = va.data[k][c]
                    if coeff != 0:
                        eq[unknown(a.head, r, k)] = eq.get(unknown(a.head, r, k), Fraction(0)) + coeff
                for k in range(w.dim[a.tail]):
                    coeff = wa.data[r][k]
                    if coeff != 0:
                        key = unknown(a.tail, k, c)
                        eq[key] = eq.get(key, Fraction(0)) - coeff
                equations.append({k: val for k, val in eq.items() if val != 0})

    basis = []
    for vec in sparse_kernel_basis(equations, total):
        mats = []
        for x in range(q.n):
            rows = [
                vec[unknown(x, r, 0):unknown(x, r, 0) + v.dim[x]]
                for r in range(w.dim[x])
            ]
            mats.append(Mat.shaped(w.dim[x], v.dim[x], rows))
        basis.append(tuple(mats))
    return basis


def hom_dim(v: Representation, w: Representation) -> int:
    return len(hom_space(v, w))


def ext1_dim(v: Representation, w: Representation) -> int:
    """dim Ext^1(v, w) = dim Hom(v, w) - <dim v, dim w> (hereditary case)."""
    _check_same_quiver(v, w)
    d = hom_dim(v, w) - euler_form(v.quiver, v.dim, w.dim)
    if d < 0:
        raise ValueError("negative Ext dimension: corrupted representation data")
    return d


def compose(f: Morphism, g: Morphism) -> Morphism:
    """(f o g)(x) = f(x) g(x) for endomorphism tuples."""
    return tuple(fm @ gm for fm, gm in zip(f, g))


def _flatten(morphism: Morphism) -> tuple[Fraction, ...]:
    return tuple(e for m in morphism for row in m.data for e in row)


@dataclass(frozen=True)
class EndAlgebra:
    """Endomorphism algebra of a representation in a fixed basis.

    ``structure[i][j]`` holds the coordinates of basis[i] o basis[j] in the
    basis, and ``identity`` the coordinates of the identity endomorphism.
    """

    rep: Representation
    basis: tuple[Morphism, ...]
    structure: tuple[tuple[tuple[Fraction, ...], ...], ...]
    identity: tuple[Fraction, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def multiply(self, xs: Sequence[Fraction], ys: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Product of two elements given by coordinate vectors."""
        n = self.dim
        out = [Fraction(0)] * n
        for i, xi in enumerate(xs):
            if xi == 0:
                continue
            for j, yj in enumerate(ys):
                if yj == 0:
                    continue
                coeffs = self.structure[i][j]
                f = xi * yj
                for k in range(n):
                    if coeffs[k] != 0:
                        out[k] += f * coeffs[k]
        return tuple(out)


def end_algebra(v: Representation) -> EndAlgebra:
    """Basis of End(v) with exact structure constants.

    Coordinates of a product are read off at pivot positions of the
    flattened basis matrix; compositions of morphisms stay in the span, so
    this is exact.
    """
    basis = hom_space(v, v)
    n = len(basis)
    if n == 0:
        # only the zero representation has a zero endomorphism ring
        return EndAlgebra(v, (), (), ())
    flat = [_flatten(f) for f in basis]
    length = len(flat[0])
    # pivot rows: coordinate positions where the basis matrix has full rank
    basis_t = Mat.shaped(n, length, flat)
    _, pivots, rank = rref(basis_t)
    if rank != n:
        raise ValueError("hom basis is not linearly independent")
    sub = Mat.shaped(n, n, [[flat[i][p] for p in pivots] for i in range(n)])
    # inverse of sub^T: coords(t) = inv(sub^T) . t[pivots]
    aug = Mat.shaped(n, 2 * n, [
        list(sub.col(i)) + [Fraction(1 if j == i else 0) for j in range(n)]
        for i in range(n)
    ])
    red, piv2, _ = rref(aug)
    inv_rows = [red.data[i][n:] for i in range(n)]

    def coords_at_pivots(values: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(
            sum((r * val for r, val in zip(inv_rows[i], values)), Fraction(0))
            for i in range(n)
        )

    # map flat position -> (vertex, row, col) for targeted composition entries
    positions = []
    for x in range(v.quiver.n):
        for r in range(v.dim[x]):
            for c in range(v.dim[x]):
                positions.append((x, r, c))
    pivot_pos = [positions[p] for p in pivots]

    structure = []
    for f in basis:
        row = []
        for g in basis:
            vals = []
            for (x, r, c) in pivot_pos:
                fm, gm = f[x], g[x]
                vals.append(sum((fm.data[r][k] * gm.data[k][c]
                                 for k in range(v.dim[x])), Fraction(0)))
            row.append(coords_at_pivots(vals))
        structure.append(tuple(row))

    id_vals = [Fraction(1 if r == c else 0) for (x, r, c) in pivot_pos]
    identity = coords_at_pivots(id_vals)
    return EndAlgebra(v, tuple(basis), tuple(structure), identity)


def _trace_gram(algebra: EndAlgebra) -> Mat:
    """Gram matrix of (a, b) -> trace of left multiplication by ab."""
    n = algebra.dim
    left_traces = [
        sum((algebra.structure[k][j][j] for j in range(n)), Fraction(0))
        for k in range(n)
    ]
    return Mat.shaped(n, n, [
        [
            sum((algebra.structure[i][j][k] * left_traces[k] for k in range(n)),
                Fraction(0))
            for j in range(n)
        ]
        for i in range(n)
    ])


def radical_basis(algebra: EndAlgebra) -> list[tuple[Fraction, ...]]:
    """Coordinate basis of the Jacobson radical via the characteristic-zero
    trace-form criterion: the radical is the kernel of (a, b) -> trace of
    left multiplication by ab."""
    if algebra.dim == 0:
        return []
    return kernel_basis(_trace_gram(algebra))


def radical_dim(algebra: EndAlgebra) -> int:
    """Dimension of the Jacobson radical."""
    return len(radical_basis(algebra))


def is_schur(v: Representation) -> bool:
    """True when End(v) is one-dimensional."""
    return hom_dim(v, v) == 1


def is_indecomposable(v: Representation) -> bool:
    """True when End(v) is local, i.e. End(v) modulo its radical is the base
    field (characteristic zero, algebraically closed setting)."""
    if v.is_zero():
        raise ValueError("the zero representation is not indecomposable")
    algebra = end_algebra(v)
    return algebra.dim - radical_dim(algebra) == 1


def _invertible_everywhere(v: Representation, morphism: Morphism) -> bool:
    return all(m.is_invertible() for m in morphism)


def are_isomorphic(v: Representation, w: Representation, *,
                   seed: int = 0, trials: int = 8) -> bool:
    """Decide isomorphism by hunting an invertible element of Hom(v, w).

    Random rational combinations of the Hom basis are tried first (seeded,
    so verdicts are reproducible); a deterministic univariate evaluation of
    the product-of-determinants polynomial along the moment curve settles
    the remaining cases.
    """
    _check_same_quiver(v, w)
    if v.dim != w.dim:
        return False
    if v.is_zero():
        return True
    basis = hom_space(v, w)
    h = len(basis)
    if h == 0:
        return False
    if h == 1:
        return _invertible_everywhere(v, basis[0])

    def combine(coeffs: Sequence[Fraction]) -> Morphism:
        mats = []
        for x in range(v.quiver.n):
            acc = Mat.zeros(w.dim[x], v.dim[x])
            for c, f in zip(coeffs, basis):
                if c != 0:
                    acc = acc + f[x].scale(c)
            mats.append(acc)
        return tuple(mats)

    rng = random.Random(seed)
    for _ in range(trials):
        coeffs = [Fraction(rng.randint(-9, 9)) for _ in range(h)]
        if _invertible_everywhere(v, combine(coeffs)):
            return True
    # moment-curve fallback: coefficients (1, t, t^2, ...) give a univariate
    # polynomial of degree <= (h-1) * total_dim; enough sample points decide
    # whether it vanishes identically
    degree = (h - 1) * w.total_dim
    for t in range(1, trials + degree + 2):
        coeffs = [Fraction(t) ** k for k in range(h)]
        if _invertible_everywhere(v, combine(coeffs)):
            return True
    return False


def direct_sum(summands: Sequence[tuple[Representation, int]]) -> Representation:
    """Block-diagonal direct sum of (representation, multiplicity) pairs."""
    if not summands:
        raise ValueError("direct sum of nothing")
    quiver = summands[0][0].quiver
    copies: list[Representation] = []
    for rep, mult in summands:
        _check_same_quiver(rep, summands[0][0])
        if mult < 1:
            raise ValueError("multiplicity must be at least 1")
        copies.extend([rep] * mult)

    dim = tuple(sum(rep.dim[x] for rep in copies) for x in range(quiver.n))
    mats = []
    for ai, a in enumerate(quiver.arrows):
        block = [[Fraction(0)] * dim[a.tail] for _ in range(dim[a.head])]
        roff = coff = 0
        for rep in copies:
            m = rep.matrices[ai]
            for r in range(m.rows):
                for c in range(m.cols):
                    block[roff + r][coff + c] = m.data[r][c]
            roff += m.rows
            coff += m.cols
        mats.append(Mat.shaped(dim[a.head], dim[a.tail], block))
    return Representation(quiver, dim, tuple(mats))


@dataclass(frozen=True)
class RepModP:
    """A representation reduced modulo a prime; matrices over F_p."""

    quiver: Quiver
    p: int
    dim: tuple[int, ...]
    matrices: tuple[tuple[tuple[int, ...], ...], ...]


def reduce_mod_p(v: Representation, p: int) -> RepModP:
    """Entrywise reduction mod p; raises BadPrime if a denominator dies."""
    if p < 2:
        raise ValueError("modulus must be a prime")
    mats = []
    for m in v.matrices:
        rows = []
        for row in m.data:
            out = []
            for e in row:
                if e.denominator % p == 0:
                    raise BadPrime(f"denominator of {e} vanishes mod {p}")
                out.append(e.numerator * pow(e.denominator, -1, p) % p)
            rows.append(tuple(out))
        mats.append(tuple(rows))
    return RepModP(v.quiver, p, v.dim, tuple(mats))
