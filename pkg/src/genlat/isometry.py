"""Isometry certificates, generator constructions and exact spinor norms.

Matrices act on coordinate columns; ``compose(A, B)`` applies B first.
The spinor norm of M is the sign of det(P^T G M P) for a fixed integer
frame P spanning a maximal positive-definite subspace, so the
orientation bookkeeping is done entirely in exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from . import intmat
from .errors import (
    BadTransvectionData,
    DegenerateFrame,
    LatticeMismatch,
    NonIntegralReflection,
    NotAnIsometry,
)
from .lattice import Block, HClass, Lattice, lattice_from_spec


@dataclass(frozen=True)
class Isometry:
    """An integer matrix certificate M with M^T G M = G."""

    lattice: Lattice
    matrix: intmat.Matrix

    def __call__(self, x: HClass) -> HClass:
        if self.lattice is not x.lattice and self.lattice != x.lattice:
            raise LatticeMismatch("class and isometry live over different lattices")
        return HClass(self.lattice, intmat.matvec(self.matrix, x.coords))

    def determinant(self) -> int:
        return intmat.det(self.matrix)

    def inverse(self) -> "Isometry":
        # M^-1 = G^-1 M^T G; integral because G is unimodular
        ginv = _gram_inverse(self.lattice.gram)
        m = intmat.matmul(ginv, intmat.matmul(intmat.transpose(self.matrix), self.lattice.gram))
        return Isometry(self.lattice, m)

    def to_json_dict(self) -> dict:
        return {
            "lattice": self.lattice.spec,
            "matrix": [list(row) for row in self.matrix],
        }

    def __repr__(self) -> str:
        return f"Isometry({self.lattice.spec!r}, rank={self.lattice.rank})"


@lru_cache(maxsize=None)
def _gram_inverse(gram: intmat.Matrix) -> intmat.Matrix:
    return intmat.inverse_unimodular(gram)


def identity_isometry(lattice: Lattice) -> Isometry:
    return Isometry(lattice, intmat.identity(lattice.rank))


def verify_isometry(lattice: Lattice, matrix) -> Isometry:
    """Return the certificate iff M^T G M = G holds exactly."""
    m = tuple(tuple(int(x) for x in row) for row in matrix)
    n = lattice.rank
    if len(m) != n or any(len(row) != n for row in m):
        raise NotAnIsometry(f"matrix must be {n}x{n}")
    g = lattice.gram
    check = intmat.matmul(intmat.matmul(intmat.transpose(m), g), m)
    for i in range(n):
        for j in range(n):
            if check[i][j] != g[i][j]:
                raise NotAnIsometry(
                    f"(M^T G M)[{i}][{j}] = {check[i][j]}, expected {g[i][j]}",
                    entry=(i, j),
                )
    return Isometry(lattice, m)


def compose(a: Isometry, b: Isometry) -> Isometry:
    """Apply b first, then a."""
    if a.lattice is not b.lattice and a.lattice != b.lattice:
        raise LatticeMismatch("cannot compose isometries over different lattices")
    return Isometry(a.lattice, intmat.matmul(a.matrix, b.matrix))


def fixes_class(m: Isometry, x: HClass) -> bool:
    if m.lattice is not x.lattice and m.lattice != x.lattice:
        raise LatticeMismatch("class and isometry live over different lattices")
    return intmat.matvec(m.matrix, x.coords) == x.coords


def reflection(lattice: Lattice, v: HClass) -> Isometry:
    """The reflection x -> x - 2(x.v)/v^2 * v, when it is integral."""
    if v.lattice is not lattice and v.lattice != lattice:
        raise LatticeMismatch("vector lives over a different lattice")
    v2 = v.square()
    if v2 == 0:
        raise NonIntegralReflection("cannot reflect in a vector of square zero")
    gv = intmat.matvec(lattice.gram, v.coords)
    coeffs = []
    for i, pairing in enumerate(gv):
        num = 2 * pairing
        if num % v2 != 0:
            raise NonIntegralReflection(
                f"2(x.v)/v^2 is not integral on basis vector {i}"
            )
        coeffs.append(num // v2)
    n = lattice.rank
    m = tuple(
        tuple(int(i == r) - coeffs[i] * v.coords[r] for i in range(n))
        for r in range(n)
    )
    return verify_isometry(lattice, m)


def eichler_transvection(lattice: Lattice, u: HClass, v: HClass) -> Isometry:
    """E_{u,v}: x -> x + (x.v)u - (x.u)v - v^2/2 (x.u)u.

    Needs u isotropic, u orthogonal to v and v of even square; the
    result is unipotent with spinor norm +1.
    """
    for y in (u, v):
        if y.lattice is not lattice and y.lattice != lattice:
            raise LatticeMismatch("vector lives over a different lattice")
    if u.square() != 0:
        raise BadTransvectionData("u must be isotropic")
    if u.dot(v) != 0:
        raise BadTransvectionData("u and v must be orthogonal")
    v2 = v.square()
    if v2 % 2 != 0:
        raise BadTransvectionData("v must have even square")
    g = lattice.gram
    gu = intmat.matvec(g, u.coords)
    gv = intmat.matvec(g, v.coords)
    h = v2 // 2
    z = tuple(v.coords[r] + h * u.coords[r] for r in range(lattice.rank))
    n = lattice.rank
    m = tuple(
        tuple(int(i == r) + gv[i] * u.coords[r] - gu[i] * z[r] for i in range(n))
        for r in range(n)
    )
    return verify_isometry(lattice, m)


def minus_identity_on_blocks(lattice: Lattice, block_indices) -> Isometry:
    """-id on the chosen blocks, identity elsewhere."""
    flip = set()
    for b in block_indices:
        flip.update(lattice.block_range(b))
    n = lattice.rank
    m = tuple(
        tuple((-1 if r in flip else 1) * int(i == r) for i in range(n))
        for r in range(n)
    )
    return verify_isometry(lattice, m)


# -- spinor norm --------------------------------------------------------------

@dataclass(frozen=True)
class SpinorFrame:
    """Integer columns spanning a fixed maximal positive-definite subspace."""

    lattice: Lattice
    matrix: intmat.Matrix  # rank x sig_pos


def make_frame(lattice: Lattice, columns) -> SpinorFrame:
    cols = [tuple(c.coords) if isinstance(c, HClass) else tuple(c) for c in columns]
    if len(cols) != lattice.sig_pos:
        raise DegenerateFrame(
            f"frame needs {lattice.sig_pos} columns, got {len(cols)}"
        )
    p = tuple(tuple(col[r] for col in cols) for r in range(lattice.rank))
    b = intmat.matmul(
        intmat.matmul(intmat.transpose(p), lattice.gram), p
    )
    for k in range(1, len(cols) + 1):
        minor = tuple(row[:k] for row in b[:k])
        if intmat.det(minor) <= 0:
            raise DegenerateFrame("frame is not positive definite")
    return SpinorFrame(lattice, p)


@lru_cache(maxsize=None)
def canonical_frame(lattice: Lattice) -> SpinorFrame:
    """One positive column e_i + f_i per rank-2 block; mutually orthogonal."""
    cols = []
    for i, b in enumerate(lattice.blocks):
        if b is not Block.MINUS_E8:
            start = lattice.block_offsets[i]
            col = [0] * lattice.rank
            col[start] = 1
            col[start + 1] = 1
            cols.append(tuple(col))
    return make_frame(lattice, cols)


def spinor_norm(frame: SpinorFrame, m: Isometry) -> int:
    """+1 iff m preserves the orientation of the positive part."""
    if frame.lattice is not m.lattice and frame.lattice != m.lattice:
        raise LatticeMismatch("frame and isometry live over different lattices")
    p = frame.matrix
    mp = intmat.matmul(m.matrix, p)
    b = intmat.matmul(intmat.matmul(intmat.transpose(p), frame.lattice.gram), mp)
    d = intmat.det(b)
    if d == 0:
        raise DegenerateFrame("det(P^T G M P) = 0; input is not an isometry")
    return 1 if d > 0 else -1


class Realizability(Enum):
    REALIZABLE = "REALIZABLE"
    NOT_REALIZABLE = "NOT_REALIZABLE"
    UNKNOWN = "UNKNOWN"


def realizability(surface, m: Isometry) -> Realizability:
    """Is m induced by an orientation-preserving self-diffeomorphism?

    For the K3 surface the image of the diffeomorphism group equals the
    spinor-norm-1 subgroup, so the answer is two-valued.  For every
    other elliptic surface the image is only known to contain the
    k-fixing spinor-norm-1 subgroup, so a miss returns UNKNOWN.
    """
    if m.lattice != surface.lattice:
        raise LatticeMismatch("isometry is not over the surface model lattice")
    nu = spinor_norm(canonical_frame(surface.lattice), m)
    if surface.is_k3:
        return Realizability.REALIZABLE if nu == 1 else Realizability.NOT_REALIZABLE
    if nu == 1 and fixes_class(m, surface.k):
        return Realizability.REALIZABLE
    return Realizability.UNKNOWN


def isometry_from_json_dict(doc: dict) -> Isometry:
    lat = lattice_from_spec(doc["lattice"])
    return verify_isometry(lat, doc["matrix"])
