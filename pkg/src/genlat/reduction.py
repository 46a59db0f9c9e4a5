"""Constructive reduction of classes to canonical representatives.

Every certificate built here is a product of Eichler transvections,
with at most one reflection in a vector of negative square appended, so
it has spinor norm +1 by construction and is verified before release.

The core engine works on an even acting sublattice containing a target
hyperbolic pair (e1, f1) and a helper pair (e2, f2); the remaining
acting blocks form L0.  Writing x = a e1 + b f1 + c e2 + g f2 + w with
w in L0, four shapes of transvection act as elementary row and column
additions on the 2x2 integer matrix N = [[a, c], [-g, b]] and leave w
alone, two more shapes trade material between (a, b) and w.  The
reduction is staged:

1. if all four pair coordinates vanish, one transvection pulls a
   non-zero pairing of w into a;
2. exact Euclid on elementary additions diagonalizes N;
3. one transvection with v assembled by CRT over the primes of a makes
   gcd(a, b) = 1 without disturbing anything else;
4. with the gcd equal to 1, elementary additions reach N = diag(1, ab);
5. a single transvection E_{f1, w} absorbs the leftover w.

The class ends at e1 + s f1 with 2s its square; scaling by the
divisibility d gives the canonical form d(e1 + s' f1) in general.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import intmat
from .errors import (
    NeedTwoHyperbolicPlanes,
    NotOrthogonalToK,
    PreconditionFailed,
    ZeroClass,
)
from .isometry import (
    Isometry,
    canonical_frame,
    compose,
    fixes_class,
    identity_isometry,
    reflection,
    spinor_norm,
    verify_isometry,
)
from .lattice import Block, HClass, Lattice, lattice_from_spec


@dataclass(frozen=True)
class ReductionResult:
    """A verified reduction: certificate maps input to canonical."""

    input: HClass
    canonical: HClass
    certificate: Isometry
    spinor: int
    fixes_k: bool
    fixes_W: bool

    def to_json_dict(self) -> dict:
        return {
            "lattice": self.input.lattice.spec,
            "input": list(self.input.coords),
            "canonical": list(self.canonical.coords),
            "certificate": [list(row) for row in self.certificate.matrix],
            "spinor": self.spinor,
            "fixes_k": self.fixes_k,
            "fixes_W": self.fixes_W,
        }


def reduction_result_from_json_dict(doc: dict) -> ReductionResult:
    lat = lattice_from_spec(doc["lattice"])
    cert = verify_isometry(lat, doc["certificate"])
    return ReductionResult(
        input=lat.hclass(doc["input"]),
        canonical=lat.hclass(doc["canonical"]),
        certificate=cert,
        spinor=int(doc["spinor"]),
        fixes_k=bool(doc["fixes_k"]),
        fixes_W=bool(doc["fixes_W"]),
    )


# -- 2x2 elementary-addition calculus -----------------------------------------
#
# ops: ("R1", t) row1 += t*row2   ("R2", t) row2 += t*row1
#      ("C1", t) col1 += t*col2   ("C2", t) col2 += t*col1

_MAX_DIAG_ROUNDS = 10_000

# left-multiplication by -I as six elementary additions (two rotations)
_NEG_IDENTITY_OPS = (
    ("R1", 1), ("R2", -1), ("R1", 1),
    ("R1", 1), ("R2", -1), ("R1", 1),
)


def _apply_op(n: list[list[int]], op: str, t: int) -> None:
    if op == "R1":
        n[0][0] += t * n[1][0]
        n[0][1] += t * n[1][1]
    elif op == "R2":
        n[1][0] += t * n[0][0]
        n[1][1] += t * n[0][1]
    elif op == "C1":
        n[0][0] += t * n[0][1]
        n[1][0] += t * n[1][1]
    elif op == "C2":
        n[0][1] += t * n[0][0]
        n[1][1] += t * n[1][0]
    else:
        raise AssertionError(op)


def _emit(n, ops, op, t) -> None:
    if t:
        _apply_op(n, op, t)
        ops.append((op, t))


def _euclid_column(n, ops) -> None:
    # gcd the pair (n00, n10) into n00 with row additions
    while n[1][0] != 0:
        if n[0][0] == 0:
            _emit(n, ops, "R1", 1)
            continue
        _emit(n, ops, "R2", -(n[1][0] // n[0][0]))
        if n[1][0] == 0:
            break
        _emit(n, ops, "R1", -(n[0][0] // n[1][0]))


def _euclid_row(n, ops) -> None:
    # gcd the pair (n00, n01) into n00 with column additions; the C1
    # steps may re-dirty n10 when n11 != 0, which the caller re-clears
    while n[0][1] != 0:
        if n[0][0] == 0:
            _emit(n, ops, "C1", 1)
            continue
        _emit(n, ops, "C2", -(n[0][1] // n[0][0]))
        if n[0][1] == 0:
            break
        _emit(n, ops, "C1", -(n[0][0] // n[0][1]))


def diagonalize_ops(matrix, corner_one: bool = False):
    """Ops turning the 2x2 matrix into diag form by additions only.

    The ops preserve the determinant and the gcd of the entries.  With
    ``corner_one`` (requires gcd of entries = 1) the final matrix is
    exactly [[1, 0], [0, det]].
    """
    n = [list(matrix[0]), list(matrix[1])]
    ops: list[tuple[str, int]] = []
    if corner_one:
        g = math.gcd(n[0][0], n[0][1], n[1][0], n[1][1])
        if g != 1:
            raise PreconditionFailed("corner_one needs gcd 1 entries")
    for _ in range(_MAX_DIAG_ROUNDS):
        if n[0][0] == 0 and (n[1][0] or n[0][1] or n[1][1]):
            if n[1][0]:
                _emit(n, ops, "R1", 1)
            elif n[0][1]:
                _emit(n, ops, "C1", 1)
            else:
                _emit(n, ops, "R1", 1)
                _emit(n, ops, "C1", 1)
        if n[1][0] == 0 and n[0][1] == 0:
            if not corner_one:
                return ops, (tuple(n[0]), tuple(n[1]))
            if n[0][0] == 1:
                return ops, (tuple(n[0]), tuple(n[1]))
            if n[0][0] == -1:
                for op, t in _NEG_IDENTITY_OPS:
                    _emit(n, ops, op, t)
                continue
            # mix the other diagonal entry into column 1 and keep going
            _emit(n, ops, "C1", 1)
        _euclid_column(n, ops)
        _euclid_row(n, ops)
    raise AssertionError("2x2 diagonalization did not terminate")


def _distinct_primes(n: int) -> list[int]:
    n = abs(n)
    out = []
    for p in (2, 3):
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            if n % p == 0:
                out.append(p)
                while n % p == 0:
                    n //= p
        f += 6
    if n > 1:
        out.append(n)
    return out


# -- the transvection engine ---------------------------------------------------

class _Reducer:
    """Drives one class to e1 + s f1 with logged transvection moves."""

    def __init__(self, lattice: Lattice, coords, target_block: int, acting):
        self.lattice = lattice
        self.gram = lattice.gram
        blocks = lattice.blocks
        for i in acting:
            if not blocks[i].is_even:
                raise PreconditionFailed(
                    "acting sublattice must consist of even blocks"
                )
        hyper = [i for i in acting if blocks[i] is Block.HYPERBOLIC]
        if target_block not in acting or blocks[target_block] is not Block.HYPERBOLIC:
            raise PreconditionFailed(
                "target block must be a hyperbolic block inside the acting sublattice"
            )
        if len(hyper) < 2:
            raise NeedTwoHyperbolicPlanes(
                "the acting sublattice must contain two hyperbolic planes"
            )
        helper = min(i for i in hyper if i != target_block)
        self.e1 = lattice.block_offsets[target_block]
        self.f1 = self.e1 + 1
        self.e2 = lattice.block_offsets[helper]
        self.f2 = self.e2 + 1
        acting_idx = set()
        for i in acting:
            acting_idx.update(lattice.block_range(i))
        self.rest = sorted(
            acting_idx - {self.e1, self.f1, self.e2, self.f2}
        )
        outside = [i for i in range(lattice.rank) if i not in acting_idx]
        if any(coords[i] for i in outside):
            raise PreconditionFailed(
                "class is not supported in the acting sublattice"
            )
        self.y = list(coords)
        self.moves: list[tuple[intmat.Vector, intmat.Vector]] = []

    # pairings against the running class

    def _pair(self, vec) -> int:
        g = self.gram
        total = 0
        for i, c in enumerate(vec):
            if c:
                total += c * intmat.dot(g[i], self.y)
        return total

    def _unit(self, index: int, scale: int = 1) -> list[int]:
        v = [0] * self.lattice.rank
        v[index] = scale
        return v

    def move(self, u, v) -> None:
        """Apply E_{u,v} to the running class and log it."""
        yu = self._pair(u)
        yv = self._pair(v)
        v2 = _pairing(self.gram, v, v)
        assert _pairing(self.gram, u, u) == 0
        assert _pairing(self.gram, u, v) == 0
        assert v2 % 2 == 0
        cu = yv - (v2 // 2) * yu
        for r in range(self.lattice.rank):
            self.y[r] += cu * u[r] - yu * v[r]
        self.moves.append((tuple(u), tuple(v)))

    def replay(self, ops) -> None:
        e1, f1, e2, f2 = self.e1, self.f1, self.e2, self.f2
        for op, t in ops:
            if op == "R1":
                self.move(self._unit(e1), self._unit(e2, -t))
            elif op == "R2":
                self.move(self._unit(f1), self._unit(f2, t))
            elif op == "C1":
                self.move(self._unit(e1), self._unit(f2, t))
            else:  # C2
                self.move(self._unit(f1), self._unit(e2, -t))

    def pair_matrix(self) -> intmat.Matrix:
        a, b = self.y[self.e1], self.y[self.f1]
        c, g = self.y[self.e2], self.y[self.f2]
        return ((a, c), (-g, b))

    def rest_component(self) -> list[int]:
        v = [0] * self.lattice.rank
        for i in self.rest:
            v[i] = self.y[i]
        return v

    # the five stages

    def run(self) -> None:
        y = self.y
        if not (y[self.e1] or y[self.f1] or y[self.e2] or y[self.f2]):
            # stage 1: pull a pairing of w into the e1 coordinate
            i = next(i for i in self.rest if intmat.dot(self.gram[i], y) != 0)
            self.move(self._unit(self.e1), self._unit(i))
        # stage 2: diagonalize the pair matrix
        ops, _ = diagonalize_ops(self.pair_matrix())
        self.replay(ops)
        assert y[self.e2] == 0 and y[self.f2] == 0 and y[self.e1] != 0
        # stage 3: force gcd(a, b) = 1, borrowing from w
        a, b = y[self.e1], y[self.f1]
        if math.gcd(a, b) != 1:
            self.move(self._unit(self.f1), self._coprime_vector(a, b))
            assert math.gcd(y[self.e1], y[self.f1]) == 1
        # stage 4: reach a = 1 exactly
        ops, final = diagonalize_ops(self.pair_matrix(), corner_one=True)
        self.replay(ops)
        assert y[self.e1] == 1 and y[self.e2] == 0 and y[self.f2] == 0
        # stage 5: absorb w
        w = self.rest_component()
        if any(w):
            self.move(self._unit(self.f1), w)
        assert all(
            y[i] == 0
            for i in range(self.lattice.rank)
            if i not in (self.e1, self.f1)
        )

    def _coprime_vector(self, a: int, b: int) -> list[int]:
        # One move E_{f1, v} sends b to b + w.v - (v^2/2) a.  For each
        # prime P of a the correction vanishes mod P except through
        # w.v, so choosing w.v to be a unit mod the primes dividing
        # gcd(a, b) and zero mod the others makes gcd(a, b') = 1.
        primes = _distinct_primes(a)
        rad = 1
        for p in primes:
            rad *= p
        v = [0] * self.lattice.rank
        gy = [intmat.dot(self.gram[i], self.y) for i in range(self.lattice.rank)]
        for p in primes:
            if b % p != 0:
                continue
            i_p = next(
                (i for i in self.rest if gy[i] % p != 0), None
            )
            # a prime dividing a, b and all pairings of w would divide
            # the whole (primitive) class
            assert i_p is not None, "class is not primitive"
            m = rad // p
            c = m * pow(m % p, -1, p)
            v[i_p] += c
        return v

    def certificate_matrix(self) -> intmat.Matrix:
        n = self.lattice.rank
        g = self.gram
        m = [[int(i == r) for i in range(n)] for r in range(n)]
        for u, v in self.moves:
            gu = intmat.matvec(g, u)
            gv = intmat.matvec(g, v)
            v2 = intmat.dot(gv, v)
            h = v2 // 2
            z = [v[r] + h * u[r] for r in range(n)]
            p = intmat.vecmat(gv, m)
            q = intmat.vecmat(gu, m)
            for r in range(n):
                ur, zr = u[r], z[r]
                if ur or zr:
                    row = m[r]
                    for j in range(n):
                        row[j] += ur * p[j] - zr * q[j]
        return tuple(tuple(row) for row in m)


def _pairing(gram, u, v) -> int:
    total = 0
    for i, c in enumerate(u):
        if c:
            total += c * intmat.dot(gram[i], v)
    return total


def _default_acting(lattice: Lattice) -> tuple[int, ...]:
    return tuple(i for i, b in enumerate(lattice.blocks) if b.is_even)


def reduce_even(
    lattice: Lattice,
    x: HClass,
    target_block: int,
    acting_blocks=None,
) -> ReductionResult:
    """Map x to d(e + a f) in the target hyperbolic block.

    d is the divisibility of x and 2 d^2 a its square.  The certificate
    is a product of Eichler transvections supported in the acting
    sublattice (all even blocks by default), hence has spinor norm +1
    and is the identity elsewhere.
    """
    if x.lattice != lattice:
        raise PreconditionFailed("class lives over a different lattice")
    if x.is_zero:
        raise ZeroClass("cannot reduce the zero class")
    acting = tuple(acting_blocks) if acting_blocks is not None else _default_acting(lattice)
    d = x.divisibility()
    prim = tuple(c // d for c in x.coords)
    red = _Reducer(lattice, prim, target_block, acting)
    red.run()
    matrix = red.certificate_matrix()
    cert = verify_isometry(lattice, matrix)
    canonical = lattice.hclass(tuple(d * c for c in red.y))
    assert intmat.matvec(matrix, x.coords) == canonical.coords
    assert canonical.square() == x.square()
    assert canonical.divisibility() == d
    return _result(x, canonical, cert)


def _result(x: HClass, canonical: HClass, cert: Isometry) -> ReductionResult:
    nu = spinor_norm(canonical_frame(x.lattice), cert)
    return ReductionResult(
        input=x,
        canonical=canonical,
        certificate=cert,
        spinor=nu,
        fixes_k=_fixes_named(cert, "k"),
        fixes_W=_fixes_named(cert, "W"),
    )


def _fixes_named(cert: Isometry, name: str) -> bool:
    lat = cert.lattice
    if name not in lat.basis_names:
        return True
    return fixes_class(cert, lat.basis_class(name))


# -- elliptic-surface entry points --------------------------------------------

_RT_BLOCK = 1  # the (R, T) hyperbolic block of every model lattice


def reduce_in_elliptic(surface, a_class: HClass) -> ReductionResult:
    """Reduce a class of an elliptic-surface model lattice.

    K3: any non-zero class goes to d(R + aT) with a full-lattice
    certificate of spinor norm +1.  Otherwise the class must be
    orthogonal to the canonical class, A = a k + B, and goes to
    a k + gamma R + delta T with 2 gamma delta = B^2 and
    gcd(gamma, delta) = div(B); the certificate fixes k and W.
    """
    lattice = surface.lattice
    if a_class.lattice != lattice:
        raise PreconditionFailed("class lives over a different lattice")
    if a_class.is_zero:
        raise ZeroClass("cannot reduce the zero class")
    if surface.is_k3:
        return reduce_even(lattice, a_class, _RT_BLOCK)
    if a_class.dot(surface.k) != 0:
        raise NotOrthogonalToK("class must be orthogonal to the canonical class")
    a = a_class.coords[0]
    b_coords = list(a_class.coords)
    b_coords[0] = 0
    b = lattice.hclass(b_coords)
    if b.is_zero:
        return _result(a_class, a_class, identity_isometry(lattice))
    acting = tuple(range(1, len(lattice.blocks)))
    inner = reduce_even(lattice, b, _RT_BLOCK, acting_blocks=acting)
    d = b.divisibility()
    s = b.square() // (2 * d * d)
    if s > 0:
        # swap R and T so that gamma carries the composite factor
        swap = reflection(lattice, surface.R - surface.T)
        cert = compose(swap, inner.certificate)
        gamma, delta = d * s, d
    else:
        cert = inner.certificate
        gamma, delta = d, d * s  # delta <= 0, zero iff B^2 = 0
    canonical = a * surface.k + gamma * surface.R + delta * surface.T
    assert intmat.matvec(cert.matrix, a_class.coords) == canonical.coords
    assert canonical.square() == a_class.square()
    assert canonical.divisibility() == a_class.divisibility()
    res = _result(a_class, canonical, cert)
    assert res.spinor == 1 and res.fixes_k and res.fixes_W
    return res


def phi_isometry(surface, alpha: int) -> Isometry:
    """k -> k, W -> W + alpha R, R -> R, T -> T - alpha k, id elsewhere.

    A one-parameter family in the k-fixing spinor-norm-1 subgroup; it
    moves alpha k + S to S.
    """
    lattice = surface.lattice
    alpha = int(alpha)
    n = lattice.rank
    m = [[int(i == r) for i in range(n)] for r in range(n)]
    m[2][1] = alpha   # W column gains alpha R
    m[0][3] = -alpha  # T column gains -alpha k
    return verify_isometry(lattice, m)


def sphere_reduction(surface, a_class: HClass) -> ReductionResult:
    """Map a class orthogonal to K with square -2 to the sphere class S."""
    lattice = surface.lattice
    if a_class.lattice != lattice:
        raise PreconditionFailed("class lives over a different lattice")
    if a_class.is_zero:
        raise ZeroClass("cannot reduce the zero class")
    if a_class.dot(surface.k) != 0 or a_class.square() != -2:
        raise PreconditionFailed(
            "sphere reduction needs k.A = 0 and A^2 = -2"
        )
    if a_class == surface.S:
        return _result(a_class, a_class, identity_isometry(lattice))
    a = a_class.coords[0]
    b_coords = list(a_class.coords)
    b_coords[0] = 0
    b = lattice.hclass(b_coords)
    acting = tuple(range(1, len(lattice.blocks)))
    inner = reduce_even(lattice, b, _RT_BLOCK, acting_blocks=acting)
    # inner canonical is R - T; reflect in R - T to land on S = T - R
    flip = reflection(lattice, surface.R - surface.T)
    cert = compose(phi_isometry(surface, a), compose(flip, inner.certificate))
    canonical = surface.S
    assert intmat.matvec(cert.matrix, a_class.coords) == canonical.coords
    res = _result(a_class, canonical, cert)
    assert res.spinor == 1 and res.fixes_k
    return res
