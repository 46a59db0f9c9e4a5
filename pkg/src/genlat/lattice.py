"""Based integral unimodular lattices built from hyperbolic and E8 blocks.

A lattice here is a free Z-module with a fixed ordered basis and an
integer Gram matrix assembled as a direct sum of rank-2 hyperbolic
blocks (the even H or the odd H') and negated E8 blocks.  Classes are
integer coordinate vectors over that basis; every invariant (square,
divisibility, characteristic test) is computed exactly.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from . import intmat
from .errors import BadParameters, LatticeMismatch, ParseError


def _e8_cartan() -> intmat.Matrix:
    # chain 1-2-3-4-5-6-7 with node 8 attached to node 5, diagonal 2
    c = [[0] * 8 for _ in range(8)]
    for i in range(8):
        c[i][i] = 2
    for i in range(6):
        c[i][i + 1] = c[i + 1][i] = -1
    c[4][7] = c[7][4] = -1
    return tuple(tuple(row) for row in c)


_H_GRAM: intmat.Matrix = ((0, 1), (1, 0))
_H_ODD_GRAM: intmat.Matrix = ((0, 1), (1, 1))
_MINUS_E8_GRAM: intmat.Matrix = tuple(
    tuple(-x for x in row) for row in _e8_cartan()
)


class Block(Enum):
    """The three building blocks of every lattice in this package."""

    HYPERBOLIC = "H"
    HYPERBOLIC_ODD = "H'"
    MINUS_E8 = "E8-"

    @property
    def gram(self) -> intmat.Matrix:
        if self is Block.HYPERBOLIC:
            return _H_GRAM
        if self is Block.HYPERBOLIC_ODD:
            return _H_ODD_GRAM
        return _MINUS_E8_GRAM

    @property
    def rank(self) -> int:
        return 8 if self is Block.MINUS_E8 else 2

    @property
    def sig(self) -> tuple[int, int]:
        """(positive, negative) inertia contributed by this block."""
        return (0, 8) if self is Block.MINUS_E8 else (1, 1)

    @property
    def is_even(self) -> bool:
        return self is not Block.HYPERBOLIC_ODD

    @property
    def token(self) -> str:
        return self.value


@dataclass(frozen=True)
class Lattice:
    """An ordered direct sum of blocks with named basis vectors."""

    blocks: tuple[Block, ...]
    gram: intmat.Matrix
    basis_names: tuple[str, ...]
    rank: int
    sig_pos: int
    sig_neg: int

    @cached_property
    def block_offsets(self) -> tuple[int, ...]:
        offs = []
        pos = 0
        for b in self.blocks:
            offs.append(pos)
            pos += b.rank
        return tuple(offs)

    def block_range(self, i: int) -> range:
        start = self.block_offsets[i]
        return range(start, start + self.blocks[i].rank)

    @cached_property
    def spec(self) -> str:
        return format_lattice_spec(self.blocks)

    @cached_property
    def _name_to_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.basis_names)}

    def name_index(self, name: str) -> int:
        try:
            return self._name_to_index[name]
        except KeyError:
            raise ParseError(f"unknown basis name {name!r}") from None

    def hclass(self, coords) -> "HClass":
        return HClass(self, tuple(coords))

    def zero(self) -> "HClass":
        return HClass(self, (0,) * self.rank)

    def unit_coords(self, index: int) -> intmat.Vector:
        return tuple(int(j == index) for j in range(self.rank))

    def basis_class(self, ref: int | str) -> "HClass":
        index = ref if isinstance(ref, int) else self.name_index(ref)
        if not 0 <= index < self.rank:
            raise BadParameters(f"basis index {index} out of range")
        return HClass(self, self.unit_coords(index))

    @property
    def is_even(self) -> bool:
        return all(b.is_even for b in self.blocks)

    def to_json_dict(self) -> dict:
        return {
            "spec": self.spec,
            "blocks": [b.token for b in self.blocks],
            "basis_names": list(self.basis_names),
            "gram": [list(row) for row in self.gram],
        }

    def __repr__(self) -> str:
        return f"Lattice({self.spec!r})"


def make_lattice(blocks, basis_names=None) -> Lattice:
    """Assemble the direct sum of the given blocks.

    Default basis names are e1,f1,... for rank-2 blocks (in order) and
    x{j}_1..x{j}_8 for the j-th E8 block.
    """
    blocks = tuple(blocks)
    if not blocks:
        raise BadParameters("a lattice needs at least one block")
    if not all(isinstance(b, Block) for b in blocks):
        raise BadParameters("blocks must be Block values")
    gram = intmat.direct_sum([b.gram for b in blocks])
    rank = sum(b.rank for b in blocks)
    sig_pos = sum(b.sig[0] for b in blocks)
    sig_neg = sum(b.sig[1] for b in blocks)
    if basis_names is None:
        names = []
        n_pairs = 0
        n_e8 = 0
        for b in blocks:
            if b is Block.MINUS_E8:
                n_e8 += 1
                names.extend(f"x{n_e8}_{t}" for t in range(1, 9))
            else:
                n_pairs += 1
                names.extend((f"e{n_pairs}", f"f{n_pairs}"))
        basis_names = tuple(names)
    else:
        basis_names = tuple(str(n) for n in basis_names)
        if len(basis_names) != rank:
            raise BadParameters("basis_names length must equal the rank")
        if len(set(basis_names)) != rank:
            raise BadParameters("basis names must be distinct")
    # unimodularity: det of a direct sum is the product of block dets
    d = 1
    for b in blocks:
        d *= _block_det(b)
    if d not in (1, -1):
        raise BadParameters("assembled Gram matrix is not unimodular")
    return Lattice(blocks, gram, basis_names, rank, sig_pos, sig_neg)


_BLOCK_DETS: dict[Block, int] = {}


def _block_det(b: Block) -> int:
    if b not in _BLOCK_DETS:
        _BLOCK_DETS[b] = intmat.det(b.gram)
    return _BLOCK_DETS[b]


@dataclass(frozen=True)
class HClass:
    """A second-homology class: integer coordinates over a lattice basis."""

    lattice: Lattice
    coords: intmat.Vector

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if len(coords) != self.lattice.rank:
            raise BadParameters(
                f"expected {self.lattice.rank} coordinates, got {len(coords)}"
            )
        object.__setattr__(self, "coords", coords)

    def _check_same(self, other: "HClass"):
        if self.lattice is not other.lattice and self.lattice != other.lattice:
            raise LatticeMismatch("classes live over different lattices")

    def dot(self, other: "HClass") -> int:
        self._check_same(other)
        return intmat.dot(self.coords, intmat.matvec(self.lattice.gram, other.coords))

    def square(self) -> int:
        return self.dot(self)

    def divisibility(self) -> int:
        return math.gcd(*self.coords)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_primitive(self) -> bool:
        return self.divisibility() == 1

    def is_characteristic(self) -> bool:
        gx = intmat.matvec(self.lattice.gram, self.coords)
        g = self.lattice.gram
        return all((gx[i] - g[i][i]) % 2 == 0 for i in range(self.lattice.rank))

    def __add__(self, other: "HClass") -> "HClass":
        self._check_same(other)
        return HClass(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "HClass") -> "HClass":
        self._check_same(other)
        return HClass(self.lattice, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "HClass":
        return HClass(self.lattice, tuple(-a for a in self.coords))

    def __mul__(self, r: int) -> "HClass":
        return HClass(self.lattice, tuple(r * a for a in self.coords))

    __rmul__ = __mul__

    def pretty(self) -> str:
        parts = [
            f"{self.lattice.basis_names[i]}={c}"
            for i, c in enumerate(self.coords)
            if c
        ]
        return ",".join(parts) if parts else "0"

    def to_json_dict(self) -> dict:
        return {"lattice": self.lattice.spec, "coords": list(self.coords)}

    def __repr__(self) -> str:
        return f"HClass({self.pretty()})"


# -- free-function forms of the class invariants ------------------------------

def square(x: HClass) -> int:
    return x.square()


def divisibility(x: HClass) -> int:
    return x.divisibility()


def is_characteristic(x: HClass) -> bool:
    return x.is_characteristic()


# -- spec strings and parsing ------------------------------------------------

_SPEC_TOKEN = re.compile(r"^(\d*)(H'|H|E8-)$")
_TOKEN_TO_BLOCK = {b.token: b for b in Block}


def parse_lattice_spec(text: str) -> tuple[Block, ...]:
    """Parse a spec such as "H',2H,3E8-" into a block tuple."""
    blocks: list[Block] = []
    for raw in text.split(","):
        tok = raw.strip()
        m = _SPEC_TOKEN.match(tok)
        if not m:
            raise ParseError(f"bad lattice token {tok!r}")
        count = int(m.group(1)) if m.group(1) else 1
        if count < 1:
            raise ParseError(f"bad repetition count in {tok!r}")
        blocks.extend([_TOKEN_TO_BLOCK[m.group(2)]] * count)
    if not blocks:
        raise ParseError("empty lattice spec")
    return tuple(blocks)


def format_lattice_spec(blocks) -> str:
    parts = []
    run: list[Block] = []
    for b in blocks:
        if run and run[-1] is not b:
            parts.append(run)
            run = []
        run.append(b)
    if run:
        parts.append(run)
    out = []
    for group in parts:
        n = len(group)
        out.append(f"{n if n > 1 else ''}{group[0].token}")
    return ",".join(out)


def lattice_from_spec(text: str, basis_names=None) -> Lattice:
    return make_lattice(parse_lattice_spec(text), basis_names)


def parse_class(lattice: Lattice, text: str, aliases: dict[str, str] | None = None) -> HClass:
    """Parse a dense "1,0,-2,..." or sparse "k=4,e1=2" class string."""
    text = text.strip()
    if not text:
        raise ParseError("empty class string")
    if "=" in text:
        coords = [0] * lattice.rank
        seen: set[int] = set()
        for raw in text.split(","):
            item = raw.strip()
            name, sep, val = item.partition("=")
            if not sep:
                raise ParseError(f"bad class item {item!r}")
            name = name.strip()
            if aliases:
                name = aliases.get(name, name)
            idx = lattice.name_index(name)
            if idx in seen:
                raise ParseError(f"duplicate basis name {name!r}")
            seen.add(idx)
            try:
                coords[idx] = int(val.strip())
            except ValueError:
                raise ParseError(f"bad integer in {item!r}") from None
        return lattice.hclass(coords)
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != lattice.rank:
        raise ParseError(
            f"expected {lattice.rank} coordinates, got {len(parts)}"
        )
    try:
        return lattice.hclass(int(p) for p in parts)
    except ValueError:
        bad = next(p for p in parts if not _is_int(p))
        raise ParseError(f"bad integer {bad!r}") from None


def _is_int(s: str) -> bool:
    try:
        int(s)
        return True
    except ValueError:
        return False


def lattice_from_json_dict(doc: dict) -> Lattice:
    blocks = tuple(_TOKEN_TO_BLOCK[t] for t in doc["blocks"])
    names = doc.get("basis_names")
    lat = make_lattice(blocks, tuple(names) if names else None)
    if "gram" in doc:
        given = tuple(tuple(int(x) for x in row) for row in doc["gram"])
        if given != lat.gram:
            raise ParseError("gram matrix does not match the block structure")
    return lat


def hclass_from_json_dict(doc: dict) -> HClass:
    lat = lattice_from_spec(doc["lattice"])
    return lat.hclass(doc["coords"])
