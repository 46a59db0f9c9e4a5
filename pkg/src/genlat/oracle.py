"""Desk-scale brute force: vector enumeration, orbit computation under a
fixed generator set, and exhaustive isometry search.

Everything here is an independent cross-check for the reduction engine,
so it deliberately shares no code path with it: orbits come from plain
closure under verified generator matrices, witnesses from path
composition, and search candidates from raw coordinate enumeration.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from . import intmat
from .errors import BudgetExceeded, LatticeError, PreconditionFailed
from .isometry import (
    Isometry,
    canonical_frame,
    eichler_transvection,
    reflection,
    spinor_norm,
    verify_isometry,
)
from .lattice import HClass, Lattice

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class OrbitReport:
    """Orbit statistics among the in-bound vectors of one square and
    divisibility."""

    lattice: Lattice
    square: int
    divisibility: int
    coord_bound: int
    vectors_found: int
    orbit_count_full: int
    orbit_count_spinor1: int
    witnesses: tuple | None = None

    def to_json_dict(self) -> dict:
        doc = {
            "lattice": self.lattice.spec,
            "square": self.square,
            "divisibility": self.divisibility,
            "coord_bound": self.coord_bound,
            "vectors_found": self.vectors_found,
            "orbit_count_full": self.orbit_count_full,
            "orbit_count_spinor1": self.orbit_count_spinor1,
            "witnesses": None,
        }
        if self.witnesses is not None:
            doc["witnesses"] = [
                {
                    "vector": list(vec),
                    "canonical": list(can),
                    "certificate": [list(row) for row in cert.matrix],
                }
                for vec, can, cert in self.witnesses
            ]
        return doc


def enumerate_vectors(
    lattice: Lattice,
    square: int,
    divisibility: int,
    bound: int,
    max_states: int = DEFAULT_BUDGET,
) -> list[HClass]:
    """All classes with max-norm <= bound of the given square and
    divisibility, in lexicographic coordinate order."""
    if bound < 1:
        raise PreconditionFailed("bound must be at least 1")
    width = 2 * bound + 1
    if width ** lattice.rank > max_states:
        raise BudgetExceeded(
            f"enumeration of {width}^{lattice.rank} vectors exceeds the budget"
        )
    out = []
    for coords in itertools.product(range(-bound, bound + 1), repeat=lattice.rank):
        x = lattice.hclass(coords)
        if x.divisibility() == divisibility and x.square() == square:
            out.append(x)
    return out


def default_generators(lattice: Lattice) -> list[Isometry]:
    """The fixed desk-scale generator set: Eichler transvections and
    reflections with u, v drawn from the basis vectors, their negatives
    and pairwise sums and differences."""
    rank = lattice.rank
    gram = lattice.gram
    cands: list[intmat.Vector] = []
    for i in range(rank):
        for s in (1, -1):
            v = [0] * rank
            v[i] = s
            cands.append(tuple(v))
    for i in range(rank):
        for j in range(i + 1, rank):
            for si, sj in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
                v = [0] * rank
                v[i], v[j] = si, sj
                cands.append(tuple(v))

    def pair(u, v):
        return intmat.dot(u, intmat.matvec(gram, v))

    ident = intmat.identity(rank)
    seen: dict[intmat.Matrix, None] = {}
    gens: list[Isometry] = []
    for u in cands:
        if pair(u, u) != 0:
            continue
        for v in cands:
            if pair(u, v) != 0 or pair(v, v) % 2 != 0:
                continue
            iso = eichler_transvection(lattice, lattice.hclass(u), lattice.hclass(v))
            if iso.matrix == ident or iso.matrix in seen:
                continue
            seen[iso.matrix] = None
            gens.append(iso)
    for v in cands:
        try:
            iso = reflection(lattice, lattice.hclass(v))
        except LatticeError:
            continue
        if iso.matrix in seen:
            continue
        seen[iso.matrix] = None
        gens.append(iso)
    return gens


class _DSU:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the lexicographically smaller root for determinism
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def component_count(self) -> int:
        return sum(1 for x in self.parent if self.find(x) == x)


def orbit_bfs(
    lattice: Lattice,
    seeds,
    generators,
    bound: int,
    max_states: int = DEFAULT_BUDGET,
    include_witnesses: bool = False,
    progress=None,
) -> OrbitReport:
    """Close the seed set under the generators, truncated at the
    coordinate bound, and count orbits for the full generator set and
    for its spinor-norm-+1 subset.

    Isometries preserve square and divisibility, so the truncated
    closure stays inside the seed set and the orbit counts are counts
    among the seeds reachable through in-bound intermediate vectors.
    """
    seeds = list(seeds)
    seed_coords = sorted({s.coords for s in seeds})
    if seeds:
        sq = seeds[0].square()
        div = seeds[0].divisibility()
        if any(s.square() != sq or s.divisibility() != div for s in seeds):
            raise PreconditionFailed("seeds must share square and divisibility")
    else:
        sq = div = 0
    frame = canonical_frame(lattice)
    spin1 = [g for g in generators if spinor_norm(frame, g) == 1]

    applied = 0

    def sweep(gens) -> _DSU:
        nonlocal applied
        dsu = _DSU(seed_coords)
        members = set(seed_coords)
        for x in seed_coords:
            for g in gens:
                y = intmat.matvec(g.matrix, x)
                applied += 1
                if applied > max_states:
                    raise BudgetExceeded(
                        f"orbit sweep exceeded {max_states} generator applications"
                    )
                if progress and applied % 50000 == 0:
                    print(f"orbit-bfs: {applied} generator applications", file=progress)
                if max(map(abs, y), default=0) <= bound:
                    assert y in members, "generator left the seed set"
                    dsu.union(x, y)
        return dsu

    full = sweep(generators)
    spin = sweep(spin1)
    witnesses = None
    if include_witnesses:
        witnesses = _witnesses(lattice, seed_coords, spin, spin1)
    return OrbitReport(
        lattice=lattice,
        square=sq,
        divisibility=div,
        coord_bound=bound,
        vectors_found=len(seed_coords),
        orbit_count_full=full.component_count(),
        orbit_count_spinor1=spin.component_count(),
        witnesses=witnesses,
    )


def _witnesses(lattice, seed_coords, dsu, gens):
    """(vector, canonical, certificate) per seed, from spinor-1 paths.

    The canonical member of each component is its lexicographic
    minimum; certificates come from composing generator matrices along
    a breadth-first tree rooted there, then inverting.
    """
    comps: dict[intmat.Vector, list[intmat.Vector]] = {}
    for x in seed_coords:
        comps.setdefault(dsu.find(x), []).append(x)
    out = []
    bound_members = set(seed_coords)
    for members in comps.values():
        root = min(members)
        reach = {root: intmat.identity(lattice.rank)}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = intmat.matvec(g.matrix, x)
                if y in bound_members and y not in reach:
                    reach[y] = intmat.matmul(g.matrix, reach[x])
                    queue.append(y)
        for x in members:
            m = reach[x]  # maps root to x
            cert = verify_isometry(lattice, m).inverse()
            assert intmat.matvec(cert.matrix, x) == root
            out.append((x, root, cert))
    out.sort(key=lambda item: item[0])
    return tuple(out)


def exhaustive_isometry_search(
    lattice: Lattice,
    x: HClass,
    y: HClass,
    entry_bound: int,
    max_states: int = DEFAULT_BUDGET,
) -> Isometry | None:
    """Search for an isometry with entries bounded by entry_bound
    mapping x to y.

    Columns are assigned depth first in a fixed deterministic order:
    the columns hit by x first, so the constraint M x = y forces the
    last of them outright, then the remaining columns under the Gram
    conditions alone.  Visited search nodes count against the budget.
    """
    if x.square() != y.square():
        raise PreconditionFailed("x and y must have equal square")
    if x.divisibility() != y.divisibility():
        raise PreconditionFailed("x and y must have equal divisibility")
    rank = lattice.rank
    gram = lattice.gram
    width = 2 * entry_bound + 1
    if width ** rank > max_states:
        raise BudgetExceeded("candidate enumeration exceeds the budget")
    by_square: dict[int, list] = {}
    for v in itertools.product(range(-entry_bound, entry_bound + 1), repeat=rank):
        gv = intmat.matvec(gram, v)
        by_square.setdefault(intmat.dot(gv, v), []).append((v, gv))
    for group in by_square.values():
        group.sort(key=lambda item: (max(map(abs, item[0]), default=0), item[0]))
    xc = x.coords
    yc = y.coords
    support = [j for j in range(rank) if xc[j]]
    order = support + [j for j in range(rank) if not xc[j]]
    force_pos = len(support) - 1 if support else None
    tail = [sum(abs(xc[j]) for j in order[t + 1:]) for t in range(rank)]
    states = 0
    cols: dict[int, intmat.Vector] = {}
    gcols: list[tuple[int, intmat.Vector]] = []

    def admissible(j: int, v, gv) -> bool:
        return all(intmat.dot(gj, v) == gram[i][j] for i, gj in gcols)

    def dfs(t: int, partial: intmat.Vector):
        nonlocal states
        states += 1
        if states > max_states:
            raise BudgetExceeded(f"search exceeded {max_states} states")
        if t == rank:
            return tuple(tuple(cols[j][r] for j in range(rank)) for r in range(rank))
        j = order[t]
        if t == force_pos:
            # M x = y pins this column
            rem = tuple(b - a for a, b in zip(partial, yc))
            if any(r % xc[j] for r in rem):
                return None
            v = tuple(r // xc[j] for r in rem)
            if max(map(abs, v), default=0) > entry_bound:
                return None
            gv = intmat.matvec(gram, v)
            if intmat.dot(gv, v) != gram[j][j] or not admissible(j, v, gv):
                return None
            choices = [(v, gv)]
        else:
            choices = by_square.get(gram[j][j], [])
        for v, gv in choices:
            if t != force_pos:
                if not admissible(j, v, gv):
                    continue
                if xc[j]:
                    slack = tail[t] * entry_bound
                    probe = tuple(p + xc[j] * c for p, c in zip(partial, v))
                    if any(abs(b - a) > slack for a, b in zip(probe, yc)):
                        continue
                else:
                    probe = partial
            else:
                probe = yc
            cols[j] = v
            gcols.append((j, gv))
            found = dfs(t + 1, probe)
            if found:
                return found
            gcols.pop()
            del cols[j]
        return None

    matrix = dfs(0, (0,) * rank)
    if matrix is None:
        return None
    iso = verify_isometry(lattice, matrix)
    assert intmat.matvec(iso.matrix, xc) == yc
    return iso
