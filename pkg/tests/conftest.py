import random

import pytest
from hypothesis import settings

import genlat as g

settings.register_profile("exact", deadline=None, derandomize=True)
settings.load_profile("exact")


@pytest.fixture(scope="session")
def H():
    return g.lattice_from_spec("H")


@pytest.fixture(scope="session")
def HODD():
    return g.lattice_from_spec("H'")


@pytest.fixture(scope="session")
def H2():
    return g.lattice_from_spec("2H")


@pytest.fixture(scope="session")
def H2E8():
    return g.lattice_from_spec("2H,E8-")


@pytest.fixture(scope="session")
def k3():
    return g.make_surface(2)


@pytest.fixture(scope="session")
def e3():
    return g.make_surface(3)


@pytest.fixture(scope="session")
def e4():
    return g.make_surface(4)


@pytest.fixture(scope="session")
def e23():
    return g.make_surface(2, 2, 3)


def generator_pool(lattice):
    """A small deterministic pool of verified isometries for sampling
    random products: transvections, reflections and block sign flips."""
    pool = []
    pairs = [i for i, b in enumerate(lattice.blocks) if b.rank == 2]
    hyper = [i for i, b in enumerate(lattice.blocks) if b is g.Block.HYPERBOLIC]
    for i in hyper:
        e = lattice.basis_class(lattice.block_offsets[i])
        f = lattice.basis_class(lattice.block_offsets[i] + 1)
        pool.append(g.reflection(lattice, e - f))
        pool.append(g.reflection(lattice, e + f))
        for j in hyper:
            if j == i:
                continue
            e2 = lattice.basis_class(lattice.block_offsets[j])
            f2 = lattice.basis_class(lattice.block_offsets[j] + 1)
            pool.append(g.eichler_transvection(lattice, e, e2))
            pool.append(g.eichler_transvection(lattice, e, f2))
            pool.append(g.eichler_transvection(lattice, f, e2 - f2))
    for i, b in enumerate(lattice.blocks):
        if b is g.Block.MINUS_E8:
            x1 = lattice.basis_class(lattice.block_offsets[i])
            x2 = lattice.basis_class(lattice.block_offsets[i] + 1)
            pool.append(g.reflection(lattice, x1))
            if hyper:
                e = lattice.basis_class(lattice.block_offsets[hyper[0]])
                pool.append(g.eichler_transvection(lattice, e, x1 + 2 * x2))
            break
    if len(pairs) >= 2:
        pool.append(g.minus_identity_on_blocks(lattice, pairs[:2]))
    return pool


def random_isometry(lattice, rng: random.Random, pool=None, steps=4):
    pool = pool if pool is not None else generator_pool(lattice)
    iso = g.identity_isometry(lattice)
    for _ in range(steps):
        iso = g.compose(rng.choice(pool), iso)
    return iso
