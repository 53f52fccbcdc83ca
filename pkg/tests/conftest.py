import random

import pytest

import dirhom as dh
from dirhom.precubical import PrecubicalSet


@pytest.fixture(scope="session")
def K():
    return dh.segment()


@pytest.fixture(scope="session")
def D2():
    return dh.directed_disc(2)


@pytest.fixture(scope="session")
def D3():
    return dh.directed_disc(3)


@pytest.fixture(scope="session")
def S1():
    return dh.directed_sphere(1)


@pytest.fixture(scope="session")
def S2():
    return dh.directed_sphere(2)


def make_domino() -> PrecubicalSet:
    """Two squares glued along the middle vertical edge; all arrows right/up."""
    vs = ["00", "10", "20", "01", "11", "21"]
    edges = {"h00": ("00", "10"), "h10": ("10", "20"), "h01": ("01", "11"),
             "h11": ("11", "21"), "v0": ("00", "01"), "v1": ("10", "11"),
             "v2": ("20", "21")}
    faces = {e: ([a], [b]) for e, (a, b) in edges.items()}
    faces["s1"] = (["v0", "h00"], ["v1", "h01"])
    faces["s2"] = (["v1", "h10"], ["v2", "h11"])
    return PrecubicalSet("domino", [vs, sorted(edges), ["s1", "s2"]], faces)


@pytest.fixture(scope="session")
def domino():
    return make_domino()


def sequences_of_dimension(dim: int, max_blocks: int, max_entry: int = 4):
    """All cube sequences (n_1..n_l) with sum(n_k - 1) = dim, l <= max_blocks."""
    out = []

    def rec(acc, remaining):
        if remaining == 0:
            out.append(tuple(acc))
        if len(acc) == max_blocks:
            return
        for n in range(1, max_entry + 1):
            if n - 1 <= remaining:
                acc.append(n)
                rec(acc, remaining - (n - 1))
                acc.pop()

    rec([], dim)
    return [s for s in out if s]


def random_face_closed_subsets(x, count: int, seed: int = 20250810):
    """Deterministic face-closed cell selections of x, nonempty."""
    rng = random.Random(seed)
    cells = x.all_cells()
    out = []
    while len(out) < count:
        k = rng.randint(1, max(1, len(cells) // 2))
        picked = rng.sample(cells, k)
        sel = dh.face_closure(x, picked)
        if sel:
            out.append(sel)
    return out


def corpus():
    """The structural-suite corpus: discs, spheres, realizations, subsets."""
    sets = [dh.segment(), dh.directed_disc(2), dh.directed_disc(3),
            dh.directed_sphere(0), dh.directed_sphere(1), dh.directed_sphere(2),
            make_domino()]
    for dim in (0, 1, 2):
        for seq in sequences_of_dimension(dim, max_blocks=3):
            sets.append(dh.realization(seq))
    d3 = dh.directed_disc(3)
    for i, sel in enumerate(random_face_closed_subsets(d3, 10)):
        child, _ = dh.sub(d3, dh.SubsetSpec(d3, sel))
        child.name = f"D3sub{i}"
        sets.append(child)
    return sets
