"""Cube chains, their boundary operator, and vertex-pair-graded complexes.

A cube chain in an acyclic precubical set X is a sequence of cells of
dimension >= 1, each glued final-vertex-to-initial-vertex to the next; the
empty chain sits at a single vertex.  A chain of type ``(n_1, .., n_l)``
has degree ``sum(n_k - 1)``.  Chains of fixed degree between a fixed vertex
pair form the basis of one graded component of the chain complex.

Boundary convention
-------------------
The boundary splits one cube of dimension ``n_k >= 2`` at a time.  For a
nonempty proper subset ``A`` of ``{1..n_k}`` the cube ``c_k`` is replaced by
the two glued cubes

    lower = d^0 over the complement of A (descending index order),
    upper = d^1 over A (descending index order),

so the first part keeps the A-directions and the second the rest.  The
coefficient is::

    (-1)^(sum_{j<k} (n_j - 1))        position (Koszul) prefix
    * (-1)^|A|                        split-size factor
    * sign(A asc, complement asc)     shuffle signature

The split-size factor ``(-1)^|A|`` is required: with the bare shuffle
signature the double splits of one cube do not cancel and the square of the
boundary is nonzero.  With it, d . d = 0 (asserted at every complex build),
and the two splittings of a 2-cube carry opposite signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .exactla import Matrix, QQ
from .precubical import PrecubicalSet, TensorSet


class DirectedCycleError(ValueError):
    """The construction needs an acyclic set but the input has a cycle."""


class ChainError(ValueError):
    """Malformed cube chain or misuse of a chain operation."""


class BoundaryCheckError(AssertionError):
    """d . d != 0: signals a sign-convention bug, never a data problem."""


@dataclass(frozen=True)
class CubeChain:
    """An immutable cube chain: glued cubes plus its endpoints."""

    src: str
    dst: str
    cubes: tuple[str, ...]
    dims: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(d - 1 for d in self.dims)

    @property
    def type(self) -> tuple[int, ...]:
        return self.dims

    def sort_key(self):
        return (len(self.cubes), self.cubes)

    def __repr__(self) -> str:
        inner = ",".join(self.cubes) if self.cubes else f"@{self.src}"
        return f"<{inner}>"


def empty_chain(v: str) -> CubeChain:
    return CubeChain(v, v, (), ())


def make_chain(x: PrecubicalSet, cubes: Sequence[str], at: str | None = None) -> CubeChain:
    """Build a chain from cube ids, checking gluing; `at` anchors the empty chain."""
    cubes = tuple(cubes)
    if not cubes:
        if at is None:
            raise ChainError("empty chain needs an anchor vertex")
        if x.dim_of(at) != 0:
            raise ChainError(f"anchor {at!r} is not a vertex")
        return empty_chain(at)
    dims = []
    for c in cubes:
        n = x.dim_of(c)
        if n < 1:
            raise ChainError(f"chain cube {c!r} has dimension 0")
        dims.append(n)
    for a, b in zip(cubes, cubes[1:]):
        if x.final_vertex(a) != x.initial_vertex(b):
            raise ChainError(f"cubes {a!r} and {b!r} do not glue")
    return CubeChain(x.initial_vertex(cubes[0]), x.final_vertex(cubes[-1]),
                     cubes, tuple(dims))


# -- enumeration -------------------------------------------------------------

_catalog_cache: dict[tuple[int, int | None], dict] = {}


def chain_catalog(x: PrecubicalSet, max_degree: int | None = None
                  ) -> dict[tuple[int, str, str], list[CubeChain]]:
    """All cube chains of degree <= max_degree, keyed by (degree, src, dst).

    With ``max_degree=None`` every chain is enumerated (finite because the
    set is acyclic).  Chains are listed in the canonical order: by length,
    then lexicographically on the cube ids.
    """
    key = (id(x), max_degree)
    hit = _catalog_cache.get(key)
    if hit is not None and hit["ref"] is x:
        return hit["catalog"]
    if not x.is_acyclic():
        raise DirectedCycleError(
            f"{x.name}: chain enumeration needs an acyclic vertex-edge digraph")
    start_at: dict[str, list[str]] = {v: [] for v in x.vertices}
    for layer in x.cells[1:]:
        for c in layer:
            start_at[x.initial_vertex(c)].append(c)
    for v in start_at:
        start_at[v].sort(key=lambda c: (x.dim_of(c), c))
    catalog: dict[tuple[int, str, str], list[CubeChain]] = {}

    def emit(chain: CubeChain):
        catalog.setdefault((chain.degree, chain.src, chain.dst), []).append(chain)

    def extend(src: str, here: str, cubes: list[str], dims: list[int], deg: int):
        emit(CubeChain(src, here, tuple(cubes), tuple(dims)))
        for c in start_at[here]:
            n = x.dim_of(c)
            extra = n - 1
            if max_degree is not None and deg + extra > max_degree:
                continue
            cubes.append(c)
            dims.append(n)
            extend(src, x.final_vertex(c), cubes, dims, deg + extra)
            cubes.pop()
            dims.pop()

    for v in sorted(x.vertices):
        extend(v, v, [], [], 0)
    for chains in catalog.values():
        chains.sort(key=CubeChain.sort_key)
    _catalog_cache[key] = {"ref": x, "catalog": catalog}
    return catalog


def enumerate_chains(x: PrecubicalSet, degree: int, src: str, dst: str) -> list[CubeChain]:
    """All cube chains of the given degree from src to dst, each once."""
    return list(chain_catalog(x).get((degree, src, dst), ()))


def max_chain_degree(x: PrecubicalSet) -> int:
    return max((k[0] for k in chain_catalog(x)), default=0)


# -- formal sums and the boundary -------------------------------------------


class FormalSum:
    """A field-linear combination of cube chains sharing (degree, src, dst)."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms: Mapping[CubeChain, object] | None = None):
        self.field = field
        self.terms: dict[CubeChain, object] = {}
        if terms:
            for chain, coeff in terms.items():
                self.add_term(chain, coeff)

    def add_term(self, chain: CubeChain, coeff) -> None:
        if isinstance(coeff, int):
            coeff = self.field.of(coeff)
        cur = self.terms.get(chain, self.field.zero)
        new = cur + coeff
        if new == self.field.zero:
            self.terms.pop(chain, None)
        else:
            self.terms[chain] = new
        if len({(c.degree, c.src, c.dst) for c in self.terms}) > 1:
            raise ChainError("formal sum mixes (degree, src, dst) gradings")

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{ch!r}" for ch, c in self.items())


def _shuffle_parity(a_set: Sequence[int], comp: Sequence[int]) -> int:
    inv = 0
    for a in a_set:
        for c in comp:
            if c < a:
                inv += 1
    return inv % 2


def _proper_subsets(n: int) -> list[tuple[int, ...]]:
    out = []
    for mask in range(1, (1 << n) - 1):
        out.append(tuple(i + 1 for i in range(n) if mask >> i & 1))
    return out


def split_cube(x: PrecubicalSet, cube: str, a_set: Sequence[int]) -> tuple[str, str]:
    """Split a cube along a subset A of its directions.

    Returns (lower, upper): the lower part keeps the A-directions (d^0 over
    the complement, descending), the upper keeps the complement (d^1 over A,
    descending).
    """
    n = x.dim_of(cube)
    comp = [i for i in range(1, n + 1) if i not in set(a_set)]
    lower = cube
    for i in sorted(comp, reverse=True):
        lower = x.face(lower, i, 0)
    upper = cube
    for i in sorted(a_set, reverse=True):
        upper = x.face(upper, i, 1)
    return lower, upper


def boundary(x: PrecubicalSet, chain: CubeChain, field=QQ) -> FormalSum:
    """The boundary of a chain of degree >= 1 (see the module docstring)."""
    if chain.degree < 1:
        raise ChainError("boundary of a degree-0 chain is zero; use an empty sum")
    out = FormalSum(field)
    prefix_deg = 0
    for k, (cube, n) in enumerate(zip(chain.cubes, chain.dims)):
        if n >= 2:
            eps_k = -1 if prefix_deg % 2 else 1
            for a_set in _proper_subsets(n):
                comp = [i for i in range(1, n + 1) if i not in set(a_set)]
                sign = eps_k
                if len(a_set) % 2:
                    sign = -sign
                if _shuffle_parity(a_set, comp):
                    sign = -sign
                lower, upper = split_cube(x, cube, a_set)
                cubes = chain.cubes[:k] + (lower, upper) + chain.cubes[k + 1:]
                dims = chain.dims[:k] + (len(a_set), n - len(a_set)) + chain.dims[k + 1:]
                out.add_term(CubeChain(chain.src, chain.dst, cubes, dims), sign)
        prefix_deg += n - 1
    return out


# -- graded complexes ---------------------------------------------------------


class GradedComplex:
    """Dimensions and differentials per (degree, pair-key).

    Pair keys are opaque sortable objects; for cube-chain complexes they are
    (src, dst) vertex pairs.  Differentials map degree i to degree i-1 inside
    one pair component.  ``d . d = 0`` is asserted at construction by callers
    via `check_boundary_square`.
    """

    def __init__(self, field, top_degree: int,
                 dims: Mapping[tuple[int, object], int],
                 diffs: Mapping[tuple[int, object], Matrix]):
        self.field = field
        self.top_degree = top_degree
        self._dims = dict(dims)
        self._diffs = dict(diffs)
        self._pairs = sorted({k[1] for k in self._dims})

    def pairs(self) -> list:
        return list(self._pairs)

    def dim(self, i: int, pair) -> int:
        return self._dims.get((i, pair), 0)

    def diff(self, i: int, pair) -> Matrix:
        m = self._diffs.get((i, pair))
        if m is None:
            rows = self.dim(i - 1, pair) if i >= 1 else 0
            return Matrix.zeros(self.field, rows, self.dim(i, pair))
        return m

    def check_boundary_square(self) -> None:
        for pair in self._pairs:
            for i in range(2, self.top_degree + 1):
                if self.dim(i, pair) == 0:
                    continue
                prod = self.diff(i - 1, pair) @ self.diff(i, pair)
                if not prod.is_zero():
                    raise BoundaryCheckError(
                        f"d.d != 0 at degree {i}, pair {pair}")

    def euler_characteristic(self, pair) -> int:
        return sum((-1) ** i * self.dim(i, pair) for i in range(self.top_degree + 1))


class PairGradedComplex(GradedComplex):
    """The cube-chain complex of an acyclic precubical set.

    Bases are the enumerated cube chains in canonical order; one differential
    matrix per (degree, src, dst).
    """

    def __init__(self, x: PrecubicalSet, field, top_degree: int,
                 bases: dict[tuple[int, str, str], list[CubeChain]],
                 diffs: dict[tuple[int, str, str], Matrix]):
        dims = {(i, (s, e)): len(chains) for (i, s, e), chains in bases.items()}
        super().__init__(field, top_degree,
                         dims, {(i, (s, e)): m for (i, s, e), m in diffs.items()})
        self.x = x
        self.bases = bases
        self.index: dict[tuple[int, str, str], dict[CubeChain, int]] = {
            key: {c: i for i, c in enumerate(chains)} for key, chains in bases.items()}

    def basis(self, i: int, src: str, dst: str) -> list[CubeChain]:
        return list(self.bases.get((i, src, dst), ()))

    def chain_index(self, chain: CubeChain) -> int:
        key = (chain.degree, chain.src, chain.dst)
        try:
            return self.index[key][chain]
        except KeyError:
            raise ChainError(f"chain {chain!r} not in the complex basis") from None

    def vector_of(self, s: FormalSum | CubeChain, i: int, src: str, dst: str) -> tuple:
        """Coordinates of a formal sum in the (i, src, dst) basis."""
        n = self.dim(i, (src, dst))
        v = [self.field.zero] * n
        if isinstance(s, CubeChain):
            s = FormalSum(self.field, {s: self.field.one})
        for chain, coeff in s.terms.items():
            if (chain.degree, chain.src, chain.dst) != (i, src, dst):
                raise ChainError("formal sum does not live in the requested grading")
            v[self.chain_index(chain)] = coeff
        return tuple(v)


def build_complex(x: PrecubicalSet, max_degree: int | None = None,
                  field=QQ) -> PairGradedComplex:
    """Enumerate bases and assemble differentials; asserts d.d = 0.

    ``max_degree=None`` builds the full complex (all chain degrees), which is
    what the exactness verifiers use so truncation never fakes a zero.
    """
    catalog = chain_catalog(x, None if max_degree is None else max_degree)
    top = max((k[0] for k in catalog), default=0)
    if max_degree is not None:
        top = min(top, max_degree)
    bases = {k: v for k, v in catalog.items() if k[0] <= top}
    diffs: dict[tuple[int, str, str], Matrix] = {}
    for (i, s, e), chains in sorted(bases.items()):
        if i == 0:
            continue
        target = bases.get((i - 1, s, e), [])
        tindex = {c: j for j, c in enumerate(target)}
        cols = []
        for chain in chains:
            v = [field.zero] * len(target)
            for term, coeff in boundary(x, chain, field).terms.items():
                j = tindex.get(term)
                if j is None:
                    raise ChainError(f"boundary term {term!r} missing from basis")
                v[j] = coeff
            cols.append(v)
        diffs[(i, s, e)] = Matrix.from_columns(field, cols, length=len(target))
    cx = PairGradedComplex(x, field, top, bases, diffs)
    cx.check_boundary_square()
    return cx


# -- shuffles in tensor products ----------------------------------------------


def project_shuffle(tx: TensorSet, chain: CubeChain) -> tuple[CubeChain, CubeChain]:
    """Split a chain in X(x)Y into its X- and Y-component chains."""
    for cube in chain.cubes:
        if cube not in tx.fst:
            raise ChainError(f"cube {cube!r} is not a product cell")
    x, y = tx.left, tx.right
    sx, sy = tx.components(chain.src)
    ex, ey = tx.components(chain.dst)
    xs, xdims, ys, ydims = [], [], [], []
    for cube in chain.cubes:
        u, v = tx.components(cube)
        if x.dim_of(u) >= 1:
            xs.append(u)
            xdims.append(x.dim_of(u))
        if y.dim_of(v) >= 1:
            ys.append(v)
            ydims.append(y.dim_of(v))
    return (CubeChain(sx, ex, tuple(xs), tuple(xdims)),
            CubeChain(sy, ey, tuple(ys), tuple(ydims)))


def enumerate_shuffles(tx: TensorSet, cx: CubeChain, cy: CubeChain,
                       target_degree: int) -> list[CubeChain]:
    """All chains in X(x)Y of the target degree projecting to (cx, cy).

    An interleaving step consumes the next X-cube (paired with the current
    Y-vertex), the next Y-cube (paired with the current X-vertex), or both at
    once as a mixed cube; each merge raises the degree by one.
    """
    x, y = tx.left, tx.right
    merges_needed = target_degree - cx.degree - cy.degree
    if merges_needed < 0:
        return []
    out: list[CubeChain] = []
    src = tx.pair_id(cx.src, cy.src)
    dst = tx.pair_id(cx.dst, cy.dst)

    def walk(i: int, j: int, herex: str, herey: str,
             cubes: list[str], dims: list[int], merges: int):
        if i == len(cx.cubes) and j == len(cy.cubes):
            if merges == merges_needed:
                out.append(CubeChain(src, dst, tuple(cubes), tuple(dims)))
            return
        if i < len(cx.cubes):
            u = cx.cubes[i]
            cubes.append(tx.pair_id(u, herey))
            dims.append(cx.dims[i])
            walk(i + 1, j, x.final_vertex(u), herey, cubes, dims, merges)
            cubes.pop()
            dims.pop()
        if j < len(cy.cubes):
            v = cy.cubes[j]
            cubes.append(tx.pair_id(herex, v))
            dims.append(cy.dims[j])
            walk(i, j + 1, herex, y.final_vertex(v), cubes, dims, merges)
            cubes.pop()
            dims.pop()
        if i < len(cx.cubes) and j < len(cy.cubes) and merges < merges_needed:
            u, v = cx.cubes[i], cy.cubes[j]
            cubes.append(tx.pair_id(u, v))
            dims.append(cx.dims[i] + cy.dims[j])
            walk(i + 1, j + 1, x.final_vertex(u), y.final_vertex(v),
                 cubes, dims, merges + 1)
            cubes.pop()
            dims.pop()

    walk(0, 0, cx.src, cy.src, [], [], 0)
    out.sort(key=CubeChain.sort_key)
    return out
