"""Path algebras and change of coefficients for pair-graded bimodules.

The path algebra of an acyclic precubical set is spanned by the monotone
edge paths of its 1-skeleton, with concatenation as product (zero when not
composable) and the trivial paths as local units.  Bimodules over a pair of
path algebras decompose into components indexed by (source vertex, target
vertex); everything in this module works per such pair.

Extension of scalars along an inclusion Y -> X is implemented twice, on
purpose:

* `extend_subcomplex` is the fast path: inside the chain complex of X it
  spans the chains that factor as (edge-only prefix) . (chain in Y) .
  (edge-only suffix);
* `extend_presented` is the ground truth: it re-reads a presented bimodule
  over the paths of X and reduces the per-pair relation translates.

Their per-pair dimensions agree exactly when the canonical comparison map
is injective, which is what the relative-pair check verifies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .exactla import Matrix, QQ, Subspace, _rref
from .precubical import PcMorphism, PrecubicalSet, TensorSet
from .cubechain import (
    ChainError, CubeChain, DirectedCycleError, GradedComplex,
    PairGradedComplex, chain_catalog,
)


class AlgebraError(ValueError):
    """Misuse of path algebras or bimodule presentations."""


class PathAlgebraIndex:
    """All monotone edge paths of an acyclic set, indexed by vertex pair.

    Paths are tuples of edge ids; the trivial path is the empty tuple at a
    diagonal pair (v, v).
    """

    def __init__(self, x: PrecubicalSet):
        if not x.is_acyclic():
            raise DirectedCycleError(f"{x.name}: path algebra needs an acyclic set")
        self.x = x
        self.paths: dict[tuple[str, str], list[tuple[str, ...]]] = {}
        out = x.out_edges()

        def walk(start: str, here: str, acc: list[str]):
            self.paths.setdefault((start, here), []).append(tuple(acc))
            for e in out[here]:
                acc.append(e)
                walk(start, x.edge_target(e), acc)
                acc.pop()

        for v in sorted(x.vertices):
            walk(v, v, [])
        for plist in self.paths.values():
            plist.sort(key=lambda p: (len(p), p))

    def between(self, s: str, e: str) -> list[tuple[str, ...]]:
        return list(self.paths.get((s, e), ()))

    def dim(self, s: str, e: str) -> int:
        return len(self.paths.get((s, e), ()))

    def total_dim(self) -> int:
        return sum(len(v) for v in self.paths.values())

    def path_target(self, s: str, path: tuple[str, ...]) -> str:
        here = s
        for e in path:
            if self.x.edge_source(e) != here:
                raise AlgebraError(f"path {path} is not composable at {here!r}")
            here = self.x.edge_target(e)
        return here

    def __repr__(self) -> str:
        return f"PathAlgebraIndex({self.x.name}, total {self.total_dim()})"


def path_algebra(x: PrecubicalSet) -> PathAlgebraIndex:
    return PathAlgebraIndex(x)


# -- presented bimodules -------------------------------------------------------

# A relation term is (coeff, left_path, generator_id, right_path); a relation
# is a list of terms homogeneous in the (source, target) grading.
RelationTerm = tuple[object, tuple[str, ...], str, tuple[str, ...]]


@dataclass(frozen=True)
class BimoduleGenerator:
    gid: str
    src: str
    dst: str


class PresentedBimodule:
    """A bimodule over two path algebras given by generators and relations."""

    def __init__(self, left: PathAlgebraIndex, right: PathAlgebraIndex,
                 generators: Sequence[BimoduleGenerator],
                 relations: Sequence[Sequence[RelationTerm]],
                 field=QQ, name: str = ""):
        self.left = left
        self.right = right
        self.field = field
        self.name = name
        self.generators = list(generators)
        self.by_id = {g.gid: g for g in self.generators}
        if len(self.by_id) != len(self.generators):
            raise AlgebraError("duplicate generator ids")
        self.relations = [list(r) for r in relations]
        for rel in self.relations:
            pairs = set()
            for coeff, p, gid, q in rel:
                g = self.by_id.get(gid)
                if g is None:
                    raise AlgebraError(f"relation uses unknown generator {gid!r}")
                s = self._path_source_left(p, g.src)
                e = self.right.path_target(g.dst, q)
                pairs.add((s, e))
            if len(pairs) > 1:
                raise AlgebraError("relation is not homogeneous in (src, dst)")

    def _path_source_left(self, p: tuple[str, ...], end: str) -> str:
        here = end
        for e in reversed(p):
            if self.left.x.edge_target(e) != here:
                raise AlgebraError(f"left path {p} does not end at {here!r}")
            here = self.left.x.edge_source(e)
        return here

    def with_algebras(self, left: PathAlgebraIndex, right: PathAlgebraIndex,
                      name: str | None = None) -> "PresentedBimodule":
        return PresentedBimodule(left, right, self.generators, self.relations,
                                 self.field, name if name is not None else self.name)

    def resolve(self) -> "ResolvedBimodule":
        return ResolvedBimodule(self)

    def __repr__(self) -> str:
        return (f"PresentedBimodule({self.name or '?'}: {len(self.generators)} gens, "
                f"{len(self.relations)} rels)")


class ResolvedBimodule:
    """Per-pair reduction of a presented bimodule.

    For a pair (s, e) the spanning triples are (left path, generator, right
    path); the relation translates are row-reduced and the quotient basis is
    the set of non-pivot triples.  Edge actions are matrices in this basis.
    """

    def __init__(self, pb: PresentedBimodule):
        self.pb = pb
        self.field = pb.field
        self._triples: dict[tuple[str, str], list[tuple]] = {}
        self._tindex: dict[tuple[str, str], dict[tuple, int]] = {}
        self._rref: dict[tuple[str, str], tuple] = {}
        self._free: dict[tuple[str, str], list[int]] = {}

    def triples(self, s: str, e: str) -> list[tuple]:
        key = (s, e)
        hit = self._triples.get(key)
        if hit is not None:
            return hit
        out = []
        for g in self.pb.generators:
            for p in self.pb.left.between(s, g.src):
                for q in self.pb.right.between(g.dst, e):
                    out.append((p, g.gid, q))
        out.sort(key=lambda t: (len(t[0]) + len(t[2]), t[1], t[0], t[2]))
        self._triples[key] = out
        self._tindex[key] = {t: i for i, t in enumerate(out)}
        return out

    def _relation_rows(self, s: str, e: str) -> list[list]:
        triples = self.triples(s, e)
        tindex = self._tindex[(s, e)]
        zero = self.field.zero
        rows = []
        for rel in self.pb.relations:
            if not rel:
                continue
            coeff0, p0, gid0, q0 = rel[0]
            g0 = self.pb.by_id[gid0]
            rs = self.pb._path_source_left(p0, g0.src)
            re = self.pb.right.path_target(g0.dst, q0)
            for p in self.pb.left.between(s, rs):
                for q in self.pb.right.between(re, e):
                    row = [zero] * len(triples)
                    for coeff, pi, gid, qi in rel:
                        if isinstance(coeff, int):
                            coeff = self.field.of(coeff)
                        t = (p + pi, gid, qi + q)
                        row[tindex[t]] = row[tindex[t]] + coeff
                    rows.append(row)
        return rows

    def _reduce(self, s: str, e: str):
        key = (s, e)
        if key in self._rref:
            return
        triples = self.triples(s, e)
        rows = self._relation_rows(s, e)
        rref_rows, pivots = _rref(rows, len(triples), self.field.zero)
        self._rref[key] = (tuple(tuple(r) for r in rref_rows), tuple(pivots))
        pivset = set(pivots)
        self._free[key] = [j for j in range(len(triples)) if j not in pivset]

    def dim(self, s: str, e: str) -> int:
        self._reduce(s, e)
        return len(self._free[(s, e)])

    def basis_triples(self, s: str, e: str) -> list[tuple]:
        self._reduce(s, e)
        triples = self.triples(s, e)
        return [triples[j] for j in self._free[(s, e)]]

    def coords_of_triple(self, s: str, e: str, triple: tuple) -> tuple:
        """Coordinates of a spanning triple in the quotient basis at (s, e)."""
        self._reduce(s, e)
        tindex = self._tindex[(s, e)]
        j = tindex.get(triple)
        if j is None:
            raise AlgebraError(f"triple {triple} does not span at ({s!r},{e!r})")
        zero = self.field.zero
        v = [zero] * len(tindex)
        v[j] = self.field.one
        rref_rows, pivots = self._rref[(s, e)]
        for row, p in zip(rref_rows, pivots):
            c = v[p]
            if c != zero:
                v = [a - c * b for a, b in zip(v, row)]
        return tuple(v[j] for j in self._free[(s, e)])

    def left_edge_action(self, a: str, s: str, e: str) -> Matrix:
        """Matrix of prepending the edge a : s' -> s, in quotient bases."""
        xa = self.pb.left.x
        if xa.edge_target(a) != s:
            raise AlgebraError(f"edge {a!r} does not end at {s!r}")
        s2 = xa.edge_source(a)
        cols = []
        for (p, gid, q) in self.basis_triples(s, e):
            cols.append(self.coords_of_triple(s2, e, ((a,) + p, gid, q)))
        return Matrix.from_columns(self.field, cols, length=self.dim(s2, e))

    def right_edge_action(self, a: str, s: str, e: str) -> Matrix:
        xb = self.pb.right.x
        if xb.edge_source(a) != e:
            raise AlgebraError(f"edge {a!r} does not start at {e!r}")
        e2 = xb.edge_target(a)
        cols = []
        for (p, gid, q) in self.basis_triples(s, e):
            cols.append(self.coords_of_triple(s, e2, (p, gid, q + (a,))))
        return Matrix.from_columns(self.field, cols, length=self.dim(s, e2))

    def dims_by_pair(self) -> dict[tuple[str, str], int]:
        out = {}
        for s in self.pb.left.x.vertices:
            for e in self.pb.right.x.vertices:
                d = self.dim(s, e)
                if d:
                    out[(s, e)] = d
        return out

    def total_dim(self) -> int:
        return sum(self.dims_by_pair().values())


def re_present(res: ResolvedBimodule, name: str = "") -> PresentedBimodule:
    """A fresh presentation of a resolved bimodule.

    One generator per quotient-basis element per pair; relations say that
    each edge translate of a generator equals its action image.
    """
    pb = res.pb
    gens: list[BimoduleGenerator] = []
    coords_gens: dict[tuple[str, str], list[str]] = {}
    for s in pb.left.x.vertices:
        for e in pb.right.x.vertices:
            ids = []
            for k in range(res.dim(s, e)):
                gid = f"g[{s}->{e}]#{k}"
                gens.append(BimoduleGenerator(gid, s, e))
                ids.append(gid)
            coords_gens[(s, e)] = ids
    relations: list[list[RelationTerm]] = []
    one = pb.field.one
    for a in pb.left.x.edges:
        s2, s = pb.left.x.edge_source(a), pb.left.x.edge_target(a)
        for e in pb.right.x.vertices:
            if not res.dim(s, e):
                continue
            act = res.left_edge_action(a, s, e)
            for j, gid in enumerate(coords_gens[(s, e)]):
                rel: list[RelationTerm] = [(one, (a,), gid, ())]
                for k, gid2 in enumerate(coords_gens[(s2, e)]):
                    c = act.entry(k, j)
                    if c != pb.field.zero:
                        rel.append((-c, (), gid2, ()))
                relations.append(rel)
    for b in pb.right.x.edges:
        e, e2 = pb.right.x.edge_source(b), pb.right.x.edge_target(b)
        for s in pb.left.x.vertices:
            if not res.dim(s, e):
                continue
            act = res.right_edge_action(b, s, e)
            for j, gid in enumerate(coords_gens[(s, e)]):
                rel = [(one, (), gid, (b,))]
                for k, gid2 in enumerate(coords_gens[(s, e2)]):
                    c = act.entry(k, j)
                    if c != pb.field.zero:
                        rel.append((-c, (), gid2, ()))
                relations.append(rel)
    return PresentedBimodule(pb.left, pb.right, gens, relations, pb.field, name)


# -- standard presentations ------------------------------------------------------


def unit_bimodule(alg: PathAlgebraIndex, field=QQ) -> PresentedBimodule:
    """The algebra as a bimodule over itself: one generator per vertex,
    with edge translates balanced across the generators."""
    x = alg.x
    gens = [BimoduleGenerator(f"u[{v}]", v, v) for v in x.vertices]
    one = field.one
    relations = []
    for a in x.edges:
        v, w = x.edge_source(a), x.edge_target(a)
        relations.append([(one, (a,), f"u[{w}]", ()), (-one, (), f"u[{v}]", (a,))])
    return PresentedBimodule(alg, alg, gens, relations, field, f"U({x.name})")


def zero_bimodule(alg_left: PathAlgebraIndex, alg_right: PathAlgebraIndex,
                  field=QQ) -> PresentedBimodule:
    return PresentedBimodule(alg_left, alg_right, [], [], field, "0")


def free_bimodule(alg_left: PathAlgebraIndex, alg_right: PathAlgebraIndex,
                  endpoints: Sequence[tuple[str, str]], field=QQ) -> PresentedBimodule:
    gens = [BimoduleGenerator(f"f#{i}[{a}->{b}]", a, b)
            for i, (a, b) in enumerate(endpoints)]
    return PresentedBimodule(alg_left, alg_right, gens, [], field, "free")


def direct_sum(m: PresentedBimodule, n: PresentedBimodule) -> PresentedBimodule:
    if m.left is not n.left or m.right is not n.right:
        raise AlgebraError("direct sum needs matching algebras")
    gens = ([BimoduleGenerator("L." + g.gid, g.src, g.dst) for g in m.generators]
            + [BimoduleGenerator("R." + g.gid, g.src, g.dst) for g in n.generators])
    rels = ([[(c, p, "L." + gid, q) for c, p, gid, q in rel] for rel in m.relations]
            + [[(c, p, "R." + gid, q) for c, p, gid, q in rel] for rel in n.relations])
    return PresentedBimodule(m.left, m.right, gens, rels, m.field,
                             f"({m.name})+({n.name})")


def present_chain_module(x: PrecubicalSet, degree: int, field=QQ,
                         alg: PathAlgebraIndex | None = None) -> PresentedBimodule:
    """The degree-i chain bimodule of X, presented over its path algebra.

    In degree >= 1 it is free on the chains whose first and last cube have
    dimension >= 2 (every chain splits uniquely as edges . core . edges).
    In degree 0 it is the unit bimodule.
    """
    alg = alg or path_algebra(x)
    if degree == 0:
        pb = unit_bimodule(alg, field)
        return PresentedBimodule(alg, alg, pb.generators, pb.relations, field,
                                 f"C0({x.name})")
    gens = []
    for (i, s, e), chains in sorted(chain_catalog(x).items()):
        if i != degree:
            continue
        for c in chains:
            if c.cubes and c.dims[0] >= 2 and c.dims[-1] >= 2:
                gens.append(BimoduleGenerator("|".join(c.cubes), s, e))
    return PresentedBimodule(alg, alg, gens, [], field, f"C{degree}({x.name})")


def present_homology(table, degree: int,
                     alg: PathAlgebraIndex | None = None) -> PresentedBimodule:
    """Present the degree-i homology bimodule of a HomologyTable."""
    x = table.x
    alg = alg or path_algebra(x)
    field = table.field
    gens: list[BimoduleGenerator] = []
    names: dict[tuple[str, str], list[str]] = {}
    for s in x.vertices:
        for e in x.vertices:
            ids = []
            for k in range(table.dim(degree, s, e)):
                gid = f"h{degree}[{s}->{e}]#{k}"
                gens.append(BimoduleGenerator(gid, s, e))
                ids.append(gid)
            names[(s, e)] = ids
    one = field.one
    relations: list[list[RelationTerm]] = []
    for a in x.edges:
        s2, s = x.edge_source(a), x.edge_target(a)
        for e in x.vertices:
            if not names[(s, e)]:
                continue
            act = table.left_action(a, degree, s, e)
            for j, gid in enumerate(names[(s, e)]):
                rel: list[RelationTerm] = [(one, (a,), gid, ())]
                for k, gid2 in enumerate(names[(s2, e)]):
                    c = act.entry(k, j)
                    if c != field.zero:
                        rel.append((-c, (), gid2, ()))
                relations.append(rel)
    for b in x.edges:
        e, e2 = x.edge_source(b), x.edge_target(b)
        for s in x.vertices:
            if not names[(s, e)]:
                continue
            act = table.right_action(b, degree, s, e)
            for j, gid in enumerate(names[(s, e)]):
                rel = [(one, (), gid, (b,))]
                for k, gid2 in enumerate(names[(s, e2)]):
                    c = act.entry(k, j)
                    if c != field.zero:
                        rel.append((-c, (), gid2, ()))
                relations.append(rel)
    return PresentedBimodule(alg, alg, gens, relations, field,
                             f"H{degree}({x.name})")


def extend_presented(pb: PresentedBimodule, inc: PcMorphism,
                     ambient_alg: PathAlgebraIndex | None = None) -> PresentedBimodule:
    """Extension of scalars along an inclusion, in presentation form.

    Generators and relations survive unchanged (cells keep their ids along an
    inclusion); only the ambient path algebra grows, so the per-pair
    reduction now ranges over ambient paths.
    """
    x = inc.target
    for cid in inc.source.all_cells():
        if inc(cid) != cid:
            raise AlgebraError("extension expects an identity-on-cells inclusion")
    alg = ambient_alg or path_algebra(x)
    return pb.with_algebras(alg, alg, name=f"ext({pb.name})")


# -- the subspace form of extension ------------------------------------------------


class SubcomplexExtension(GradedComplex):
    """The span, inside C(X), of chains factoring through a face-closed Y.

    A basis chain is kept when its cubes split as edge-only prefix, middle
    entirely in Y, edge-only suffix (for degree 0: when the underlying path
    touches a vertex of Y).  Kept chains are closed under the boundary, which
    is asserted at construction.
    """

    def __init__(self, cx: PairGradedComplex, y_cells: frozenset[str]):
        self.cx = cx
        self.y_cells = y_cells
        x = cx.x
        keep: dict[tuple[int, object], list[int]] = {}
        for (i, s, e), chains in sorted(cx.bases.items()):
            kept = [j for j, c in enumerate(chains) if self._decomposable(x, c)]
            keep[(i, (s, e))] = kept
        dims = {k: len(v) for k, v in keep.items()}
        diffs = {}
        for (i, pair), kept in keep.items():
            if i == 0 or not kept:
                continue
            big = cx.diff(i, pair)
            prev = keep.get((i - 1, pair), [])
            prev_set = {r: idx for idx, r in enumerate(prev)}
            rows = []
            for r in range(big.rows):
                if r not in prev_set and any(big.entry(r, j) != cx.field.zero for j in kept):
                    raise ChainError(
                        "boundary of a decomposable chain left the extension span")
            for r in prev:
                rows.append([big.entry(r, j) for j in kept])
            diffs[(i, pair)] = Matrix(cx.field, len(prev), len(kept), rows)
        super().__init__(cx.field, cx.top_degree, dims, diffs)
        self.kept = keep
        self.check_boundary_square()

    def _decomposable(self, x: PrecubicalSet, c: CubeChain) -> bool:
        if not c.cubes:
            return c.src in self.y_cells
        if all(d == 1 for d in c.dims):
            if any(cu in self.y_cells for cu in c.cubes):
                return True
            verts = [c.src] + [x.edge_target(cu) for cu in c.cubes]
            return any(v in self.y_cells for v in verts)
        lo = next(k for k, d in enumerate(c.dims) if d >= 2)
        hi = max(k for k, d in enumerate(c.dims) if d >= 2)
        return all(cu in self.y_cells for cu in c.cubes[lo:hi + 1])

    def inclusion_matrix(self, i: int, pair) -> Matrix:
        """Columns are the indicator vectors of the kept chains in C_i(X)."""
        kept = self.kept.get((i, pair), [])
        n = self.cx.dim(i, pair)
        cols = []
        for j in kept:
            v = [self.cx.field.zero] * n
            v[j] = self.cx.field.one
            cols.append(v)
        return Matrix.from_columns(self.cx.field, cols, length=n)

    def span(self, i: int, pair) -> Subspace:
        return Subspace(self.cx.field, self.cx.dim(i, pair),
                        self.inclusion_matrix(i, pair).columns())


def extend_subcomplex(cx: PairGradedComplex, y_cells: Iterable[str]) -> SubcomplexExtension:
    return SubcomplexExtension(cx, frozenset(y_cells))


# -- horizontal composition ----------------------------------------------------------


def hcompose(m: PresentedBimodule, n: PresentedBimodule) -> PresentedBimodule:
    """Tensor over the shared middle algebra.

    Generators are (g, r, h) with r a middle path from dst(g) to src(h); the
    middle action is balanced by construction of the triple.  Relations of
    both factors are translated into the composite generators.
    """
    if m.right is not n.left:
        raise AlgebraError("middle algebras do not match")
    mid = m.right
    gens = []
    gid_of: dict[tuple[str, tuple, str], str] = {}
    for g in m.generators:
        for h in n.generators:
            for r in mid.between(g.dst, h.src):
                gid = f"({g.gid}|{'.'.join(r) or '1'}|{h.gid})"
                gid_of[(g.gid, r, h.gid)] = gid
                gens.append(BimoduleGenerator(gid, g.src, h.dst))
    relations: list[list[RelationTerm]] = []
    for rel in m.relations:
        coeff0, p0, gid0, q0 = rel[0]
        g0 = m.by_id[gid0]
        re_mid = mid.path_target(g0.dst, q0)
        for h in n.generators:
            for r in mid.between(re_mid, h.src):
                new_rel: list[RelationTerm] = []
                for coeff, p, gid, q in rel:
                    new_rel.append((coeff, p, gid_of[(gid, q + r, h.gid)], ()))
                relations.append(new_rel)
    for rel in n.relations:
        coeff0, p0, gid0, q0 = rel[0]
        h0 = n.by_id[gid0]
        here = h0.src
        for e in reversed(p0):
            here = mid.x.edge_source(e)
        rs_mid = here
        for g in m.generators:
            for r in mid.between(g.dst, rs_mid):
                new_rel = []
                for coeff, p, gid, q in rel:
                    new_rel.append((coeff, (), gid_of[(g.gid, r + p, gid)], q))
                relations.append(new_rel)
    return PresentedBimodule(m.left, n.right, gens, relations, m.field,
                             f"({m.name}).({n.name})")


# -- restriction -----------------------------------------------------------------------


class RestrictedComplex:
    """A pair-graded complex re-indexed along a morphism of precubical sets."""

    def __init__(self, cx: GradedComplex, f: PcMorphism):
        self.cx = cx
        self.f = f
        self.field = cx.field
        self.top_degree = cx.top_degree

    def pairs(self):
        vs = self.f.source.vertices
        return sorted((s, e) for s in vs for e in vs)

    def dim(self, i: int, pair) -> int:
        s, e = pair
        return self.cx.dim(i, (self.f(s), self.f(e)))

    def diff(self, i: int, pair) -> Matrix:
        s, e = pair
        return self.cx.diff(i, (self.f(s), self.f(e)))


class RestrictedTable:
    """A homology table re-indexed along a morphism; actions precomposed."""

    def __init__(self, table, f: PcMorphism):
        self.table = table
        self.f = f
        self.field = table.field

    def dim(self, i: int, s: str, e: str) -> int:
        return self.table.dim(i, self.f(s), self.f(e))

    def left_action(self, a: str, i: int, s: str, e: str) -> Matrix:
        return self.table.left_action(self.f(a), i, self.f(s), self.f(e))

    def right_action(self, a: str, i: int, s: str, e: str) -> Matrix:
        return self.table.right_action(self.f(a), i, self.f(s), self.f(e))


def restrict(obj, f: PcMorphism):
    """Restriction of scalars along a morphism: re-grade by source pairs."""
    from .homology import HomologyTable
    if isinstance(obj, GradedComplex):
        return RestrictedComplex(obj, f)
    if isinstance(obj, HomologyTable) or isinstance(obj, RestrictedTable):
        return RestrictedTable(obj, f)
    raise AlgebraError(f"cannot restrict object of type {type(obj).__name__}")


# -- the comparison morphism for tensor products ------------------------------------


class TensorPairMorphism:
    """The algebra map sending a path in X(x)Y to its pure tensor of projections.

    Every generator edge (u, v) has exactly one non-vertex component; its
    image is that component on one side and a trivial path on the other.
    Images multiply by componentwise concatenation.
    """

    def __init__(self, tx: TensorSet):
        self.tx = tx

    def on_edge(self, edge: str) -> tuple[tuple[str, ...], tuple[str, ...]]:
        u, v = self.tx.components(edge)
        if self.tx.left.dim_of(u) == 1 and self.tx.right.dim_of(v) == 0:
            return (u,), ()
        if self.tx.left.dim_of(u) == 0 and self.tx.right.dim_of(v) == 1:
            return (), (v,)
        raise AlgebraError(f"{edge!r} is not an edge of the tensor product")

    def on_path(self, path: Sequence[str]) -> tuple[tuple[str, ...], tuple[str, ...]]:
        px: list[str] = []
        py: list[str] = []
        for e in path:
            ex, ey = self.on_edge(e)
            px.extend(ex)
            py.extend(ey)
        return tuple(px), tuple(py)


def h_morphism(tx: TensorSet) -> TensorPairMorphism:
    return TensorPairMorphism(tx)


# -- smash: bimodule as a one-sided module ---------------------------------------------


class SmashedModule:
    """A homology table re-read as a left module over (left x right-opposite).

    Underlying per-pair spaces are untouched; the action of a pure tensor
    (a, b-op) is left-act by a composed with right-act by b.
    """

    def __init__(self, table):
        self.table = table
        self.field = table.field

    def dim(self, i: int, s: str, e: str) -> int:
        return self.table.dim(i, s, e)

    def total_dim(self, i: int) -> int:
        x = self.table.x
        return sum(self.table.dim(i, s, e) for s in x.vertices for e in x.vertices)

    def act(self, a: str | None, b: str | None, i: int, s: str, e: str) -> Matrix:
        """Action of a (x) b-op on H_i(s, e); either factor may be trivial."""
        m = Matrix.identity(self.field, self.table.dim(i, s, e))
        here_s, here_e = s, e
        if b is not None:
            m = self.table.right_action(b, i, here_s, here_e) @ m
            here_e = self.table.x.edge_target(b)
        if a is not None:
            m = self.table.left_action(a, i, here_s, here_e) @ m
        return m


class SmashedResolved:
    """Total-dimension view of a resolved bimodule as a one-sided module."""

    def __init__(self, res: ResolvedBimodule):
        self.res = res

    def total_dim(self) -> int:
        return self.res.total_dim()

    def dims_by_pair(self) -> dict[tuple[str, str], int]:
        return self.res.dims_by_pair()


def smash(obj):
    from .homology import HomologyTable
    if isinstance(obj, HomologyTable):
        return SmashedModule(obj)
    if isinstance(obj, ResolvedBimodule):
        return SmashedResolved(obj)
    if isinstance(obj, PresentedBimodule):
        return SmashedResolved(obj.resolve())
    raise AlgebraError(f"cannot smash object of type {type(obj).__name__}")
