"""Representations of bound quivers over F_p and the module-category oracle.

An :class:`Algebra` holds the quiver, its relations and the trusted ground set
of indecomposable representations.  Everything else (Hom spaces, Ext groups,
Krull-Schmidt decompositions, submodule lattices, approximations and
injective copresentations) is computed from those matrices.

Paths are tuples of arrow indices in traversal order, so the path ``(a, b)``
acts on a representation as ``M_b @ M_a``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import linalg as la
from .errors import CompletenessError, InputError, ResourceError, TheoremViolation

DEFAULT_DIM_CAP = 8
DEFAULT_HOM_SCAN_CAP = 5**7


@dataclass(eq=False)
class Representation:
    """A representation: one vector space dimension per vertex, one matrix per arrow."""

    dims: tuple[int, ...]
    mats: tuple[np.ndarray, ...]
    p: int
    name: str = ""

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def __repr__(self) -> str:
        label = self.name or "rep"
        return f"<{label} dims={list(self.dims)}>"


@dataclass(eq=False)
class Morphism:
    """A family of linear maps ``maps[v]: source_v -> target_v``."""

    source: Representation
    target: Representation
    maps: tuple[np.ndarray, ...]

    @property
    def p(self) -> int:
        return self.source.p

    def vec(self) -> np.ndarray:
        if not self.maps:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([m.reshape(-1) for m in self.maps])

    def is_zero(self) -> bool:
        return not any(m.any() for m in self.maps)

    def is_mono(self) -> bool:
        return all(la.rank(m, self.p) == m.shape[1] for m in self.maps)

    def is_epi(self) -> bool:
        return all(la.rank(m, self.p) == m.shape[0] for m in self.maps)

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and all(
            la.is_invertible(m, self.p) for m in self.maps
        )

    def __matmul__(self, other: "Morphism") -> "Morphism":
        # self after other
        p = self.p
        return Morphism(
            other.source,
            self.target,
            tuple((a @ b) % p for a, b in zip(self.maps, other.maps)),
        )

    def __add__(self, other: "Morphism") -> "Morphism":
        p = self.p
        return Morphism(self.source, self.target, tuple((a + b) % p for a, b in zip(self.maps, other.maps)))

    def scale(self, c: int) -> "Morphism":
        p = self.p
        return Morphism(self.source, self.target, tuple((c * a) % p for a in self.maps))


def zero_morphism(source: Representation, target: Representation) -> Morphism:
    return Morphism(
        source,
        target,
        tuple(la.zeros(target.dims[v], source.dims[v]) for v in range(len(source.dims))),
    )


def identity_morphism(rep: Representation) -> Morphism:
    return Morphism(rep, rep, tuple(la.identity(d) for d in rep.dims))


def morphism_from_vec(source: Representation, target: Representation, vec: np.ndarray) -> Morphism:
    maps = []
    pos = 0
    for s, t in zip(source.dims, target.dims):
        maps.append(np.array(vec[pos : pos + s * t], dtype=np.int64).reshape(t, s) % source.p)
        pos += s * t
    return Morphism(source, target, tuple(maps))


def linear_combination(basis: Sequence[Morphism], coeffs: Iterable[int]) -> Morphism:
    it = iter(coeffs)
    out = basis[0].scale(next(it))
    for b, c in zip(basis[1:], it):
        out = out + b.scale(c)
    return out


def direct_sum(reps: Sequence[Representation], nverts: int, narrows: int, p: int, name: str = "") -> Representation:
    """Block-diagonal sum.  ``nverts``/``narrows`` are needed for the empty sum."""
    dims = tuple(sum(r.dims[v] for r in reps) for v in range(nverts))
    mats = []
    for a in range(narrows):
        blocks = [r.mats[a] for r in reps]
        rows = sum(b.shape[0] for b in blocks)
        cols = sum(b.shape[1] for b in blocks)
        m = la.zeros(rows, cols)
        i = j = 0
        for b in blocks:
            m[i : i + b.shape[0], j : j + b.shape[1]] = b
            i += b.shape[0]
            j += b.shape[1]
        mats.append(m)
    return Representation(dims, tuple(mats), p, name)


def offsets(reps: Sequence[Representation], v: int) -> list[int]:
    out = [0]
    for r in reps:
        out.append(out[-1] + r.dims[v])
    return out


def column_morphism(source: Representation, target: Representation, parts: Sequence[Morphism]) -> Morphism:
    """``source -> target = ⊕ parts[i].target`` stacking the components."""
    maps = []
    for v in range(len(source.dims)):
        blocks = [f.maps[v] for f in parts]
        maps.append(np.concatenate(blocks, axis=0) if blocks else la.zeros(0, source.dims[v]))
    return Morphism(source, target, tuple(maps))


def row_morphism(source: Representation, target: Representation, parts: Sequence[Morphism]) -> Morphism:
    """``source = ⊕ parts[i].source -> target`` placing the components side by side."""
    maps = []
    for v in range(len(target.dims)):
        blocks = [f.maps[v] for f in parts]
        maps.append(np.concatenate(blocks, axis=1) if blocks else la.zeros(target.dims[v], 0))
    return Morphism(source, target, tuple(maps))


@dataclass(eq=False)
class SubmoduleWitness:
    """An action-invariant subspace of ``parent``, stored as canonical RREF row bases."""

    parent: Representation
    basis: tuple[np.ndarray, ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(b.shape[0] for b in self.basis)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def key(self) -> tuple:
        return tuple((b.shape, b.tobytes()) for b in self.basis)

    def is_whole(self) -> bool:
        return self.dims == self.parent.dims

    def contains(self, other: "SubmoduleWitness") -> bool:
        p = self.parent.p
        for mine, theirs in zip(self.basis, other.basis):
            for row in theirs:
                if not la.in_span(list(mine), row, p):
                    return False
        return True


def _pivots(basis: np.ndarray) -> list[int]:
    piv = []
    for row in basis:
        nz = np.nonzero(row)[0]
        piv.append(int(nz[0]))
    return piv


def span_closure(rep: Representation, vectors: Sequence[Sequence[np.ndarray]], arrows) -> SubmoduleWitness:
    """Smallest submodule containing the given vectors (``vectors[v]`` lives at vertex ``v``)."""
    p = rep.p
    spaces = [
        la.row_basis(np.array(vs, dtype=np.int64).reshape(len(vs), rep.dims[v]), p)
        if len(vs)
        else la.zeros(0, rep.dims[v])
        for v, vs in enumerate(vectors)
    ]
    changed = True
    while changed:
        changed = False
        for a, (s, t) in enumerate(arrows):
            if spaces[s].shape[0] == 0:
                continue
            images = (rep.mats[a] @ spaces[s].T % p).T
            for img in images:
                if img.any() and not la.in_span(list(spaces[t]), img, p):
                    spaces[t] = la.row_basis(np.vstack([spaces[t], img]), p)
                    changed = True
    return SubmoduleWitness(rep, tuple(spaces))


def submodule_sum(a: SubmoduleWitness, b: SubmoduleWitness) -> SubmoduleWitness:
    p = a.parent.p
    basis = tuple(
        la.row_basis(np.vstack([x, y]), p) if (x.shape[0] + y.shape[0]) else x
        for x, y in zip(a.basis, b.basis)
    )
    return SubmoduleWitness(a.parent, basis)


def sub_representation(w: SubmoduleWitness, arrows) -> tuple[Representation, Morphism]:
    """The submodule as a representation together with its inclusion."""
    rep = w.parent
    p = rep.p
    incl = [b.T.copy() for b in w.basis]
    mats = []
    for a, (s, t) in enumerate(arrows):
        image = rep.mats[a] @ incl[s] % p
        piv = _pivots(w.basis[t])
        mats.append(image[piv, :] if piv else la.zeros(0, incl[s].shape[1]))
    sub = Representation(w.dims, tuple(mats), p)
    return sub, Morphism(sub, rep, tuple(incl))


def quotient_representation(w: SubmoduleWitness, arrows) -> tuple[Representation, Morphism]:
    """``parent / w`` together with the canonical projection."""
    rep = w.parent
    p = rep.p
    projs, sections = [], []
    for v, b in enumerate(w.basis):
        d = rep.dims[v]
        piv = _pivots(b)
        nonpiv = [j for j in range(d) if j not in piv]
        sel = la.identity(d)[piv, :] if piv else la.zeros(0, d)
        reducer = (la.identity(d) - b.T @ sel) % p
        projs.append(reducer[nonpiv, :])
        sections.append(la.identity(d)[:, nonpiv])
    mats = []
    for a, (s, t) in enumerate(arrows):
        mats.append(projs[t] @ rep.mats[a] @ sections[s] % p)
    dims = tuple(pr.shape[0] for pr in projs)
    quo = Representation(dims, tuple(mats), p)
    return quo, Morphism(rep, quo, tuple(projs))


@dataclass
class Approximation:
    """A map between ``add(ground set)`` and a fixed representation.

    ``summands`` lists the ground-set indices whose direct sum is the
    non-fixed end of ``map``.
    """

    summands: list[int]
    map: Morphism


@dataclass
class Copresentation:
    """``0 -> M --incl--> I0 --d--> I1`` with minimal injective terms."""

    module: Representation
    deg0: list[int]
    deg1: list[int]
    incl: Morphism
    d: Morphism


@dataclass(eq=False)
class Algebra:
    """A split basic algebra ``F_p Q / I`` together with its trusted ground set."""

    vertices: list[str]
    arrows: list[tuple[str, int, int]]
    relations: list[list[tuple[int, tuple[int, ...]]]]
    p: int
    ground: list[Representation] = field(default_factory=list)
    preset: Optional[str] = None
    dim_cap: int = DEFAULT_DIM_CAP
    hom_scan_cap: int = DEFAULT_HOM_SCAN_CAP

    def __post_init__(self):
        self._hom_cache: dict[tuple[int, int], list[Morphism]] = {}
        self._ext_cache: dict[tuple[int, int], int] = {}
        self._sub_cache: dict[int, list[SubmoduleWitness]] = {}
        self._paths_cache: Optional[list[tuple[int, int, tuple[int, ...]]]] = None
        self.projectives: list[Representation] = []
        self.injectives: list[Representation] = []
        self.projective_index: list[int] = []
        self.injective_index: list[int] = []

    # ------------------------------------------------------------------ basics
    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def arrow_ends(self) -> list[tuple[int, int]]:
        return [(s, t) for _, s, t in self.arrows]

    def name_of(self, i: int) -> str:
        return self.ground[i].name

    def index_of(self, name: str) -> int:
        for i, r in enumerate(self.ground):
            if r.name == name:
                return i
        raise InputError(f"no ground-set module named {name!r}")

    def zero(self) -> Representation:
        return Representation(
            tuple(0 for _ in self.vertices),
            tuple(la.zeros(0, 0) for _ in self.arrows),
            self.p,
            "0",
        )

    def rep(self, dims: Sequence[int], mats: Sequence, name: str = "") -> Representation:
        dims = tuple(int(d) for d in dims)
        if len(dims) != self.n:
            raise InputError(f"{name or 'representation'}: expected {self.n} dimensions, got {len(dims)}")
        out = []
        for a, (aname, s, t) in enumerate(self.arrows):
            m = np.array(mats[a], dtype=np.int64) if len(mats) > a else np.zeros(0, dtype=np.int64)
            if m.size != dims[t] * dims[s]:
                raise InputError(
                    f"{name or 'representation'}: matrix for arrow {aname} has {m.size} entries, "
                    f"expected {dims[t]}x{dims[s]}"
                )
            out.append(m.reshape(dims[t], dims[s]) % self.p)
        return Representation(dims, tuple(out), self.p, name)

    def direct_sum(self, reps: Sequence[Representation], name: str = "") -> Representation:
        return direct_sum(reps, self.n, len(self.arrows), self.p, name)

    def sum_of(self, indices: Sequence[int]) -> Representation:
        label = "+".join(self.ground[i].name for i in indices) if indices else "0"
        return self.direct_sum([self.ground[i] for i in indices], label)

    # ------------------------------------------------------------------- paths
    def paths(self) -> list[tuple[int, int, tuple[int, ...]]]:
        """All paths ``(source, target, arrows)`` including trivial ones; quiver must be acyclic."""
        if self._paths_cache is not None:
            return self._paths_cache
        out = [(v, v, ()) for v in range(self.n)]
        frontier = list(out)
        for _ in range(self.n + 1):
            nxt = []
            for s, t, path in frontier:
                for a, (_, as_, at) in enumerate(self.arrows):
                    if as_ == t:
                        nxt.append((s, at, path + (a,)))
            if not nxt:
                break
            out.extend(nxt)
            frontier = nxt
        else:
            raise InputError("quiver has an oriented cycle; only acyclic quivers are supported")
        self._paths_cache = out
        return out

    def path_matrix(self, rep: Representation, source: int, path: tuple[int, ...]) -> np.ndarray:
        m = la.identity(rep.dims[source])
        for a in path:
            m = rep.mats[a] @ m % self.p
        return m

    def relation_ends(self, rel) -> tuple[int, int]:
        ends = set()
        for _, path in rel:
            ends.add((self.arrows[path[0]][1], self.arrows[path[-1]][2]))
        if len(ends) != 1:
            raise InputError("relation mixes non-parallel paths")
        return ends.pop()

    def check_relations(self, rep: Representation) -> None:
        for k, rel in enumerate(self.relations):
            s, t = self.relation_ends(rel)
            total = la.zeros(rep.dims[t], rep.dims[s])
            for coeff, path in rel:
                total = (total + coeff * self.path_matrix(rep, s, path)) % self.p
            if total.any():
                raise InputError(f"relation {k} is violated on representation {rep.name or rep!r}")

    def _ideal_quotient(self, src: int, tgt: int):
        """Paths ``src -> tgt`` and the reduction onto ``kQ/I`` coordinates."""
        plist = [path for s, t, path in self.paths() if s == src and t == tgt]
        index = {path: i for i, path in enumerate(plist)}
        rows = []
        for rel in self.relations:
            x, y = self.relation_ends(rel)
            pre = [path for s, t, path in self.paths() if s == src and t == x]
            post = [path for s, t, path in self.paths() if s == y and t == tgt]
            for p1 in pre:
                for q in post:
                    row = np.zeros(len(plist), dtype=np.int64)
                    for coeff, path in rel:
                        row[index[p1 + path + q]] += coeff
                    rows.append(row % self.p)
        d = len(plist)
        if rows:
            basis = la.row_basis(np.vstack(rows), self.p)
        else:
            basis = la.zeros(0, d)
        piv = _pivots(basis)
        nonpiv = [j for j in range(d) if j not in piv]
        sel = la.identity(d)[piv, :] if piv else la.zeros(0, d)
        reducer = ((la.identity(d) - basis.T @ sel) % self.p)[nonpiv, :]
        return plist, index, reducer, [plist[j] for j in nonpiv]

    def build_projectives_injectives(self) -> None:
        n = self.n
        proj, inj = [], []
        quot = {(s, t): self._ideal_quotient(s, t) for s in range(n) for t in range(n)}
        for v in range(n):
            dims = tuple(len(quot[(v, w)][3]) for w in range(n))
            mats = []
            for a, (_, s, t) in enumerate(self.arrows):
                _, _, _, basis_s = quot[(v, s)]
                _, index_t, red_t, _ = quot[(v, t)]
                m = la.zeros(dims[t], dims[s])
                for j, path in enumerate(basis_s):
                    e = np.zeros(len(index_t), dtype=np.int64)
                    e[index_t[path + (a,)]] = 1
                    m[:, j] = red_t @ e % self.p
                mats.append(m)
            proj.append(Representation(dims, tuple(mats), self.p, f"P({self.vertices[v]})"))
            dims = tuple(len(quot[(w, v)][3]) for w in range(n))
            mats = []
            for a, (_, s, t) in enumerate(self.arrows):
                # prepend a: paths t->v  to  paths s->v, then dualise
                _, _, _, basis_t = quot[(t, v)]
                _, index_s, red_s, _ = quot[(s, v)]
                m = la.zeros(dims[s], dims[t])
                for j, path in enumerate(basis_t):
                    e = np.zeros(len(index_s), dtype=np.int64)
                    e[index_s[(a,) + path]] = 1
                    m[:, j] = red_s @ e % self.p
                mats.append(m.T.copy())
            inj.append(Representation(dims, tuple(mats), self.p, f"I({self.vertices[v]})"))
        self.projectives, self.injectives = proj, inj

    # --------------------------------------------------------------------- hom
    def hom_basis(self, M: Representation, N: Representation) -> list[Morphism]:
        """Basis of ``Hom(M, N)``: families with ``f_t M_a = N_a f_s`` for each arrow."""
        p = self.p
        sizes = [N.dims[v] * M.dims[v] for v in range(self.n)]
        starts = np.cumsum([0] + sizes)
        total = int(starts[-1])
        if total == 0:
            return []
        blocks = []
        for a, (_, s, t) in enumerate(self.arrows):
            rows = N.dims[t] * M.dims[s]
            if rows == 0:
                continue
            c = np.zeros((rows, total), dtype=np.int64)
            c[:, starts[t] : starts[t + 1]] += np.kron(la.identity(N.dims[t]), M.mats[a].T)
            c[:, starts[s] : starts[s + 1]] -= np.kron(N.mats[a], la.identity(M.dims[s]))
            blocks.append(c % p)
        system = np.vstack(blocks) if blocks else la.zeros(0, total)
        return [morphism_from_vec(M, N, v) for v in la.kernel_basis(system, p)]

    def hom_ground(self, i: int, j: int) -> list[Morphism]:
        key = (i, j)
        if key not in self._hom_cache:
            self._hom_cache[key] = self.hom_basis(self.ground[i], self.ground[j])
        return self._hom_cache[key]

    def hom_dim(self, M: Representation, N: Representation) -> int:
        return len(self.hom_basis(M, N))

    def is_brick(self, M: Representation) -> bool:
        return self.hom_dim(M, M) == 1

    # ----------------------------------------------------------- constructions
    def kernel(self, f: Morphism) -> SubmoduleWitness:
        vecs = [la.kernel_basis(m, self.p) if m.shape[1] else [] for m in f.maps]
        basis = tuple(
            la.row_basis(np.array(v, dtype=np.int64).reshape(len(v), f.source.dims[i]), self.p)
            for i, v in enumerate(vecs)
        )
        return SubmoduleWitness(f.source, basis)

    def image(self, f: Morphism) -> SubmoduleWitness:
        basis = tuple(
            la.row_basis(m.T, self.p) if m.size else la.zeros(0, f.target.dims[v])
            for v, m in enumerate(f.maps)
        )
        return SubmoduleWitness(f.target, basis)

    def sub(self, w: SubmoduleWitness) -> tuple[Representation, Morphism]:
        return sub_representation(w, self.arrow_ends)

    def quotient(self, w: SubmoduleWitness) -> tuple[Representation, Morphism]:
        return quotient_representation(w, self.arrow_ends)

    def zero_submodule(self, M: Representation) -> SubmoduleWitness:
        return SubmoduleWitness(M, tuple(la.zeros(0, d) for d in M.dims))

    def whole(self, M: Representation) -> SubmoduleWitness:
        return SubmoduleWitness(M, tuple(la.identity(d) for d in M.dims))

    # --------------------------------------------------------------------- ext
    def ext1_dim(self, M: Representation, N: Representation) -> int:
        """``dim Ext^1(M, N)`` from the projective cover ``P0 -> M`` with kernel ``K``.

        ``Ext^1(M, N) = coker(Hom(P0, N) -> Hom(K, N))``.
        """
        if M.is_zero() or N.is_zero():
            return 0
        cover = self.min_right_approx(self.projective_index, M)
        if not cover.map.is_epi():
            raise TheoremViolation("projective-cover", f"projective cover of {M!r} is not surjective")
        kw = self.kernel(cover.map)
        K, incl = self.sub(kw)
        hk = self.hom_basis(K, N)
        if not hk:
            return 0
        restricted = [(h @ incl).vec() for h in self.hom_basis(cover.map.source, N)]
        return len(hk) - la.span_dim(restricted, self.p)

    def ext_ground(self, i: int, j: int) -> int:
        key = (i, j)
        if key not in self._ext_cache:
            self._ext_cache[key] = self.ext1_dim(self.ground[i], self.ground[j])
        return self._ext_cache[key]

    def _cocycle_system(self, M: Representation, N: Representation):
        """Cocycle constraints and coboundaries for extensions ``0 -> N -> E -> M -> 0``."""
        p = self.p
        sizes = [N.dims[t] * M.dims[s] for _, s, t in self.arrows]
        starts = np.cumsum([0] + sizes)
        total = int(starts[-1])
        rows = []
        for rel in self.relations:
            s0, t0 = self.relation_ends(rel)
            block = np.zeros((N.dims[t0] * M.dims[s0], total), dtype=np.int64)
            for coeff, path in rel:
                for i, a in enumerate(path):
                    after = self.path_matrix(N, self.arrows[a][2], path[i + 1 :])
                    before = self.path_matrix(M, s0, path[:i])
                    block[:, starts[a] : starts[a + 1]] += coeff * np.kron(after, before.T)
            rows.append(block % p)
        cons = np.vstack(rows) if rows else la.zeros(0, total)
        cocycles = la.kernel_basis(cons, p) if total else []
        cobound = []
        for v in range(self.n):
            for r in range(N.dims[v]):
                for c in range(M.dims[v]):
                    f = [la.zeros(N.dims[w], M.dims[w]) for w in range(self.n)]
                    f[v][r, c] = 1
                    z = np.concatenate(
                        [
                            ((f[t] @ M.mats[a] - N.mats[a] @ f[s]) % p).reshape(-1)
                            for a, (_, s, t) in enumerate(self.arrows)
                        ]
                    ) if self.arrows else np.zeros(0, dtype=np.int64)
                    cobound.append(z)
        return starts, cocycles, cobound

    def ext1_dim_cocycles(self, M: Representation, N: Representation) -> int:
        """``dim Ext^1(M, N)`` as ``dim Z^1 - dim B^1`` of the extension cocycle complex."""
        _, cocycles, cobound = self._cocycle_system(M, N)
        return len(cocycles) - la.span_dim(cobound, self.p)

    def extension_middle_terms(self, M: Representation, N: Representation) -> list[Representation]:
        """Middle terms ``E`` of one representative per class in ``Ext^1(M, N)`` (split class first)."""
        p = self.p
        starts, cocycles, cobound = self._cocycle_system(M, N)
        reps_idx = la.complement_indices(cobound, cocycles, p)
        classes = [cocycles[i] for i in reps_idx]
        out = []
        for coeffs in itertools.product(range(p), repeat=len(classes)):
            z = np.zeros(int(starts[-1]), dtype=np.int64)
            for c, vec in zip(coeffs, classes):
                z = (z + c * vec) % p
            mats = []
            for a, (_, s, t) in enumerate(self.arrows):
                blk = z[starts[a] : starts[a + 1]].reshape(N.dims[t], M.dims[s])
                top = np.concatenate([N.mats[a], blk], axis=1)
                bottom = np.concatenate([la.zeros(M.dims[t], N.dims[s]), M.mats[a]], axis=1)
                mats.append(np.concatenate([top, bottom], axis=0) % p)
            dims = tuple(N.dims[v] + M.dims[v] for v in range(self.n))
            out.append(Representation(dims, tuple(mats), p))
        return out

    # -------------------------------------------------------------- iso/decomp
    def is_local(self, M: Representation) -> bool:
        """Whether ``End(M)`` is local, i.e. every endomorphism is nilpotent or invertible."""
        if M.is_zero():
            return False
        basis = self.hom_basis(M, M)
        if len(basis) == 1:
            return True
        if self.p ** len(basis) > self.hom_scan_cap:
            raise ResourceError(
                f"End({M.name or M!r}) has dimension {len(basis)}; scan exceeds hom_scan_cap={self.hom_scan_cap}"
            )
        for coeffs in itertools.product(range(self.p), repeat=len(basis)):
            if not any(coeffs):
                continue
            f = linear_combination(basis, coeffs)
            if f.is_iso():
                continue
            power = f
            for _ in range(M.total_dim):
                power = power @ f
            if not power.is_zero():
                return False
        return True

    def _split_off(self, X: Representation, M: Representation) -> Optional[Representation]:
        """If ``X`` (local endomorphism ring) is a summand of ``M``, return a complement."""
        sections = self.hom_basis(X, M)
        if not sections:
            return None
        retractions = self.hom_basis(M, X)
        for r in retractions:
            for s in sections:
                e = r @ s
                if e.is_iso():
                    inv = Morphism(X, X, tuple(la.inverse(m, self.p) for m in e.maps))
                    rr = inv @ r
                    comp, _ = self.sub(self.kernel(rr))
                    return comp
        return None

    def decompose(self, M: Representation) -> list[int]:
        """Ground-set indices of the indecomposable summands of ``M`` (sorted multiset)."""
        for i, X in enumerate(self.ground):
            if X is M:
                return [i]
        out = []
        cur = M
        while not cur.is_zero():
            for i, X in enumerate(self.ground):
                if any(x > c for x, c in zip(X.dims, cur.dims)):
                    continue
                rest = self._split_off(X, cur)
                if rest is not None:
                    out.append(i)
                    cur = rest
                    break
            else:
                raise CompletenessError(f"no ground-set summand found in a module of dims {list(cur.dims)}")
        return sorted(out)

    def is_isomorphic(self, M: Representation, N: Representation) -> bool:
        if M.dims != N.dims:
            return False
        if M.is_zero():
            return True
        basis = self.hom_basis(M, N)
        if not basis:
            return False
        if any(f.is_iso() for f in basis):
            return True
        if self.p ** len(basis) <= self.hom_scan_cap:
            for coeffs in itertools.product(range(self.p), repeat=len(basis)):
                if any(coeffs) and linear_combination(basis, coeffs).is_iso():
                    return True
            return False
        return self.decompose(M) == self.decompose(N)

    def match_ground(self, M: Representation) -> Optional[int]:
        for i, X in enumerate(self.ground):
            if self.is_isomorphic(X, M):
                return i
        return None

    # ------------------------------------------------------- submodule lattice
    def submodules(self, M: Representation) -> list[SubmoduleWitness]:
        """All submodules, from cyclic submodules of homogeneous vectors closed under sums."""
        for i, X in enumerate(self.ground):
            if X is M and i in self._sub_cache:
                return self._sub_cache[i]
        if M.total_dim > self.dim_cap:
            raise ResourceError(f"submodule enumeration of dimension {M.total_dim} exceeds dim_cap={self.dim_cap}")
        zero = self.zero_submodule(M)
        cyclic: dict[tuple, SubmoduleWitness] = {}
        for v in range(self.n):
            d = M.dims[v]
            for coeffs in itertools.product(range(self.p), repeat=d):
                nz = [c for c in coeffs if c]
                if not nz or nz[0] != 1:
                    continue
                gens = [[] for _ in range(self.n)]
                gens[v].append(np.array(coeffs, dtype=np.int64))
                w = span_closure(M, gens, self.arrow_ends)
                cyclic.setdefault(w.key(), w)
        found = {zero.key(): zero}
        found.update(cyclic)
        frontier = list(cyclic.values())
        while frontier:
            nxt = []
            for a in frontier:
                for c in cyclic.values():
                    s = submodule_sum(a, c)
                    k = s.key()
                    if k not in found:
                        found[k] = s
                        nxt.append(s)
            frontier = nxt
        out = sorted(found.values(), key=lambda w: (w.total_dim, w.dims, w.key()))
        for i, X in enumerate(self.ground):
            if X is M:
                self._sub_cache[i] = out
        return out

    def quotients(self, M: Representation) -> list[Representation]:
        return [self.quotient(w)[0] for w in self.submodules(M)]

    def trace_submodule(self, S: Iterable[int], M: Representation) -> SubmoduleWitness:
        """Sum of the images of all maps from members of ``S`` into ``M``."""
        vecs = [[] for _ in range(self.n)]
        for i in S:
            for f in self.hom_basis(self.ground[i], M):
                for v, m in enumerate(f.maps):
                    vecs[v].extend(list(m.T))
        basis = tuple(
            la.row_basis(np.array(vs, dtype=np.int64).reshape(len(vs), M.dims[v]), self.p)
            if vs
            else la.zeros(0, M.dims[v])
            for v, vs in enumerate(vecs)
        )
        return SubmoduleWitness(M, basis)

    # ---------------------------------------------------------- approximations
    def _is_right_approx(self, C: Sequence[int], copies: list[tuple[int, Morphism]], M: Representation) -> bool:
        for c in C:
            gens = []
            for ci, h in copies:
                for phi in self.hom_ground(c, ci):
                    gens.append((h @ phi).vec())
            for h in self.hom_basis(self.ground[c], M):
                if not la.in_span(gens, h.vec(), self.p):
                    return False
        return True

    def _is_left_approx(self, C: Sequence[int], copies: list[tuple[int, Morphism]], M: Representation) -> bool:
        for c in C:
            gens = []
            for ci, h in copies:
                for phi in self.hom_ground(ci, c):
                    gens.append((phi @ h).vec())
            for h in self.hom_basis(M, self.ground[c]):
                if not la.in_span(gens, h.vec(), self.p):
                    return False
        return True

    def _nil_ideal(self, basis: list[Morphism]) -> bool:
        """Whether the one-sided ideal spanned by ``basis`` is nilpotent.

        Powers of a one-sided ideal form a descending chain, so it is
        nilpotent iff the chain keeps strictly shrinking until it hits zero.
        """
        current = basis
        dim = len(basis)
        while current:
            prods = [a @ b for a in basis for b in current]
            keep = la.complement_indices([], [x.vec() for x in prods], self.p)
            if len(keep) >= dim:
                return False
            current = [prods[i] for i in keep]
            dim = len(current)
        return True

    def min_right_approx(self, C: Sequence[int], M: Representation) -> Approximation:
        """Minimal right ``add(C)``-approximation ``g: X -> M``."""
        C = list(C)
        copies = [(c, h) for c in C for h in self.hom_basis(self.ground[c], M)]
        i = 0
        while i < len(copies):
            trial = copies[:i] + copies[i + 1 :]
            if self._is_right_approx(C, trial, M):
                copies = trial
            else:
                i += 1
        summands = [c for c, _ in copies]
        X = self.sum_of(summands)
        g = row_morphism(X, M, [h for _, h in copies]) if copies else zero_morphism(X, M)
        if copies:
            if not self._nil_ideal(self._ideal_kernel(g, right=True)):
                raise TheoremViolation("approximation-minimality", f"right approximation of {M!r} is not right minimal")
        return Approximation(summands, g)

    def min_left_approx(self, M: Representation, C: Sequence[int]) -> Approximation:
        """Minimal left ``add(C)``-approximation ``f: M -> Y``."""
        C = list(C)
        copies = [(c, h) for c in C for h in self.hom_basis(M, self.ground[c])]
        i = 0
        while i < len(copies):
            trial = copies[:i] + copies[i + 1 :]
            if self._is_left_approx(C, trial, M):
                copies = trial
            else:
                i += 1
        summands = [c for c, _ in copies]
        Y = self.sum_of(summands)
        f = column_morphism(M, Y, [h for _, h in copies]) if copies else zero_morphism(M, Y)
        if copies:
            if not self._nil_ideal(self._ideal_kernel(f, right=False)):
                raise TheoremViolation("approximation-minimality", f"left approximation of {M!r} is not left minimal")
        return Approximation(summands, f)

    def _ideal_kernel(self, g: Morphism, right: bool) -> list[Morphism]:
        # right: {e in End(X) : g e = 0};  left: {e in End(Y) : e g = 0}
        X = g.source if right else g.target
        ends = self.hom_basis(X, X)
        if not ends:
            return []
        images = [((g @ e) if right else (e @ g)).vec() for e in ends]
        mat = np.stack(images, axis=1)
        out = []
        for coeffs in la.kernel_basis(mat, self.p):
            out.append(linear_combination(ends, coeffs))
        return out

    def injective_copresentation(self, M: Representation) -> Copresentation:
        env = self.min_left_approx(M, self.injective_index)
        if not env.map.is_mono():
            raise TheoremViolation("injective-envelope", f"envelope of {M!r} is not injective")
        I0 = env.map.target
        coker, proj = self.quotient(self.image(env.map))
        env1 = self.min_left_approx(coker, self.injective_index)
        d = env1.map @ proj
        return Copresentation(M, env.summands, env1.summands, env.map, Morphism(I0, env1.map.target, d.maps))

    # ------------------------------------------------------------ validation
    def validate_ground(self, check_closure: bool = False) -> None:
        for X in self.ground:
            if X.is_zero():
                raise InputError(f"ground-set entry {X.name} is the zero representation")
            self.check_relations(X)
            if not self.is_local(X):
                raise InputError(f"ground-set entry {X.name} is decomposable")
        for i, j in itertools.combinations(range(len(self.ground)), 2):
            if self.is_isomorphic(self.ground[i], self.ground[j]):
                raise InputError(
                    f"ground-set entries {self.ground[i].name} and {self.ground[j].name} are isomorphic"
                )
        self.build_projectives_injectives()
        self.projective_index = []
        self.injective_index = []
        for kind, reps, store in (
            ("projective", self.projectives, self.projective_index),
            ("injective", self.injectives, self.injective_index),
        ):
            for P in reps:
                k = self.match_ground(P)
                if k is None:
                    raise CompletenessError(f"{kind} {P.name} of dims {list(P.dims)} is missing")
                store.append(k)
        if check_closure:
            for X in self.ground:
                for w in self.submodules(X):
                    self.decompose(self.sub(w)[0])
                    self.decompose(self.quotient(w)[0])


# ---------------------------------------------------------------- loading


def type_a_document(n: int, orientation: Optional[Sequence[str]] = None, prime: int = la.DEFAULT_PRIME) -> dict:
    """Input document for the type-A preset; orientation entries are ``"right"``/``"left"``."""
    orientation = list(orientation) if orientation is not None else ["right"] * (n - 1)
    return {
        "prime": prime,
        "preset": {"type": "A", "n": n, "orientation": orientation},
    }


def _normalize_orientation(n: int, orientation) -> list[bool]:
    if orientation is None:
        orientation = ["right"] * (n - 1)
    if len(orientation) != n - 1:
        raise InputError(f"type-A orientation needs {n - 1} entries, got {len(orientation)}")
    out = []
    for o in orientation:
        if o in ("right", ">", "R", 1, "+"):
            out.append(True)
        elif o in ("left", "<", "L", -1, "-"):
            out.append(False)
        else:
            raise InputError(f"unknown orientation entry {o!r}")
    return out


def _type_a(doc: dict, p: int):
    preset = doc["preset"]
    n = int(preset["n"])
    if n < 1:
        raise InputError("type-A preset needs n >= 1")
    rightward = _normalize_orientation(n, preset.get("orientation"))
    vertices = [str(v) for v in doc.get("vertices", [str(i + 1) for i in range(n)])]
    if len(vertices) != n:
        raise InputError("vertex list does not match preset n")
    arrows = []
    for k, right in enumerate(rightward):
        s, t = (k, k + 1) if right else (k + 1, k)
        arrows.append((f"a{k + 1}", s, t))
    if "arrows" in doc:
        given = [(a["name"], vertices.index(str(a["from"])), vertices.index(str(a["to"]))) for a in doc["arrows"]]
        if sorted((s, t) for _, s, t in given) != sorted((s, t) for _, s, t in arrows):
            raise InputError("arrow list does not match the type-A orientation")
        arrows = given

    def reach(v: int, forward: bool) -> set[int]:
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for _, s, t in arrows:
                a, b = (s, t) if forward else (t, s)
                if a == x and b not in seen:
                    seen.add(b)
                    stack.append(b)
        return seen

    proj_support = {v: frozenset(reach(v, True)) for v in range(n)}
    inj_support = {v: frozenset(reach(v, False)) for v in range(n)}
    entries = []
    for length in range(1, n + 1):
        for i in range(n - length + 1):
            j = i + length - 1
            support = frozenset(range(i, j + 1))
            if i == j:
                name = f"S{vertices[i]}"
            else:
                pv = [v for v in range(n) if proj_support[v] == support]
                iv = [v for v in range(n) if inj_support[v] == support]
                if pv:
                    name = f"P{vertices[pv[0]]}"
                elif iv:
                    name = f"I{vertices[iv[0]]}"
                else:
                    name = f"M{vertices[i]}-{vertices[j]}"
            dims = [1 if v in support else 0 for v in range(n)]
            mats = []
            for _, s, t in arrows:
                mats.append([1] if (s in support and t in support) else [0] * (dims[s] * dims[t]))
            entries.append({"name": name, "dims": dims, "matrices": mats})
    return vertices, arrows, entries


def load_algebra(
    document: dict,
    prime: Optional[int] = None,
    dim_cap: int = DEFAULT_DIM_CAP,
    hom_scan_cap: int = DEFAULT_HOM_SCAN_CAP,
) -> Algebra:
    """Build and verify an :class:`Algebra` from a parsed input document."""
    if not isinstance(document, dict):
        raise InputError("algebra document must be an object")
    p = int(prime if prime is not None else document.get("prime", la.DEFAULT_PRIME))
    if not la.is_prime(p):
        raise InputError(f"prime {p} is not prime")
    preset_tag = None
    if "preset" in document:
        preset = document["preset"]
        if str(preset.get("type", "")).upper() != "A":
            raise InputError(f"unsupported preset {preset!r}")
        vertices, arrows, entries = _type_a(document, p)
        preset_tag = f"type-A({len(vertices)}, {[('right' if s < t else 'left') for _, s, t in arrows]})"
        if document.get("relations"):
            raise InputError("the type-A preset does not accept relations")
    else:
        try:
            vertices = [str(v) for v in document["vertices"]]
            arrows = [
                (str(a["name"]), vertices.index(str(a["from"])), vertices.index(str(a["to"])))
                for a in document.get("arrows", [])
            ]
            entries = document["indecomposables"]
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError(f"malformed algebra document: {exc}") from exc
    arrow_names = [a[0] for a in arrows]
    if len(set(arrow_names)) != len(arrow_names):
        raise InputError("duplicate arrow names")
    relations = []
    for k, rel in enumerate(document.get("relations", []) if preset_tag is None else []):
        terms = []
        for term in rel:
            try:
                path = tuple(arrow_names.index(str(a)) for a in term["path"])
            except ValueError as exc:
                raise InputError(f"relation {k} names an unknown arrow") from exc
            if len(path) < 2:
                raise InputError(f"relation {k} contains a path of length < 2")
            for x, y in zip(path, path[1:]):
                if arrows[x][2] != arrows[y][1]:
                    raise InputError(f"relation {k} contains a non-composable path")
            terms.append((int(term.get("coeff", 1)) % p, path))
        relations.append(terms)
    alg = Algebra(vertices, arrows, relations, p, preset=preset_tag, dim_cap=dim_cap, hom_scan_cap=hom_scan_cap)
    for rel in relations:
        alg.relation_ends(rel)
    alg.paths()
    ground = []
    for e in entries:
        mats = e.get("matrices", [])
        if isinstance(mats, dict):
            mats = [mats.get(a, []) for a in arrow_names]
        mats = [np.array(m, dtype=np.int64).reshape(-1) for m in mats]
        ground.append(alg.rep(e["dims"], mats, str(e.get("name", f"X{len(ground)}"))))
    names = [g.name for g in ground]
    if len(set(names)) != len(names):
        raise InputError("duplicate indecomposable names")
    alg.ground = ground
    alg.validate_ground(check_closure=preset_tag is not None)
    return alg
