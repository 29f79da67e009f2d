"""Two-term complexes of injectives and their homotopy category.

A point of a maximal rigid set is either the minimal injective copresentation
of an indecomposable module (``copres``) or a shifted indecomposable
injective ``I[-1]`` sitting in degree 1 (``shift``).  Complexes are built on
demand from these module-level descriptions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import linalg as la
from .errors import TheoremViolation
from .quiver import Algebra, Morphism, Representation, column_morphism, row_morphism, zero_morphism


@dataclass(frozen=True, order=True)
class Point:
    kind: str  # "copres" or "shift"
    index: int


@dataclass(eq=False)
class TwoTermComplex:
    deg0: list[int]
    deg1: list[int]
    d: Morphism
    point: Optional[Point] = None

    @property
    def c0(self) -> Representation:
        return self.d.source

    @property
    def c1(self) -> Representation:
        return self.d.target


@dataclass(eq=False)
class ChainMap:
    source: TwoTermComplex
    target: TwoTermComplex
    f0: Morphism
    f1: Morphism

    def vec(self) -> np.ndarray:
        return np.concatenate([self.f0.vec(), self.f1.vec()])

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        return ChainMap(other.source, self.target, self.f0 @ other.f0, self.f1 @ other.f1)


@dataclass
class ExchangeRecord:
    """Triangle ``rho -> eps -> lam -> rho[1]`` (``eps`` listed as points)."""

    rho: Point
    eps: list[Point]
    lam: Point
    direction: str  # "up": computed rho from lam; "down": computed lam from rho
    reduced_deg0: list[int] = field(default_factory=list)
    reduced_deg1: list[int] = field(default_factory=list)


def _blocks(alg: Algebra, summands: Sequence[int], v: int) -> list[tuple[int, int]]:
    out, pos = [], 0
    for s in summands:
        d = alg.ground[s].dims[v]
        out.append((pos, pos + d))
        pos += d
    return out


class ComplexCategory:
    """Homotopy-category computations for two-term complexes of injectives."""

    def __init__(self, alg: Algebra):
        self.alg = alg
        self.p = alg.p
        self._complex_cache: dict[Point, TwoTermComplex] = {}
        self._chain_cache: dict[tuple, list[ChainMap]] = {}
        self._homot_cache: dict[tuple, list[np.ndarray]] = {}
        self._hom1_cache: dict[tuple, int] = {}

    # ---------------------------------------------------------------- points
    def universe(self) -> list[Point]:
        pts = [Point("copres", i) for i in range(len(self.alg.ground))]
        pts += [Point("shift", i) for i in sorted(set(self.alg.injective_index))]
        return pts

    def describe(self, pt: Point) -> dict:
        name = self.alg.name_of(pt.index)
        cx = self.complex_of(pt)
        text = f"{name}[-1]" if pt.kind == "shift" else f"copres({name})"
        return {
            "kind": "copresentation" if pt.kind == "copres" else "shifted-injective",
            "module": name,
            "text": text,
            "deg0": [self.alg.name_of(i) for i in cx.deg0],
            "deg1": [self.alg.name_of(i) for i in cx.deg1],
        }

    def label(self, pt: Point) -> str:
        name = self.alg.name_of(pt.index)
        return f"{name}[-1]" if pt.kind == "shift" else f"copres({name})"

    def complex_of(self, pt: Point) -> TwoTermComplex:
        if pt in self._complex_cache:
            return self._complex_cache[pt]
        alg = self.alg
        if pt.kind == "copres":
            cp = alg.injective_copresentation(alg.ground[pt.index])
            cx = TwoTermComplex(cp.deg0, cp.deg1, cp.d, pt)
        elif pt.kind == "shift":
            if pt.index not in alg.injective_index:
                raise TheoremViolation("shift-injective", f"{alg.name_of(pt.index)} is not injective")
            c1 = alg.sum_of([pt.index])
            cx = TwoTermComplex([], [pt.index], zero_morphism(alg.sum_of([]), c1), pt)
        else:
            raise ValueError(pt.kind)
        self._complex_cache[pt] = cx
        return cx

    def is_minimal(self, cx: TwoTermComplex) -> bool:
        """No component of ``d`` between isomorphic summands is invertible."""
        for i, a in enumerate(cx.deg0):
            for j, b in enumerate(cx.deg1):
                if a == b and self._component(cx.d, cx.deg0, cx.deg1, i, j).is_iso():
                    return False
        return True

    def _component(self, d: Morphism, src: Sequence[int], tgt: Sequence[int], i: int, j: int) -> Morphism:
        alg = self.alg
        maps = []
        for v in range(alg.n):
            r0, r1 = _blocks(alg, tgt, v)[j]
            c0, c1 = _blocks(alg, src, v)[i]
            maps.append(d.maps[v][r0:r1, c0:c1])
        return Morphism(alg.ground[src[i]], alg.ground[tgt[j]], tuple(maps))

    # ------------------------------------------------------------------ homs
    def hom1(self, mu: TwoTermComplex, nu: TwoTermComplex) -> int:
        """``dim Hom_K(mu, nu[1])``: ``Hom(mu^0, nu^1)`` modulo homotopies."""
        key = (mu.point, nu.point)
        if mu.point is not None and nu.point is not None and key in self._hom1_cache:
            return self._hom1_cache[key]
        alg = self.alg
        total = alg.hom_dim(mu.c0, nu.c1)
        if total:
            htpy = [(h @ mu.d).vec() for h in alg.hom_basis(mu.c1, nu.c1)]
            htpy += [(nu.d @ h).vec() for h in alg.hom_basis(mu.c0, nu.c0)]
            total -= la.span_dim(htpy, self.p)
        if mu.point is not None and nu.point is not None:
            self._hom1_cache[key] = total
        return total

    def point_hom1(self, a: Point, b: Point) -> int:
        return self.hom1(self.complex_of(a), self.complex_of(b))

    def is_rigid(self, pts: Sequence[Point]) -> bool:
        return all(self.point_hom1(a, b) == 0 for a in pts for b in pts)

    def chain_maps(self, mu: TwoTermComplex, nu: TwoTermComplex) -> list[ChainMap]:
        key = (mu.point, nu.point)
        cacheable = mu.point is not None and nu.point is not None
        if cacheable and key in self._chain_cache:
            return self._chain_cache[key]
        alg = self.alg
        B0 = alg.hom_basis(mu.c0, nu.c0)
        B1 = alg.hom_basis(mu.c1, nu.c1)
        out: list[ChainMap] = []
        if B0 or B1:
            cols = [(b @ mu.d).vec() for b in B1] + [((nu.d @ b).scale(-1)).vec() for b in B0]
            length = max((c.size for c in cols), default=0)
            if length == 0:
                kernel = [la.identity(len(cols))[:, j] for j in range(len(cols))]
            else:
                kernel = la.kernel_basis(np.stack(cols, axis=1), self.p)
            for coeffs in kernel:
                y, x = coeffs[: len(B1)], coeffs[len(B1) :]
                f1 = _combo(B1, y, mu.c1, nu.c1)
                f0 = _combo(B0, x, mu.c0, nu.c0)
                out.append(ChainMap(mu, nu, f0, f1))
        if cacheable:
            self._chain_cache[key] = out
        return out

    def homotopies(self, mu: TwoTermComplex, nu: TwoTermComplex) -> list[np.ndarray]:
        key = (mu.point, nu.point)
        cacheable = mu.point is not None and nu.point is not None
        if cacheable and key in self._homot_cache:
            return self._homot_cache[key]
        out = [
            np.concatenate([(h @ mu.d).vec(), (nu.d @ h).vec()])
            for h in self.alg.hom_basis(mu.c1, nu.c0)
        ]
        if cacheable:
            self._homot_cache[key] = out
        return out

    def hom_k_basis(self, mu: TwoTermComplex, nu: TwoTermComplex) -> list[ChainMap]:
        """Chain maps representing a basis of ``Hom_K(mu, nu)``."""
        cms = self.chain_maps(mu, nu)
        idx = la.complement_indices(self.homotopies(mu, nu), [c.vec() for c in cms], self.p)
        return [cms[i] for i in idx]

    # ------------------------------------------------------- approximations
    def _right_ok(self, R: Sequence[Point], copies, lam: TwoTermComplex) -> bool:
        for q in R:
            cq = self.complex_of(q)
            gens = list(self.homotopies(cq, lam))
            for pi, g in copies:
                for c in self.chain_maps(cq, self.complex_of(pi)):
                    gens.append((g @ c).vec())
            for phi in self.hom_k_basis(cq, lam):
                if not la.in_span(gens, phi.vec(), self.p):
                    return False
        return True

    def _left_ok(self, R: Sequence[Point], copies, rho: TwoTermComplex) -> bool:
        for q in R:
            cq = self.complex_of(q)
            gens = list(self.homotopies(rho, cq))
            for pi, f in copies:
                for c in self.chain_maps(self.complex_of(pi), cq):
                    gens.append((c @ f).vec())
            for phi in self.hom_k_basis(rho, cq):
                if not la.in_span(gens, phi.vec(), self.p):
                    return False
        return True

    def min_right_approx(self, R: Sequence[Point], lam: TwoTermComplex):
        """Minimal right ``add(R)``-approximation of ``lam`` in the homotopy category."""
        copies = [(q, phi) for q in R for phi in self.hom_k_basis(self.complex_of(q), lam)]
        i = 0
        while i < len(copies):
            trial = copies[:i] + copies[i + 1 :]
            if self._right_ok(R, trial, lam):
                copies = trial
            else:
                i += 1
        eps = self._sum_complex([q for q, _ in copies])
        g0 = row_morphism(eps.c0, lam.c0, [g.f0 for _, g in copies]) if copies else zero_morphism(eps.c0, lam.c0)
        g1 = row_morphism(eps.c1, lam.c1, [g.f1 for _, g in copies]) if copies else zero_morphism(eps.c1, lam.c1)
        return [q for q, _ in copies], eps, ChainMap(eps, lam, g0, g1)

    def min_left_approx(self, rho: TwoTermComplex, R: Sequence[Point]):
        """Minimal left ``add(R)``-approximation of ``rho`` in the homotopy category."""
        copies = [(q, phi) for q in R for phi in self.hom_k_basis(rho, self.complex_of(q))]
        i = 0
        while i < len(copies):
            trial = copies[:i] + copies[i + 1 :]
            if self._left_ok(R, trial, rho):
                copies = trial
            else:
                i += 1
        eps = self._sum_complex([q for q, _ in copies])
        f0 = column_morphism(rho.c0, eps.c0, [f.f0 for _, f in copies]) if copies else zero_morphism(rho.c0, eps.c0)
        f1 = column_morphism(rho.c1, eps.c1, [f.f1 for _, f in copies]) if copies else zero_morphism(rho.c1, eps.c1)
        return [q for q, _ in copies], eps, ChainMap(rho, eps, f0, f1)

    def _sum_complex(self, pts: Sequence[Point]) -> TwoTermComplex:
        alg = self.alg
        cxs = [self.complex_of(q) for q in pts]
        deg0 = [s for c in cxs for s in c.deg0]
        deg1 = [s for c in cxs for s in c.deg1]
        c0, c1 = alg.sum_of(deg0), alg.sum_of(deg1)
        maps = []
        for v in range(alg.n):
            m = la.zeros(c1.dims[v], c0.dims[v])
            r = c = 0
            for cx in cxs:
                blk = cx.d.maps[v]
                m[r : r + blk.shape[0], c : c + blk.shape[1]] = blk
                r += blk.shape[0]
                c += blk.shape[1]
            maps.append(m)
        return TwoTermComplex(deg0, deg1, Morphism(c0, c1, tuple(maps)))

    # ------------------------------------------------------ cones / reduction
    def cocone(self, g: ChainMap) -> tuple[list[list[int]], list[Morphism]]:
        """Cocone of ``g: eps -> lam`` in degrees 0, 1, 2."""
        alg = self.alg
        eps, lam = g.source, g.target
        t0, t1, t2 = eps.deg0, eps.deg1 + lam.deg0, lam.deg1
        r0, r1, r2 = alg.sum_of(t0), alg.sum_of(t1), alg.sum_of(t2)
        d0 = column_morphism(r0, r1, [eps.d.scale(-1), g.f0])
        d1 = row_morphism(r1, r2, [g.f1, lam.d])
        return [t0, t1, t2], [d0, d1]

    def cone(self, f: ChainMap) -> tuple[list[list[int]], list[Morphism]]:
        """Cone of ``f: rho -> eps`` in degrees -1, 0, 1."""
        alg = self.alg
        rho, eps = f.source, f.target
        t0, t1, t2 = rho.deg0, rho.deg1 + eps.deg0, eps.deg1
        r0, r1, r2 = alg.sum_of(t0), alg.sum_of(t1), alg.sum_of(t2)
        d0 = column_morphism(r0, r1, [rho.d.scale(-1), f.f0])
        d1 = row_morphism(r1, r2, [f.f1, eps.d])
        return [t0, t1, t2], [d0, d1]

    def reduce(self, terms: list[list[int]], diffs: list[Morphism]) -> tuple[list[list[int]], list[Morphism]]:
        """Split off contractible ``X = X`` blocks until every differential is radical."""
        alg, p = self.alg, self.p
        terms = [list(t) for t in terms]
        diffs = list(diffs)
        while True:
            hit = None
            for k, d in enumerate(diffs):
                for i, a in enumerate(terms[k]):
                    for j, b in enumerate(terms[k + 1]):
                        if a == b and self._component(d, terms[k], terms[k + 1], i, j).is_iso():
                            hit = (k, i, j)
                            break
                    if hit:
                        break
                if hit:
                    break
            if hit is None:
                return terms, diffs
            k, i, j = hit
            src, tgt = terms[k], terms[k + 1]
            new_src = src[:i] + src[i + 1 :]
            new_tgt = tgt[:j] + tgt[j + 1 :]
            rs, rt = alg.sum_of(new_src), alg.sum_of(new_tgt)
            new_maps = []
            for v in range(alg.n):
                D = diffs[k].maps[v]
                c0, c1 = _blocks(alg, src, v)[i]
                r0, r1 = _blocks(alg, tgt, v)[j]
                keep_c = [x for x in range(D.shape[1]) if not c0 <= x < c1]
                keep_r = [x for x in range(D.shape[0]) if not r0 <= x < r1]
                a_ = D[np.ix_(keep_r, keep_c)]
                b_ = D[np.ix_(keep_r, list(range(c0, c1)))]
                c_ = D[np.ix_(list(range(r0, r1)), keep_c)]
                phi = D[r0:r1, c0:c1]
                if phi.size:
                    a_ = (a_ - b_ @ la.inverse(phi, p) @ c_) % p
                new_maps.append(a_ % p)
            prev = diffs[k - 1] if k > 0 else None
            nxt = diffs[k + 1] if k + 1 < len(diffs) else None
            diffs[k] = Morphism(rs, rt, tuple(new_maps))
            if prev is not None:
                maps = []
                for v in range(alg.n):
                    c0, c1 = _blocks(alg, src, v)[i]
                    keep = [x for x in range(prev.maps[v].shape[0]) if not c0 <= x < c1]
                    maps.append(prev.maps[v][keep, :])
                diffs[k - 1] = Morphism(prev.source, rs, tuple(maps))
            if nxt is not None:
                maps = []
                for v in range(alg.n):
                    r0, r1 = _blocks(alg, tgt, v)[j]
                    keep = [x for x in range(nxt.maps[v].shape[1]) if not r0 <= x < r1]
                    maps.append(nxt.maps[v][:, keep])
                diffs[k + 1] = Morphism(rt, nxt.target, tuple(maps))
            terms[k], terms[k + 1] = new_src, new_tgt

    def identify(self, deg0: list[int], deg1: list[int], d: Morphism) -> Point:
        """The point isomorphic to a minimal two-term complex, if it is indecomposable."""
        alg = self.alg
        if not deg0:
            if len(deg1) != 1:
                raise TheoremViolation("exchange-indecomposable", f"complex 0 -> {deg1} is not indecomposable")
            return Point("shift", deg1[0])
        kernel, _ = alg.sub(alg.kernel(d))
        summands = alg.decompose(kernel)
        if len(summands) != 1:
            raise TheoremViolation("exchange-indecomposable", f"kernel of the reduced complex has summands {summands}")
        pt = Point("copres", summands[0])
        ref = self.complex_of(pt)
        if sorted(ref.deg0) != sorted(deg0) or sorted(ref.deg1) != sorted(deg1):
            raise TheoremViolation(
                "exchange-indecomposable",
                f"reduced complex has extra shifted-injective summands beyond {self.label(pt)}",
            )
        return pt


def _combo(basis: list[Morphism], coeffs, source: Representation, target: Representation) -> Morphism:
    out = zero_morphism(source, target)
    for b, c in zip(basis, coeffs):
        if c:
            out = out + b.scale(int(c))
    return out
