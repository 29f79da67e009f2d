"""Cosilting pairs, maximal rigid sets and their mutation, one torsion class at a time."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .complexes import ComplexCategory, ExchangeRecord, Point
from .errors import InputError, TheoremViolation
from .lattice import HasseArrow, TorsLattice, bits

CRITICAL = "critical"
SPECIAL = "special"
SPECIAL_INJECTIVE = "special-injective"
PLAIN = "plain"


@dataclass
class CosiltingPair:
    Z: list[int]
    I: list[int]


@dataclass
class MaximalRigidSet:
    owner: int
    points: frozenset[Point]
    tags: dict[Point, str] = field(default_factory=dict)

    def sorted_points(self) -> list[Point]:
        return sorted(self.points)


class CosiltingEngine:
    """Cosilting data for every class of a :class:`TorsLattice`."""

    def __init__(self, lattice: TorsLattice):
        self.lat = lattice
        self.alg = lattice.alg
        self.cc = ComplexCategory(self.alg)
        self._cache: dict[int, tuple[CosiltingPair, MaximalRigidSet]] = {}

    # ------------------------------------------------------------- per class
    def cosilting_of(self, k: int) -> tuple[CosiltingPair, MaximalRigidSet]:
        """Cosilting pair and maximal rigid set of class ``k``, with rigidity and maximality verified."""
        if k in self._cache:
            return self._cache[k]
        alg, lat = self.alg, self.lat
        F = bits(lat.torsionfree(lat.classes[k]))
        Z: set[int] = set()
        for inj in alg.injective_index:
            cover = alg.min_right_approx(F, alg.ground[inj])
            Z.update(cover.summands)
            kernel, _ = alg.sub(alg.kernel(cover.map))
            Z.update(alg.decompose(kernel))
        specials = sorted(
            i for i in set(alg.injective_index) if all(lat.homdim[f][i] == 0 for f in F)
        )
        pair = CosiltingPair(sorted(Z), specials)
        if len(pair.Z) + len(pair.I) != alg.n:
            raise TheoremViolation(
                "cosilting-pair-count",
                f"class {k}: |Z|+|I| = {len(pair.Z) + len(pair.I)} but there are {alg.n} vertices",
            )
        pts = frozenset([Point("copres", z) for z in pair.Z] + [Point("shift", i) for i in pair.I])
        cc = self.cc
        for a in pts:
            for b in pts:
                if cc.point_hom1(a, b):
                    raise TheoremViolation("rigidity", f"class {k}: Hom({cc.label(a)}, {cc.label(b)}[1]) != 0")
        for q in cc.universe():
            if q in pts:
                continue
            if cc.point_hom1(q, q) == 0 and all(
                cc.point_hom1(q, a) == 0 and cc.point_hom1(a, q) == 0 for a in pts
            ):
                raise TheoremViolation("maximality", f"class {k}: {cc.label(q)} extends the rigid set")
        result = (pair, MaximalRigidSet(k, pts))
        self._cache[k] = result
        return result

    def points(self, k: int) -> frozenset[Point]:
        return self.cosilting_of(k)[1].points

    def classify_neg_isolated(self, k: int) -> MaximalRigidSet:
        """Tag each point of ``N_k`` as critical, special, special-injective or plain."""
        alg, lat = self.alg, self.lat
        pair, N = self.cosilting_of(k)
        F = bits(lat.torsionfree(lat.classes[k]))
        tags: dict[Point, str] = {}

        def tag(pt: Point, kind: str) -> None:
            if pt not in N.points:
                raise TheoremViolation("neg-isolated-membership", f"class {k}: {self.cc.label(pt)} is not in N")
            if tags.get(pt, kind) != kind:
                raise TheoremViolation("neg-isolated-conflict", f"class {k}: {self.cc.label(pt)} tagged twice")
            tags[pt] = kind

        tf_at, t_atf = lat.almost_torsion_modules(k)
        perp1 = [x for x in range(lat.size) if all(alg.ext_ground(f, x) == 0 for f in F)]
        for b in tf_at:
            env = alg.min_left_approx(alg.ground[b], perp1)
            if not env.map.is_mono() or len(env.summands) != 1:
                raise TheoremViolation("critical-envelope", f"class {k}: envelope of {alg.name_of(b)} is not an indecomposable mono")
            coker, _ = alg.quotient(alg.image(env.map))
            if any(c not in F for c in alg.decompose(coker)):
                raise TheoremViolation("critical-envelope", f"class {k}: envelope cokernel of {alg.name_of(b)} is not torsionfree")
            tag(Point("copres", env.summands[0]), CRITICAL)
        for b in t_atf:
            T = alg.ground[b]
            cover = alg.min_right_approx(F, T)
            if cover.map.is_epi():
                kernel, _ = alg.sub(alg.kernel(cover.map))
                ks = alg.decompose(kernel)
                if len(ks) != 1:
                    raise TheoremViolation("special-kernel", f"class {k}: F-cover kernel of {alg.name_of(b)} is {ks}")
                tag(Point("copres", ks[0]), SPECIAL)
            else:
                maximal = [
                    w for w in alg.submodules(T)
                    if not w.is_whole()
                    and not any(
                        (not x.is_whole()) and x.total_dim > w.total_dim and x.contains(w)
                        for x in alg.submodules(T)
                    )
                ]
                if len(maximal) != 1:
                    raise TheoremViolation("unique-maximal-submodule", f"class {k}: {alg.name_of(b)} has {len(maximal)} maximal submodules")
                image = alg.image(cover.map)
                if image.key() != maximal[0].key():
                    raise TheoremViolation("cover-is-radical", f"class {k}: F-cover image of {alg.name_of(b)} is not its maximal submodule")
                top, _ = alg.quotient(maximal[0])
                env = alg.min_left_approx(top, alg.injective_index)
                if len(env.summands) != 1:
                    raise TheoremViolation("special-injective", f"class {k}: top of {alg.name_of(b)} is not simple")
                inj = env.summands[0]
                if inj not in pair.I:
                    raise TheoremViolation("special-injective", f"class {k}: {alg.name_of(inj)} is not in the F-orthogonal injectives")
                tag(Point("shift", inj), SPECIAL_INJECTIVE)
        for pt in N.points:
            tags.setdefault(pt, PLAIN)
        N.tags = tags
        return N

    # --------------------------------------------------------------- mutation
    def mutate(self, k: int, arrow: HasseArrow) -> tuple[MaximalRigidSet, ExchangeRecord]:
        """Irreducible mutation of ``N_k`` across ``arrow`` via its exchange triangle."""
        if k not in (arrow.lower, arrow.upper):
            raise InputError(f"arrow {arrow.upper}->{arrow.lower} is not incident to class {k}")
        t, u = arrow.upper, arrow.lower
        Nt, Nu = self.points(t), self.points(u)
        lam_set, rho_set = Nu - Nt, Nt - Nu
        if len(lam_set) != 1 or len(rho_set) != 1:
            raise TheoremViolation(
                "irreducible-mutation",
                f"arrow {t}->{u}: symmetric difference has sizes {len(lam_set)}, {len(rho_set)}",
            )
        (lam,), (rho,) = tuple(lam_set), tuple(rho_set)
        R = sorted(Nt & Nu)
        cc = self.cc
        if k == u:
            eps_pts, _, g = cc.min_right_approx(R, cc.complex_of(lam))
            terms, diffs = cc.reduce(*cc.cocone(g))
            if terms[2]:
                raise TheoremViolation("exchange-cocone", f"arrow {t}->{u}: cocone is not two-term after reduction")
            got = cc.identify(terms[0], terms[1], diffs[0])
            expected, direction, new_owner = rho, "up", t
            record = ExchangeRecord(got, eps_pts, lam, direction, terms[0], terms[1])
            result = (Nu - {lam}) | {got}
        else:
            eps_pts, _, f = cc.min_left_approx(cc.complex_of(rho), R)
            terms, diffs = cc.reduce(*cc.cone(f))
            if terms[0]:
                raise TheoremViolation("exchange-cone", f"arrow {t}->{u}: cone is not two-term after reduction")
            got = cc.identify(terms[1], terms[2], diffs[1])
            expected, direction, new_owner = lam, "down", u
            record = ExchangeRecord(rho, eps_pts, got, direction, terms[1], terms[2])
            result = (Nt - {rho}) | {got}
        if got != expected:
            raise TheoremViolation(
                "exchange-triangle",
                f"arrow {t}->{u}: triangle produced {cc.label(got)}, expected {cc.label(expected)}",
            )
        return MaximalRigidSet(new_owner, frozenset(result)), record

    # ------------------------------------------------------------------- wide
    def containing(self, M: Iterable[Point]) -> list[int]:
        M = frozenset(M)
        return [k for k in range(len(self.lat.classes)) if M <= self.points(k)]

    def closed_rigid_to_wide(self, M: Iterable[Point]) -> tuple[int, int]:
        """The interval of classes whose maximal rigid set contains ``M``."""
        M = frozenset(M)
        if not self.cc.is_rigid(sorted(M)):
            raise InputError("point set is not rigid")
        lat = self.lat
        ks = self.containing(M)
        if not ks:
            raise TheoremViolation("wide-bijection", "no maximal rigid set contains the given rigid set")
        u = lat.meet(ks)
        t = lat.join(ks)
        interval = [w for w in range(len(lat.classes)) if lat.leq(u, w) and lat.leq(w, t)]
        if sorted(ks) != interval:
            raise TheoremViolation("wide-bijection", f"classes containing the set do not form the interval [{u}, {t}]")
        if lat.wide_interval_check(u, t) is None:
            raise TheoremViolation("wide-bijection", f"interval [{u}, {t}] is not wide")
        return u, t

    def almost_complete_check(self, M: Iterable[Point]) -> bool:
        """Whether ``M`` lies in exactly two maximal rigid sets, cross-checked against the Hasse quiver."""
        M = frozenset(M)
        if not self.cc.is_rigid(sorted(M)):
            raise InputError("point set is not rigid")
        if len(M) >= self.alg.n:
            raise InputError("point set is already maximal")
        ks = self.containing(M)
        two = len(ks) == 2
        lo, hi = (min(ks, key=lambda k: self.lat.classes[k].bit_count()), max(ks, key=lambda k: self.lat.classes[k].bit_count())) if ks else (None, None)
        is_cover = two and any(a.upper == hi and a.lower == lo for a in self.lat.arrows)
        if two != is_cover:
            raise TheoremViolation("almost-complete", "two completions do not correspond to a Hasse arrow")
        if len(M) == self.alg.n - 1 and not two:
            raise TheoremViolation("almost-complete", f"almost complete set has {len(ks)} completions")
        return two

    def realized_rigid_sets(self) -> dict[frozenset, tuple[int, int]]:
        """``N_u ∩ N_t`` for every wide interval ``[u, t]``."""
        out: dict[frozenset, tuple[int, int]] = {}
        for u, t, _ in self.lat.wide_intervals():
            E = self.points(u) & self.points(t)
            if E in out:
                raise TheoremViolation("wide-bijection", f"intervals {out[E]} and {(u, t)} share a rigid set")
            out[E] = (u, t)
        return out

    def rigid_subsets(self) -> list[frozenset]:
        """All rigid subsets of the point universe."""
        cc = self.cc
        pts = [q for q in cc.universe() if cc.point_hom1(q, q) == 0]
        out = [frozenset()]

        def extend(start: int, current: list[Point]) -> None:
            for i in range(start, len(pts)):
                q = pts[i]
                if all(cc.point_hom1(q, a) == 0 and cc.point_hom1(a, q) == 0 for a in current):
                    nxt = current + [q]
                    out.append(frozenset(nxt))
                    extend(i + 1, nxt)

        extend(0, [])
        return out

    def order_reflects(self, u: int, t: int) -> bool:
        """``Hom(nu, mu[1]) = 0`` for all ``nu`` in ``N_t`` and ``mu`` in ``N_u``."""
        return all(self.cc.point_hom1(nu, mu) == 0 for nu in self.points(t) for mu in self.points(u))

    # --------------------------------------------------------------- records
    def record(self, k: int) -> dict:
        pair, N = self.cosilting_of(k)
        N = self.classify_neg_isolated(k)
        incident = [a for a in self.lat.arrows if k in (a.upper, a.lower)]
        verified = 0
        for a in incident:
            self.mutate(k, a)
            verified += 1
        return {
            "class_id": k,
            "Z": [self.alg.name_of(z) for z in pair.Z],
            "I": [self.alg.name_of(i) for i in pair.I],
            "points": [dict(self.cc.describe(q), tag=N.tags[q]) for q in N.sorted_points()],
            "arrows_verified": verified,
        }
