"""The lattice of torsion classes over a finite ground set of indecomposables.

Torsion classes are bitmasks over ground-set indices (bit ``i`` set when the
``i``-th indecomposable belongs to the class).  Classes are enumerated with
next-closure and numbered in increasing bitmask order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import InputError, TheoremViolation
from .quiver import Algebra, Representation


def bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask >> i:
        if (mask >> i) & 1:
            out.append(i)
        i += 1
    return out


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class TorsionClass:
    id: int
    members: int


@dataclass(frozen=True)
class TorsionPairFin:
    torsion: TorsionClass
    torsionfree: int


@dataclass(frozen=True)
class HasseArrow:
    upper: int
    lower: int
    label: int


@dataclass
class SemistableResult:
    theta: tuple[int, ...]
    t_strict: int
    t_bar: int
    f_strict: int
    f_bar: int
    semibrick: list[int]

    @property
    def semistable(self) -> int:
        return self.t_bar & self.f_bar


class TorsLattice:
    """``tors(A)`` for an :class:`Algebra` whose ground set is trusted to be complete."""

    def __init__(self, alg: Algebra):
        self.alg = alg
        self.size = len(alg.ground)
        self.full = (1 << self.size) - 1
        self._closure_cache: dict[int, int] = {}
        self._filt_cache: dict[tuple, bool] = {}
        self.homdim = [[len(alg.hom_ground(i, j)) for j in range(self.size)] for i in range(self.size)]

    # ---------------------------------------------------------------- closure
    def _generated_by(self, S: list[int], X: Representation) -> bool:
        cur = X
        while not cur.is_zero():
            tr = self.alg.trace_submodule(S, cur)
            if tr.total_dim == 0:
                return False
            cur, _ = self.alg.quotient(tr)
        return True

    def torsion_closure(self, S: int) -> int:
        """Smallest torsion class containing the bitmask ``S``."""
        if S in self._closure_cache:
            return self._closure_cache[S]
        members = bits(S)
        out = S
        if members:
            for i, X in enumerate(self.alg.ground):
                if not (S >> i) & 1 and self._generated_by(members, X):
                    out |= 1 << i
        self._closure_cache[S] = out
        return out

    def torsionfree(self, T: int) -> int:
        """``{X : Hom(T, X) = 0}`` on the ground set."""
        out = 0
        for x in range(self.size):
            if all(self.homdim[t][x] == 0 for t in bits(T)):
                out |= 1 << x
        return out

    def left_orthogonal(self, F: int) -> int:
        """``{X : Hom(X, F) = 0}`` on the ground set."""
        out = 0
        for x in range(self.size):
            if all(self.homdim[x][f] == 0 for f in bits(F)):
                out |= 1 << x
        return out

    # ------------------------------------------------------------- enumerate
    @cached_property
    def classes(self) -> list[int]:
        """All torsion classes via next-closure, in increasing bitmask order."""
        out = []
        A = self.torsion_closure(0)
        out.append(A)
        while A != self.full:
            for i in range(self.size):
                if (A >> i) & 1:
                    continue
                high = A & ~((1 << (i + 1)) - 1)
                B = self.torsion_closure(high | (1 << i))
                if B & ~((1 << (i + 1)) - 1) == high:
                    A = B
                    break
            else:
                break
            out.append(A)
        return out

    @cached_property
    def index(self) -> dict[int, int]:
        return {m: k for k, m in enumerate(self.classes)}

    def torsion_class(self, k: int) -> TorsionClass:
        return TorsionClass(k, self.classes[k])

    def pair(self, k: int) -> TorsionPairFin:
        return TorsionPairFin(self.torsion_class(k), self.torsionfree(self.classes[k]))

    def id_of(self, mask: int) -> int:
        if mask not in self.index:
            raise TheoremViolation("torsion-class", f"{self.names(mask)} is not an enumerated torsion class")
        return self.index[mask]

    def names(self, mask: int) -> list[str]:
        return [self.alg.name_of(i) for i in bits(mask)]

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.classes) - 1

    def leq(self, u: int, t: int) -> bool:
        a, b = self.classes[u], self.classes[t]
        return a & b == a

    def meet(self, ids: Sequence[int]) -> int:
        m = self.full
        for k in ids:
            m &= self.classes[k]
        return self.id_of(m)

    def join(self, ids: Sequence[int]) -> int:
        m = 0
        for k in ids:
            m |= self.classes[k]
        return self.id_of(self.torsion_closure(m))

    # ------------------------------------------------------------------ hasse
    def simple_objects(self, W: int) -> list[int]:
        """Members of ``W`` without a proper nonzero subobject inside ``add(W)``."""
        out = []
        for x in bits(W):
            X = self.alg.ground[x]
            simple = True
            for w in self.alg.submodules(X):
                if w.total_dim == 0 or w.is_whole():
                    continue
                sub = self.alg.decompose(self.alg.sub(w)[0])
                if any(not (W >> s) & 1 for s in sub):
                    continue
                quo = self.alg.decompose(self.alg.quotient(w)[0])
                if all((W >> q) & 1 for q in quo):
                    simple = False
                    break
            if simple:
                out.append(x)
        return out

    @cached_property
    def arrows(self) -> list[HasseArrow]:
        """Covering relations ``upper -> lower`` with their brick labels."""
        cls = self.classes
        out = []
        for t, T in enumerate(cls):
            for u, U in enumerate(cls):
                if u == t or U & T != U:
                    continue
                if any(w not in (u, t) and U & W == U and W & T == W for w, W in enumerate(cls)):
                    continue
                W = T & self.torsionfree(U)
                simples = [x for x in self.simple_objects(W) if self.homdim[x][x] == 1]
                if len(simples) != 1:
                    raise TheoremViolation(
                        "cover-label-uniqueness",
                        f"cover {t}->{u} has {len(simples)} simple bricks in t∩v = {self.names(W)}",
                    )
                out.append(HasseArrow(t, u, simples[0]))
        return sorted(out, key=lambda a: (a.upper, a.lower))

    def arrows_below(self, k: int) -> list[HasseArrow]:
        return [a for a in self.arrows if a.upper == k]

    def arrows_above(self, k: int) -> list[HasseArrow]:
        return [a for a in self.arrows if a.lower == k]

    def almost_torsion_modules(self, k: int) -> tuple[list[int], list[int]]:
        """(torsionfree almost torsion, torsion almost torsionfree) bricks for class ``k``."""
        tf = sorted(a.label for a in self.arrows_above(k))
        tat = sorted(a.label for a in self.arrows_below(k))
        return tf, tat

    # ------------------------------------------------------------------- filt
    def filt_membership(self, B_set: Iterable[int], M: Representation) -> bool:
        """Whether ``M`` has a finite filtration with factors in ``B_set``."""
        B_set = sorted(set(B_set))
        if M.is_zero():
            return True
        for i, X in enumerate(self.alg.ground):
            if X is M:
                key = (tuple(B_set), i)
                if key not in self._filt_cache:
                    self._filt_cache[key] = self._filt(B_set, M)
                return self._filt_cache[key]
        return self._filt(B_set, M)

    def _filt(self, B_set: list[int], M: Representation) -> bool:
        if M.is_zero():
            return True
        for w in self.alg.submodules(M):
            if w.total_dim == 0:
                continue
            for b in B_set:
                B = self.alg.ground[b]
                if B.dims != w.dims:
                    continue
                U, _ = self.alg.sub(w)
                if self.alg.is_isomorphic(U, B) and self._filt(B_set, self.alg.quotient(w)[0]):
                    return True
        return False

    # ------------------------------------------------------------------- wide
    def is_semibrick(self, B_set: Sequence[int]) -> bool:
        return all(
            self.homdim[a][b] == (1 if a == b else 0) for a in B_set for b in B_set
        )

    def wide_interval_check(self, u: int, t: int) -> Optional[list[int]]:
        """The semibrick of the wide interval ``[u, t]``, or ``None`` when it is not wide."""
        if not self.leq(u, t):
            raise InputError(f"class {u} is not below class {t}")
        U, T = self.classes[u], self.classes[t]
        W = T & self.torsionfree(U)
        B_set = sorted({a.label for a in self.arrows_above(u) if self.leq(a.upper, t)})
        if not self.is_semibrick(B_set):
            raise TheoremViolation("cover-labels-semibrick", f"labels above class {u} are not a semibrick")
        if any(not (W >> b) & 1 for b in B_set):
            return None
        for x in bits(W):
            if not self.filt_membership(B_set, self.alg.ground[x]):
                return None
        return B_set

    def wide_intervals(self) -> list[tuple[int, int, list[int]]]:
        out = []
        for u in range(len(self.classes)):
            for t in range(len(self.classes)):
                if self.leq(u, t):
                    sb = self.wide_interval_check(u, t)
                    if sb is not None:
                        out.append((u, t, sb))
        return out

    # ---------------------------------------------------------- bricks / cmi
    def bricks(self) -> list[int]:
        return [i for i in range(self.size) if self.homdim[i][i] == 1]

    def cmi_classes(self) -> list[int]:
        return [k for k in range(len(self.classes)) if len(self.arrows_above(k)) == 1]

    def brick_of_cmi(self, k: int) -> int:
        above = self.arrows_above(k)
        if len(above) != 1:
            raise InputError(f"class {k} is not completely meet irreducible")
        B = above[0].label
        if self.left_orthogonal(1 << B) != self.classes[k]:
            raise TheoremViolation(
                "cmi-cogenerated-by-brick",
                f"class {k} differs from the class cogenerated by {self.alg.name_of(B)}",
            )
        return B

    def grain_of_brick(self, B: int) -> int:
        """The grain attached to brick ``B``: the envelope of ``B`` in the orthogonal of its torsionfree class."""
        from .complexes import ComplexCategory, Point

        alg = self.alg
        if self.homdim[B][B] != 1:
            raise InputError(f"{alg.name_of(B)} is not a brick")
        u = self.left_orthogonal(1 << B)
        v = self.torsionfree(u)
        envelope_class = [x for x in range(self.size) if all(alg.ext_ground(f, x) == 0 for f in bits(v))]
        env = alg.min_left_approx(alg.ground[B], envelope_class)
        if not env.map.is_mono():
            raise TheoremViolation("grain-envelope", f"envelope of {alg.name_of(B)} is not injective")
        coker, _ = alg.quotient(alg.image(env.map))
        if any(not (v >> c) & 1 for c in alg.decompose(coker)):
            raise TheoremViolation("grain-envelope", f"cokernel of the envelope of {alg.name_of(B)} leaves v_B")
        if len(env.summands) != 1:
            raise TheoremViolation("grain-indecomposable", f"envelope of {alg.name_of(B)} is decomposable")
        N = env.summands[0]
        cc = ComplexCategory(alg)
        mu = cc.complex_of(Point("copres", N))
        if cc.hom1(mu, mu) != 0:
            raise TheoremViolation("grain-rigid", f"copresentation of {alg.name_of(N)} is not rigid")
        tN = self.left_orthogonal(1 << N)
        k = self.id_of(tN)
        above = self.arrows_above(k)
        if len(above) != 1 or above[0].label != B:
            raise TheoremViolation("brick-grain-roundtrip", f"grain {alg.name_of(N)} does not return to {alg.name_of(B)}")
        return N

    # ------------------------------------------------------------- semistable
    def theta_value(self, theta: Sequence[int], M: Representation) -> int:
        return sum(
            c * self.alg.hom_dim(M, I) for c, I in zip(theta, self.alg.injectives) if c
        )

    def semistable_pairs(self, theta: Sequence[int]) -> SemistableResult:
        theta = tuple(int(c) for c in theta)
        if len(theta) != self.alg.n:
            raise InputError(f"g-vector needs {self.alg.n} entries, got {len(theta)}")
        t_strict = t_bar = f_strict = f_bar = 0
        for x, X in enumerate(self.alg.ground):
            subs = self.alg.submodules(X)
            quo_vals = [self.theta_value(theta, self.alg.quotient(w)[0]) for w in subs if not w.is_whole()]
            sub_vals = [self.theta_value(theta, self.alg.sub(w)[0]) for w in subs if w.total_dim]
            if all(q <= 0 for q in quo_vals):
                t_bar |= 1 << x
            if all(q < 0 for q in quo_vals):
                t_strict |= 1 << x
            if all(s >= 0 for s in sub_vals):
                f_bar |= 1 << x
            if all(s > 0 for s in sub_vals):
                f_strict |= 1 << x
        for label, mask in (("t_strict", t_strict), ("t_bar", t_bar)):
            if mask not in self.index:
                raise TheoremViolation("semistable-torsion", f"{label} = {self.names(mask)} is not a torsion class")
        if self.torsionfree(t_bar) != f_strict or self.torsionfree(t_strict) != f_bar:
            raise TheoremViolation("semistable-torsion-pairs", "strict/weak classes do not pair up")
        if t_strict & t_bar != t_strict:
            raise TheoremViolation("semistable-order", "t_strict is not contained in t_bar")
        sb = self.wide_interval_check(self.index[t_strict], self.index[t_bar])
        if sb is None:
            raise TheoremViolation("semistable-wide", f"[t_strict, t_bar] is not wide for theta={list(theta)}")
        return SemistableResult(theta, t_strict, t_bar, f_strict, f_bar, sb)
