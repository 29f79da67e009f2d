"""Symbolic model of the Kronecker algebra and its infinite dimensional points.

Nothing here carries matrices.  Hom and Ext between points are decided by
rule tables built from the standard description of the category of Kronecker
modules (preprojective component, homogeneous tubes indexed by the projective
line, preinjective component, one Pruefer and one adic module per tube, one
generic module).

Conventions: ``Preproj(0)`` is the simple projective and ``Preinj(0)`` the
simple injective; ``tau`` moves preprojectives and preinjectives two steps
and fixes every homogeneous tube.  Vertex 1 is the sink and vertex 2 the
source, so preprojectives have dimension vector ``(n+1, n)`` and
preinjectives ``(n, n+1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import InputError, TheoremViolation

DEFAULT_LABELS = ("0", "1", "inf")

PREPROJ = "Preproj"
PREINJ = "Preinj"
REGULAR = "Regular"
PRUEFER = "Pruefer"
ADIC = "Adic"
GENERIC = "Generic"

INFINITE = (PRUEFER, ADIC, GENERIC)
_ORDER = {PREPROJ: 0, REGULAR: 1, PREINJ: 2, PRUEFER: 3, ADIC: 4, GENERIC: 5}

RQ_P = "RQ_P"  # torsion add(r u q), torsionfree add(p)
Q_PR = "Q_PR"  # torsion add(q), torsionfree add(p u r)


@dataclass(frozen=True)
class KPoint:
    tag: str
    index: int = 0
    label: str = ""

    def __post_init__(self):
        if self.tag not in _ORDER:
            raise InputError(f"unknown Kronecker point tag {self.tag!r}")
        if self.index < 0 or (self.tag == REGULAR and self.index < 1):
            raise InputError(f"invalid index {self.index} for {self.tag}")

    @property
    def infinite(self) -> bool:
        return self.tag in INFINITE

    def sort_key(self):
        return (_ORDER[self.tag], self.label, self.index)

    def __str__(self) -> str:
        if self.tag == GENERIC:
            return "G"
        if self.tag == REGULAR:
            return f"Regular({self.label},{self.index})"
        if self.tag in (PRUEFER, ADIC):
            return f"{self.tag}({self.label})"
        return f"{self.tag}({self.index})"


def preproj(n: int) -> KPoint:
    return KPoint(PREPROJ, n)


def preinj(n: int) -> KPoint:
    return KPoint(PREINJ, n)


def regular(label: str, depth: int = 1) -> KPoint:
    return KPoint(REGULAR, depth, label)


def pruefer(label: str) -> KPoint:
    return KPoint(PRUEFER, 0, label)


def adic(label: str) -> KPoint:
    return KPoint(ADIC, 0, label)


GENERIC_POINT = KPoint(GENERIC)


def _sorted(points: Iterable[KPoint]) -> list[KPoint]:
    return sorted(points, key=KPoint.sort_key)


# ------------------------------------------------------------------ Hom table
def k_hom_nonzero(X: KPoint, Y: KPoint) -> bool:
    """Whether ``Hom(X, Y)`` is nonzero."""
    a, b = X.tag, Y.tag
    if a == PREPROJ:
        if b == PREPROJ:
            return X.index <= Y.index
        if b == PREINJ:
            # simple projective and simple injective live at different vertices
            return not (X.index == 0 and Y.index == 0)
        return True  # preprojectives map to every module outside p of lower index
    if a == REGULAR:
        if b in (REGULAR, PRUEFER):
            return X.label == Y.label  # distinct tubes are orthogonal
        return b == PREINJ  # nothing into p, adics or G
    if a == PREINJ:
        return b == PREINJ and X.index >= Y.index
    if a == PRUEFER:
        if b == PRUEFER:
            return X.label == Y.label
        return b == PREINJ  # divisible: no maps to p, r, adics or G
    if a == ADIC:
        if b in (REGULAR, PRUEFER, ADIC):
            return X.label == Y.label  # adic surjects onto its tube's simple
        return b in (PREINJ, GENERIC)
    # generic: torsionfree and divisible
    return b in (PREINJ, PRUEFER, GENERIC)


def _tau(X: KPoint) -> Optional[KPoint]:
    if X.tag == PREPROJ:
        return preproj(X.index - 2) if X.index >= 2 else None
    if X.tag == PREINJ:
        return preinj(X.index + 2)
    return X


def _tau_inv(Y: KPoint) -> Optional[KPoint]:
    if Y.tag == PREINJ:
        return preinj(Y.index - 2) if Y.index >= 2 else None
    if Y.tag == PREPROJ:
        return preproj(Y.index + 2)
    return Y


def k_ext_nonzero(X: KPoint, Y: KPoint) -> bool:
    """Whether ``Ext^1(X, Y)`` is nonzero."""
    if not X.infinite:
        # Auslander-Reiten formula Ext^1(X, Y) = D Hom(Y, tau X), X finite dimensional
        t = _tau(X)
        return t is not None and k_hom_nonzero(Y, t)
    if not Y.infinite:
        # dual form Ext^1(X, Y) = D Hom(tau^- Y, X), Y finite dimensional
        t = _tau_inv(Y)
        return t is not None and k_hom_nonzero(t, X)
    # among G, Pruefers and adics only Ext^1(Pruefer(l), Adic(l)) survives
    return X.tag == PRUEFER and Y.tag == ADIC and X.label == Y.label


# ------------------------------------------------------------ torsion pairs
@dataclass(frozen=True)
class KTorsionPair:
    name: str
    torsion: tuple[str, ...]
    torsionfree: tuple[str, ...]

    def in_torsion(self, X: KPoint) -> bool:
        return not X.infinite and X.tag in self.torsion

    def in_torsionfree(self, X: KPoint) -> bool:
        return not X.infinite and X.tag in self.torsionfree


PAIRS = {
    RQ_P: KTorsionPair(RQ_P, (REGULAR, PREINJ), (PREPROJ,)),
    Q_PR: KTorsionPair(Q_PR, (PREINJ,), (PREPROJ, REGULAR)),
}


def pair_named(name: str) -> KTorsionPair:
    try:
        return PAIRS[name]
    except KeyError:
        raise InputError(f"unknown Kronecker torsion pair {name!r}; expected one of {sorted(PAIRS)}") from None


class KroneckerModel:
    """The symbolic spectrum sampled at a finite set of tube labels."""

    def __init__(self, labels: Sequence[str] = DEFAULT_LABELS, depth: int = 3, reach: int = 5):
        labels = list(labels)
        if not labels or len(set(labels)) != len(labels):
            raise InputError("tube labels must be nonempty and distinct")
        self.labels = labels
        self.depth = depth
        self.reach = reach

    def finite_points(self) -> list[KPoint]:
        pts = [preproj(n) for n in range(self.reach)] + [preinj(n) for n in range(self.reach)]
        pts += [regular(l, m) for l in self.labels for m in range(1, self.depth + 1)]
        return _sorted(pts)

    def infinite_points(self) -> list[KPoint]:
        return _sorted([pruefer(l) for l in self.labels] + [adic(l) for l in self.labels] + [GENERIC_POINT])

    def sample(self) -> list[KPoint]:
        return self.finite_points() + self.infinite_points()

    def check_orthogonality(self, tp: KTorsionPair) -> None:
        for X in self.finite_points():
            for Y in self.finite_points():
                if tp.in_torsion(X) and tp.in_torsionfree(Y) and k_hom_nonzero(X, Y):
                    raise TheoremViolation("kronecker-orthogonality", f"{tp.name}: Hom({X}, {Y}) != 0")

    # ------------------------------------------------------------ operations
    def k_max_rigid(self, name: str) -> list[KPoint]:
        tp = pair_named(name)
        self.check_orthogonality(tp)
        if name == Q_PR:
            pts = [GENERIC_POINT] + [pruefer(l) for l in self.labels]
        else:
            pts = [GENERIC_POINT] + [adic(l) for l in self.labels]
        torsion = [X for X in self.finite_points() if tp.in_torsion(X)]
        for X in pts:
            if any(k_hom_nonzero(T, X) for T in torsion):
                raise TheoremViolation("kronecker-max-rigid", f"{name}: {X} is not in the torsionfree side")
            for Y in pts:
                if k_ext_nonzero(X, Y):
                    raise TheoremViolation("kronecker-max-rigid", f"{name}: Ext^1({X}, {Y}) != 0")
        # sampled maximality among points of the torsionfree side
        for Z in self.sample():
            if Z in pts or any(k_hom_nonzero(T, Z) for T in torsion):
                continue
            if not any(k_ext_nonzero(Z, X) or k_ext_nonzero(X, Z) for X in pts + [Z]):
                raise TheoremViolation("kronecker-max-rigid", f"{name}: {Z} extends the rigid set")
        return _sorted(pts)

    def k_almost_torsion(self, name: str) -> tuple[list[KPoint], list[KPoint]]:
        pair_named(name)
        simples = [regular(l, 1) for l in self.labels]
        if name == RQ_P:
            return [GENERIC_POINT], simples
        return simples, []

    def tags(self, name: str) -> dict[KPoint, str]:
        """Neg-isolated classification of the maximal rigid set of a named pair.

        A tf-almost-torsion point is its own envelope when it is already in the
        set (G for RQ_P); a simple regular S is enveloped by its Pruefer module.
        A torsion-almost-tf simple regular S is covered by its adic module.
        """
        tf, tat = self.k_almost_torsion(name)
        out = {X: "plain" for X in self.k_max_rigid(name)}
        for F in tf:
            env = F if F in out else pruefer(F.label)
            if env not in out:
                raise TheoremViolation("kronecker-neg-isolated", f"{name}: envelope of {F} is not in the set")
            out[env] = "critical"
        for T in tat:
            ker = adic(T.label)
            if ker not in out:
                raise TheoremViolation("kronecker-neg-isolated", f"{name}: cover kernel of {T} is not in the set")
            out[ker] = "special"
        return out

    def semibrick(self) -> list[KPoint]:
        """Simple objects of ``t ∩ v`` for the interval ``[Q_PR, RQ_P]``."""
        t, v = PAIRS[RQ_P], PAIRS[Q_PR]
        W = [X for X in self.finite_points() if t.in_torsion(X) and v.in_torsionfree(X)]
        # a simple object of a tube is its depth one module
        simple = [X for X in W if not any(Y != X and Y.label == X.label and Y.index < X.index for Y in W)]
        for X in simple:
            for Y in simple:
                if X != Y and k_hom_nonzero(X, Y):
                    raise TheoremViolation("kronecker-semibrick", f"Hom({X}, {Y}) != 0")
        return _sorted(simple)

    def k_mutate(self) -> dict:
        N_u, N_t = set(self.k_max_rigid(Q_PR)), set(self.k_max_rigid(RQ_P))
        fixed = _sorted(N_u & N_t)
        swaps = []
        for l in self.labels:
            P, A = pruefer(l), adic(l)
            if P not in N_u - N_t or A not in N_t - N_u:
                raise TheoremViolation("kronecker-mutation", f"tube {l}: exchange is not Pruefer to adic")
            S = regular(l, 1)
            if not (k_ext_nonzero(P, S) and k_ext_nonzero(S, A)):
                raise TheoremViolation("kronecker-mutation", f"tube {l}: approximation sequences do not exist")
            swaps.append({
                "label": l,
                "critical": str(P),
                "special": str(A),
                "critical_sequence": f"0 -> {S} -> {P} -> {P} -> 0",
                "special_sequence": f"0 -> {A} -> {A} -> {S} -> 0",
            })
        if len(swaps) != len(N_u - N_t) or len(N_u - N_t) != len(N_t - N_u):
            raise TheoremViolation("kronecker-mutation", "exchanged sets have unequal size")
        irreducible = len(swaps) == 1
        if len(self.labels) > 1 and irreducible:
            raise TheoremViolation("kronecker-mutation", "several tubes but a single exchanged point")
        back = (N_t - {adic(l) for l in self.labels}) | {pruefer(l) for l in self.labels}
        if back != N_u:
            raise TheoremViolation("kronecker-mutation", "mutating back does not return the original set")
        return {
            "from": Q_PR,
            "to": RQ_P,
            "swaps": swaps,
            "fixed": [str(X) for X in fixed],
            "irreducible": irreducible,
            "wide": True,
            "semibrick": [str(X) for X in self.semibrick()],
        }

    def k_theta_interval(self, theta: Sequence[int]) -> dict:
        theta = tuple(int(x) for x in theta)
        if theta != (1, -1):
            raise InputError(f"theta {list(theta)} is not supported by the Kronecker model; only [1, -1] is")
        # dimension vectors over (sink, source); quotients of q stay in q and of r stay in r or q
        dims = {PREPROJ: lambda n: (n + 1, n), PREINJ: lambda n: (n, n + 1)}

        def value(X: KPoint) -> int:
            if X.tag == REGULAR:
                d = (X.index, X.index)
            else:
                d = dims[X.tag](X.index)
            return theta[0] * d[0] + theta[1] * d[1]

        fin = self.finite_points()
        strict = {X.tag for X in fin if value(X) < 0}
        weak = {X.tag for X in fin if value(X) <= 0}
        if strict != {PREINJ} or weak != {PREINJ, REGULAR}:
            raise TheoremViolation("kronecker-theta", f"sign pattern {sorted(strict)} / {sorted(weak)} unexpected")
        return {
            "theta": list(theta),
            "lower": Q_PR,
            "upper": RQ_P,
            "family": [str(X) for X in self.semibrick()],
            "annotation": "one-parameter family of bricks: the simple regular modules",
        }

    def spectrum(self) -> dict:
        out = {"labels": list(self.labels), "pairs": []}
        for name in (Q_PR, RQ_P):
            tf, tat = self.k_almost_torsion(name)
            tags = self.tags(name)
            out["pairs"].append({
                "name": name,
                "max_rigid": [{"point": str(X), "tag": tags[X]} for X in _sorted(tags)],
                "tf_almost_torsion": [str(X) for X in tf],
                "torsion_almost_tf": [str(X) for X in tat],
            })
        both = set(self.k_max_rigid(Q_PR)) & set(self.k_max_rigid(RQ_P))
        out["intersection"] = [str(X) for X in _sorted(both)]
        return out
