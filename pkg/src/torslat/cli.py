"""Command line entry point: ``torslat <command> [algebra.json] [options]``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .cosilting import CosiltingEngine
from .errors import InputError, TheoremViolation, TorslatError
from .kronecker import DEFAULT_LABELS, KroneckerModel
from .lattice import TorsLattice
from .quiver import DEFAULT_DIM_CAP, DEFAULT_HOM_SCAN_CAP, load_algebra

COMMANDS = ("lattice", "hasse", "labels", "wide", "cosilt", "mutate", "semistable", "bricks", "kronecker")
KRONECKER_ACTIONS = ("spectrum", "mutate", "theta")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors (exit 1); exit 2 is reserved for resource caps."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="torslat", description="Torsion classes and cosilting data of quiver algebras.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("target", nargs="?", help="algebra JSON file, or the action for 'kronecker'")
    ap.add_argument("--theta", type=_int_list, help="g-vector, e.g. -1,1")
    ap.add_argument("--class", dest="class_id", type=int, help="restrict to one torsion class id")
    ap.add_argument("--dot", help="write the Hasse quiver as DOT to this path")
    ap.add_argument("--prime", type=int, help="override the prime of the algebra file")
    ap.add_argument("--dim-cap", type=int, default=DEFAULT_DIM_CAP)
    ap.add_argument("--hom-scan-cap", type=int, default=DEFAULT_HOM_SCAN_CAP)
    ap.add_argument("--labels", help="comma separated tube labels for 'kronecker'")
    return ap


# ----------------------------------------------------------------- emitters
def class_record(lat: TorsLattice, k: int) -> dict:
    return {"id": k, "members": lat.names(lat.classes[k])}


def arrow_record(lat: TorsLattice, a) -> dict:
    return {"upper": a.upper, "lower": a.lower, "label": lat.alg.name_of(a.label)}


def emit_dot(lat: TorsLattice) -> str:
    lines = ["digraph tors {", "  rankdir=TB;"]
    for k in range(len(lat.classes)):
        members = ", ".join(lat.names(lat.classes[k]))
        lines.append(f'  c{k} [label="{k}: {{{members}}}"];')
    for a in lat.arrows:
        lines.append(f'  c{a.upper} -> c{a.lower} [label="{lat.alg.name_of(a.label)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _classes(lat: TorsLattice, class_id: Optional[int]) -> list[int]:
    if class_id is None:
        return list(range(len(lat.classes)))
    if not 0 <= class_id < len(lat.classes):
        raise InputError(f"class id {class_id} out of range 0..{len(lat.classes) - 1}")
    return [class_id]


def _points(eng: CosiltingEngine, pts) -> list[str]:
    return [eng.cc.label(q) for q in sorted(pts)]


# ----------------------------------------------------------------- commands
def run_algebra_command(args, lat: TorsLattice) -> dict:
    alg = lat.alg
    cmd = args.command
    if cmd == "lattice":
        return {"algebra": alg.preset or "explicit", "count": len(lat.classes),
                "classes": [class_record(lat, k) for k in range(len(lat.classes))]}
    if cmd == "hasse":
        return {"classes": [class_record(lat, k) for k in range(len(lat.classes))],
                "arrows": [arrow_record(lat, a) for a in lat.arrows]}
    if cmd == "labels":
        out = []
        for k in _classes(lat, args.class_id):
            tf, tat = lat.almost_torsion_modules(k)
            out.append({"id": k, "tf_almost_torsion": [alg.name_of(x) for x in tf],
                        "torsion_almost_tf": [alg.name_of(x) for x in tat]})
        return {"classes": out}
    if cmd == "wide":
        eng = CosiltingEngine(lat)
        realized = eng.realized_rigid_sets()
        out = []
        for E, (u, t) in sorted(realized.items(), key=lambda kv: kv[1]):
            if eng.closed_rigid_to_wide(E) != (u, t):
                raise TheoremViolation("wide-bijection", f"rigid set of [{u}, {t}] maps to another interval")
            out.append({"lower": u, "upper": t,
                        "semibrick": [alg.name_of(b) for b in lat.wide_interval_check(u, t)],
                        "rigid_set": _points(eng, E)})
        return {"count": len(out), "intervals": out}
    if cmd == "cosilt":
        eng = CosiltingEngine(lat)
        return {"classes": [eng.record(k) for k in _classes(lat, args.class_id)]}
    if cmd == "mutate":
        eng = CosiltingEngine(lat)
        ks = set(_classes(lat, args.class_id))
        out = []
        for a in lat.arrows:
            if a.lower not in ks and a.upper not in ks:
                continue
            up, rec = eng.mutate(a.lower, a)
            down, rec_back = eng.mutate(a.upper, a)
            if down.points != eng.points(a.lower) or up.points != eng.points(a.upper):
                raise TheoremViolation("mutation-involution", f"arrow {a.upper}->{a.lower} does not mutate back")
            out.append({
                **arrow_record(lat, a),
                "lambda": eng.cc.label(rec.lam),
                "rho": eng.cc.label(rec.rho),
                "epsilon": _points(eng, rec.eps),
                "triangle": f"{eng.cc.label(rec.rho)} -> {' + '.join(_points(eng, rec.eps)) or '0'} -> {eng.cc.label(rec.lam)}",
                "inverse_verified": rec_back.lam == rec.lam,
            })
        return {"mutations": out}
    if cmd == "semistable":
        if args.theta is None:
            raise InputError("semistable requires --theta")
        res = lat.semistable_pairs(args.theta)
        return {"theta": list(res.theta),
                "t_strict": lat.names(res.t_strict), "t_bar": lat.names(res.t_bar),
                "f_strict": lat.names(res.f_strict), "f_bar": lat.names(res.f_bar),
                "interval": [lat.index[res.t_strict], lat.index[res.t_bar]],
                "semistable": lat.names(res.semistable),
                "semibrick": [alg.name_of(b) for b in res.semibrick]}
    if cmd == "bricks":
        bricks = lat.bricks()
        cmi = [{"class": k, "members": lat.names(lat.classes[k]), "brick": alg.name_of(lat.brick_of_cmi(k))}
               for k in lat.cmi_classes()]
        grains = [{"brick": alg.name_of(b), "grain": alg.name_of(lat.grain_of_brick(b))} for b in bricks]
        if len(bricks) != len(cmi):
            raise TheoremViolation("bricks-cmi-count", f"{len(bricks)} bricks but {len(cmi)} cmi classes")
        if len({g["grain"] for g in grains}) != len(grains):
            raise TheoremViolation("grain-injective", "two bricks share a grain")
        return {"bricks": [alg.name_of(b) for b in bricks], "cmi": cmi, "grains": grains}
    raise InputError(f"unknown command {cmd!r}")


def run_kronecker(args) -> dict:
    action = args.target or "spectrum"
    if action not in KRONECKER_ACTIONS:
        raise InputError(f"unknown kronecker action {action!r}; expected one of {list(KRONECKER_ACTIONS)}")
    labels = [x.strip() for x in args.labels.split(",")] if args.labels else list(DEFAULT_LABELS)
    model = KroneckerModel(labels)
    if action == "spectrum":
        return model.spectrum()
    if action == "mutate":
        return model.k_mutate()
    return model.k_theta_interval(args.theta if args.theta is not None else (1, -1))


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    # let negative g-vectors such as "--theta -1,1" through argparse
    for i in range(len(argv) - 1):
        if argv[i] == "--theta" and argv[i + 1].startswith("-"):
            argv[i : i + 2] = [f"--theta={argv[i + 1]}", ""]
    args = build_parser().parse_args([a for a in argv if a != ""])
    try:
        if args.command != "semistable" and args.theta is not None and args.command != "kronecker":
            raise InputError("--theta is only valid for 'semistable' and 'kronecker theta'")
        if args.command == "kronecker":
            doc = run_kronecker(args)
        else:
            if not args.target:
                raise InputError(f"'{args.command}' needs an algebra file")
            path = Path(args.target)
            try:
                data = json.loads(path.read_text())
            except FileNotFoundError:
                raise InputError(f"algebra file {path} not found") from None
            except json.JSONDecodeError as exc:
                raise InputError(f"algebra file {path} is not valid JSON: {exc}") from None
            alg = load_algebra(data, prime=args.prime, dim_cap=args.dim_cap, hom_scan_cap=args.hom_scan_cap)
            lat = TorsLattice(alg)
            doc = run_algebra_command(args, lat)
            if args.dot:
                Path(args.dot).write_text(emit_dot(lat))
    except TheoremViolation as exc:
        out.write(json.dumps({"error": "theorem-violation", "statement": exc.statement, "detail": exc.detail}, indent=2) + "\n")
        print(f"torslat: theorem violation: {exc}", file=sys.stderr)
        return exc.exit_code
    except TorslatError as exc:
        kind = "resource" if exc.exit_code == 2 else "input"
        out.write(json.dumps({"error": kind, "detail": str(exc)}, indent=2) + "\n")
        print(f"torslat: {kind} error: {exc}", file=sys.stderr)
        return exc.exit_code
    out.write(json.dumps(doc, indent=2) + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
