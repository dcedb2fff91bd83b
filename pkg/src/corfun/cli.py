"""Command-line front end.

Exit codes: 0 ok, 1 usage, 2 validation, 3 budget, 4 invariant failure.
Failures print one JSON line {"error": kind, "code": n, "message": ...} on stderr.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys

from .errors import BudgetExceeded, CorfunError, InvariantFailure, ValidationError


class UsageError(CorfunError):
    exit_code = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


_KINDS = {1: "usage", 2: "validation", 3: "budget", 4: "invariant"}


# --- input helpers -----------------------------------------------------------

def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ValidationError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _load_poset(args):
    from .poset import Poset, named_poset
    if getattr(args, "poset", None):
        return Poset.from_json(_read_json(args.poset))
    if getattr(args, "named_poset", None):
        return named_poset(args.named_poset)
    raise UsageError("give --poset FILE or --named-poset NAME")


def _load_lattice(args):
    """--name catalog entry, or --lattice FILE-or-name."""
    from .catalog import lattice_by_name
    from .lattice import MarkedLattice, lattice_from_json
    source = getattr(args, "lattice", None)
    if source and os.path.exists(source):
        return MarkedLattice(lattice_from_json(_read_json(source)))
    name = getattr(args, "name", None) or source
    if not name:
        raise UsageError("give --name NAME or --lattice FILE")
    return lattice_by_name(name)


def _x_range(text):
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad --x value {text!r}; use N or A..B") from None
    if lo < 0 or hi < lo:
        raise UsageError(f"bad --x range {text!r}")
    return list(range(lo, hi + 1))


def _lattice_for_poset(P, kind):
    from .lattice import ideal_lattice
    from .quotients import K_of
    return ideal_lattice(P) if kind == "I" else K_of(P)


def _emit_json(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


def _matrix_text(M):
    return "\n".join(" ".join(f"{v:d}" for v in row) for row in M.rows)


# --- poset -------------------------------------------------------------------

def cmd_poset(args):
    from .poset import _bits
    P = _load_poset(args)
    lab = P.elements.labels
    if args.action == "ideals":
        ideals = P.upper_ideals() if args.upper else P.lower_ideals()
        _emit_json({"count": len(ideals), "ideals": [[lab[i] for i in _bits(A)] for A in ideals]})
    elif args.action == "auts":
        auts = P.automorphisms(bound=max(8, P.n))
        _emit_json({"order": len(auts), "automorphisms": [[lab[i] for i in s.images] for s in auts]})
    elif args.action == "mobius":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["a", "b", "mu"])
        for a in range(P.n):
            for b in range(P.n):
                if P.le(a, b):
                    w.writerow([lab[a], lab[b], P.mobius(a, b)])
    return 0


# --- lattice -----------------------------------------------------------------

def cmd_lattice(args):
    from .lattice import MarkedLattice
    from .quotients import K_of, L_of, fibers_table, sandwich_check
    if args.action == "build":
        if not args.lattice:
            raise UsageError("lattice build needs --lattice FILE")
        from .lattice import lattice_from_json
        data = _read_json(args.lattice)
        L = lattice_from_json(data)
        L.check_laws()
        T = MarkedLattice(L)
        out = T.summary()
        out["laws"] = "ok"
        _emit_json(out)
    elif args.action == "info":
        _emit_json(_load_lattice(args).summary())
    elif args.action == "dot":
        sys.stdout.write(_load_lattice(args).to_dot())
    elif args.action == "quotients":
        rep = sandwich_check(_load_lattice(args))
        _emit_json(rep)
        if not all(rep.values()):
            raise InvariantFailure("sandwich check failed")
    elif args.action == "closure":
        P = _load_poset(args)
        C = L_of(P) if args.mode == "L" else K_of(P)
        C.closure.verify()
        if args.format == "dot":
            sys.stdout.write(C.to_dot(name=f"{args.mode}_of_E"))
            print("// fibers of I_down(E) -> " + args.mode)
            for t, fib in fibers_table(C, C.gens):
                print(f"// {t}: {', '.join(fib)}")
        else:
            out = C.summary()
            out["mode"] = args.mode
            out["elements"] = list(C.labels)
            out["fibers"] = {t: fib for t, fib in fibers_table(C, C.gens)}
            _emit_json(out)
    return 0


# --- endo --------------------------------------------------------------------

def cmd_endo(args):
    from .total_order import structure_check, summary_text
    if args.n < 0:
        raise ValidationError("--n must be non-negative")
    print(summary_text(args.n))
    if not structure_check(args.n)["ok"]:
        raise InvariantFailure("end algebra identities failed")
    return 0


# --- forest ------------------------------------------------------------------

def _parse_parents(text):
    try:
        return [None if p.strip() in ("n", "-", "") else int(p) for p in text.split(",")]
    except ValueError:
        raise UsageError(f"bad --parents {text!r}; use e.g. n,0,0,1") from None


def cmd_forest(args):
    from .forest import Forest, forest_suite, geodesic_idempotents, graph_of_lattice, u_T
    if args.parents:
        F = Forest(_parse_parents(args.parents))
        T = None
    else:
        T = _load_lattice(args)
        F, _ = graph_of_lattice(T)
    if args.action == "build":
        sys.stdout.write(F.to_dot())
        return 0
    leaves = F.leaves
    if args.leaves:
        by_label = {l: i for i, l in enumerate(F.labels)}
        try:
            leaves = [by_label[s] for s in args.leaves.split(",")]
        except KeyError as exc:
            raise ValidationError(f"unknown vertex {exc.args[0]}") from None
    idem = geodesic_idempotents(F, leaves)
    print(f"# u_B for B = {[F.labels[x] for x in leaves]}")
    print(idem["u_B"].dump())
    print(f"# v_B")
    print(idem["v_B"].dump())
    if T is not None:
        print("# u_T")
        print(u_T(T).dump())
    rep = forest_suite(F)
    print("# identities: " + " ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in rep.items()))
    if not all(rep.values()):
        raise InvariantFailure("forest identities failed")
    return 0


# --- functor -----------------------------------------------------------------

def cmd_functor(args):
    from . import functor as fe
    if args.action == "rank":
        P = _load_poset(args)
        T = _lattice_for_poset(P, args.kind) if (args.bruteforce or args.basis) else None
        xs = _x_range(args.x)
        if args.bruteforce:
            for x in xs:
                fe.check_matrix_budget(T, x)
        if args.basis:
            for x in xs:
                fe.check_budget(len(T.G) ** x, f"B_X at |X|={x}")
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["x", "formula", "bruteforce", "basis_count"])
        for x in xs:
            f = fe.rank_formula(P, x)
            b = fe.rank_bruteforce(P, T, x) if args.bruteforce else ""
            if args.bruteforce and b != f:
                w.writerow([x, f, b, ""])
                sys.stdout.flush()
                raise InvariantFailure(f"x={x}: formula {f} differs from matrix rank {b}")
            c = len(fe.basis_BX(T, x)) if T is not None else fe.surjection_counts(x, P.n, len(_g(P)))["ss"]
            w.writerow([x, f, b, c])
        return 0
    if args.action == "smith":
        P = _load_poset(args)
        T = _lattice_for_poset(P, args.kind)
        M, _, _ = fe.matrix_N(P, T, int(args.x))
        d = fe.smith(M)
        print(json.dumps({"x": int(args.x), "shape": list(M.shape()), "divisors": d}))
        return 0
    if args.action == "basis":
        T = _load_lattice(args)
        lab = T.labels
        B = fe.basis_BX(T, int(args.x))
        print(f"# {len(B)} maps")
        for f in B:
            print(" ".join(lab[t] for t in f))
        return 0
    if args.action == "action":
        from .relation import Relation
        T = _load_lattice(args)
        if not args.corr:
            raise UsageError("functor action needs --corr FILE")
        U = Relation.from_json(_read_json(args.corr))
        M, BY, BX = fe.FundamentalAction(T).matrix(U)
        lab = T.labels
        print(f"# rows B_Y ({len(BY)}), columns B_X ({len(BX)})")
        print("# B_X: " + " | ".join(" ".join(lab[t] for t in f) for f in BX))
        print("# B_Y: " + " | ".join(" ".join(lab[t] for t in f) for f in BY))
        if M.nrows:
            print(_matrix_text(M))
        return 0
    if args.action == "gamma-span":
        from .lattice import ideal_lattice
        P = _load_poset(args)
        T = ideal_lattice(P)
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["x", "span_rank", "formula_opposite"])
        for x in _x_range(args.x):
            s = fe.span_rank_gamma(T, x)
            f = fe.rank_formula(P.opposite(), x)
            w.writerow([x, s, f])
            if s != f:
                sys.stdout.flush()
                raise InvariantFailure(f"x={x}: gamma span {s} differs from {f}")
        return 0
    raise UsageError(f"unknown functor action {args.action}")


def _g(P):
    from .lattice import ideal_lattice
    return ideal_lattice(P).G


# --- module ------------------------------------------------------------------

def cmd_module(args):
    from .module import module_report
    P = _load_poset(args)
    if P.n > 5:
        raise ValidationError("module check is capped at |E| <= 5")
    rep = module_report(P, samples=args.samples)
    _emit_json(rep)
    if not rep["ok"]:
        raise InvariantFailure("fundamental module checks failed")
    return 0


# --- verify ------------------------------------------------------------------

def cmd_verify(args):
    from .verify import decomposition_identities, invariants
    if args.action == "examples19":
        rows = decomposition_identities(args.x_max)
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["example", "x", "lhs", "rhs", "ok"])
        for r in rows:
            w.writerow([r["example"], r["x"], r["lhs"], r["rhs"], "ok" if r["ok"] else "FAIL"])
        bad = [r for r in rows if not r["ok"]]
        if bad:
            raise InvariantFailure(f"{len(bad)} identities failed, first {bad[0]['example']} x={bad[0]['x']}")
        return 0
    rep = invariants(seed=args.seed)
    for name, ok in rep.items():
        print(f"{'ok  ' if ok else 'FAIL'} {name}")
    if not all(rep.values()):
        raise InvariantFailure("invariant checks failed: " + ",".join(k for k, v in rep.items() if not v))
    return 0


# --- parser ------------------------------------------------------------------

def build_parser():
    p = _Parser(prog="corfun", description="Correspondence functor evaluations on finite lattices.")
    sub = p.add_subparsers(dest="cmd", parser_class=_Parser)
    sub.required = True

    def poset_opts(sp):
        sp.add_argument("--poset", help="poset JSON file")
        sp.add_argument("--named-poset", help="antichainN, chainN, v, lambda, chainpoint, zigzag")

    def lattice_opts(sp):
        sp.add_argument("--name", help="catalog lattice: lozenge, m3, n5, c, cop, p32, chainN, booleanN")
        sp.add_argument("--lattice", help="lattice JSON file (or a catalog name)")

    sp = sub.add_parser("poset")
    sp.add_argument("action", choices=["ideals", "auts", "mobius"])
    poset_opts(sp)
    sp.add_argument("--upper", action="store_true", help="upper ideals instead of lower ones")
    sp.set_defaults(func=cmd_poset)

    sp = sub.add_parser("lattice")
    sp.add_argument("action", choices=["build", "info", "closure", "quotients", "dot"])
    lattice_opts(sp)
    poset_opts(sp)
    sp.add_argument("--mode", choices=["L", "K"], default="K")
    sp.add_argument("--format", choices=["json", "dot"], default="json")
    sp.set_defaults(func=cmd_lattice)

    sp = sub.add_parser("endo")
    sp.add_argument("action", choices=["total"])
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_endo)

    sp = sub.add_parser("forest")
    sp.add_argument("action", choices=["build", "idempotents"])
    lattice_opts(sp)
    sp.add_argument("--parents", help="parent list, n for roots, e.g. n,0,0,1")
    sp.add_argument("--leaves", help="comma separated leaf labels (default: all leaves)")
    sp.set_defaults(func=cmd_forest)

    sp = sub.add_parser("functor")
    sp.add_argument("action", choices=["rank", "smith", "basis", "action", "gamma-span"])
    poset_opts(sp)
    lattice_opts(sp)
    sp.add_argument("--x", default="0..3", help="N or A..B")
    sp.add_argument("--bruteforce", action="store_true")
    sp.add_argument("--basis", action="store_true", help="count B_X by enumeration instead of ss(X,E,G)")
    sp.add_argument("--kind", choices=["I", "K"], default="I", help="lattice with Irr = poset: ideals or K")
    sp.add_argument("--corr", help="relation JSON file Y <- X")
    sp.set_defaults(func=cmd_functor)

    sp = sub.add_parser("module")
    sp.add_argument("action", choices=["check"])
    poset_opts(sp)
    sp.add_argument("--samples", type=int, default=10_000)
    sp.set_defaults(func=cmd_module)

    sp = sub.add_parser("verify")
    sp.add_argument("action", choices=["examples19", "invariants"])
    sp.add_argument("--x-max", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)
    return p


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except CorfunError as exc:
        code = exc.exit_code
        msg = str(exc).replace("\n", " ")
    except (ValueError, KeyError, TypeError) as exc:
        # malformed input that slipped past the schema checks
        code, msg = 2, f"{type(exc).__name__}: {exc}".replace("\n", " ")
    print(json.dumps({"error": _KINDS[code], "code": code, "message": msg}), file=sys.stderr)
    return code


def main():
    random.seed(0)
    sys.exit(run())


if __name__ == "__main__":
    main()
