"""
Command line interface.

Exit status is 0 on success, 1 when the computation itself fails (for
instance d3 is undefined) and 2 for usage or input errors.  Every command
accepts ``--json`` for machine-readable output carrying the same data.
"""

import argparse
import json
import random
import sys
from fractions import Fraction

from . import kirby, lens, linalg, lutz, sampling
from .diagram import DiagramError, diagram_to_dict, first_homology, linking_matrix
from .diagram import load as load_diagram
from .invariants import (D3Undefined, InfiniteOrder, KnotInComplement,
                         d3_report, gamma, plane_field_fingerprint,
                         rational_classical, spin_structures)


class UsageError(Exception):
    pass


def fmt(x) -> str:
    """Rationals as reduced "a/b", or "n" when integral."""
    return str(Fraction(x))


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def sublink_ids(d, s) -> str:
    return "{" + ", ".join(d.components[i].id for i in s.members) + "}"


def group_json(g) -> dict:
    return {"invariant_factors": list(g.invariant_factors), "free_rank": g.free_rank}


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return fmt(obj)
    raise TypeError(type(obj))


# ---------------------------------------------------------------------------
# input

def parse_diagram(path):
    try:
        return load_diagram(path)
    except FileNotFoundError:
        raise UsageError("%s: file not found" % path) from None
    except DiagramError as e:
        raise UsageError("%s: %s" % (path, e)) from None


def parse_knot(path, n) -> KnotInComplement:
    try:
        with open(path, encoding="utf-8") as f:
            doc = json.load(f)
        knot = KnotInComplement.from_dict(doc)
    except FileNotFoundError:
        raise UsageError("%s: file not found" % path) from None
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise UsageError("%s: malformed knot: %s" % (path, e)) from None
    if len(knot.alpha) != n:
        raise UsageError("%s: alpha has length %d, diagram has %d components"
                         % (path, len(knot.alpha), n))
    return knot


def lens_space(p, q):
    try:
        return lens.LensSpace(p, q)
    except ValueError as e:
        raise UsageError(str(e)) from None


# ---------------------------------------------------------------------------
# commands; each returns (text lines, json object)

def cmd_invariants(args):
    d = parse_diagram(args.diagram)
    f = plane_field_fingerprint(d)
    if len(f.spin) == 1:
        gamma_text = str(f.gamma[0])
    else:
        gamma_text = "; ".join("%s -> %s" % (sublink_ids(d, s), g) for s, g in zip(f.spin, f.gamma))
    text = ["d3 = %s; H1 = %s; spin structures: %d; Gamma = %s"
            % (fmt(f.d3), f.group.describe(), len(f.spin), gamma_text)]
    if f.degenerate:
        text.append("warning: linking matrix is degenerate (H1 has free part)")
    obj = {
        "d3": f.d3,
        "H1": group_json(f.group),
        "spin_structures": [list(s.sublink) for s in f.spin],
        "gamma": [list(g.coords) for g in f.gamma],
        "euler": list(f.euler.coords),
        "degenerate": f.degenerate,
    }
    return text, obj


def cmd_homology(args):
    d = parse_diagram(args.diagram)
    g = first_homology(d)
    order = g.order
    text = ["H1 = %s; order = %s" % (g.describe(), "infinite" if order is None else order)]
    return text, dict(group_json(g), order=order)


def cmd_spin(args):
    d = parse_diagram(args.diagram)
    spins = spin_structures(d)
    text = ["spin structures: %d" % len(spins)]
    text += ["J = %s" % sublink_ids(d, s) for s in spins]
    return text, {"spin_structures": [list(s.sublink) for s in spins]}


def cmd_gamma(args):
    d = parse_diagram(args.diagram)
    g = first_homology(d)
    spins = spin_structures(d)
    values = [gamma(d, s, g) for s in spins]
    text = ["H1 = %s" % g.describe()]
    text += ["J = %s: Gamma = %s" % (sublink_ids(d, s), v) for s, v in zip(spins, values)]
    return text, {"H1": group_json(g),
                  "gamma": [{"sublink": list(s.sublink), "value": list(v.coords)}
                            for s, v in zip(spins, values)]}


def cmd_d3(args):
    d = parse_diagram(args.diagram)
    rep = d3_report(d)
    text = ["d3 = %s" % fmt(rep.value)]
    obj = {"d3": rep.value, "degenerate": rep.degenerate}
    if rep.degenerate:
        text.append("warning: degenerate linking matrix; with rank in place of component count d3 = %s"
                    % fmt(rep.rank_value))
        obj["d3_rank_variant"] = rep.rank_value
    return text, obj


def cmd_rational(args):
    d = parse_diagram(args.diagram)
    k = parse_knot(args.knot, len(d))
    rc = rational_classical(d, k)
    text = ["D = %d; tb_Q = %s; rot_Q = %s; sl_Q = %s"
            % (rc.order, fmt(rc.tb_q), fmt(rc.rot_q), fmt(rc.sl_q))]
    return text, {"order": rc.order, "tb_q": rc.tb_q, "rot_q": rc.rot_q, "sl_q": rc.sl_q}


def _lutz_lines(rep):
    lines = ["d3 base = %s; d3 twisted = %s; -sl_Q = %s; residual = %s"
             % (fmt(rep.d3_base), fmt(rep.d3_extended), fmt(-rep.sl_q), fmt(rep.d3_residual))]
    for (s, diff, cls), res in zip(rep.gamma_differences, rep.gamma_residuals):
        lines.append("J = %r: Gamma difference = %s; [L] = %s; residual = %s"
                     % (s.members, diff, cls, res))
    sc = rep.schur
    lines.append("det S = %s; signature %d -> %d; |det| %d -> %d"
                 % (fmt(sc.det_S), sc.signature_base, sc.signature_extended,
                    abs(sc.det_base), abs(sc.det_extended)))
    lines.append("PASS" if rep.passed else "FAIL")
    return lines


def _lutz_json(rep):
    return {
        "d3_base": rep.d3_base, "d3_twisted": rep.d3_extended, "sl_q": rep.sl_q,
        "order": rep.order, "d3_residual": rep.d3_residual,
        "gamma": [{"sublink": list(s.sublink), "difference": list(diff.coords),
                   "class": list(cls.coords)} for s, diff, cls in rep.gamma_differences],
        "det_S": rep.schur.det_S, "schur_passed": rep.schur.passed, "passed": rep.passed,
    }


def cmd_lutz_verify(args):
    if args.random:
        rng = random.Random(args.seed)
        failures = []
        for _ in range(args.random):
            d = sampling.random_diagram(rng, nondegenerate=True)
            k = sampling.random_knot(rng, len(d))
            if not lutz.verify_lutz_identities(d, k).passed:
                failures.append({"diagram": diagram_to_dict(d), "knot": k.to_dict()})
        text = ["random cases: %d; seed: %d; failures: %d" % (args.random, args.seed, len(failures))]
        return text, {"cases": args.random, "seed": args.seed, "failures": failures}, 1 if failures else 0
    if not args.diagram or not args.knot:
        raise UsageError("lutz-verify needs DIAGRAM and KNOT, or --random N")
    d = parse_diagram(args.diagram)
    k = parse_knot(args.knot, len(d))
    rep = lutz.verify_lutz_identities(d, k)
    return _lutz_lines(rep), _lutz_json(rep), 0 if rep.passed else 1


def _state_line(st):
    return "framings %r; linking %r; J %r" % (list(st.framings), [list(r) for r in st.linking],
                                             [i for i, x in enumerate(st.char_sublink) if x])


def _state_json(st):
    return {"framings": list(st.framings), "linking": [list(r) for r in st.linking],
            "unknots": list(st.unknot_flags), "sublink": list(st.char_sublink)}


def cmd_kirby(args):
    if args.random:
        rng = random.Random(args.seed)
        states = [sampling.random_state(rng)]
        moves = []
        for _ in range(args.random):
            m = sampling.random_move(rng, states[-1])
            moves.append(m)
            states.append(kirby.apply_move(states[-1], m))
    else:
        if not args.diagram or not args.script:
            raise UsageError("kirby needs DIAGRAM and SCRIPT, or --random N")
        d = parse_diagram(args.diagram)
        Q = linking_matrix(d)
        spins = spin_structures(d)
        if args.sublink is not None:
            ids = [c.id for c in d.components]
            unknown = [x for x in args.sublink if x not in ids]
            if unknown:
                raise UsageError("unknown component ids %r" % unknown)
            sub = [int(c.id in args.sublink) for c in d.components]
        else:
            sub = list(spins[0].sublink)
        unknots = [c.id not in (args.knotted or ()) for c in d.components]
        try:
            st = kirby.FramedLinkState.from_matrix(Q, sub, unknots)
            moves = kirby.load_script(args.script)
        except kirby.BrokenSublink as e:
            raise UsageError(str(e)) from None
        except FileNotFoundError:
            raise UsageError("%s: file not found" % args.script) from None
        except (json.JSONDecodeError, kirby.KirbyError) as e:
            raise UsageError("%s: %s" % (args.script, e)) from None
        states = kirby.run_script(st, moves)
    factors = [linalg.invariant_factors(s.matrix()) for s in states]
    text = []
    for i, st in enumerate(states):
        head = "start" if i == 0 else json.dumps(moves[i - 1], sort_keys=True)
        text.append("%s: %s" % (head, _state_line(st)))
    constant = all(f == factors[0] for f in factors)
    text.append("invariant factors %s along the sequence: %r"
                % ("constant" if constant else "CHANGED", factors[0]))
    obj = {"moves": moves, "states": [_state_json(s) for s in states],
           "invariant_factors": factors[0], "constant": constant}
    return text, obj


def cmd_lens_tight(args):
    L = lens_space(args.p, args.q)
    text = ["%s: continued fraction %r" % (L, lens.neg_continued_fraction(L.p, L.q) if L.p > 1 else [])]
    items = []
    for d in lens.tight_structures(L):
        f = plane_field_fingerprint(d)
        text.append("rot %r: d3 = %s; Gamma = %s"
                    % (d.rotations, fmt(f.d3), ", ".join(str(g) for g in f.gamma)))
        items.append({"diagram": diagram_to_dict(d), "d3": f.d3,
                      "gamma": [list(g.coords) for g in f.gamma]})
    return text, {"space": [L.p, L.q], "structures": items}


def _cert_line(c):
    flags = "".join("c%d=%s " % (i + 1, "T" if ok else "F") for i, ok in enumerate(c.conditions)).strip()
    status = "not-obstructed" if all(c.not_obstructed) else "obstructed"
    return "%s | %s | %s | %s" % (c.first, c.second, flags, status)


def _cert_json(c):
    return {"first": [c.first.p, c.first.q], "second": [c.second.p, c.second.q],
            "conditions": list(c.conditions), "not_obstructed": list(c.not_obstructed),
            "certificate": isinstance(c, lens.PairCertificate)}


def cmd_lens_obstruct(args):
    A, B = lens_space(args.p, args.q), lens_space(args.p2, args.q2)
    obstructed = lens.integral_obstruction(A, B)
    status = "obstructed" if obstructed else "not-obstructed"
    return ["%s | %s | %s" % (A, B, status)], {"first": [A.p, A.q], "second": [B.p, B.q],
                                               "obstructed": obstructed}


def cmd_lens_check(args):
    A, B = lens_space(args.p, args.q), lens_space(args.p2, args.q2)
    c = lens.plamenevskaya_check(A, B)
    line = _cert_line(c)
    if isinstance(c, lens.PairFailure):
        line += " | fail: " + c.reason
    else:
        line += " | certificate"
    return [line], _cert_json(c)


def cmd_lens_search(args):
    certs = lens.search_pairs(args.bound)
    return [_cert_line(c) for c in certs], {"bound": args.bound, "certificates": [_cert_json(c) for c in certs]}


def _candidate_json(c):
    return {"label": c.label, "diagram": diagram_to_dict(c.diagram), "d3": c.d3,
            "gamma": list(c.gamma.coords)}


def cmd_gamma_collision(args):
    w = lens.gamma_collision_witness(args.factors)
    if w is None:
        return ["none-exists: H1 is 0 or Z/2"], {"witness": None}
    text = ["witness after %d candidates; spin structure J = %r" % (w.searched, w.spin.members)]
    for c in (w.first, w.second):
        text.append("%s: d3 = %s; Gamma = %s" % (c.label, fmt(c.d3), c.gamma))
    return text, {"witness": {"spin": list(w.spin.sublink), "searched": w.searched,
                              "first": _candidate_json(w.first), "second": _candidate_json(w.second)}}


def cmd_d3_gamma_experiment(args):
    L = lens_space(args.p, args.q)
    rep = lens.d3_determines_gamma_experiment(L, args.samples)
    text = ["%s: %d plane fields, %d pairs, %d counterexamples"
            % (L, len(rep.candidates), rep.pairs_checked, len(rep.counterexamples))]
    for i, j in rep.counterexamples[:args.show]:
        a, b = rep.candidates[i], rep.candidates[j]
        text.append("%s (d3 = %s, Gamma = %s) vs %s (d3 = %s, Gamma = %s)"
                    % (a.label, fmt(a.d3), a.gamma, b.label, fmt(b.d3), b.gamma))
    obj = {"space": [L.p, L.q], "samples": len(rep.candidates), "pairs": rep.pairs_checked,
           "counterexamples": [[i, j] for i, j in rep.counterexamples],
           "candidates": [{"label": c.label, "d3": c.d3, "gamma": list(c.gamma.coords)}
                          for c in rep.candidates]}
    return text, obj


HANDLERS = {
    "invariants": cmd_invariants, "homology": cmd_homology, "spin": cmd_spin,
    "gamma": cmd_gamma, "d3": cmd_d3, "rational": cmd_rational,
    "lutz-verify": cmd_lutz_verify, "kirby": cmd_kirby, "lens-tight": cmd_lens_tight,
    "lens-obstruct": cmd_lens_obstruct, "lens-check": cmd_lens_check,
    "lens-search": cmd_lens_search, "gamma-collision": cmd_gamma_collision,
    "d3-gamma-experiment": cmd_d3_gamma_experiment,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized runs")

    parser = argparse.ArgumentParser(prog="contact-surgery", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, help):
        return sub.add_parser(name, help=help, parents=[common])

    for name, help in (("invariants", "d3, H1, spin structures and Gamma"),
                       ("homology", "first homology"),
                       ("spin", "characteristic sublinks"),
                       ("gamma", "Gamma for every spin structure"),
                       ("d3", "the d3 invariant")):
        add(name, help).add_argument("diagram")
    p = add("rational", "rational tb, rot, sl of a knot in the complement")
    p.add_argument("diagram")
    p.add_argument("knot")
    p = add("lutz-verify", "check the Lutz twist formulas")
    p.add_argument("diagram", nargs="?")
    p.add_argument("knot", nargs="?")
    p.add_argument("--random", type=int, default=0, metavar="N", help="check N seeded random cases")
    p = add("kirby", "run a move script with a tracked spin structure")
    p.add_argument("diagram", nargs="?")
    p.add_argument("script", nargs="?")
    p.add_argument("--sublink", nargs="*", metavar="ID", help="initial characteristic sublink")
    p.add_argument("--knotted", nargs="*", metavar="ID", help="components not declared unknots")
    p.add_argument("--random", type=int, default=0, metavar="N", help="N seeded random moves")
    p = add("lens-tight", "tight structures on L(p, q)")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    for name, help in (("lens-obstruct", "homological obstruction to one integral surgery"),
                       ("lens-check", "five-condition criterion")):
        p = add(name, help)
        for arg in ("p", "q", "p2", "q2"):
            p.add_argument(arg, type=int)
    p = add("lens-search", "certified lens space pairs")
    p.add_argument("bound", type=int)
    p = add("gamma-collision", "equal d3, different Gamma on the sum of L(p_i, 1)")
    p.add_argument("factors", type=int, nargs="+")
    p = add("d3-gamma-experiment", "does d3 determine Gamma on L(p, q)?")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--show", type=int, default=5, help="counterexamples to print")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        result = HANDLERS[args.command](args)
    except UsageError as e:
        print("error: %s" % e, file=stderr)
        return 2
    except (D3Undefined, InfiniteOrder, lutz.DegenerateBase, kirby.KirbyError,
            kirby.BrokenSublink) as e:
        print(str(e) if isinstance(e, D3Undefined) else "error: %s" % e, file=stderr)
        return 1
    text, obj = result[0], result[1]
    status = result[2] if len(result) > 2 else 0
    if args.json:
        print(json.dumps(obj, default=_jsonable, sort_keys=True, indent=2), file=stdout)
    else:
        for line in text:
            print(line, file=stdout)
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
