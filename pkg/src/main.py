#!/usr/bin/env python
"""
Agglom Main Application
Command-line front end: reads graphs, elements, matrices and ring specs, runs
one operation and prints a JSON (or text/DOT) document on stdout.
"""

import argparse
import json
import logging
import sys

try:
    from . import config
    from . import agglomeration as agg
    from . import bassring
    from . import diophantine as dio
    from . import divisor_theory as dt
    from . import factorization as fz
    from . import formats
    from . import multigraph as mg
    from .errors import AgglomError, RingSpecError
except ImportError:
    import config
    import agglomeration as agg
    import bassring
    import diophantine as dio
    import divisor_theory as dt
    import factorization as fz
    import formats
    import multigraph as mg
    from errors import AgglomError, RingSpecError

log = logging.getLogger(__name__)

DOT_COMMANDS = {"export-dot", "ring graph"}


def _read(path):
    """Read a file, or stdin for '-' or a missing path."""
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def _fraction(value):
    return formats.fraction_to_str(value)


def _atom_json(a):
    return agg.agglomeration_to_json(a, sparse=True)


class AgglomApp:
    """Dispatches one parsed command to the library and builds its output document."""

    def __init__(self, args, parser=None):
        self.args = args
        self.parser = parser
        self.command = args.command if args.command != "ring" else "ring %s" % args.ring_command

    def run(self):
        handler = getattr(self, "_handle_" + self.command.replace(" ", "_").replace("-", "_"))
        log.debug("running %s", self.command)
        return handler()

    # -- inputs -------------------------------------------------------------

    def graph(self):
        return mg.parse_graph(_read(self.args.graph))

    def element(self, g):
        if self.args.element is None:
            message = "--element is required for %s" % self.command
            if self.parser is None:
                raise AgglomError(message)
            self.parser.error(message)
        return agg.parse_agglomeration(g, _read(self.args.element))

    def spec(self):
        return bassring.parse_spec(_read(self.args.spec))

    def monoid(self):
        return dio.DiophantineMonoid(dio.matrix_from_json(_read(self.args.matrix)))

    # -- A(G) ---------------------------------------------------------------

    def _handle_atoms(self):
        found = agg.atoms(self.graph())
        return {"count": len(found), "atoms": [_atom_json(a) for a in found]}

    def _handle_factorize(self):
        g = self.graph()
        result = fz.factorizations(g, self.element(g), self.args.cap)
        doc = {
            "complete": result.complete,
            "count": len(result),
            "lengths": list(result.length_set),
            "factorizations": [[_atom_json(a) for a in z.atoms] for z in result],
        }
        if not result.complete:
            doc["cap"] = result.cap
        return doc

    def _handle_lengths(self):
        g = self.graph()
        ls = fz.length_set(g, self.element(g))
        return {
            "lengths": list(ls),
            "delta": sorted(fz.delta_set(ls)),
            "elasticity": _fraction(fz.elasticity_of_element(ls)),
        }

    def _handle_elasticity(self):
        report = fz.elasticity(self.graph(), self.args.search_depth)
        return {
            "lower": _fraction(report.lower),
            "upper": _fraction(report.upper),
            "exact": report.exact,
            "certificate": report.certificate,
            "witness": _atom_json(report.witness) if report.witness is not None else None,
            "witness_lengths": list(report.witness_lengths),
        }

    def _handle_rho_k(self):
        report = fz.rho_k(self.graph(), self.args.k, self.args.search_depth)
        doc = {"k": report.k, "exact": report.exact}
        if report.exact:
            doc["value"] = report.value
        else:
            doc["lower"] = report.lower
            doc["upper"] = report.upper
        doc["tree_packing"] = report.tree_packing
        return doc

    def _handle_davenport(self):
        return {"davenport": agg.davenport(self.graph())}

    def _handle_divisor_theory(self):
        g = self.graph()
        doc = {"coordinates": list(dt.coordinates(g))}
        if self.args.element is not None:
            doc["image"] = dt.image_to_json(dt.phi(g, self.element(g)))
        return doc

    def _handle_classgroup_rank(self):
        g = self.graph()
        return {"rank": dt.class_group_rank(g), "smith_rank": dt.class_group_rank_smith(g)}

    def _handle_check(self):
        g = self.graph()
        report = fz.is_half_factorial(g)
        witness = report.witness.element if report.witness is not None else None
        return {
            "half_factorial": report.half_factorial,
            "factorial": fz.is_factorial(g),
            "witness": _atom_json(witness) if witness is not None else None,
            "lengths": list(report.lengths),
        }

    def _handle_catenary(self):
        g = self.graph()
        result = fz.catenary_degree(g, self.element(g), self.args.cap)
        return {"catenary": result.value, "complete": result.complete,
                "factorizations": result.factorization_count}

    def _handle_omega(self):
        g = self.graph()
        result = fz.omega_bounded(g, self.element(g), self.args.cap)
        return {"omega_lower_bound": result.value, "complete": result.complete, "cap": result.cap,
                "witness": _atom_json(result.witness) if result.witness is not None else None}

    def _handle_export_dot(self):
        g = self.graph()
        weights = self.element(g).weights if self.args.element is not None else None
        return formats.graph_to_dot(g, weights)

    # -- Diophantine monoids ------------------------------------------------

    def _handle_hilbert_basis(self):
        basis = dio.hilbert_basis(self.monoid(), self.args.cap)
        return {"basis": [list(v) for v in basis], "complete": basis.complete, "cap": basis.cap}

    def _handle_dedup(self):
        t = dio.dedup_transfer(self.monoid())
        return {"identity": t.is_identity, "groups": [list(g) for g in t.groups],
                "target": dio.matrix_to_json(t.target.matrix)}

    # -- Bass rings ---------------------------------------------------------

    def _handle_ring_validate(self):
        problems = bassring.validate(self.spec())
        if problems:
            raise RingSpecError(problems)
        return {"valid": True}

    def _handle_ring_graph(self):
        g = bassring.intersection_graph(self.spec())
        if self.args.format == "dot":
            return formats.graph_to_dot(g, name="G_R")
        return mg.graph_to_json(g)

    def _handle_ring_matrix_b(self):
        return dio.matrix_to_json(bassring.matrix_B(self.spec()))

    def _handle_ring_matrix_c(self):
        return dio.matrix_to_json(bassring.matrix_C(self.spec()))

    def _handle_ring_iso(self):
        report = bassring.iso_to_agglomerations(self.spec(), self.args.box)
        return {"isomorphism": True, "atoms": report.atom_count, "basis": report.basis_size,
                "checked": report.elements_checked, "box": report.box}

    def _handle_ring_krsa(self):
        return {"krsa": bassring.krsa_check(self.spec(), self.args.pic_trivial)}

    def _handle_ring_realize(self):
        return bassring.spec_to_json(bassring.realize(self.graph()))

    def _handle_ring_family(self):
        a = self.args
        spec = bassring.family(a.name, m=a.m, k=a.k, n=a.n, singular=a.singular, t=a.t)
        return bassring.spec_to_json(spec)


def build_parser():
    parser = argparse.ArgumentParser(prog="agglom", description="Factorization theory of graph agglomerations")
    parser.add_argument("--format", choices=("json", "text", "dot"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, graph=True, element=False, cap=False, depth=False, help=None):
        p = sub.add_parser(name, help=help)
        if graph:
            p.add_argument("--graph", required=True, help="graph JSON or text file ('-' for stdin)")
        if element:
            p.add_argument("--element", help="agglomeration JSON file")
        if cap:
            p.add_argument("--cap", type=int, default=None)
        if depth:
            p.add_argument("--search-depth", type=int, default=None)
        p.add_argument("--format", choices=("json", "text", "dot"), default=argparse.SUPPRESS)
        return p

    command("atoms", help="list the atoms of A(G)")
    command("factorize", element=True, cap=True, help="all factorizations of an element")
    command("lengths", element=True, help="set of lengths, delta set and elasticity of an element")
    command("elasticity", depth=True, help="certified bounds on the elasticity of A(G)")
    command("rho-k", depth=True, help="refined elasticity rho_k").add_argument("--k", type=int, required=True)
    command("davenport", help="Davenport constant")
    command("divisor-theory", element=True, help="divisor coordinates and the image of an element")
    command("classgroup-rank", help="rank of the divisor class group")
    command("check", help="half-factoriality and factoriality")
    command("catenary", element=True, cap=True, help="catenary degree of an element")
    command("omega", element=True, cap=True, help="omega of an atom over a bounded box")
    command("export-dot", element=True, help="DOT drawing, optionally weighted by an element")
    for name, helptext in (("hilbert-basis", "Hilbert basis of ker(B)"), ("dedup", "merge duplicate columns")):
        p = command(name, graph=False, cap=name == "hilbert-basis", help=helptext)
        p.add_argument("--matrix", required=True, help="matrix JSON file")

    ring = sub.add_parser("ring", help="Bass ring spectra")
    ring_sub = ring.add_subparsers(dest="ring_command", required=True)

    def ring_command(name, spec=True, help=None):
        p = ring_sub.add_parser(name, help=help)
        if spec:
            p.add_argument("--spec", default=None, help="ring spec JSON file (stdin when omitted)")
        p.add_argument("--format", choices=("json", "text", "dot"), default=argparse.SUPPRESS)
        return p

    ring_command("validate", help="check the spectrum rules")
    ring_command("graph", help="prime-ideal-intersection graph")
    ring_command("matrix-b", help="matrix B of rank equations")
    ring_command("matrix-c", help="deduplicated matrix C")
    ring_command("iso", help="verify the isomorphism with A(G_R)").add_argument("--box", type=int, default=None)
    ring_command("krsa", help="Krull-Remak-Schmidt-Azumaya criterion").add_argument(
        "--pic-trivial", action=argparse.BooleanOptionalAction, default=True)
    ring_command("realize", spec=False, help="ring spec realizing a graph").add_argument(
        "--graph", required=True)
    fam = ring_command("family", spec=False, help="standard ring spec families")
    fam.add_argument("--name", required=True, choices=("domain", "ngon", "banana", "complete"))
    fam.add_argument("--m", type=int, default=None)
    fam.add_argument("--k", type=int, default=None)
    fam.add_argument("--n", type=int, default=None)
    fam.add_argument("--singular", type=int, default=1)
    fam.add_argument("--t", type=int, default=2)
    return parser


def setup_logging():
    level = getattr(logging, str(config.LOG_LEVEL).upper(), logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(argv=None):
    """
    Main entry point.

    Returns:
        int: 0 on success, 1 on a domain or input error, 2 on a usage error
    """
    setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code

    app = AgglomApp(args, parser)
    if args.format == "dot" and app.command not in DOT_COMMANDS:
        parser.print_usage(sys.stderr)
        print("agglom: error: --format dot is only available for export-dot and ring graph", file=sys.stderr)
        return 2

    try:
        doc = app.run()
    except SystemExit as e:
        return e.code
    except (AgglomError, OSError, json.JSONDecodeError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 1
    except (RecursionError, MemoryError) as e:
        log.debug("resource failure in %s", app.command, exc_info=True)
        print("error: resource limit exceeded (%s)" % (type(e).__name__,), file=sys.stderr)
        return 1

    if isinstance(doc, str):
        sys.stdout.write(doc)
    elif args.format == "text":
        print(formats.render_text(doc))
    else:
        print(formats.dumps(doc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
