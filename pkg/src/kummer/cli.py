"""Command line driver: ``kummer <command> [--config PATH] [--format json|text] [--k INT]``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable, Optional

from . import cohomology as coh
from .config import Config, ConfigError, format_rational, load_config
from .fixed_loci import (
    AffineSubtorus,
    check_joyce_conditions,
    fixed_locus,
    simply_connected_sufficient,
    singular_orbits,
)
from .group import AffineInvolutionMap, GroupZ2k
from .resolution import GeneratorCatalogue, NotResolvable, generator_catalogue, resolved_betti
from .ring import RingTable, massey_candidates, pairing_matrix, ring_table

SCHEMA_VERSION = "1.0"
MASSEY_SAMPLE = 5

COMMANDS = (
    "validate",
    "betti",
    "fixed-loci",
    "orbits",
    "check",
    "pi1",
    "resolve",
    "ring",
    "pairing",
    "massey",
    "report",
)


def _offsets(t: AffineSubtorus) -> list[Optional[str]]:
    return [None if x is None else format_rational(x) for x in t.offsets]


def _map(group: GroupZ2k, index: int, g: AffineInvolutionMap) -> dict:
    return {
        "name": group.name(index),
        "signs": "".join("+" if s == 1 else "-" for s in g.signs),
        "translation": [format_rational(b) for b in g.translation],
    }


class Pipeline:
    """Lazily evaluated stages, each computed at most once."""

    def __init__(self, group: GroupZ2k):
        self.group = group
        self._cache: dict[str, object] = {}

    def _get(self, key: str, fn: Callable):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def orbits(self):
        return self._get("orbits", lambda: singular_orbits(self.group))

    @property
    def catalogue(self) -> GeneratorCatalogue:
        return self._get("catalogue", lambda: generator_catalogue(self.group))

    @property
    def table(self) -> RingTable:
        return self._get("table", lambda: ring_table(self.catalogue))

    # -- sections of the report ------------------------------------------

    def section_group(self) -> dict:
        g = self.group
        return {
            "dimension": g.n,
            "order": g.order,
            "valid": True,
            "generators": [_map(g, i, g.elements[i]) for i in g.generator_indices()],
            "elements": [_map(g, i, e) for i, e in enumerate(g.elements)],
        }

    def section_orbifold_betti(self) -> list[int]:
        return coh.orbifold_betti(self.group)

    def section_fixed_loci(self) -> list[dict]:
        out = []
        for i, e in enumerate(self.group.elements):
            if not i:
                continue
            comps = fixed_locus(e)
            out.append(
                {
                    "element": self.group.name(i),
                    "count": len(comps),
                    "free": [j + 1 for j in range(self.group.n) if e.signs[j] == 1] if comps else [],
                    "components": [_offsets(c) for c in comps],
                }
            )
        return out

    def section_orbits(self) -> list[dict]:
        ranks: dict[int, int] = {}
        out = []
        for o in self.orbits:
            ranks[o.stabilizer] = ranks.get(o.stabilizer, 0) + 1
            out.append(
                {
                    "stabilizer": self.group.name(o.stabilizer),
                    "rank": ranks[o.stabilizer],
                    "size": len(o),
                    "homology_class": list(coh.indices(o.homology_class)),
                    "representative": _offsets(o.representative),
                    "members": [_offsets(m) for m in o.members],
                }
            )
        return out

    def section_joyce_conditions(self) -> dict:
        return check_joyce_conditions(self.group).as_dict()

    def section_pi1_sufficient(self) -> dict:
        return simply_connected_sufficient(self.group).as_dict()

    def section_resolved_betti(self) -> list[int]:
        return resolved_betti(self.group)

    def section_generators(self) -> list[dict]:
        out = []
        for g in self.catalogue:
            entry = {"name": g.name, "kind": g.kind, "dimension": g.dimension}
            if g.is_torus:
                entry["torus"] = list(coh.indices(g.support))
            else:
                entry["orbit"] = g.orbit
                entry["base"] = list(coh.indices(g.support))
            out.append(entry)
        return out

    def section_relations(self) -> dict:
        table = self.table
        return {
            "nontrivial": [
                {"left": a.name, "right": b.name, "value": v.as_dict(), "text": f"{a.name} . {b.name} = {v}"}
                for a, b, v in table.nontrivial()
            ],
            "theorem_sourced_zeros": len(table.theorem_sourced()),
        }

    def section_pairings(self, k: Optional[int] = None) -> dict:
        n = self.group.n
        ks = [k] if k is not None else [
            d for d in range(n + 1) if d <= n - d and self.catalogue.of_dimension(d)
        ]
        return {str(d): pairing_matrix(self.table, d).as_dict() for d in ks}

    def section_massey_candidates(self) -> dict:
        triples = massey_candidates(self.table)
        return {
            "count": len(triples),
            "sample": [[g.name for g in t] for t in triples[:MASSEY_SAMPLE]],
            "evaluated": False,
        }


STAGES = {
    "validate": ("group",),
    "betti": ("orbifold_betti", "resolved_betti"),
    "fixed-loci": ("fixed_loci",),
    "orbits": ("orbits",),
    "check": ("joyce_conditions",),
    "pi1": ("pi1_sufficient",),
    "resolve": ("resolved_betti", "generators"),
    "ring": ("relations",),
    "pairing": ("pairings",),
    "massey": ("massey_candidates",),
    "report": (
        "group",
        "orbifold_betti",
        "fixed_loci",
        "orbits",
        "joyce_conditions",
        "pi1_sufficient",
        "resolved_betti",
        "generators",
        "relations",
        "pairings",
        "massey_candidates",
    ),
}


def run(command: str, config: Config, k: Optional[int] = None) -> dict:
    """Execute a command and return the machine-readable document."""
    if command not in STAGES:
        raise ValueError(f"unknown command {command!r}")
    pipeline = Pipeline(config.to_group())
    doc: dict = {"schema_version": SCHEMA_VERSION}
    for key in STAGES[command]:
        section = getattr(pipeline, f"section_{key}")
        try:
            doc[key] = section(k) if key == "pairings" else section()
        except NotResolvable:
            # a full report still describes an unresolvable group; the
            # resolution-dependent sections are left empty
            if command != "report":
                raise
            doc[key] = None
    return doc


# -- text rendering -----------------------------------------------------------


def _paint(text: str, ok: bool, color: bool) -> str:
    if not color:
        return text
    return f"\x1b[{32 if ok else 31}m{text}\x1b[0m"


def _tuple(values) -> str:
    return "(" + ", ".join(str(v) for v in values) + ")"


def _torus(offsets) -> str:
    return _tuple(f"x{i + 1}" if x is None else x for i, x in enumerate(offsets))


def render_text(doc: dict, color: bool = False, verbosity: int = 1) -> str:
    lines: list[str] = []
    add = lines.append
    if "group" in doc:
        g = doc["group"]
        add(f"group: Z_2^{len(g['generators'])} acting on T^{g['dimension']} ({g['order']} elements)")
        for e in g["elements"]:
            add(f"  {e['name']}  signs {e['signs']}  translation {_tuple(e['translation'])}")
    if "orbifold_betti" in doc:
        add(f"orbifold Betti numbers: {_tuple(doc['orbifold_betti'])}")
    if "resolved_betti" in doc and doc["resolved_betti"] is None:
        add("resolution skipped: resolvability conditions fail")
    elif "resolved_betti" in doc:
        add(f"resolved Betti numbers: {_tuple(doc['resolved_betti'])}")
    if "fixed_loci" in doc:
        add("fixed loci:")
        for f in doc["fixed_loci"]:
            free = ",".join(str(i) for i in f["free"]) or "-"
            add(f"  {f['element']}: {f['count']:3d} components, free coordinates {free}")
            if verbosity > 1:
                for c in f["components"]:
                    add(f"      {_torus(c)}")
    if "orbits" in doc:
        add(f"singular orbits: {len(doc['orbits'])}")
        for o in doc["orbits"]:
            add(
                f"  [{o['stabilizer']},{o['rank']}] size {o['size']}, "
                f"class {{{','.join(map(str, o['homology_class']))}}}, "
                f"representative {_torus(o['representative'])}"
            )
    if "joyce_conditions" in doc:
        j = doc["joyce_conditions"]
        add("resolvability conditions: " + _paint("pass" if j["passed"] else "FAIL", j["passed"], color))
        for c in j["conditions"]:
            mark = _paint("pass" if c["passed"] else "FAIL", c["passed"], color)
            add(f"  ({c['key']}) {mark}  {c['description']}")
            for w in c["witnesses"]:
                add(f"        {w}")
        for note in j["notes"]:
            add(f"  note: {note}")
    if "pi1_sufficient" in doc:
        p = doc["pi1_sufficient"]
        add(f"pi_1 (sufficient-only test): {p['verdict']}")
        if p["uncovered"]:
            add(f"  uncovered coordinates: {', '.join(map(str, p['uncovered']))}")
    if doc.get("generators") is not None:
        add("generators:")
        by_dim: dict[int, list[str]] = {}
        for g in doc["generators"]:
            by_dim.setdefault(g["dimension"], []).append(g["name"])
        for d, names in sorted(by_dim.items()):
            add(f"  dim {d} ({len(names)}): " + " ".join(names))
    if doc.get("relations") is not None:
        r = doc["relations"]
        add(f"nontrivial intersections ({len(r['nontrivial'])}, up to anticommutativity):")
        for rel in r["nontrivial"]:
            add(f"  {rel['text']}")
        if r["theorem_sourced_zeros"]:
            add(f"  ({r['theorem_sourced_zeros']} entries set to zero by convention, provenance 'theorem')")
    if doc.get("pairings") is not None:
        for k, p in doc["pairings"].items():
            add(f"pairing H_{k} x H_(n-{k}): size {p['size']}, determinant {p['determinant']}")
            if p["diagonal"] and verbosity > 1:
                add("  diagonal " + " ".join(p["entries"]))
    if doc.get("massey_candidates") is not None:
        m = doc["massey_candidates"]
        add(f"Massey product candidates (not evaluated): {m['count']}")
        for t in m["sample"]:
            add("  <" + ", ".join(t) + ">")
    return "\n".join(lines) + "\n"


def _use_color(stream) -> bool:
    flag = os.environ.get("KUMMER_COLOR")
    if flag is not None:
        return flag == "1"
    return stream.isatty()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kummer",
        description="Topology of resolved torus orbifolds T^n / Z_2^k.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="configuration file (default: the shipped T^7 example)")
    parser.add_argument("--format", choices=("json", "text"), default=None)
    parser.add_argument("--k", type=int, default=None, help="dimension k for 'pairing'")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        fmt = args.format or config.format
        k = args.k if args.command == "pairing" else None
        doc = run(args.command, config, k)
    except ConfigError as exc:
        return _fail(exc.as_dict())
    except (ValueError, ArithmeticError, RuntimeError, OSError) as exc:
        return _fail({"type": type(exc).__name__, "message": str(exc)})
    if fmt == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(render_text(doc, _use_color(sys.stdout), config.verbosity))
    return 0


def _fail(record: dict) -> int:
    sys.stderr.write(json.dumps({"error": record}) + "\n")
    return 1


if __name__ == "__main__":
    sys.exit(main())
