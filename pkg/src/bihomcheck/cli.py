"""Command-line entry points and the JSON instance-file format.

An instance file is a UTF-8 JSON document holding a base field, named objects
(carrier dimension plus endomorphism matrices), named structures (references
to an object plus optional mu/eta/delta/epsilon), and named (co)module
instances.  Matrices are row-major arrays of scalar strings: "p/q" over the
rationals, decimal residues over a prime field, never floats.  Serialization
is canonical (sorted keys, lowest-terms scalars, two-space indent) so
round-trip tests can compare bytes.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage, parse
or I/O failure.  Randomized commands are reproducible from the seed alone:
trial i draws from its own generator seeded by (seed, i), so the worker count
(BIHOM_THREADS) cannot change any result.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .coherence import (
    BiHomObject,
    check_duoidal_figure,
    check_exponent_identities,
    check_lax_figure,
    random_double_seq,
    random_duoidal_instance,
    random_lax_instance,
)
from .errors import BihomError, ParseError, UnknownName
from .exactlin import GF, QQ, DenseMap, FieldTag, RATIONALS
from .report import CheckReport
from .structures import (
    ComoduleInst,
    ModuleInst,
    StructureBundle,
    check_bimonoid,
    check_bisemigroup,
    check_comodule,
    check_comonoid,
    check_cosemigroup,
    check_generalized_coassoc,
    check_hopf_module,
    check_module,
    check_monoid,
    check_semigroup,
    coassoc_sequences,
    delta_n,
)
from .twist import (
    BIMONOID,
    COMONOID,
    DIRECT,
    FOUND,
    MONOID,
    NO_ANTIPODE,
    VIA_UNTWIST,
    PlainStructure,
    antipode_solve,
    untwist,
    yau_twist,
)

FORMAT_VERSION = "1"


# ---------------------------------------------------------------------------
# Instance files
# ---------------------------------------------------------------------------

@dataclass
class ModuleEntry:
    carrier: str
    over: str
    action: Optional[DenseMap] = None
    coaction: Optional[DenseMap] = None


@dataclass
class InstanceData:
    field: FieldTag
    objects: dict
    structures: dict        # name -> StructureBundle
    structure_objects: dict  # name -> object name (for canonical output)
    modules: dict           # name -> ModuleEntry


def _field_to_json(field: FieldTag) -> dict:
    if field.kind == RATIONALS:
        return {"kind": "rationals"}
    return {"kind": "prime_field", "modulus": field.modulus}


def _field_from_json(doc) -> FieldTag:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ParseError("field block must carry a kind")
    if doc["kind"] == "rationals":
        return QQ
    if doc["kind"] == "prime_field":
        if "modulus" not in doc:
            raise ParseError("prime_field needs a modulus")
        return GF(int(doc["modulus"]))
    raise ParseError(f"unknown field kind {doc['kind']!r}")


def _matrix_to_json(m: DenseMap) -> list:
    return m.flat_strings()


def _matrix_from_json(field: FieldTag, dst: int, src: int, data, what: str) -> DenseMap:
    if not isinstance(data, list) or len(data) != dst * src:
        raise ParseError(f"{what}: expected {dst * src} entries")
    return DenseMap.from_flat(field, dst, src, data)


def _object_to_json(obj: BiHomObject) -> dict:
    doc = {"dim": obj.dim,
           "alpha": _matrix_to_json(obj.alpha),
           "beta": _matrix_to_json(obj.beta)}
    if obj.kappa is not None:
        doc["kappa"] = _matrix_to_json(obj.kappa)
    if obj.nu is not None:
        doc["nu"] = _matrix_to_json(obj.nu)
    return doc


def _object_from_json(field: FieldTag, name: str, doc) -> BiHomObject:
    try:
        dim = int(doc["dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"object {name}: bad dim") from exc
    maps = {}
    for key in ("alpha", "beta", "kappa", "nu"):
        if key in doc:
            maps[key] = _matrix_from_json(field, dim, dim, doc[key],
                                          f"object {name}.{key}")
    if "alpha" not in maps or "beta" not in maps:
        raise ParseError(f"object {name}: alpha and beta are required")
    return BiHomObject(dim, field, maps["alpha"], maps["beta"],
                       maps.get("kappa"), maps.get("nu"))


_MAP_SHAPES = {"mu": lambda d: (d, d * d), "eta": lambda d: (d, 1),
               "delta": lambda d: (d * d, d), "epsilon": lambda d: (1, d)}


def _structure_to_json(bundle: StructureBundle, object_name: str) -> dict:
    doc = {"object": object_name}
    for key in _MAP_SHAPES:
        m = getattr(bundle, key)
        if m is not None:
            doc[key] = _matrix_to_json(m)
    return doc


def instance_to_json(data: InstanceData) -> dict:
    doc = {
        "format_version": FORMAT_VERSION,
        "field": _field_to_json(data.field),
        "objects": {name: _object_to_json(o) for name, o in data.objects.items()},
        "structures": {
            name: _structure_to_json(b, data.structure_objects[name])
            for name, b in data.structures.items()},
    }
    if data.modules:
        mods = {}
        for name, entry in data.modules.items():
            m = {"carrier": entry.carrier, "over": entry.over}
            if entry.action is not None:
                m["action"] = _matrix_to_json(entry.action)
            if entry.coaction is not None:
                m["coaction"] = _matrix_to_json(entry.coaction)
            mods[name] = m
        doc["modules"] = mods
    return doc


def dumps_instance(data: InstanceData) -> str:
    return json.dumps(instance_to_json(data), sort_keys=True, indent=2) + "\n"


def instance_from_json(doc) -> InstanceData:
    if not isinstance(doc, dict):
        raise ParseError("instance file must be a JSON object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {doc.get('format_version')!r}")
    field = _field_from_json(doc.get("field"))
    objects = {name: _object_from_json(field, name, od)
               for name, od in doc.get("objects", {}).items()}
    structures, structure_objects = {}, {}
    for name, sd in doc.get("structures", {}).items():
        oname = sd.get("object")
        if oname not in objects:
            raise UnknownName(f"structure {name}: unknown object {oname!r}")
        obj = objects[oname]
        maps = {}
        for key, shape in _MAP_SHAPES.items():
            if key in sd:
                dst, src = shape(obj.dim)
                maps[key] = _matrix_from_json(field, dst, src, sd[key],
                                              f"structure {name}.{key}")
        structures[name] = StructureBundle(obj, **maps)
        structure_objects[name] = oname
    modules = {}
    for name, md in doc.get("modules", {}).items():
        cname, sname = md.get("carrier"), md.get("over")
        if cname not in objects:
            raise UnknownName(f"module {name}: unknown object {cname!r}")
        if sname not in structures:
            raise UnknownName(f"module {name}: unknown structure {sname!r}")
        x = objects[cname]
        a = structures[sname].obj
        action = coaction = None
        if "action" in md:
            action = _matrix_from_json(field, x.dim, x.dim * a.dim, md["action"],
                                       f"module {name}.action")
        if "coaction" in md:
            coaction = _matrix_from_json(field, x.dim * a.dim, x.dim, md["coaction"],
                                         f"module {name}.coaction")
        if action is None and coaction is None:
            raise ParseError(f"module {name}: needs an action or a coaction")
        modules[name] = ModuleEntry(cname, sname, action, coaction)
    return InstanceData(field, objects, structures, structure_objects, modules)


def load_instance(path: str) -> InstanceData:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
    return instance_from_json(doc)


def save_instance(path: str, data: InstanceData):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_instance(data))


# ---------------------------------------------------------------------------
# Report rendering
# ---------------------------------------------------------------------------

def _print_report(report: CheckReport) -> int:
    for e in report.entries:
        if e.passed:
            print(f"PASS {e.name}")
        else:
            r, c, lhs, rhs = e.counterexample
            print(f"FAIL {e.name} [{e.law}] at entry ({r},{c}): {lhs} != {rhs}")
    n_fail = len(report.failures())
    print(f"{report.kind}: {len(report.entries) - n_fail}/{len(report.entries)} "
          f"diagrams commute")
    return 0 if report.passed else 1


def _threads() -> int:
    env = os.environ.get("BIHOM_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _run_trials(trials: int, fn):
    """Run fn(rng, index) for each trial on the worker pool; order-stable."""
    workers = _threads()
    indices = range(trials)
    if workers == 1:
        return [fn(i) for i in indices]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, indices))


def _trial_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}:{index}")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

_STRUCTURE_CHECKS = {
    "semigroup": check_semigroup,
    "cosemigroup": check_cosemigroup,
    "monoid": check_monoid,
    "comonoid": check_comonoid,
    "bisemigroup": check_bisemigroup,
    "bimonoid": check_bimonoid,
}

_MODULE_KINDS = ("module", "comodule", "hopf-module")


def cmd_check(args) -> int:
    data = load_instance(args.file)
    kind = args.structure
    if kind in _STRUCTURE_CHECKS:
        if args.name not in data.structures:
            raise UnknownName(f"no structure named {args.name!r}")
        report = _STRUCTURE_CHECKS[kind](data.structures[args.name])
    elif kind in _MODULE_KINDS:
        if args.name not in data.modules:
            raise UnknownName(f"no module named {args.name!r}")
        entry = data.modules[args.name]
        carrier = data.objects[entry.carrier]
        over = data.structures[entry.over]
        if kind == "module":
            if entry.action is None:
                raise ParseError(f"module {args.name} has no action")
            report = check_module(ModuleInst(carrier, entry.action, over))
        elif kind == "comodule":
            if entry.coaction is None:
                raise ParseError(f"module {args.name} has no coaction")
            report = check_comodule(ComoduleInst(carrier, entry.coaction, over))
        else:
            if entry.action is None or entry.coaction is None:
                raise ParseError(f"module {args.name} needs action and coaction")
            report = check_hopf_module(ModuleInst(carrier, entry.action, over),
                                       ComoduleInst(carrier, entry.coaction, over))
    else:
        raise ParseError(f"unknown structure kind {kind!r}")
    return _print_report(report)


def cmd_coherence(args) -> int:
    if args.trials < 1:
        raise ParseError("--trials must be positive")
    if min(args.max_n, args.max_m, args.max_k) < 0 or args.max_dim < 1:
        raise ParseError("bounds must be non-negative (max-dim positive)")
    field = GF(args.modulus)

    if args.level == "symbolic":
        def trial(i):
            rng = _trial_rng(args.seed, i)
            m, k = random_double_seq(rng, args.max_n, args.max_m, args.max_k)
            n = len(m)
            for si in range(1, n + 1):
                for sj in range(1, m[si - 1] + 1):
                    flags = check_exponent_identities(n, m, k, si, sj)
                    if not all(flags):
                        return f"trial {i}: identities {flags} fail at "\
                               f"m={m} k={k} slot ({si},{sj})"
            return None
    else:
        def trial(i):
            rng = _trial_rng(args.seed, i)
            lax = check_lax_figure(random_lax_instance(
                rng, field, args.max_n, args.max_m, args.max_k, args.max_dim))
            if not lax.passed:
                return f"trial {i}: lax figure region {lax.failures()[0].name}"
            duo = check_duoidal_figure(random_duoidal_instance(
                rng, field, args.max_n, args.max_m, args.max_k, args.max_dim))
            if not duo.passed:
                return f"trial {i}: duoidal figure region {duo.failures()[0].name}"
            return None

    failures = [msg for msg in _run_trials(args.trials, trial) if msg]
    for msg in failures[:10]:
        print(msg)
    print(f"{args.trials - len(failures)}/{args.trials} trials passed "
          f"({args.level}, seed {args.seed})")
    return 0 if not failures else 1


def _twist_direction(bundle: StructureBundle) -> str:
    if bundle.mu is not None and bundle.delta is not None:
        return BIMONOID
    if bundle.delta is not None:
        return COMONOID
    return MONOID


def cmd_twist(args) -> int:
    data = load_instance(args.file)
    if args.name not in data.structures:
        raise UnknownName(f"no structure named {args.name!r}")
    bundle = data.structures[args.name]
    if args.direction == "twist":
        out = yau_twist(PlainStructure(bundle), _twist_direction(bundle))
    else:
        out = untwist(bundle).bundle
    data.structures[args.name] = out
    save_instance(args.output, data)
    print(f"wrote {args.output}")
    return 0


def cmd_antipode(args) -> int:
    data = load_instance(args.file)
    if args.name not in data.structures:
        raise UnknownName(f"no structure named {args.name!r}")
    method = DIRECT if args.method == "direct" else VIA_UNTWIST
    result = antipode_solve(data.structures[args.name], method)
    if result.status == NO_ANTIPODE:
        print("NoAntipode: the defining system is inconsistent")
        return 1
    header = "antipode" if result.status == FOUND else \
        "NonUnique: underdetermined system; one witness"
    print(header)
    chi = result.chi
    for i in range(chi.dst_dim):
        print("  [" + " ".join(str(chi.entry(i, j))
                               for j in range(chi.src_dim)) + "]")
    return 0 if result.status == FOUND else 1


def cmd_delta(args) -> int:
    data = load_instance(args.file)
    if args.name not in data.structures:
        raise UnknownName(f"no structure named {args.name!r}")
    bundle = data.structures[args.name]
    d = delta_n(bundle, args.n)
    print(f"delta_{args.n}: {d.dst_dim}x{d.src_dim}")
    for i in range(d.dst_dim):
        print("  [" + " ".join(str(d.entry(i, j)) for j in range(d.src_dim)) + "]")
    if not args.check_all_sequences:
        return 0
    bad = []
    for k in coassoc_sequences(args.max_K):
        rep = check_generalized_coassoc(bundle, k)
        if not rep.passed:
            bad.append(k)
    if bad:
        print(f"generalized coassociativity FAILED for {len(bad)} sequences, "
              f"first: {bad[0]}")
        return 1
    print(f"generalized coassociativity holds for all sequences with "
          f"K+Z <= {args.max_K}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bihom",
        description="Exact checks for BiHom-algebraic structures given as matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="verify the axioms of a named structure")
    p.add_argument("file")
    p.add_argument("--structure", required=True,
                   choices=sorted(_STRUCTURE_CHECKS) + list(_MODULE_KINDS))
    p.add_argument("--name", required=True)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("coherence", help="randomized coherence suites")
    p.add_argument("--level", choices=("symbolic", "matrix"), default="symbolic")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-n", type=int, default=4, dest="max_n")
    p.add_argument("--max-m", type=int, default=3, dest="max_m")
    p.add_argument("--max-k", type=int, default=4, dest="max_k")
    p.add_argument("--max-dim", type=int, default=2, dest="max_dim")
    p.add_argument("--modulus", type=int, default=7)
    p.set_defaults(fn=cmd_coherence)

    p = sub.add_parser("twist", help="twist or untwist a named structure")
    p.add_argument("file")
    p.add_argument("--name", required=True)
    p.add_argument("--direction", choices=("twist", "untwist"), default="twist")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(fn=cmd_twist)

    p = sub.add_parser("antipode", help="solve the antipode equation")
    p.add_argument("file")
    p.add_argument("--name", required=True)
    p.add_argument("--method", choices=("direct", "untwist"), default="direct")
    p.set_defaults(fn=cmd_antipode)

    p = sub.add_parser("delta", help="iterated coproducts and coassociativity sweep")
    p.add_argument("file")
    p.add_argument("--name", required=True)
    p.add_argument("-n", type=int, default=2)
    p.add_argument("--check-all-sequences", action="store_true",
                   dest="check_all_sequences")
    p.add_argument("--max-K", type=int, default=5, dest="max_K")
    p.set_defaults(fn=cmd_delta)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, UnknownName) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BihomError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
