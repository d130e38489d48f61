"""Command-line interface.

Every subcommand prints one JSON report to stdout.  Exit codes: 0 on
success, 1 when the inputs fail a validity check (for example a partition
that is not a superclass system), 2 on usage or input errors (malformed
files, unknown group references, exceeded limits).

Groups are referenced by file path or by bundled corpus name; subgroups by
a comma-separated list of element indices or labels, or by a JSON file with
an "elements" list.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path
from typing import Any, Optional

from . import __version__
from .characters import character_table, orthogonality_report, supercharacter_partition
from .corpus import CORPUS_NAMES, corpus_group
from .errors import SupercharError
from .groups import FiniteGroup, subgroup_generated
from .io import (
    canonical_json,
    load_group,
    parse_generator_string,
    parse_partition,
    partition_to_json,
)
from .lattice import (
    deflate,
    is_supernormal,
    norm_lattice,
    restrict,
    star_of_restriction_deflation,
)
from .schur import SuperclassPartition, enumerate_scts, verify_sct
from .series import all_chief_series, jordan_holder_match, verify_chief_match
from .sweep import sweep_corpus


class _UsageError(Exception):
    pass


class _ValidationFailure(Exception):
    def __init__(self, payload: dict) -> None:
        super().__init__("validation failure")
        self.payload = payload


def _digest(path: Optional[str]) -> Optional[str]:
    if path is None or not Path(path).exists():
        return None
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()[:16]


def _load_group_ref(ref: str) -> tuple[FiniteGroup, dict]:
    meta = {"group": ref, "group_digest": _digest(ref)}
    path = Path(ref)
    if path.exists():
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise _UsageError(f"malformed JSON in {ref}: {exc}") from exc
        try:
            return load_group(data), meta
        except (SupercharError, ValueError) as exc:
            raise _UsageError(f"invalid group file {ref}: {exc}") from exc
    if ref in CORPUS_NAMES:
        return corpus_group(ref), meta
    raise _UsageError(f"unknown group reference {ref!r}")


def _load_parts(path: str, group: FiniteGroup) -> list[list[int]]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError as exc:
        raise _UsageError(f"no such partition file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise _UsageError(f"malformed JSON in {path}: {exc}") from exc
    try:
        return parse_partition(data, group)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def _validated_partition(group: FiniteGroup, parts: list[list[int]]) -> SuperclassPartition:
    report = verify_sct(group, parts)
    if not report.valid:
        raise _ValidationFailure(
            {
                "valid": False,
                "failures": [
                    {
                        "kind": f.kind,
                        "parts": list(f.parts),
                        "elements": list(f.elements),
                        "detail": f.detail,
                    }
                    for f in report.failures
                ],
            }
        )
    return SuperclassPartition(group, parts, validated=True)


def _resolve_normal(group: FiniteGroup, spec: str) -> frozenset[int]:
    path = Path(spec)
    if path.exists():
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise _UsageError(f"malformed JSON in {spec}: {exc}") from exc
        elements = data["elements"] if isinstance(data, dict) else data
        try:
            gens = [int(e) if not isinstance(e, str) else e for e in elements]
            from .io import resolve_elements

            return frozenset(resolve_elements(group, gens))
        except ValueError as exc:
            raise _UsageError(str(exc)) from exc
    try:
        gens = parse_generator_string(group, spec)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    return subgroup_generated(group, gens)


def _subgroup_payload(group: FiniteGroup, subset: frozenset[int]) -> dict:
    members = sorted(subset)
    payload: dict[str, Any] = {"order": len(members), "elements": members}
    if group.labels is not None:
        payload["labels"] = [group.label_of(g) for g in members]
    return payload


def _partition_payload(group: FiniteGroup, sct: SuperclassPartition) -> dict:
    return partition_to_json(group, [sorted(p) for p in sct.parts],
                             group_name=group.name or "", with_labels=True)


# ---------------------------------------------------------------------------
# subcommand implementations (each returns the results payload)


def _cmd_verify(args, group: FiniteGroup) -> dict:
    parts = _load_parts(args.partition, group)
    report = verify_sct(group, parts)
    payload = {
        "valid": report.valid,
        "parts": len(parts),
        "failures": [
            {"kind": f.kind, "parts": list(f.parts), "elements": list(f.elements), "detail": f.detail}
            for f in report.failures
        ],
    }
    if not report.valid:
        raise _ValidationFailure(payload)
    return payload


def _cmd_enumerate(args, group: FiniteGroup) -> dict:
    theories = enumerate_scts(group)
    return {
        "count": len(theories),
        "theories": [
            {"parts": [sorted(p) for p in t.parts], "num_parts": t.num_parts}
            for t in theories
        ],
    }


def _cmd_supernormal(args, group: FiniteGroup) -> dict:
    sct = _validated_partition(group, _load_parts(args.partition, group))
    spec = args.subgroup or args.normal
    if not spec:
        raise _UsageError("supernormal needs --subgroup (or --normal)")
    subset = _resolve_normal(group, spec)
    flag = is_supernormal(sct, subset)
    return {"supernormal": flag, "subgroup": _subgroup_payload(group, subset)}


def _cmd_lattice(args, group: FiniteGroup) -> dict:
    sct = _validated_partition(group, _load_parts(args.partition, group))
    lattice = norm_lattice(sct)
    return {
        "nodes": [_subgroup_payload(group, node) for node in lattice.nodes],
        "hasse_edges": [list(edge) for edge in lattice.hasse_edges],
    }


def _induced_payload(group: FiniteGroup, induced) -> dict:
    quotient_group = induced.group
    parts = [sorted(p) for p in induced.theory.parts]
    coset_labels = []
    for e in range(quotient_group.order):
        members = sorted(induced.coset_members[e])
        if group.labels is not None:
            coset_labels.append("{" + ",".join(group.label_of(g) for g in members) + "}")
        else:
            coset_labels.append("{" + ",".join(str(g) for g in members) + "}")
    return {
        "order": quotient_group.order,
        "parts": parts,
        "part_labels": [[coset_labels[e] for e in p] for p in parts],
        "cosets": [sorted(induced.coset_members[e]) for e in range(quotient_group.order)],
    }


def _cmd_restrict(args, group: FiniteGroup) -> dict:
    sct = _validated_partition(group, _load_parts(args.partition, group))
    subset = _resolve_normal(group, args.normal)
    if not is_supernormal(sct, subset):
        raise _ValidationFailure({"supernormal": False, "subgroup": sorted(subset)})
    induced = restrict(sct, subset)
    return {"normal": _subgroup_payload(group, subset), "theory": _induced_payload(group, induced)}


def _cmd_deflate(args, group: FiniteGroup) -> dict:
    sct = _validated_partition(group, _load_parts(args.partition, group))
    subset = _resolve_normal(group, args.normal)
    if not is_supernormal(sct, subset):
        raise _ValidationFailure({"supernormal": False, "subgroup": sorted(subset)})
    induced = deflate(sct, subset)
    return {"normal": _subgroup_payload(group, subset), "theory": _induced_payload(group, induced)}


def _cmd_star(args, group: FiniteGroup) -> dict:
    sct = _validated_partition(group, _load_parts(args.partition, group))
    subset = _resolve_normal(group, args.normal)
    if not is_supernormal(sct, subset):
        raise _ValidationFailure({"supernormal": False, "subgroup": sorted(subset)})
    star = star_of_restriction_deflation(sct, subset)
    from .schur import refines

    return {
        "normal": _subgroup_payload(group, subset),
        "star": _partition_payload(group, star),
        "refined_by_input": refines(sct, star),
    }


def _cmd_chief_series(args, group: FiniteGroup) -> dict:
    sct = _validated_partition(group, _load_parts(args.partition, group))
    series = all_chief_series(sct)
    return {
        "count": len(series),
        "length": series[0].length if series else 0,
        "series": [
            {
                "chain": [sorted(node) for node in s.chain],
                "factor_orders": [f.group.order for f in s.factors],
                "factor_parts": [f.theory.num_parts for f in s.factors],
            }
            for s in series
        ],
    }


def _cmd_jordan_holder(args, group: FiniteGroup) -> dict:
    sct = _validated_partition(group, _load_parts(args.partition, group))
    series = all_chief_series(sct)
    pairs = []
    if args.all_pairs:
        wanted = [(i, j) for i in range(len(series)) for j in range(len(series)) if i < j]
    else:
        wanted = [(0, 1)] if len(series) >= 2 else [(0, 0)]
    for i, j in wanted:
        match = jordan_holder_match(sct, series[i], series[j])
        assert verify_chief_match(series[i], series[j], match)
        pairs.append(
            {
                "series": [i, j],
                "tau": list(match.tau),
                "witnesses": [
                    {"factor": k + 1, "map": [int(v) for v in w.map.map]}
                    for k, w in enumerate(match.witnesses)
                ],
            }
        )
    return {
        "series_count": len(series),
        "series": [[sorted(node) for node in s.chain] for s in series],
        "matches": pairs,
    }


def _cmd_characters(args, group: FiniteGroup) -> dict:
    tol = args.tolerance
    table = character_table(group, tol=tol)
    payload: dict[str, Any] = {
        "irreducibles": len(table.rows),
        "degrees": list(table.degrees),
    }
    if args.partition:
        sct = _validated_partition(group, _load_parts(args.partition, group))
        data = supercharacter_partition(sct, table, tol=tol)
        report = orthogonality_report(data)
        reps = [min(p) for p in data.sct.parts]
        payload["supercharacters"] = {
            "x_partition": [list(x) for x in data.x_partition],
            "degrees": list(data.degrees),
            "sigma_on_superclasses": [
                [[float(s.values[r].real), float(s.values[r].imag)] for r in reps]
                for s in data.sigma
            ],
            "defects": {
                "cross_inner": report.max_cross_inner,
                "idempotency": report.max_idempotency_defect,
                "constancy": report.max_constancy_defect,
            },
        }
    return payload


def _cmd_corpus_sweep(args, group=None) -> dict:
    reports = sweep_corpus(
        max_order=args.max_order,
        jobs=args.jobs,
        algebra_samples=args.samples,
        theta_samples=min(args.samples, 1000),
    )
    violations = [v for r in reports for v in r["violations"]]
    return {
        "groups": len(reports),
        "total_theories": sum(r["theories"] for r in reports),
        "violations": violations,
        "reports": [
            {k: r[k] for k in ("group", "order", "classes", "theories")} for r in reports
        ],
    }


_COMMANDS = {
    "verify": (_cmd_verify, True, True, False),
    "enumerate": (_cmd_enumerate, True, False, False),
    "supernormal": (_cmd_supernormal, True, True, False),
    "lattice": (_cmd_lattice, True, True, False),
    "restrict": (_cmd_restrict, True, True, True),
    "deflate": (_cmd_deflate, True, True, True),
    "star": (_cmd_star, True, True, True),
    "chief-series": (_cmd_chief_series, True, True, False),
    "jordan-holder": (_cmd_jordan_holder, True, True, False),
    "characters": (_cmd_characters, True, False, False),
    "corpus-sweep": (_cmd_corpus_sweep, False, False, False),
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superchar",
        description="Compute with supercharacter theories of finite groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, needs_group, needs_partition, needs_normal) in _COMMANDS.items():
        p = sub.add_parser(name)
        if needs_group:
            p.add_argument("--group", required=True, help="group file or corpus name")
        if name == "characters":
            p.add_argument("--partition", help="partition file (optional)")
            p.add_argument("--tolerance", type=float, default=1e-8)
        elif needs_partition:
            p.add_argument("--partition", required=True, help="partition file")
        if needs_normal:
            p.add_argument(
                "--normal",
                required=True,
                help="subgroup: comma-separated generators (labels or indices) or a JSON file",
            )
        if name == "supernormal":
            p.add_argument("--subgroup", help="candidate subgroup generators, e.g. 'g1,g2'")
            p.add_argument("--normal", help="alias for --subgroup")
        if name == "jordan-holder":
            p.add_argument("--all-pairs", action="store_true")
        if name == "corpus-sweep":
            p.add_argument("--jobs", type=int, default=1)
            p.add_argument("--max-order", type=int, default=None)
            p.add_argument("--samples", type=int, default=10_000)
        p.add_argument("--format", choices=("json", "text"), default="json")
    return parser


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return canonical_json(report)
    lines = [f"{report['command']} (v{report['version']}, {report['timing']['seconds']:.3f}s)"]

    def walk(obj: Any, indent: int) -> None:
        pad = "  " * indent
        if isinstance(obj, dict):
            for key, value in obj.items():
                if isinstance(value, (dict, list)) and value and not _is_flat(value):
                    lines.append(f"{pad}{key}:")
                    walk(value, indent + 1)
                else:
                    lines.append(f"{pad}{key}: {value}")
        elif isinstance(obj, list):
            for value in obj:
                if isinstance(value, (dict, list)) and value and not _is_flat(value):
                    lines.append(f"{pad}-")
                    walk(value, indent + 1)
                else:
                    lines.append(f"{pad}- {value}")

    walk(report["results"], 1)
    return "\n".join(lines) + "\n"


def _is_flat(value: Any) -> bool:
    if isinstance(value, list):
        return all(not isinstance(v, (dict, list)) for v in value)
    return False


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handler, needs_group, _, _ = _COMMANDS[args.command]
    started = time.time()
    inputs: dict[str, Any] = {}
    try:
        group = None
        if needs_group:
            group, meta = _load_group_ref(args.group)
            inputs.update(meta)
        if getattr(args, "partition", None):
            inputs["partition"] = args.partition
            inputs["partition_digest"] = _digest(args.partition)
        results = handler(args, group)
        exit_code = 0
    except _ValidationFailure as failure:
        results = failure.payload
        exit_code = 1
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SupercharError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    report = {
        "command": args.command,
        "inputs": inputs,
        "results": results,
        "timing": {"seconds": round(time.time() - started, 6)},
        "version": __version__,
    }
    sys.stdout.write(_render(report, args.format))
    return exit_code


if __name__ == "__main__":
    raise SystemExit(main())
