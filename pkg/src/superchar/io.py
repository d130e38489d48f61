"""File formats: group and partition JSON, canonical serialization, labels.

Group files carry either a full Cayley table::

    {"name": "c4", "order": 4, "cayley": [[0,1,2,3], ...], "labels": ["1", ...]}

or permutation generators given as images of 0..degree-1::

    {"name": "a4", "degree": 4, "generators": [[1,2,0,3], [1,0,3,2]]}

Partition files list parts either as element indices or, when the group
file carries labels, as label strings::

    {"group": "c3xc6", "parts": [["1"], ["y", "y^3", "y^5"], ...]}

Canonicalized files (sorted keys, fixed separators, trailing newline)
round-trip byte-identically.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterable, Sequence, Union

from .groups import FiniteGroup, from_cayley_table, from_permutation_generators


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def load_group(data: dict) -> FiniteGroup:
    """Build a validated group from a parsed group description."""
    if not isinstance(data, dict):
        raise ValueError("group description must be a JSON object")
    name = data.get("name")
    labels = data.get("labels")
    if "cayley" in data:
        table = data["cayley"]
        if "order" in data and int(data["order"]) != len(table):
            raise ValueError("declared order does not match table size")
        return from_cayley_table(table, name=name, labels=labels)
    if "generators" in data:
        degree = data.get("degree")
        gens = data["generators"]
        if degree is None and gens:
            degree = len(gens[0])
        if labels is not None:
            raise ValueError("labels are only supported with Cayley tables "
                             "(generator input is relabeled canonically)")
        return from_permutation_generators(gens, degree, name=name)
    raise ValueError("group description needs either 'cayley' or 'generators'")


def group_to_json(group: FiniteGroup) -> dict:
    payload: dict[str, Any] = {
        "name": group.name or f"group{group.order}",
        "order": group.order,
        "cayley": [[int(v) for v in row] for row in group.mul],
    }
    if group.labels is not None:
        payload["labels"] = list(group.labels)
    return payload


def read_group_file(path: Union[str, Path]) -> FiniteGroup:
    with open(path, "r", encoding="utf-8") as fh:
        return load_group(json.load(fh))


def write_group_file(group: FiniteGroup, path: Union[str, Path]) -> None:
    Path(path).write_text(canonical_json(group_to_json(group)), encoding="utf-8")


def resolve_element(group: FiniteGroup, token: Union[int, str]) -> int:
    """Turn an element index or label into an element index."""
    if isinstance(token, int):
        idx = token
    else:
        text = str(token).strip()
        if group.labels is not None and text in group.labels:
            idx = group.labels.index(text)
        else:
            try:
                idx = int(text)
            except ValueError:
                raise ValueError(f"unknown element label {token!r}") from None
    if idx < 0 or idx >= group.order:
        raise ValueError(f"element index {idx} out of range for order {group.order}")
    return idx


def resolve_elements(group: FiniteGroup, tokens: Iterable[Union[int, str]]) -> list[int]:
    return [resolve_element(group, t) for t in tokens]


def parse_generator_string(group: FiniteGroup, text: str) -> list[int]:
    """Parse a comma-separated list of element indices or labels."""
    tokens = [t for t in (s.strip() for s in text.split(",")) if t]
    return resolve_elements(group, tokens)


def parse_partition(data: dict, group: FiniteGroup) -> list[list[int]]:
    if not isinstance(data, dict) or "parts" not in data:
        raise ValueError("partition file needs a 'parts' list")
    return [resolve_elements(group, part) for part in data["parts"]]


def read_partition_file(path: Union[str, Path], group: FiniteGroup) -> list[list[int]]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_partition(json.load(fh), group)


def partition_to_json(
    group: FiniteGroup,
    parts: Sequence[Iterable[int]],
    *,
    group_name: str = "",
    with_labels: bool = False,
) -> dict:
    sorted_parts = sorted([sorted(int(g) for g in p) for p in parts], key=lambda p: (len(p), p))
    payload: dict[str, Any] = {
        "group": group_name or (group.name or ""),
        "parts": sorted_parts,
    }
    if with_labels and group.labels is not None:
        payload["part_labels"] = [[group.label_of(g) for g in p] for p in sorted_parts]
    return payload


def write_partition_file(
    group: FiniteGroup,
    parts: Sequence[Iterable[int]],
    path: Union[str, Path],
    *,
    group_name: str = "",
) -> None:
    payload = partition_to_json(group, parts, group_name=group_name)
    Path(path).write_text(canonical_json(payload), encoding="utf-8")
