import json

import pytest

from superchar.corpus import corpus, corpus_group, nine_part_partition_path
from superchar.groups import subgroup_generated
from superchar.io import parse_partition
from superchar.schur import validated_sct


@pytest.fixture(scope="session")
def c3xc6_group():
    return corpus_group("c3xc6")


@pytest.fixture(scope="session")
def nine_part_sct(c3xc6_group):
    with open(nine_part_partition_path(), "r", encoding="utf-8") as fh:
        parts = parse_partition(json.load(fh), c3xc6_group)
    return validated_sct(c3xc6_group, parts, name="c3xc6-nine")


@pytest.fixture(scope="session")
def c3xc6_subgroups(c3xc6_group):
    g = c3xc6_group
    lab = {s: i for i, s in enumerate(g.labels)}
    return {
        "1": frozenset({0}),
        "xy2": subgroup_generated(g, [lab["x*y^2"]]),
        "y2": subgroup_generated(g, [lab["y^2"]]),
        "y": subgroup_generated(g, [lab["y"]]),
        "x_y2": subgroup_generated(g, [lab["x"], lab["y^2"]]),
        "x": subgroup_generated(g, [lab["x"]]),
        "G": frozenset(range(g.order)),
    }


@pytest.fixture(scope="session")
def small_corpus():
    """All bundled groups of order at most 12, built from scratch."""
    return {name: g for name, g in corpus(max_order=12).items()}


def label_index(group):
    return {s: i for i, s in enumerate(group.labels)}
