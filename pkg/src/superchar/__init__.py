"""Computing with supercharacter theories of finite groups.

The package validates and enumerates superclass partitions through the
central Schur-ring criterion, builds the lattice of supernormal subgroups,
induces theories on subquotients, forms star products, and produces
verified Jordan-Holder witnesses between chief series.
"""

from .algebra import GroupAlgebraElement, hadamard, multiply
from .characters import (
    CharacterTable,
    ClassFunction,
    KernelCrosscheck,
    OrthogonalityReport,
    SupercharacterData,
    character_table,
    convolution,
    kernel_supernormality_crosscheck,
    orthogonality_report,
    pointwise,
    supercharacter_partition,
    theta,
)
from .corpus import build_group, corpus, corpus_group, cyclic, dicyclic, dihedral
from .errors import SupercharError
from .groups import (
    FiniteGroup,
    Homomorphism,
    all_subgroups,
    conjugacy_classes_of,
    direct_product,
    find_isomorphism,
    from_cayley_table,
    from_permutation_generators,
    intersect,
    is_normal,
    is_subgroup,
    isomorphisms,
    normal_subgroups,
    product_subgroup,
    quotient,
    subgroup_generated,
    subgroup_group,
)
from .io import load_group, read_group_file, read_partition_file, write_group_file
from .lattice import (
    InducedTheory,
    NormLattice,
    deflate,
    is_supernormal,
    norm_lattice,
    restrict,
    star_of_restriction_deflation,
    star_product,
    subquotient,
    supernormal_subgroups,
)
from .schur import (
    SuperclassPartition,
    ValidityReport,
    coarsest_sct,
    enumerate_scts,
    finest_sct,
    refines,
    validated_sct,
    verify_sct,
)
from .series import (
    ChiefSeries,
    ChiefSeriesMatch,
    SctIsomorphism,
    ZassenhausChains,
    all_chief_series,
    build_zassenhaus_chains,
    check_sct_iso,
    find_sct_iso,
    is_simple,
    jordan_holder_match,
    make_chief_series,
    diamond_witness,
    verify_chief_match,
)

__version__ = "0.1.0"
