"""Local certification of planarity with logarithmic-size certificates.

Layers:

- ``graphs`` / ``minors``: instances, degeneracy, contraction, minor oracle
- ``embedding``: rotation systems and subdivision witnesses
- ``pop``: path-outerplanarity prover/verifier (the inner scheme)
- ``transform``: spanning-tree unfolding of a graph into a path-shaped one
- ``pls``: the full one-round planarity scheme (prover + node verifier)
- ``sim``: synchronous one-round simulator, firewall, attack harness
- ``lowerbound``: hard-instance generators validated by the minor oracle
- ``formats`` / ``cli``: text serialization and the command-line surface
"""

from .embedding import (
    NonPlanarWitness,
    RotationSystem,
    canonical_rotation,
    faces,
    planar_embed,
    validate_rotation,
)
from .errors import (
    FirewallViolation,
    FormatError,
    NonPlanarError,
    ParameterError,
    PlanarCertError,
    ResourceError,
    StructuralError,
    WitnessError,
)
from .formats import parse_certificates, parse_graph, write_certificates, write_graph
from .graphs import (
    DegeneracyOrder,
    Graph,
    build_graph,
    contract_edges,
    degeneracy_order,
    generate,
    subdivide,
)
from .lowerbound import (
    BipartiteInstance,
    BlockInstance,
    gen_bipartite_instance,
    gen_block_instance,
    gen_glued_instance,
    validate_lowerbound_claims,
)
from .minors import has_biclique_minor, has_clique_minor, minor_contains
from .pls import (
    EdgeCertificate,
    NodeCertificate,
    TreeSub,
    Verdict,
    certificate_size_bits,
    pack_certificate,
    prove_planar,
    unpack_certificate,
    verify_node_planarity,
)
from .pop import (
    PopCertificate,
    PopWitness,
    is_path_outerplanar,
    pop_prove,
    pop_verify_all,
    pop_verify_node,
)
from .sim import (
    Assignment,
    AttackSummary,
    RunReport,
    attack,
    honest_assignment,
    run_round,
    size_sweep,
)
from .transform import (
    DfsMapping,
    InducedGraph,
    RootedTree,
    contract_check,
    dfs_mapping,
    induce_graph,
    spanning_tree_dfs,
)

__all__ = [
    "FirewallViolation",
    "FormatError",
    "NonPlanarError",
    "ParameterError",
    "PlanarCertError",
    "ResourceError",
    "StructuralError",
    "WitnessError",
    "DegeneracyOrder",
    "Graph",
    "build_graph",
    "contract_edges",
    "degeneracy_order",
    "generate",
    "subdivide",
    "has_biclique_minor",
    "has_clique_minor",
    "minor_contains",
    "NonPlanarWitness",
    "RotationSystem",
    "canonical_rotation",
    "faces",
    "planar_embed",
    "validate_rotation",
    "PopCertificate",
    "PopWitness",
    "is_path_outerplanar",
    "pop_prove",
    "pop_verify_all",
    "pop_verify_node",
    "DfsMapping",
    "InducedGraph",
    "RootedTree",
    "contract_check",
    "dfs_mapping",
    "induce_graph",
    "spanning_tree_dfs",
    "EdgeCertificate",
    "NodeCertificate",
    "TreeSub",
    "Verdict",
    "certificate_size_bits",
    "pack_certificate",
    "prove_planar",
    "unpack_certificate",
    "verify_node_planarity",
    "Assignment",
    "AttackSummary",
    "RunReport",
    "attack",
    "honest_assignment",
    "run_round",
    "size_sweep",
    "BipartiteInstance",
    "BlockInstance",
    "gen_bipartite_instance",
    "gen_block_instance",
    "gen_glued_instance",
    "validate_lowerbound_claims",
    "parse_certificates",
    "parse_graph",
    "write_certificates",
    "write_graph",
]

__version__ = "0.1.0"
