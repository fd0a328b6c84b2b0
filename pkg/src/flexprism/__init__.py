"""flexprism: flexible prismatic polyhedra.

Construct the four families of flexible junctures, assemble open (genus-0)
and toroidal (genus-1) prismatic polyhedra from them, realize vertex
coordinates as a function of the single flexion parameter, and certify
numerically that faces stay congruent while every dihedral angle moves.
"""

from .assembly import (
    Orientation,
    PolyhedronSpec,
    SegmentSpec,
    append_segment,
    build_open,
    build_torus,
    edge_lengths,
    effective_juncture,
    euler_counts,
    min_segment_length,
    offsets,
    variant_tag,
)
from .errors import (
    ClosureError,
    DegenerateGeometryError,
    EmptyFlexionIntervalError,
    FlexionRangeError,
    FlexprismError,
    InfeasibleLengthError,
    OrientationRuleError,
    SingularConstraintError,
    SpecFormatError,
)
from .flexion import (
    DihedralProfile,
    Frame,
    RigidityReport,
    dihedral_profiles,
    realize,
    rigidity_report,
    sweep,
)
from .geom import FlexionInterval, orientation_vectors
from .io import (
    RunConfig,
    default_truncation,
    load_config,
    load_spec,
    read_obj,
    read_spec,
    save_spec,
    write_obj,
    write_profiles_csv,
    write_rigidity_text,
    write_spec,
)
from .juncture import (
    chain_steps,
    chain_vertices,
    closure_residual,
    dihedral_from_angles,
    edge_step,
    flexion_range,
    symmetric_start,
)
from .params import (
    JunctureParams,
    JunctureType,
    alternate_params,
    continuity_residual,
    juncture_i_oee,
    juncture_ii_aee,
    juncture_ii_oee,
    juncture_iii_oae,
    sign_pattern,
    with_z_signs,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # geometry kernel
    "orientation_vectors",
    "FlexionInterval",
    # parameter sets
    "JunctureType",
    "JunctureParams",
    "juncture_i_oee",
    "juncture_ii_aee",
    "juncture_ii_oee",
    "juncture_iii_oae",
    "alternate_params",
    "continuity_residual",
    "sign_pattern",
    "with_z_signs",
    # juncture realization
    "edge_step",
    "chain_steps",
    "chain_vertices",
    "closure_residual",
    "flexion_range",
    "symmetric_start",
    "dihedral_from_angles",
    # assembly
    "Orientation",
    "SegmentSpec",
    "PolyhedronSpec",
    "build_open",
    "build_torus",
    "append_segment",
    "offsets",
    "min_segment_length",
    "edge_lengths",
    "effective_juncture",
    "variant_tag",
    "euler_counts",
    # flexion
    "Frame",
    "realize",
    "sweep",
    "RigidityReport",
    "rigidity_report",
    "DihedralProfile",
    "dihedral_profiles",
    # io
    "RunConfig",
    "load_config",
    "load_spec",
    "save_spec",
    "read_spec",
    "write_spec",
    "write_obj",
    "read_obj",
    "write_profiles_csv",
    "write_rigidity_text",
    "default_truncation",
    # errors
    "FlexprismError",
    "SingularConstraintError",
    "InfeasibleLengthError",
    "FlexionRangeError",
    "EmptyFlexionIntervalError",
    "DegenerateGeometryError",
    "OrientationRuleError",
    "ClosureError",
    "SpecFormatError",
]
