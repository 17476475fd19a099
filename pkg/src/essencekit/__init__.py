"""essencekit: a method-engineering kernel engine and model validator.

The package ships a systems engineering kernel (alphas, states,
checkpoints), computes alpha states from checkpoint records, parses and
resolves multi-aspect reference designations, validates document
designation codes, and checks description models for architecture
viability, endeavor coverage, and 4D coextension consistency. Projects
persist as single deterministic JSON documents; the ``essencekit``
command exposes everything for batch use.
"""

from .builtin_kernel import (
    PLACEHOLDER_STATE,
    builtin_se_kernel,
    has_placeholder_states,
)
from .description import (
    ArchitectureReport,
    DescriptionKind,
    DescriptionModel,
    RealizationNode,
    StructureType,
    View,
    ViewElement,
    Viewpoint,
    add_element,
    add_realization_node,
    add_view,
    add_viewpoint,
    assert_coextension,
    bind_designator,
    bind_element,
    coextension_class,
    endeavor_viewpoint_lint,
    viable_architecture,
)
from .designation import (
    BUILTIN_DCC_TABLE,
    Aspect,
    AspectChain,
    BreakdownNode,
    BreakdownTree,
    ChainResolution,
    DccTable,
    DocumentDesignation,
    MultiAspectDesignation,
    UnambiguityReport,
    check_at_least_one_unambiguous,
    format_designation,
    format_document_designation,
    loads_dcc_table,
    parse_designation,
    parse_document_designation,
    resolve,
)
from .engine import (
    AlphaInstance,
    Assessment,
    Blocker,
    CheckpointRecord,
    StateResult,
    SystemLevel,
    WorkProductInstance,
    add_instance,
    add_work_product,
    alpha_state,
    blocking_checkpoints,
    record_checkpoint,
    render_card,
)
from .errors import (
    AssessmentError,
    DesignationError,
    EssenceError,
    KernelError,
    ModelError,
    ProjectError,
)
from .metamodel import (
    AlphaDefinition,
    AreaOfConcern,
    Checkpoint,
    Finding,
    KernelDefinition,
    StateDefinition,
    ValidationReport,
    WorkProductDefinition,
    dumps_kernel,
    find_alpha,
    kernel_from_doc,
    kernel_to_doc,
    loads_kernel,
    subalpha_closure,
    validate_kernel,
)
from .store import Project, load_project, new_project, save_project

__all__ = [
    "AlphaDefinition",
    "AlphaInstance",
    "ArchitectureReport",
    "AreaOfConcern",
    "Aspect",
    "AspectChain",
    "Assessment",
    "AssessmentError",
    "Blocker",
    "BreakdownNode",
    "BreakdownTree",
    "BUILTIN_DCC_TABLE",
    "ChainResolution",
    "Checkpoint",
    "CheckpointRecord",
    "DccTable",
    "DescriptionKind",
    "DescriptionModel",
    "DesignationError",
    "DocumentDesignation",
    "EssenceError",
    "Finding",
    "KernelDefinition",
    "KernelError",
    "ModelError",
    "MultiAspectDesignation",
    "PLACEHOLDER_STATE",
    "Project",
    "ProjectError",
    "RealizationNode",
    "StateDefinition",
    "StateResult",
    "StructureType",
    "SystemLevel",
    "UnambiguityReport",
    "ValidationReport",
    "View",
    "ViewElement",
    "Viewpoint",
    "WorkProductDefinition",
    "WorkProductInstance",
    "add_element",
    "add_instance",
    "add_realization_node",
    "add_view",
    "add_viewpoint",
    "add_work_product",
    "alpha_state",
    "assert_coextension",
    "bind_designator",
    "bind_element",
    "blocking_checkpoints",
    "builtin_se_kernel",
    "check_at_least_one_unambiguous",
    "coextension_class",
    "dumps_kernel",
    "endeavor_viewpoint_lint",
    "find_alpha",
    "format_designation",
    "format_document_designation",
    "has_placeholder_states",
    "kernel_from_doc",
    "kernel_to_doc",
    "load_project",
    "loads_dcc_table",
    "loads_kernel",
    "new_project",
    "parse_designation",
    "parse_document_designation",
    "record_checkpoint",
    "render_card",
    "resolve",
    "save_project",
    "subalpha_closure",
    "validate_kernel",
    "viable_architecture",
]
