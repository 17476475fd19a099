"""Viewpoints, views, and 4D-coextension over view elements.

A system description is a set of views, each governed by a viewpoint
that fixes its structure type (component-connector, module-interface,
allocation) and, for endeavor descriptions, its kind (practice,
process, team). View elements either denote spatio-temporally extended
individuals (has_extent) or definition-only entities.

Two extended elements asserted coextensive denote the same individual:
coextension classes are merged sets, and a realization-node binding on
any member propagates to the whole class. Definition-only elements can
never join a class or carry a binding.

The architecture check passes only when the examined views cover all
three structure types; fewer is not yet a viable architecture. The
endeavor lint warns for each missing description kind: practice-,
process-, and team-based ways of working are all needed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable

from .designation import ASPECT_ORDER, Aspect, AspectChain
from .errors import ModelError


class StructureType(str, Enum):
    COMPONENT_CONNECTOR = "ComponentConnector"
    MODULE_INTERFACE = "ModuleInterface"
    ALLOCATION = "Allocation"
    OTHER = "Other"


class DescriptionKind(str, Enum):
    PRACTICE = "Practice"
    PROCESS = "Process"
    TEAM = "Team"
    OTHER = "Other"


REQUIRED_STRUCTURE_TYPES = (
    StructureType.COMPONENT_CONNECTOR,
    StructureType.MODULE_INTERFACE,
    StructureType.ALLOCATION,
)

REQUIRED_DESCRIPTION_KINDS = (
    DescriptionKind.PRACTICE,
    DescriptionKind.PROCESS,
    DescriptionKind.TEAM,
)


@dataclass(frozen=True)
class Viewpoint:
    name: str
    structure_type: StructureType = StructureType.OTHER
    concerns: tuple[str, ...] = ()
    description_kind: DescriptionKind = DescriptionKind.OTHER


@dataclass(frozen=True)
class View:
    name: str
    viewpoint: str
    elements: tuple[str, ...] = ()


@dataclass(frozen=True)
class ViewElement:
    id: str
    label: str = ""
    # True: denotes a spatio-temporally extended individual.
    # False: definition-only entity (pure information has no extent).
    has_extent: bool = False


@dataclass(frozen=True)
class RealizationNode:
    """An individual of the realized system, designated per aspect."""

    id: str
    designators: tuple[AspectChain, ...] = ()

    def __post_init__(self) -> None:
        chains = tuple(
            sorted(self.designators, key=lambda c: ASPECT_ORDER.index(c.aspect))
        )
        object.__setattr__(self, "designators", chains)
        seen: set[Aspect] = set()
        for chain in chains:
            if chain.aspect in seen:
                raise ModelError(
                    "DUPLICATE_ASPECT",
                    f"node {self.id!r} has two {chain.aspect.value} designators",
                )
            seen.add(chain.aspect)

    def designator(self, aspect: Aspect) -> AspectChain | None:
        for chain in self.designators:
            if chain.aspect is aspect:
                return chain
        return None


@dataclass(frozen=True)
class DescriptionModel:
    viewpoints: tuple[Viewpoint, ...] = ()
    views: tuple[View, ...] = ()
    elements: tuple[ViewElement, ...] = ()
    realization_nodes: tuple[RealizationNode, ...] = ()
    # Non-singleton classes only; untouched elements are implicit singletons.
    coextension: frozenset[frozenset[str]] = frozenset()
    # (element id, realization node id), sorted by element id.
    bindings: tuple[tuple[str, str], ...] = ()

    def viewpoint(self, name: str) -> Viewpoint | None:
        for vp in self.viewpoints:
            if vp.name == name:
                return vp
        return None

    def view(self, name: str) -> View | None:
        for view in self.views:
            if view.name == name:
                return view
        return None

    def element(self, elem_id: str) -> ViewElement | None:
        for elem in self.elements:
            if elem.id == elem_id:
                return elem
        return None

    def realization_node(self, node_id: str) -> RealizationNode | None:
        for node in self.realization_nodes:
            if node.id == node_id:
                return node
        return None

    def binding_of(self, elem_id: str) -> str | None:
        for elem, node in self.bindings:
            if elem == elem_id:
                return node
        return None


def add_viewpoint(model: DescriptionModel, vp: Viewpoint) -> DescriptionModel:
    if model.viewpoint(vp.name) is not None:
        raise ModelError("DUPLICATE_NAME", f"viewpoint {vp.name!r} already defined")
    return replace(model, viewpoints=model.viewpoints + (vp,))


def add_view(model: DescriptionModel, view: View) -> DescriptionModel:
    if model.view(view.name) is not None:
        raise ModelError("DUPLICATE_NAME", f"view {view.name!r} already defined")
    if model.viewpoint(view.viewpoint) is None:
        raise ModelError(
            "UNKNOWN_REFERENCE", f"view {view.name!r} cites viewpoint "
            f"{view.viewpoint!r} which is not defined"
        )
    for elem_id in view.elements:
        if model.element(elem_id) is None:
            raise ModelError(
                "UNKNOWN_REFERENCE",
                f"view {view.name!r} cites element {elem_id!r} which is not defined",
            )
    return replace(model, views=model.views + (view,))


def add_element(model: DescriptionModel, elem: ViewElement) -> DescriptionModel:
    if model.element(elem.id) is not None:
        raise ModelError("DUPLICATE_NAME", f"element id {elem.id!r} already used")
    return replace(model, elements=model.elements + (elem,))


def add_realization_node(
    model: DescriptionModel, node: RealizationNode
) -> DescriptionModel:
    if model.realization_node(node.id) is not None:
        raise ModelError("DUPLICATE_NAME", f"node id {node.id!r} already used")
    return replace(model, realization_nodes=model.realization_nodes + (node,))


def coextension_class(model: DescriptionModel, elem_id: str) -> frozenset[str]:
    """The element's coextension class; singleton when never asserted."""
    _require_extended(model, elem_id)
    for cls in model.coextension:
        if elem_id in cls:
            return cls
    return frozenset({elem_id})


def assert_coextension(
    model: DescriptionModel, elem_a: str, elem_b: str
) -> DescriptionModel:
    """Merge the classes of two extended elements.

    Both elements then denote one individual; any realization-node
    binding spreads to the merged class. Conflicting bindings refuse
    the merge.
    """
    _require_extended(model, elem_a)
    _require_extended(model, elem_b)
    class_a = coextension_class(model, elem_a)
    class_b = coextension_class(model, elem_b)
    if class_a == class_b:
        return model
    node_a = model.binding_of(elem_a)
    node_b = model.binding_of(elem_b)
    if node_a is not None and node_b is not None and node_a != node_b:
        raise ModelError(
            "BINDING_CONFLICT",
            f"classes of {elem_a!r} and {elem_b!r} are bound to different "
            f"realization nodes ({node_a!r}, {node_b!r})",
        )
    merged = class_a | class_b
    classes = {cls for cls in model.coextension if cls not in (class_a, class_b)}
    classes.add(merged)
    model = replace(model, coextension=frozenset(classes))
    node = node_a if node_a is not None else node_b
    if node is not None:
        model = _bind_class(model, merged, node)
    return model


def bind_element(
    model: DescriptionModel, elem_id: str, node_id: str
) -> DescriptionModel:
    """Bind an extended element (and so its whole class) to a node."""
    _require_extended(model, elem_id)
    if model.realization_node(node_id) is None:
        raise ModelError(
            "UNKNOWN_REFERENCE", f"no realization node {node_id!r}"
        )
    cls = coextension_class(model, elem_id)
    for member in cls:
        bound = model.binding_of(member)
        if bound is not None and bound != node_id:
            raise ModelError(
                "BINDING_CONFLICT",
                f"class of {elem_id!r} is already bound to node {bound!r}",
            )
    return _bind_class(model, cls, node_id)


def viable_architecture(
    model: DescriptionModel, views: Iterable[str]
) -> "ArchitectureReport":
    """Minimally one view per structure type, else not yet viable."""
    covered: set[StructureType] = set()
    for name in views:
        view = model.view(name)
        if view is None:
            raise ModelError("UNKNOWN_REFERENCE", f"no view {name!r}")
        vp = model.viewpoint(view.viewpoint)
        covered.add(vp.structure_type)
    return ArchitectureReport(
        covered=tuple(t for t in REQUIRED_STRUCTURE_TYPES if t in covered),
        missing=tuple(t for t in REQUIRED_STRUCTURE_TYPES if t not in covered),
    )


@dataclass(frozen=True)
class ArchitectureReport:
    covered: tuple[StructureType, ...]
    missing: tuple[StructureType, ...]

    @property
    def ok(self) -> bool:
        return not self.missing


def endeavor_viewpoint_lint(model: DescriptionModel) -> tuple[str, ...]:
    """One warning per missing endeavor description kind; need them all."""
    present = {vp.description_kind for vp in model.viewpoints}
    return tuple(
        f"missing endeavor description kind: {kind.value}"
        for kind in REQUIRED_DESCRIPTION_KINDS
        if kind not in present
    )


def bind_designator(
    model: DescriptionModel, node_id: str, chain: AspectChain
) -> DescriptionModel:
    node = model.realization_node(node_id)
    if node is None:
        raise ModelError("UNKNOWN_REFERENCE", f"no realization node {node_id!r}")
    if node.designator(chain.aspect) is not None:
        raise ModelError(
            "ASPECT_ALREADY_BOUND",
            f"node {node_id!r} already has a {chain.aspect.value} designator",
        )
    updated = RealizationNode(id=node.id, designators=node.designators + (chain,))
    nodes = tuple(updated if n.id == node_id else n for n in model.realization_nodes)
    return replace(model, realization_nodes=nodes)


def _require_extended(model: DescriptionModel, elem_id: str) -> ViewElement:
    elem = model.element(elem_id)
    if elem is None:
        raise ModelError("UNKNOWN_REFERENCE", f"no element {elem_id!r}")
    if not elem.has_extent:
        raise ModelError(
            "NO_EXTENT",
            f"element {elem_id!r} is definition-only and denotes no "
            "spatio-temporal extent",
        )
    return elem


def _bind_class(
    model: DescriptionModel, cls: frozenset[str], node_id: str
) -> DescriptionModel:
    pairs = dict(model.bindings)
    for member in cls:
        pairs[member] = node_id
    return replace(model, bindings=tuple(sorted(pairs.items())))
