"""Checkpoint-driven alpha state assessment.

Alphas progress through their ordered states; a state is achieved only
when it and every state before it have all checkpoints satisfied. The
achieved state is computed from checkpoint records alone, never from
the existence of work products: work products may evidence records, but
an alpha's state is independent of the degree of documentation (the
metonymy guard). In strict-evidence mode the guard points the other
way: a satisfied record with no evidence counts as unsatisfied.

Assessments are immutable values; recording returns a new assessment
with the record effective for its (instance, state, checkpoint) key.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import NamedTuple

from .designation import DocumentDesignation
from .errors import AssessmentError
from .metamodel import AlphaDefinition, KernelDefinition, StateDefinition, find_alpha


class SystemLevel(str, Enum):
    # An endeavor watches two systems: the one being engineered and the
    # stakeholders' system that uses it (where validation happens).
    SYSTEM_OF_INTEREST = "SystemOfInterest"
    USING_SYSTEM = "UsingSystem"


@dataclass(frozen=True)
class AlphaInstance:
    id: str
    alpha: str
    system_level: SystemLevel = SystemLevel.SYSTEM_OF_INTEREST


@dataclass(frozen=True)
class WorkProductInstance:
    id: str
    definition: str
    label: str = ""
    document_designation: DocumentDesignation | None = None


@dataclass(frozen=True)
class CheckpointRecord:
    alpha_instance: str
    state: str
    checkpoint: str
    satisfied: bool
    evidence: tuple[str, ...] = ()
    recorded_at: int = 0  # informational only; never affects computation

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.alpha_instance, self.state, self.checkpoint)


@dataclass(frozen=True)
class Assessment:
    project_id: str
    kernel: KernelDefinition
    instances: tuple[AlphaInstance, ...] = ()
    work_products: tuple[WorkProductInstance, ...] = ()
    records: tuple[CheckpointRecord, ...] = ()
    strict_evidence: bool = False

    def instance(self, instance_id: str) -> AlphaInstance | None:
        for inst in self.instances:
            if inst.id == instance_id:
                return inst
        return None

    def work_product(self, wp_id: str) -> WorkProductInstance | None:
        for wp in self.work_products:
            if wp.id == wp_id:
                return wp
        return None


class Blocker(NamedTuple):
    state: str
    checkpoint: str
    text: str


@dataclass(frozen=True)
class StateResult:
    achieved: str | None
    achieved_index: int  # -1 when no state is achieved
    next_state: str | None
    blocking: tuple[Blocker, ...]


def add_instance(a: Assessment, inst: AlphaInstance) -> Assessment:
    if find_alpha(a.kernel, inst.alpha) is None:
        raise AssessmentError(
            "UNKNOWN_ALPHA", f"kernel defines no alpha {inst.alpha!r}"
        )
    if a.instance(inst.id) is not None:
        raise AssessmentError(
            "DUPLICATE_INSTANCE", f"instance id {inst.id!r} already used"
        )
    return replace(a, instances=a.instances + (inst,))


def add_work_product(a: Assessment, wp: WorkProductInstance) -> Assessment:
    if a.kernel.workproduct(wp.definition) is None:
        raise AssessmentError(
            "UNKNOWN_DEFINITION",
            f"kernel defines no work product {wp.definition!r}",
        )
    if a.work_product(wp.id) is not None:
        raise AssessmentError(
            "DUPLICATE_WORK_PRODUCT", f"work product id {wp.id!r} already used"
        )
    return replace(a, work_products=a.work_products + (wp,))


def record_checkpoint(a: Assessment, rec: CheckpointRecord) -> Assessment:
    """Make rec the effective record for its key; idempotent for equal rec."""
    alpha = _alpha_of(a, rec.alpha_instance)
    state = alpha.state(rec.state)
    if state is None:
        raise AssessmentError(
            "UNKNOWN_CHECKPOINT",
            f"alpha {alpha.name!r} has no state {rec.state!r}",
        )
    if state.checkpoint(rec.checkpoint) is None:
        raise AssessmentError(
            "UNKNOWN_CHECKPOINT",
            f"state {state.name!r} has no checkpoint {rec.checkpoint!r}",
        )
    for wp_id in rec.evidence:
        if a.work_product(wp_id) is None:
            raise AssessmentError(
                "UNKNOWN_EVIDENCE", f"evidence {wp_id!r} is not a work product id"
            )
    records = list(a.records)
    for i, existing in enumerate(records):
        if existing.key == rec.key:
            if existing == rec:
                return a
            records[i] = rec
            break
    else:
        records.append(rec)
    return replace(a, records=tuple(records))


def alpha_state(a: Assessment, instance_id: str) -> StateResult:
    """Largest fully satisfied prefix of the alpha's state list."""
    alpha = _alpha_of(a, instance_id)
    satisfied = _satisfied_keys(a, instance_id)
    achieved_index = -1
    for i, state in enumerate(alpha.states):
        if not _state_complete(state, satisfied):
            break
        achieved_index = i
    achieved = alpha.states[achieved_index].name if achieved_index >= 0 else None
    if achieved_index + 1 < len(alpha.states):
        next_def = alpha.states[achieved_index + 1]
        next_state = next_def.name
        blocking = _unsatisfied(next_def, satisfied)
    else:
        next_state = None
        blocking = ()
    return StateResult(
        achieved=achieved,
        achieved_index=achieved_index,
        next_state=next_state,
        blocking=blocking,
    )


def blocking_checkpoints(
    a: Assessment, instance_id: str, target_state: str
) -> tuple[Blocker, ...]:
    """Unsatisfied checkpoints in every state up to and including target."""
    alpha = _alpha_of(a, instance_id)
    if alpha.state(target_state) is None:
        raise AssessmentError(
            "UNKNOWN_STATE", f"alpha {alpha.name!r} has no state {target_state!r}"
        )
    satisfied = _satisfied_keys(a, instance_id)
    blockers: list[Blocker] = []
    for state in alpha.states:
        blockers.extend(_unsatisfied(state, satisfied))
        if state.name == target_state:
            break
    return tuple(blockers)


def render_card(a: Assessment, instance_id: str) -> str:
    """Plain-text state card; deterministic for a given assessment."""
    inst = a.instance(instance_id)
    alpha = _alpha_of(a, instance_id)
    satisfied = _satisfied_keys(a, instance_id)
    result = alpha_state(a, instance_id)
    width = max(len(state.name) for state in alpha.states)
    lines = [f"{alpha.name} [{inst.id}] ({inst.system_level.value})"]
    for i, state in enumerate(alpha.states):
        done = sum(
            1 for cp in state.checkpoints if (state.name, cp.id) in satisfied
        )
        mark = "x" if i <= result.achieved_index else " "
        lines.append(
            f"  [{mark}] {state.name:<{width}} {done}/{len(state.checkpoints)}"
        )
    lines.append(f"Achieved: {result.achieved if result.achieved else '(none)'}")
    if result.next_state is not None:
        lines.append(f"Next: {result.next_state}")
    return "\n".join(lines)


def _alpha_of(a: Assessment, instance_id: str) -> AlphaDefinition:
    inst = a.instance(instance_id)
    if inst is None:
        raise AssessmentError(
            "UNKNOWN_INSTANCE", f"no alpha instance {instance_id!r}"
        )
    alpha = find_alpha(a.kernel, inst.alpha)
    if alpha is None:
        raise AssessmentError(
            "UNKNOWN_INSTANCE",
            f"instance {instance_id!r} references alpha {inst.alpha!r} "
            "absent from the kernel",
        )
    return alpha


def _satisfied_keys(a: Assessment, instance_id: str) -> set[tuple[str, str]]:
    """(state, checkpoint) pairs effectively satisfied for the instance."""
    out: set[tuple[str, str]] = set()
    for rec in a.records:
        if rec.alpha_instance != instance_id:
            continue
        effective = rec.satisfied and (not a.strict_evidence or bool(rec.evidence))
        # One record per key is maintained by record_checkpoint; discard
        # covers raw record lists replayed from storage.
        out.discard((rec.state, rec.checkpoint))
        if effective:
            out.add((rec.state, rec.checkpoint))
    return out


def _state_complete(state: StateDefinition, satisfied: set[tuple[str, str]]) -> bool:
    return all((state.name, cp.id) in satisfied for cp in state.checkpoints)


def _unsatisfied(
    state: StateDefinition, satisfied: set[tuple[str, str]]
) -> tuple[Blocker, ...]:
    return tuple(
        Blocker(state=state.name, checkpoint=cp.id, text=cp.text)
        for cp in state.checkpoints
        if (state.name, cp.id) not in satisfied
    )
