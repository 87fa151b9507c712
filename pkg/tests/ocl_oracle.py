"""Independent brute-force evaluation of the core constraint catalog.

Hand-translated, straight-loop implementations of the eleven
formally-expressed smells, kept deliberately separate from the production
rule engine (no three-valued logic, no indexes, no shared helpers).  Meant
for fully-filled models: an unset attribute simply compares unequal.

Documented normalizations applied to the original constraint phrasing:

* Polarity: the three missing-element checks and the governors-use check
  are written as health invariants (true = healthy); the oracle negates
  them so that, like every other entry, membership in the result means the
  smell is present.
* Governors-use scope: the health reading requires every member of every
  governing team to use the BO (per the check's stated intent), so the
  smell is "some team has a member that does not use the BO".  A
  member-less team is exempt (that situation is the no-governance/empty
  team concern, not this one).  A member counts as using the BO when a
  usage names the member itself or the member's island.
"""
from __future__ import annotations

from bomi import BomiModel, CrudRight, Lifecycle, QualLevel, UserKind

OCL_RULE_IDS = (
    "BO-01", "BO-02", "BO-06", "BO-07",
    "US-01", "US-02",
    "MS-01", "MS-02", "MS-03",
    "AC-01", "AC-02",
)

HIGH = QualLevel.HIGH
LOW = QualLevel.LOW


def _uses(model: BomiModel, role_id: str, bo_id: str) -> bool:
    island = None
    for role in model.roles:
        if role.id == role_id:
            island = role.part_of
    for u in model.usages:
        if u.bo != bo_id:
            continue
        if u.user_kind is UserKind.ROLE and u.user == role_id:
            return True
        if u.user_kind is UserKind.ISLAND and island is not None and u.user == island:
            return True
    return False


def brute_force_smells(model: BomiModel) -> dict[str, set[str]]:
    """Smelly subject ids per rule id, by direct enumeration."""
    out: dict[str, set[str]] = {rid: set() for rid in OCL_RULE_IDS}

    for bo in model.boundary_objects:
        if bo.modularity.level is LOW:
            out["BO-01"].add(bo.id)
        if bo.internal_consistency.level is LOW:
            out["BO-02"].add(bo.id)
        if bo.level_of_detail.level is HIGH and bo.frequency_of_change.level is HIGH:
            out["BO-06"].add(bo.id)
        if bo.lifecycle in (Lifecycle.DEPRECATE, Lifecycle.RETIRE) \
                and bo.frequency_of_change.level is HIGH:
            out["BO-07"].add(bo.id)

        governed = [g for g in model.governs_links if g.bo == bo.id]
        if not governed:  # negated: Governed -> size > 0
            out["MS-01"].add(bo.id)
        if not [r for r in model.responsibilities if r.bo == bo.id]:
            out["MS-02"].add(bo.id)
        updaters = [u for u in model.usages
                    if u.bo == bo.id and CrudRight.UPDATE in u.crud]
        if not updaters:
            out["MS-03"].add(bo.id)

        for link in governed:
            team = next(t for t in model.governance_teams if t.id == link.team)
            if team.members and any(not _uses(model, m, bo.id) for m in team.members):
                out["AC-01"].add(bo.id)
        if bo.frequency_of_change.level is HIGH and any(
                g.frequency_of_coordination.level is LOW for g in governed):
            out["AC-02"].add(bo.id)

    for u in model.usages:
        if u.fit_for_purpose.level is LOW:
            out["US-01"].add(u.key)
        if u.criticality.level is HIGH and u.stability.level is LOW:
            out["US-02"].add(u.key)

    return out
