"""Interactive scaffolding of a new model, one boundary object per session.

Walks the guiding questions in metamodel order: the focus BO and its
attributes, the roles interacting with it, the islands those roles belong
to, usage attributes, drivers, and finally governance.  Blank answers skip
a question and leave the attribute unknown; the generated text always
parses and resolves cleanly.

The ``ask`` callable supplies answers (interactive or scripted); it may
raise :class:`Aborted` to stop the session without producing a file.
"""
from __future__ import annotations

import re
from typing import Callable

from .diagnostics import SourceSpan
from .parser import (
    DISTANCE_TYPE_VALUES,
    DRIVER_TYPE_VALUES,
    ELEMENT_KEYWORDS,
    LIFECYCLE_VALUES,
    MI_TYPE_VALUES,
    SUPERTYPE_VALUES,
)
from . import syntax


class Aborted(Exception):
    """The answer source stopped the session; nothing should be written."""


_SPAN = SourceSpan("<generated>", 1, 1, 1, 1)
_LEVEL_RE = re.compile(r"^(high|medium|low|unknown)\s*(?:\((.*)\))?$", re.IGNORECASE)
_RESERVED = set(ELEMENT_KEYWORDS) | {"model", "governs"}

AskFn = Callable[[str], str]
SayFn = Callable[[str], None]


def _nothing(_: str) -> None:
    return None


class _Names:
    """Turns free-text answers into unique, keyword-safe identifiers."""

    def __init__(self) -> None:
        self.used: set[str] = set()

    def ident(self, text: str, fallback: str) -> str:
        parts = re.findall(r"[A-Za-z0-9]+", text)
        candidate = "".join(p[:1].upper() + p[1:] for p in parts) or fallback
        if not (candidate[0].isalpha() or candidate[0] == "_"):
            candidate = "X" + candidate
        if candidate.lower() in _RESERVED:
            candidate += "_"
        unique = candidate
        n = 2
        while unique in self.used:
            unique = f"{candidate}{n}"
            n += 1
        self.used.add(unique)
        return unique


def _attr(key: str, value: syntax.AttrValue) -> syntax.Attr:
    return syntax.Attr(key, value, _SPAN)


def _vstr(text: str) -> syntax.VStr:
    return syntax.VStr(text, _SPAN)


def _vword(text: str) -> syntax.VWord:
    return syntax.VWord(text, _SPAN)


def _split_list(answer: str) -> list[str]:
    return [part.strip() for part in answer.split(",") if part.strip()]


class _Session:
    def __init__(self, ask: AskFn, say: SayFn) -> None:
        self.ask = ask
        self.say = say
        self.names = _Names()

    def text_answer(self, prompt: str) -> str:
        return self.ask(prompt + " ").strip()

    def level(self, attrs: list[syntax.Attr], key: str, prompt: str,
              allow_note: bool = True) -> None:
        """Ask for a qualitative level, optionally with a note in parentheses."""
        answer = self.text_answer(f"{prompt} (high/medium/low, optional note in parentheses)")
        if not answer:
            return
        match = _LEVEL_RE.match(answer)
        if match is None:
            self.say(f"could not read {answer!r} as a level; leaving {key} unknown")
            return
        level = match.group(1).lower()
        note = match.group(2)
        if note is not None and not allow_note:
            self.say(f"{key} takes no note; keeping only the level")
            note = None
        if level == "unknown" and note is None:
            return
        attrs.append(_attr(key, syntax.VQual(level, note, _SPAN)))

    def choice(self, attrs: list[syntax.Attr], key: str, prompt: str,
               options: tuple[str, ...]) -> None:
        answer = self.text_answer(f"{prompt} ({'/'.join(o.lower() for o in options)})")
        if not answer:
            return
        lowered = {o.lower(): o for o in options}
        if answer.lower() not in lowered:
            self.say(f"{answer!r} is not one of {', '.join(options)}; leaving {key} unknown")
            return
        attrs.append(_attr(key, _vword(lowered[answer.lower()])))

    def free_text(self, attrs: list[syntax.Attr], key: str, prompt: str) -> None:
        answer = self.text_answer(prompt)
        if answer:
            attrs.append(_attr(key, _vstr(answer)))


def init_questionnaire(ask: AskFn, say: SayFn = _nothing) -> str:
    """Run the guided session and return the generated model source."""
    s = _Session(ask, say)
    elements: list[syntax.Element] = []

    # Focus boundary object and its profile.
    bo_name = s.text_answer("Which BO would you like to focus on?")
    if not bo_name:
        bo_name = "BO1"
        say("no name given; calling the boundary object 'BO1'")
    bo_id = s.names.ident(bo_name, "BO1")
    bo_attrs: list[syntax.Attr] = []

    st = s.text_answer("What super type does the BO have? (technology/task/planning, or free text)")
    if st:
        if st.lower() in {v.lower() for v in SUPERTYPE_VALUES}:
            bo_attrs.append(_attr("supertype", _vword(st.capitalize())))
        else:
            bo_attrs.append(_attr("supertype", _vstr(st)))
    s.free_text(bo_attrs, "subtype", "What sub type does the BO have? (free text)")
    s.free_text(bo_attrs, "purpose", "What is the purpose of the BO?")
    s.choice(bo_attrs, "lifecycle", "Which lifecycle stage is the BO used in?", LIFECYCLE_VALUES)
    s.level(bo_attrs, "level_of_detail", "How detailed is the BO?")
    s.level(bo_attrs, "frequency_of_change", "How frequently does the BO change?")
    s.level(bo_attrs, "modularity", "How modular is the BO?")
    s.level(bo_attrs, "maintainability", "How much effort does maintaining the BO take?")
    s.free_text(bo_attrs, "representation_format",
                "How is the BO represented? (e.g. free text, model, table)")
    elements.append(syntax.BoDecl(bo_id, tuple(bo_attrs), _SPAN))

    # Roles and their islands.
    role_names = _split_list(s.text_answer("What roles interact with the BO? (comma-separated)"))
    islands: dict[str, str] = {}  # answer text (lowered) -> island id
    island_order: list[str] = []
    roles: list[tuple[str, str]] = []  # (role id, island id or "")
    if role_names:
        say("Which islands do the roles belong to?")
    for role_name in role_names:
        role_id = s.names.ident(role_name, "Role")
        island_answer = s.text_answer(f"Which island does {role_name!r} belong to? (blank if none)")
        island_id = ""
        if island_answer:
            key = island_answer.lower()
            if key not in islands:
                new_id = s.names.ident(island_answer, "Island")
                islands[key] = new_id
                island_order.append(new_id)
                types = _split_list(s.text_answer(
                    f"What types does island {island_answer!r} have?"
                    " (team/silo/department/organization, comma-separated, default team)"))
                valid = {v.lower(): v for v in MI_TYPE_VALUES}
                chosen = []
                for t in types:
                    if t.lower() in valid:
                        if valid[t.lower()] not in chosen:
                            chosen.append(valid[t.lower()])
                    else:
                        say(f"{t!r} is not an island type; ignoring it")
                if not chosen:
                    chosen = ["Team"]
                mi_attrs = (_attr("types", syntax.VList(
                    tuple(_vword(t) for t in chosen), _SPAN)),)
                elements.append(syntax.MiDecl(new_id, mi_attrs, _SPAN))
            island_id = islands[key]
        role_attrs: list[syntax.Attr] = []
        if island_id:
            role_attrs.append(_attr("part_of", _vword(island_id)))
        if role_name != role_id:
            role_attrs.append(_attr("name", _vstr(role_name)))
        elements.append(syntax.RoleDecl(role_id, tuple(role_attrs), _SPAN))
        roles.append((role_id, island_id))

    # Usage of the BO by each role.
    for role_id, _ in roles:
        usage_attrs: list[syntax.Attr] = []
        s.level(usage_attrs, "accessibility", f"How accessible is the BO for {role_id}?")
        s.level(usage_attrs, "stability", f"How stable is the BO as used by {role_id}?")
        s.level(usage_attrs, "criticality", f"How critical is the BO for {role_id}?")
        s.level(usage_attrs, "fit_for_purpose", f"Is the BO fit for {role_id}'s purpose?")
        crud_answer = s.text_answer(
            f"Which rights does {role_id} have on the BO? (letters from CRUD)")
        letters = [ch for ch in crud_answer.upper() if ch in "CRUD"]
        if letters:
            seen: list[str] = []
            for ch in letters:
                if ch not in seen:
                    seen.append(ch)
            usage_attrs.append(_attr("crud", syntax.VList(
                tuple(_vword(ch) for ch in seen), _SPAN)))
        elements.append(syntax.UsageDecl(role_id, bo_id, tuple(usage_attrs),
                                         _SPAN, _SPAN, _SPAN))

    # Drivers only make sense once islands exist to drive.
    if island_order:
        driver_names = _split_list(s.text_answer(
            "What drivers cause these islands to work differently? (comma-separated, blank if none)"))
        for driver_name in driver_names:
            driver_id = s.names.ident(driver_name, "Driver")
            driver_attrs: list[syntax.Attr] = []
            s.choice(driver_attrs, "type", f"What type of driver is {driver_name!r}?",
                     DRIVER_TYPE_VALUES)
            s.choice(driver_attrs, "distance_type",
                     f"What kind of distance does {driver_name!r} create?", DISTANCE_TYPE_VALUES)
            s.level(driver_attrs, "distance_size", "How large is that distance?",
                    allow_note=False)
            driver_attrs.append(_attr("drives", syntax.VList(
                tuple(_vword(i) for i in island_order), _SPAN)))
            elements.append(syntax.DriverDecl(driver_id, tuple(driver_attrs), _SPAN))

    # Governance.
    team_name = s.text_answer("Is there a governance team for the BO? (its name, blank if none)")
    if team_name:
        team_id = s.names.ident(team_name, "GovernanceTeam")
        team_attrs: list[syntax.Attr] = []
        if team_name != team_id:
            team_attrs.append(_attr("name", _vstr(team_name)))
        member_names = _split_list(s.text_answer(
            "Which roles are members of it? (comma-separated, blank if unknown)"))
        role_ids = {rid.lower(): rid for rid, _ in roles}
        members: list[str] = []
        for m in member_names:
            resolved = role_ids.get(m.lower()) or role_ids.get(
                "".join(re.findall(r"[A-Za-z0-9]+", m)).lower())
            if resolved is None:
                say(f"{m!r} does not match a role given earlier; ignoring it")
            elif resolved not in members:
                members.append(resolved)
        team_attrs.append(_attr("members", syntax.VList(
            tuple(_vword(m) for m in members), _SPAN)))
        governs_attrs: list[syntax.Attr] = []
        s.free_text(governs_attrs, "coordination_mechanism",
                    "How does the team coordinate? (e.g. meetings, processes, standards, tools)")
        s.level(governs_attrs, "frequency_of_coordination", "How frequently does it coordinate?")
        governs = (syntax.GovernsDecl(bo_id, tuple(governs_attrs), _SPAN, _SPAN),)
        elements.append(syntax.GovTeamDecl(team_id, tuple(team_attrs), governs, _SPAN))

    model_name = s.text_answer("What should the model be called? (blank for the BO's name)") or bo_name
    raw = syntax.RawModel(model_name, tuple(elements), _SPAN)
    return syntax.format_model(raw)
