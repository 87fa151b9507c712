"""Minimal firing / negation sources for every catalog rule.

Each FIRE source makes exactly its rule's condition true on the subject in
SUBJECT; the matching NEGATE source keeps the same structure but with the
smell absent (attribute filled healthily or relationship present), so a
passing rule engine distinguishes the pair with that single rule enabled.
"""

_BO = 'model "fixture" {{\n  bo B {{ {attrs} }}\n{extra}}}\n'


def _bo(attrs: str, extra: str = "") -> str:
    return _BO.format(attrs=attrs, extra=extra)


_USAGE = ('model "fixture" {\n  bo B { }\n  role R { }\n'
          '  usage R -> B { %s }\n}\n')

_FAN = 'model "fixture" {{\n  bo B {{ }}\n{users}{usages}}}\n'


def _fan(n: int) -> str:
    users = "".join(f"  role R{i} {{ }}\n" for i in range(1, n + 1))
    usages = "".join(f"  usage R{i} -> B {{ }}\n" for i in range(1, n + 1))
    return _FAN.format(users=users, usages=usages)


FIRE = {
    "BO-01": _bo("modularity: low"),
    "BO-02": _bo("internal_consistency: low"),
    "BO-03": _bo("external_consistency: low"),
    "BO-04": _bo("maintainability: high"),
    "BO-05": _bo("up_to_date: low"),
    "BO-06": _bo("level_of_detail: high frequency_of_change: high"),
    "BO-07": _bo("lifecycle: Deprecate frequency_of_change: high"),
    "BO-08": _bo("lifecycle: Planning frequency_of_change: low"),
    "US-01": _USAGE % "fit_for_purpose: low",
    "US-02": _USAGE % "criticality: high stability: low",
    "US-03": _USAGE % "criticality: high accessibility: low",
    "MS-01": _bo("purpose: \"bare\""),
    "MS-02": _bo("purpose: \"bare\""),
    "MS-03": _USAGE % "crud: [C, R]",
    "AC-01": ('model "fixture" {\n  bo B { }\n  role Governor { }\n'
              '  governance T { members: [Governor] governs B { } }\n}\n'),
    "AC-02": _bo("frequency_of_change: high",
                 "  governance T { members: [] governs B { frequency_of_coordination: low } }\n"),
    "WS-01": ('model "fixture" {\n  mi M { types: [Team] }\n'
              '  role R1 { part_of: M }\n  role R2 { part_of: M }\n'
              '  governance T { members: [R1, R2] }\n}\n'),
    "WS-02": _fan(9),
}

NEGATE = {
    "BO-01": _bo("modularity: high"),
    "BO-02": _bo("internal_consistency: high"),
    "BO-03": _bo("external_consistency: high"),
    "BO-04": _bo("maintainability: low"),
    "BO-05": _bo("up_to_date: high"),
    "BO-06": _bo("level_of_detail: high frequency_of_change: low"),
    "BO-07": _bo("lifecycle: Operation frequency_of_change: high"),
    "BO-08": _bo("lifecycle: Planning frequency_of_change: high"),
    "US-01": _USAGE % "fit_for_purpose: high",
    "US-02": _USAGE % "criticality: high stability: high",
    "US-03": _USAGE % "criticality: high accessibility: high",
    "MS-01": _bo("purpose: \"governed\"",
                 "  governance T { members: [] governs B { } }\n"),
    "MS-02": ('model "fixture" {\n  bo B { }\n  role R { }\n'
              '  responsible R -> B\n}\n'),
    "MS-03": _USAGE % "crud: [C, R, U]",
    "AC-01": ('model "fixture" {\n  bo B { }\n  role Governor { }\n'
              '  usage Governor -> B { }\n'
              '  governance T { members: [Governor] governs B { } }\n}\n'),
    "AC-02": _bo("frequency_of_change: high",
                 "  governance T { members: [] governs B { frequency_of_coordination: high } }\n"),
    "WS-01": ('model "fixture" {\n  mi M1 { types: [Team] }\n  mi M2 { types: [Silo] }\n'
              '  role R1 { part_of: M1 }\n  role R2 { part_of: M2 }\n'
              '  governance T { members: [R1, R2] }\n}\n'),
    "WS-02": _fan(8),
}

SUBJECT = {
    "BO-01": "B", "BO-02": "B", "BO-03": "B", "BO-04": "B",
    "BO-05": "B", "BO-06": "B", "BO-07": "B", "BO-08": "B",
    "US-01": "R->B", "US-02": "R->B", "US-03": "R->B",
    "MS-01": "B", "MS-02": "B", "MS-03": "B",
    "AC-01": "B", "AC-02": "B",
    "WS-01": "T", "WS-02": "fixture",
}
