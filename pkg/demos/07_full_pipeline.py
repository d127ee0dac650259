"""The whole pipeline on one task set, as the CLI's `analyze` runs it:
deadlock check, per-job bound, quick screen, and exact search only where
the screen cannot certify the bound.
"""

import json

from pipblock import analyze, parse_taskset, render_report

ts = parse_taskset(
    """
J1: [R2:1]
J2: [R4:3 [R3:1]]
J3: [R4:3] [R3:2]
J4: [R2:3 [R1:1]]
J5: [R3:4 [R2:1]]
J6: [R1:2]
"""
)

report = analyze(ts)
print(render_report(report))

print("\nsame values as JSON:")
print(json.dumps(report.to_dict()["jobs"][1], indent=2))
