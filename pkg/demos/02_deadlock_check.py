"""Deadlock precheck: nesting must order resources acyclically.

Every containment pair (outer section, inner section) is an edge in a
directed graph over resources.  A cycle means two jobs can acquire the
same resources in opposite orders, so blocking times are unbounded and
all further analysis refuses the input.
"""

from pipblock import build_order_graph, check_deadlock_free, parse_taskset

safe = parse_taskset(
    """
J1: [R4:1]
J2: [R4:6 [R3:4 [R2:2]]]
J3: [R4:10] [R2:3 [R1:1]] [R3:5]
J4: [R1:2] [R2:4]
"""
)
graph = build_order_graph(safe)
print("edges (outer -> inner):", sorted(graph.edges))
print("verdict:", check_deadlock_free(safe))

risky = parse_taskset(
    """
J1: [R1:1 [R2:1]]
J2: [R2:1 [R1:1]]
"""
)
verdict = check_deadlock_free(risky)
print("\ncross-nested verdict:", verdict)
print("witness cycle:", " -> ".join(f"R{r}" for r in verdict.cycle))
