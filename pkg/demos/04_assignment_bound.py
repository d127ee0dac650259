"""The polynomial blocking-time bound as a maximizing assignment.

Worst-case blocking picks at most one section per lower-priority job, all
on distinct resources.  Relaxing reachability, the best such selection is
an assignment-problem optimum over the longest-duration matrix, computed
with exact rational arithmetic.
"""

from pipblock import (
    blocking_scope,
    blocking_time_matrix,
    max_assignment,
    parse_taskset,
    per_job_bounds,
)

ts = parse_taskset(
    """
J1: [R2:1]
J2: [R4:1] [R3:1] [R4:1]
J3: [R4:3] [R3:2]
J4: [R2:1] [R1:1] [R2:1]
J5: [R3:1] [R2:1] [R3:2]
J6: [R1:2]
"""
)

scope = blocking_scope(ts, 2)
matrix = blocking_time_matrix(ts, scope.relevant_jobs, scope.relevant_resources)
print("longest-duration matrix for J2:")
print("      " + "  ".join(f"R{r}" for r in matrix.resources))
for job, row in zip(matrix.jobs, matrix.rows):
    print(f"  J{job}:", "  ".join(f"{str(c):>2}" for c in row))

assignment = max_assignment(matrix)
print("optimal assignment:", [(f"J{j}", f"R{r}") for j, r in assignment.pairs])
print("bound on J2's blocking time:", assignment.value)

print("\nall bounds:", {f"J{i}": str(v) for i, v in per_job_bounds(ts).items()})
