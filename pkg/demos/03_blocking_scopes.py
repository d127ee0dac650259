"""Which resources and jobs can block a given job.

The direct sets cover the classic one-resource-at-a-time case.  Nesting
adds transitive inheritance: a resource buried inside a blocking-capable
section can block too.  The enlarged sets grow by a fixpoint over induced
sets, shown step by step below.
"""

from pipblock import (
    blocking_scope,
    fixpoint_trace,
    induced_set,
    maximal_sequence,
    parse_taskset,
)

ts = parse_taskset(
    """
J1: [R4:1]
J2: [R4:6 [R3:4 [R2:2]]]
J3: [R4:10] [R2:3 [R1:1]] [R3:5]
J4: [R1:2] [R2:4]
"""
)

scope = blocking_scope(ts, 1)
print("direct:  ", sorted(scope.direct_resources), sorted(scope.direct_jobs))
print("relevant:", sorted(scope.relevant_resources), sorted(scope.relevant_jobs))

print("\nfixpoint iterates:")
for step, iterate in enumerate(fixpoint_trace(ts, 1)):
    print(f"  step {step}:", sorted(f"R{r}" for r in iterate))

# the first growth step in detail: z2,1 is maximal w.r.t. {R4} and its
# nested sections hand blocking potential to R2 and R3
print("\nmaximal sections of J2 w.r.t. {R4}:",
      [z.label for z in maximal_sequence(ts, 2, {4})])
print("set induced by (J1, z2,1) from {R4}:",
      sorted(induced_set(ts, 1, ts.section(2, 1), {4})))
