"""Task sets in bracket notation: parsing, structure, serialization.

A task set lists jobs in descending priority; each bracket group is one
critical section, nested groups are sections acquired while the outer one
is held.
"""

from pipblock import contains, parse_taskset, serialize_taskset

text = """
# J1 holds R2 and, inside it, R1; J2 locks R1 twice in disjoint sections.
J1: [R2: 3 [R1: 1]]
J2: [R1: 3] [R1: 4]
"""

ts = parse_taskset(text)
print("jobs:", ts.n, " resources:", sorted(f"R{r}" for r in ts.resources))

for job in ts.jobs:
    print(f"J{job.index}:")
    for z in job.sections:
        inside = f" inside {z.parent.label}" if z.parent else ""
        print(f"  {z.label}: R{z.resource} for {z.duration}{inside}")

z11, z12 = ts.job(1).sections
print("z1,2 entirely contained in z1,1?", contains(z11, z12))
print("z1,1 contained in z1,2?", contains(z12, z11))

print("\ncanonical form:")
print(serialize_taskset(ts))
