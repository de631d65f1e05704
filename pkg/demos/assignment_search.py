"""
Sweeping every factor assignment
================================

For each of the 3^t assignments at p = 2, n = 7, build the code and
measure it when it has at most 2^16 words.  Prints the best codes by
Bachoc distance.
"""

from m2codes.codes import search_assignments

rows = search_assignments(2, 7, cap=1 << 16)
print(f"{len(rows)} assignments, {sum(m.enumerated for m in rows)} enumerated")
print(f"{'assignment':>10} {'|C|':>8} {'d_Ham':>6} {'d_B':>4} {'d_nhom':>7} {'d_L':>4}")
for m in rows[:10]:
    print(f"{m.assignment:>10} {m.cardinality:>8} {m.d_ham!s:>6} {m.d_b!s:>4} {m.d_nhom!s:>7} {m.d_l!s:>4}")
mismatch = [m.assignment for m in rows if not m.matches_formula]
print("rank != 2s for:", mismatch or "none")
