"""Rebuild the classification by bounded search and classify every survivor."""
from __future__ import annotations

import time
from collections import Counter

from circle_patterns import (
    SearchBounds,
    classify_action,
    enumerate_actions,
    enumerate_arcs,
    enumerate_circles,
    infeasibility_oracle,
)
from circle_patterns.enumeration import action_family

bounds = SearchBounds(max_weight=50, max_self_int=10, max_chain_len=6)

t0 = time.perf_counter()
arcs = enumerate_arcs(bounds)
circles = enumerate_circles(bounds)
print(f"search took {time.perf_counter() - t0:.2f}s")
print("arc lengths   :", Counter(len(a.spheres) for a in arcs.admissible))
print("circle lengths:", Counter(len(c.spheres) for c in circles.admissible))
print("arc rejections:", dict(arcs.rejected_counts))

# the shortcuts must not change anything
assisted = enumerate_circles(bounds, use_lemmas=True)
print("lemma-free == assisted (circles):", assisted.keys() == circles.keys())

actions = enumerate_actions(SearchBounds(max_weight=20))
print("\nfamilies:", actions.families)
by_type = Counter((action_family(a), classify_action(a).diffeo_type) for a in actions.admissible)
for (fam, kind), n in sorted(by_type.items()):
    print(f"  {fam:24s} {kind:8s} x{n}")

# why longer chains never show up
for fam in ("arc3", "arc4", "circle_ge4"):
    tight = infeasibility_oracle(fam, SearchBounds(max_weight=200))
    loose = infeasibility_oracle(fam, SearchBounds(max_weight=200), min_self_int=-2, limit=1)
    print(f"{fam:10s} s >= -1: {len(tight.solutions)} solutions; s >= -2: {loose.solutions[:1]}")

print("\n" + actions.to_obj()["limitations"])
