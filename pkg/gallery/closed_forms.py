"""Closed forms versus brute-force mutation over a patch of alcoves.

``cluster_at`` writes down the cluster at an alcove directly from its
coordinates. Here it is compared with the mutation engine on every alcove
with ``|i|, |j| <= 3``, and a few formulas are printed.
"""

from dp3.alcove import Alcove, canonical_path, word_str
from dp3.closed_form import cluster_at, expand, pretty
from dp3.cluster import SeedCache

cache = SeedCache()
checked = 0
for i in range(-3, 4):
    for j in range(-3, 4):
        for odd in (False, True):
            a = Alcove(i, j, odd)
            engine = sorted(map(str, cache.seed(canonical_path(a)).vars))
            assert sorted(map(str, expand(cluster_at(a)))) == engine
            checked += 1
print(f"{checked} alcoves agree")

for a in (Alcove(2, 3, False), Alcove(-2, 1, True), Alcove(3, -3, False)):
    pres = cluster_at(a)
    print(f"\n{a} (region {a.region}), path {word_str(canonical_path(a))}")
    for k in range(6):
        print(f"  vertex {k}: {pretty(*pres.entry(k))}")
