"""Walk through tau-mutations and watch the exponents grow.

Each tau-mutation replaces one antipodal pair of cluster variables. Every
variable stays of the form ``x_m A^a B^b C^c``, so printing the exponent
triples is enough to follow the walk.

Run with ``python gallery/mutation_walk.py [WORD]``.
"""

import sys

from dp3.alcove import coordinates, walk
from dp3.closed_form import pretty, run_presentation
from dp3.cluster import run_word
from dp3.laurent import lp_eval

word = sys.argv[1] if len(sys.argv) > 1 else "123123"

for n in range(len(word) + 1):
    prefix = word[:n]
    pres = run_presentation(prefix)
    where = coordinates(walk(tuple(int(ch) for ch in prefix)))
    print(f"{prefix or '(empty)':>10}  alcove {where}")
    for k in range(6):
        print(f"{'':12}vertex {k}: {pretty(*pres.entry(k))}")

# at all-ones every variable evaluates to 2^(a+b+c)
seed, _ = run_word(word)
print("values at all-ones:", [int(lp_eval(v, (1,) * 6)) for v in seed.vars])
