"""Render a few Aztec castles and dragons to SVG files.

Writes into ``gallery/out/`` (created if missing). Open the files in a
browser; faces carry their quiver labels and vertices their colours.
"""

from pathlib import Path

from dp3 import castle as cs
from dp3.alcove import Even, Odd
from dp3.matching import count
from dp3.verify import assign

out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)

shapes = {
    "gamma_1_1": cs.ne_castle(1, 1),
    "gamma_2_3": cs.ne_castle(2, 3),
    "sw_gamma_-1_-3": cs.sw_castle(-1, -3),
    "dragon_2": cs.dragon(4),
}
for a in (Even(2, -1), Odd(-2, 1)):
    shapes[f"castle_at_{a}"] = assign(a).castles()[0]

for name, g in shapes.items():
    path = out / f"{name}.svg"
    path.write_text(g.svg(title=name))
    print(f"{path}: {len(g.vertices)} vertices, {count(g)} perfect matchings")
