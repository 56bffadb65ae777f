"""Hand-transcribed subgraphs.

FIG3 is the example subgraph used to illustrate the covering monomial: eight
vertices and ten edges enclosing faces labelled 0, 1 and 2. Coordinates are
the library's scaled lattice coordinates.
"""

FIG3_VERTICES = [(-3, 0), (-2, -2), (0, -6), (0, -3), (0, 0), (2, -4), (3, -6), (3, -3)]
FIG3_FACES = [((0, -6), (2, -4), 1), ((0, 0), (-2, -2), 0), ((0, 0), (2, -4), 2)]
FIG3_MONOMIAL = (1, 1, 1, 1, 3, 2)
