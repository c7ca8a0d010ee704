"""A walk through the group-ring side: shapes, fusion elements, h_ω.

Run:  python3 demos/fusion_tour.py
"""

from fusionkit.diagrams import column, conjugate, durfee_rank_definition, parse_shape, row
from fusionkit.fusion import c_and_order, fusion_element, h_function, theorem_3_5_data

# A skew shape, its contents read down the columns, and its Durfee rank.
shape = parse_shape("9,9,9,7,7,3,3,3,3/5,5,3,3,3,3,2")
print(f"shape {shape}: n = {shape.n} boxes")
rep = durfee_rank_definition(shape)
print(f"  Durfee rank {rep.rank}: {rep.convex_diagonal_boxes} convex and {rep.concave_diagonal_boxes} concave diagonal boxes, ell = {rep.ell}")

small = parse_shape("5,3,3,3,3/3,3,2")
print(f"contents of {small}: {small.contents}")

# The fusion limit reproduces the symmetrizer and antisymmetrizer on two boxes.
for w in (row(2), column(2), parse_shape("2,1")):
    print(f"F[{w}] = {fusion_element(w)}")

# h_ω has a pole of order d(ω) at 0; conjugation flips the sign of the variable.
for w in (row(2), column(2), parse_shape("3,1")):
    d, c = c_and_order(w)
    print(f"h[{w}](u) = {h_function(w)}   pole order {d}, leading coefficient {c}, conjugate {conjugate(w)}")

# The leading term of F_ωω(u) at 0 is c(ω) times a shuffled product of fusion elements.
data = theorem_3_5_data(column(2))
print(f"F_ww for {column(2)}: order {data.order}, c = {data.c}, identity holds: {data.ok}")
