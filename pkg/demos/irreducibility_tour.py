"""Two evaluation modules of Y(gl_2): when is their tensor product irreducible?

The criterion looks at the leading coefficient I of R(u) at the difference
of the evaluation points; the Burnside oracle asks directly whether the
Yangian generators span all of End(W).

Run:  python3 demos/irreducibility_tour.py
"""

from flint import fmpq

from fusionkit.diagrams import EPSILON, column, row
from fusionkit.yangian import burnside_closure_dimensions, intertwiner_leading, irreducibility_criterion, module_space, r_matrix

N = 2
print("R(u) for two single boxes, N=2:")
for line in r_matrix(EPSILON, EPSILON, N).entries:
    print("   ", "  ".join(f"{str(x):>10}" for x in line))

for z in (0, 1, fmpq(1, 2)):
    d = intertwiner_leading(EPSILON, EPSILON, N, z)
    print(f"at u = {z}: pole order a = {d.a}, I invertible: {d.invertible}")

print()
for w in (EPSILON, row(2), column(2)):
    print(f"dim V[{w}] for N={N}: {module_space(w, N).dim}")

print()
cases = [
    [(EPSILON, 0), (EPSILON, 1)],
    [(EPSILON, 0), (EPSILON, fmpq(1, 2))],
    [(row(2), 0), (EPSILON, 2)],
    [(row(2), 0), (EPSILON, -1)],
    [(column(2), 0)] * 3,
]
for parts in cases:
    rep = irreducibility_criterion(parts, N)
    dims = burnside_closure_dimensions(parts, N)
    label = " ⊗ ".join(f"V[{w}]({z})" for w, z in parts)
    print(f"{label}: criterion says {rep.verdict}; generated algebra grows {dims}")
