"""Symbolic oracle for metric-derived quantities at a fixed point.

Prints Christoffel symbols of the second kind, sqrt(det g) and the maximal
Ricci component, computed from the metric alone with sympy. The unit tests
freeze these numbers.
"""
import sympy as sp

r, th, ph, ps = sp.symbols("r theta phi psi", positive=True)
a = sp.Integer(1)
x = [r, th, ph, ps]
delta = 1 - a**4 / r**4
c = sp.cos(th)
g = sp.zeros(4, 4)
g[0, 0] = 1 / delta
g[1, 1] = r**2 / 4
g[2, 2] = (r**4 - a**4 * c**2) / (4 * r**2)
g[2, 3] = g[3, 2] = r**2 * delta * c / 4
g[3, 3] = r**2 * delta / 4
gi = sp.simplify(g.inv())

gam = [[[sp.simplify(sum(gi[k, l] * (sp.diff(g[l, i], x[j]) + sp.diff(g[l, j], x[i]) - sp.diff(g[i, j], x[l]))
                         for l in range(4)) / 2) for j in range(4)] for i in range(4)] for k in range(4)]

pt = {r: 2, th: sp.pi / 3}
print("sqrt_det_g", sp.N(sp.sqrt(g.det()).subs(pt), 17))
for k in range(4):
    for i in range(4):
        for j in range(i, 4):
            v = sp.N(gam[k][i][j].subs(pt), 17)
            if v != 0:
                print(f"G^{k+1}_{i+1}{j+1}", v)

def ricci(i, j):
    return sum(sp.diff(gam[k][i][j], x[k]) - sp.diff(gam[k][i][k], x[j])
               + sum(gam[k][k][l] * gam[l][i][j] - gam[k][j][l] * gam[l][i][k] for l in range(4))
               for k in range(4))

print("ricci_max", max(abs(sp.simplify(ricci(i, j))) for i in range(4) for j in range(4)))
