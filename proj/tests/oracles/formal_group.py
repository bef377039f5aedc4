"""Independent derivation of formal-group coefficients for y^2 = x^3 + a x + b.

w(z) is solved by undetermined coefficients from w = z^3 + a z w^2 + b w^3;
[2](z) comes from the tangent-line duplication formula applied to the
Laurent expansions x(z) = z/w, y(z) = -1/w, never touching the group-law
series. Output is pasted into formal_group_test.cpp.
"""
import sympy as sp

a, b, z = sp.symbols("a b z")
N = 12

cs = sp.symbols("c3:%d" % (N + 3))
w = sum(c * z**k for c, k in zip(cs, range(3, N + 3)))
eq = sp.expand(w - (z**3 + a * z * w**2 + b * w**3))
sol = {}
for k in range(3, N + 3):
    coeff = eq.coeff(z, k).subs(sol)
    c = cs[k - 3]
    sol[c] = sp.solve(coeff, c)[0]
W = sp.expand(w.subs(sol))
print("w(z) mod z^%d:" % (N + 3), [(k, sp.factor(W.coeff(z, k))) for k in range(N + 3) if W.coeff(z, k) != 0])

x = sp.series(z / W, z, 0, N - 2).removeO()
y = sp.series(-1 / W, z, 0, N - 3).removeO()
print("x(z):", [(k, sp.expand(x.coeff(z, k))) for k in range(-2, N - 2) if x.coeff(z, k) != 0])

# duplication: lambda = (3x^2 + a)/(2y), x2 = lambda^2 - 2x, y2 = -(lambda (x2 - x) + y)
lam = (3 * x**2 + a) / (2 * y)
x2 = lam**2 - 2 * x
y2 = -(lam * (x2 - x) + y)
z2 = sp.series(sp.simplify(-x2 / y2), z, 0, N).removeO()
print("[2](z):", [(k, sp.expand(z2.coeff(z, k))) for k in range(N) if z2.coeff(z, k) != 0])
