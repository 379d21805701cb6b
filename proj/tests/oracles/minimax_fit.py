"""Independent oracle for the one-parameter sup-norm fits.

Solves min_c max_p |H(p) - c g(p)| as a linear program over the default
lattice (16 log-spaced values per axis on [1e-3, 1e3]) and prints the
optimal coefficient and sup residual. Values printed here are frozen into
tests/test_fitting.cpp.
"""
import numpy as np
from scipy.optimize import linprog

ax = np.exp(np.linspace(np.log(1e-3), np.log(1e3), 16))
X, Y, Z = np.meshgrid(ax, ax, ax, indexing="ij")
x, y, z = X.ravel(), Y.ravel(), Z.ravel()
s = x + y + z


def xlogx(v):
    return v * np.log(v)


shannon = xlogx(s) - xlogx(x) - xlogx(y) - xlogx(z)
power2 = s**2 - x**2 - y**2 - z**2


def minimax(h, g):
    # variables (c, t); minimize t subject to  h - c g <= t,  c g - h <= t
    n = len(h)
    A = np.vstack([np.column_stack([-g, -np.ones(n)]), np.column_stack([g, -np.ones(n)])])
    b = np.concatenate([-h, h])
    res = linprog([0, 1], A_ub=A, b_ub=b, bounds=[(None, None), (0, None)], method="highs")
    return res.x


c, t = minimax(power2, shannon)
print(f"power(alpha=2) against shannon basis: c = {c:.12g}, sup residual = {t:.12g}")
