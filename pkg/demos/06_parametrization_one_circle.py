"""How much ambiguity does ONE circle of modulus data leave?

Equality |f| = |g| on a single interior circle does not force f = c g;
the precise statement is a parametrization: there are finite Blaschke
products B1, B2 in the scaled variable z/r with

    B1(z/r) f(z) = B2(z/r) g(z).

The script forward-builds such a pair from hidden factors, hands the
parametrizer only (f, g, r), and shows it recovering the hidden Blaschke
products and the exact identity; one circle pins the function "up to
Blaschke dressing", and only a second circle removes it.
"""

import numpy as np

from discphase import (
    BlaschkeProduct,
    Polynomial,
    RationalFunction,
    parametrize_pair,
)

r = 0.5
hidden1 = BlaschkeProduct(1.0, (0.3 + 0.1j, -0.4))
hidden2 = BlaschkeProduct(1.0, (0.2j,))
shared = Polynomial([1.0, 0.7])  # common factor 1 + 0.7 z


def scaled_parts(b):
    num, den = Polynomial([complex(b.constant)]), Polynomial([1.0])
    for a in b.zeros:
        num = num * Polynomial([-a, 1.0 / r])
        den = den * Polynomial([1.0, -np.conj(a) / r])
    return num, den


n1, d1 = scaled_parts(hidden1)
n2, d2 = scaled_parts(hidden2)
f = RationalFunction(n2 * shared * d1, d2 * d1)  # B2(z/r) * (1 + 0.7 z)
g = RationalFunction(n1 * shared * d2, d1 * d2)  # B1(z/r) * (1 + 0.7 z)

check = r * np.exp(2j * np.pi * np.arange(256) / 256 + 0.1j * 0)
gap = np.abs(np.abs(f(check)) - np.abs(g(check))).max()
print(f"constructed f, g with |f| = |g| on the radius-{r} circle "
      f"(max gap {gap:.1e})\n")

b1, b2 = parametrize_pair(f, g, r)
print("recovered B1 zeros :", [f"{z:.4f}" for z in sorted(b1.zeros, key=abs)])
print("hidden  B1 zeros   :", [f"{z:.4f}" for z in sorted(hidden1.zeros, key=abs)])
print("recovered B2 zeros :", [f"{z:.4f}" for z in sorted(b2.zeros, key=abs)])
print("hidden  B2 zeros   :", [f"{z:.4f}" for z in sorted(hidden2.zeros, key=abs)])

grid = 0.25 * np.exp(2j * np.pi * np.arange(64) / 64)
lhs = b1(grid / r) * f(grid)
rhs = b2(grid / r) * g(grid)
rel = np.abs(lhs - rhs).max() / np.abs(lhs).max()
print(f"\nidentity B1(z/r) f(z) = B2(z/r) g(z): relative residual {rel:.2e}")
print("\none circle leaves exactly this Blaschke-product ambiguity; adding the")
print("unit circle (see demo 01) collapses it to a single unimodular constant.")
