"""Rebuild a zero-free analytic function from its boundary modulus alone.

The outer factor with boundary modulus m is
exp of the Schwarz integral of log m, discretized by the uniform
trapezoid rule; for smooth log-modulus the rule converges spectrally.
The script reconstructs (1 + z/2)(1 - 0.4i z) from |.| samples on the
unit circle and tabulates the max error on the 0.9-ring as the grid
doubles, then shows the normalization u(0) > 0.
"""

import numpy as np

from discphase import OuterFunction, boundary_modulus_of


def f(z):
    zz = np.asarray(z, dtype=complex)
    return (1 + zz / 2) * (1 - 0.4j * zz)


ring = 0.9 * np.exp(2j * np.pi * np.arange(128) / 128)

print("grid n    max |u - f| on |z| = 0.9")
print("-" * 36)
previous = None
for n in (32, 64, 128, 256, 512, 1024):
    u = OuterFunction(boundary_modulus_of(f, n))
    err = float(np.abs(u(ring) - f(ring)).max())
    note = "" if previous is None else f"   ({previous / err:8.0f}x smaller)"
    print(f"{n:6d}    {err:.3e}{note}")
    previous = err

u = OuterFunction(boundary_modulus_of(f, 1024))
print(f"\nnormalization: u(0) = {u(0.0):.12f} (real and positive)")
print(f"interior sample: u(0.3 - 0.2j) = {u(0.3 - 0.2j):.12f}")
print(f"          truth: f(0.3 - 0.2j) = {f(0.3 - 0.2j):.12f}")

# a function with a zero in the disc is NOT outer: the reconstruction
# returns the zero-free function with the same boundary modulus instead
g = lambda z: np.asarray(z, dtype=complex) - 0.5  # noqa: E731
ug = OuterFunction(boundary_modulus_of(g, 1024))
print(f"\nnon-outer input z - 0.5: |g(0)| = 0.5 but the outer factor has "
      f"u(0) = {ug(0.0).real:.6f}")
print("(the interior zero moved to its reflected position; boundary moduli agree)")
