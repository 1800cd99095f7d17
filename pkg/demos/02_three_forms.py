#!/usr/bin/env python3
"""The three bilinear forms and the inequalities between them.

For a boundary field rho and an interior field phi,

    <rho, phi>_I  <=  ( <rho,rho>_P + <phi,phi>_BL ) / 2      (mean form)
    <rho, phi>_I^2  <=  <rho,rho>_P  <phi,phi>_BL             (multiplicative)

The script evaluates the forms on closed-form examples, stress-tests the
inequalities on random smooth pairs, and examines two candidate equality
families.  Only the translation family saturates the bounds: the scaling
family (rho = a*h_{K+x0}(nu), phi = a*u*(grad u(x-x0)) + z) does not -- its
slack is strictly positive for a > 0, as the printed numbers show.
"""

import numpy as np

import convexlab as cl
from convexlab.suite import random_boundary_field, random_interior_field

disk = cl.disk(1.0)
gaussian = cl.gaussian_potential()

print("=" * 70)
print("1. closed-form values on the gaussian unit disk")
print("=" * 70)

e = np.exp(-0.5)
muBd, muK = 2 * np.pi * e, 2 * np.pi * (1 - e)
one = cl.BoundaryField.constant(1.0, disk.M)
P = cl.form_P(disk, gaussian, one, one)
print(f"P(1,1)  = {P:.12f}   closed form mu(dK)^2/mu(K) = {muBd**2 / muK:.12f}")

x1 = cl.InteriorField.coordinate(0)
BL = cl.form_BL(disk, gaussian, x1, x1)
oracle = muK - np.pi * (2 - 3 * e)
print(f"BL(x1,x1) = {BL:.12f} closed form mu(K)-int x1^2  = {oracle:.12f}")

print("\n" + "=" * 70)
print("2. the inequalities on random smooth pairs")
print("=" * 70)

rng = np.random.default_rng(42)
worst_mean, worst_mult = np.inf, np.inf
for _ in range(100):
    rho = random_boundary_field(rng, disk.M)
    phi = random_interior_field(rng)
    rep = cl.check_mean_form(disk, gaussian, rho, phi)
    worst_mean = min(worst_mean, rep.slack_mean / rep.scale)
    worst_mult = min(worst_mult, rep.slack_mult / rep.scale**2)
print(f"100 seeded pairs: min relative mean slack {worst_mean:.3e}, "
      f"min relative multiplicative slack {worst_mult:.3e}")
print("(both stay far above the -1e-9 violation floor)")

print("\n" + "=" * 70)
print("3. equality families")
print("=" * 70)

rho_t, phi_t = cl.translation_witness(disk, gaussian, [0.8, -0.3], z=1.0)
rep = cl.check_mean_form(disk, gaussian, rho_t, phi_t)
print("translation family rho = <x0,nu>, phi = <x0, grad u> + z:")
print(f"  P = {rep.P:.12f}, BL = {rep.BL:.12f}, I = {rep.I:.12f}")
print(f"  mean slack {rep.slack_mean:.2e}  ->  exact equality, P = BL = I")

rho_s, phi_s = cl.equality_witness(disk, gaussian, alpha=1.0)
rep = cl.check_mean_form(disk, gaussian, rho_s, phi_s)
print("\nscaling family rho = h(nu), phi = u*(grad u) (alpha = 1):")
print(f"  P = {rep.P:.6f}, BL = {rep.BL:.6f}, I = {rep.I:.6f}")
print(f"  mean slack {rep.slack_mean:.6f}  ->  NOT an equality case;")
print("  the slack equals -S''(0) mu(K) of the homothety flow, which is")
print("  (n - Var(u)) mu(K) > 0 here (see demo 04)")

print("\n" + "=" * 70)
print("4. sanity structure")
print("=" * 70)

rho = random_boundary_field(rng, disk.M)
phi = random_interior_field(rng)
a, b = 1.7, -0.6
lhs = cl.form_P(disk, gaussian, a * rho + b * one, rho)
rhs = a * cl.form_P(disk, gaussian, rho, rho) + b * cl.form_P(disk, gaussian, one, rho)
print(f"bilinearity residual: {abs(lhs - rhs):.2e}")
print(f"P symmetric: {cl.form_P(disk, gaussian, rho, one) == cl.form_P(disk, gaussian, one, rho)}")
