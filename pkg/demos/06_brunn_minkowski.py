#!/usr/bin/env python3
"""Dimensional concavity: segment checks, the reformulation, moment bounds.

In the plane the dimensional question is whether mu((1-t)K + tL)^(1/2) is
concave along Minkowski segments of origin-symmetric bodies under an even
log-concave measure.  The local version is p(mu, K) >= 1/2, which is
equivalent to the sign condition

    <rho_bar, <grad u, x>>_I + int_K <grad u, x> dmu >= 0,

and pinched Hessians (k1 Id <= hess u, lap u <= 2 k2, r = k2/k1) give the
unconditional floor p >= 1/(2(r+1)).
"""

import numpy as np

import convexlab as cl

gaussian = cl.gaussian_potential()

print("=" * 70)
print("1. direct 1/2-power segments under the gaussian")
print("=" * 70)

pairs = ((cl.disk(0.5), cl.disk(1.5), "disk(0.5), disk(1.5)"),
         (cl.ellipse(2, 1), cl.disk(1.0), "ellipse(2,1), disk(1)"),
         (cl.ellipse(2, 1), cl.ellipse(1, 2), "ellipse(2,1), ellipse(1,2)"))
for K, L, name in pairs:
    rep = cl.bm_check(K, L, gaussian, p=0.5, t_nodes=21)
    print(f"{name:32}: min slack {rep.min_slack:+.3e}  passed: {rep.passed}")

print("\nidentical bodies give identically zero slack at any power:")
rep = cl.bm_check(cl.disk(1.0), cl.disk(1.0), gaussian, p=0.8, t_nodes=9)
print(f"  max |slack| = {np.abs(rep.slacks).max():.1e}")

print("\n" + "=" * 70)
print("2. the sign reformulation of the local statement")
print("=" * 70)

print(f"{'config':>24} {'p':>14} {'sign quantity':>14} {'identity resid':>15}")
for body, name in ((cl.disk(1.0), "disk(1)"), (cl.ellipse(2, 1), "ellipse(2,1)"),
                   (cl.fourier_body(1.0, cos={2: 0.1, 4: 0.02}), "peanut")):
    rep = cl.reformulation_check(body, gaussian)
    print(f"{name:>24} {rep['p']:14.8f} {rep['quantity']:+14.8f} "
          f"{rep['identity_residual']:15.2e}")
print("p >= 1/2 and the quantity >= 0 move together (the biconditional)")

print("\n" + "=" * 70)
print("3. pinched-Hessian bounds")
print("=" * 70)

quad14 = cl.quadratic_potential([[1.0, 0.0], [0.0, 4.0]])
for body, u, name in ((cl.disk(1.0), gaussian, "disk(1) + gaussian (r=1)"),
                      (cl.ellipse(2, 1), quad14, "ellipse(2,1) + diag(1,4) (r=4)")):
    rep = cl.pinching_bounds(body, u)
    print(f"{name}:")
    print(f"  moment M = {rep['moment']:.6f} <= 2r = {rep['moment_limit']:.1f}: "
          f"{rep['moment_bound']}")
    print(f"  1/p = {1 / rep['p']:.6f} <= 2 + M = {2 + rep['moment']:.6f}: "
          f"{rep['inverse_power_bound']}")
    print(f"  p = {rep['p']:.6f} >= 1/(2(r+1)) = {rep['power_floor']:.3f}: "
          f"{rep['power_lower_bound']}")

print("\n" + "=" * 70)
print("4. local concavity by direct finite differences")
print("=" * 70)

disk05 = cl.disk(0.5)
p_star = cl.concavity_power(disk05, gaussian)
f = cl.solve_rho_bar(cl.assemble(disk05, gaussian))
print(f"p(mu, disk(0.5)) = {p_star:.9f}")
for p, label in ((p_star - 1e-4, "p* - 1e-4"), (p_star, "p*      "),
                 (p_star + 1e-2, "p* + 1e-2")):
    val = cl.local_concavity_fd(disk05, gaussian, f, p)
    print(f"  d^2/dt^2 mu(K_t)^p at p = {label}: {val:+.3e}")
print("negative below the critical power, positive above: rho_bar is the")
print("direction that pins p(mu, K)")
