"""Standard bodies, potentials, and randomized fields for the checks.

The verification commands and the test suite draw from one fixed matrix of
configurations so that reported numbers are reproducible; all randomness goes
through explicitly seeded generators.
"""

import numpy as np

from .forms import BoundaryField, InteriorField
from .geometry import disk, ellipse, fourier_body
from .measure import (
    even_quartic_potential,
    gaussian_potential,
    quadratic_potential,
    zero_potential,
)

__all__ = [
    "standard_bodies",
    "standard_potentials",
    "body_potential_matrix",
    "symmetric_matrix",
    "random_boundary_field",
    "random_interior_field",
]


def standard_bodies(M=256):
    return {
        "disk1": disk(1.0, M=M),
        "disk05": disk(0.5, M=M),
        "disk15": disk(1.5, M=M),
        "ellipse21": ellipse(2.0, 1.0, M=M),
        "ellipse12": ellipse(1.0, 2.0, M=M),
        # generic (non-symmetric) analytic body
        "blob": fourier_body(1.0, cos={2: 0.15}, sin={3: 0.05}, M=M),
        # origin-symmetric analytic body
        "peanut": fourier_body(1.0, cos={2: 0.1, 4: 0.02}, M=M),
    }


def standard_potentials():
    return {
        "gaussian": gaussian_potential(),
        "quad14": quadratic_potential([[1.0, 0.0], [0.0, 4.0]]),
        "quad12": quadratic_potential([[1.0, 0.0], [0.0, 2.0]]),
        "quad_mixed": quadratic_potential([[2.0, 0.6], [0.6, 1.0]]),
        "quartic": even_quartic_potential(0.1),
        "zero": zero_potential(),
    }


def body_potential_matrix(M=256):
    """The 3 x 3 generic matrix used by the identity and inequality checks."""
    bodies = standard_bodies(M)
    pots = standard_potentials()
    out = []
    for bname in ("disk1", "ellipse21", "blob"):
        for pname in ("gaussian", "quad14", "quartic"):
            out.append((bname, pname, bodies[bname], pots[pname]))
    return out


def symmetric_matrix(M=256):
    """Origin-symmetric bodies x even potentials (conjecture hypotheses)."""
    bodies = standard_bodies(M)
    pots = standard_potentials()
    out = []
    for bname in ("disk1", "ellipse21", "peanut"):
        for pname in ("gaussian", "quad14", "quartic"):
            out.append((bname, pname, bodies[bname], pots[pname]))
    return out


def random_boundary_field(rng, M, order=6, decay=2.0):
    """Smooth random field: Fourier coefficients with 1/(1+k^decay) falloff."""
    t = 2.0 * np.pi * np.arange(M) / M
    vals = np.full(M, rng.standard_normal())
    for k in range(1, order + 1):
        w = 1.0 / (1.0 + float(k) ** decay)
        vals += w * rng.standard_normal() * np.cos(k * t)
        vals += w * rng.standard_normal() * np.sin(k * t)
    return BoundaryField(vals)


def random_interior_field(rng):
    """Random quadratic or plane-wave field with analytic gradient."""
    if rng.random() < 0.5:
        C = rng.normal(scale=0.6, size=(2, 2))
        C = 0.5 * (C + C.T)
        b = rng.standard_normal(2)
        c = rng.standard_normal()

        def value(p, C=C, b=b, c=c):
            return 0.5 * np.einsum("...i,ij,...j->...", p, C, p) + p @ b + c

        def grad(p, C=C, b=b):
            return np.einsum("...j,ij->...i", p, C) + b

        return InteriorField(value, grad, descriptor={"kind": "random-quadratic"})
    a = rng.standard_normal()
    k = rng.uniform(-2.0, 2.0, size=2)
    delta = rng.uniform(0.0, 2.0 * np.pi)

    def value(p, a=a, k=k, delta=delta):
        return a * np.sin(p @ k + delta)

    def grad(p, a=a, k=k, delta=delta):
        return a * np.cos(p @ k + delta)[..., None] * k

    return InteriorField(value, grad, descriptor={"kind": "random-wave"})
