"""Single-photon quantum walk on a 21x21 waveguide lattice.

A photon injected in the central guide of a square array spreads
ballistically: the light cone grows linearly with propagation
distance, unlike the sqrt(z) spread of a classical random walk.
"""

import numpy as np

from photonwalk import build_hamiltonian, evolve, rectangular_lattice


def variance_along_x(layout, probs):
    xs = layout.positions[:, 0]
    mu = float(np.sum(probs * xs))
    return float(np.sum(probs * (xs - mu) ** 2))


def main():
    layout = rectangular_lattice(21, 21, 15.0, 15.0)
    h = build_hamiltonian(layout)
    center = 221  # node 11 in both directions

    print("z (cm)   sum P      sigma_x (um)   P(center)")
    for z in (0.0, 1.0, 2.0, 3.0, 4.0, 5.0):
        probs = evolve(h, center, z)
        sigma = np.sqrt(variance_along_x(layout, probs))
        print(f"{z:5.1f}   {probs.sum():.6f}   {sigma:10.2f}   {probs[center - 1]:.4f}")

    probs = evolve(h, center, 5.0)
    top = np.argsort(probs)[::-1][:5]
    print("\nbrightest guides at z = 5 cm:")
    for j in top:
        x, y = layout.positions[j]
        print(f"  node {j + 1:3d} at ({x:5.0f}, {y:5.0f}) um   P = {probs[j]:.4f}")


if __name__ == "__main__":
    main()
