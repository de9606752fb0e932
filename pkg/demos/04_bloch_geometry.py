"""The geometric reason a single sz repairs the mirror branch.

The wrong branch holds U applied to the mirror state sz|psi>, whose Bloch
vector keeps Sz but negates the equatorial part (Sx, Sy). When U commutes or
anticommutes with sz, the transformed vectors stay mirror images of each
other, so one final sz flips the wrong output onto the right one. A general
rotation tilts the pair out of mirror alignment and the trick fails.
"""

import numpy as np

from remotegate import (
    Unimodular,
    bloch_vector,
    classify_operator,
    from_axis_angle,
    mirror_state,
    pure_density,
    random_qubit,
    rz,
    sigma_z,
    verify_restoration,
)

rng = np.random.default_rng(3)


def show(label, vec):
    print(f"  {label}: ({vec.sx:+.4f}, {vec.sy:+.4f}, {vec.sz:+.4f})")


print("=== mirror geometry of an equatorial state ===")
psi = np.array([1.0, np.exp(0.7j)]) / np.sqrt(2)
show("psi          ", bloch_vector(pure_density(psi)))
show("mirror       ", bloch_vector(pure_density(mirror_state(psi))))

print("\n=== a half-turn about x keeps the pair opposed ===")
u = from_axis_angle([1, 0, 0], np.pi)
show("U psi        ", bloch_vector(pure_density(u.matrix @ psi)))
show("U mirror     ", bloch_vector(pure_density(u.matrix @ mirror_state(psi))))
show("sz U mirror  ", bloch_vector(pure_density(sigma_z @ u.matrix @ mirror_state(psi))))
print("  -> applying sz to the wrong output lands exactly on U psi")

print("\n=== a general state keeps Sz through the mirror ===")
psi = random_qubit(rng)
show("psi          ", bloch_vector(pure_density(psi)))
show("mirror       ", bloch_vector(pure_density(mirror_state(psi))))

print("\n=== restoration truth table over random inputs ===")
candidates = {
    "rz(1.1)            ": rz(1.1),
    "half-turn about y  ": from_axis_angle([0, 1, 0], np.pi),
    "rotation x by pi/5 ": from_axis_angle([1, 0, 0], np.pi / 5),
    "Hadamard-like      ": Unimodular(1 / np.sqrt(2), 1 / np.sqrt(2)),
}
for label, u in candidates.items():
    results = [verify_restoration(u, random_qubit(rng)) for _ in range(6)]
    print(f"  {label} [{classify_operator(u)}]: "
          f"{'always restored' if all(results) else 'restoration fails'}")
