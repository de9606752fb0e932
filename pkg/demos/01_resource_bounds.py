"""Why remotely applying an unknown qubit rotation is expensive.

If Alice could make her black box act on Bob's qubit at will, she could also
run it conditioned on control qubits she keeps. Two consequences, both
simulated exactly here, put a floor under the resources of any such scheme:

1. A gate applying one of the four Paulis picked by two control bits turns a
   product state into one holding two full e-bits, so at least two shared
   pairs must be burned.
2. The same gate carries two classical bits from Alice to Bob (Bob just
   reads off which Bell state he holds), and one controlled-NOT carries one
   bit the other way, so the classical channel must be two bits forward and
   at least one bit back.
"""

import numpy as np

from remotegate import (
    QubitId,
    bell_phi_plus,
    demo_cnot_reverse,
    demo_cp_capacity,
    demo_cp_entanglement,
    entanglement_entropy,
    measure,
    plus_state,
    reduced_density,
    tensor,
)

print("=== entanglement created by the controlled-Pauli gate ===")
c, cp = QubitId("alice", 0), QubitId("alice", 1)
t1, t2 = QubitId("bob", 0), QubitId("bob", 1)

before = tensor(tensor(plus_state(c), plus_state(cp)), bell_phi_plus(t1, t2))
print(f"entropy across Alice|Bob before the gate: "
      f"{entanglement_entropy(before, [c, cp]):.3f} bits")

state, entropy = demo_cp_entanglement()
print(f"entropy across Alice|Bob after the gate:  {entropy:.12f} bits")
print("Alice's pair is left maximally mixed:")
print(np.round(reduced_density(state, [c, cp]).real, 3))

# Each of Alice's basis states tags one Bell state on Bob's side.
print("\nBob's component for each control value (Bell measurement):")
for bits in ("00", "01", "10", "11"):
    (branch,) = [b for b in measure(state, [c, cp]) if b.outcome == bits]
    (bell,) = measure(branch.post_state, [t1, t2], basis="bell")
    print(f"  controls |{bits}>  ->  Bell outcome {bell.outcome} "
          f"(probability {bell.probability:.3f})")

print("\n=== classical capacity carried by the gate ===")
for message in ("00", "01", "10", "11"):
    print(f"  Alice encodes {message} -> Bob decodes {demo_cp_capacity(message)}")

print("\n=== one bit flows backward through a controlled-NOT ===")
for bit in (0, 1):
    print(f"  Bob prepares |{'+' if bit == 0 else '-'}> -> Alice reads {demo_cnot_reverse(bit)}")

print("\nTogether: at least 2 e-bits, 2 bits Alice->Bob and 1 bit Bob->Alice.")
