"""Self-verification suite: every module invariant as a named check.

``run_all`` executes the whole list with a seeded generator and returns one
result per check; the CLI ``verify`` subcommand prints them and maps any
failure to exit code 2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bloch, operators, protocols
from .gates import CNOT, sigma_x, sigma_y, sigma_z
from .operators import (
    ANTICOMMUTING,
    COMMUTING,
    GENERAL,
    Unimodular,
    classify_operator,
    find_common_axis,
    find_orthogonal_pair,
    from_axis_angle,
    orthogonal_state,
    q_operator,
    random_qubit,
    random_unimodular,
    rz,
    solve_correction,
)
from .statevector import (
    QubitId,
    StateVector,
    apply_gate,
    entanglement_entropy,
    measure,
    qubit_state,
    tensor,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _random_state(rng, qubits) -> StateVector:
    amps = rng.normal(size=2 ** len(qubits)) + 1j * rng.normal(size=2 ** len(qubits))
    return StateVector(amps, tuple(qubits))


def _random_register(rng, n: int) -> tuple[QubitId, ...]:
    owners = rng.choice(["alice", "bob"], size=n)
    return tuple(QubitId(str(o), i) for i, o in enumerate(owners))


def _general_unimodular(rng) -> Unimodular:
    while True:
        u = random_unimodular(rng)
        if classify_operator(u).kind == GENERAL:
            return u


def _in_set_operator(rng) -> Unimodular:
    if rng.random() < 0.5:
        return rz(rng.uniform(0, 2 * np.pi))
    return Unimodular(0, np.exp(1j * rng.uniform(0, 2 * np.pi)))


# ---------------------------------------------------------------------------
# statevector engine


def check_norm_preservation(rng):
    worst = 0.0
    for _ in range(50):
        reg = _random_register(rng, 3)
        s = _random_state(rng, reg)
        s = apply_gate(s, random_unimodular(rng).as_gate(), [reg[1]])
        s = apply_gate(s, CNOT, [reg[2], reg[0]])
        worst = max(worst, abs(np.linalg.norm(s.amplitudes) - 1.0))
    return worst <= 1e-10, f"max norm deviation {worst:.2e}"


def check_branch_completeness(rng):
    worst = 0.0
    for _ in range(50):
        reg = _random_register(rng, 3)
        s = _random_state(rng, reg)
        for targets, basis in ([reg[0]], "computational"), (list(reg[:2]), "bell"):
            total = sum(b.probability for b in measure(s, targets, basis))
            worst = max(worst, abs(total - 1.0))
    return worst <= 1e-10, f"max probability deficit {worst:.2e}"


def check_product_state_entropy(rng):
    worst = 0.0
    for _ in range(50):
        a = qubit_state(*random_qubit(rng), QubitId("alice", 0))
        b = qubit_state(*random_qubit(rng), QubitId("bob", 0))
        worst = max(worst, entanglement_entropy(tensor(a, b), [a.register[0]]))
    return worst <= 1e-9, f"max product-state entropy {worst:.2e}"


def check_measurement_idempotence(rng):
    worst = 1.0
    for _ in range(50):
        reg = _random_register(rng, 3)
        s = _random_state(rng, reg)
        for targets, basis in ([reg[1]], "computational"), (list(reg[1:]), "bell"):
            for br in measure(s, targets, basis):
                again = measure(br.post_state, targets, basis)
                repeat = {b.outcome: b.probability for b in again}
                worst = min(worst, repeat.get(br.outcome, 0.0))
    return worst >= 1.0 - 1e-10, f"min repeat probability {worst!r}"


def check_entropy_bounds(rng):
    ok = True
    for _ in range(50):
        reg = _random_register(rng, 4)
        s = _random_state(rng, reg)
        k = int(rng.integers(1, 4))
        ent = entanglement_entropy(s, list(reg[:k]))
        ok = ok and -1e-12 <= ent <= min(k, 4 - k) + 1e-9
    return ok, "0 <= S <= min(|cut|, n-|cut|)"


# ---------------------------------------------------------------------------
# operator algebra


def check_unimodular_closure(rng):
    worst = 0.0
    for _ in range(200):
        u, v = random_unimodular(rng), random_unimodular(rng)
        for w in (u @ v, u.dagger(), q_operator(rng.uniform(0.1, 3.0), random_qubit(rng))):
            worst = max(worst, abs(abs(w.a) ** 2 + abs(w.b) ** 2 - 1.0))
    return worst <= 1e-10, f"max unimodularity drift {worst:.2e}"


def check_classification_trichotomy(rng):
    pool = [random_unimodular(rng) for _ in range(100)]
    pool += [rz(rng.uniform(0, 6)) for _ in range(20)]
    pool += [Unimodular(0, np.exp(1j * rng.uniform(0, 6))) for _ in range(20)]
    for u in pool:
        m = u.matrix
        sz = sigma_z
        comm = np.linalg.norm(m @ sz - sz @ m) <= 1e-9
        anti = np.linalg.norm(m @ sz + sz @ m) <= 1e-9
        kind = classify_operator(u).kind
        expected = COMMUTING if comm else ANTICOMMUTING if anti else GENERAL
        if kind != expected or (comm and anti):
            return False, f"operator {u} tagged {kind}, norms say {expected}"
    return True, "exactly one tag per operator"


def check_q_symmetry(rng):
    worst = 0.0
    for _ in range(1000):
        alpha = rng.uniform(-3, 3)
        psi = random_qubit(rng)
        diff = q_operator(alpha, psi).matrix - q_operator(-alpha, orthogonal_state(psi)).matrix
        worst = max(worst, float(np.abs(diff).max()))
    return worst <= 1e-10, f"max entrywise difference {worst:.2e}"


def check_correction_identity(rng):
    worst = 0.0
    for _ in range(500):
        u = random_unimodular(rng)
        sol = solve_correction(u)
        lhs = sol.v @ u.matrix
        rhs = np.exp(1j * sol.delta) * (u.matrix @ sigma_z)
        worst = max(worst, float(np.linalg.norm(lhs - rhs)))
    return worst <= 1e-9, f"max identity residual {worst:.2e}"


def check_sign_flip_closure(rng):
    worst = 0.0
    for _ in range(500):
        u = _in_set_operator(rng)
        sign = 1.0 if classify_operator(u).kind == COMMUTING else -1.0
        diff = sigma_z @ u.matrix @ sigma_z - sign * u.matrix
        worst = max(worst, float(np.abs(diff).max()))
    return worst <= 1e-9, f"max closure residual {worst:.2e}"


def check_orthogonal_pair_overlap(rng):
    worst = 0.0
    count = 0
    while count < 1000:
        u1, u2 = random_unimodular(rng), random_unimodular(rng)
        try:
            pair = find_orthogonal_pair(u1, u2)
        except ValueError:
            continue
        count += 1
        overlap = np.vdot(pair.phi_prime, pair.phi)
        worst = max(worst, abs(abs(overlap) - abs(np.sin(pair.lam))))
        worst = max(worst, abs(overlap - 1j * np.sin(pair.lam)))
    return worst <= 1e-9, f"max overlap residual {worst:.2e}"


def check_axis_recovery(rng):
    worst = 0.0
    for _ in range(100):
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        w = random_unimodular(rng).matrix
        ops = []
        for k in range(10):
            if k % 2 == 0:
                u = from_axis_angle(axis, rng.uniform(0.3, 5.9))
            else:
                raw = rng.normal(size=3)
                perp = raw - np.dot(raw, axis) * axis
                perp /= np.linalg.norm(perp)
                u = from_axis_angle(perp, np.pi)
            ops.append(Unimodular.from_matrix(w @ u.matrix @ w.conj().T))
        found = find_common_axis(ops)
        if found is None:
            return False, "no axis found for an in-set family"
        conj = w @ (axis[0] * sigma_x + axis[1] * sigma_y + axis[2] * sigma_z) @ w.conj().T
        expected = np.array([np.trace(conj @ s).real / 2 for s in (sigma_x, sigma_y, sigma_z)])
        cosang = min(abs(float(np.dot(found, expected))), 1.0)
        worst = max(worst, float(np.arccos(cosang)))
    return worst <= 1e-6, f"max angular error {worst:.2e}"


# ---------------------------------------------------------------------------
# protocols


def check_ledgers(rng):
    psi = random_qubit(rng)
    u = random_unimodular(rng)
    expected = {
        "bqst": (2, 2, 2),
        "universal221": (2, 2, 1),
        "restricted221": (2, 2, 1),
        "one11": (1, 1, 1),
    }
    configs = {
        "bqst": protocols.ProtocolConfig(u=u, psi=psi),
        "universal221": protocols.ProtocolConfig(u=u, psi=psi),
        "restricted221": protocols.ProtocolConfig(u=rz(1.1), psi=psi),
        "one11": protocols.ProtocolConfig(u=rz(1.1), psi=psi, promise=COMMUTING),
    }
    for name, cfg in configs.items():
        for out in protocols.PROTOCOLS[name](cfg):
            if out.ledger.as_tuple() != expected[name]:
                return False, f"{name} ledger {out.ledger.as_tuple()} != {expected[name]}"
    return True, "(2,2,2) / (2,2,1) / (2,2,1) / (1,1,1) on every branch"


def check_universal_success_half(rng):
    worst = 0.0
    for _ in range(100):
        cfg = protocols.ProtocolConfig(u=random_unimodular(rng), psi=random_qubit(rng))
        p = protocols.success_probability(protocols.run_universal_221(cfg))
        worst = max(worst, abs(p - 0.5))
    return worst <= 1e-9, f"max |p - 1/2| = {worst:.2e}"


def _min_fidelity(runner, rng, samples, promised):
    worst = 1.0
    for _ in range(samples):
        u = _in_set_operator(rng)
        promise = classify_operator(u).kind if promised else None
        cfg = protocols.ProtocolConfig(u=u, psi=random_qubit(rng), promise=promise)
        worst = min(worst, min(o.target_fidelity for o in runner(cfg)))
    return worst


def check_restricted_perfect(rng):
    worst = _min_fidelity(protocols.run_restricted_221, rng, 1000, promised=False)
    return worst >= 1.0 - 1e-9, f"min branch fidelity {worst!r}"


def check_one11_perfect(rng):
    worst = _min_fidelity(protocols.run_111, rng, 1000, promised=True)
    return worst >= 1.0 - 1e-9, f"min branch fidelity {worst!r}"


def check_branch_conservation(rng):
    worst = 0.0
    runs = {
        protocols.run_bqst: protocols.ProtocolConfig(u=random_unimodular(rng), psi=random_qubit(rng)),
        protocols.run_universal_221: protocols.ProtocolConfig(u=random_unimodular(rng), psi=random_qubit(rng)),
        protocols.run_restricted_221: protocols.ProtocolConfig(u=rz(0.9), psi=random_qubit(rng)),
        protocols.run_111: protocols.ProtocolConfig(
            u=Unimodular(0, 1j), psi=random_qubit(rng), promise=ANTICOMMUTING
        ),
    }
    for runner, cfg in runs.items():
        total = sum(o.probability for o in runner(cfg))
        worst = max(worst, abs(total - 1.0))
    return worst <= 1e-10, f"max probability deficit {worst:.2e}"


def check_failure_branch_identity(rng):
    worst = 1.0
    for _ in range(100):
        u, psi = random_unimodular(rng), random_qubit(rng)
        cfg = protocols.ProtocolConfig(u=u, psi=psi)
        wrong = u.matrix @ sigma_z @ psi
        for out in protocols.run_universal_221(cfg):
            if out.measurement_record[-1][2] == "1":
                fid = abs(np.vdot(wrong, out.bob_final.amplitudes)) ** 2
                worst = min(worst, float(fid))
    return worst >= 1.0 - 1e-9, f"min fidelity to U sz|psi> {worst!r}"


def check_classification_consistency(rng):
    for _ in range(100):
        u = random_unimodular(rng) if rng.random() < 0.5 else _in_set_operator(rng)
        cfg = protocols.ProtocolConfig(u=u, psi=random_qubit(rng))
        in_set = classify_operator(u).kind != GENERAL
        try:
            ran = all(o.succeeded for o in protocols.run_restricted_221(cfg))
        except ValueError:
            ran = False
        common = operators.check_common_correction([u])
        admits_sz = common is not None and np.allclose(common.v, sigma_z, atol=1e-9)
        if ran != in_set or admits_sz != in_set:
            return False, f"inconsistent classification for {u}"
    return True, "restricted run succeeds iff the operator is in-set"


# ---------------------------------------------------------------------------
# bloch geometry


def check_bloch_purity(rng):
    worst = 0.0
    for _ in range(200):
        vec = bloch.bloch_vector(bloch.pure_density(random_qubit(rng)))
        worst = max(worst, abs(vec.norm - 1.0))
    return worst <= 1e-9, f"max |S| deviation {worst:.2e}"


def check_bloch_covariance(rng):
    worst = 0.0
    for _ in range(200):
        u, psi = random_unimodular(rng), random_qubit(rng)
        rho = bloch.pure_density(psi)
        rotated = bloch.bloch_vector(u.matrix @ rho @ u.matrix.conj().T)
        back = bloch.density_from_bloch(rotated)
        worst = max(worst, float(np.abs(back - u.matrix @ rho @ u.matrix.conj().T).max()))
    return worst <= 1e-9, f"max reconstruction residual {worst:.2e}"


def check_restoration_classification(rng):
    for _ in range(1000):
        u = random_unimodular(rng) if rng.random() < 0.5 else _in_set_operator(rng)
        if classify_operator(u).kind != GENERAL:
            if not bloch.verify_restoration(u, random_qubit(rng)):
                return False, f"in-set operator failed restoration: {u}"
        else:
            if all(bloch.verify_restoration(u, random_qubit(rng)) for _ in range(10)):
                return False, f"general operator restored on 10 random inputs: {u}"
    return True, "restoration holds exactly for in-set operators"


# ---------------------------------------------------------------------------
# cli surface


def check_operator_round_trip(rng):
    from . import cli

    worst = 0.0
    for _ in range(100):
        u = random_unimodular(rng)
        v = cli.parse_operator(cli.render_operator(u))
        worst = max(worst, float(np.abs(u.matrix - v.matrix).max()))
    return worst <= 1e-12, f"max round-trip drift {worst:.2e}"


CHECKS = [
    ("statevector.norm_preservation", check_norm_preservation),
    ("statevector.branch_completeness", check_branch_completeness),
    ("statevector.product_state_entropy", check_product_state_entropy),
    ("statevector.measurement_idempotence", check_measurement_idempotence),
    ("statevector.entropy_bounds", check_entropy_bounds),
    ("operators.unimodular_closure", check_unimodular_closure),
    ("operators.classification_trichotomy", check_classification_trichotomy),
    ("operators.q_symmetry", check_q_symmetry),
    ("operators.correction_identity", check_correction_identity),
    ("operators.sign_flip_closure", check_sign_flip_closure),
    ("operators.orthogonal_pair_overlap", check_orthogonal_pair_overlap),
    ("operators.axis_recovery", check_axis_recovery),
    ("protocols.ledgers", check_ledgers),
    ("protocols.universal_success_half", check_universal_success_half),
    ("protocols.restricted_perfect", check_restricted_perfect),
    ("protocols.one11_perfect", check_one11_perfect),
    ("protocols.branch_conservation", check_branch_conservation),
    ("protocols.failure_branch_identity", check_failure_branch_identity),
    ("protocols.classification_consistency", check_classification_consistency),
    ("bloch.purity", check_bloch_purity),
    ("bloch.rotation_covariance", check_bloch_covariance),
    ("bloch.restoration_classification", check_restoration_classification),
    ("cli.operator_round_trip", check_operator_round_trip),
]


def run_all(seed: int = 20020923) -> list[CheckResult]:
    """Run every invariant check with a deterministic generator."""
    results = []
    for i, (name, fn) in enumerate(CHECKS):
        rng = np.random.default_rng([seed, i])
        try:
            passed, detail = fn(rng)
        except Exception as exc:  # a crash counts as a failed invariant
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CheckResult(name=name, passed=bool(passed), detail=detail))
    return results
