import json

import numpy as np
import pytest

from remotegate import random_unimodular, rz, sigma_x, sigma_y, sigma_z, hadamard_matrix
from remotegate.cli import build_parser, main, parse_operator, parse_state, render_operator


class TestParser:
    def test_run_arguments(self):
        args = build_parser().parse_args(
            ["run", "--protocol", "universal221", "--u", "rz:0.5", "--psi", "+"]
        )
        assert args.command == "run"
        assert args.protocol == "universal221"
        assert args.mode == "exact"
        assert args.format == "human"

    def test_unknown_protocol_rejected(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["run", "--protocol", "bogus", "--u", "id", "--psi", "0"])

    def test_demo_names(self):
        args = build_parser().parse_args(["demo", "cp-capacity"])
        assert args.name == "cp-capacity"


class TestParseOperator:
    def test_rz(self):
        np.testing.assert_allclose(
            parse_operator("rz:0.5").matrix, np.diag([np.exp(0.5j), np.exp(-0.5j)])
        )

    def test_mat_identity(self):
        np.testing.assert_allclose(parse_operator("mat:1,0,0,0").matrix, np.eye(2))

    def test_mat_rejects_off_sphere(self):
        # 0.36 + 0.64 + 0.01 = 1.01, past tolerance
        with pytest.raises(ValueError, match="deviates"):
            parse_operator("mat:0.6,0,0.8,0.1")

    def test_named_forms_are_unimodular_paulis(self):
        np.testing.assert_allclose(parse_operator("id").matrix, np.eye(2))
        np.testing.assert_allclose(parse_operator("sx").matrix, 1j * sigma_x)
        np.testing.assert_allclose(parse_operator("sy").matrix, 1j * sigma_y)
        np.testing.assert_allclose(parse_operator("sz").matrix, 1j * sigma_z)
        np.testing.assert_allclose(parse_operator("h").matrix, 1j * hadamard_matrix)

    def test_rot_normalizes_axis(self):
        u = parse_operator("rot:2,0,0,3.14159")
        v = parse_operator("rot:1,0,0,3.14159")
        np.testing.assert_allclose(u.matrix, v.matrix)

    def test_parse_error_reports_column(self):
        with pytest.raises(ValueError, match="column"):
            parse_operator("mat:1,0,x,0")

    def test_unknown_form(self):
        with pytest.raises(ValueError, match="operator spec"):
            parse_operator("paulix")

    def test_round_trip(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            u = random_unimodular(rng)
            again = parse_operator(render_operator(u))
            assert np.abs(u.matrix - again.matrix).max() <= 1e-12


class TestParseState:
    def test_plus(self):
        np.testing.assert_allclose(
            parse_state("+").amplitudes, np.array([1, 1]) / np.sqrt(2)
        )

    def test_amp_normalizes(self):
        np.testing.assert_allclose(
            parse_state("amp:1,0,1,0").amplitudes, np.array([1, 1]) / np.sqrt(2)
        )

    def test_rejects_zero_vector(self):
        with pytest.raises(ValueError, match="zero"):
            parse_state("amp:0,0,0,0")

    def test_unknown_form(self):
        with pytest.raises(ValueError, match="state spec"):
            parse_state("up")


class TestMain:
    def test_run_structured_success_probability(self, capsys):
        code = main(
            ["run", "--protocol", "universal221", "--u", "rot:1,0,0,1.0472",
             "--psi", "+", "--format", "structured"]
        )
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "schema: 1"
        records = [json.loads(line) for line in lines[1:]]
        assert len(records) == 16
        total = sum(r["probability"] for r in records if r["succeeded"])
        assert total == pytest.approx(0.5, abs=1e-9)
        assert records[0]["ledger"] == {"ebits": 2, "cbits_ab": 2, "cbits_ba": 1}

    def test_structured_output_is_deterministic(self, capsys):
        argv = ["run", "--protocol", "one11", "--u", "rz:0.9", "--psi", "amp:0.6,0,0,0.8",
                "--promise", "commuting", "--mode", "sampled", "--seed", "31",
                "--format", "structured"]
        assert main(argv) == 0
        first = capsys.readouterr().out
        assert main(argv) == 0
        second = capsys.readouterr().out
        assert first == second

    def test_demo_entropy_line(self, capsys):
        assert main(["demo", "cp-entanglement"]) == 0
        assert "2.000000000000" in capsys.readouterr().out

    def test_demo_capacity(self, capsys):
        assert main(["demo", "cp-capacity"]) == 0
        out = capsys.readouterr().out
        for message in ("00", "01", "10", "11"):
            assert f"message {message} -> decoded {message}" in out

    def test_demo_cnot_reverse(self, capsys):
        assert main(["demo", "cnot-reverse"]) == 0
        out = capsys.readouterr().out
        assert "bob sends 0 -> alice reads 0" in out
        assert "bob sends 1 -> alice reads 1" in out

    def test_classify(self, capsys):
        assert main(["classify", "--u", "rz:0.5"]) == 0
        assert capsys.readouterr().out.strip() == "commuting(0,0,1)"
        assert main(["classify", "--u", "rot:1,0,0,1.0472"]) == 0
        assert capsys.readouterr().out.strip() == "general"

    def test_classify_custom_axis(self, capsys):
        assert main(["classify", "--u", "rot:1,0,0,0.7", "--axis", "1,0,0"]) == 0
        assert capsys.readouterr().out.strip() == "commuting(1,0,0)"

    def test_ramsey_grid(self, capsys):
        assert main(["ramsey", "--steps", "8"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "theta,p_plus"
        assert len(lines) == 9
        for k, line in enumerate(lines[1:]):
            theta, p = (float(x) for x in line.split(","))
            assert theta == pytest.approx(k * np.pi / 8)
            assert p == pytest.approx((1 + np.cos(theta)) / 2, abs=1e-12)

    def test_ramsey_out_file(self, tmp_path):
        path = tmp_path / "fringe.csv"
        assert main(["ramsey", "--steps", "4", "--out", str(path)]) == 0
        assert path.read_text().startswith("theta,p_plus")

    def test_axis_subcommand(self, tmp_path, capsys):
        spec = tmp_path / "ops.txt"
        spec.write_text("# a family sharing the z axis\nrz:0.3\nrz:1.1\nsx\nsy\n")
        assert main(["axis", "--set", str(spec)]) == 0
        values = [float(v) for v in capsys.readouterr().out.strip().split(",")]
        np.testing.assert_allclose(values, [0, 0, 1], atol=1e-9)

    def test_axis_none(self, tmp_path, capsys):
        spec = tmp_path / "ops.txt"
        spec.write_text("rot:1,0,0,1.0472\nrz:0.63\n")
        assert main(["axis", "--set", str(spec)]) == 0
        assert capsys.readouterr().out.strip() == "none"

    def test_verify_passes(self, capsys):
        assert main(["verify"]) == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out
        assert "checks passed" in out


class TestExitCodes:
    def test_bad_operator_spec(self, capsys):
        assert main(["run", "--protocol", "bqst", "--u", "nope", "--psi", "0"]) == 1
        assert "error:" in capsys.readouterr().err

    def test_promise_violation(self, capsys):
        code = main(
            ["run", "--protocol", "one11", "--u", "rz:0.4", "--psi", "0",
             "--promise", "anticommuting"]
        )
        assert code == 1
        assert "promise violation" in capsys.readouterr().err

    def test_general_operator_in_restricted_protocol(self, capsys):
        code = main(["run", "--protocol", "restricted221", "--u", "h", "--psi", "+"])
        assert code == 1
        assert "commutator norm" in capsys.readouterr().err

    def test_sampled_without_seed(self, capsys):
        code = main(
            ["run", "--protocol", "bqst", "--u", "id", "--psi", "0", "--mode", "sampled"]
        )
        assert code == 1

    def test_unknown_subcommand(self):
        assert main(["teleport"]) == 1

    def test_missing_set_file(self, capsys):
        assert main(["axis", "--set", "/nonexistent/ops.txt"]) == 1

    def test_internal_violation_maps_to_two(self, capsys, monkeypatch):
        from remotegate import InvariantViolation
        from remotegate import cli

        def broken(cfg):
            raise InvariantViolation("forced for the exit-code contract")

        monkeypatch.setitem(cli.PROTOCOLS, "bqst", broken)
        assert main(["run", "--protocol", "bqst", "--u", "id", "--psi", "0"]) == 2
        assert "internal invariant violation" in capsys.readouterr().err
