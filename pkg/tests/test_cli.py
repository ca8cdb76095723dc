"""End-to-end CLI behavior: exit codes, JSON documents, oracle cross-checks."""

import io
import json

import pytest

from pbm.cli import EXIT_ERROR, EXIT_INFEASIBLE, EXIT_OK, EXIT_UNBOUNDED, main
from pbm.core import instance_to_json
from pbm.asmkit import asm_instance, pasm_instance
from pbm import oracle


def write_json(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    doc = json.loads(captured.out) if captured.out.strip() else None
    return code, doc, captured.err


@pytest.fixture
def asm2_file(tmp_path):
    return write_json(tmp_path / "asm2.json", instance_to_json(asm_instance(2)))


@pytest.fixture
def bad1x1_file(tmp_path):
    doc = {
        "m": 1,
        "n": 1,
        "phi1": [[1]],
        "gamma1": [[1]],
        "phi2": [[0]],
        "gamma2": [[0]],
    }
    return write_json(tmp_path / "bad.json", doc)


class TestCheckSolve:
    def test_check_feasible(self, capsys, asm2_file):
        code, doc, err = run(capsys, "check", asm2_file)
        assert code == EXIT_OK
        assert doc["status"] == "feasible"
        assert "matrix" not in doc
        assert doc["diagnostics"]["arcs"] == 13
        assert "feasible" in err

    def test_solve_returns_matrix(self, capsys, asm2_file):
        code, doc, _ = run(capsys, "solve", asm2_file)
        assert code == EXIT_OK
        assert doc["matrix"] in ([[1, 0], [0, 1]], [[0, 1], [1, 0]])

    def test_infeasible_certificate(self, capsys, bad1x1_file):
        code, doc, err = run(capsys, "check", bad1x1_file)
        assert code == EXIT_INFEASIBLE
        cert = doc["certificate"]
        assert cert["violated"] == "gen1a" and cert["case"] == 1
        assert cert["lhs"] == 1 and cert["rhs"] == 0
        assert cert["x1"] == [[1, 1]] and cert["x2"] == [[1, 1]]
        assert "gen1a" in err

    def test_prescribe_inline(self, capsys, asm2_file):
        code, doc, _ = run(capsys, "solve", asm2_file, "--prescribe", "[[1,1,1]]")
        assert code == EXIT_OK
        assert doc["matrix"] == [[1, 0], [0, 1]]

    def test_prescribe_from_file(self, capsys, tmp_path, asm2_file):
        pfile = write_json(tmp_path / "pins.json", [[1, 1, 1], [2, 2, 0]])
        code, doc, _ = run(capsys, "solve", asm2_file, "--prescribe", f"@{pfile}")
        assert code == EXIT_INFEASIBLE
        assert doc["certificate"]["lhs"] > doc["certificate"]["rhs"]

    def test_stdin_instance(self, capsys, monkeypatch):
        payload = json.dumps(instance_to_json(asm_instance(2)))
        monkeypatch.setattr("sys.stdin", io.StringIO(payload))
        code, doc, _ = run(capsys, "check", "-")
        assert code == EXIT_OK and doc["status"] == "feasible"

    def test_oracle_flag_agrees(self, capsys, asm2_file):
        code, doc, _ = run(capsys, "solve", asm2_file, "--oracle")
        assert code == EXIT_OK
        assert doc["oracle"] == {"count": 2, "agrees": True}

    def test_dump_dot(self, capsys, tmp_path, asm2_file):
        dot = tmp_path / "net.dot"
        code, _, _ = run(capsys, "check", asm2_file, "--dump-dot", str(dot))
        assert code == EXIT_OK
        assert dot.read_text().startswith("digraph")

    def test_round_trip_feasible_matrix(self, capsys, tmp_path, asm2_file):
        # a solved matrix, pinned back in as f = g = matrix, stays feasible
        code, doc, _ = run(capsys, "solve", asm2_file)
        mat = doc["matrix"]
        pinned = instance_to_json(asm_instance(2))
        pinned["f"] = mat
        pinned["g"] = mat
        pfile = write_json(tmp_path / "pinned.json", pinned)
        code, doc, _ = run(capsys, "check", pfile)
        assert code == EXIT_OK and doc["status"] == "feasible"


class TestSum:
    def test_max_and_min(self, capsys, tmp_path):
        f = write_json(tmp_path / "asm3.json", instance_to_json(asm_instance(3)))
        for flag in ("--max", "--min"):
            code, doc, _ = run(capsys, "sum", f, flag)
            assert code == EXIT_OK
            assert doc["value"] == 3

    def test_direction_required(self, capsys, asm2_file):
        with pytest.raises(SystemExit) as exc:
            main(["sum", asm2_file])
        assert exc.value.code == EXIT_ERROR
        capsys.readouterr()

    def test_unbounded_exit(self, capsys, tmp_path):
        doc = {
            "m": 1,
            "n": 1,
            "phi1": [[0]],
            "gamma1": [["+inf"]],
            "phi2": [[0]],
            "gamma2": [["+inf"]],
        }
        f = write_json(tmp_path / "open.json", doc)
        code, out, _ = run(capsys, "sum", f, "--max")
        assert code == EXIT_UNBOUNDED
        assert out["status"] == "unbounded"

    def test_oracle_flag(self, capsys, tmp_path):
        f = write_json(tmp_path / "pasm.json", instance_to_json(pasm_instance(2, 2)))
        code, doc, _ = run(capsys, "sum", f, "--min", "--oracle")
        assert code == EXIT_OK
        assert doc["value"] == 0
        assert doc["oracle"]["agrees"] and doc["oracle"]["min"] == 0


class TestCost:
    def test_min_with_costs(self, capsys, tmp_path, asm2_file):
        cfile = write_json(tmp_path / "costs.json", [[-1, 0], [0, -1]])
        code, doc, _ = run(capsys, "cost", asm2_file, "--costs", cfile)
        assert code == EXIT_OK
        assert doc["value"] == -2
        assert doc["matrix"] == [[1, 0], [0, 1]]

    def test_max_direction(self, capsys, tmp_path, asm2_file):
        cfile = write_json(tmp_path / "costs.json", [[-1, 0], [0, -1]])
        code, doc, _ = run(capsys, "cost", asm2_file, "--costs", cfile, "--max")
        assert code == EXIT_OK and doc["value"] == 0

    def test_oracle_flag(self, capsys, tmp_path, asm2_file):
        cfile = write_json(tmp_path / "costs.json", [[3, -2], [1, 0]])
        code, doc, _ = run(capsys, "cost", asm2_file, "--costs", cfile, "--oracle")
        assert code == EXIT_OK
        assert doc["oracle"]["agrees"]

    def test_costs_required(self, capsys, asm2_file):
        with pytest.raises(SystemExit) as exc:
            main(["cost", asm2_file])
        assert exc.value.code == EXIT_ERROR
        capsys.readouterr()


class TestDecompose:
    def test_splits_k_regular(self, capsys, tmp_path):
        from pbm.asmkit import k_regular_instance

        ifile = write_json(tmp_path / "kreg.json", instance_to_json(k_regular_instance(2, 2)))
        mfile = write_json(tmp_path / "mat.json", [[1, 1], [1, 1]])
        code, doc, _ = run(capsys, "decompose", ifile, "--matrix", mfile, "-k", "2")
        assert code == EXIT_OK
        assert sum(p["multiplicity"] for p in doc["parts"]) == 2
        total = [[0, 0], [0, 0]]
        for part in doc["parts"]:
            for i in range(2):
                for j in range(2):
                    total[i][j] += part["matrix"][i][j] * part["multiplicity"]
        assert total == [[1, 1], [1, 1]]

    def test_bad_matrix_exit(self, capsys, tmp_path):
        from pbm.asmkit import k_regular_instance

        ifile = write_json(tmp_path / "kreg.json", instance_to_json(k_regular_instance(2, 2)))
        mfile = write_json(tmp_path / "mat.json", [[9, 9], [9, 9]])
        code, doc, err = run(capsys, "decompose", ifile, "--matrix", mfile, "-k", "2")
        assert code == EXIT_ERROR
        assert "error" in err


class TestAsm:
    def test_plain_order(self, capsys):
        code, doc, _ = run(capsys, "asm", "3", "--oracle")
        assert code == EXIT_OK
        assert doc["oracle"] == {"count": 7, "agrees": True}

    def test_compatible_inline(self, capsys):
        labels = json.dumps([["-1", "F"], ["F", "F"]])
        code, doc, _ = run(capsys, "asm", "--compatible", labels)
        assert code == EXIT_INFEASIBLE
        assert doc["family"]["size"] == 2 and doc["family"]["required"] == 3

    def test_compatible_oracle(self, capsys, tmp_path):
        lfile = write_json(tmp_path / "labels.json", [["F", "F"], ["F", "F"]])
        code, doc, _ = run(capsys, "asm", "--compatible", f"@{lfile}", "--oracle")
        assert code == EXIT_OK
        assert doc["oracle"] == {"count": 2, "agrees": True}

    def test_no_arguments_is_an_error(self, capsys):
        code = main(["asm"])
        _, err = capsys.readouterr()
        assert code == EXIT_ERROR
        assert "error" in err


class TestSubordinate:
    def test_feasible(self, capsys, tmp_path):
        mfile = write_json(tmp_path / "x.json", [[1, 0], [0, 1]])
        code, doc, _ = run(capsys, "subordinate", mfile, "--oracle")
        assert code == EXIT_OK
        assert doc["matrix"] == [[1, 0], [0, 1]]

    def test_maximize(self, capsys, tmp_path):
        mfile = write_json(tmp_path / "x.json", [[1, 1], [1, 1]])
        code, doc, _ = run(capsys, "subordinate", mfile, "--maximize", "--oracle")
        assert code == EXIT_OK
        assert doc["plus_ones_kept"] == 2
        assert doc["oracle"]["best"] == 2

    def test_infeasible_family(self, capsys, tmp_path):
        mfile = write_json(tmp_path / "x.json", [[0, 0], [1, 1]])
        code, doc, _ = run(capsys, "subordinate", mfile)
        assert code == EXIT_INFEASIBLE
        assert doc["family"]["size"] == 1 and doc["family"]["required"] == 2


class TestWasm:
    def test_feasible_pattern(self, capsys, tmp_path):
        pfile = write_json(tmp_path / "pats.json", {"rows": ["++"], "cols": ["++"]})
        code, doc, _ = run(capsys, "wasm", pfile, "--oracle")
        assert code == EXIT_OK
        assert doc["matrix"] == [[1]]
        assert doc["oracle"]["agrees"]

    def test_solution_passes_wing_check(self, capsys, tmp_path):
        pfile = write_json(
            tmp_path / "pats.json", {"rows": ["++", "--"], "cols": ["+-", "-+"]}
        )
        code, doc, _ = run(capsys, "wasm", pfile, "--oracle")
        if code == EXIT_OK:
            from pbm.core import IntMatrix

            assert oracle.is_wasm(IntMatrix.from_rows(doc["matrix"]), ["++", "--"], ["+-", "-+"])
        else:
            assert code == EXIT_INFEASIBLE


class TestEval:
    def test_single_subset(self, capsys, tmp_path):
        f = write_json(tmp_path / "asm3.json", instance_to_json(asm_instance(3)))
        code, doc, _ = run(capsys, "eval", f, "--subset", "[[1,1],[1,2],[1,3]]", "--oracle")
        assert code == EXIT_OK
        assert doc["p1"] == 1 and doc["b1"] == 1
        assert doc["strict"] and doc["common_sum"] == 3
        assert doc["oracle"]["agrees"]

    def test_pair_evaluates_condition(self, capsys, bad1x1_file):
        code, doc, _ = run(
            capsys, "eval", bad1x1_file, "--subset", "[[1,1]]", "--subset2", "[[1,1]]"
        )
        assert code == EXIT_OK
        cond = doc["condition"]
        assert set(cond) == {"gen1a", "gen1b", "gen1alfa", "gen1beta"}
        assert cond["gen1a"] == {"lhs": 1, "rhs": 0, "holds": False}
        assert doc["all_hold"] is False


class TestOracleCommand:
    def test_census(self, capsys, tmp_path):
        f = write_json(tmp_path / "asm3.json", instance_to_json(asm_instance(3)))
        code, doc, _ = run(capsys, "oracle", f)
        assert code == EXIT_OK
        assert doc["count"] == 7 and len(doc["matrices"]) == 7

    def test_budget_flag(self, capsys, tmp_path):
        f = write_json(tmp_path / "asm4.json", instance_to_json(asm_instance(4)))
        code = main(["oracle", f, "--max-cells", "9"])
        _, err = capsys.readouterr()
        assert code == EXIT_ERROR
        assert "error" in err


class TestErrorPaths:
    def test_missing_file(self, capsys):
        code = main(["check", "/nonexistent/instance.json"])
        _, err = capsys.readouterr()
        assert code == EXIT_ERROR and "error" in err

    def test_malformed_json(self, capsys, tmp_path):
        f = tmp_path / "broken.json"
        f.write_text("{not json")
        code = main(["check", str(f)])
        _, err = capsys.readouterr()
        assert code == EXIT_ERROR

    def test_invalid_instance(self, capsys, tmp_path):
        f = write_json(
            tmp_path / "inverted.json",
            {"m": 1, "n": 1, "phi1": [[2]], "gamma1": [[1]], "phi2": [[0]], "gamma2": [[0]]},
        )
        code = main(["check", str(f)])
        _, err = capsys.readouterr()
        assert code == EXIT_ERROR and "error" in err

    def test_unknown_subcommand(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == EXIT_ERROR
        capsys.readouterr()
