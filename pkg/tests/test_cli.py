import json

import pytest

from quiverstab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestClassify:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "classify", "--catalog", "D5tilde")
        assert code == 0
        assert "Euclidean" in out
        assert "(1,1,1,1,2,2)" in out

    def test_json(self, capsys):
        code, out, _ = run(capsys, "classify", "--catalog", "K3",
                           "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["class"] == "Wild"
        assert payload["delta"] is None

    def test_k2(self, capsys):
        code, out, _ = run(capsys, "classify", "--catalog", "K2",
                           "--format", "json")
        assert code == 0
        assert json.loads(out)["delta"] == [1, 1]


class TestCheck:
    def test_all_stable(self, capsys):
        code, out, _ = run(capsys, "check", "--catalog", "D5tilde",
                           "--reps", "V0,V1,V2,V3,V4,V5",
                           "--weight", "3,-1,-2,2,0,-1")
        assert code == 0
        assert out.count("stable") >= 6

    def test_unstable_exit_code(self, capsys):
        code, out, _ = run(capsys, "check", "--catalog", "D5tilde",
                           "--reps", "V0", "--weight", "1,1,0,0,0,-1")
        assert code == 1
        assert "destabilizing" in out

    def test_text_and_json_agree(self, capsys):
        _, text_out, _ = run(capsys, "check", "--catalog", "K3", "--reps", "V",
                             "--weight", "1,-1")
        code, json_out, _ = run(capsys, "check", "--catalog", "K3", "--reps", "V",
                                "--weight", "1,-1", "--format", "json")
        payload = json.loads(json_out)
        assert payload["results"][0]["verdict"] in text_out
        assert payload["results"][0]["destabilizer"] == [1, 1]
        assert code == 1

    def test_weight_length_checked(self, capsys):
        code, _, err = run(capsys, "check", "--catalog", "K3", "--reps", "V",
                           "--weight", "1,2,3")
        assert code == 2
        assert "weight" in err

    def test_unknown_rep(self, capsys):
        code, _, err = run(capsys, "check", "--catalog", "K3", "--reps", "W",
                           "--weight", "1,-1")
        assert code == 2
        assert "unknown representation" in err


class TestSynthesize:
    def test_d5_main(self, capsys):
        code, out, _ = run(capsys, "synthesize", "--catalog", "D5tilde",
                           "--sequence", "main")
        assert code == 0
        assert "(3,-1,-2,2,0,-1)" in out

    def test_d5_json(self, capsys):
        code, out, _ = run(capsys, "synthesize", "--catalog", "D5tilde",
                           "--sequence", "main", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["weight"] == [3, -1, -2, 2, 0, -1]
        assert all(v["verdict"] == "stable" for v in payload["verification"])

    def test_bound_mode(self, capsys):
        code, out, _ = run(capsys, "synthesize", "--catalog", "D5tilde",
                           "--sequence", "main", "--mode", "bound")
        assert code == 0
        assert "(4,-2,-3,3,0,-1)" in out

    def test_k3_negative(self, capsys):
        code, out, _ = run(capsys, "synthesize", "--catalog", "K3",
                           "--sequence", "main")
        assert code == 1
        assert "no common weight found" in out

    def test_a3(self, capsys):
        code, out, _ = run(capsys, "synthesize", "--catalog", "A3",
                           "--sequence", "sincere")
        assert code == 0
        assert "weight:" in out

    def test_unknown_sequence(self, capsys):
        code, _, err = run(capsys, "synthesize", "--catalog", "A3",
                           "--sequence", "nope")
        assert code == 2
        assert "unknown sequence" in err


class TestEndcheck:
    def test_semisimple(self, capsys):
        code, out, _ = run(capsys, "endcheck", "--catalog", "D5tilde",
                           "--reps", "V0,V1^2,V2")
        assert code == 0
        assert "semisimple: yes" in out

    def test_double_simple_is_matrix_algebra(self, capsys):
        code, out, _ = run(capsys, "endcheck", "--catalog", "A3",
                           "--reps", "S1^2")
        assert code == 0
        assert "dimension 4, radical dimension 0" in out

    def test_not_semisimple(self, capsys):
        code, out, _ = run(capsys, "endcheck", "--catalog", "D5tilde",
                           "--reps", "E3,V1")
        assert code == 1
        assert "semisimple: no" in out
        assert "Hom from member 0 to member 1" in out

    def test_jordan_block(self, capsys):
        code, out, _ = run(capsys, "endcheck", "--catalog", "K2", "--reps", "J2")
        assert code == 1
        assert "radical dimension 1" in out

    def test_bad_multiplicity(self, capsys):
        code, _, err = run(capsys, "endcheck", "--catalog", "K2",
                           "--reps", "J2^0")
        assert code == 2


class TestSubrepsAndHom:
    def test_subreps(self, capsys):
        code, out, _ = run(capsys, "subreps", "--catalog", "K3", "--reps", "V",
                           "--prime", "5")
        assert code == 0
        assert "(1,1)" in out

    def test_hom(self, capsys):
        code, out, _ = run(capsys, "hom", "--catalog", "D5tilde",
                           "--reps", "V1,E1")
        assert code == 0
        assert "dim Hom(V1, E1) = 1" in out
        assert "dim Ext1(V1, E1) = 1" in out

    def test_hom_needs_two(self, capsys):
        code, _, err = run(capsys, "hom", "--catalog", "D5tilde", "--reps", "V1")
        assert code == 2


class TestInputsAndErrors:
    def test_input_file(self, capsys, tmp_path):
        bundle = {
            "name": "tiny",
            "quiver": {"vertices": ["a", "b"],
                       "arrows": [{"id": "f", "tail": "a", "head": "b"}]},
            "representations": {
                "P": {"dim": {"a": 1, "b": 1}, "matrices": {"f": [["1"]]}}
            },
            "sequences": {"solo": ["P"]},
        }
        path = tmp_path / "tiny.json"
        path.write_text(json.dumps(bundle))
        code, out, _ = run(capsys, "classify", "--input", str(path))
        assert code == 0
        assert "Dynkin" in out
        code, out, _ = run(capsys, "synthesize", "--input", str(path),
                           "--sequence", "solo")
        assert code == 0

    def test_malformed_json_reports_position(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{\n  \"quiver\": [,]\n}")
        code, _, err = run(capsys, "classify", "--input", str(path))
        assert code == 2
        assert "line 2" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "classify", "--input", str(tmp_path / "no.json"))
        assert code == 2

    def test_nonprime_rejected(self, capsys):
        code, _, err = run(capsys, "subreps", "--catalog", "K3", "--reps", "V",
                           "--prime", "4")
        assert code == 2
        assert "not a prime" in err

    def test_bad_prime_resource_error(self, capsys, tmp_path):
        bundle = {
            "quiver": {"vertices": ["a", "b"],
                       "arrows": [{"id": "f", "tail": "a", "head": "b"}]},
            "representations": {
                "H": {"dim": {"a": 1, "b": 1}, "matrices": {"f": [["1/2"]]}}
            },
        }
        path = tmp_path / "half.json"
        path.write_text(json.dumps(bundle))
        code, _, err = run(capsys, "subreps", "--input", str(path),
                           "--reps", "H", "--prime", "2")
        assert code == 3
        assert "resource error" in err

    def test_budget_exceeded(self, capsys):
        code, _, err = run(capsys, "subreps", "--catalog", "D5tilde",
                           "--reps", "V0", "--budget", "3")
        assert code == 3
        assert "budget" in err
