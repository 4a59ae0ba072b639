import json
import os
import subprocess
import sys

import pytest

from eulercat import builders, ratmat
from eulercat.cli import main
from eulercat.fileio import category_to_data, load_category
from eulercat.manifest import CORPUS_DIR
from eulercat.weights import chi


def corpus(name):
    return str(CORPUS_DIR / name)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


class TestChi:
    def test_c1(self, capsys):
        code, out = run_json(capsys, "chi", corpus("c1.json"))
        assert code == 0 and out["chi"] == "5/13" and out["lein_defined"] is False

    def test_terminal(self, capsys):
        assert run_json(capsys, "chi", corpus("terminal.json"))[1]["chi"] == "1"

    def test_poset(self, capsys):
        code, out = run_json(capsys, "chi", corpus("poset_pbc.json"))
        assert out["chi"] == "1" and out["lein_defined"] is True
        assert out["weighting"] == ["-1", "1", "1"]

    def test_matrix_file(self, capsys):
        assert run_json(capsys, "chi", corpus("ex2_matrix.json"))[1]["chi"] == "7/17"

    def test_invalid_category_exit_2(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text(json.dumps({"objects": ["a"], "morphisms": [{"id": "i", "src": "a", "dst": "a"}],
                                 "identities": {"a": "i"}, "composition": []}))
        code, out = run_json(capsys, "chi", str(p))
        assert code == 2
        assert out["violations"][0]["message"] == "composition not total at (i,i)"

    def test_parse_error_exit_1(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{")
        code, out, err = run(capsys, "chi", str(p))
        assert code == 1 and out == "" and "invalid JSON" in err

    def test_missing_file(self, capsys):
        assert run(capsys, "chi", "/nonexistent.json")[0] == 1


class TestPinv:
    def test_ex1(self, capsys, tmp_path):
        code, out = run_json(capsys, "pinv", corpus("ex1_matrix.json"))
        assert code == 0
        assert out == {"rows": 2, "cols": 2, "entries": [["3/26", "3/26"], ["1/13", "1/13"]]}

    def test_identity(self, capsys):
        out = run_json(capsys, "pinv", corpus("identity2_matrix.json"))[1]
        assert out["entries"] == [[1, 0], [0, 1]]

    def test_ex2(self, capsys):
        out = run_json(capsys, "pinv", corpus("ex2_matrix.json"))[1]
        assert out["entries"] == [["1/17"] * 3, ["2/51"] * 3, ["2/51"] * 3]

    def test_non_square(self, capsys, tmp_path):
        p = tmp_path / "m.json"
        p.write_text(json.dumps({"rows": 1, "cols": 2, "entries": [[1, 2]]}))
        assert run(capsys, "pinv", str(p))[0] == 1

    def test_wrong_kind(self, capsys):
        assert run(capsys, "pinv", corpus("ex3_diagram.json"))[0] == 1


class TestWeightings:
    def test_weighting(self, capsys):
        code, out = run_json(capsys, "weighting", corpus("c1.json"))
        assert code == 0 and out == {"exists": True, "weighting": ["3/13", "2/13"]}

    def test_coweighting_absent(self, capsys):
        assert run_json(capsys, "coweighting", corpus("c1.json"))[1] == {"exists": False, "coweighting": None}

    def test_non_square(self, capsys, tmp_path):
        p = tmp_path / "m.json"
        p.write_text(json.dumps({"rows": 1, "cols": 2, "entries": [[1, 2]]}))
        assert run(capsys, "weighting", str(p))[0] == 1


class TestProducts:
    def test_product(self, capsys, tmp_path):
        code, out, _ = run(capsys, "product", corpus("z2.json"), corpus("discrete2.json"))
        assert code == 0
        p = tmp_path / "p.json"
        p.write_text(out)
        assert chi(load_category(p).require_valid()) == 1

    def test_coproduct(self, capsys):
        code, out = run_json(capsys, "coproduct", corpus("c1.json"), corpus("c2.json"))
        assert code == 0 and len(out["objects"]) == 5

    def test_invalid_input(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        c = category_to_data(builders.cyclic_group(2))
        c["composition"] = c["composition"][:-1]
        p.write_text(json.dumps(c))
        assert run(capsys, "product", str(p), corpus("z2.json"))[0] == 2


class TestGroth:
    def test_ex3(self, capsys):
        code, out = run_json(capsys, "groth", corpus("ex3_diagram.json"))
        assert code == 0
        assert (out["actual"], out["predicted"], out["applies"]) == ("7/17", "5/13", False)
        assert out["adjacency"] == [["3", "2", "2"]] * 3
        assert out["chi_row"] == ["1", "1"]

    def test_poset_terminal(self, capsys):
        out = run_json(capsys, "groth", corpus("poset_terminal_diagram.json"))[1]
        assert out["actual"] == out["predicted"] == "1" and out["applies"]

    def test_poset_mixed(self, capsys):
        out = run_json(capsys, "groth", corpus("poset_mixed_diagram.json"))[1]
        assert out["actual"] == out["predicted"] == "3/2" and out["applies"]

    def test_invalid_diagram_exit_2(self, capsys, tmp_path):
        data = json.loads((CORPUS_DIR / "poset_terminal_diagram.json").read_text())
        data["index"] = corpus("poset_pbc.json")
        data["fibers"] = {k: corpus(v) for k, v in data["fibers"].items()}
        data["arrows"]["a<b"]["objects"] = {"*": "nowhere"}
        p = tmp_path / "d.json"
        p.write_text(json.dumps(data))
        code, out = run_json(capsys, "groth", str(p))
        assert code == 2 and out["violations"]

    def test_unknown_arrow_exit_1(self, capsys, tmp_path):
        data = json.loads((CORPUS_DIR / "poset_terminal_diagram.json").read_text())
        data["index"] = corpus("poset_pbc.json")
        data["fibers"] = {k: corpus(v) for k, v in data["fibers"].items()}
        data["arrows"]["zzz"] = {"objects": {}, "morphisms": {}}
        p = tmp_path / "d.json"
        p.write_text(json.dumps(data))
        assert run(capsys, "groth", str(p))[0] == 1


class TestCheck:
    @pytest.mark.parametrize("name, kind", [
        ("c1.json", "category"), ("ex1_matrix.json", "matrix"),
        ("c1_to_c2.json", "functor"), ("ex3_diagram.json", "diagram"),
    ])
    def test_valid(self, capsys, name, kind):
        code, out = run_json(capsys, "check", corpus(name))
        assert code == 0 and out["kind"] == kind and out["valid"]

    def test_invalid_functor(self, capsys, tmp_path):
        data = json.loads((CORPUS_DIR / "c2_to_c1.json").read_text())
        data["source"], data["target"] = corpus("c2.json"), corpus("c1.json")
        data["objects"]["b2"] = "a"
        p = tmp_path / "f.json"
        p.write_text(json.dumps(data))
        code, out = run_json(capsys, "check", str(p))
        assert code == 2 and not out["valid"]


class TestAdjoint:
    def test_equivalence_precondition(self, capsys):
        code, out = run_json(capsys, "adjoint", corpus("c1_to_c2.json"), corpus("c2_to_c1.json"))
        assert code == 0 and out["hom_counts"] is True
        assert out["transport"] is None and "coweighting" in out["reason"]

    def test_initial_object(self, capsys):
        out = run_json(capsys, "adjoint", corpus("initial_point.json"), corpus("poset_to_terminal.json"))[1]
        assert out["hom_counts"] is True and out["transport"] is True

    def test_wrong_direction(self, capsys):
        out = run_json(capsys, "adjoint", corpus("poset_to_terminal.json"), corpus("initial_point.json"))[1]
        assert out["hom_counts"] is False and out["witness"] is not None

    def test_mismatched_categories(self, capsys):
        assert run(capsys, "adjoint", corpus("c1_to_c2.json"), corpus("initial_point.json"))[0] == 1


class TestVerifyLaws:
    def test_all_pass(self, capsys):
        code, out = run_json(capsys, "verify-laws", "--seed", "1", "--count", "50", "--max-objects", "4")
        assert code == 0 and out["ok"] and out["first_failure"] is None
        assert all(t["failed"] == 0 for t in out["laws"].values())
        assert out["laws"]["penrose"]["passed"] == 50

    def test_corrupted_pinv(self, capsys, monkeypatch):
        real = ratmat.pinv

        def corrupted(m):
            p = real(m)
            return ratmat.RatMatrix(p.rows, p.cols, (p.entries[0] + 1,) + p.entries[1:])

        monkeypatch.setattr(ratmat, "pinv", corrupted)
        code, out = run_json(capsys, "verify-laws", "--seed", "1", "--count", "1")
        assert code == 3 and not out["ok"]
        assert out["first_failure"]["law"] == "penrose"
        assert out["first_failure"]["witness"]["violations"]

    def test_count_zero(self, capsys):
        code, out, err = run(capsys, "verify-laws", "--count", "0")
        assert code == 1 and "count" in err

    def test_bad_bounds(self, capsys):
        assert run(capsys, "verify-laws", "--max-hom", "0")[0] == 1

    def test_deterministic_in_process(self, capsys):
        a = run(capsys, "verify-laws", "--seed", "17", "--count", "5")[1]
        b = run(capsys, "verify-laws", "--seed", "17", "--count", "5")[1]
        assert a == b

    def test_deterministic_across_processes(self):
        outs = []
        for hashseed in ("0", "12345"):
            env = dict(os.environ, PYTHONHASHSEED=hashseed)
            r = subprocess.run([sys.executable, "-m", "eulercat", "verify-laws", "--seed", "3", "--count", "4"],
                               capture_output=True, env=env, check=True)
            outs.append(r.stdout)
        assert outs[0] == outs[1]


class TestCorpusAndFlags:
    def test_corpus(self, capsys):
        code, out = run_json(capsys, "corpus")
        assert code == 0 and out["ok"] and all(e["ok"] for e in out["entries"])

    def test_corpus_mismatch_exit_3(self, capsys, tmp_path):
        manifest = json.loads((CORPUS_DIR / "manifest.json").read_text())
        manifest["entries"] = [dict(manifest["entries"][0], expected={"chi": "1"})]
        for name in ("ex1_matrix.json",):
            (tmp_path / name).write_text((CORPUS_DIR / name).read_text())
        p = tmp_path / "manifest.json"
        p.write_text(json.dumps(manifest))
        code, out = run_json(capsys, "corpus", "--manifest", str(p))
        assert code == 3 and out["entries"][0]["mismatches"][0]["actual"] == "5/13"

    def test_pretty_before_and_after_subcommand(self, capsys):
        before = run(capsys, "--pretty", "chi", corpus("z2.json"))[1]
        after = run(capsys, "chi", "--pretty", corpus("z2.json"))[1]
        compact = run(capsys, "chi", "--json", corpus("z2.json"))[1]
        assert before == after and "\n  " in before
        assert "\n" not in compact.strip()

    def test_usage_error_is_input_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["product", corpus("z2.json")])
        assert exc.value.code == 1

    def test_module_entry_point(self):
        r = subprocess.run([sys.executable, "-m", "eulercat", "chi", corpus("c2.json")],
                           capture_output=True, text=True)
        assert r.returncode == 0 and json.loads(r.stdout)["chi"] == "7/17"
