"""End-to-end tests of the command-line interface."""

import json
import shutil
import subprocess

import pytest

from demchar.cli import main
from demchar.crystals import perfect_crystal
from demchar.weights import FormalCharacter, demazure_op


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


class TestGraph:
    def test_two_node_dot(self, capsys):
        code, out, err = run(capsys, "graph", "A1", "1")
        assert code == 0
        assert out.startswith("digraph")
        assert '"0" -> "1" [label="1"];' in out
        assert '"1" -> "0" [label="0"];' in out
        assert out.count("->") == 2

    def test_json_alphabet_includes_phi(self, capsys):
        obj = run_json(capsys, "graph", "D2", "2", "--format", "json")
        assert obj["alphabet"] == ["1", "2", "0", "2~", "1~", "phi"]
        assert all(set(e) == {"from", "to", "label"} for e in obj["edges"])
        assert obj["weights"]["phi"]["lambda"] == [0, 0, 0]

    def test_csv_edges(self, capsys):
        code, out, _ = run(capsys, "graph", "A1", "1", "--format", "csv")
        assert code == 0
        assert out.splitlines()[0] == "from,to,label"
        assert len(out.splitlines()) == 3

    def test_invalid_rank_names_bound(self, capsys):
        code, _, err = run(capsys, "graph", "B1", "2")
        assert code == 2
        assert "3" in err

    def test_unknown_family(self, capsys):
        code, _, err = run(capsys, "graph", "Z9", "1")
        assert code == 2


class TestCharacter:
    def test_both_methods_agree_two_terms(self, capsys):
        obj = run_json(
            capsys, "character", "A1", "1", "--lambda", "L0", "--k", "1",
            "--method", "both",
        )
        assert obj["equal"] is True
        assert len(obj["characters"]["paths"]) == 2
        assert len(obj["characters"]["operators"]) == 2

    def test_zero_steps_single_term(self, capsys):
        obj = run_json(
            capsys, "character", "A1", "1", "--lambda", "L0", "--k", "0",
            "--method", "paths",
        )
        (term,) = obj["characters"]["paths"]
        assert term["weight"]["lambda"] == [1, 0]
        assert term["weight"]["delta"] == [0, 1]
        assert term["coeff"] == 1

    def test_full_segment_form_at_whole_segments(self, capsys):
        obj = run_json(
            capsys, "character", "A1", "1", "--lambda", "L0", "--k", "3",
            "--method", "both",
        )
        assert obj["full_segment_equal"] is True
        assert obj["full_segment"] == obj["characters"]["paths"]

    def test_full_segment_absent_mid_segment(self, capsys):
        obj = run_json(
            capsys, "character", "B1", "3", "--lambda", "L0", "--k", "2",
            "--method", "paths",
        )
        assert "full_segment" not in obj

    def test_relabeling_recorded_and_anchored(self, capsys):
        obj = run_json(
            capsys, "character", "A1", "2", "--lambda", "L2", "--k", "1",
            "--method", "both",
        )
        assert obj["lambda"] == {
            "requested": "L2",
            "computed": "L0",
            "node_map": [1, 2, 0],
        }
        tops = [
            t for t in obj["characters"]["paths"]
            if t["weight"]["lambda"] == [0, 0, 1]
        ]
        assert tops and tops[0]["weight"]["delta"] == [0, 1]

    @pytest.mark.parametrize(
        "family,rank,node,k",
        [("A1", 2, 1, 3), ("B1", 3, 1, 4), ("D2", 2, 2, 3), ("D1", 4, 1, 3)],
    )
    def test_relabeled_output_matches_direct_operators(
        self, capsys, family, rank, node, k
    ):
        obj = run_json(
            capsys, "character", family, str(rank), "--lambda", f"L{node}",
            "--k", str(k), "--method", "both",
        )
        assert obj["equal"] is True
        ct = perfect_crystal(family, rank).cartan
        chi = FormalCharacter.monomial(ct.fundamental_weight(node))
        for i in obj["word"]:
            chi = demazure_op(ct, i, chi)
        assert chi == FormalCharacter.from_json_obj(obj["characters"]["operators"])

    def test_relabeling_rejects_arrow_reversing_symmetries(self):
        # Cycle reflections preserve the Cartan matrix but turn the
        # letter crystal into its dual; they must not be used.
        from demchar.cli import _cartan_permutations, _crystal_twist

        crystal = perfect_crystal("A1", 2)
        perms = _cartan_permutations(crystal)
        assert len(perms) == 6
        accepted = [p for p in perms if _crystal_twist(crystal, p) is not None]
        assert accepted == [(0, 1, 2), (1, 2, 0), (2, 0, 1)]

    def test_unsupported_weight(self, capsys):
        code, _, err = run(
            capsys, "character", "A2even", "1", "--lambda", "L0", "--k", "1"
        )
        assert code == 2
        assert "schedule" in err

    def test_csv_has_anchored_top_row(self, capsys):
        code, out, _ = run(
            capsys, "character", "B1", "3", "--lambda", "L1", "--k", "2",
            "--format", "csv",
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "weight,delta,coeff"
        assert "0 1 0 0,0,1" in lines

    def test_dot_format_rejected(self, capsys):
        code, _, _ = run(
            capsys, "character", "A1", "1", "--lambda", "L0", "--k", "1",
            "--format", "dot",
        )
        assert code == 2


class TestOnedsum:
    def test_json_contract(self, capsys):
        obj = run_json(
            capsys, "onedsum", "g", "--type", "A1", "--rank", "1",
            "--b", "0", "--j", "2", "--mu", "0,0",
        )
        assert set(obj) == {"kind", "params", "method", "polynomial"}
        assert obj["kind"] == "g"
        assert obj["method"] == "recursive"
        assert obj["params"]["b"] == "0"
        assert obj["polynomial"]["display"] == "q + q^2"
        assert obj["polynomial"]["terms"] == [["1", 1], ["2", 1]]

    def test_enumerate_matches_recursive(self, capsys):
        args = (
            "onedsum", "xbar", "--type", "A2even", "--rank", "1",
            "--b", "0", "--j", "2", "--xi", "L1", "--eta", "L1",
        )
        rec = run_json(capsys, *args, "--method", "recursive")
        enum = run_json(capsys, *args, "--method", "enumerate")
        assert rec["polynomial"] == enum["polynomial"]
        assert enum["method"] == "enumerate"

    def test_signed_superposition_method(self, capsys):
        obj = run_json(
            capsys, "onedsum", "x", "--type", "A1", "--rank", "1",
            "--b", "1", "--j", "2", "--xi", "L0", "--eta", "L0",
            "--method", "weyl",
        )
        assert obj["method"] == "weyl_sum"
        assert obj["polynomial"]["display"] == "q^2"

    def test_guard_exit(self, capsys):
        code, _, err = run(
            capsys, "onedsum", "x", "--type", "A1", "--rank", "1",
            "--b", "1", "--j", "2", "--xi", "L0", "--eta", "L0",
            "--method", "weyl", "--max-weyl-length", "3",
        )
        assert code == 4
        assert "guard" in err

    def test_unrestricted_rejects_superposition(self, capsys):
        code, _, _ = run(
            capsys, "onedsum", "g", "--type", "A1", "--rank", "1",
            "--b", "0", "--j", "1", "--mu", "0,0", "--method", "weyl",
        )
        assert code == 2

    def test_missing_target_weight(self, capsys):
        code, _, err = run(
            capsys, "onedsum", "x", "--type", "A1", "--rank", "1",
            "--b", "1", "--j", "1", "--xi", "L0",
        )
        assert code == 2
        assert "eta" in err

    def test_unknown_letter_lists_alphabet(self, capsys):
        code, _, err = run(
            capsys, "onedsum", "g", "--type", "A1", "--rank", "1",
            "--b", "9", "--j", "1", "--mu", "0,0",
        )
        assert code == 2
        assert "'0'" in err and "'1'" in err

    def test_weight_size_checked(self, capsys):
        code, _, err = run(
            capsys, "onedsum", "g", "--type", "A1", "--rank", "1",
            "--b", "0", "--j", "1", "--mu", "0,0,0",
        )
        assert code == 2
        assert "coordinates" in err

    def test_csv_rows(self, capsys):
        code, out, _ = run(
            capsys, "onedsum", "g", "--type", "A1", "--rank", "1",
            "--b", "0", "--j", "2", "--mu", "0,0", "--format", "csv",
        )
        assert code == 0
        assert out.splitlines() == ["exponent,coefficient", "1,1", "2,1"]


class TestKostka:
    def test_hook_shape_example(self, capsys):
        obj = run_json(
            capsys, "kostka", "--xi", "2,1", "--l", "1", "--j", "3", "--n", "2"
        )
        assert obj["polynomial"]["display"] == "q + q^2"

    def test_rejects_non_partition(self, capsys):
        code, _, err = run(
            capsys, "kostka", "--xi", "1,2", "--l", "1", "--j", "3", "--n", "2"
        )
        assert code == 2
        assert "partition" in err


class TestStringFn:
    def test_partition_series(self, capsys):
        obj = run_json(
            capsys, "stringfn", "--type", "A1", "--rank", "1",
            "--lambda", "L0", "--M", "5",
        )
        assert obj["coefficients"] == [1, 1, 2, 3, 5, 7]

    def test_rank_two_series(self, capsys):
        obj = run_json(
            capsys, "stringfn", "--type", "A1", "--rank", "2",
            "--lambda", "L0", "--M", "3",
        )
        assert obj["coefficients"] == [1, 2, 5, 10]

    def test_window_guard(self, capsys):
        code, _, err = run(
            capsys, "stringfn", "--type", "A1", "--rank", "1",
            "--lambda", "L0", "--M", "5", "--max-window", "4",
        )
        assert code == 4
        assert "guard" in err


class TestVerify:
    def test_formulas_suite_clean(self, capsys):
        code, out, _ = run(
            capsys, "verify", "formulas", "--type", "A1", "--rank", "1",
            "--jmax", "4",
        )
        assert code == 0
        obj = json.loads(out)
        assert obj["mismatches"] == []
        assert obj["cells_checked"] == 30

    def test_formulas_needs_jmax(self, capsys):
        code, _, err = run(capsys, "verify", "formulas", "--type", "A1", "--rank", "1")
        assert code == 2
        assert "jmax" in err

    def test_character_suite_covers_variants(self, capsys):
        code, out, _ = run(
            capsys, "verify", "character", "--type", "B1", "--rank", "3",
            "--kmax", "2",
        )
        assert code == 0
        cases = json.loads(out)["cases"]
        assert [(c["lambda"], c["variant"]) for c in cases] == [
            ("L0", 1),
            ("L3", 1),
            ("L3", 2),
        ]
        assert all(c["mismatches"] == [] for c in cases)

    def test_perfectness_suite(self, capsys):
        code, out, _ = run(
            capsys, "verify", "perfect", "--type", "A2odd", "--rank", "3"
        )
        assert code == 0
        assert json.loads(out)["ok"] is True

    def test_unknown_suite(self, capsys):
        assert main(["verify", "nope", "--type", "A1", "--rank", "1"]) == 2
        capsys.readouterr()


class TestDecompSearch:
    def test_level_one_all_found(self, capsys):
        code, out, _ = run(capsys, "decomp-search", "--type", "D2", "--rank", "2")
        assert code == 0
        results = json.loads(out)["results"]
        assert [e["xi"] for e in results] == [[0, 0, 1], [1, 0, 0]]
        assert all(e["found"] for e in results)
        for entry in results:
            covered = [b for w in entry["witness"] for b in w["string"]]
            assert sorted(covered) == sorted(entry["non_admissible"])

    def test_csv_summary(self, capsys):
        code, out, _ = run(
            capsys, "decomp-search", "--type", "A1", "--rank", "1",
            "--format", "csv",
        )
        assert code == 0
        assert out.splitlines()[0] == "xi,found,strings"


class TestDeterminism:
    def test_repeat_runs_byte_identical(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        argv = ["character", "A1", "2", "--lambda", "L0", "--k", "3"]
        assert main(argv + ["--out", str(a)]) == 0
        assert main(argv + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_thread_count_invisible_in_output(self, tmp_path):
        serial, threaded = tmp_path / "s", tmp_path / "t"
        argv = ["character", "B1", "3", "--lambda", "L0", "--k", "4"]
        assert main(argv + ["--threads", "1", "--out", str(serial)]) == 0
        assert main(argv + ["--threads", "4", "--out", str(threaded)]) == 0
        assert serial.read_bytes() == threaded.read_bytes()

    def test_verifier_threads_invisible_in_output(self, tmp_path):
        serial, threaded = tmp_path / "s", tmp_path / "t"
        argv = ["verify", "formulas", "--type", "A2even", "--rank", "1",
                "--jmax", "2"]
        assert main(argv + ["--threads", "1", "--out", str(serial)]) == 0
        assert main(argv + ["--threads", "3", "--out", str(threaded)]) == 0
        assert serial.read_bytes() == threaded.read_bytes()


@pytest.mark.skipif(shutil.which("demchar") is None, reason="script not on PATH")
def test_console_script():
    proc = subprocess.run(
        ["demchar", "graph", "A1", "1"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("digraph")
