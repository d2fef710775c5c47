import io
import json

import pytest

from finclone.cli import main, parse_problem, serialise_problem, ProblemError

PROBLEM = """\
# ordered two-element carrier
domain 2

op id/1 = 01
op not/1 = 10
op and/2 = 0001
op one/0 = 1

rel leq/2 = {00, 01, 11}
rel top/1 = {1}
rel any1/1 = {0, 1}
rel none/1 = {}
rel point/0 = {eps}

pair leqp = (leq, leq)
pair strict = (any1, top)
"""


@pytest.fixture
def problem_file(tmp_path):
    path = tmp_path / "problem.txt"
    path.write_text(PROBLEM)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestParsing:
    def test_round_trip_is_fixed_point(self):
        p1 = parse_problem(PROBLEM)
        canon = serialise_problem(p1)
        assert serialise_problem(parse_problem(canon)) == canon

    def test_parses_all_declarations(self):
        p = parse_problem(PROBLEM)
        assert set(p.ops) == {"id", "not", "and", "one"}
        assert set(p.rels) == {"leq", "top", "any1", "none", "point"}
        assert set(p.pairs) == {"leqp", "strict"}
        assert p.ops["and"].table == (0, 0, 0, 1)
        assert len(p.rels["none"]) == 0
        assert len(p.rels["point"]) == 1

    def test_missing_domain(self):
        with pytest.raises(ProblemError) as e:
            parse_problem("op f/1 = 01\n")
        assert e.value.line == 1

    def test_duplicate_name(self):
        text = "domain 2\nrel a/1 = {0}\nrel a/1 = {1}\n"
        with pytest.raises(ProblemError) as e:
            parse_problem(text)
        assert e.value.line == 3
        assert "duplicate" in str(e.value)

    def test_tuple_arity_mismatch(self):
        with pytest.raises(ProblemError):
            parse_problem("domain 2\nrel a/2 = {0}\n")

    def test_tuple_value_out_of_range(self):
        with pytest.raises(ProblemError):
            parse_problem("domain 2\nrel a/1 = {2}\n")

    def test_pair_inclusion_violation_reports_position(self):
        text = "domain 2\nrel a/1 = {0}\nrel b/1 = {1}\npair p = (a, b)\n"
        with pytest.raises(ProblemError) as e:
            parse_problem(text)
        assert e.value.line == 4 and e.value.column == 1

    def test_bad_table_length(self):
        with pytest.raises(ProblemError):
            parse_problem("domain 2\nop f/2 = 01\n")

    def test_unknown_keyword(self):
        with pytest.raises(ProblemError):
            parse_problem("domain 2\nfoo x = y\n")

    def test_eps_only_at_arity_zero(self):
        with pytest.raises(ProblemError):
            parse_problem("domain 2\nrel a/1 = {eps}\n")


class TestCommands:
    def test_preserves_true_false(self, capsys, problem_file):
        code, out, _ = run(capsys, "preserves", "--problem", problem_file,
                           "--ops", "id", "--pairs", "leqp")
        assert code == 0 and out.strip() == "true"
        code, out, _ = run(capsys, "preserves", "--problem", problem_file,
                           "--ops", "not", "--pairs", "leqp")
        assert code == 0 and out.strip() == "false"

    def test_polp_monotone_unary(self, capsys, problem_file):
        code, out, _ = run(capsys, "polp", "--problem", problem_file,
                           "--pairs", "leqp", "--arity", "1")
        assert code == 0
        assert out.splitlines() == ["op/1 = 00", "op/1 = 01", "op/1 = 11"]

    def test_invp_not(self, capsys, problem_file):
        code, out, _ = run(capsys, "invp", "--problem", problem_file,
                           "--ops", "not", "--arity", "1")
        assert code == 0
        assert out.splitlines() == ["pair/1 = (rel/1 = {}, rel/1 = {})",
                                    "pair/1 = (rel/1 = {0,1}, rel/1 = {0,1})"]

    def test_pol_inv(self, capsys, problem_file):
        code, out, _ = run(capsys, "pol", "--problem", problem_file,
                           "--rels", "leq", "--arity", "1")
        assert code == 0 and len(out.splitlines()) == 3
        code, out, _ = run(capsys, "inv", "--problem", problem_file,
                           "--ops", "id", "--arity", "1")
        assert code == 0 and len(out.splitlines()) == 4

    def test_generation_commands(self, capsys, problem_file):
        code, out, _ = run(capsys, "gen-semiclone", "--problem", problem_file,
                           "--ops", "and", "--arity", "1")
        assert code == 0 and out.splitlines() == ["op/1 = 01"]
        code, out, _ = run(capsys, "gen-clone", "--problem", problem_file,
                           "--ops", "and", "--arity", "1")
        assert code == 0 and out.splitlines() == ["op/1 = 01"]
        code, out, _ = run(capsys, "gen-semigroup", "--problem", problem_file,
                           "--ops", "not")
        assert code == 0 and out.splitlines() == ["op/1 = 01", "op/1 = 10"]

    def test_sloc(self, capsys, problem_file):
        code, out, _ = run(capsys, "sloc", "--problem", problem_file,
                           "--ops", "id", "--s", "2", "--arity", "1")
        assert code == 0 and out.splitlines() == ["op/1 = 01"]

    def test_sloc_pairs_and_enc(self, capsys, problem_file):
        code, out_sloc, _ = run(capsys, "sloc-pairs", "--problem", problem_file,
                                "--pairs", "strict", "--s", "2", "--arity", "1")
        assert code == 0
        code, out_enc, _ = run(capsys, "enc", "--problem", problem_file,
                               "--pairs", "strict")
        assert code == 0
        # at s = k^m the local closure collapses to the relaxation closure
        assert out_sloc == out_enc

    def test_gamma(self, capsys, problem_file):
        code, out, _ = run(capsys, "gamma", "--problem", problem_file,
                           "--ops", "not", "--ksize", "2",
                           "--seed-tuples", "01")
        assert code == 0
        assert out.splitlines() == ["R:", "  01", "  10", "S:", "  01", "  10",
                                    "steps: 1"]

    def test_superpose(self, capsys, problem_file):
        spec = json.dumps({"mu": 3, "m": 2, "beta": [0, 2],
                           "alphas": [[0, 1], [1, 2]]})
        code, out, _ = run(capsys, "superpose", "--problem", problem_file,
                           "--pairs", "leqp", "leqp", "--spec", spec)
        assert code == 0
        assert out.strip() == "pair/2 = (rel/2 = {00,01,11}, rel/2 = {00,01,11})"

    def test_rpclone(self, capsys, problem_file):
        code, out, _ = run(capsys, "rpclone", "--problem", problem_file,
                           "--pairs", "leqp", "--max-arity", "1")
        assert code == 0
        lines = out.splitlines()
        assert lines[:2] == ["pair/0 = (rel/0 = {eps}, rel/0 = {eps})",
                             "pair/1 = (rel/1 = {0,1}, rel/1 = {0,1})"]
        assert lines[2] == "intermediate-cap: 3"
        assert lines[3] == "slice-changed-at-last-cap: false"

    def test_decide_proj(self, capsys, problem_file):
        code, out, _ = run(capsys, "decide-proj", "--problem", problem_file,
                           "--ops", "and")
        assert code == 0 and out.strip() == "false"

    def test_stdin_problem(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO(PROBLEM))
        code, out, _ = run(capsys, "decide-proj", "--problem", "-", "--ops", "one")
        assert code == 0 and out.strip() == "true"


class TestJsonMode:
    def test_valid_json_and_deterministic(self, capsys, problem_file):
        code, out1, _ = run(capsys, "invp", "--problem", problem_file,
                            "--ops", "and", "--arity", "1", "--json")
        code2, out2, _ = run(capsys, "invp", "--problem", problem_file,
                             "--ops", "and", "--arity", "1", "--json")
        assert code == code2 == 0
        assert out1 == out2
        data = json.loads(out1)
        assert all({"arity", "rho", "rho_prime"} <= set(p) for p in data["pairs"])

    def test_check_json_reports(self, capsys):
        code, out, _ = run(capsys, "check", "decide-proj", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["reports"][0]["verdict"] == "pass"


class TestExitCodes:
    def test_check_all_passes(self, capsys):
        code, out, _ = run(capsys, "check", "all")
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 13
        assert all(": pass (" in line for line in lines)

    def test_unknown_check_is_input_error(self, capsys):
        code, _, err = run(capsys, "check", "nope")
        assert code == 3 and "unknown check" in err

    def test_refusal_exit_code(self, capsys, problem_file):
        code, _, err = run(capsys, "polp", "--problem", problem_file,
                           "--pairs", "leqp", "--arity", "5")
        assert code == 2 and "refused" in err

    def test_check_refusal_exit_code(self, capsys):
        code, out, _ = run(capsys, "check", "galois", "--caps", "10")
        assert code == 2

    def test_parse_error_exit_code(self, capsys, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("domain 2\nrel a/1 = {0}\nrel b/1 = {1}\npair p = (a, b)\n")
        code, _, err = run(capsys, "enc", "--problem", str(bad), "--pairs", "p")
        assert code == 3
        assert "line 4, column 1" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "enc", "--problem", "/no/such/file", "--pairs", "p")
        assert code == 3

    def test_unknown_name_reference(self, capsys, problem_file):
        code, _, err = run(capsys, "polp", "--problem", problem_file,
                           "--pairs", "missing", "--arity", "1")
        assert code == 3 and "unknown pair" in err
