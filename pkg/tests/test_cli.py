from kirchhoff.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCompute:
    def test_family_kf(self, capsys):
        code, out, _ = run(capsys, "compute", "--family", "path:4", "--kf")
        assert code == 0
        assert "kf = 10" in out

    def test_graph6_trees(self, capsys):
        code, out, _ = run(capsys, "compute", "--graph6", "C~", "--trees")
        assert code == 0 and "trees = 16" in out

    def test_dumbbell_rendering(self, capsys):
        code, out, _ = run(capsys, "compute", "--family", "dumbbell:3,3,5", "--kf")
        assert code == 0 and "kf = 137.666666667" in out  # 413/3 at 12 significant digits

    def test_edge_list_input(self, capsys, tmp_path):
        path = tmp_path / "g.txt"
        path.write_text("4 3\n0 1\n1 2\n2 3\n")
        code, out, _ = run(capsys, "compute", "--edgelist", str(path), "--wiener")
        assert code == 0 and "wiener = 10" in out

    def test_disconnected_reports_components(self, capsys):
        # 2K2 as graph6: n=4, only edges (0,1) and (2,3)
        code, _, err = run(capsys, "compute", "--graph6", "C`", "--kf")
        assert code == 2 and "2 components" in err

    def test_two_sources_rejected(self, capsys):
        code, _, err = run(capsys, "compute", "--graph6", "C~", "--family", "path:4", "--kf")
        assert code == 2 and "exactly one" in err

    def test_parse_error_location(self, capsys):
        code, _, err = run(capsys, "compute", "--graph6", "C\x01", "--kf")
        assert code == 2 and "byte offset 1" in err


class TestVerifyCommand:
    def test_pass_exit_zero(self, capsys, tmp_path):
        out_path = tmp_path / "report.txt"
        code, out, _ = run(
            capsys, "verify", "--theorem", "lower-bound", "--n", "6", "--p", "2",
            "--out", str(out_path),
        )
        assert code == 0
        assert "status: PASS" in out
        assert out_path.read_text(encoding="utf-8") == out

    def test_fail_exit_one(self, capsys):
        code, out, _ = run(capsys, "verify", "--theorem", "max-ordering", "--n", "28")
        assert code == 1 and "status: FAIL" in out

    def test_budget_exit_two(self, capsys):
        code, _, err = run(
            capsys, "verify", "--theorem", "lower-bound", "--n", "40", "--p", "20"
        )
        assert code == 2 and "budget" in err

    def test_param_error_exit_two(self, capsys):
        code, _, err = run(capsys, "verify", "--theorem", "lower-bound", "--n", "6")
        assert code == 2 and "missing parameter" in err

    def test_determinism_except_footer(self, capsys):
        code1, out1, _ = run(capsys, "verify", "--theorem", "upper-bound", "--n", "6", "--p", "2")
        code2, out2, _ = run(capsys, "verify", "--theorem", "upper-bound", "--n", "6", "--p", "2")
        assert code1 == code2 == 0
        assert out1.splitlines()[:-1] == out2.splitlines()[:-1]
        assert out1.splitlines()[-1].startswith("elapsed_seconds:")


class TestSearchCommand:
    def test_deleted_edges_min(self, capsys):
        code, out, _ = run(capsys, "search", "--deleted-edges", "6,2", "--min", "--top", "3")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "rank,graph6,kf,count"
        assert lines[1].startswith("1,") and lines[1].endswith(",6,45")

    def test_trees_max(self, capsys):
        code, out, _ = run(capsys, "search", "--trees", "8", "--max", "--top", "2")
        assert code == 0
        first, second = out.splitlines()[1:3]
        assert first.split(",")[2] == "84"  # the 8-vertex path
        assert second.split(",")[2] == "79"

    def test_budget_refusal(self, capsys):
        code, _, err = run(capsys, "search", "--trees", "12", "--max")
        assert code == 2 and "budget" in err

    def test_objective_required(self, capsys):
        code, _, err = run(capsys, "search", "--trees", "6")
        assert code == 2 and "--min" in err


class TestTableCommand:
    def test_path_cycle_range(self, capsys):
        code, out, _ = run(capsys, "table", "--families", "path,cycle", "--n", "5..7")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "family,n,closed_form,numeric_kf,abs_diff"
        assert len(lines) == 7
        assert lines[1] == "path,5,20,20,0"

    def test_q3_exact_rendering(self, capsys):
        code, out, _ = run(capsys, "table", "--families", "q3", "--n", "28")
        assert code == 0
        row = out.splitlines()[1].split(",")
        assert row[2] == "10756/3"  # (28^3 - 17*28 + 36)/6 reduced

    def test_invalid_rows_skipped_with_warning(self, capsys):
        code, out, err = run(capsys, "table", "--families", "r3", "--n", "6..8")
        assert code == 0
        assert len(out.splitlines()) == 3  # header + n=7, n=8
        assert "skipping r3 at n=6" in err

    def test_unknown_family(self, capsys):
        code, _, err = run(capsys, "table", "--families", "nope", "--n", "5")
        assert code == 2 and "unknown table families" in err


class TestDeterminismAcrossJobs:
    def test_search_jobs(self, capsys):
        code1, out1, _ = run(capsys, "search", "--connected", "6,6", "--max", "--top", "2", "--jobs", "1")
        code2, out2, _ = run(capsys, "search", "--connected", "6,6", "--max", "--top", "2", "--jobs", "2")
        assert code1 == code2 == 0 and out1 == out2
