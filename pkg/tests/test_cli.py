import json
import os
import subprocess
import sys

import pytest

from conftest import CORPUS, GOLDENS, VMDSL_PATH, VMTEST_PATH
from vimotest.cli import main


def write_config(tmp_path, **entries):
    path = tmp_path / "genconfig.json"
    path.write_text(json.dumps(entries))
    return str(path)


class TestCheck:
    def test_corpus_is_clean(self, capsys):
        assert main(["check", str(CORPUS)]) == 0
        captured = capsys.readouterr()
        assert captured.out == "" and captured.err == ""

    def test_unknown_widget_reports_e101_with_location(self, tmp_path, capsys):
        bad = tmp_path / "bad.vmtest"
        bad.write_text(
            "testsuite Bad for TaskListViewModel {\n"
            '  scenario "broken" {\n'
            "    given { } when { click Ghost } then { }\n"
            "  }\n"
            "}\n")
        assert main(["check", str(VMDSL_PATH), str(bad)]) == 2
        captured = capsys.readouterr()
        assert f"{bad}:3:22: E101: unknown widget 'Ghost'" in captured.err

    def test_nonexistent_path_is_usage_error(self, capsys):
        assert main(["check", "/no/such/place.vmdsl"]) == 3
        assert "no such file" in capsys.readouterr().err

    def test_suite_without_target_is_usage_error(self, tmp_path, capsys):
        orphan = tmp_path / "orphan.vmtest"
        orphan.write_text("testsuite S for MissingViewModel { }\n")
        assert main(["check", str(orphan)]) == 3
        assert "MissingViewModel" in capsys.readouterr().err

    def test_parse_errors_exit_2(self, tmp_path, capsys):
        broken = tmp_path / "broken.vmdsl"
        broken.write_text("viewmodel { widgets }")
        assert main(["check", str(broken)]) == 2
        assert "E001" in capsys.readouterr().err


class TestRun:
    def run_corpus(self, capsys, *extra):
        code = main(["run", str(CORPUS), *extra])
        captured = capsys.readouterr()
        return code, captured

    def test_reference_logic_passes(self, capsys):
        code, captured = self.run_corpus(capsys, "--setup", "taskmanager")
        assert code == 0
        assert "PASS Load Tasks and Add New" in captured.out

    def test_buggy_logic_fails_naming_the_widget(self, capsys):
        code, captured = self.run_corpus(capsys, "--setup", "taskmanager-buggy")
        assert code == 1
        assert "FAIL Load Tasks and Add New" in captured.out
        assert "Tasks" in captured.out and "selected" in captured.out

    def test_json_report(self, capsys):
        code, captured = self.run_corpus(capsys, "--setup", "taskmanager",
                                         "--format", "json")
        assert code == 0
        report = json.loads(captured.out)
        assert report["totals"] == {"passed": 1, "failed": 0, "errored": 0}
        assert report["suites"][0]["name"] == "TaskListTests"
        (scenario,) = report["suites"][0]["scenarios"]
        assert scenario["status"] == "passed" and scenario["failures"] == []
        assert scenario["durationMillis"] < 1000

    def test_json_report_round_trips(self, capsys):
        _, captured = self.run_corpus(capsys, "--setup", "taskmanager",
                                      "--format", "json")
        report = json.loads(captured.out)
        assert json.loads(json.dumps(report)) == report

    def test_mutant_report_names_widget_and_aspect(self, capsys):
        code, captured = self.run_corpus(capsys, "--setup", "taskmanager-noappend",
                                         "--format", "json")
        assert code == 1
        report = json.loads(captured.out)
        (scenario,) = report["suites"][0]["scenarios"]
        (failure,) = scenario["failures"]
        assert failure["widget"] == "Tasks" and failure["aspect"] == "rowCount"

    def test_unknown_setup_id(self, capsys):
        code, captured = self.run_corpus(capsys, "--setup", "warehouse")
        assert code == 3
        assert "unknown setup id" in captured.err

    def test_unknown_suite_name(self, capsys):
        code, captured = self.run_corpus(capsys, "--setup", "taskmanager",
                                         "--suite", "Nope")
        assert code == 3

    def test_named_suite_runs(self, capsys):
        code, captured = self.run_corpus(capsys, "--setup", "taskmanager",
                                         "--suite", "TaskListTests")
        assert code == 0

    def test_parallel_flag(self, capsys):
        code, captured = self.run_corpus(capsys, "--setup", "taskmanager",
                                         "--parallel", "4")
        assert code == 0
        assert "PASS" in captured.out


class TestGen:
    def test_java_generation_matches_goldens(self, tmp_path, capsys):
        config = write_config(tmp_path, target="java")
        out = tmp_path / "out"
        code = main(["gen", str(CORPUS), "--config", config, "--out", str(out)])
        captured = capsys.readouterr()
        assert code == 0, captured.err
        written = sorted(p.name for p in out.iterdir())
        assert written == ["TaskListTestsTest.java", "TaskListViewModel.java"]
        for name in written:
            assert (out / name).read_text() == \
                (GOLDENS / "java" / name).read_text()
        assert str(out / "TaskListViewModel.java") in captured.out

    def test_cpp_generation_includes_assert_header(self, tmp_path, capsys):
        config = write_config(tmp_path, target="cpp")
        out = tmp_path / "out"
        assert main(["gen", str(CORPUS), "--config", config,
                     "--out", str(out)]) == 0
        written = sorted(p.name for p in out.iterdir())
        assert written == ["task_list_tests_test.cpp", "task_list_view_model.hpp",
                           "vimotest_assert.hpp"]
        for name in written:
            assert (out / name).read_text() == \
                (GOLDENS / "cpp" / name).read_text()

    def test_refuses_overwrite_without_force(self, tmp_path, capsys):
        config = write_config(tmp_path, target="java")
        out = tmp_path / "out"
        assert main(["gen", str(CORPUS), "--config", config,
                     "--out", str(out)]) == 0
        capsys.readouterr()
        assert main(["gen", str(CORPUS), "--config", config,
                     "--out", str(out)]) == 3
        assert "refusing to overwrite" in capsys.readouterr().err
        assert main(["gen", str(CORPUS), "--config", config, "--out", str(out),
                     "--force"]) == 0

    def test_invalid_command_home_config_exits_3(self, tmp_path, capsys):
        config = write_config(tmp_path, target="java", commandsOnViewModel=True,
                              generateViewController=True)
        code = main(["gen", str(CORPUS), "--config", config,
                     "--out", str(tmp_path / "out")])
        assert code == 3
        assert "exactly one" in capsys.readouterr().err

    def test_unknown_config_key_exits_3(self, tmp_path, capsys):
        config = write_config(tmp_path, target="java", banner=True)
        assert main(["gen", str(CORPUS), "--config", config,
                     "--out", str(tmp_path / "out")]) == 3

    def test_analyzer_errors_exit_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.vmtest"
        bad.write_text(
            "testsuite Bad for TaskListViewModel {\n"
            '  scenario "broken" { given { use ghost } when { } then { } }\n'
            "}\n")
        config = write_config(tmp_path, target="java")
        code = main(["gen", str(VMDSL_PATH), str(bad), "--config", config,
                     "--out", str(tmp_path / "out")])
        assert code == 2
        assert "E107" in capsys.readouterr().err

    def test_description_only_generation(self, tmp_path, capsys):
        config = write_config(tmp_path, target="java")
        out = tmp_path / "out"
        assert main(["gen", str(VMDSL_PATH), "--config", config,
                     "--out", str(out)]) == 0
        assert [p.name for p in out.iterdir()] == ["TaskListViewModel.java"]


class TestEntryPoint:
    def _run(self, *args, env_extra=None):
        env = dict(os.environ, **(env_extra or {}))
        return subprocess.run(
            [sys.executable, "-m", "vimotest", *args],
            capture_output=True, text=True, env=env)

    def test_module_invocation(self):
        result = self._run("check", str(CORPUS))
        assert result.returncode == 0
        assert result.stdout == "" and result.stderr == ""

    def test_color_disabled_by_env(self):
        result = self._run("run", str(CORPUS), "--setup", "taskmanager",
                           env_extra={"VIMOTEST_COLOR": "0"})
        assert result.returncode == 0
        assert "\x1b[" not in result.stdout

    def test_version_flag(self):
        result = self._run("--version")
        assert result.returncode == 0
        assert result.stdout.strip() == "0.1.0"
