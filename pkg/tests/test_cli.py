"""
Tests for the command line and the job worker: exit codes, report formats
and input resolution.
"""
import json
import logging
import time

import pytest

from hopfkit.cli import main, parse_args, render_text
from hopfkit.errors import InconsistencyError, InputError
from hopfkit.models import CheckStatus, Command, JobSpec
from hopfkit.services import fusion_service
from hopfkit.services.bialgebra_service import bialgebra_to_document
from hopfkit.services.corpus_service import export_corpus, list_corpus, load_input, parse_document
from hopfkit.workers.job_worker import run


def _machine(capsys, argv):
    code = main(argv + ["--format", "machine"])
    return code, json.loads(capsys.readouterr().out)


class TestExitCodes:
    """0 all pass, 1 some check fails, 2 bad input, 3 inconsistency."""

    def test_group_algebra_is_hopf(self, corpus_dir, capsys):
        assert main(["hopf", "group_Z2_Q"]) == 0
        assert "verdict: pass (exit 0)" in capsys.readouterr().out

    def test_idempotent_monoid_is_not_hopf(self, corpus_dir, capsys):
        assert main(["hopf", "monoid_idem_Q"]) == 1
        out = capsys.readouterr().out
        assert "gamma_left kernel vector" in out

    def test_unknown_input(self, corpus_dir, capsys):
        assert main(["hopf", "no_such_input"]) == 2
        assert "InputError" in capsys.readouterr().out

    def test_wrong_document_kind(self, corpus_dir):
        assert main(["antipode", "powerset"]) == 2

    def test_non_positive_bound(self, corpus_dir, capsys):
        assert main(["fusion", "group_Z2_Q", "--dim-bound", "0"]) == 2
        assert "dim_bound" in capsys.readouterr().err


    @pytest.mark.parametrize("command,input_name,cap", [
        ("fusion", "group_Z2_Q", "FUSION_DIM_BOUND=2"),
        ("entwine", "group_S3_Q", "ENTWINING_DIM_BOUND=3"),
        ("hopfmod", "monoid_idem_Q", "MODULE_DIM_BOUND=3"),
    ])
    def test_bound_above_cap(self, corpus_dir, capsys, command, input_name, cap):
        assert main([command, input_name, "--dim-bound", "4"]) == 2
        assert cap in capsys.readouterr().out

    def test_skeleton_above_cap(self, corpus_dir, capsys):
        assert main(["finset", "powerset", "--max", "5"]) == 2
        assert "MAX_SKELETON=4" in capsys.readouterr().out
    def test_inconsistency(self, corpus_dir, monkeypatch):
        def disagree(b):
            raise InconsistencyError("criteria disagree")

        monkeypatch.setattr(fusion_service, "hopf_cross_check", disagree)
        report = run(JobSpec(command=Command.HOPF, input="group_Z2_Q"))
        assert report.exit_code == 3
        assert report.error == "InconsistencyError: criteria disagree"

    @pytest.mark.parametrize("name,expected", [("nonempty_powerset", 0), ("powerset", 1), ("maybe", 1)])
    def test_monad_galois(self, corpus_dir, name, expected):
        assert main(["galois", name]) == expected


class TestReports:
    """Text and machine renderings."""

    def test_machine_report_is_deterministic(self, corpus_dir, capsys):
        first = _machine(capsys, ["hopf", "group_S3_Q"])
        second = _machine(capsys, ["hopf", "group_S3_Q"])
        assert first == second
        code, report = first
        assert code == 0 and report["exit_code"] == 0
        names = [c["name"] for c in report["checks"]]
        assert names[:5] == ["antipode_exists", "gamma_left_iso", "gamma_right_iso",
                             "fusion_left_iso", "fusion_right_iso"]
        assert report["timing_seconds"] is None

    @pytest.mark.parametrize("argv", [
        ["validate", "group_Z2_Q"],
        ["validate", "maybe"],
        ["validate", "presheaf_chain2"],
        ["hopf", "trivial"],
        ["hopf", "monoid_idem_Q"],
        ["antipode", "group_Z3_F3"],
        ["fusion", "group_Z2_F2", "--dim-bound", "1"],
        ["entwine", "group_Z2_Q", "--dim-bound", "1"],
        ["hopfmod", "monoid_idem_Q", "--dim-bound", "1"],
        ["galois", "group_Z2_Q"],
        ["galois", "nonempty_powerset"],
        ["galois", "presheaf_discrete2"],
        ["finset", "powerset"],
        ["finset", "maybe"],
        ["finset", "presheaf_chain2"],
    ], ids=" ".join)
    def test_machine_reports_are_byte_identical(self, corpus_dir, capsys, argv):
        outputs = []
        for _ in range(2):
            main(argv + ["--format", "machine"])
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]
        assert json.loads(outputs[0])["checks"]

    def test_corpus_listing_is_stable(self, corpus_dir, capsys):
        main(["corpus"])
        first = capsys.readouterr().out
        main(["corpus"])
        assert capsys.readouterr().out == first

    def test_antipode_matrix_is_reported(self, corpus_dir, capsys):
        code, report = _machine(capsys, ["antipode", "group_Z3_F3"])
        assert code == 0
        check = report["checks"][0]
        assert check["field"] == "Fp:3"
        assert check["matrix"] == [[1, 0, 0], [0, 0, 1], [0, 1, 0]]

    def test_field_override(self, corpus_dir, capsys):
        code, report = _machine(capsys, ["hopf", "group_Z3_Q", "--field", "Fp:2"])
        assert code == 0
        assert report["job"]["field"] == "Fp:2"

    def test_timing_is_opt_in(self, corpus_dir):
        report = run(JobSpec(command=Command.HOPF, input="trivial", timing=True))
        assert report.timing_seconds is not None

    def test_text_table(self, corpus_dir):
        report = run(JobSpec(command=Command.HOPF, input="monoid_idem_Q"))
        text = render_text(report)
        assert text.splitlines()[0] == "hopfkit 1.0.0: hopf monoid_idem_Q"
        assert text.endswith("verdict: fail (exit 1)")

    def test_parser_defaults(self):
        args = parse_args(["fusion", "trivial"])
        assert args.command == "fusion"
        assert args.dim_bound is None and args.max_size is None


class TestCommands:
    """Each command on a bundled input."""

    def test_validate_bialgebra_with_characters(self, corpus_dir):
        report = run(JobSpec(command=Command.VALIDATE, input="group_Z2_Q"))
        assert report.passed
        assert any(c.name == "comonoid.grouplike" for c in report.checks)

    def test_validate_monad(self, corpus_dir):
        report = run(JobSpec(command=Command.VALIDATE, input="maybe"))
        assert report.passed

    def test_entwine(self, corpus_dir):
        report = run(JobSpec(command=Command.ENTWINE, input="group_Z2_Q", dim_bound=1))
        names = {c.name for c in report.checks}
        assert {"entwining[I].pentagon[1]", "entwining[C2].pentagon[1]", "entwining[set2].unit[1]"} <= names
        assert report.passed

    def test_fusion_on_monoid_reports_singular_operators(self, corpus_dir):
        report = run(JobSpec(command=Command.FUSION, input="monoid_idem_Q", dim_bound=1))
        statuses = {c.name: c.status for c in report.checks}
        assert statuses["H_l[1,1]"] == CheckStatus.FAIL
        assert statuses["H_l_reconstructed[1,1]"] == CheckStatus.PASS
        assert report.exit_code == 1

    def test_galois_two_point_comonoid(self, corpus_dir):
        report = run(JobSpec(command=Command.GALOIS, input="group_Z2_Q"))
        values = {c.name: c.value for c in report.checks}
        assert values["unit_galois[I]"] is True
        assert values["g_galois[C2]"] is False

    def test_hopfmod_finds_monoid_witness(self, corpus_dir):
        report = run(JobSpec(command=Command.HOPFMOD, input="monoid_idem_Q", dim_bound=1))
        failing = [c for c in report.checks if c.status == CheckStatus.FAIL]
        assert [c.name for c in failing] == ["fundamental_theorem"]
        assert "coinvariants 0" in failing[0].witness

    def test_finset_presheaf(self, corpus_dir):
        report = run(JobSpec(command=Command.FINSET, input="presheaf_discrete2"))
        values = {c.name: c.value for c in report.checks}
        assert values["inventory.size"] == 4
        assert values["T_u.idempotent"] is True
        assert report.exit_code == 0

    def test_finset_powerset(self, corpus_dir):
        assert main(["finset", "powerset", "--max", "3"]) == 1
        report = run(JobSpec(command=Command.FINSET, input="powerset", max_size=3))
        values = {c.name: c.value for c in report.checks}
        assert values["preserves_terminal"] is False
        assert values["preserves_terminal[T^1]"] is True
        assert values["unit_galois[powerset]"] is False
        assert values["T^1 = nonempty subsets"] is True


    def test_semilattice_checks_pass_by_name(self, corpus_dir):
        report = run(JobSpec(command=Command.FINSET, input="powerset"))
        statuses = {c.name: c.status for c in report.checks}
        for prefix in ("semilattice[", "coreflection[", "omega_monotone_injective["):
            named = [name for name in statuses if name.startswith(prefix)]
            assert len(named) == 9, prefix
            assert all(statuses[name] == CheckStatus.PASS for name in named), prefix
        values = {c.name: c.value for c in report.checks}
        assert values["omega_natural_iso"] is False
        assert values["omega_iso[1:0]"] is True

    def test_finset_powerset_at_four(self, corpus_dir, capsys):
        code, machine = _machine(capsys, ["finset", "powerset", "--max", "4"])
        assert code == 1
        assert machine["job"]["max_size"] == 4
        statuses = {c["name"]: c["status"] for c in machine["checks"]}
        assert statuses["monad.left_unit[4]"] == "pass"
        assert statuses["opmonoidal.chi[4,1]"] == "pass"
        values = {c["name"]: c["value"] for c in machine["checks"]}
        assert "assoc[4]" in values["monad.skipped"]

    def test_document_size_is_the_default(self, corpus_dir):
        report = run(JobSpec(command=Command.GALOIS, input="maybe"))
        assert report.job.max_size == 3
        assert report.job.dim_bound is None

    def test_bounds_are_echoed_as_used(self, corpus_dir):
        assert run(JobSpec(command=Command.FUSION, input="trivial")).job.dim_bound == 2
        hopf = run(JobSpec(command=Command.HOPF, input="trivial", dim_bound=2, max_size=4))
        assert (hopf.job.dim_bound, hopf.job.max_size) == (None, None)
        presheaf = run(JobSpec(command=Command.FINSET, input="presheaf_discrete2", max_size=4))
        assert presheaf.job.max_size is None

    def test_entwine_symmetric_group_to_dimension_three(self, corpus_dir):
        started = time.perf_counter()
        report = run(JobSpec(command=Command.ENTWINE, input="group_S3_Q"))
        assert time.perf_counter() - started < 30
        assert report.job.dim_bound == 3
        assert report.exit_code == 0
        names = {c.name for c in report.checks}
        assert {"entwining[I].pentagon[3]", "entwining[set2].multiplication[3]"} <= names

    def test_hopfmod_runs_to_dimension_three(self, corpus_dir, caplog):
        caplog.set_level(logging.DEBUG)
        report = run(JobSpec(command=Command.HOPFMOD, input="group_S3_Q"))
        assert report.job.dim_bound == 3
        assert report.exit_code == 0
        assert "fundamental_iso[K(3)]" in {c.name for c in report.checks}
        assert not [r for r in caplog.records if r.levelno >= logging.WARNING]

    def test_terminal_route_reads_g_galois_off(self, corpus_dir):
        report = run(JobSpec(command=Command.GALOIS, input="nonempty_powerset"))
        check = next(c for c in report.checks if c.name == "g_galois[nonempty_powerset]")
        assert check.status == CheckStatus.INFO and check.value is True
        presheaf = run(JobSpec(command=Command.GALOIS, input="presheaf_chain2"))
        assert not [c for c in presheaf.checks if c.name.startswith("g_galois")]
        assert presheaf.passed

class TestCorpus:
    """Bundled inputs and input resolution."""

    def test_listing(self, corpus_dir, capsys):
        assert main(["corpus"]) == 0
        names = capsys.readouterr().out.split()
        assert names == sorted(names)
        assert {"group_S3_F3", "monoid_chain3_F2", "powerset", "presheaf_chain2", "trivial"} <= set(names)

    def test_corpus_file_shadows_builtin(self, corpus_dir, idem):
        corpus_dir.mkdir()
        (corpus_dir / "group_Z2_Q.json").write_text(bialgebra_to_document(idem).model_dump_json())
        assert run(JobSpec(command=Command.HOPF, input="group_Z2_Q")).exit_code == 1

    def test_export(self, corpus_dir, tmp_path):
        written = export_corpus(tmp_path / "out")
        assert len(written) == len(list_corpus())
        doc = parse_document((tmp_path / "out" / "powerset.json").read_text(), "powerset.json")
        assert doc.kind == "monad"

    def test_input_file(self, corpus_dir, tmp_path, z2):
        path = tmp_path / "z2.json"
        path.write_text(bialgebra_to_document(z2).model_dump_json(indent=2))
        assert load_input(str(path)).dim == 2
        assert main(["hopf", str(path)]) == 0

    def test_syntax_error_names_the_line(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{\n  "kind": "monad",\n  "monad": powerset\n}')
        with pytest.raises(InputError, match="line 3"):
            load_input(str(path))

    def test_schema_error_names_the_field(self):
        with pytest.raises(InputError, match="field max_size"):
            parse_document('{"kind": "monad", "monad": "powerset", "max_size": 0}')
