import json
import math

import pytest

from casimir.casimir import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def record(out):
    """將 '  key: value' 行轉為 dict"""
    pairs = (line.strip().split(": ", 1) for line in out.splitlines() if ": " in line)
    return {k: v for k, v in pairs}


class TestPressure:

    def test_text(self, capsys):
        code, out, _ = run(capsys, 'pressure', '--cutoff', 'exp', '--x', '50')
        values = record(out)
        assert code == 0
        assert values['method'] == 'direct'
        assert float(values['reduced_pressure']) == pytest.approx(-math.pi ** 2 / 240 + math.pi ** 4 / (1008 * 2500),
                                                                  abs=2e-8)

    def test_csv(self, capsys):
        code, out, _ = run(capsys, 'pressure', '--cutoff', 'none', '--alpha', '1', '--format', 'csv')
        header, row = out.splitlines()
        assert code == 0
        assert header == "cutoff,method,x,kappa,alpha,nu,reduced_pressure,abs_error,deviation"
        assert row.startswith("none,closed,50,")
        assert float(row.split(",")[6]) > 0

    def test_invalid_x(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(['pressure', '--x', '-1'])
        assert excinfo.value.code == 2
        assert "x must be" in capsys.readouterr().err

    def test_unsupported_method(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(['pressure', '--cutoff', 'exp4', '--method', 'abel-plana'])
        assert excinfo.value.code == 2

    def test_unknown_cutoff(self):
        with pytest.raises(SystemExit) as excinfo:
            main(['pressure', '--cutoff', 'gauss'])
        assert excinfo.value.code == 2

    def test_last_ir_option_wins(self, capsys):
        code, out, err = run(capsys, 'pressure', '--cutoff', 'none', '--kappa', '0.1', '--alpha', '1.0')
        assert code == 0
        assert float(record(out)['alpha']) == pytest.approx(1.0)
        assert "--kappa and --alpha" in err

    def test_integer_convention(self, capsys):
        code, out, _ = run(capsys, 'pressure', '--kappa', '0.5', '--convention', 'integer')
        assert code == 0
        assert record(out)['method'] == 'direct'


    def test_tanh_with_kappa(self, capsys):
        code, out, _ = run(capsys, 'pressure', '--cutoff', 'tanh', '--x', '10', '--kappa', '0.2')
        values = record(out)
        assert code == 0
        assert values['method'] == 'direct'
        assert math.isfinite(float(values['reduced_pressure']))


class TestFig2:

    def test_files(self, capsys, tmp_path):
        code, out, _ = run(capsys, 'fig2', '--svg', 'fig2.svg')
        assert code == 0
        assert "100 rows written to fig2.csv" in out
        lines = (tmp_path / "fig2.csv").read_text(encoding="utf-8").splitlines()
        assert lines[0] == "alpha,reduced_pressure"
        assert len(lines) == 101
        assert lines[1] == "0.000000,-0.041123"
        assert lines[-1].startswith("1.580000,")
        assert "Parameter α" in (tmp_path / "fig2.svg").read_text(encoding="utf-8")

    def test_unwritable_output(self, capsys):
        code, _, err = run(capsys, 'fig2', '--out', 'missing/fig2.csv')
        assert code == 1
        assert "cannot write output" in err


class TestSweep:

    def test_writes_rows(self, capsys, tmp_path):
        code, out, _ = run(capsys, 'sweep', '--variable', 'x', '--start', '10', '--stop', '40', '--points', '4',
                           '--out', 'sweep.csv')
        assert code == 0
        lines = (tmp_path / "sweep.csv").read_text(encoding="utf-8").splitlines()
        assert lines[0] == "variable,value,reduced_pressure,abs_error,error"
        assert len(lines) == 5
        assert lines[1].startswith("x,10,")

    def test_failed_points(self, capsys, tmp_path):
        code, _, err = run(capsys, 'sweep', '--variable', 'x', '--start', '10', '--stop', '20', '--points', '3',
                           '--kappa', '0.2', '--method', 'em', '--out', 'sweep.csv')
        assert code == 1
        assert "3 of 3 points failed" in err
        lines = (tmp_path / "sweep.csv").read_text(encoding="utf-8").splitlines()
        assert all(line.endswith(",ParameterError") for line in lines[1:])

    def test_tanh_with_kappa(self, capsys, tmp_path):
        code, _, _ = run(capsys, 'sweep', '--variable', 'x', '--start', '6', '--stop', '12', '--points', '3',
                         '--cutoff', 'tanh', '--kappa', '0.2', '--out', 'sweep.csv')
        assert code == 0
        lines = (tmp_path / "sweep.csv").read_text(encoding="utf-8").splitlines()
        assert len(lines) == 4
        assert all(line.endswith(",") for line in lines[1:])

    def test_bad_grid(self):
        with pytest.raises(SystemExit) as excinfo:
            main(['sweep', '--variable', 'x', '--start', '10', '--stop', '5', '--out', 'sweep.csv'])
        assert excinfo.value.code == 2


class TestSmallCommands:

    def test_verify_roots(self, capsys):
        code, out, _ = run(capsys, 'verify', 'roots')
        assert code == 0
        assert "PASS" in out
        assert "FAIL" not in out

    def test_bose(self, capsys):
        code, out, _ = run(capsys, 'bose', '3')
        assert code == 0
        assert float(record(out)['quadrature']) == pytest.approx(1 / 240, rel=1e-9)

    def test_bose_order_out_of_range(self):
        with pytest.raises(SystemExit) as excinfo:
            main(['bose', '12'])
        assert excinfo.value.code == 2

    def test_window(self, capsys):
        code, out, _ = run(capsys, 'window')
        values = record(out)
        assert code == 0
        assert round(float(values['alpha_low']), 3) == 0.842
        assert round(float(values['alpha_high']), 3) == 1.228

    @pytest.mark.parametrize("sign, series", [('+', 0.68), ('-', 1.52)])
    def test_shift(self, capsys, sign, series):
        code, out, _ = run(capsys, 'shift', '--alpha', '1', '--x', '10', '--sign', sign)
        assert code == 0
        assert float(record(out)['series factor']) == pytest.approx(series)

    def test_help(self, capsys):
        code, out, _ = run(capsys, 'help')
        assert code == 0
        assert "Casimir Pressure Laboratory" in out
        assert run(capsys)[0] == 0


class TestConfig:

    def test_stored_defaults_apply(self, capsys):
        code, out, _ = run(capsys, 'config', '--x', '20', '--method', 'em')
        assert code == 0
        assert "defaults updated" in out

        _, out, _ = run(capsys, 'pressure')
        values = record(out)
        assert values['x'] == '20'
        assert values['method'] == 'em'

        # tanh 不支援 em，改用其自然方法
        _, out, _ = run(capsys, 'pressure', '--cutoff', 'tanh')
        assert record(out)['method'] == 'abel-plana'

    def test_show_and_clear(self, capsys):
        run(capsys, 'config', '--cutoff', 'exp4')
        _, out, _ = run(capsys, 'config', '--show')
        assert record(out)['cutoff'] == 'exp4'
        code, out, _ = run(capsys, 'config', '--clear')
        assert code == 0
        assert "defaults cleared" in out
        _, out, _ = run(capsys, 'config')
        assert record(out)['cutoff'] == 'exp'

    def test_invalid_value(self):
        with pytest.raises(SystemExit) as excinfo:
            main(['config', '--x', '-1'])
        assert excinfo.value.code == 2

    def test_unusable_stored_values(self, capsys, caplog, tmp_path):
        (tmp_path / ".casimir").mkdir()
        (tmp_path / ".casimir" / "config.json").write_text(
            json.dumps({"default_x": "fifty", "default_threads": "many", "default_cutoff": "gauss"}),
            encoding="utf-8",
        )
        code, out, _ = run(capsys, 'pressure')
        assert code == 0
        assert record(out)['x'] == '50'
        assert "ignoring stored default_x='fifty'" in caplog.text

        code, out, _ = run(capsys, 'config', '--clear')
        assert code == 0
        assert "defaults cleared" in out
        caplog.clear()
        assert run(capsys, 'window')[0] == 0
        assert "ignoring stored" not in caplog.text
