import os

import numpy as np
import pandas as pd
import pytest

from casimir.repositories.output_repository import OutputRepository
from casimir.services.sweep_service import SweepService
from casimir.utils.svg_chart import render_line_chart


@pytest.fixture
def repository():
    return OutputRepository()


class TestSaveCsv:

    def test_content(self, repository, tmp_path):
        frame = pd.DataFrame({'alpha': [0.0, 0.5], 'reduced_pressure': [-0.041123351671205656, 1 / 3]})
        path = tmp_path / "out.csv"
        assert repository.save_csv(frame, path) == 2
        assert path.read_bytes() == b"alpha,reduced_pressure\n0,-0.0411233517\n0.5,0.333333333\n"

    def test_fixed_format(self, repository, tmp_path):
        path = tmp_path / "fig2.csv"
        repository.save_csv(SweepService.fig2_frame(), path, float_format="%.6f")
        lines = path.read_text(encoding="utf-8").splitlines()
        assert len(lines) == 101
        assert lines[1] == "0.000000,-0.041123"
        assert lines[-1].startswith("1.580000,")

    def test_no_temp_files_left(self, repository, tmp_path):
        repository.save_csv(pd.DataFrame({'a': [1.0]}), tmp_path / "a.csv")
        assert os.listdir(tmp_path) == ["a.csv"]

    def test_overwrite_is_byte_identical(self, repository, tmp_path):
        path = tmp_path / "fig2.csv"
        repository.save_csv(SweepService.fig2_frame(), path)
        first = path.read_bytes()
        repository.save_csv(SweepService.fig2_frame(), path)
        assert path.read_bytes() == first

    def test_missing_directory(self, repository, tmp_path):
        with pytest.raises(OSError):
            repository.save_csv(pd.DataFrame({'a': [1.0]}), tmp_path / "missing" / "a.csv")
        assert not (tmp_path / "missing").exists()


class TestSvg:

    def chart(self):
        frame = SweepService.fig2_frame()
        return render_line_chart(frame['alpha'], frame['reduced_pressure'],
                                 xlabel="Parameter α", ylabel="Casimir pressure in units of d⁻⁴")

    def test_deterministic(self):
        assert self.chart() == self.chart()

    def test_document(self, repository, tmp_path):
        svg = self.chart()
        assert svg.lstrip().startswith("<?xml")
        assert "<svg" in svg
        assert "Parameter α" in svg
        repository.save_svg(svg, tmp_path / "fig2.svg")
        assert (tmp_path / "fig2.svg").read_text(encoding="utf-8") == svg

    def test_title_optional(self):
        svg = render_line_chart(np.arange(3.0), np.arange(3.0), xlabel="x", ylabel="y", title="ramp",
                                zero_line=False)
        assert "ramp" in svg
