"""
R-matrix command: braiding spectrum and the certified operator on V (x) V
"""
import logging
from typing import List

from pydantic import BaseModel

from app.commands.job import InstanceInfo, JobConfig, instance_info, render_instance
from app.services import linalg
from app.services.checks import CheckResult
from app.services.ribbon_data import BraidingSpectrum, certified_braiding

logger = logging.getLogger(__name__)


class SpectrumRow(BaseModel):
    weight: List[int]
    dimension: int
    casimir: str
    twist: str
    sign: int
    eigenvalue: str


class RMatrixReport(BaseModel):
    """Spectrum table, braiding matrix and its certification"""
    command: str = "rmatrix"
    instance: InstanceInfo
    dimension: int
    spectrum: List[SpectrumRow]
    matrix: List[List[str]]
    checks: List[CheckResult]


def spectrum_rows(spectrum: BraidingSpectrum) -> List[SpectrumRow]:
    return [
        SpectrumRow(
            weight=list(e.weight.coords),
            dimension=e.dimension,
            casimir=str(e.casimir),
            twist=e.twist.to_text(),
            sign=e.sign,
            eigenvalue=e.eigenvalue.to_text(),
        )
        for e in spectrum.entries
    ]


def cmd_rmatrix(config: JobConfig) -> RMatrixReport:
    """
    Build and certify the braiding on V (x) V

    Args:
        config: Job configuration

    Returns:
        RMatrixReport; certification failures raise before a report exists
    """
    V = config.base_module()
    config.check_cap(V.dimension ** 2, "tensor square")
    braiding = certified_braiding(V, config.cap)
    report = RMatrixReport(
        instance=instance_info(config, V),
        dimension=V.dimension ** 2,
        spectrum=spectrum_rows(braiding.spectrum),
        matrix=linalg.to_text_rows(braiding.matrix, V.root_order),
        checks=list(braiding.checks),
    )
    logger.info(f"Braiding of {V.label}: {len(report.spectrum)} spectral components")
    return report


def render_matrix(rows: List[List[str]]) -> List[str]:
    width = max((len(x) for row in rows for x in row), default=1)
    return ["[ " + "  ".join(x.rjust(width) for x in row) + " ]" for row in rows]


def render_rmatrix(report: RMatrixReport) -> str:
    lines = [render_instance(report.instance), f"braiding on dimension {report.dimension}"]
    lines.append(f"{'weight':<16}{'dim':>6}  {'casimir':<10}{'sign':>5}  eigenvalue")
    for row in report.spectrum:
        weight = "(" + ",".join(str(c) for c in row.weight) + ")"
        lines.append(f"{weight:<16}{row.dimension:>6}  {row.casimir:<10}{row.sign:>+5d}  {row.eigenvalue}")
    lines.append("")
    lines.extend(render_matrix(report.matrix))
    lines.append("")
    for check in report.checks:
        lines.append(f"{check.name:<24}{check.status.value}")
    return "\n".join(lines) + "\n"
