"""
Braid command: evaluate a braid word in the certified representation on V^{(x)m}
"""
import logging
from typing import List

from pydantic import BaseModel

from app.commands.job import InstanceInfo, JobConfig, instance_info, render_instance
from app.commands.rmatrix import render_matrix
from app.services import linalg
from app.services.braidrep import BraidWord, build_representation, evaluate
from app.services.checks import CheckResult
from app.services.ribbon_data import certified_braiding

logger = logging.getLogger(__name__)


class BraidReport(BaseModel):
    """Matrix of one braid word"""
    command: str = "braid"
    instance: InstanceInfo
    strands: int
    dimension: int
    matrix: List[List[str]]
    checks: List[CheckResult]


def cmd_braid(config: JobConfig) -> BraidReport:
    """
    Evaluate config.word on config.strands strands

    Args:
        config: Job configuration; the cap bounds dim V^m

    Returns:
        BraidReport with the matrix in canonical text
    """
    word = BraidWord.parse(config.word, config.strands)
    V = config.base_module()
    config.check_cap(V.dimension ** config.strands, "braid representation")
    braiding = certified_braiding(V, config.cap)
    rep = build_representation(
        braiding.matrix, config.strands, V.dimension, V.root_order, braiding.inverse
    )
    matrix = evaluate(word, rep)
    logger.info(f"Evaluated braid word [{word}] on {config.strands} strands of {V.label}")
    return BraidReport(
        instance=instance_info(config, V),
        strands=config.strands,
        dimension=rep.dimension,
        matrix=linalg.to_text_rows(matrix, V.root_order),
        checks=list(braiding.checks) + list(rep.checks),
    )


def render_braid(report: BraidReport) -> str:
    lines = [
        render_instance(report.instance),
        f"{report.strands} strands, dimension {report.dimension}",
        "",
    ]
    lines.extend(render_matrix(report.matrix))
    return "\n".join(lines) + "\n"
