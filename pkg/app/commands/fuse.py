"""
Fuse command: decomposition of V(lambda) (x) V(lambda)
"""
import logging
from typing import List

from pydantic import BaseModel

from app.commands.job import InstanceInfo, JobConfig, instance_info, render_instance
from app.services.cartan_core import check_dominant, weyl_dimension
from app.services.errors import ConsistencyError
from app.services.fusion import (
    FusionDecomposition,
    decompose_general,
    sl2_tensor_square_decomposition,
)

logger = logging.getLogger(__name__)


class SummandReport(BaseModel):
    weight: List[int]
    multiplicity: int
    dimension: int
    casimir: str


class FuseReport(BaseModel):
    """Fusion decomposition of a tensor square"""
    command: str = "fuse"
    instance: InstanceInfo
    method: str
    summands: List[SummandReport]
    multiplicity_free: bool
    total_dimension: int


def _summary(decomposition: FusionDecomposition) -> List[tuple]:
    return [(s.weight, s.multiplicity) for s in decomposition.summands]


def cmd_fuse(config: JobConfig) -> FuseReport:
    """
    Decompose the tensor square of V(lambda)

    For A1 the Clebsch-Gordan rule is used and cross-checked against the character
    computation; every other type goes through characters only.
    """
    cd = config.cartan()
    lam = check_dominant(config.highest_weight(), cd, "fuse")
    dim_v = weyl_dimension(lam, cd)
    config.check_cap(dim_v * dim_v, "tensor square")

    general = decompose_general(cd, lam, config.cap)
    if cd.name == "A1":
        decomposition = sl2_tensor_square_decomposition(lam.coords[0])
        if _summary(decomposition) != _summary(general):
            raise ConsistencyError("Clebsch-Gordan rule and character decomposition disagree")
        method = "clebsch_gordan"
    else:
        decomposition = general
        method = "character"

    report = FuseReport(
        instance=instance_info(config),
        method=method,
        summands=[
            SummandReport(
                weight=list(s.weight.coords),
                multiplicity=s.multiplicity,
                dimension=s.dimension,
                casimir=str(s.casimir),
            )
            for s in decomposition.summands
        ],
        multiplicity_free=decomposition.multiplicity_free,
        total_dimension=decomposition.total_dimension,
    )
    logger.info(f"Fused {cd.name} {lam}: {len(report.summands)} summands")
    return report


def render_fuse(report: FuseReport) -> str:
    lines = [render_instance(report.instance), f"method {report.method}"]
    lines.append(f"{'weight':<16}{'mult':>6}{'dim':>8}  casimir")
    for s in report.summands:
        weight = "(" + ",".join(str(c) for c in s.weight) + ")"
        lines.append(f"{weight:<16}{s.multiplicity:>6}{s.dimension:>8}  {s.casimir}")
    lines.append(f"multiplicity free: {'yes' if report.multiplicity_free else 'no'}")
    lines.append(f"total dimension: {report.total_dimension}")
    return "\n".join(lines) + "\n"
