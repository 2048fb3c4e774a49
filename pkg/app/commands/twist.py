"""
Twist command: Casimir eigenvalue, twist, ribbon element and Drinfeld u scalars
"""
import logging

from pydantic import BaseModel

from app.commands.job import InstanceInfo, JobConfig, instance_info, render_instance
from app.services.cartan_core import casimir_eigenvalue, check_dominant
from app.services.qmodules import unique_highest_weight
from app.services.ribbon_data import drinfeld_u_scalar, ribbon_element_scalar, twist_scalar

logger = logging.getLogger(__name__)


class TwistReport(BaseModel):
    """Twist scalars of V(lambda)"""
    command: str = "twist"
    instance: InstanceInfo
    casimir: str
    twist: str
    ribbon_element: str
    drinfeld_u: str


def cmd_twist(config: JobConfig) -> TwistReport:
    """
    Compute the twist data of V(lambda)

    Args:
        config: Job configuration; a module file overrides type, rank and weight

    Returns:
        TwistReport with scalars in canonical text
    """
    if config.module_file:
        module = config.base_module()
        cd, lam, D = module.cartan, unique_highest_weight(module), module.root_order
        info = instance_info(config, module)
    else:
        cd, lam, D = config.cartan(), config.highest_weight(), config.root_order()
        info = instance_info(config)
    check_dominant(lam, cd, "twist")

    report = TwistReport(
        instance=info,
        casimir=str(casimir_eigenvalue(lam, cd)),
        twist=twist_scalar(lam, cd, D).to_text(),
        ribbon_element=ribbon_element_scalar(lam, cd, D).to_text(),
        drinfeld_u=drinfeld_u_scalar(lam, cd, D).to_text(),
    )
    logger.info(f"Twist of {cd.name} {lam}: {report.twist}")
    return report


def render_twist(report: TwistReport) -> str:
    return "\n".join([
        render_instance(report.instance),
        f"casimir         {report.casimir}",
        f"twist           {report.twist}",
        f"ribbon element  {report.ribbon_element}",
        f"drinfeld u      {report.drinfeld_u}",
    ]) + "\n"
