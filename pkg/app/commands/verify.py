"""
Verify command: runs every applicable identity for the configured instance
"""
import logging
from typing import List, Optional

from pydantic import BaseModel

from app.commands.job import InstanceInfo, JobConfig, instance_info, render_instance
from app.config import CHECK_DESCRIPTIONS
from app.services.braidrep import build_representation, verify_eigenvalue_preservation, verify_hexagon_on_triple
from app.services.checks import CheckResult, CheckStatus, all_passed, failed, skipped
from app.services.classical_limit import (
    casimir_two_tensor,
    classical_shadow,
    verify_casimir_centrality,
    verify_casimir_scalar,
    verify_classical_relations,
    verify_first_order_expansion,
    verify_infinitesimal_braid_relations,
    verify_infinitesimal_braiding_coherence,
    verify_two_tensor_forms,
)
from app.services.errors import CertificationError
from app.services.fusion import verify_projectors
from app.services.module_files import load_module
from app.services.qmodules import QModule, verify_relations
from app.services.ribbon_data import (
    assemble_braiding,
    assemble_inverse,
    braiding_spectrum,
    hexagon_braidings,
    verify_braiding,
    verify_ribbon_data,
)

logger = logging.getLogger(__name__)

CLASSICAL_CHECKS = [
    "classical_relations",
    "casimir_scalar",
    "casimir_centrality",
    "two_tensor_forms",
    "inf_braid_symmetry",
    "inf_braid_locality",
    "inf_braid_mixed",
    "inf_braiding_coherence",
    "first_order_expansion",
]


class VerifyEntry(BaseModel):
    scope: str
    name: str
    status: CheckStatus
    description: str
    detail: Optional[str] = None


class VerifyReport(BaseModel):
    """Every identity checked for one instance"""
    command: str = "verify"
    instance: Optional[InstanceInfo] = None
    strands: int
    checks: List[VerifyEntry]
    passed: bool


def _entries(scope: str, results: List[CheckResult]) -> List[VerifyEntry]:
    return [
        VerifyEntry(
            scope=scope,
            name=r.name,
            status=r.status,
            description=CHECK_DESCRIPTIONS.get(r.name, ""),
            detail=r.detail,
        )
        for r in results
    ]


def _classical_checks(V: QModule, r, root_order: int, config: JobConfig) -> List[CheckResult]:
    shadow = classical_shadow(V)
    m = max(w.coords[0] for w in V.weights)
    results = [
        verify_classical_relations(shadow),
        verify_casimir_scalar(shadow, m),
        verify_casimir_centrality(shadow, shadow),
        verify_two_tensor_forms(shadow, shadow),
    ]
    n = max(3, config.strands)
    if V.dimension ** n > config.cap:
        n = 3
    t = casimir_two_tensor(shadow, shadow)
    results.extend(verify_infinitesimal_braid_relations(t, n))
    results.append(verify_infinitesimal_braiding_coherence(shadow, shadow, shadow))
    results.append(verify_first_order_expansion(r, t, root_order, config.order))
    logger.debug(f"Classical checks on V({m}) with {n} factors done")
    return results


def cmd_verify(config: JobConfig) -> VerifyReport:
    """
    Run the full invariant suite

    The module's defining relations are checked first; when they fail the remaining
    identities are not attempted.

    Args:
        config: Job configuration

    Returns:
        VerifyReport; passed is True exactly when no identity failed
    """
    if config.module_file:
        V, relations = load_module(config.module_file, strict=False)
    else:
        V = config.base_module()
        relations = verify_relations(V)
    entries = _entries("module", relations.checks)
    if not relations.passed:
        logger.warning(f"{V.label or 'module'} fails its defining relations; skipping the rest")
        return VerifyReport(
            instance=None,
            strands=config.strands,
            checks=entries,
            passed=False,
        )

    m = config.strands
    D = V.root_order
    config.check_cap(V.dimension ** max(m, 2), "verification space")

    spectrum = braiding_spectrum(V, config.cap)
    entries += _entries("square", verify_relations(spectrum.square).checks)
    entries += _entries("projectors", verify_projectors(list(spectrum.components), spectrum.square))
    r = assemble_braiding(spectrum)
    r_inv = assemble_inverse(spectrum)
    braiding_checks = verify_braiding(spectrum, r)
    entries += _entries("braiding", braiding_checks)
    entries += _entries("ribbon", verify_ribbon_data(V))

    if all_passed(braiding_checks):
        try:
            rep = build_representation(r, m, V.dimension, D, r_inv)
            braid_results = list(rep.checks)
            braid_results.append(verify_eigenvalue_preservation(rep, spectrum.eigenvalues()))
        except CertificationError as e:
            braid_results = [failed(e.identity, e.details)]
    else:
        braid_results = [skipped("braid_relations", "the braiding failed certification")]
    entries += _entries("braid", braid_results)

    if V.dimension ** 3 <= config.cap:
        hexagons = verify_hexagon_on_triple(V, V, V, hexagon_braidings(V, V, V))
    else:
        hexagons = [
            skipped("hexagon_left", "V^3 exceeds the dimension cap"),
            skipped("hexagon_right", "V^3 exceeds the dimension cap"),
        ]
    entries += _entries("hexagon", hexagons)

    if V.rank == 1:
        classical = _classical_checks(V, r, D, config)
    else:
        classical = [skipped(name, "classical identities are checked for rank 1") for name in CLASSICAL_CHECKS]
    entries += _entries("classical", classical)

    passed = all(e.status != CheckStatus.FAIL for e in entries)
    logger.info(f"Verification of {V.label}: {'all pass' if passed else 'failures'} ({len(entries)} identities)")
    return VerifyReport(
        instance=instance_info(config, V),
        strands=m,
        checks=entries,
        passed=passed,
    )


def render_verify(report: VerifyReport) -> str:
    lines = [render_instance(report.instance)] if report.instance else ["module relations"]
    for e in report.checks:
        line = f"{e.scope:<12}{e.name:<26}{e.status.value:<9}{e.description}"
        if e.detail and e.status == CheckStatus.FAIL:
            line += f"\n{'':<12}  {e.detail}"
        lines.append(line)
    lines.append("all identities pass" if report.passed else "verification failed")
    return "\n".join(lines) + "\n"
