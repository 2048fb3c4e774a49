"""
Fusion of tensor squares: character arithmetic, Clebsch-Gordan rule and isotypic
projectors built from highest-weight vectors
"""
import time
import logging
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from sympy import Rational
from sympy.polys.matrices import DomainMatrix

from app.config import settings
from app.services import linalg
from app.services.cartan_core import (
    CartanData,
    Weight,
    cartan_data,
    casimir_eigenvalue,
    check_dominant,
    dominant_conjugate,
    is_in_positive_root_cone,
    positive_roots,
    simple_root_in_weight_basis,
    simple_roots,
    weight_inner_product,
    weight_sort_key,
    weyl_dimension,
    weyl_vector,
)
from app.services.checks import CheckResult, run_check
from app.services.errors import (
    ConsistencyError,
    DimensionCapError,
    MultiplicityError,
    UnsupportedConfigurationError,
)
from app.services.metrics_logger import MetricsLogger
from app.services.qmodules import QModule, highest_weight_vectors

logger = logging.getLogger(__name__)
metrics_logger = MetricsLogger()


@dataclass(frozen=True)
class FusionSummand:
    """One simple summand X with its multiplicity N_X"""

    weight: Weight
    multiplicity: int
    dimension: int
    casimir: Rational


@dataclass(frozen=True)
class FusionDecomposition:
    """V(lambda) (x) V(lambda) as a sum of simples"""

    cartan: CartanData
    base_weight: Weight
    summands: Tuple[FusionSummand, ...]

    @property
    def multiplicity_free(self) -> bool:
        return all(s.multiplicity == 1 for s in self.summands)

    @property
    def total_dimension(self) -> int:
        return sum(s.multiplicity * s.dimension for s in self.summands)

    def weights(self) -> List[Weight]:
        return [s.weight for s in self.summands]


@dataclass(frozen=True, eq=False)
class IsotypicComponent:
    """The X-summand of V (x) V: its basis inside V (x) V and the projector P[X]"""

    weight: Weight
    highest_weight_vector: DomainMatrix
    basis: Tuple[DomainMatrix, ...]
    projector: DomainMatrix
    casimir: Rational

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _summand_key(weight: Weight, casimir: Rational) -> Tuple:
    return (-casimir, weight.coords)


def _make_summand(weight: Weight, multiplicity: int, cd: CartanData) -> FusionSummand:
    return FusionSummand(
        weight=weight,
        multiplicity=multiplicity,
        dimension=weyl_dimension(weight, cd),
        casimir=casimir_eigenvalue(weight, cd),
    )


def _sorted_summands(summands: List[FusionSummand]) -> Tuple[FusionSummand, ...]:
    return tuple(sorted(summands, key=lambda s: _summand_key(s.weight, s.casimir)))


def sl2_tensor_square_decomposition(m: int) -> FusionDecomposition:
    """V(m) (x) V(m) = V(2m) + V(2m-2) + ... + V(0)"""
    cd = cartan_data("A", 1)
    base = check_dominant(Weight((m,)), cd, "sl2_tensor_square_decomposition")
    summands = [_make_summand(Weight((2 * m - 2 * k,)), 1, cd) for k in range(m + 1)]
    return FusionDecomposition(cartan=cd, base_weight=base, summands=_sorted_summands(summands))


def _weights_of(lam: Weight, cd: CartanData) -> List[Weight]:
    """Every weight of V(lam), highest first"""
    alphas = simple_roots(cd)
    seen = {lam}
    frontier = [lam]
    while frontier:
        next_frontier = []
        for mu in frontier:
            for alpha in alphas:
                nu = mu - alpha
                if nu not in seen and is_in_positive_root_cone(lam - dominant_conjugate(nu, cd), cd):
                    seen.add(nu)
                    next_frontier.append(nu)
        frontier = next_frontier
    return sorted(seen, key=lambda w: weight_sort_key(w, cd))


@lru_cache(maxsize=256)
def _multiplicity_table(lam: Weight, cd: CartanData) -> Tuple[Tuple[Weight, int], ...]:
    rho = weyl_vector(cd)
    roots = positive_roots(cd)
    weights = _weights_of(lam, cd)
    weight_set = set(weights)
    norm_top = weight_inner_product(lam + rho, lam + rho, cd)

    dominant: Dict[Weight, int] = {}
    for mu in weights:
        if not mu.is_dominant():
            continue
        if mu == lam:
            dominant[mu] = 1
            continue
        total = Rational(0)
        for beta in roots:
            k = 1
            while mu + k * beta in weight_set:
                higher = mu + k * beta
                total += dominant[dominant_conjugate(higher, cd)] * weight_inner_product(higher, beta, cd)
                k += 1
        denominator = norm_top - weight_inner_product(mu + rho, mu + rho, cd)
        value = 2 * total / denominator
        if value.q != 1:
            raise ConsistencyError(f"non-integral multiplicity {value} at weight {mu}")
        dominant[mu] = int(value)

    table = tuple((mu, dominant[dominant_conjugate(mu, cd)]) for mu in weights)
    return tuple((mu, m) for mu, m in table if m > 0)


def weight_multiplicities(cd: CartanData, lam: Weight) -> Dict[Weight, int]:
    """
    Weight multiplicities of V(lam) by the Freudenthal recursion

    The recursion runs over dominant weights only; every other weight takes the value
    of its dominant conjugate.

    Args:
        cd: Cartan data
        lam: Dominant highest weight

    Returns:
        Weight -> multiplicity, highest weights first
    """
    check_dominant(lam, cd, "weight_multiplicities")
    return dict(_multiplicity_table(lam, cd))


def decompose_general(cd: CartanData, lam: Weight, cap: Optional[int] = None) -> FusionDecomposition:
    """
    Decompose V(lam) (x) V(lam) by character arithmetic

    Args:
        cd: Cartan data, rank at most settings.max_fusion_rank
        lam: Dominant highest weight
        cap: Largest allowed dimension of the square (defaults to settings.dimension_cap)

    Returns:
        FusionDecomposition with multiplicities, dimensions and Casimir eigenvalues
    """
    check_dominant(lam, cd, "decompose_general")
    cap = settings.dimension_cap if cap is None else cap
    if cd.rank > settings.max_fusion_rank:
        raise UnsupportedConfigurationError(
            f"character decomposition supports rank <= {settings.max_fusion_rank}, got {cd.rank}"
        )
    dim_v = weyl_dimension(lam, cd)
    if dim_v * dim_v > cap:
        raise DimensionCapError(dim_v * dim_v, cap, "tensor square")

    start = time.perf_counter()
    character = weight_multiplicities(cd, lam)
    product: Dict[Weight, int] = defaultdict(int)
    for a, ma in character.items():
        for b, mb in character.items():
            product[a + b] += ma * mb

    summands: List[FusionSummand] = []
    remaining = {w: m for w, m in product.items() if m}
    while remaining:
        top = min(remaining, key=lambda w: weight_sort_key(w, cd))
        count = remaining[top]
        if count < 0 or not top.is_dominant():
            raise ConsistencyError(f"character peeling reached weight {top} with multiplicity {count}")
        summands.append(_make_summand(top, count, cd))
        for w, m in weight_multiplicities(cd, top).items():
            remaining[w] = remaining.get(w, 0) - count * m
            if remaining[w] == 0:
                del remaining[w]

    decomposition = FusionDecomposition(cartan=cd, base_weight=lam, summands=_sorted_summands(summands))
    if decomposition.total_dimension != dim_v * dim_v:
        raise ConsistencyError(
            f"summand dimensions add to {decomposition.total_dimension}, expected {dim_v * dim_v}"
        )
    metrics_logger.log_construction("decompose_general", dim_v * dim_v, (time.perf_counter() - start) * 1000)
    logger.info(f"{cd.name} V{lam}^2 splits into {len(summands)} summands")
    return decomposition


def _generate_component(M: QModule, vector: DomainMatrix, weight: Weight) -> List[DomainMatrix]:
    """Span of U_q(n-) applied to a highest-weight vector, one weight space at a time"""
    by_weight: Dict[Weight, List[DomainMatrix]] = {weight: [vector]}
    queue = [(vector, weight)]
    alphas = [simple_root_in_weight_basis(i, M.cartan) for i in range(1, M.rank + 1)]
    while queue:
        v, w = queue.pop(0)
        for i, alpha in enumerate(alphas):
            image = M.F[i].matmul(v)
            target = w - alpha
            existing = by_weight.setdefault(target, [])
            if linalg.extends_span(existing, image):
                existing.append(image)
                queue.append((image, target))
    ordered = sorted(by_weight, key=lambda w: weight_sort_key(w, M.cartan))
    return [v for w in ordered for v in by_weight[w]]


def isotypic_decomposition(M: QModule) -> List[IsotypicComponent]:
    """
    Split a multiplicity-free module into its isotypic components

    Args:
        M: Semisimple module, typically V (x) V

    Returns:
        Components sorted by decreasing Casimir eigenvalue, each with its projector
    """
    start = time.perf_counter()
    vectors = highest_weight_vectors(M)
    counts: Dict[Weight, int] = defaultdict(int)
    for hw in vectors:
        counts[hw.weight] += 1
    for weight, count in counts.items():
        if count > 1:
            raise MultiplicityError(weight.coords, count)

    cd = M.cartan
    pieces = []
    for hw in vectors:
        basis = _generate_component(M, hw.vector, hw.weight)
        expected = weyl_dimension(hw.weight, cd)
        if len(basis) != expected:
            raise ConsistencyError(
                f"component of highest weight {hw.weight} has dimension {len(basis)}, expected {expected}"
            )
        pieces.append((hw, basis))

    total = sum(len(basis) for _, basis in pieces)
    if total != M.dimension:
        raise ConsistencyError(f"components span dimension {total} of {M.dimension}")

    pieces.sort(key=lambda p: _summand_key(p[0].weight, casimir_eigenvalue(p[0].weight, cd)))
    all_columns = [v for _, basis in pieces for v in basis]
    B = linalg.columns(all_columns)
    B_inv = linalg.inverse(B)
    rows = list(range(M.dimension))

    components = []
    offset = 0
    for hw, basis in pieces:
        cols = list(range(offset, offset + len(basis)))
        projector = B.extract(rows, cols).matmul(B_inv.extract(cols, rows))
        components.append(IsotypicComponent(
            weight=hw.weight,
            highest_weight_vector=hw.vector,
            basis=tuple(basis),
            projector=projector,
            casimir=casimir_eigenvalue(hw.weight, cd),
        ))
        offset += len(basis)

    metrics_logger.log_construction("isotypic_decomposition", M.dimension, (time.perf_counter() - start) * 1000)
    logger.info(
        f"{M.label}: components " + ", ".join(f"{c.weight} (dim {c.dimension})" for c in components)
    )
    return components


def verify_projectors(components: List[IsotypicComponent], M: QModule) -> List[CheckResult]:
    """Orthogonal idempotents summing to the identity, each commuting with the action"""
    n = M.dimension
    D = M.root_order

    def algebra():
        for a, X in enumerate(components):
            for b, Y in enumerate(components):
                expected = X.projector if a == b else linalg.zeros(n)
                problem = linalg.describe_difference(X.projector.matmul(Y.projector), expected, D)
                if problem:
                    return f"P{X.weight} P{Y.weight}: {problem}"
        total = linalg.add(*[c.projector for c in components])
        problem = linalg.describe_difference(total, linalg.identity(n), D)
        return f"sum of projectors: {problem}" if problem else None

    def equivariance():
        for c in components:
            for name, action in M.generators():
                if not linalg.is_zero(linalg.commutator(c.projector, action)):
                    return f"P{c.weight} does not commute with {name}"
        return None

    return [
        run_check("projector_algebra", algebra, n),
        run_check("projector_equivariance", equivariance, n),
    ]


def component_for(components: List[IsotypicComponent], weight: Weight) -> IsotypicComponent:
    for c in components:
        if c.weight == weight:
            return c
    raise KeyError(str(weight))
