"""
Ribbon data of U_q(g): twist scalars, braiding spectra, and the braiding operator on
V (x) V assembled from isotypic projectors
"""
import time
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from sympy import QQ, Rational
from sympy.polys.matrices import DomainMatrix

from app.config import settings
from app.services import linalg
from app.services.braidrep import require_distinct_labels, verify_yang_baxter
from app.services.cartan_core import (
    CartanData,
    Weight,
    casimir_eigenvalue,
    check_dominant,
    root_order as default_root_order,
    simple_root_in_weight_basis,
    weight_inner_product,
    weyl_vector,
    weyl_vector_coefficients,
)
from app.services.checks import CheckResult, first_failure, run_check
from app.services.errors import (
    CertificationError,
    ConsistencyError,
    DimensionCapError,
    SignDeterminationError,
)
from app.services.fusion import IsotypicComponent, isotypic_decomposition
from app.services.metrics_logger import MetricsLogger
from app.services.qarith import FieldElement, poly_terms, q_power
from app.services.qmodules import QModule, highest_weight_vectors, tensor_module, unique_highest_weight

logger = logging.getLogger(__name__)
metrics_logger = MetricsLogger()


def _order(cd: CartanData, root_order: Optional[int]) -> int:
    return default_root_order(cd) if root_order is None else root_order


def twist_scalar(lam: Weight, cd: CartanData, root_order: Optional[int] = None) -> FieldElement:
    """theta_lambda = q^{<lambda, lambda + 2 rho>}"""
    check_dominant(lam, cd, "twist_scalar")
    return q_power(casimir_eigenvalue(lam, cd), _order(cd, root_order))


def ribbon_element_scalar(lam: Weight, cd: CartanData, root_order: Optional[int] = None) -> FieldElement:
    """The ribbon element acts on V(lambda) by the inverse of the twist"""
    return twist_scalar(lam, cd, root_order).inverse()


def drinfeld_u_scalar(lam: Weight, cd: CartanData, root_order: Optional[int] = None) -> FieldElement:
    """u on a highest-weight vector: only the Cartan part of R contributes, q^{-<lambda, lambda>}"""
    check_dominant(lam, cd, "drinfeld_u_scalar")
    return q_power(-weight_inner_product(lam, lam, cd), _order(cd, root_order))


def braiding_eigenvalue_magnitude(
    lam_v: Weight, lam_x: Weight, cd: CartanData, root_order: Optional[int] = None
) -> FieldElement:
    """
    Positive square root of theta_X theta_V^-2

    Args:
        lam_v: Highest weight of V
        lam_x: Highest weight of the summand X of V (x) V
        cd: Cartan data
        root_order: D

    Returns:
        The monomial q^{(chi_X - 2 chi_V)/2}
    """
    D = _order(cd, root_order)
    ratio = twist_scalar(lam_x, cd, D) * twist_scalar(lam_v, cd, D) ** -2
    return ratio.sqrt()


@dataclass(frozen=True)
class TwistTable:
    entries: Dict[Weight, FieldElement]

    def __getitem__(self, weight: Weight) -> FieldElement:
        return self.entries[weight]


def twist_table(weights: List[Weight], cd: CartanData, root_order: Optional[int] = None) -> TwistTable:
    return TwistTable(entries={w: twist_scalar(w, cd, root_order) for w in weights})


@dataclass(frozen=True, eq=False)
class SpectrumEntry:
    """Summand X: its twist, eigenvalue magnitude, sign and projector"""

    weight: Weight
    dimension: int
    casimir: Rational
    twist: FieldElement
    magnitude: FieldElement
    sign: int
    projector: DomainMatrix

    @property
    def eigenvalue(self) -> FieldElement:
        return self.magnitude * self.sign


@dataclass(frozen=True, eq=False)
class BraidingSpectrum:
    """Spectral data of the braiding on V (x) V"""

    module: QModule
    square: QModule
    base_weight: Weight
    twist: FieldElement
    entries: Tuple[SpectrumEntry, ...]
    components: Tuple[IsotypicComponent, ...]

    @property
    def root_order(self) -> int:
        return self.module.root_order

    def eigenvalues(self) -> List[FieldElement]:
        return [e.eigenvalue for e in self.entries]


def _order_at_one(poly) -> Tuple[int, Rational]:
    """(k, c) with poly = (s - 1)^k g and g(1) = c != 0"""
    terms = poly_terms(poly)
    degree = max(e for e, _ in terms)
    coeffs = [Rational(0)] * (degree + 1)
    for e, c in terms:
        coeffs[e] = c
    k = 0
    while sum(coeffs) == 0:
        # synthetic division by (s - 1)
        quotient = [Rational(0)] * (len(coeffs) - 1)
        carry = Rational(0)
        for j in range(len(coeffs) - 1, 0, -1):
            carry = coeffs[j] + carry
            quotient[j - 1] = carry
        coeffs = quotient
        k += 1
    return k, sum(coeffs)


def classical_limit_vector(vector: DomainMatrix) -> Dict[int, Rational]:
    """
    Direction of a vector over Q(s) as s -> 1

    Each entry is scaled by the lowest power of (s - 1) present so the result is the
    nonzero leading coefficient vector.
    """
    orders = {}
    for (r, _), v in linalg.entries(vector).items():
        if not v:
            continue
        k_num, c_num = _order_at_one(v.numer)
        k_den, c_den = _order_at_one(v.denom)
        orders[r] = (k_num - k_den, c_num / c_den)
    if not orders:
        raise SignDeterminationError("the zero vector has no classical limit")
    lowest = min(k for k, _ in orders.values())
    return {r: c for r, (k, c) in orders.items() if k == lowest}


def flip_sign(limit: Dict[int, Rational], dim_v: int) -> int:
    """Eigenvalue of the flip on a vector of Q^{dim_v} (x) Q^{dim_v}"""
    flipped = {(r % dim_v) * dim_v + r // dim_v: c for r, c in limit.items()}
    if flipped == limit:
        return 1
    if flipped == {r: -c for r, c in limit.items()}:
        return -1
    raise SignDeterminationError("the q = 1 limit of a highest-weight vector is not a flip eigenvector")


def determine_signs(components: List[IsotypicComponent], dim_v: int) -> Dict[Weight, int]:
    """
    epsilon(X) from the flip eigenvalue on the q = 1 limit of X's highest-weight vector

    Args:
        components: Isotypic decomposition of V (x) V
        dim_v: Dimension of V

    Returns:
        Weight of X -> +1 or -1
    """
    signs = {}
    for c in components:
        try:
            signs[c.weight] = flip_sign(classical_limit_vector(c.highest_weight_vector), dim_v)
        except SignDeterminationError as e:
            logger.error(f"Error determining the sign of {c.weight}: {str(e)}")
            raise
    logger.debug("Signs: " + ", ".join(f"{w}: {s:+d}" for w, s in signs.items()))
    return signs


def _check_cap(dimension: int, cap: Optional[int], what: str):
    cap = settings.dimension_cap if cap is None else cap
    if dimension > cap:
        raise DimensionCapError(dimension, cap, what)


def braiding_spectrum(V: QModule, cap: Optional[int] = None) -> BraidingSpectrum:
    """
    Spectral data of the braiding on V (x) V for a simple module V

    Args:
        V: Simple module with a multiplicity-free tensor square
        cap: Largest allowed dimension of V (x) V

    Returns:
        BraidingSpectrum with one entry per summand, highest Casimir first
    """
    _check_cap(V.dimension ** 2, cap, "tensor square")
    start = time.perf_counter()
    cd = V.cartan
    D = V.root_order
    lam_v = unique_highest_weight(V)
    square = tensor_module(V, V)
    components = isotypic_decomposition(square)
    signs = determine_signs(components, V.dimension)

    entries = tuple(
        SpectrumEntry(
            weight=c.weight,
            dimension=c.dimension,
            casimir=c.casimir,
            twist=twist_scalar(c.weight, cd, D),
            magnitude=braiding_eigenvalue_magnitude(lam_v, c.weight, cd, D),
            sign=signs[c.weight],
            projector=c.projector,
        )
        for c in components
    )
    metrics_logger.log_construction("braiding_spectrum", square.dimension, (time.perf_counter() - start) * 1000)
    logger.info(f"Spectrum of {V.label}: " + ", ".join(f"{e.weight} -> {e.eigenvalue}" for e in entries))
    return BraidingSpectrum(
        module=V,
        square=square,
        base_weight=lam_v,
        twist=twist_scalar(lam_v, cd, D),
        entries=entries,
        components=tuple(components),
    )


def assemble_braiding(spectrum: BraidingSpectrum) -> DomainMatrix:
    """R = sum_X eps(X) R_X P[X]"""
    return linalg.add(*[linalg.scale(e.projector, e.eigenvalue) for e in spectrum.entries])


def assemble_inverse(spectrum: BraidingSpectrum) -> DomainMatrix:
    """R^-1 = sum_X eps(X) R_X^-1 P[X]"""
    return linalg.add(*[linalg.scale(e.projector, e.eigenvalue.inverse()) for e in spectrum.entries])


def exponential_factor_action(M: QModule, N: QModule) -> DomainMatrix:
    """Diagonal q^{<mu, nu>} on the row-major basis of M (x) N"""
    cd = M.cartan
    D = M.root_order
    return linalg.diagonal([
        q_power(weight_inner_product(mu, nu, cd), D).value for mu in M.weights for nu in N.weights
    ])


def k2rho_exponents(cd: CartanData) -> Tuple[int, ...]:
    """e_i with K_{2 rho} = prod K_i^{e_i}, e_i = 2 b_i / d_i"""
    exponents = []
    for b, d in zip(weyl_vector_coefficients(cd), cd.symmetrizer):
        e = 2 * b / d
        if Rational(e).q != 1:
            raise ConsistencyError(f"K_2rho exponent {e} is not an integer")
        exponents.append(int(e))
    return tuple(exponents)


def k2rho_action(M: QModule) -> DomainMatrix:
    """K_{2 rho} as a product of the module's own K_i matrices"""
    result = linalg.identity(M.dimension)
    for i, e in enumerate(k2rho_exponents(M.cartan)):
        factor = M.K[i] if e >= 0 else M.K_inv[i]
        for _ in range(abs(e)):
            result = result.matmul(factor)
    return result


def verify_ribbon_data(V: QModule) -> List[CheckResult]:
    """K_2rho acts by q^{<mu, 2 rho>}; the ribbon element factors as K_2rho^-1 u on the top vector"""
    cd = V.cartan
    D = V.root_order
    two_rho = 2 * weyl_vector(cd)
    k2rho = k2rho_action(V)

    def action():
        expected = linalg.diagonal([q_power(weight_inner_product(mu, two_rho, cd), D).value for mu in V.weights])
        return linalg.describe_difference(k2rho, expected, D)

    def factorization():
        hw = unique_highest_weight(V)
        top = V.weights.index(hw)
        from_k = FieldElement(linalg.entry(k2rho, top, top), D)
        from_b = q_power(2 * sum((b * c for b, c in zip(weyl_vector_coefficients(cd), hw.coords)), Rational(0)), D)
        if from_k != from_b:
            return f"K_2rho on the top vector gives {from_k}, the Weyl vector coefficients give {from_b}"
        lhs = ribbon_element_scalar(hw, cd, D)
        rhs = from_k.inverse() * drinfeld_u_scalar(hw, cd, D)
        if lhs != rhs:
            return f"ribbon element {lhs} differs from K_2rho^-1 u = {rhs}"
        return None

    return [
        run_check("k2rho_action", action, V.dimension),
        run_check("ribbon_factorization", factorization, V.dimension),
    ]


def _independent_pairs(
    MN: QModule, NM: QModule, seeds: List[Tuple[DomainMatrix, DomainMatrix, Weight]]
) -> Tuple[List[DomainMatrix], List[DomainMatrix]]:
    """Close (source, image) pairs under Delta(F_i), keeping independent sources only"""
    alphas = [simple_root_in_weight_basis(i, MN.cartan) for i in range(1, MN.rank + 1)]
    by_weight: Dict[Weight, List[DomainMatrix]] = {}
    sources, targets = [], []
    queue = []
    for x, y, w in seeds:
        existing = by_weight.setdefault(w, [])
        if linalg.extends_span(existing, x):
            existing.append(x)
            sources.append(x)
            targets.append(y)
            queue.append((x, y, w))
    while queue:
        x, y, w = queue.pop(0)
        for i, alpha in enumerate(alphas):
            x_next = MN.F[i].matmul(x)
            target_weight = w - alpha
            existing = by_weight.setdefault(target_weight, [])
            if linalg.extends_span(existing, x_next):
                y_next = NM.F[i].matmul(y)
                existing.append(x_next)
                sources.append(x_next)
                targets.append(y_next)
                queue.append((x_next, y_next, target_weight))
    return sources, targets


def verify_intertwiner(c: DomainMatrix, source: QModule, target: QModule) -> Optional[str]:
    """None when c Delta_source(x) = Delta_target(x) c for every generator x"""
    for (name, a), (_, b) in zip(source.generators(), target.generators()):
        problem = linalg.describe_difference(c.matmul(a), b.matmul(c), source.root_order)
        if problem:
            return f"{name}: {problem}"
    return None


def module_braiding(M: QModule, N: QModule) -> DomainMatrix:
    """
    The braiding c_{M,N}: M (x) N -> N (x) M built from highest-weight vectors of M

    On u (x) w with u highest weight in M the off-diagonal part of R vanishes, so
    c(u (x) w) = q^{<wt u, wt w>} w (x) u. Intertwining with Delta(F_i) extends c to
    all of M (x) N.

    Args:
        M: Semisimple module
        N: Any module over the same Cartan data and root order

    Returns:
        Matrix from the row-major basis of M (x) N to that of N (x) M

    Raises:
        CertificationError: the result does not intertwine the two tensor structures
    """
    start = time.perf_counter()
    MN = tensor_module(M, N)
    NM = tensor_module(N, M)
    cd = M.cartan
    D = M.root_order
    n_dim = N.dimension

    seeds = []
    for hw in highest_weight_vectors(M):
        for b, nu in enumerate(N.weights):
            e_b = linalg.from_entries({(b, 0): linalg.DOMAIN.one}, (n_dim, 1))
            factor = q_power(weight_inner_product(hw.weight, nu, cd), D)
            seeds.append((
                linalg.kron(hw.vector, e_b),
                linalg.scale(linalg.kron(e_b, hw.vector), factor),
                hw.weight + nu,
            ))
    sources, targets = _independent_pairs(MN, NM, seeds)
    if len(sources) != MN.dimension:
        raise CertificationError(
            "module_braiding",
            f"highest-weight seeds generate dimension {len(sources)} of {MN.dimension}",
        )
    c = linalg.columns(targets).matmul(linalg.inverse(linalg.columns(sources)))
    problem = verify_intertwiner(c, MN, NM)
    if problem:
        logger.error(f"Error building braiding {M.label}, {N.label}: {problem}")
        raise CertificationError("intertwiner", problem)
    metrics_logger.log_construction("module_braiding", MN.dimension, (time.perf_counter() - start) * 1000)
    logger.debug(f"Built braiding c_({M.label}, {N.label}) on dimension {MN.dimension}")
    return c


def hexagon_braidings(U: QModule, V: QModule, W: QModule) -> Dict[Tuple[str, str], DomainMatrix]:
    """Every braiding the two hexagon identities on (U, V, W) need, keyed by labels"""
    require_distinct_labels(U, V, W)
    VW = tensor_module(V, W)
    UV = tensor_module(U, V)
    braidings = {}
    for a, b in ((U, V), (U, W), (V, W), (U, VW), (UV, W)):
        if (a.label, b.label) not in braidings:
            braidings[(a.label, b.label)] = module_braiding(a, b)
    return braidings


def verify_braiding(spectrum: BraidingSpectrum, r: DomainMatrix) -> List[CheckResult]:
    """
    Certification suite for the assembled braiding

    Args:
        spectrum: Spectrum the operator was assembled from
        r: Braiding operator on V (x) V

    Returns:
        Check results for the intertwiner property, the squared-eigenvalue law, the
        top vector, the q = 1 flip, twist multiplicativity, agreement with the
        highest-weight construction and Yang-Baxter
    """
    V = spectrum.module
    VV = spectrum.square
    cd = V.cartan
    D = V.root_order
    n = VV.dimension
    dim_v = V.dimension
    r_squared = r.matmul(r)

    def intertwiner():
        return verify_intertwiner(r, VV, VV)

    def eigenvalue_law():
        theta_v = spectrum.twist
        for e in spectrum.entries:
            factor = e.twist * theta_v ** -2
            problem = linalg.describe_difference(e.projector.matmul(r_squared), linalg.scale(e.projector, factor), D)
            if problem:
                return f"component {e.weight}: {problem}"
        return None

    def top_vector():
        lam = spectrum.base_weight
        top = V.weights.index(lam)
        index = top * dim_v + top
        v = linalg.from_entries({(index, 0): linalg.DOMAIN.one}, (n, 1))
        expected = linalg.scale(v, q_power(weight_inner_product(lam, lam, cd), D))
        return linalg.describe_difference(r.matmul(v), expected, D)

    def classical_flip():
        expected = linalg.flip(dim_v, dim_v, QQ)
        return linalg.describe_difference(linalg.specialize_at_q1(r), expected, D)

    def twist_multiplicativity():
        theta_v_sq = spectrum.twist ** 2
        for e in spectrum.entries:
            lhs = linalg.scale(r_squared.matmul(e.projector), theta_v_sq)
            problem = linalg.describe_difference(lhs, linalg.scale(e.projector, e.twist), D)
            if problem:
                return f"component {e.weight}: {problem}"
        return None

    def spectral_agreement():
        return linalg.describe_difference(r, module_braiding(V, V), D)

    return [
        run_check("intertwiner", intertwiner, n),
        run_check("eigenvalue_law", eigenvalue_law, n),
        run_check("top_vector", top_vector, n),
        run_check("classical_flip", classical_flip, n),
        run_check("twist_multiplicativity", twist_multiplicativity, n),
        run_check("spectral_agreement", spectral_agreement, n),
        verify_yang_baxter(r, dim_v, D),
    ]


@dataclass(frozen=True, eq=False)
class CertifiedBraiding:
    spectrum: BraidingSpectrum
    matrix: DomainMatrix
    inverse: DomainMatrix
    checks: Tuple[CheckResult, ...]


def certified_braiding(V: QModule, cap: Optional[int] = None) -> CertifiedBraiding:
    """
    Assemble the braiding on V (x) V and run the certification suite

    Raises:
        CertificationError: any identity of the suite fails
    """
    spectrum = braiding_spectrum(V, cap)
    r = assemble_braiding(spectrum)
    r_inv = assemble_inverse(spectrum)
    checks = verify_braiding(spectrum, r)
    failure = first_failure(checks)
    if failure is not None:
        logger.error(f"Error certifying braiding of {V.label}: {failure.detail}")
        raise CertificationError(failure.name, failure.detail or "")
    logger.info(f"Certified braiding of {V.label} on dimension {V.dimension ** 2}")
    return CertifiedBraiding(spectrum=spectrum, matrix=r, inverse=r_inv, checks=tuple(checks))
