"""
Explicit finite-dimensional U_q(g) modules: simple U_q(sl2) modules, tensor products,
relation checks and highest-weight vectors
"""
import time
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel
from sympy.polys.matrices import DomainMatrix

from app.services import linalg
from app.services.cartan_core import (
    CartanData,
    Weight,
    cartan_data,
    root_order as default_root_order,
    simple_root_in_weight_basis,
    weight_inner_product,
    weight_sort_key,
)
from app.services.checks import CheckResult, all_passed, run_check, skipped
from app.services.errors import CartanError, ModuleFormatError
from app.services.metrics_logger import MetricsLogger
from app.services.qarith import FieldElement, q_binomial, q_integer, q_power

logger = logging.getLogger(__name__)
metrics_logger = MetricsLogger()


@dataclass(frozen=True, eq=False)
class QModule:
    """Generator matrices E_i, F_i, K_i, K_i^-1 on a weight-graded basis"""

    cartan: CartanData
    root_order: int
    E: Tuple[DomainMatrix, ...]
    F: Tuple[DomainMatrix, ...]
    K: Tuple[DomainMatrix, ...]
    K_inv: Tuple[DomainMatrix, ...]
    weights: Tuple[Weight, ...]
    label: str = ""

    def __post_init__(self):
        n = len(self.weights)
        rank = self.cartan.rank
        for name, mats in (("E", self.E), ("F", self.F), ("K", self.K), ("K_inv", self.K_inv)):
            if len(mats) != rank:
                raise ModuleFormatError(f"{name} has {len(mats)} matrices, expected {rank}")
            for i, m in enumerate(mats):
                if m.shape != (n, n):
                    raise ModuleFormatError(f"{name}{i + 1} has shape {m.shape}, expected {(n, n)}")
        for w in self.weights:
            self.cartan.check_weight(w)

    @property
    def dimension(self) -> int:
        return len(self.weights)

    @property
    def rank(self) -> int:
        return self.cartan.rank

    def generators(self) -> List[Tuple[str, DomainMatrix]]:
        """Every generator action, named E1, F1, K1, Kinv1, ..."""
        named = []
        for i in range(self.rank):
            named.extend([
                (f"E{i + 1}", self.E[i]),
                (f"F{i + 1}", self.F[i]),
                (f"K{i + 1}", self.K[i]),
                (f"Kinv{i + 1}", self.K_inv[i]),
            ])
        return named

    def weight_spaces(self) -> Dict[Weight, List[int]]:
        """Basis indices grouped by weight, highest weights first"""
        spaces: Dict[Weight, List[int]] = {}
        for index, w in enumerate(self.weights):
            spaces.setdefault(w, []).append(index)
        ordered = sorted(spaces, key=lambda w: weight_sort_key(w, self.cartan))
        return {w: spaces[w] for w in ordered}


@dataclass(frozen=True, eq=False)
class HighestWeightVector:
    """A vector killed by every E_i, homogeneous of one weight"""

    module: QModule
    vector: DomainMatrix
    weight: Weight


class RelationReport(BaseModel):
    """Result of checking the defining relations on a module"""
    label: str
    dimension: int
    checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all_passed(self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]


def k_scalar(weight: Weight, i: int, cd: CartanData, root_order: int) -> FieldElement:
    """q^{<mu, alpha_i>}, the action of K_i on a vector of weight mu"""
    return q_power(weight_inner_product(weight, simple_root_in_weight_basis(i, cd), cd), root_order)


def k_matrices(weights: List[Weight], cd: CartanData, root_order: int) -> Tuple[tuple, tuple]:
    K, K_inv = [], []
    for i in range(1, cd.rank + 1):
        diag = [k_scalar(w, i, cd, root_order) for w in weights]
        K.append(linalg.diagonal([x.value for x in diag]))
        K_inv.append(linalg.diagonal([x.inverse().value for x in diag]))
    return tuple(K), tuple(K_inv)


def sl2_simple_module(m: int, root_order: Optional[int] = None) -> QModule:
    """
    Simple U_q(sl2) module V(m) on v_0..v_m

    F v_k = v_{k+1}, E v_k = [k][m-k+1] v_{k-1}, K v_k = q^{m-2k} v_k.

    Args:
        m: Highest weight coordinate, m >= 0
        root_order: D; defaults to the root order of A1

    Returns:
        The (m+1)-dimensional module
    """
    if m < 0:
        raise CartanError(f"V(m) needs m >= 0, got {m}")
    cd = cartan_data("A", 1)
    base = default_root_order(cd)
    D = base if root_order is None else root_order
    if D % base:
        raise CartanError(f"root order {D} is not a multiple of {base}")

    n = m + 1
    weights = [Weight((m - 2 * k,)) for k in range(n)]
    E = linalg.from_entries(
        {(k - 1, k): (q_integer(k, 1, D) * q_integer(m - k + 1, 1, D)).value for k in range(1, n)},
        (n, n),
    )
    F = linalg.from_entries({(k + 1, k): linalg.DOMAIN.one for k in range(n - 1)}, (n, n))
    K, K_inv = k_matrices(weights, cd, D)
    return QModule(
        cartan=cd,
        root_order=D,
        E=(E,),
        F=(F,),
        K=K,
        K_inv=K_inv,
        weights=tuple(weights),
        label=f"V({m})",
    )


def _require_compatible(M: QModule, N: QModule):
    if M.cartan != N.cartan:
        raise CartanError(f"modules over {M.cartan.name} and {N.cartan.name} cannot be tensored")
    if M.root_order != N.root_order:
        raise CartanError(f"root orders differ: {M.root_order} and {N.root_order}")


def tensor_module(M: QModule, N: QModule) -> QModule:
    """
    M (x) N with Delta(E) = E(x)K + 1(x)E, Delta(F) = F(x)1 + K^-1(x)F, Delta(K) = K(x)K

    The basis is row-major: index a * dim N + b holds m_a (x) n_b.
    """
    _require_compatible(M, N)
    start = time.perf_counter()
    I_M = linalg.identity(M.dimension)
    I_N = linalg.identity(N.dimension)
    E, F, K, K_inv = [], [], [], []
    for i in range(M.rank):
        E.append(linalg.kron(M.E[i], N.K[i]).add(linalg.kron(I_M, N.E[i])))
        F.append(linalg.kron(M.F[i], I_N).add(linalg.kron(M.K_inv[i], N.F[i])))
        K.append(linalg.kron(M.K[i], N.K[i]))
        K_inv.append(linalg.kron(M.K_inv[i], N.K_inv[i]))
    weights = tuple(a + b for a in M.weights for b in N.weights)
    product = QModule(
        cartan=M.cartan,
        root_order=M.root_order,
        E=tuple(E),
        F=tuple(F),
        K=tuple(K),
        K_inv=tuple(K_inv),
        weights=weights,
        label=f"{M.label}⊗{N.label}",
    )
    metrics_logger.log_construction("tensor_module", product.dimension, (time.perf_counter() - start) * 1000)
    return product


def tensor_power(M: QModule, n: int) -> QModule:
    result = M
    for _ in range(n - 1):
        result = tensor_module(result, M)
    return result


def _serre_sum(X: Tuple[DomainMatrix, ...], i: int, j: int, M: QModule) -> DomainMatrix:
    cd = M.cartan
    a_ij = cd.cartan_matrix[i][j]
    d_i = cd.symmetrizer[i]
    top = 1 - a_ij
    total = linalg.zeros(M.dimension)
    for k in range(top + 1):
        coeff = q_binomial(top, k, d_i, M.root_order) * (-1) ** k
        word = [X[i]] * k + [X[j]] + [X[i]] * (top - k)
        term = linalg.matmul(*word) if len(word) > 1 else word[0]
        total = total.add(linalg.scale(term, coeff))
    return total


def _check_grading(M: QModule) -> Optional[str]:
    cd = M.cartan
    for i in range(1, M.rank + 1):
        alpha = simple_root_in_weight_basis(i, cd)
        expected_K = linalg.diagonal([k_scalar(w, i, cd, M.root_order).value for w in M.weights])
        problem = linalg.describe_difference(M.K[i - 1], expected_K, M.root_order)
        if problem:
            return f"K{i}: {problem}"
        for name, mat, shift in (("E", M.E[i - 1], alpha), ("F", M.F[i - 1], -alpha)):
            for (r, c) in linalg.entries(mat):
                if M.weights[r] - M.weights[c] != shift:
                    return (f"{name}{i} entry ({r}, {c}) maps weight {M.weights[c]} "
                            f"to weight {M.weights[r]}")
    return None


def verify_relations(M: QModule) -> RelationReport:
    """
    Check the defining relations of U_q(g) and the weight grading as matrix identities

    Args:
        M: Module to check

    Returns:
        RelationReport with one entry per relation family
    """
    cd = M.cartan
    D = M.root_order
    n = M.dimension
    I = linalg.identity(n)
    rank = M.rank

    def k_inverse():
        for i in range(rank):
            for left, right in ((M.K[i], M.K_inv[i]), (M.K_inv[i], M.K[i])):
                problem = linalg.describe_difference(left.matmul(right), I, D)
                if problem:
                    return f"K{i + 1}: {problem}"
        return None

    def k_commute():
        for i in range(rank):
            for j in range(i + 1, rank):
                if not linalg.is_zero(linalg.commutator(M.K[i], M.K[j])):
                    return f"K{i + 1} and K{j + 1} do not commute"
        return None

    def k_conjugates(X, sign, name):
        def check():
            for i in range(rank):
                for j in range(rank):
                    factor = q_power(sign * cd.symmetrizer[i] * cd.cartan_matrix[i][j], D)
                    lhs = linalg.matmul(M.K[i], X[j], M.K_inv[i])
                    problem = linalg.describe_difference(lhs, linalg.scale(X[j], factor), D)
                    if problem:
                        return f"K{i + 1} {name}{j + 1} K{i + 1}^-1: {problem}"
            return None
        return check

    def ef_commutator():
        for i in range(rank):
            q_i = q_power(cd.symmetrizer[i], D)
            for j in range(rank):
                lhs = linalg.commutator(M.E[i], M.F[j])
                if i == j:
                    rhs = linalg.scale(M.K[i].sub(M.K_inv[i]), (q_i - q_i.inverse()).inverse())
                else:
                    rhs = linalg.zeros(n)
                problem = linalg.describe_difference(lhs, rhs, D)
                if problem:
                    return f"[E{i + 1}, F{j + 1}]: {problem}"
        return None

    def serre(X, name):
        def check():
            for i in range(rank):
                for j in range(rank):
                    if i != j and not linalg.is_zero(_serre_sum(X, i, j, M)):
                        return f"q-Serre relation fails for {name}{i + 1}, {name}{j + 1}"
            return None
        return check

    checks = [
        run_check("k_inverse", k_inverse, n),
        run_check("k_commute", k_commute, n),
        run_check("k_conjugates_e", k_conjugates(M.E, 1, "E"), n),
        run_check("k_conjugates_f", k_conjugates(M.F, -1, "F"), n),
        run_check("ef_commutator", ef_commutator, n),
    ]
    if rank >= 2:
        checks.append(run_check("q_serre_e", serre(M.E, "E"), n))
        checks.append(run_check("q_serre_f", serre(M.F, "F"), n))
    else:
        checks.append(skipped("q_serre_e", "rank 1 has no q-Serre relations"))
        checks.append(skipped("q_serre_f", "rank 1 has no q-Serre relations"))
    checks.append(run_check("weight_grading", lambda: _check_grading(M), n))

    report = RelationReport(label=M.label, dimension=n, checks=checks)
    logger.info(f"Relations on {M.label or 'module'} (dim {n}): "
                f"{'pass' if report.passed else 'fail'}")
    return report


def highest_weight_vectors(M: QModule) -> List[HighestWeightVector]:
    """
    Basis of the joint kernel of the E_i, weight space by weight space

    Weight spaces are visited highest first and each kernel basis comes from the
    reduced row echelon form, so the choice is deterministic.
    """
    stacked = M.E[0]
    if M.rank > 1:
        stacked = stacked.vstack(*M.E[1:])
    vectors: List[HighestWeightVector] = []
    all_rows = list(range(stacked.shape[0]))
    for weight, indices in M.weight_spaces().items():
        block = stacked.extract(all_rows, indices)
        for kernel_vector in linalg.nullspace_rows(block):
            values = {(indices[r], 0): v for (r, _), v in linalg.entries(kernel_vector).items()}
            full = linalg.from_entries(values, (M.dimension, 1))
            vectors.append(HighestWeightVector(module=M, vector=full, weight=weight))
    logger.debug(f"{M.label}: {len(vectors)} highest-weight vectors")
    return vectors


def unique_highest_weight(M: QModule) -> Weight:
    """Highest weight of a simple module; errors when the module is not simple"""
    vectors = highest_weight_vectors(M)
    if len(vectors) != 1:
        raise ModuleFormatError(
            f"{M.label or 'module'} has {len(vectors)} highest-weight vectors; a simple module has one"
        )
    return vectors[0].weight
