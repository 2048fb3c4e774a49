"""
Classical sl2 shadow: Casimir element, canonical 2-tensor and infinitesimal braid
relations, and the first-order expansion of the squared braiding at q = e^h
"""
import logging
from dataclasses import dataclass
from itertools import permutations
from typing import List, Optional, Tuple

from sympy import QQ, Rational
from sympy.polys.matrices import DomainMatrix

from app.services import linalg
from app.services.checks import CheckResult, run_check, skipped
from app.services.errors import ConsistencyError, UnsupportedConfigurationError
from app.services.qarith import FieldElement, expand_at_q_eq_exp_h
from app.services.qmodules import QModule

logger = logging.getLogger(__name__)

HALF = QQ(1, 2)


@dataclass(frozen=True, eq=False)
class ClassicalModule:
    """Rational matrices for E, F, H of sl2"""

    E: DomainMatrix
    F: DomainMatrix
    H: DomainMatrix
    label: str = ""

    @property
    def dimension(self) -> int:
        return self.H.shape[0]

    def generators(self) -> List[Tuple[str, DomainMatrix]]:
        return [("E", self.E), ("F", self.F), ("H", self.H)]


def classical_sl2_module(m: int) -> ClassicalModule:
    """
    V(m) of sl2 on v_0..v_m: F v_k = v_{k+1}, E v_k = k(m-k+1) v_{k-1}, H v_k = (m-2k) v_k
    """
    if m < 0:
        raise ValueError(f"V(m) needs m >= 0, got {m}")
    n = m + 1
    E = linalg.from_entries({(k - 1, k): QQ(k * (m - k + 1)) for k in range(1, n)}, (n, n), QQ)
    F = linalg.from_entries({(k + 1, k): QQ(1) for k in range(n - 1)}, (n, n), QQ)
    H = linalg.diagonal([QQ(m - 2 * k) for k in range(n)], QQ)
    return ClassicalModule(E=E, F=F, H=H, label=f"V({m})")


def classical_shadow(M: QModule) -> ClassicalModule:
    """E and F at q = 1 with H read from the weight grading; rank 1 only"""
    if M.rank != 1:
        raise UnsupportedConfigurationError(
            f"classical shadows are built for rank 1 only, got {M.cartan.name}"
        )
    return ClassicalModule(
        E=linalg.specialize_at_q1(M.E[0]),
        F=linalg.specialize_at_q1(M.F[0]),
        H=linalg.diagonal([QQ(w.coords[0]) for w in M.weights], QQ),
        label=M.label,
    )


def verify_classical_relations(M: ClassicalModule) -> CheckResult:
    """[H,E] = 2E, [H,F] = -2F, [E,F] = H"""
    def check():
        identities = (
            ("[H,E] = 2E", linalg.commutator(M.H, M.E), linalg.scale(M.E, 2)),
            ("[H,F] = -2F", linalg.commutator(M.H, M.F), linalg.scale(M.F, -2)),
            ("[E,F] = H", linalg.commutator(M.E, M.F), M.H),
        )
        for name, lhs, rhs in identities:
            problem = linalg.describe_difference(lhs, rhs, 1)
            if problem:
                return f"{name}: {problem}"
        return None
    return run_check("classical_relations", check, M.dimension)


def classical_tensor(M: ClassicalModule, N: ClassicalModule) -> ClassicalModule:
    """Primitive coproduct x (x) 1 + 1 (x) x"""
    I_M = linalg.identity(M.dimension, QQ)
    I_N = linalg.identity(N.dimension, QQ)

    def delta(a, b):
        return linalg.kron(a, I_N).add(linalg.kron(I_M, b))

    return ClassicalModule(
        E=delta(M.E, N.E),
        F=delta(M.F, N.F),
        H=delta(M.H, N.H),
        label=f"{M.label}⊗{N.label}",
    )


def casimir_operator(M: ClassicalModule) -> DomainMatrix:
    """C = EF + FE + H^2/2"""
    return linalg.add(
        M.E.matmul(M.F),
        M.F.matmul(M.E),
        linalg.scale(M.H.matmul(M.H), HALF),
    )


def verify_casimir_scalar(M: ClassicalModule, m: int) -> CheckResult:
    """C acts on the classical V(m) by m(m+2)/2"""
    expected = linalg.scale(linalg.identity(M.dimension, QQ), QQ(m * (m + 2), 2))
    return run_check(
        "casimir_scalar",
        lambda: linalg.describe_difference(casimir_operator(M), expected, 1),
        M.dimension,
    )


def verify_casimir_centrality(M: ClassicalModule, N: ClassicalModule) -> CheckResult:
    """The Casimir of M (x) N commutes with the tensor product action"""
    MN = classical_tensor(M, N)
    C = casimir_operator(MN)

    def check():
        for name, action in MN.generators():
            if not linalg.is_zero(linalg.commutator(C, action)):
                return f"C does not commute with {name} on {MN.label}"
        return None
    return run_check("casimir_centrality", check, MN.dimension)


@dataclass(frozen=True, eq=False)
class TwoTensor:
    """
    sum_k c_k X_k (x) Y_k with X_k acting on the left factor and Y_k on the right

    Keeping the terms lets the tensor be placed on any pair of factors of M^{(x)n}.
    """

    terms: Tuple[Tuple[Rational, DomainMatrix, DomainMatrix], ...]
    left_dim: int
    right_dim: int

    @property
    def matrix(self) -> DomainMatrix:
        total = linalg.zeros(self.left_dim * self.right_dim, domain=QQ)
        for c, X, Y in self.terms:
            total = total.add(linalg.scale(linalg.kron(X, Y), c))
        return total

    def placed(self, n: int, i: int, j: int) -> DomainMatrix:
        """t_ij on M^{(x)n}: X on factor i, Y on factor j (1-based, i != j)"""
        if self.left_dim != self.right_dim:
            raise ConsistencyError("placement needs a 2-tensor on a square M (x) M")
        d = self.left_dim
        identity = linalg.identity(d, QQ)
        total = linalg.zeros(d ** n, domain=QQ)
        for c, X, Y in self.terms:
            factors = [identity] * n
            factors[i - 1] = X
            factors[j - 1] = Y
            total = total.add(linalg.scale(linalg.kron_all(factors), c))
        return total

    def flipped(self) -> "TwoTensor":
        """tau t tau^-1 on N (x) M"""
        return TwoTensor(
            terms=tuple((c, Y, X) for c, X, Y in self.terms),
            left_dim=self.right_dim,
            right_dim=self.left_dim,
        )


def dual_basis_two_tensor(M: ClassicalModule, N: ClassicalModule) -> TwoTensor:
    """E (x) F + F (x) E + H (x) H / 2"""
    return TwoTensor(
        terms=((QQ(1), M.E, N.F), (QQ(1), M.F, N.E), (HALF, M.H, N.H)),
        left_dim=M.dimension,
        right_dim=N.dimension,
    )


def casimir_two_tensor(M: ClassicalModule, N: ClassicalModule) -> TwoTensor:
    """
    Canonical 2-tensor t on M (x) N

    Args:
        M: Left factor
        N: Right factor

    Returns:
        t in dual-basis form, after checking it equals (Delta C - C (x) 1 - 1 (x) C)/2

    Raises:
        ConsistencyError: the two forms disagree
    """
    t = dual_basis_two_tensor(M, N)
    C_M = casimir_operator(M)
    C_N = casimir_operator(N)
    coproduct_form = linalg.scale(
        casimir_operator(classical_tensor(M, N))
        .sub(linalg.kron(C_M, linalg.identity(N.dimension, QQ)))
        .sub(linalg.kron(linalg.identity(M.dimension, QQ), C_N)),
        HALF,
    )
    problem = linalg.describe_difference(coproduct_form, t.matrix, 1)
    if problem:
        logger.error(f"Error computing the 2-tensor on {M.label}⊗{N.label}: {problem}")
        raise ConsistencyError(f"2-tensor forms disagree: {problem}")
    return t


def verify_two_tensor_forms(M: ClassicalModule, N: ClassicalModule) -> CheckResult:
    """Coproduct and dual-basis forms of t agree and t is flip symmetric"""
    def check():
        t = casimir_two_tensor(M, N)
        s = linalg.flip(M.dimension, N.dimension, QQ)
        conjugated = linalg.matmul(s, t.matrix, linalg.inverse(s))
        problem = linalg.describe_difference(conjugated, t.flipped().matrix, 1)
        return f"flip symmetry: {problem}" if problem else None
    return run_check("two_tensor_forms", check, M.dimension * N.dimension)


def verify_infinitesimal_braid_relations(t: TwoTensor, n: int) -> List[CheckResult]:
    """
    Symmetry, locality and mixed commutator relations for t placed on M^{(x)n}

    Args:
        t: 2-tensor on M (x) M
        n: Number of tensor factors, at least 3

    Returns:
        One check per relation family
    """
    if n < 3:
        raise ValueError(f"infinitesimal braid relations need n >= 3, got {n}")
    dimension = t.left_dim ** n
    cache = {}

    def t_(i, j):
        if (i, j) not in cache:
            cache[(i, j)] = t.placed(n, i, j)
        return cache[(i, j)]

    indices = range(1, n + 1)

    def symmetry():
        for i in indices:
            for j in indices:
                if i < j:
                    problem = linalg.describe_difference(t_(i, j), t_(j, i), 1)
                    if problem:
                        return f"t_{i}{j} != t_{j}{i}: {problem}"
        return None

    def locality():
        for i, j, k, l in permutations(indices, 4):
            if i < j and k < l and i < k:
                if not linalg.is_zero(linalg.commutator(t_(i, j), t_(k, l))):
                    return f"[t_{i}{j}, t_{k}{l}] != 0"
        return None

    def mixed():
        for i, j, k in permutations(indices, 3):
            if not linalg.is_zero(linalg.commutator(t_(i, j), t_(i, k).add(t_(j, k)))):
                return f"[t_{i}{j}, t_{i}{k} + t_{j}{k}] != 0"
        return None

    checks = [run_check("inf_braid_symmetry", symmetry, dimension)]
    if n >= 4:
        checks.append(run_check("inf_braid_locality", locality, dimension))
    else:
        checks.append(skipped("inf_braid_locality", "disjoint pairs need n >= 4"))
    checks.append(run_check("inf_braid_mixed", mixed, dimension))
    return checks


def verify_infinitesimal_braiding_coherence(
    U: ClassicalModule, V: ClassicalModule, W: ClassicalModule
) -> CheckResult:
    """
    t_{U,V(x)W} = t_{U,V} (x) 1 + (s (x) 1)^-1 (1 (x) t_{U,W}) (s (x) 1) and
    t_{U(x)V,W} = 1 (x) t_{V,W} + (1 (x) s)^-1 (t_{U,W} (x) 1) (1 (x) s), s the flip
    """
    du, dv, dw = U.dimension, V.dimension, W.dimension

    def check():
        s_uv = linalg.place(linalg.flip(du, dv, QQ), 1, dw)
        lhs = casimir_two_tensor(U, classical_tensor(V, W)).matrix
        rhs = linalg.place(casimir_two_tensor(U, V).matrix, 1, dw).add(
            linalg.matmul(
                linalg.inverse(s_uv),
                linalg.place(casimir_two_tensor(U, W).matrix, dv, 1),
                s_uv,
            )
        )
        problem = linalg.describe_difference(lhs, rhs, 1)
        if problem:
            return f"t_(U,V⊗W): {problem}"

        s_vw = linalg.place(linalg.flip(dv, dw, QQ), du, 1)
        lhs = casimir_two_tensor(classical_tensor(U, V), W).matrix
        rhs = linalg.place(casimir_two_tensor(V, W).matrix, du, 1).add(
            linalg.matmul(
                linalg.inverse(s_vw),
                linalg.place(casimir_two_tensor(U, W).matrix, 1, dv),
                s_vw,
            )
        )
        problem = linalg.describe_difference(lhs, rhs, 1)
        return f"t_(U⊗V,W): {problem}" if problem else None

    return run_check("inf_braiding_coherence", check, du * dv * dw)


def first_order_coefficients(r_squared: DomainMatrix, root_order: int, order: int = 2) -> List[DomainMatrix]:
    """Rational matrices c_0, ..., c_order of the entrywise expansion at q = e^h"""
    rows, cols = r_squared.shape
    coefficient_entries = [dict() for _ in range(order + 1)]
    for pos, v in linalg.entries(r_squared).items():
        series = expand_at_q_eq_exp_h(FieldElement(v, root_order), order)
        for j in range(order + 1):
            c = series.coefficient(j)
            if c != 0:
                coefficient_entries[j][pos] = QQ.from_sympy(c)
    return [linalg.from_entries(e, (rows, cols), QQ) for e in coefficient_entries]


def verify_first_order_expansion(
    r: DomainMatrix, t: TwoTensor, root_order: int, order: int = 2
) -> CheckResult:
    """
    R^2 = 1 + 2 h t mod h^2 at q = e^h

    Args:
        r: Braiding operator on V (x) V
        t: Canonical 2-tensor on the classical shadow of V (x) V, same basis
        root_order: D of the entries of r
        order: Truncation order of the series expansion

    Returns:
        CheckResult comparing the constant term with I and the h term with 2t
    """
    n = r.shape[0]
    if t.left_dim * t.right_dim != n:
        raise ConsistencyError(
            f"basis mismatch: braiding on dimension {n}, 2-tensor on {t.left_dim * t.right_dim}"
        )

    def check():
        c = first_order_coefficients(r.matmul(r), root_order, order)
        problem = linalg.describe_difference(c[0], linalg.identity(n, QQ), 1)
        if problem:
            return f"order 0: {problem}"
        problem = linalg.describe_difference(c[1], linalg.scale(t.matrix, 2), 1)
        return f"order 1: {problem}" if problem else None

    return run_check("first_order_expansion", check, n)
