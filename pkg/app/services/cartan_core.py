"""
Root system and weight lattice arithmetic for Lie types A, B and D
"""
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import lcm
from typing import Dict, List, Tuple

from sympy import Matrix, Rational

from app.config import LIE_TYPE_CONFIGS
from app.services.errors import CartanError, DominanceError

logger = logging.getLogger(__name__)


class LieType(str, Enum):
    A = "A"
    B = "B"
    D = "D"


@dataclass(frozen=True)
class Weight:
    """Integer coordinates in the fundamental weight basis"""

    coords: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls((0,) * rank)

    @property
    def rank(self) -> int:
        return len(self.coords)

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def __add__(self, other: "Weight") -> "Weight":
        _same_rank(self, other)
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        _same_rank(self, other)
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-c for c in self.coords))

    def __mul__(self, k: int) -> "Weight":
        return Weight(tuple(k * c for c in self.coords))

    __rmul__ = __mul__

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def _same_rank(a: Weight, b: Weight):
    if a.rank != b.rank:
        raise CartanError(f"weight lengths differ: {a.rank} and {b.rank}")


@dataclass(frozen=True)
class CartanData:
    """Cartan matrix A, symmetrizer d and the symmetrized inverse DA^-1"""

    lie_type: LieType
    rank: int
    cartan_matrix: Tuple[Tuple[int, ...], ...]
    symmetrizer: Tuple[int, ...]
    da_inverse: Tuple[Tuple[Rational, ...], ...]

    def __post_init__(self):
        A = Matrix(self.cartan_matrix)
        D = Matrix.diag(*self.symmetrizer)
        for i in range(self.rank):
            if A[i, i] != 2:
                raise CartanError(f"diagonal entry a_{i + 1}{i + 1} = {A[i, i]} is not 2")
            for j in range(self.rank):
                if i != j and A[i, j] > 0:
                    raise CartanError(f"off-diagonal entry a_{i + 1}{j + 1} is positive")
        if D * A != (D * A).T:
            raise CartanError("diag(d) A is not symmetric")
        if Matrix(self.da_inverse) * A != D:
            raise CartanError("DA^-1 A does not reproduce D")

    @property
    def name(self) -> str:
        return f"{self.lie_type.value}{self.rank}"

    def matrix(self) -> Matrix:
        return Matrix(self.cartan_matrix)

    def check_weight(self, weight: Weight) -> Weight:
        if weight.rank != self.rank:
            raise CartanError(
                f"weight {list(weight.coords)} has length {weight.rank}, expected {self.rank}"
            )
        return weight


def _cartan_matrix(lie_type: LieType, rank: int) -> List[List[int]]:
    A = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(rank)] for i in range(rank)]
    n = rank - 1
    if lie_type == LieType.B:
        A[n][n - 1] = -2
    elif lie_type == LieType.D:
        # fork: the last node hangs off node n-2 instead of n-1
        A[n - 1][n] = A[n][n - 1] = 0
        A[n - 2][n] = A[n][n - 2] = -1
    return A


def _symmetrizer(lie_type: LieType, rank: int) -> List[int]:
    if lie_type == LieType.B:
        return [2] * (rank - 1) + [1]
    return [1] * rank


@lru_cache(maxsize=None)
def cartan_data(lie_type, rank: int) -> CartanData:
    """
    Build the Cartan data of a supported Lie type

    Args:
        lie_type: "A", "B" or "D"
        rank: Rank, at least 1 for A, 2 for B and 3 for D

    Returns:
        CartanData with A, d and DA^-1
    """
    try:
        lie_type = LieType(str(getattr(lie_type, "value", lie_type)).upper())
    except ValueError:
        raise CartanError(
            f"unsupported Lie type {lie_type!r}; supported types are "
            f"{', '.join(LIE_TYPE_CONFIGS)}"
        )
    min_rank = LIE_TYPE_CONFIGS[lie_type.value]["min_rank"]
    if not isinstance(rank, int) or rank < min_rank:
        raise CartanError(f"type {lie_type.value} needs rank >= {min_rank}, got {rank}")

    A = _cartan_matrix(lie_type, rank)
    d = _symmetrizer(lie_type, rank)
    da_inv = Matrix.diag(*d) * Matrix(A).inv()
    logger.debug(f"Built Cartan data {lie_type.value}{rank}")
    return CartanData(
        lie_type=lie_type,
        rank=rank,
        cartan_matrix=tuple(tuple(row) for row in A),
        symmetrizer=tuple(d),
        da_inverse=tuple(tuple(Rational(da_inv[i, j]) for j in range(rank)) for i in range(rank)),
    )


def weight_inner_product(lam: Weight, mu: Weight, cd: CartanData) -> Rational:
    """<lam, mu> = sum_ij (DA^-1)_ij lam_i mu_j"""
    cd.check_weight(lam)
    cd.check_weight(mu)
    return sum(
        (cd.da_inverse[i][j] * lam.coords[i] * mu.coords[j]
         for i in range(cd.rank) for j in range(cd.rank)),
        Rational(0),
    )


def fundamental_weight(i: int, cd: CartanData) -> Weight:
    if not 1 <= i <= cd.rank:
        raise CartanError(f"index {i} out of range 1..{cd.rank}")
    return Weight(tuple(1 if j == i - 1 else 0 for j in range(cd.rank)))


def simple_root_in_weight_basis(i: int, cd: CartanData) -> Weight:
    """alpha_i = sum_j a_ji omega_j, the i-th column of A"""
    if not 1 <= i <= cd.rank:
        raise CartanError(f"index {i} out of range 1..{cd.rank}")
    return Weight(tuple(cd.cartan_matrix[j][i - 1] for j in range(cd.rank)))


def simple_roots(cd: CartanData) -> Tuple[Weight, ...]:
    return tuple(simple_root_in_weight_basis(i, cd) for i in range(1, cd.rank + 1))


def weyl_vector(cd: CartanData) -> Weight:
    return Weight((1,) * cd.rank)


def weyl_vector_coefficients(cd: CartanData) -> Tuple[Rational, ...]:
    """b with A^T b = d, i.e. b_i = sum_j (A^-1)_ji d_j"""
    A_inv = cd.matrix().inv()
    return tuple(
        sum((A_inv[j, i] * cd.symmetrizer[j] for j in range(cd.rank)), Rational(0))
        for i in range(cd.rank)
    )


def casimir_eigenvalue(lam: Weight, cd: CartanData) -> Rational:
    """<lam, lam + 2 rho> on the irreducible module of highest weight lam"""
    cd.check_weight(lam)
    if not lam.is_dominant():
        raise DominanceError(lam.coords, "casimir_eigenvalue")
    return weight_inner_product(lam, lam + 2 * weyl_vector(cd), cd)


def root_order(cd: CartanData) -> int:
    """D = 2 lcm(denominators of DA^-1); every exponent in use is a power of q^(1/D)"""
    denominators = [entry.q for row in cd.da_inverse for entry in row]
    return 2 * lcm(*denominators)


def parse_weight(text: str, cd: CartanData) -> Weight:
    """Parse comma-separated integer coordinates such as "1,0" """
    try:
        coords = tuple(int(part) for part in text.replace(" ", "").split(",") if part != "")
    except ValueError:
        raise CartanError(f"weight {text!r} is not a comma-separated list of integers")
    return cd.check_weight(Weight(coords))


def root_coordinates(weight: Weight, cd: CartanData) -> Tuple[Rational, ...]:
    """Coordinates of a weight in the simple root basis (A^-1 applied to the coords)"""
    solved = cd.matrix().inv() * Matrix(weight.coords)
    return tuple(Rational(x) for x in solved)


def is_in_positive_root_cone(weight: Weight, cd: CartanData) -> bool:
    """True when weight is a non-negative integer combination of simple roots"""
    return all(c.q == 1 and c >= 0 for c in root_coordinates(weight, cd))


def reflect(weight: Weight, i: int, cd: CartanData) -> Weight:
    """Simple reflection s_i(mu) = mu - mu_i alpha_i"""
    return weight - weight.coords[i - 1] * simple_root_in_weight_basis(i, cd)


def dominant_conjugate(weight: Weight, cd: CartanData) -> Weight:
    """Move a weight into the dominant chamber by simple reflections"""
    cd.check_weight(weight)
    current = weight
    while not current.is_dominant():
        i = next(k for k, c in enumerate(current.coords) if c < 0)
        current = reflect(current, i + 1, cd)
    return current


@lru_cache(maxsize=None)
def positive_roots(cd: CartanData) -> Tuple[Weight, ...]:
    """
    Positive roots level by level

    beta + alpha_i is a root exactly when the alpha_i-string through beta extends
    upwards: with p the number of steps down, p - <beta, alpha_i^vee> > 0.
    """
    alphas = simple_roots(cd)
    known: Dict[Weight, int] = {a: 1 for a in alphas}
    level = list(alphas)
    height = 1
    while level:
        height += 1
        next_level: List[Weight] = []
        for beta in level:
            for i, alpha in enumerate(alphas):
                candidate = beta + alpha
                if candidate in known:
                    continue
                p = 0
                while beta - (p + 1) * alpha in known:
                    p += 1
                if p - beta.coords[i] > 0:
                    known[candidate] = height
                    next_level.append(candidate)
        level = next_level
    roots = sorted(known, key=lambda w: (known[w], w.coords))
    logger.debug(f"{cd.name} has {len(roots)} positive roots")
    return tuple(roots)


def weyl_dimension(lam: Weight, cd: CartanData) -> int:
    """dim V(lam) = prod over positive roots of <lam + rho, beta> / <rho, beta>"""
    cd.check_weight(lam)
    if not lam.is_dominant():
        raise DominanceError(lam.coords, "weyl_dimension")
    rho = weyl_vector(cd)
    shifted = lam + rho
    result = Rational(1)
    for beta in positive_roots(cd):
        result *= weight_inner_product(shifted, beta, cd) / weight_inner_product(rho, beta, cd)
    return int(result)


def weight_sort_key(weight: Weight, cd: CartanData) -> Tuple:
    """Higher weights first: by <mu, rho> descending, then coordinates descending"""
    height = weight_inner_product(weight, weyl_vector(cd), cd)
    return (-height, tuple(-c for c in weight.coords))


def check_dominant(weight: Weight, cd: CartanData, operation: str) -> Weight:
    cd.check_weight(weight)
    if not weight.is_dominant():
        raise DominanceError(weight.coords, operation)
    return weight
