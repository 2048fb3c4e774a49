"""
Braid group representations on V^{(x)m} induced by a braiding operator on V (x) V
"""
import time
import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from sympy.polys.matrices import DomainMatrix

from app.services import linalg
from app.services.checks import CheckResult, failed, first_failure, passed, run_check, skipped
from app.services.errors import (
    CertificationError,
    StrandMismatchError,
    UnsupportedConfigurationError,
)
from app.services.metrics_logger import MetricsLogger
from app.services.qarith import FieldElement
from app.services.qmodules import QModule

logger = logging.getLogger(__name__)
metrics_logger = MetricsLogger()


@dataclass(frozen=True)
class BraidWord:
    """Signed generator indices; -i stands for the inverse crossing sigma_i^-1"""

    strand_count: int
    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.strand_count < 2:
            raise StrandMismatchError(f"a braid needs at least 2 strands, got {self.strand_count}")
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for letter in self.letters:
            if letter == 0 or abs(letter) > self.strand_count - 1:
                raise StrandMismatchError(
                    f"letter {letter} is not a generator of B_{self.strand_count}"
                )

    @classmethod
    def parse(cls, text: str, strand_count: int) -> "BraidWord":
        """Whitespace separated signed integers, e.g. "1 2 -1"; empty text is the identity"""
        try:
            letters = tuple(int(part) for part in text.replace(",", " ").split())
        except ValueError:
            raise StrandMismatchError(f"braid word {text!r} is not a list of signed integers")
        return cls(strand_count, letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.strand_count != self.strand_count:
            raise StrandMismatchError(
                f"cannot compose braids on {self.strand_count} and {other.strand_count} strands"
            )
        return BraidWord(self.strand_count, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strand_count, tuple(-x for x in reversed(self.letters)))

    def __str__(self):
        return " ".join(str(x) for x in self.letters)


@dataclass(frozen=True, eq=False)
class BraidRep:
    """Certified generator images R_1..R_{m-1} on V^{(x)m} and their inverses"""

    strand_count: int
    base_dimension: int
    root_order: int
    generators: Tuple[DomainMatrix, ...]
    inverses: Tuple[DomainMatrix, ...]
    checks: Tuple[CheckResult, ...] = ()

    @property
    def dimension(self) -> int:
        return self.base_dimension ** self.strand_count

    def image(self, letter: int) -> DomainMatrix:
        return self.generators[letter - 1] if letter > 0 else self.inverses[-letter - 1]


def place_generator(r: DomainMatrix, m: int, i: int, dim_v: int) -> DomainMatrix:
    """R acting on the (i, i+1) tensor factors of V^{(x)m}"""
    if not 1 <= i <= m - 1:
        raise StrandMismatchError(f"generator index {i} out of range 1..{m - 1}")
    return linalg.place(r, dim_v ** (i - 1), dim_v ** (m - i - 1))


def _braid_relation(a: DomainMatrix, b: DomainMatrix, root_order: int) -> Optional[str]:
    return linalg.describe_difference(linalg.matmul(a, b, a), linalg.matmul(b, a, b), root_order)


def verify_yang_baxter(r: DomainMatrix, dim_v: int, root_order: int) -> CheckResult:
    """(R (x) 1)(1 (x) R)(R (x) 1) = (1 (x) R)(R (x) 1)(1 (x) R) on V^{(x)3}"""
    if r.shape != (dim_v * dim_v, dim_v * dim_v):
        return failed("yang_baxter", f"operator of shape {r.shape} does not act on a {dim_v}-dim square")
    r12 = place_generator(r, 3, 1, dim_v)
    r23 = place_generator(r, 3, 2, dim_v)
    return run_check("yang_baxter", lambda: _braid_relation(r12, r23, root_order), dim_v ** 3)


def verify_braid_relations(
    generators: Sequence[DomainMatrix], root_order: int, dimension: int
) -> List[CheckResult]:
    """Adjacent braid relations and far commutativity; details name the offending pair"""
    m = len(generators) + 1

    def adjacent():
        for i in range(len(generators) - 1):
            problem = _braid_relation(generators[i], generators[i + 1], root_order)
            if problem:
                return f"pair ({i + 1}, {i + 2}): {problem}"
        return None

    def far():
        for i in range(len(generators)):
            for j in range(i + 2, len(generators)):
                if not linalg.is_zero(linalg.commutator(generators[i], generators[j])):
                    return f"pair ({i + 1}, {j + 1}): generators do not commute"
        return None

    checks = []
    if m >= 3:
        checks.append(run_check("braid_relations", adjacent, dimension))
    else:
        checks.append(skipped("braid_relations", "two strands have a single generator"))
    if m >= 4:
        checks.append(run_check("far_commutativity", far, dimension))
    else:
        checks.append(skipped("far_commutativity", "needs at least 4 strands"))
    return checks


def _pair_from_detail(detail: str) -> Optional[Tuple[int, int]]:
    if detail.startswith("pair ("):
        inside = detail[len("pair ("):detail.index(")")]
        a, b = (int(x) for x in inside.split(","))
        return a, b
    return None


def build_representation(
    r: DomainMatrix,
    m: int,
    dim_v: int,
    root_order: int,
    r_inverse: Optional[DomainMatrix] = None,
) -> BraidRep:
    """
    Place R on every adjacent pair of V^{(x)m} and certify the braid relations

    Args:
        r: Braiding operator on V (x) V, already certified
        m: Strand count, at least 2
        dim_v: Dimension of V
        root_order: D of the entries
        r_inverse: Inverse of r; computed by elimination when omitted

    Returns:
        BraidRep with generator images and inverses

    Raises:
        CertificationError: a braid relation fails, naming the generator pair
    """
    if m < 2:
        raise StrandMismatchError(f"a braid needs at least 2 strands, got {m}")
    start = time.perf_counter()
    if r_inverse is None:
        r_inverse = linalg.inverse(r)
    problem = linalg.describe_difference(r.matmul(r_inverse), linalg.identity(dim_v * dim_v), root_order)
    if problem:
        raise CertificationError("invertibility", problem)

    generators = tuple(place_generator(r, m, i, dim_v) for i in range(1, m))
    inverses = tuple(place_generator(r_inverse, m, i, dim_v) for i in range(1, m))
    checks = verify_braid_relations(generators, root_order, dim_v ** m)
    failure = first_failure(checks)
    if failure is not None:
        logger.error(f"Error certifying braid representation: {failure.detail}")
        raise CertificationError(failure.name, failure.detail or "", _pair_from_detail(failure.detail or ""))

    elapsed_ms = (time.perf_counter() - start) * 1000
    metrics_logger.log_construction("braid_representation", dim_v ** m, elapsed_ms)
    logger.info(f"Certified braid representation on {m} strands, dimension {dim_v ** m}")
    return BraidRep(
        strand_count=m,
        base_dimension=dim_v,
        root_order=root_order,
        generators=generators,
        inverses=inverses,
        checks=tuple(checks),
    )


def evaluate(word: Union[BraidWord, str], rep: BraidRep) -> DomainMatrix:
    """
    Matrix of a braid word: the product of its letters' images, left to right

    Args:
        word: BraidWord or its text form
        rep: Certified representation

    Returns:
        Matrix on V^{(x)m}; the empty word gives the identity
    """
    if isinstance(word, str):
        word = BraidWord.parse(word, rep.strand_count)
    if word.strand_count != rep.strand_count:
        raise StrandMismatchError(
            f"word on {word.strand_count} strands applied to a {rep.strand_count}-strand representation"
        )
    result = linalg.identity(rep.dimension)
    for letter in word.letters:
        result = result.matmul(rep.image(letter))
    return result


def _same_module(a: QModule, b: QModule) -> bool:
    if a is b:
        return True
    if a.cartan != b.cartan or a.root_order != b.root_order or a.weights != b.weights:
        return False
    return all(
        linalg.first_difference(x, y) is None
        for (_, x), (_, y) in zip(a.generators(), b.generators())
    )


def require_distinct_labels(*modules: QModule):
    """Braidings are keyed by label, so one label must name one module"""
    seen: Dict[str, QModule] = {}
    for M in modules:
        other = seen.setdefault(M.label, M)
        if not _same_module(other, M):
            raise UnsupportedConfigurationError(
                f"two different modules share the label {M.label!r}; braidings cannot be told apart"
            )


def _lookup(
braidings: Mapping[Tuple[str, str], DomainMatrix], a: QModule, b: QModule) -> DomainMatrix:
    key = (a.label, b.label)
    if key not in braidings:
        raise UnsupportedConfigurationError(f"no braiding available for the pair {a.label}, {b.label}")
    return braidings[key]


def verify_hexagon_on_triple(
    U: QModule,
    V: QModule,
    W: QModule,
    braidings: Mapping[Tuple[str, str], DomainMatrix],
) -> List[CheckResult]:
    """
    Both hexagon identities for braidings keyed by (label, label)

    Needs c_{U,V}, c_{U,W}, c_{V,W}, c_{U,V(x)W} and c_{U(x)V,W}; tensor labels are
    written "a⊗b". A missing pair raises UnsupportedConfigurationError.
    """
    require_distinct_labels(U, V, W)
    du, dv, dw = U.dimension, V.dimension, W.dimension
    D = U.root_order
    c_uv = _lookup(braidings, U, V)
    c_uw = _lookup(braidings, U, W)
    c_vw = _lookup(braidings, V, W)
    vw = f"{V.label}⊗{W.label}"
    uv = f"{U.label}⊗{V.label}"
    for key in ((U.label, vw), (uv, W.label)):
        if key not in braidings:
            raise UnsupportedConfigurationError(f"no braiding available for the pair {key[0]}, {key[1]}")
    c_u_vw = braidings[(U.label, vw)]
    c_uv_w = braidings[(uv, W.label)]

    def left():
        composite = linalg.place(c_uw, dv, 1).matmul(linalg.place(c_uv, 1, dw))
        return linalg.describe_difference(c_u_vw, composite, D)

    def right():
        composite = linalg.place(c_uw, 1, dv).matmul(linalg.place(c_vw, du, 1))
        return linalg.describe_difference(c_uv_w, composite, D)

    dimension = du * dv * dw
    return [run_check("hexagon_left", left, dimension), run_check("hexagon_right", right, dimension)]


def verify_eigenvalue_preservation(rep: BraidRep, eigenvalues: Sequence[FieldElement]) -> CheckResult:
    """Every generator image is annihilated by prod (R_i - e) over the given eigenvalues"""
    distinct: List[FieldElement] = []
    for e in eigenvalues:
        if e not in distinct:
            distinct.append(e)
    n = rep.dimension
    identity = linalg.identity(n)

    def check():
        for i, g in enumerate(rep.generators, start=1):
            product = identity
            for e in distinct:
                product = product.matmul(g.sub(linalg.scale(identity, e.lift(rep.root_order))))
            if not linalg.is_zero(product):
                return f"generator {i} has an eigenvalue outside the spectrum"
        return None

    if not rep.generators:
        return passed("eigenvalue_preservation")
    return run_check("eigenvalue_preservation", check, n)
