"""
Sparse exact matrices over Q(s): Kronecker products, flips, placements and comparisons

All matrices are sympy DomainMatrix objects in sparse (dict of dicts) format.
"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import QQ, Rational
from sympy.polys.matrices import DomainMatrix

from app.services.qarith import DOMAIN, FieldElement, render, to_domain

logger = logging.getLogger(__name__)

Entry = Tuple[int, int]


def zeros(rows: int, cols: Optional[int] = None, domain=DOMAIN) -> DomainMatrix:
    return DomainMatrix.zeros((rows, rows if cols is None else cols), domain)


def identity(n: int, domain=DOMAIN) -> DomainMatrix:
    return DomainMatrix.eye(n, domain)


def diagonal(entries: Sequence, domain=DOMAIN) -> DomainMatrix:
    n = len(entries)
    dod = {i: {i: e} for i, e in enumerate(entries) if e}
    return DomainMatrix.from_dod(dod, (n, n), domain)


def from_entries(entries: Dict[Entry, object], shape: Tuple[int, int], domain=DOMAIN) -> DomainMatrix:
    dod: Dict[int, Dict[int, object]] = {}
    for (r, c), value in entries.items():
        if value:
            dod.setdefault(r, {})[c] = value
    return DomainMatrix.from_dod(dod, shape, domain)


def column_vector(values: Sequence, domain=DOMAIN) -> DomainMatrix:
    return from_entries({(i, 0): v for i, v in enumerate(values)}, (len(values), 1), domain)


def columns(vectors: Sequence[DomainMatrix]) -> DomainMatrix:
    """Stack column vectors side by side"""
    first, *rest = vectors
    return first.hstack(*rest) if rest else first


def entries(m: DomainMatrix) -> Dict[Entry, object]:
    return {(r, c): v for r, row in m.to_dod().items() for c, v in row.items()}


def entry(m: DomainMatrix, r: int, c: int):
    return m.rep.getitem(r, c)


def kron(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    """Kronecker product with the first factor as the slow index"""
    ar, ac = a.shape
    br, bc = b.shape
    a_dod = a.to_dod()
    b_dod = b.to_dod()
    dod: Dict[int, Dict[int, object]] = {}
    for i, a_row in a_dod.items():
        for j, x in a_row.items():
            for k, b_row in b_dod.items():
                target = dod.setdefault(i * br + k, {})
                for l, y in b_row.items():
                    target[j * bc + l] = x * y
    return DomainMatrix.from_dod(dod, (ar * br, ac * bc), a.domain)


def kron_all(factors: Sequence[DomainMatrix]) -> DomainMatrix:
    result = factors[0]
    for f in factors[1:]:
        result = kron(result, f)
    return result


def place(op: DomainMatrix, left_dim: int, right_dim: int) -> DomainMatrix:
    """id_left (x) op (x) id_right"""
    result = op
    if left_dim > 1:
        result = kron(identity(left_dim, op.domain), result)
    if right_dim > 1:
        result = kron(result, identity(right_dim, op.domain))
    return result


def flip(dim_a: int, dim_b: int, domain=DOMAIN) -> DomainMatrix:
    """tau: A (x) B -> B (x) A, e_i (x) f_j -> f_j (x) e_i"""
    dod = {j * dim_a + i: {i * dim_b + j: domain.one} for i in range(dim_a) for j in range(dim_b)}
    return DomainMatrix.from_dod(dod, (dim_a * dim_b, dim_a * dim_b), domain)


def matmul(*factors: DomainMatrix) -> DomainMatrix:
    result = factors[0]
    for f in factors[1:]:
        result = result.matmul(f)
    return result


def add(*terms: DomainMatrix) -> DomainMatrix:
    result = terms[0]
    for t in terms[1:]:
        result = result.add(t)
    return result


def scale(m: DomainMatrix, scalar) -> DomainMatrix:
    if isinstance(scalar, FieldElement):
        scalar = scalar.value
    elif not m.domain.of_type(scalar):
        scalar = m.domain.from_sympy(Rational(scalar))
    return m.scalarmul(scalar)


def commutator(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    return a.matmul(b).sub(b.matmul(a))


def is_zero(m: DomainMatrix) -> bool:
    return not any(v for row in m.to_dod().values() for v in row.values())


def first_difference(a: DomainMatrix, b: DomainMatrix) -> Optional[Entry]:
    """Position of the first differing entry in row-major order, or None"""
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} and {b.shape}")
    diff = {r: {c: v for c, v in row.items() if v} for r, row in a.sub(b).to_dod().items()}
    diff = {r: row for r, row in diff.items() if row}
    if not diff:
        return None
    r = min(diff)
    return r, min(diff[r])


def describe_difference(a: DomainMatrix, b: DomainMatrix, root_order: int) -> Optional[str]:
    """None when equal, otherwise a description of the first differing entry"""
    pos = first_difference(a, b)
    if pos is None:
        return None
    r, c = pos
    if a.domain == DOMAIN:
        left, right = render(entry(a, r, c), root_order), render(entry(b, r, c), root_order)
    else:
        left, right = str(entry(a, r, c)), str(entry(b, r, c))
    return f"entry ({r}, {c}) differs: {left} vs {right}"


def inverse(m: DomainMatrix) -> DomainMatrix:
    return m.inv().to_sparse()


def rank(m: DomainMatrix) -> int:
    return m.rank()


def extends_span(vectors: Sequence[DomainMatrix], candidate: DomainMatrix) -> bool:
    """True when candidate is nonzero and independent of the given columns"""
    if is_zero(candidate):
        return False
    if not vectors:
        return True
    return columns(list(vectors) + [candidate]).rank() > len(vectors)


def nullspace_rows(m: DomainMatrix) -> List[DomainMatrix]:
    """Basis of the kernel as column vectors, from the reduced row echelon form"""
    if m.shape[0] == 0:
        basis = identity(m.shape[1], m.domain)
    else:
        basis = m.to_sparse().nullspace(divide_last=True)
    return [basis.extract([i], list(range(basis.shape[1]))).transpose().to_sparse()
            for i in range(basis.shape[0])]


def specialize_at_q1(m: DomainMatrix) -> DomainMatrix:
    """Entrywise evaluation at q = 1 into a rational matrix"""
    dod = {}
    for r, row in m.to_dod().items():
        for c, v in row.items():
            value = FieldElement(v, 1).evaluate_at_q1()
            if value != 0:
                dod.setdefault(r, {})[c] = QQ.from_sympy(value)
    return DomainMatrix.from_dod(dod, m.shape, QQ)


def to_text_rows(m: DomainMatrix, root_order: int) -> List[List[str]]:
    """Dense nested list of canonical entry text"""
    rows, cols = m.shape
    dod = m.to_dod()
    return [
        [render(dod[r][c], root_order) if r in dod and c in dod[r] else "0" for c in range(cols)]
        for r in range(rows)
    ]


def sparse_text_entries(m: DomainMatrix, root_order: int) -> List[Tuple[int, int, str]]:
    """Sorted (row, col, text) triples of the nonzero entries"""
    return [(r, c, render(v, root_order)) for (r, c), v in sorted(entries(m).items())]


def embed(values: Dict[Entry, object], shape: Tuple[int, int], root_order: int) -> DomainMatrix:
    """Build a matrix from FieldElement or rational values"""
    converted = {}
    for pos, v in values.items():
        if isinstance(v, FieldElement):
            converted[pos] = v.lift(root_order).value if v.root_order != root_order else v.value
        else:
            converted[pos] = to_domain(v)
    return from_entries(converted, shape)
