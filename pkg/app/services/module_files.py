"""
Module Files - Reads and writes explicit U_q(g) modules in the JSON module file format
"""
import logging
from pathlib import Path
from typing import Dict, List, Tuple, Union

from pydantic import BaseModel, Field, ValidationError

from app.services import linalg
from app.services.cartan_core import Weight, cartan_data, root_order as default_root_order
from app.services.errors import (
    BraidCalcError,
    FieldArithmeticError,
    ModuleFormatError,
    RelationViolationError,
)
from app.services.qarith import FieldElement
from app.services.qmodules import QModule, RelationReport, verify_relations

logger = logging.getLogger(__name__)

SparseEntry = Tuple[int, int, str]


class ModuleHeader(BaseModel):
    """Ambient data of a module file"""
    lie_type: str
    rank: int = Field(ge=1)
    root_order: int = Field(ge=1)
    dimension: int = Field(ge=1)


class ModuleFile(BaseModel):
    """
    On-disk form of a QModule

    weights[k] is the weight of basis vector k; generators maps E1, F1, K1, Kinv1, ...
    to sorted (row, col, canonical text) triples of the nonzero entries.
    """
    header: ModuleHeader
    label: str = ""
    weights: List[List[int]]
    generators: Dict[str, List[SparseEntry]]


def generator_names(rank: int) -> List[str]:
    names = []
    for i in range(1, rank + 1):
        names.extend([f"E{i}", f"F{i}", f"K{i}", f"Kinv{i}"])
    return names


def dump_module(M: QModule) -> ModuleFile:
    """
    Convert a module into its file model

    Args:
        M: Module to serialize

    Returns:
        ModuleFile with entries in canonical text, sorted by (row, col)
    """
    return ModuleFile(
        header=ModuleHeader(
            lie_type=M.cartan.lie_type.value,
            rank=M.rank,
            root_order=M.root_order,
            dimension=M.dimension,
        ),
        label=M.label,
        weights=[list(w.coords) for w in M.weights],
        generators={
            name: linalg.sparse_text_entries(mat, M.root_order) for name, mat in M.generators()
        },
    )


def module_to_text(M: QModule) -> str:
    return dump_module(M).model_dump_json(indent=2) + "\n"


def write_module(M: QModule, file_path: Union[str, Path]) -> Path:
    path = Path(file_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(module_to_text(M), encoding="utf-8")
    logger.info(f"Wrote module {M.label or '(unlabelled)'} of dimension {M.dimension} to {path}")
    return path


def _parse_matrix(name: str, triples: List[SparseEntry], n: int, D: int):
    values = {}
    for r, c, text in triples:
        if not (0 <= r < n and 0 <= c < n):
            raise ModuleFormatError(f"{name} entry ({r}, {c}) lies outside a {n}x{n} matrix")
        if (r, c) in values:
            raise ModuleFormatError(f"{name} entry ({r}, {c}) appears twice")
        try:
            values[(r, c)] = FieldElement.parse(text, D).value
        except FieldArithmeticError as e:
            raise ModuleFormatError(f"{name} entry ({r}, {c}): {str(e)}") from e
    return linalg.from_entries(values, (n, n))


def module_from_file_model(data: ModuleFile) -> QModule:
    """Build a QModule from a parsed file model without checking relations"""
    header = data.header
    cd = cartan_data(header.lie_type, header.rank)
    base = default_root_order(cd)
    if header.root_order % base:
        raise ModuleFormatError(
            f"root order {header.root_order} is not a multiple of {base}, the root order of {cd.name}"
        )
    n = header.dimension
    if len(data.weights) != n:
        raise ModuleFormatError(f"{len(data.weights)} weights listed for dimension {n}")

    expected = generator_names(cd.rank)
    missing = [g for g in expected if g not in data.generators]
    extra = sorted(set(data.generators) - set(expected))
    if missing:
        raise ModuleFormatError(f"missing generators: {', '.join(missing)}")
    if extra:
        raise ModuleFormatError(f"unknown generators: {', '.join(extra)}")

    mats = {g: _parse_matrix(g, data.generators[g], n, header.root_order) for g in expected}
    try:
        weights = tuple(cd.check_weight(Weight(tuple(w))) for w in data.weights)
    except BraidCalcError as e:
        raise ModuleFormatError(f"bad weight table: {str(e)}") from e

    return QModule(
        cartan=cd,
        root_order=header.root_order,
        E=tuple(mats[f"E{i}"] for i in range(1, cd.rank + 1)),
        F=tuple(mats[f"F{i}"] for i in range(1, cd.rank + 1)),
        K=tuple(mats[f"K{i}"] for i in range(1, cd.rank + 1)),
        K_inv=tuple(mats[f"Kinv{i}"] for i in range(1, cd.rank + 1)),
        weights=weights,
        label=data.label,
    )


def parse_module_text(text: str) -> ModuleFile:
    try:
        return ModuleFile.model_validate_json(text)
    except ValidationError as e:
        raise ModuleFormatError(f"invalid module file: {str(e)}") from e


def load_module(file_path: Union[str, Path], strict: bool = True):
    """
    Load a module file and verify the defining relations

    Args:
        file_path: Path to the JSON module file
        strict: Raise on the first failed relation; otherwise return the report too

    Returns:
        The module, or (module, RelationReport) when strict is False
    """
    path = Path(file_path)
    if not path.is_file():
        raise ModuleFormatError(f"module file {path} does not exist")
    try:
        M = module_from_file_model(parse_module_text(path.read_text(encoding="utf-8")))
    except BraidCalcError as e:
        logger.error(f"Error loading module file {path.name}: {str(e)}")
        raise

    report: RelationReport = verify_relations(M)
    logger.info(f"Loaded {M.label or path.name}: {M.cartan.name}, dimension {M.dimension}")
    if not strict:
        return M, report
    failures = report.failures()
    if failures:
        first = failures[0]
        raise RelationViolationError(first.name, first.detail or "")
    return M
