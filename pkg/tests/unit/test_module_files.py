"""
Tests for reading and writing module files
"""
import json

import pytest

from app.services.errors import ModuleFormatError, RelationViolationError
from app.services.module_files import dump_module, load_module, module_to_text, write_module
from app.services.qmodules import tensor_module


def test_round_trip_is_byte_identical(tmp_path, v2):
    path = write_module(v2, tmp_path / "v2.json")
    loaded = load_module(path)
    assert loaded.dimension == 3
    assert loaded.label == "V(2)"
    assert module_to_text(loaded) == path.read_text(encoding="utf-8")


def test_round_trip_of_tensor_product(tmp_path, v1, v2):
    product = tensor_module(v1, v2)
    loaded = load_module(write_module(product, tmp_path / "product.json"))
    assert dump_module(loaded) == dump_module(product)


def test_entries_are_sorted(v2):
    model = dump_module(v2)
    for triples in model.generators.values():
        assert triples == sorted(triples)


def test_a2_vector_module_loads(a2_vector_file):
    M = load_module(a2_vector_file)
    assert M.rank == 2
    assert M.dimension == 3
    assert M.root_order == 6


def _edited(source, tmp_path, edit):
    data = json.loads(source.read_text(encoding="utf-8"))
    edit(data)
    path = tmp_path / "edited.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


def test_broken_ef_commutator_rejected(a2_vector_file, tmp_path):
    def scale_e1(data):
        data["generators"]["E1"] = [[0, 1, "2"]]

    path = _edited(a2_vector_file, tmp_path, scale_e1)
    with pytest.raises(RelationViolationError) as exc:
        load_module(path)
    assert exc.value.relation == "ef_commutator"

    M, report = load_module(path, strict=False)
    assert not report.passed
    assert report.failures()[0].name == "ef_commutator"


def test_missing_generator(a2_vector_file, tmp_path):
    path = _edited(a2_vector_file, tmp_path, lambda d: d["generators"].pop("Kinv2"))
    with pytest.raises(ModuleFormatError, match="Kinv2"):
        load_module(path)


def test_bad_root_order(a2_vector_file, tmp_path):
    def set_order(data):
        data["header"]["root_order"] = 4

    with pytest.raises(ModuleFormatError):
        load_module(_edited(a2_vector_file, tmp_path, set_order))


def test_entry_outside_matrix(a2_vector_file, tmp_path):
    def add_entry(data):
        data["generators"]["F1"].append([5, 0, "1"])

    with pytest.raises(ModuleFormatError):
        load_module(_edited(a2_vector_file, tmp_path, add_entry))


def test_unparseable_entry(a2_vector_file, tmp_path):
    def garble(data):
        data["generators"]["F1"] = [[1, 0, "q +* 1"]]

    with pytest.raises(ModuleFormatError):
        load_module(_edited(a2_vector_file, tmp_path, garble))


def test_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(ModuleFormatError):
        load_module(path)


def test_missing_file(tmp_path):
    with pytest.raises(ModuleFormatError):
        load_module(tmp_path / "absent.json")


def test_entry_with_python_code_is_rejected_without_running(a2_vector_file, tmp_path):
    marker = tmp_path / "marker"

    def inject(data):
        data["generators"]["F1"] = [[1, 0, f"__import__('pathlib').Path({str(marker)!r}).write_text('x') and q"]]

    with pytest.raises(ModuleFormatError):
        load_module(_edited(a2_vector_file, tmp_path, inject))
    assert not marker.exists()
