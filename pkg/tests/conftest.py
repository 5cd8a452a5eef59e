# -*- coding: utf-8 -*-
import json

import pytest

from bouquet_o.bouquet_geometry import slice_category
from bouquet_o.exact_polyhedra import IntegerLattice
from bouquet_o.hypertoric_o import QuantizedPolarizedArrangement


@pytest.fixture
def toy_quantized():
    """h1 = c, h2 = 1 + 2c；𝒫 = {-+, --}，-- 的顶点 c = -1/2 不是格点"""
    lattice = IntegerLattice.from_rows([[1, 2]])
    return QuantizedPolarizedArrangement(lattice, (0, 1), (1,))


@pytest.fixture
def toy_arrangement_file(tmp_path):
    path = tmp_path / "toy.json"
    data = {
        "ambient_dim": 2,
        "lattice_basis": [[1, 2]],
        "base_point": ["0", "1"],
        "xi": ["1"],
        "eta": [0, 1],
    }
    path.write_text(json.dumps(data, ensure_ascii=False), encoding="utf-8")
    return path


@pytest.fixture(scope="session")
def slice_two():
    return slice_category(2, -2)


def named(category, vectors):
    return {category.names[v] for v in vectors}
