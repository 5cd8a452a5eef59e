# -*- coding: utf-8 -*-
"""
输入输出格式：排列 JSON 文件、JSON/TSV/DOT 文本
"""

import dataclasses
import json
import logging
from collections.abc import Mapping
from enum import Enum
from fractions import Fraction
from pathlib import Path

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator

from bouquet_o.errors import UserInputError
from bouquet_o.exact_polyhedra import IntegerLattice, format_rational, to_rational
from bouquet_o.hypertoric_o import PolarizedArrangement, QuantizedPolarizedArrangement, SignVector

LOGGER = logging.getLogger(__name__)


class ArrangementFile(BaseModel):
    """排列文件：有理数一律写成 "p/q" 字符串"""

    model_config = ConfigDict(extra="forbid")

    ambient_dim: int
    lattice_basis: list[list[int]]
    base_point: list[str]
    xi: list[str]
    eta: list[int] | None = None
    orientation: int = 1

    @field_validator("base_point", "xi")
    @classmethod
    def _parse_rationals(cls, values):
        for value in values:
            to_rational(value)
        return values

    @model_validator(mode="after")
    def _check_lengths(self):
        n = self.ambient_dim
        if any(len(row) != n for row in self.lattice_basis):
            raise ValueError(f"lattice_basis 的每一行长度必须为 {n}")
        if len(self.base_point) != n:
            raise ValueError(f"base_point 长度必须为 {n}")
        if len(self.xi) != len(self.lattice_basis):
            raise ValueError(f"xi 长度必须等于格基向量个数 {len(self.lattice_basis)}")
        if self.eta is not None and len(self.eta) != n:
            raise ValueError(f"eta 长度必须为 {n}")
        if self.orientation not in (1, -1):
            raise ValueError("orientation 只能是 1 或 -1")
        return self

    def lattice(self):
        return IntegerLattice.from_rows(self.lattice_basis, ambient_dim=self.ambient_dim)

    def quantized(self):
        return QuantizedPolarizedArrangement(
            self.lattice(), tuple(to_rational(x) for x in self.base_point), tuple(self.xi), self.orientation
        )

    def classical(self):
        if self.eta is None:
            return None
        return PolarizedArrangement(self.lattice(), tuple(self.eta), tuple(self.xi), self.orientation)


def load_json_file(filepath):
    """
    加载 JSON 文件

    Raises:
        UserInputError: 文件不存在或不是合法 JSON
    """
    try:
        with open(filepath, "r", encoding="utf-8") as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise UserInputError(f"无法读取 {filepath}: {e}") from e


def load_arrangement(filepath):
    data = load_json_file(filepath)
    try:
        arrangement = ArrangementFile.model_validate(data)
    except ValidationError as e:
        raise UserInputError(f"{Path(filepath).name} 不是合法的排列文件: {e}") from e
    LOGGER.info("读取排列文件 %s: n=%d, rank=%d", filepath, arrangement.ambient_dim, len(arrangement.lattice_basis))
    return arrangement


def to_plain(value):
    """把计算结果转成可以直接 json.dumps 的结构，有理数写成 "p/q" """
    if isinstance(value, SignVector):
        return str(value)
    if isinstance(value, pd.DataFrame):
        return [to_plain(row) for row in value.to_dict(orient="records")]
    if hasattr(value, "to_json"):
        return to_plain(value.to_json())
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_plain(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (bool, str)) or value is None:
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, int):
        return value
    if isinstance(value, np.ndarray):
        return [to_plain(x) for x in value.tolist()]
    if isinstance(value, (np.integer, np.bool_)):
        return to_plain(value.item())
    if isinstance(value, Mapping):
        return {str(to_plain(k)) if not isinstance(k, str) else k: to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value, key=str) if isinstance(value, (set, frozenset)) else value
        return [to_plain(x) for x in items]
    raise TypeError(f"无法序列化 {type(value).__name__}")


def dumps_json(value):
    return json.dumps(to_plain(value), ensure_ascii=False, indent=2)


def dumps_tsv(frame):
    return frame.to_csv(sep="\t", index=False)


def digraph_to_dot(name, vertices, edges):
    """
    有向图的 DOT 文本

    Args:
        name (str): 图名
        vertices (list): 顶点名
        edges (list): (源, 目标) 顶点名对
    """
    lines = [f'digraph "{name}" {{', "  rankdir=RL;"]
    for vertex in vertices:
        lines.append(f'  "{vertex}";')
    for source, target in edges:
        lines.append(f'  "{source}" -> "{target}";')
    lines.append("}")
    return "\n".join(lines) + "\n"

