# -*- coding: utf-8 -*-
"""
带一维标架的花束箭图（一个顶点、ℓ 个环）的几何数据

包括维数公式、dim V ≤ 3 时的环面不动点、特殊一参数子群的不动分支、
辛叶表，以及构造切片超环面排列的函数。
"""

import logging
import random
from collections import Counter
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from types import MappingProxyType

import numpy as np

from bouquet_o.errors import UnknownKindError, UnsupportedDimError, UserInputError
from bouquet_o.exact_polyhedra import IntegerLattice, RatMatrix, format_rational, rank, to_rational
from bouquet_o.hypertoric_o import (
    PolarizedArrangement,
    QuantizedPolarizedArrangement,
    SignVector,
    blocks,
    pbf,
    restrict,
    socle,
    subquotient_map,
    support_dim,
)

LOGGER = logging.getLogger(__name__)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class BouquetParams:
    n: int
    ell: int
    framing: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise UserInputError(f"dim V 必须至少为 1: n={self.n}")
        if self.framing != 1:
            raise UserInputError("只支持一维标架")
        if self.ell == 1:
            raise UnsupportedDimError("ℓ=1 时是 ℂ² 上 n 个点的 Hilbert 概形，请参考 Gieseker 概形的已有结果")
        if self.ell < 1:
            raise UserInputError(f"环的个数必须为正: ℓ={self.ell}")


# ---------------------------------------------------------------- 维数


@dataclass(frozen=True)
class DimensionReport:
    n: int
    ell: int
    resolution_dim: int
    half_dim: int
    central_fiber_dim: int
    central_fiber_flag: str
    central_fiber_description: str


def dims(params):
    """
    辛消解的维数、一半维数，以及零点原像（中心纤维）的维数或上界
    """
    n, ell = params.n, params.ell
    resolution = 2 * ell * (n * n - 1) + 2 * n - 2 * n * n
    half = (ell - 1) * n * n - ell + n
    if n == 1:
        fiber, flag, description = 0, "EXACT", "point"
    elif n == 2:
        fiber, flag, description = 2 * ell - 1, "EXACT", f"ℙ^{2 * ell - 1}"
    else:
        fiber, flag = (n * n - n) * ell - n * n + 2 * n - 1, "BOUND"
        description = "upper bound"
    return DimensionReport(n, ell, resolution, half, fiber, flag, description)


# ---------------------------------------------------------------- 不动点


def _labels(ell):
    return [f"X{s}" for s in range(1, ell + 1)] + [f"Y{s}" for s in range(1, ell + 1)]


def _step(weight, label):
    """X_s 把权降低 ε_s，Y_s 把权升高 ε_s"""
    s = int(label[1:]) - 1
    delta = -1 if label[0] == "X" else 1
    return tuple(w + delta if k == s else w for k, w in enumerate(weight))


def _label_key(label):
    return (label[0], int(label[1:]))


@dataclass(frozen=True)
class FixedPointDiagram:
    """
    环面不动点的权图：顶点为 T-权，边 (源, 目标, 标签)

    基按“循环向量在前，其余按权的字典序”排列。
    """

    ell: int
    vertices: tuple
    edges: tuple
    cyclic_vertex: int = 0

    @property
    def n(self):
        return len(self.vertices)

    def sort_key(self):
        return (
            tuple(_label_key(label) + (src, tgt) for src, tgt, label in self.edges),
            self.vertices,
        )

    def matrices(self):
        """(X_k, Y_k, i, j) 的有理矩阵实现，所有箭头取值 1，i = 0，j = v0"""
        n = self.n
        result = {}
        for label in _labels(self.ell):
            result[label] = np.full((n, n), Fraction(0), dtype=object)
        for src, tgt, label in self.edges:
            result[label][tgt, src] = Fraction(1)
        result["i"] = np.full((1, n), Fraction(0), dtype=object)
        j = np.full((n, 1), Fraction(0), dtype=object)
        j[self.cyclic_vertex, 0] = Fraction(1)
        result["j"] = j
        return result

    def to_json(self):
        return {
            "weights": [list(w) for w in self.vertices],
            "edges": [{"source": src, "target": tgt, "label": label} for src, tgt, label in self.edges],
            "cyclic_vertex": self.cyclic_vertex,
            "matrices": {
                name: [[format_rational(x) for x in row] for row in matrix.tolist()]
                for name, matrix in self.matrices().items()
                if name in ("i", "j") or any(x != 0 for x in matrix.flat)
            },
        }

    def ascii(self):
        lines = []
        for k, weight in enumerate(self.vertices):
            mark = "  <- j" if k == self.cyclic_vertex else ""
            lines.append(f"v{k} = ({', '.join(str(w) for w in weight)}){mark}")
        for src, tgt, label in self.edges:
            lines.append(f"v{src} --{label}--> v{tgt}")
        return "\n".join(lines)


def _canonical(ell, weight_edges, weights):
    zero = tuple([0] * ell)
    order = [zero] + sorted(w for w in weights if w != zero)
    index = {w: k for k, w in enumerate(order)}
    edges = tuple(sorted((index[u], index[v], label) for u, v, label in weight_edges))
    return FixedPointDiagram(ell, tuple(order), edges, 0)


def _krylov_rank(matrices, start, n):
    """由 start 出发、反复作用所有矩阵张成的子空间的维数"""
    basis = []
    queue = [list(start)]
    while queue:
        vector = queue.pop(0)
        if rank(basis + [vector]) == len(basis):
            continue
        basis.append(vector)
        if len(basis) == n:
            break
        for matrix in matrices:
            queue.append(list(matrix.dot(np.array(vector, dtype=object))))
    return len(basis)


def verify_diagram(diagram):
    """
    精确检查矩方程 Σ[X_k,Y_k] − ji = 0、稳定性（im j 生成 V）、权方程与权互异
    """
    n = diagram.n
    zero = tuple([0] * diagram.ell)
    if len(set(diagram.vertices)) != n or diagram.vertices[diagram.cyclic_vertex] != zero:
        return False
    for src, tgt, label in diagram.edges:
        if _step(diagram.vertices[src], label) != diagram.vertices[tgt]:
            return False
    mats = diagram.matrices()
    moment = np.full((n, n), Fraction(0), dtype=object)
    for s in range(1, diagram.ell + 1):
        x, y = mats[f"X{s}"], mats[f"Y{s}"]
        moment = moment + x.dot(y) - y.dot(x)
    moment = moment - mats["j"].dot(mats["i"])
    if any(value != 0 for value in moment.flat):
        return False
    if any(np.trace(mats[label]) != 0 for label in _labels(diagram.ell)):
        return False
    operators = [mats[label] for label in _labels(diagram.ell)]
    return _krylov_rank(operators, mats["j"][:, 0], n) == n


def _check_supported(params):
    if params.n >= 4:
        raise UnsupportedDimError(f"dim V = {params.n} ≥ 4 时不动点不再孤立（存在 ℙ¹ 族）")


def fixed_points(params):
    """
    dim V ≤ 3 时的全部 T-不动点

    从 v0 出发逐条添加指向新权的箭头，得到所有以 v0 为根的有向树，
    再用 verify_diagram 过滤。
    """
    _check_supported(params)
    ell, n = params.ell, params.n
    zero = tuple([0] * ell)
    labels = _labels(ell)
    found = set()

    def grow(weights, edges):
        if len(weights) == n:
            found.add(_canonical(ell, edges, weights))
            return
        for weight in weights:
            for label in labels:
                target = _step(weight, label)
                if target not in weights:
                    grow(weights + [target], edges + [(weight, target, label)])

    grow([zero], [])
    diagrams = sorted(found, key=FixedPointDiagram.sort_key)
    verified = [d for d in diagrams if verify_diagram(d)]
    if len(verified) != len(diagrams):
        LOGGER.info("矩方程过滤掉 %d 个候选图", len(diagrams) - len(verified))
    return verified


def _moment_vanishes(weight_edges, rng):
    """
    箭头取随机非零系数，逐条两步路径累加 Σ_s (X_s Y_s − Y_s X_s)，检查结果为零

    i = 0，因此 ji 项不出现。
    """
    coefficient = {edge: Fraction(rng.randint(1, 9)) for edge in weight_edges}
    moment = Counter()
    for first in weight_edges:
        for second in weight_edges:
            if second[0] != first[1] or second[2][1:] != first[2][1:] or second[2][0] == first[2][0]:
                continue
            sign = 1 if second[2][0] == "X" else -1
            moment[(first[0], second[1])] += sign * coefficient[first] * coefficient[second]
    return all(value == 0 for value in moment.values())


def _reaches_all(weights, weight_edges):
    """从权 0 沿箭头可达全部权；单项式箭头下这等价于 im j 生成 V"""
    reached = {weights[0]}
    frontier = [weights[0]]
    while frontier:
        source = frontier.pop()
        for u, v, _ in weight_edges:
            if u == source and v not in reached:
                reached.add(v)
                frontier.append(v)
    return reached == set(weights)


def brute_force_fixed_points(params, seed=0):
    """
    穷举校验：枚举 |·|₁ ≤ n−1 范围内含 0 的所有权集合以及其上所有箭头子集

    不经过 verify_diagram：矩方程在随机系数下直接按路径计算，稳定性用图的可达性判断。
    """
    _check_supported(params)
    ell, n = params.ell, params.n
    zero = tuple([0] * ell)
    labels = _labels(ell)
    rng = random.Random(seed)
    ball = [
        w for w in product(range(-(n - 1), n), repeat=ell) if 0 < sum(abs(x) for x in w) <= n - 1
    ]
    found = set()
    for others in combinations(sorted(ball), n - 1):
        weights = (zero,) + others
        possible = [
            (u, _step(u, label), label) for u in weights for label in labels if _step(u, label) in weights
        ]
        for mask in range(1 << len(possible)):
            edges = [possible[k] for k in range(len(possible)) if mask >> k & 1]
            if _reaches_all(weights, edges) and _moment_vanishes(edges, rng):
                found.add(_canonical(ell, edges, weights))
    return sorted(found, key=FixedPointDiagram.sort_key)


FIXED_POINT_FAMILIES = (
    "X_s v0 = v1, Y_k v0 = v2",
    "X_s v0 = v1, X_k v0 = v2 (s != k)",
    "Y_s v0 = v1, Y_k v0 = v2 (s != k)",
    "X_s v0 = v1, Y_k v1 = v2 (s != k)",
    "X_s v0 = v1, X_k v1 = v2",
    "Y_s v0 = v1, Y_k v1 = v2",
)


def _family_instances(ell):
    """dim V = 3 时逐字按六类图式生成的实例 (类别编号, 权, 边)"""
    zero = tuple([0] * ell)
    pairs = list(product(range(1, ell + 1), repeat=2))
    shapes = (
        ("star", "X", "Y", lambda s, k: True),
        ("star", "X", "X", lambda s, k: s < k),
        ("star", "Y", "Y", lambda s, k: s < k),
        ("chain", "X", "Y", lambda s, k: s != k),
        ("chain", "X", "X", lambda s, k: True),
        ("chain", "Y", "Y", lambda s, k: True),
    )
    for family, (shape, first, second, allowed) in enumerate(shapes):
        for s, k in pairs:
            if not allowed(s, k):
                continue
            v1 = _step(zero, f"{first}{s}")
            if shape == "star":
                v2 = _step(zero, f"{second}{k}")
                edges = [(zero, v1, f"{first}{s}"), (zero, v2, f"{second}{k}")]
            else:
                v2 = _step(v1, f"{second}{k}")
                edges = [(zero, v1, f"{first}{s}"), (v1, v2, f"{second}{k}")]
            yield family, (zero, v1, v2), edges


@dataclass(frozen=True)
class FamilyReport:
    counts: dict
    filtered: tuple
    unlisted: tuple
    families: tuple = FIXED_POINT_FAMILIES


def family_coverage(ell):
    """
    dim V = 3：六类图式各自贡献的不动点、被矩方程过滤的实例、以及不属于任何一类的不动点
    """
    computed = fixed_points(BouquetParams(3, ell))
    counts = Counter()
    covered = set()
    filtered = []
    for family, weights, edges in _family_instances(ell):
        if len(set(weights)) < 3:
            filtered.append((family, edges))
            continue
        diagram = _canonical(ell, edges, weights)
        if verify_diagram(diagram):
            counts[family] += 1
            covered.add(diagram)
        else:
            filtered.append((family, edges))
    unlisted = tuple(d for d in computed if d not in covered)
    if unlisted:
        LOGGER.info("有 %d 个不动点不属于六类图式（先 Y_s 后 X_k 的链）", len(unlisted))
    return FamilyReport(dict(sorted(counts.items())), tuple(filtered), unlisted)


# ---------------------------------------------------------------- 不动分支与辛叶


@dataclass(frozen=True)
class FixedComponent:
    label: str
    dim: int
    quantization_label: str
    period: Fraction = None


@dataclass(frozen=True)
class FixedComponentDecomposition:
    subgroup_kind: str
    components: tuple


SUBGROUP_KINDS = ("NU_TILDE", "NU_PRIME", "T_PRIME")


def nu_prime_periods(ell, lam):
    lam = to_rational(lam)
    return lam + 1 - Fraction(ell, 2), lam + Fraction(ell, 2)


def fixed_components(ell, kind, lam=None, d=1):
    """
    一参数子群的不动分支

    Args:
        ell (int): 环的个数
        kind (str): NU_TILDE、NU_PRIME 或 T_PRIME
        lam: NU_PRIME 需要的量子化参数 λ
        d (int): NU_TILDE 的权 t^d，结果与 d 无关

    Returns:
        FixedComponentDecomposition: 各分支的标签、维数与量子化标签
    """
    if ell < 2:
        raise UserInputError(f"ℓ 必须至少为 2: {ell}")
    kind = str(kind).upper()
    if kind == "NU_TILDE":
        if d <= 0:
            raise UserInputError(f"d 必须为正整数: {d}")
        affine = FixedComponent(f"ℂ^{2 * ell - 2}", 2 * ell - 2, f"D(ℂ^{2 * ell - 2})")
        components = (
            FixedComponent(f"M̄^θ(2,{ell - 1})", 6 * (ell - 1) - 4, f"Ā_λ(2,{ell - 1})"),
            affine,
            affine,
        )
    elif kind == "NU_PRIME":
        if lam is None:
            raise UserInputError("NU_PRIME 需要给出 λ")
        first, second = nu_prime_periods(ell, lam)
        components = (
            FixedComponent(f"Z1 = T*ℙ^{ell - 1}", 2 * ell - 2, f"D^(λ-{ell - 1})(ℙ^{ell - 1})", first),
            FixedComponent(f"Z2 = T*ℙ^{ell - 1}", 2 * ell - 2, f"D^λ(ℙ^{ell - 1})", second),
        )
    elif kind == "T_PRIME":
        planes = [FixedComponent(f"ℂ²[{kind_}{s}]", 2, "D(ℂ²)") for kind_ in "XY" for s in range(1, ell)]
        components = (FixedComponent("T*ℙ¹", 2, "D^λ(ℙ¹)"),) + tuple(planes)
    else:
        raise UnknownKindError(f"未知的一参数子群类型 {kind!r}，可选 {', '.join(SUBGROUP_KINDS)}")
    return FixedComponentDecomposition(kind, components)


@dataclass(frozen=True)
class LeafDescriptor:
    leaf_type: int
    dim_vector_decomposition: str
    leaf_dim: int
    stabilizer: str
    namikawa_group: str


def leaves(params):
    """M̄(2,ℓ) 与 M̄(3,ℓ) 的辛叶表"""
    ell = params.ell
    if params.n == 2:
        group = "ℤ/2ℤ"
        rows = [
            ("(2,1)", 6 * ell - 4, "{id}"),
            ("(2,0)⊕(0,1)", 6 * ell - 6, "ℂ*·id"),
            ("(1,0)⊕(1,0)⊕(0,1)", 2 * ell, "diag(λ,μ)"),
            ("(1,0)^⊕2⊕(0,1)", 0, "GL_2"),
        ]
    elif params.n == 3:
        group = "1"
        rows = [
            ("(3,1)", 16 * ell - 12, "{id}"),
            ("(3,0)⊕(0,1)", 16 * ell - 16, "ℂ*·id"),
            ("(2,1)⊕(1,0)", 6 * ell - 4, "diag(1,1,ν)"),
            ("(2,0)⊕(1,0)⊕(0,1)", 6 * ell - 6, "diag(λ,λ,μ)"),
            ("(1,0)⊕(1,0)⊕(1,0)⊕(0,1)", 4 * ell, "diag(λ,ν,μ)"),
            ("(1,0)^⊕2⊕(1,0)⊕(0,1)", 2 * ell, "GL_2×ℂ*"),
            ("(1,0)^⊕3⊕(0,1)", 0, "GL_3"),
        ]
    else:
        raise UnsupportedDimError(f"只有 n ∈ {{2,3}} 的辛叶表: n={params.n}")
    return [LeafDescriptor(k + 1, vec, dim, stab, group) for k, (vec, dim, stab) in enumerate(rows)]


# ---------------------------------------------------------------- 切片


@dataclass(frozen=True)
class SliceSpec:
    """
    叶型 3 处的切片：K=(ℂ*)² 作用在 ℂ^{2ℓ} 上得到的超环面簇

    坐标顺序 (x_1..x_{ℓ−1}, x_ℓ..x_{2ℓ−2}, i_1, i_2)；量子化基点为 (0,…,0,−λ̃,−λ̃)，
    符号按 orientation = −1 读取。
    """

    ell: int
    lam: Fraction
    arrangement: PolarizedArrangement
    quantized: QuantizedPolarizedArrangement
    weight_matrix: RatMatrix
    hyperplane_table: tuple
    eta_character: tuple = (-1, -1)


def slice_lattice_rows(ell):
    n = 2 * ell

    def unit(k, value=1):
        return [value if m == k else 0 for m in range(n)]

    rows = []
    for j in range(1, ell - 1):
        rows.append([a - b for a, b in zip(unit(0), unit(j))])
    for j in range(ell - 1, 2 * ell - 2):
        rows.append([a + b for a, b in zip(unit(0), unit(j))])
    rows.append([a + b - c for a, b, c in zip(unit(2 * ell - 3), unit(2 * ell - 2), unit(2 * ell - 1))])
    return rows


def slice_weight_rows(ell):
    t1 = [-1] * (ell - 1) + [1] * (ell - 1) + [-1, 0]
    t2 = [1] * (ell - 1) + [-1] * (ell - 1) + [0, -1]
    return [t1, t2]


def slice_xi(ell):
    return tuple(list(range(1, ell - 1)) + list(range(ell, 2 * ell - 1)) + [ell - 1])


def slice_spec(ell, lam):
    """
    构造切片的经典与量子化极化排列

    Args:
        ell (int): 环的个数，至少为 2
        lam: λ̃，有理数

    Returns:
        SliceSpec: 切片数据
    """
    if ell < 2:
        raise UserInputError(f"ℓ 必须至少为 2: {ell}")
    lam = to_rational(lam)
    n = 2 * ell
    lattice = IntegerLattice.from_rows(slice_lattice_rows(ell), ambient_dim=n)
    xi = slice_xi(ell)
    base = tuple([Fraction(0)] * (n - 2) + [-lam, -lam])
    eta = tuple([0] * (n - 2) + [1, 1])
    quantized = QuantizedPolarizedArrangement(lattice, base, xi, orientation=-1)
    classical = PolarizedArrangement(lattice, eta, xi, orientation=-1)
    table = []
    for i in range(n):
        normal = lattice.basis.column(i)
        table.append((f"h{i + 1}", normal))
    return SliceSpec(
        ell=ell,
        lam=lam,
        arrangement=classical,
        quantized=quantized,
        weight_matrix=RatMatrix.from_rows(slice_weight_rows(ell)),
        hyperplane_table=tuple(table),
    )


def slice_labels(ell):
    """
    𝒫 的 α/β/mid 标签及其符号向量（下标覆盖全部 2ℓ 个坐标）

    顺序：α_1..α_{ℓ−1}, α_mid, α_{ℓ+1}..α_{2ℓ−1}, β_1..β_{ℓ−1}, β_{ℓ+1}..β_{2ℓ−1}
    """
    m = ell - 1
    indices = tuple(range(2 * ell))

    def vector(a_signs, b_signs, tail):
        return SignVector(indices, tuple(a_signs) + tuple(b_signs) + tuple(tail))

    minus = ["-"] * m
    labels = {}
    for k in range(1, ell):
        labels[f"α{k}"] = vector(["+" if t >= k else "-" for t in range(1, ell)], minus, "--")
    labels["α_mid"] = vector(minus, minus, "--")
    for j in range(1, ell):
        labels[f"α{ell + j}"] = vector(minus, ["+" if t <= j - 1 else "-" for t in range(1, ell)], "-+")
    for k in range(1, ell):
        labels[f"β{k}"] = vector(minus, ["+" if t <= ell - k else "-" for t in range(1, ell)], "--")
    for j in range(1, ell):
        labels[f"β{ell + j}"] = vector(["+" if t > ell - j else "-" for t in range(1, ell)], minus, "+-")
    return labels


@dataclass(frozen=True)
class SliceCategory:
    """切片范畴 O 的全部组合数据，标签与符号向量一一对应"""

    spec: SliceSpec
    restricted: object
    chambers: tuple
    names: Mapping
    subquotients: Mapping
    socles: Mapping
    blocks: object
    support_dims: Mapping = field(default_factory=dict)

    def __post_init__(self):
        # lru_cache 的结果被所有调用者共享，映射一律只读
        for name in ("names", "subquotients", "socles", "support_dims"):
            object.__setattr__(self, name, MappingProxyType(dict(getattr(self, name))))

    def by_name(self, name):
        for alpha, label in self.names.items():
            if label == name:
                return alpha
        raise KeyError(name)


@lru_cache(maxsize=64)
def slice_category(ell, lam, shift=0):
    """
    在切片上运行多面体引擎：𝒫、子商、基座、块与支撑维数

    所有 2ℓ 个坐标都参与符号，这样非整数 λ̃ 时块的标签与整数情形一致。
    """
    spec = slice_spec(ell, lam)
    restricted = restrict(spec.quantized, all_indices=True, shift=shift)
    chambers = tuple(pbf(restricted))
    known = {alpha: name for name, alpha in slice_labels(ell).items()}
    names = {}
    for chamber in chambers:
        name = known.get(chamber.alpha)
        if name is None:
            LOGGER.warning("符号向量 %s 没有对应的 α/β 标签", chamber.alpha)
            name = str(chamber.alpha)
        names[chamber.alpha] = name
    lists = subquotient_map(restricted, list(chambers))
    socles = {alpha: socle(alpha, lists) for alpha in lists}
    partition = blocks(restricted, list(chambers))
    supports = {ch.alpha: support_dim(restricted, ch.alpha, spec.weight_matrix) for ch in chambers}
    LOGGER.info("切片 ℓ=%d, λ̃=%s: |𝒫|=%d, 块数=%d", ell, format_rational(spec.lam), len(chambers), len(partition.classes))
    return SliceCategory(spec, restricted, chambers, names, lists, socles, partition, supports)


@dataclass(frozen=True)
class SliceFixedPoint:
    name: str
    coordinates: dict
    ambient_component: str
    ambient_point: str
    ambient_matrices: dict


def slice_fixed_points(ell):
    """
    切片上 T′ 的 4ℓ−3 个不动点，以及它们在 M̄^θ(2,ℓ)^{T′} 中的位置
    """
    if ell < 2:
        raise UserInputError(f"ℓ 必须至少为 2: {ell}")
    size = 2 * ell - 2

    def coordinates(x=None, y=None, j1=0, j2=0):
        coords = {f"x{s}": 1 if s == x else 0 for s in range(1, size + 1)}
        coords.update({f"y{s}": 1 if s == y else 0 for s in range(1, size + 1)})
        coords.update({"i1": 0, "i2": 0, "j1": j1, "j2": j2})
        return coords

    nilpotent = [[0, 1], [0, 0]]
    points = []
    for kind in ("x", "y"):
        for s in range(1, size + 1):
            if s <= ell - 1:
                component, arrow = f"ℂ²[X{s}]", f"X{s}"
            else:
                component, arrow = f"ℂ²[Y{s - ell + 1}]", f"Y{s - ell + 1}"
            if kind == "x":
                coords, point, diagonal = coordinates(x=s, j1=1), "(1,0)", [[1, 0], [0, -1]]
            else:
                coords, point, diagonal = coordinates(y=s, j2=1), "(-1,0)", [[-1, 0], [0, 1]]
            matrices = {f"X{ell}": diagonal, arrow: nilpotent, "j": [[1], [0]]}
            points.append(SliceFixedPoint(f"{kind}{s}", coords, component, point, matrices))
    points.append(
        SliceFixedPoint(
            "double",
            coordinates(j1=1, j2=1),
            "T*ℙ¹",
            "X_ℓ = diag(1,-1)",
            {f"X{ell}": [[1, 0], [0, -1]], "j": [[1], [1]]},
        )
    )
    return points


@dataclass(frozen=True)
class PeriodData:
    slice_restriction: tuple
    slice_period: tuple
    ambient_period_shift: Fraction


def periods(ell, lam):
    """限制映射 λ ↦ (λ,λ)、切片周期 (λ+½, λ+½)，以及 ζ = ½·tr 带来的平移 ½"""
    if ell < 2:
        raise UserInputError(f"ℓ 必须至少为 2: {ell}")
    lam = to_rational(lam)
    return PeriodData((lam, lam), (lam + HALF, lam + HALF), HALF)
