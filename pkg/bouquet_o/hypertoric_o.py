# -*- coding: utf-8 -*-
"""
超环面范畴 O 的组合计算

由（量子化）极化排列出发，计算可行/有界符号向量、标准对象的单子商、
Hom 维数、块分解、正则性与链接性，以及单对象支撑的维数。
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

import pandas as pd

from bouquet_o.errors import NonRegularError, UnknownVectorError, UserInputError
from bouquet_o.exact_polyhedra import (
    ZERO,
    AffineFunctional,
    InequalitySystem,
    IntegerLattice,
    LPStatus,
    Objective,
    RatMatrix,
    Sense,
    cone_positive_support,
    dot,
    format_rational,
    lattice_member,
    lp_solve,
    poly_contains,
    rank,
    solve_linear,
    to_rational,
)
from bouquet_o.settings import parallel_map, shared_context

LOGGER = logging.getLogger(__name__)

SIGNS = ("+", "-")


@dataclass(frozen=True)
class PolarizedArrangement:
    """经典极化排列 (Λ₀, η, ξ)，η 取 ℤⁿ 中的一个代表元"""

    lattice: IntegerLattice
    eta: tuple
    xi: tuple
    orientation: int = 1

    def __post_init__(self):
        object.__setattr__(self, "eta", tuple(to_rational(x) for x in self.eta))
        object.__setattr__(self, "xi", tuple(to_rational(x) for x in self.xi))
        if any(x.denominator != 1 for x in self.eta):
            raise UserInputError(f"η 必须是整数向量: {self.eta}")
        _check_shapes(self.lattice, self.eta, self.xi, self.orientation)

    @property
    def ambient_dim(self):
        return self.lattice.ambient_dim

    def as_quantized(self):
        return QuantizedPolarizedArrangement(self.lattice, self.eta, self.xi, self.orientation)


@dataclass(frozen=True)
class QuantizedPolarizedArrangement:
    """量子化极化排列 (Λ₀, Λ, ξ)，Λ = base_point + Λ₀"""

    lattice: IntegerLattice
    base_point: tuple
    xi: tuple
    orientation: int = 1

    def __post_init__(self):
        object.__setattr__(self, "base_point", tuple(to_rational(x) for x in self.base_point))
        object.__setattr__(self, "xi", tuple(to_rational(x) for x in self.xi))
        _check_shapes(self.lattice, self.base_point, self.xi, self.orientation)

    @property
    def ambient_dim(self):
        return self.lattice.ambient_dim


def _check_shapes(lattice, point, xi, orientation):
    if len(point) != lattice.ambient_dim:
        raise UserInputError(f"基点维数 {len(point)} 与环境维数 {lattice.ambient_dim} 不一致")
    if len(xi) != lattice.rank:
        raise UserInputError(f"ξ 的长度 {len(xi)} 与格的秩 {lattice.rank} 不一致")
    if orientation not in (1, -1):
        raise UserInputError(f"orientation 只能是 ±1: {orientation}")


@dataclass(frozen=True)
class RestrictedArrangement:
    """
    限制到 V_λ 坐标上的排列

    functionals[i](c) = base_point_i + Σ_j c_j (u_j)_i；符号读取的是 orientation·h_i，
    '−' 表示 orientation·h_i ≤ −shift。
    """

    dim: int
    functionals: tuple
    integrality_set: tuple
    xi: tuple
    base_point: tuple
    lattice: IntegerLattice
    orientation: int = 1
    shift: Fraction = ZERO

    @property
    def ambient_dim(self):
        return len(self.functionals)

    @property
    def objective(self):
        return tuple(self.orientation * x for x in self.xi)

    def oriented(self, i):
        return self.functionals[i].scaled(self.orientation)

    def point_w(self, c):
        """V_λ 坐标 c 对应的 W 坐标"""
        return tuple(f.evaluate(c) for f in self.functionals)


@dataclass(frozen=True, order=True)
class SignVector:
    """下标集合（从 0 开始）上的 ± 赋值"""

    indices: tuple
    signs: tuple

    def __post_init__(self):
        if len(self.indices) != len(self.signs):
            raise UserInputError("符号向量的下标与符号个数不一致")
        if any(s not in SIGNS for s in self.signs):
            raise UserInputError(f"非法符号: {self.signs}")

    @classmethod
    def parse(cls, text, indices=None):
        signs = tuple("-" if ch in "-−" else ch for ch in text.strip())
        if indices is None:
            indices = tuple(range(len(signs)))
        return cls(tuple(indices), signs)

    def __str__(self):
        return "".join(self.signs)

    def sign_at(self, index):
        try:
            return self.signs[self.indices.index(index)]
        except ValueError as e:
            raise UnknownVectorError(f"符号向量 {self} 不含下标 {index}") from e

    def restricted(self, indices):
        return SignVector(tuple(indices), tuple(self.sign_at(i) for i in indices))


@dataclass(frozen=True)
class Chamber:
    """𝒫 中的一个符号向量及其多面体 P_α、最大点 a_α 与锥 C_α"""

    alpha: SignVector
    polyhedron: InequalitySystem
    vertex: tuple
    vertex_w: tuple
    cone: InequalitySystem
    active: tuple
    xi_value: Fraction


@dataclass(frozen=True)
class BlockPartition:
    classes: tuple

    def class_of(self, alpha):
        for members in self.classes:
            if alpha in members:
                return members
        raise UnknownVectorError(f"{alpha} 不在任何块中")


def restrict(quantized, all_indices=False, shift=0):
    """
    把量子化排列限制到 V_λ 坐标

    Args:
        quantized (QuantizedPolarizedArrangement): 输入排列
        all_indices (bool): 为 True 时所有坐标都参与符号（块标签沿用整数情形的标签）
        shift (int): '−' 号约束的平移量，0 为经典图像，1 为量子化图像

    Returns:
        RestrictedArrangement: 限制后的排列
    """
    lattice = quantized.lattice
    d = lattice.rank
    if d < 1:
        raise UserInputError("格的秩必须至少为 1")
    n = lattice.ambient_dim
    functionals = tuple(
        AffineFunctional(tuple(lattice.basis[j, i] for j in range(d)), quantized.base_point[i]) for i in range(n)
    )
    if all_indices:
        integral = tuple(range(n))
    else:
        integral = tuple(i for i in range(n) if quantized.base_point[i].denominator == 1)
    return RestrictedArrangement(
        dim=d,
        functionals=functionals,
        integrality_set=integral,
        xi=quantized.xi,
        base_point=quantized.base_point,
        lattice=lattice,
        orientation=quantized.orientation,
        shift=to_rational(shift),
    )


def all_sign_vectors(restricted):
    indices = restricted.integrality_set
    return [SignVector(indices, signs) for signs in product(SIGNS, repeat=len(indices))]


def _sign_constraint(restricted, index, sign):
    functional = restricted.oriented(index)
    if sign == "+":
        return functional, Sense.GE
    return functional.shifted(restricted.shift), Sense.LE


def chamber_system(restricted, alpha):
    """P_α 的不等式系统"""
    pairs = [_sign_constraint(restricted, i, s) for i, s in zip(alpha.indices, alpha.signs)]
    return InequalitySystem.build(pairs, dim=restricted.dim)


def _is_feasible_job(alpha):
    restricted = shared_context()["restricted"]
    outcome = lp_solve(chamber_system(restricted, alpha), [ZERO] * restricted.dim)
    return outcome.status is not LPStatus.INFEASIBLE


def _is_bounded_job(alpha):
    restricted = shared_context()["restricted"]
    outcome = lp_solve(chamber_system(restricted, alpha), restricted.objective, Objective.MAX)
    return outcome.status is not LPStatus.UNBOUNDED


def feasible_vectors(restricted, workers=None):
    """所有 P_α 非空的符号向量（有理可行性），按字典序返回"""
    candidates = all_sign_vectors(restricted)
    flags = parallel_map(_is_feasible_job, candidates, workers, context={"restricted": restricted})
    return [alpha for alpha, ok in zip(candidates, flags) if ok]


def bounded_vectors(restricted, workers=None):
    """ξ 在 P_α 上有上界的符号向量；不可行的 P_α 视为有界"""
    candidates = all_sign_vectors(restricted)
    flags = parallel_map(_is_bounded_job, candidates, workers, context={"restricted": restricted})
    return [alpha for alpha, ok in zip(candidates, flags) if ok]


def bounded_feasible_vectors(restricted, workers=None):
    """逐个求解线性规划得到的 𝒫，用来和 pbf 的顶点枚举互相印证"""
    bounded = set(bounded_vectors(restricted, workers))
    return [alpha for alpha in feasible_vectors(restricted, workers) if alpha in bounded]


def _vertex_chambers(restricted):
    """
    枚举排列的顶点：每个顶点是某个 P_α 上 ξ 的唯一最大点

    活跃函数的符号由 ξ 在梯度上的分解系数决定，其余符号由顶点处的函数值决定。
    """
    d = restricted.dim
    indices = restricted.integrality_set
    objective = restricted.objective
    shift = restricted.shift
    oriented = {i: restricted.oriented(i) for i in indices}
    found = {}
    for active in combinations(indices, d):
        gradients = RatMatrix.from_rows([oriented[i].linear for i in active], cols=d)
        if rank(gradients) < d:
            continue
        multipliers = solve_linear(gradients.transpose(), objective)
        signs = {i: ("+" if mu < 0 else "-") for i, mu in zip(active, multipliers)}
        rhs = [(ZERO if signs[i] == "+" else -shift) - oriented[i].constant for i in active]
        vertex = solve_linear(gradients, rhs)

        outside = False
        extra_active = []
        for i in indices:
            if i in signs:
                continue
            value = oriented[i].evaluate(vertex)
            if value > 0:
                signs[i] = "+"
            elif value < -shift:
                signs[i] = "-"
            elif value == 0 or value == -shift:
                extra_active.append(i)
            else:
                outside = True
        if outside:
            continue
        if extra_active:
            raise NonRegularError(f"顶点 {restricted.point_w(vertex)} 上活跃函数多于 {d} 个: {active} + {extra_active}")
        if any(mu == 0 for mu in multipliers):
            raise NonRegularError(f"ξ 在以 {active} 为墙的面上为常数，最大点不唯一")
        alpha = SignVector(indices, tuple(signs[i] for i in indices))
        if alpha in found:
            raise NonRegularError(f"{alpha} 有两个最大顶点")
        found[alpha] = (vertex, active)
    return found


def pbf(restricted):
    """
    𝒫 = F ∩ B 中的全部 Chamber，按 ξ 值从大到小排列

    Raises:
        NonRegularError: 排列不是正则的
    """
    objective = restricted.objective
    chambers = []
    for alpha, (vertex, active) in _vertex_chambers(restricted).items():
        polyhedron = chamber_system(restricted, alpha)
        outcome = lp_solve(polyhedron, objective, Objective.MAX)
        if outcome.status is not LPStatus.OPTIMAL or outcome.witness != vertex:
            raise NonRegularError(f"{alpha} 的最大点与单纯形结果不一致: {outcome}")
        cone = InequalitySystem.build([_sign_constraint(restricted, i, alpha.sign_at(i)) for i in active])
        chambers.append(
            Chamber(
                alpha=alpha,
                polyhedron=polyhedron,
                vertex=vertex,
                vertex_w=restricted.point_w(vertex),
                cone=cone,
                active=active,
                xi_value=dot(objective, vertex),
            )
        )
    chambers.sort(key=lambda ch: (-ch.xi_value, ch.alpha))
    LOGGER.info("共找到 %d 个有界可行符号向量", len(chambers))
    return chambers


def find_chamber(chambers, alpha):
    for chamber in chambers:
        if chamber.alpha == alpha:
            return chamber
    raise UnknownVectorError(f"{alpha} 不在 𝒫 中")


def _same_block(restricted, first, second):
    difference = [a - b for a, b in zip(first.vertex_w, second.vertex_w)]
    return lattice_member(restricted.lattice, difference)


def subquotients(restricted, chambers, alpha, within_block=True):
    """
    Δ_α 的单子商：同一块中满足 P_γ ⊆ C_α 的 γ，按 chambers 的顺序返回
    """
    target = find_chamber(chambers, alpha)
    result = []
    for other in chambers:
        if other.alpha == alpha:
            result.append(alpha)
            continue
        if not target.cone.satisfied_by(other.vertex):
            continue
        if within_block and not _same_block(restricted, target, other):
            continue
        if poly_contains(other.polyhedron, target.cone):
            result.append(other.alpha)
    return tuple(result)


def _subquotients_job(alpha):
    context = shared_context()
    return subquotients(context["restricted"], context["chambers"], alpha)


def subquotient_map(restricted, chambers, workers=None):
    """对 𝒫 中每个 α 计算子商，返回有序字典"""
    context = {"restricted": restricted, "chambers": chambers}
    results = parallel_map(_subquotients_job, [ch.alpha for ch in chambers], workers, context=context)
    return {ch.alpha: result for ch, result in zip(chambers, results)}


def hom_dim(restricted, chambers, gamma, alpha):
    find_chamber(chambers, gamma)
    return 1 if gamma in subquotients(restricted, chambers, alpha) else 0


def socle(alpha, subquotient_lists):
    """子商中关于“γ′ 是 γ 的子商”的极小元"""
    members = subquotient_lists[alpha]
    minimal = []
    for gamma in members:
        below = [g for g in members if g != gamma and g in subquotient_lists[gamma]]
        if not below:
            minimal.append(gamma)
    return tuple(minimal)


def blocks(restricted, chambers):
    """按顶点差是否属于 Λ₀ 划分块，块按代表元的 ξ 值从大到小排列"""
    classes = []
    for chamber in chambers:
        for members in classes:
            if _same_block(restricted, members[0], chamber):
                members.append(chamber)
                break
        else:
            classes.append([chamber])
    return BlockPartition(tuple(tuple(ch.alpha for ch in members) for members in classes))


def support_dim(restricted, alpha, slice_weights):
    """
    单对象 S_α 支撑的维数

    保留坐标 x_s（α(s)=+）或其共轭（α(s)=−，权重取负），
    A 为保留权重锥的正支撑，维数 = |A| − rank(W_A)。
    """
    if not isinstance(slice_weights, RatMatrix):
        slice_weights = RatMatrix.from_rows(slice_weights)
    if slice_weights.cols != restricted.ambient_dim:
        raise UserInputError(f"权重矩阵列数 {slice_weights.cols} 与坐标个数 {restricted.ambient_dim} 不一致")
    kept = []
    for col in range(slice_weights.cols):
        factor = 1 if alpha.sign_at(col) == "+" else -1
        kept.append([factor * x for x in slice_weights.column(col)])
    kept_matrix = RatMatrix.from_rows(kept).transpose()
    support = sorted(cone_positive_support(kept_matrix))
    if not support:
        return 0
    return len(support) - rank(kept_matrix.select_columns(support))


def is_regular(restricted):
    try:
        pbf(restricted)
    except NonRegularError as e:
        LOGGER.info("排列不是正则的: %s", e)
        return False
    return True


def is_linked(classical, quantized, shift=0):
    """F_η 投影到 I_Λ 后是否等于 F_Λ"""
    if classical.lattice != quantized.lattice or classical.xi != quantized.xi:
        raise UserInputError("两个排列的格或 ξ 不同，无法比较")
    restricted_eta = restrict(classical.as_quantized(), all_indices=True)
    restricted_lambda = restrict(quantized, shift=shift)
    indices = restricted_lambda.integrality_set
    projected = {alpha.restricted(indices) for alpha in feasible_vectors(restricted_eta)}
    return projected == set(feasible_vectors(restricted_lambda))


def lattice_point_warnings(restricted, chambers):
    """顶点不是 Λ 中格点的符号向量；此时有理可行性与格点可行性可能不同"""
    flagged = []
    for chamber in chambers:
        if any(c.denominator != 1 for c in chamber.vertex):
            LOGGER.warning("%s 的顶点 %s 不是 Λ 中的格点", chamber.alpha, chamber.vertex_w)
            flagged.append(chamber.alpha)
    return flagged


def chamber_table(chambers, subquotient_lists=None, labels=None):
    """
    把 chambers 整理为 DataFrame：符号向量、W 坐标顶点、ξ 值、子商列表
    """
    name = (lambda g: labels.get(g, str(g))) if labels is not None else str
    rows = []
    for chamber in chambers:
        row = {}
        if labels is not None:
            row["label"] = labels.get(chamber.alpha, "")
        row["sign_vector"] = str(chamber.alpha)
        row["vertex_w"] = "(" + ",".join(format_rational(x) for x in chamber.vertex_w) + ")"
        row["xi_value"] = format_rational(chamber.xi_value)
        if subquotient_lists is not None:
            row["subquotients"] = ",".join(name(g) for g in subquotient_lists[chamber.alpha])
        rows.append(row)
    return pd.DataFrame(rows)
