# -*- coding: utf-8 -*-
"""
精确有理数线性代数、格运算与线性规划

所有计算都使用 fractions.Fraction，核心部分不出现浮点数；秩、零空间与线性方程组交给 sympy 的有理矩阵。
线性规划有两套实现：带 Bland 规则的两阶段单纯形法（主路径），
以及 Fourier–Motzkin 消元（仅用于测试中的交叉验证）。
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd, lcm

import numpy as np
import sympy

from bouquet_o.errors import UserInputError

LOGGER = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


def to_rational(value):
    """
    把整数、Fraction 或字符串（"p/q"、"p"、"-2.5"）转换为 Fraction

    Args:
        value: 待转换的值

    Returns:
        Fraction: 最简形式的有理数
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise UserInputError(f"不是有理数: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip().replace("−", "-")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as e:
            raise UserInputError(f"无法解析有理数 {value!r}: {e}") from e
    raise UserInputError(f"不支持的数值类型 {type(value).__name__}: {value!r}")


def format_rational(value):
    """有理数序列化为 "p/q"，整数序列化为 "p" """
    value = to_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def dot(a, b):
    return sum((x * y for x, y in zip(a, b)), ZERO)


@dataclass(frozen=True)
class RatMatrix:
    """有理数矩阵，行优先存储；允许 0 行但列数必须给定"""

    entries: tuple
    cols: int

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [tuple(to_rational(x) for x in row) for row in rows]
        if cols is None:
            if not rows:
                raise UserInputError("空矩阵需要显式给出列数")
            cols = len(rows[0])
        for row in rows:
            if len(row) != cols:
                raise UserInputError(f"矩阵不是矩形: 期望 {cols} 列，得到 {len(row)} 列")
        return cls(tuple(rows), cols)

    @classmethod
    def identity(cls, size):
        return cls.from_rows([[ONE if i == j else ZERO for j in range(size)] for i in range(size)], cols=size)

    @property
    def rows(self):
        return len(self.entries)

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(row[j] for row in self.entries)

    def transpose(self):
        return RatMatrix.from_rows([self.column(j) for j in range(self.cols)], cols=self.rows)

    def select_columns(self, indices):
        indices = list(indices)
        return RatMatrix.from_rows([[row[j] for j in indices] for row in self.entries], cols=len(indices))

    def to_numpy(self):
        """object dtype 的 numpy 数组，元素仍是 Fraction"""
        array = np.empty((self.rows, self.cols), dtype=object)
        for i, row in enumerate(self.entries):
            for j, value in enumerate(row):
                array[i, j] = value
        return array

    def to_json(self):
        return [[format_rational(x) for x in row] for row in self.entries]


@dataclass(frozen=True)
class IntegerLattice:
    """ℤⁿ 中的格 Λ₀，基向量按行存放"""

    basis: RatMatrix

    def __post_init__(self):
        for row in self.basis.entries:
            for x in row:
                if x.denominator != 1:
                    raise UserInputError(f"格基向量必须是整数向量: {row}")
        if rank(self.basis) != self.basis.rows:
            raise UserInputError("格基向量线性相关", code="DEPENDENT_BASIS")

    @classmethod
    def from_rows(cls, rows, ambient_dim=None):
        return cls(RatMatrix.from_rows(rows, cols=ambient_dim))

    @property
    def ambient_dim(self):
        return self.basis.cols

    @property
    def rank(self):
        return self.basis.rows


@dataclass(frozen=True)
class AffineFunctional:
    """仿射函数 x ↦ linear·x + constant"""

    linear: tuple
    constant: Fraction = ZERO

    @classmethod
    def build(cls, linear, constant=0):
        return cls(tuple(to_rational(x) for x in linear), to_rational(constant))

    @property
    def dim(self):
        return len(self.linear)

    def evaluate(self, point):
        if len(point) != self.dim:
            raise UserInputError(f"点的维数 {len(point)} 与函数维数 {self.dim} 不一致")
        return dot(self.linear, point) + self.constant

    def scaled(self, factor):
        factor = to_rational(factor)
        return AffineFunctional(tuple(factor * x for x in self.linear), factor * self.constant)

    def shifted(self, amount):
        return AffineFunctional(self.linear, self.constant + to_rational(amount))


class Sense(Enum):
    GE = ">=0"
    LE = "<=0"
    EQ = "=0"


@dataclass(frozen=True)
class InequalitySystem:
    """仿射不等式系统；没有约束时由 ambient_dim 给出维数"""

    functionals: tuple
    senses: tuple
    ambient_dim: int = None

    def __post_init__(self):
        if len(self.functionals) != len(self.senses):
            raise UserInputError("函数个数与不等号个数不一致")
        dims = {f.dim for f in self.functionals}
        if len(dims) > 1:
            raise UserInputError(f"系统中的函数维数不一致: {sorted(dims)}")
        if dims:
            (dim,) = dims
            if self.ambient_dim is not None and self.ambient_dim != dim:
                raise UserInputError(f"系统维数 {self.ambient_dim} 与函数维数 {dim} 不一致")
            object.__setattr__(self, "ambient_dim", dim)
        elif self.ambient_dim is None:
            raise UserInputError("空系统需要给出维数")

    @classmethod
    def build(cls, pairs, dim=None):
        """由 (AffineFunctional, Sense) 对构造"""
        pairs = list(pairs)
        return cls(tuple(f for f, _ in pairs), tuple(s for _, s in pairs), dim)

    @property
    def dim(self):
        return self.ambient_dim

    def __len__(self):
        return len(self.functionals)

    def __iter__(self):
        return iter(zip(self.functionals, self.senses))

    def combined(self, other):
        return InequalitySystem(self.functionals + other.functionals, self.senses + other.senses, self.dim)

    def satisfied_by(self, point):
        for functional, sense in self:
            value = functional.evaluate(point)
            if sense is Sense.GE and value < 0:
                return False
            if sense is Sense.LE and value > 0:
                return False
            if sense is Sense.EQ and value != 0:
                return False
        return True

    def recedes_along(self, ray):
        """ray 是否满足齐次化后的系统"""
        for functional, sense in self:
            value = dot(functional.linear, ray)
            if (sense is Sense.GE and value < 0) or (sense is Sense.LE and value > 0):
                return False
            if sense is Sense.EQ and value != 0:
                return False
        return True


class LPStatus(Enum):
    INFEASIBLE = "INFEASIBLE"
    UNBOUNDED = "UNBOUNDED"
    OPTIMAL = "OPTIMAL"


class Objective(Enum):
    MAX = "MAX"
    MIN = "MIN"


@dataclass(frozen=True)
class LPOutcome:
    """
    线性规划结果

    OPTIMAL 时 witness 为最优顶点（存在顶点时）；UNBOUNDED 时 witness 为回收方向，
    point 为一个可行点；INFEASIBLE 时两者均为 None。
    """

    status: LPStatus
    value: Fraction = None
    witness: tuple = None
    point: tuple = None


# ---------------------------------------------------------------- 线性代数


def _as_rows(matrix):
    if isinstance(matrix, RatMatrix):
        return [list(row) for row in matrix.entries], matrix.cols
    rows = [[to_rational(x) for x in row] for row in matrix]
    return rows, (len(rows[0]) if rows else 0)


def _sympy_rational(value):
    value = to_rational(value)
    return sympy.Rational(value.numerator, value.denominator)


def _to_sympy(matrix):
    rows, ncols = _as_rows(matrix)
    flat = [_sympy_rational(x) for row in rows for x in row]
    return sympy.Matrix(len(rows), ncols, flat)


def _from_sympy(value):
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def rank(matrix):
    """
    有理数矩阵的秩

    Args:
        matrix (RatMatrix | list): 矩阵

    Returns:
        int: 秩
    """
    return int(_to_sympy(matrix).rank())


def _primitive(vector):
    """缩放为本原整数向量"""
    denominator = lcm(*(x.denominator for x in vector))
    ints = [int(x * denominator) for x in vector]
    divisor = 0
    for x in ints:
        divisor = gcd(divisor, x)
    if divisor == 0:
        return [ZERO for _ in ints]
    return [Fraction(x // divisor) for x in ints]


def kernel_basis(matrix):
    """
    右零空间的基，每个基向量缩放为本原整数向量，顺序与自由列的顺序一致

    Returns:
        RatMatrix: 行数 = 列数 − 秩
    """
    rows, ncols = _as_rows(matrix)
    if not rows:
        return RatMatrix.identity(ncols)
    basis = [_primitive([_from_sympy(x) for x in vector]) for vector in _to_sympy(matrix).nullspace()]
    return RatMatrix.from_rows(basis, cols=ncols)


def solve_linear(matrix, rhs):
    """
    精确求解 M x = b；无解或解不唯一时返回 None
    """
    system = _to_sympy(matrix)
    target = sympy.Matrix([_sympy_rational(x) for x in rhs])
    try:
        solution, free = system.gauss_jordan_solve(target)
    except ValueError:
        return None
    if free.shape[0] > 0:
        return None
    return tuple(_from_sympy(x) for x in solution)


# ---------------------------------------------------------------- 格


def hermite_normal_form(basis):
    """
    对 Bᵀ 做整数列变换，得到列阶梯形 H = Bᵀ U

    主元选取：当前行中绝对值最小的非零元，绝对值相同取下标最小者。

    Args:
        basis (RatMatrix): 整数基矩阵 B（每行一个基向量）

    Returns:
        tuple: (H, U, pivots)，pivots 为 (行, 列) 列表
    """
    d = basis.rows
    n = basis.cols
    columns = [[int(x) for x in basis.row(j)] for j in range(d)]
    unimodular = [[1 if i == j else 0 for i in range(d)] for j in range(d)]

    def subtract(target, source, q):
        columns[target] = [a - q * b for a, b in zip(columns[target], columns[source])]
        unimodular[target] = [a - q * b for a, b in zip(unimodular[target], unimodular[source])]

    pivots = []
    k = 0
    for r in range(n):
        if k == d:
            break
        if all(columns[j][r] == 0 for j in range(k, d)):
            continue
        while True:
            candidates = [j for j in range(k, d) if columns[j][r] != 0]
            p = min(candidates, key=lambda j: (abs(columns[j][r]), j))
            columns[k], columns[p] = columns[p], columns[k]
            unimodular[k], unimodular[p] = unimodular[p], unimodular[k]
            for j in range(k + 1, d):
                if columns[j][r] != 0:
                    subtract(j, k, columns[j][r] // columns[k][r])
            if all(columns[j][r] == 0 for j in range(k + 1, d)):
                break
        if columns[k][r] < 0:
            columns[k] = [-a for a in columns[k]]
            unimodular[k] = [-a for a in unimodular[k]]
        for j in range(k):
            subtract(j, k, columns[j][r] // columns[k][r])
        pivots.append((r, k))
        k += 1

    h = [[columns[j][i] for j in range(d)] for i in range(n)]
    u = [[unimodular[j][i] for j in range(d)] for i in range(d)]
    return h, u, pivots


def lattice_coordinates(lattice, vector):
    """
    求整数系数 c 使得 v = Σ c_j u_j；不存在时返回 None
    """
    vector = [to_rational(x) for x in vector]
    if len(vector) != lattice.ambient_dim:
        raise UserInputError(f"向量维数 {len(vector)} 与格的环境维数 {lattice.ambient_dim} 不一致")
    h, u, pivots = hermite_normal_form(lattice.basis)
    d = lattice.rank
    y = [0] * d
    for r, k in pivots:
        residual = vector[r] - sum(h[r][j] * y[j] for j in range(k))
        q = residual / h[r][k]
        if q.denominator != 1:
            return None
        y[k] = int(q)
    for r in range(lattice.ambient_dim):
        if sum(h[r][j] * y[j] for j in range(d)) != vector[r]:
            return None
    return tuple(sum(u[i][j] * y[j] for j in range(d)) for i in range(d))


def lattice_member(lattice, vector):
    return lattice_coordinates(lattice, vector) is not None


# ---------------------------------------------------------------- 线性规划


def _upper_rows(system):
    """把系统改写为 a·x ≤ b 的行"""
    rows = []
    for functional, sense in system:
        if sense in (Sense.GE, Sense.EQ):
            rows.append(([-x for x in functional.linear], functional.constant))
        if sense in (Sense.LE, Sense.EQ):
            rows.append((list(functional.linear), -functional.constant))
    return rows


def _pivot(table, basis, r, c):
    lead = table[r][c]
    table[r] = [x / lead for x in table[r]]
    for i, row in enumerate(table):
        if i != r and row[c] != 0:
            factor = row[c]
            table[i] = [x - factor * y for x, y in zip(row, table[r])]
    basis[r] = c


def _iterate(table, basis, costs, allowed):
    """
    Bland 规则的单纯形迭代（最大化）

    Returns:
        int | None: None 表示已最优，否则为导致无界的进基列
    """
    while True:
        in_basis = set(basis)
        entering = None
        for j in allowed:
            if j in in_basis:
                continue
            reduced = costs[j] - sum((costs[b] * row[j] for b, row in zip(basis, table)), ZERO)
            if reduced > 0:
                entering = j
                break
        if entering is None:
            return None
        best = None
        for i, row in enumerate(table):
            if row[entering] > 0:
                key = (row[-1] / row[entering], basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return entering
        _pivot(table, basis, best[1], entering)


def _basic_values(table, basis, total):
    values = [ZERO] * total
    for b, row in zip(basis, table):
        values[b] = row[-1]
    return values


def _max_step(rows, point, direction):
    best = None
    for a, b in rows:
        rate = dot(a, direction)
        if rate > 0:
            t = (b - dot(a, point)) / rate
            best = t if best is None else min(best, t)
    return best


def _to_vertex(rows, point, dim):
    """沿活跃约束的零空间移动，直到活跃约束满秩；可行域含直线时原样返回"""
    point = list(point)
    while True:
        active = [a for a, b in rows if dot(a, point) == b]
        if rank(RatMatrix.from_rows(active, cols=dim)) == dim:
            return tuple(point)
        direction = list(kernel_basis(RatMatrix.from_rows(active, cols=dim)).row(0))
        step = _max_step(rows, point, direction)
        if step is None:
            direction = [-x for x in direction]
            step = _max_step(rows, point, direction)
            if step is None:
                return tuple(point)
        point = [x + step * u for x, u in zip(point, direction)]


def lp_solve(system, objective, sense=Objective.MAX):
    """
    两阶段单纯形法求解 max/min objective·x，x 为自由变量

    Args:
        system (InequalitySystem): 约束
        objective (list): 目标向量
        sense (Objective): MAX 或 MIN

    Returns:
        LPOutcome: 精确结果
    """
    dim = system.dim
    objective = [to_rational(x) for x in objective]
    if len(objective) != dim:
        raise UserInputError(f"目标向量维数 {len(objective)} 与系统维数 {dim} 不一致")
    if sense is Objective.MIN:
        outcome = lp_solve(system, [-x for x in objective], Objective.MAX)
        if outcome.status is LPStatus.OPTIMAL:
            return LPOutcome(LPStatus.OPTIMAL, -outcome.value, outcome.witness, outcome.point)
        return outcome

    rows = _upper_rows(system)
    m = len(rows)
    nx = 2 * dim
    negative_rows = [i for i, (_, b) in enumerate(rows) if b < 0]
    total = nx + m + len(negative_rows)
    artificial = {i: nx + m + k for k, i in enumerate(negative_rows)}

    table = []
    basis = []
    for i, (a, b) in enumerate(rows):
        sign = -1 if b < 0 else 1
        row = [ZERO] * (total + 1)
        for j in range(dim):
            row[j] = sign * a[j]
            row[dim + j] = -sign * a[j]
        row[nx + i] = Fraction(sign)
        row[total] = sign * b
        if i in artificial:
            row[artificial[i]] = ONE
            basis.append(artificial[i])
        else:
            basis.append(nx + i)
        table.append(row)

    # 第一阶段：最小化人工变量之和
    if artificial:
        costs = [ZERO] * total
        for column in artificial.values():
            costs[column] = -ONE
        _iterate(table, basis, costs, range(total))
        phase_one = sum((costs[b] * row[-1] for b, row in zip(basis, table)), ZERO)
        if phase_one < 0:
            return LPOutcome(LPStatus.INFEASIBLE)
        artificial_columns = set(artificial.values())
        redundant = []
        for i in range(len(table)):
            if basis[i] not in artificial_columns:
                continue
            column = next((j for j in range(nx + m) if table[i][j] != 0), None)
            if column is None:
                redundant.append(i)
            else:
                _pivot(table, basis, i, column)
        for i in reversed(redundant):
            del table[i]
            del basis[i]

    costs = [ZERO] * total
    for j in range(dim):
        costs[j] = objective[j]
        costs[dim + j] = -objective[j]
    entering = _iterate(table, basis, costs, range(nx + m))

    values = _basic_values(table, basis, total)
    point = tuple(values[j] - values[dim + j] for j in range(dim))
    if entering is not None:
        direction = [ZERO] * total
        direction[entering] = ONE
        for b, row in zip(basis, table):
            direction[b] = -row[entering]
        ray = tuple(direction[j] - direction[dim + j] for j in range(dim))
        return LPOutcome(LPStatus.UNBOUNDED, None, ray, point)

    vertex = _to_vertex(rows, point, dim)
    return LPOutcome(LPStatus.OPTIMAL, dot(objective, vertex), vertex, vertex)


def _normalize_row(a, b):
    scale = max([abs(x) for x in a] + [abs(b)])
    if scale == 0:
        return tuple(a), b
    return tuple(x / scale for x in a), b / scale


def _fm_eliminate(rows, k, limit):
    """
    消去第 k 个变量；rows 为 {(a, b): 来源集合}

    组合自多于 limit 个原始约束的新行是冗余的（Chernikov 规则），直接丢弃。
    """
    result = {}

    def keep(a, b, history):
        key = _normalize_row(a, b)
        if all(x == 0 for x in key[0]) and key[1] >= 0:
            return
        if key not in result or len(history) < len(result[key]):
            result[key] = history

    positive = [(a, b, h) for (a, b), h in rows.items() if a[k] > 0]
    negative = [(a, b, h) for (a, b), h in rows.items() if a[k] < 0]
    for (a, b), history in rows.items():
        if a[k] == 0:
            keep(a, b, history)
    for ap, bp, hp in positive:
        for an, bn, hn in negative:
            history = hp | hn
            if len(history) > limit:
                continue
            wp, wn = -an[k], ap[k]
            keep([wp * x + wn * y for x, y in zip(ap, an)], wp * bp + wn * bn, history)
    return dict(sorted(result.items()))


def fm_solve(system, objective, sense=Objective.MAX):
    """
    Fourier–Motzkin 消元求线性规划的状态与最优值（不给出最优点）

    引入 t = objective·x，消去全部 x 后只剩关于 t 的约束。
    """
    dim = system.dim
    objective = [to_rational(x) for x in objective]
    if sense is Objective.MIN:
        objective = [-x for x in objective]
    originals = [(list(a) + [ZERO], b) for a, b in _upper_rows(system)]
    originals.append(([-x for x in objective] + [ONE], ZERO))
    originals.append((list(objective) + [-ONE], ZERO))
    rows = {}
    for index, (a, b) in enumerate(originals):
        key = _normalize_row(a, b)
        if all(x == 0 for x in key[0]):
            if key[1] < 0:
                return LPOutcome(LPStatus.INFEASIBLE)
            continue
        rows.setdefault(key, frozenset({index}))
    for k in range(dim):
        rows = _fm_eliminate(rows, k, limit=k + 2)
        if any(all(x == 0 for x in a) and b < 0 for a, b in rows):
            return LPOutcome(LPStatus.INFEASIBLE)
    lower, upper = [], []
    for a, b in rows:
        coefficient = a[dim]
        if coefficient > 0:
            upper.append(b / coefficient)
        elif coefficient < 0:
            lower.append(b / coefficient)
        elif b < 0:
            return LPOutcome(LPStatus.INFEASIBLE)
    if lower and upper and max(lower) > min(upper):
        return LPOutcome(LPStatus.INFEASIBLE)
    if not upper:
        return LPOutcome(LPStatus.UNBOUNDED)
    value = min(upper)
    return LPOutcome(LPStatus.OPTIMAL, -value if sense is Objective.MIN else value)


def is_feasible(system):
    return lp_solve(system, [ZERO] * system.dim).status is not LPStatus.INFEASIBLE


def poly_contains(inner, outer):
    """
    判断 inner 的可行集是否包含于 outer：逐个在 inner 上极小化/极大化 outer 的函数
    """
    if inner.dim != outer.dim:
        raise UserInputError(f"维数不一致: {inner.dim} 与 {outer.dim}")
    if not is_feasible(inner):
        return True
    for functional, sense in outer:
        if sense in (Sense.GE, Sense.EQ):
            outcome = lp_solve(inner, functional.linear, Objective.MIN)
            if outcome.status is LPStatus.UNBOUNDED or outcome.value + functional.constant < 0:
                return False
        if sense in (Sense.LE, Sense.EQ):
            outcome = lp_solve(inner, functional.linear, Objective.MAX)
            if outcome.status is LPStatus.UNBOUNDED or outcome.value + functional.constant > 0:
                return False
    return True


def cone_positive_support(weights):
    """
    满足 W·m = 0、m ≥ 0 且 m_i > 0 的下标集合（下标从 0 开始）

    严格不等式 m_i > 0 在齐次化后改写为 m_i ≥ 1。
    """
    if not isinstance(weights, RatMatrix):
        weights = RatMatrix.from_rows(weights)
    n = weights.cols
    base = [(AffineFunctional(weights.row(r), ZERO), Sense.EQ) for r in range(weights.rows)]
    base += [(AffineFunctional(tuple(ONE if j == i else ZERO for j in range(n))), Sense.GE) for i in range(n)]
    support = set()
    for i in range(n):
        unit = AffineFunctional(tuple(ONE if j == i else ZERO for j in range(n)), -ONE)
        system = InequalitySystem.build(base + [(unit, Sense.GE)])
        outcome = lp_solve(system, [ZERO] * n)
        if outcome.status is not LPStatus.INFEASIBLE:
            LOGGER.debug("下标 %d 的正支撑证书: %s", i, outcome.witness)
            support.add(i)
    return frozenset(support)
