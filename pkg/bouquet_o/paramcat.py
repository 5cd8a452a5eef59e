# -*- coding: utf-8 -*-
"""
n=2 时环境范畴 O 的参数分类与闭式表格

classify / mn_exact 判断参数 λ 的性质；hom_digraph、multiplicity_table、
socle_table、res_table 给出大参数区间上的闭式表格；audit 把这些表格与
切片上的多面体计算逐项对照。
"""

import logging
import random
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import pandas as pd

from bouquet_o.bouquet_geometry import slice_category
from bouquet_o.errors import NonRegularError, RegimeOutOfScopeError, UserInputError
from bouquet_o.exact_polyhedra import format_rational, to_rational

LOGGER = logging.getLogger(__name__)

HALF = Fraction(1, 2)


class Regime(Enum):
    INTEGRAL_LARGE = "INTEGRAL_LARGE"
    HALF_INTEGRAL_LARGE = "HALF_INTEGRAL_LARGE"
    GENERIC_LARGE = "GENERIC_LARGE"
    IN_WINDOW_NONSINGULAR = "IN_WINDOW_NONSINGULAR"
    SINGULAR = "SINGULAR"


LARGE_REGIMES = (Regime.INTEGRAL_LARGE, Regime.HALF_INTEGRAL_LARGE, Regime.GENERIC_LARGE)

CLASSIFY_NOTES = (
    "局部化窗口有两种写法：λ < 1−ℓ 或 λ > ℓ−2，以及 λ < −ℓ 或 λ > ℓ−1；"
    "这里采用 λ ∉ (−ℓ, ℓ−1)∩ℤ 且 λ ≠ −½，它包含了两种写法",
    "有限同调维数 = 非奇异：大参数区间直接成立，窗口内的非奇异参数由 McGerty–Nevins 判据补全",
)


@dataclass(frozen=True)
class LambdaClass:
    lam: Fraction
    ell: int
    singular: bool
    abelian_localization: bool
    finite_hom_dim: bool
    regime: Regime
    notes: tuple = CLASSIFY_NOTES

    def to_json(self):
        return {
            "lambda": format_rational(self.lam),
            "ell": self.ell,
            "singular": self.singular,
            "abelian_localization": self.abelian_localization,
            "finite_hom_dim": self.finite_hom_dim,
            "regime": self.regime.value,
            "notes": list(self.notes),
        }


def _check_ell(ell):
    if ell < 2:
        raise UserInputError(f"ℓ 必须至少为 2: {ell}")


def reflect(lam):
    """λ ↦ −1−λ，对应 Ā_λ ≅ Ā_{−λ−1}"""
    return -1 - to_rational(lam)


def slice_lambda(lam):
    """审计使用的切片参数：λ < 0 时取 λ 本身，否则取 reflect(λ)"""
    lam = to_rational(lam)
    return lam if lam < 0 else reflect(lam)


def _is_integer(x):
    return x.denominator == 1


def _is_half_integer(x):
    return x.denominator == 2


def classify(ell, lam):
    """
    判断 λ 是否奇异、阿贝尔局部化是否成立、同调维数是否有限，以及所属区间

    Args:
        ell (int): 环的个数
        lam: 参数 λ

    Returns:
        LambdaClass: 分类结果
    """
    _check_ell(ell)
    lam = to_rational(lam)
    singular = (_is_integer(lam) and -ell < lam < ell - 1) or lam == -HALF
    if singular:
        regime = Regime.SINGULAR
    elif _is_integer(lam) and (lam <= -ell or lam >= ell - 1):
        regime = Regime.INTEGRAL_LARGE
    elif _is_half_integer(lam) and (lam <= -ell - HALF or lam >= ell - HALF):
        regime = Regime.HALF_INTEGRAL_LARGE
    elif (lam < 1 - ell or lam > ell - 2) and (2 * lam).denominator != 1:
        regime = Regime.GENERIC_LARGE
    else:
        regime = Regime.IN_WINDOW_NONSINGULAR
    return LambdaClass(lam, ell, singular, not singular, not singular, regime)


def sample_lambdas(ell, count, seed=0, max_denominator=12):
    """随机抽取 |λ| ≤ ℓ+3、分母不超过 max_denominator 的有理数，结果只依赖 seed"""
    rng = random.Random(seed)
    bound = ell + 3
    samples = []
    for _ in range(count):
        q = rng.randint(1, max_denominator)
        p = rng.randint(-bound * q, bound * q)
        samples.append(Fraction(p, q))
    return samples


def _in_shifted_fraction_set(x, k, offset, nonnegative):
    """x ∈ ℤ_{≥0}/k + offset（nonnegative=False 时为 ℤ_{≤0}/k + offset）"""
    y = (x - offset) * k
    if y.denominator != 1:
        return False
    return y >= 0 if nonnegative else y <= 0


def mn_exact(n, ell, lam, theta_sign):
    """
    McGerty–Nevins 判据：λ 是否避开所有 k = 1..n 的例外集合

    theta_sign 为 '-'（θ = det⁻¹）时例外集合为 ℤ_{≥0}/k + (ℓ−1)(n−k)，
    为 '+'（θ = det）时为其在 λ ↦ −1−λ 下的像 ℤ_{≤0}/k − (ℓ−1)(n−k) − 1。
    """
    if n < 1:
        raise UserInputError(f"n 必须至少为 1: {n}")
    lam = to_rational(lam)
    theta_sign = str(theta_sign).replace("−", "-")
    if theta_sign not in ("+", "-"):
        raise UserInputError(f"θ 的符号只能是 + 或 -: {theta_sign!r}")
    for k in range(1, n + 1):
        shift = (ell - 1) * (n - k)
        if theta_sign == "-":
            hit = _in_shifted_fraction_set(lam, k, shift, nonnegative=True)
        else:
            hit = _in_shifted_fraction_set(lam, k, -shift - 1, nonnegative=False)
        if hit:
            return False
    return True


def _require_large(ell, regime, allowed=LARGE_REGIMES):
    _check_ell(ell)
    regime = Regime(regime)
    if regime not in allowed:
        raise RegimeOutOfScopeError(f"区间 {regime.value} 上没有闭式表格")
    return regime


# ---------------------------------------------------------------- 闭式表格


@dataclass(frozen=True)
class HomDigraph:
    ell: int
    regime: Regime
    edges: tuple

    @property
    def vertices(self):
        return tuple(range(1, 2 * self.ell + 1))

    def to_json(self):
        return {
            "ell": self.ell,
            "regime": self.regime.value,
            "vertices": [f"Δ{i}" for i in self.vertices],
            "edges": [[f"Δ{s}", f"Δ{t}"] for s, t in self.edges],
        }


def hom_digraph(ell, regime):
    """标准对象之间非平凡 Hom 的有向图，边 (s, t) 表示 Hom(Δ_s, Δ_t) ≠ 0"""
    regime = _require_large(ell, regime)
    edges = set()
    if regime is Regime.INTEGRAL_LARGE:
        edges.update((i, i - 1) for i in range(2, 2 * ell + 1) if i != ell + 1)
        edges.update({(ell + 2, ell), (ell + 1, ell - 1)})
        edges.update((2 * ell - i, i + 1) for i in range(0, ell - 1))
    elif regime is Regime.HALF_INTEGRAL_LARGE:
        edges.update((2 * ell - i, i + 1) for i in range(0, ell))
    return HomDigraph(ell, regime, tuple(sorted(edges)))


def ringel_symmetric(digraph):
    """Δ_i ↦ Δ_{2ℓ+1−i} 与反向复合后是否保持有向图"""
    top = 2 * digraph.ell + 1
    edges = set(digraph.edges)
    return all((top - t, top - s) in edges for s, t in edges)


@dataclass(frozen=True)
class MultiplicityTable:
    ell: int
    regime: Regime
    rows: dict

    def to_frame(self):
        """行为单对象 S_j、列为标准对象 Δ_i 的重数矩阵"""
        size = 2 * self.ell
        data = {"simple": [f"S{j}" for j in range(1, size + 1)]}
        for i in range(1, size + 1):
            members = Counter(self.rows[i])
            data[f"Δ{i}"] = [members[j] for j in range(1, size + 1)]
        return pd.DataFrame(data)

    def to_json(self):
        return {f"Δ{i}": [f"S{j}" for j in row] for i, row in self.rows.items()}


def multiplicity_table(ell, regime):
    """每个标准对象的单子商（按基座滤过的顺序），所有重数都是 1"""
    regime = _require_large(ell, regime)
    size = 2 * ell
    rows = {}
    for i in range(1, size + 1):
        if regime is Regime.GENERIC_LARGE:
            row = [i]
        elif regime is Regime.HALF_INTEGRAL_LARGE:
            row = [i] if i > ell else [i, 2 * ell - i + 1]
        elif i == size:
            row = [i]
        elif i > ell + 1:
            row = [i, i + 1]
        elif i in (ell, ell + 1):
            row = [i, ell + 2]
        elif i == ell - 1:
            row = [i, ell, ell + 1, ell + 2]
        else:
            row = [i, i + 1, 2 * ell + 1 - i]
        rows[i] = tuple(row)
    return MultiplicityTable(ell, regime, rows)


def socle_table(ell, regime):
    """
    Δ_k ↦ 基座单对象的下标；标准对象本身是单对象时基座就是 S_k
    """
    regime = _require_large(ell, regime)
    size = 2 * ell
    result = {}
    for k in range(1, size + 1):
        if regime is Regime.GENERIC_LARGE:
            result[k] = k
        elif regime is Regime.HALF_INTEGRAL_LARGE:
            result[k] = k if k > ell else 2 * ell - k + 1
        elif k == size:
            result[k] = k
        elif k > ell + 1:
            result[k] = k + 1
        elif k in (ell, ell + 1):
            result[k] = ell + 2
        else:
            result[k] = 2 * ell - k + 1
    return result


# ---------------------------------------------------------------- Res


class ResConvention(Enum):
    PRINTED = "PRINTED"
    SUPPORT_ALIGNED = "SUPPORT_ALIGNED"


MID = "α_mid"


def _res_labels(ell, i, convention):
    """
    下标 i 在切片上的像 (标签元组, 标记)；像未定义时标签为 None

    PRINTED: i<ℓ ↦ i+1，ℓ、ℓ+1 ↦ mid，i>ℓ+1 ↦ i；被迫出现的下标 ℓ 按 α_ℓ ≡ β_ℓ ≡ α_mid 处理。
    SUPPORT_ALIGNED: i<ℓ ↦ i，ℓ、ℓ+1 ↦ mid，i>ℓ+1 ↦ i−1。
    """
    if i in (ell, ell + 1):
        return (MID,), ""
    if convention is ResConvention.PRINTED:
        k = i + 1 if i < ell else i
    else:
        k = i if i < ell else i - 1
    if k == ell:
        return (MID, MID), "FORCED"
    if not 1 <= k <= 2 * ell - 1:
        return None, "AMBIGUOUS"
    return (f"α{k}", f"β{k}"), ""


@dataclass(frozen=True)
class ResTable:
    ell: int
    regime: Regime
    convention: ResConvention
    delta_images: dict
    simple_images: dict
    flags: dict = field(default_factory=dict)

    def to_json(self):
        def render(image, prefix):
            if image is None:
                return None
            return " ⊕ ".join(f"{prefix}_{name}" for name in image) if image else "0"

        return {
            "ell": self.ell,
            "regime": self.regime.value,
            "convention": self.convention.value,
            "delta_images": {f"Δ{i}": render(v, "Δ") for i, v in self.delta_images.items()},
            "simple_images": {f"S{i}": render(v, "S") for i, v in self.simple_images.items()},
            "flags": {str(i): flag for i, flag in self.flags.items()},
        }


def res_table(ell, regime, convention=ResConvention.PRINTED):
    """
    Res 在标准对象与单对象上的像

    半整数区间与整数区间的唯一差别是 Res(S_ℓ) = 0。
    """
    regime = _require_large(ell, regime, (Regime.INTEGRAL_LARGE, Regime.HALF_INTEGRAL_LARGE))
    convention = ResConvention(convention)
    deltas, simples, flags = {}, {}, {}
    for i in range(1, 2 * ell + 1):
        labels, flag = _res_labels(ell, i, convention)
        deltas[i] = labels
        simples[i] = labels
        if flag:
            flags[i] = flag
    if regime is Regime.HALF_INTEGRAL_LARGE:
        simples[ell] = ()
    return ResTable(ell, regime, convention, deltas, simples, flags)


# ---------------------------------------------------------------- 支撑


def support_dims_ambient(ell):
    """整数区间上 Supp(S_i) 的维数：S₁ ↦ 2ℓ，S₂..S_{ℓ+1} ↦ 4ℓ−3，其余 ↦ 4ℓ−2"""
    _check_ell(ell)
    result = {}
    for i in range(1, 2 * ell + 1):
        if i == 1:
            result[i] = 2 * ell
        elif i <= ell + 1:
            result[i] = 4 * ell - 3
        else:
            result[i] = 4 * ell - 2
    return result


def ambient_from_slice(ell, slice_dim):
    """余维公式 dim = (6ℓ−4) − ((4ℓ−4) − slice_dim)"""
    return (6 * ell - 4) - ((4 * ell - 4) - slice_dim)


def support_cross_check(ell, lam=None):
    """
    逐个 S_i 比较闭式维数与切片引擎算出的维数（按 SUPPORT_ALIGNED 对应）

    Returns:
        pd.DataFrame: 列 simple, closed_form, slice_label, slice_dim, engine, match
    """
    closed = support_dims_ambient(ell)
    lam = -ell - 1 if lam is None else to_rational(lam)
    category = slice_category(ell, to_rational(lam))
    rows = []
    for i, expected in closed.items():
        labels, _ = _res_labels(ell, i, ResConvention.SUPPORT_ALIGNED)
        name = labels[0]
        slice_dim = category.support_dims[category.by_name(name)]
        engine = ambient_from_slice(ell, slice_dim)
        rows.append(
            {
                "simple": f"S{i}",
                "closed_form": expected,
                "slice_label": name,
                "slice_dim": slice_dim,
                "engine": engine,
                "match": engine == expected,
            }
        )
    table = pd.DataFrame(rows)
    if not table["match"].all():
        LOGGER.warning("支撑维数与切片计算不一致: %s", list(table.loc[~table["match"], "simple"]))
    return table


# ---------------------------------------------------------------- 审计


REPRESENTATIVES = {
    Regime.INTEGRAL_LARGE: lambda ell: Fraction(-ell - 1),
    Regime.HALF_INTEGRAL_LARGE: lambda ell: Fraction(-2 * ell - 1, 2),
    Regime.GENERIC_LARGE: lambda ell: Fraction(-3 * ell - 1, 3),
}

# DRIFT: 闭式表格的行与切片引擎给出的标准模结构不同，且差异已被识别
AUDIT_STATUSES = ("PASS", "FAIL", "AMBIGUOUS", "DRIFT")


@dataclass(frozen=True)
class AuditCheck:
    name: str
    index: int
    status: str
    detail: str

    def to_json(self):
        return {"name": self.name, "index": self.index, "status": self.status, "detail": self.detail}


@dataclass(frozen=True)
class AuditReport:
    ell: int
    regime: Regime
    slice_lambda: Fraction
    checks: tuple

    def counts(self):
        return Counter(check.status for check in self.checks)

    def to_json(self):
        return {
            "ell": self.ell,
            "regime": self.regime.value,
            "slice_lambda": format_rational(self.slice_lambda),
            "summary": dict(sorted(self.counts().items())),
            "checks": [check.to_json() for check in self.checks],
        }

    def to_text(self):
        lines = ["Res 正合性与基座审计报告", "=" * 60]
        lines.append(f"ℓ = {self.ell}, 区间 = {self.regime.value}, 切片参数 λ̃ = {format_rational(self.slice_lambda)}")
        lines.append("")
        for check in self.checks:
            lines.append(f"  [{check.status:<9}] {check.name}: {check.detail}")
        lines.append("=" * 60)
        counts = self.counts()
        lines.append("统计: " + ", ".join(f"{status} {counts[status]}" for status in AUDIT_STATUSES))
        return "\n".join(lines)


def _images(indices, images):
    """一组下标在 Res 下的像的多重集合；有未定义的像时返回 None"""
    result = Counter()
    for j in indices:
        image = images[j]
        if image is None:
            return None
        result.update(image)
    return result


def _engine_constituents(category, labels, source):
    result = Counter()
    for name in labels:
        result.update(category.names[g] for g in source[category.by_name(name)])
    return result


def _describe(counter):
    return "{" + ", ".join(f"{k}×{v}" if v > 1 else k for k, v in sorted(counter.items())) + "}"


def _evaluate(ell, i, regime, category, convention, kind):
    """返回 (verdict, 说明)，verdict ∈ {"balanced", "unbalanced", "undefined"}"""
    table = res_table(ell, regime, convention)
    delta = table.delta_images[i]
    if delta is None:
        return "undefined", f"{convention.value}: Res(Δ{i}) 的下标超出 α₁..α_{2 * ell - 1}"
    if kind == "res_exact":
        predicted = _images(multiplicity_table(ell, regime).rows[i], table.simple_images)
        engine = _engine_constituents(category, delta, category.subquotients)
    else:
        predicted = _images([socle_table(ell, regime)[i]], table.simple_images)
        engine = _engine_constituents(category, delta, category.socles)
    if predicted is None:
        return "undefined", f"{convention.value}: 某个单子商的像下标未定义"
    if kind == "res_exact":
        ok = predicted == engine
    else:
        ok = set(predicted) <= set(engine)
    if ok:
        return "balanced", f"{convention.value}: {_describe(predicted)} = {_describe(engine)}"
    surplus = predicted - engine
    deficit = engine - predicted
    if kind == "socle":
        return "unbalanced", f"{convention.value}: {_describe(predicted)} ⊄ {_describe(engine)}"
    return "unbalanced", f"{convention.value}: 多出 {_describe(surplus)}，缺少 {_describe(deficit)}"


def _row_drift(ell, i, regime, category):
    """
    整数区间 2 ≤ i ≤ ℓ−2 的行：切片上 Δ_{α_i} 有四个单子商
    {α_i, α_{i+1}, β_{2ℓ−i}, β_{2ℓ−i+1}}，闭式表格第 i 行只有 S_i, S_{i+1}, S_{2ℓ+1−i} 三项

    Returns:
        str | None: 引擎确实给出这四项时返回说明，否则返回 None
    """
    if regime is not Regime.INTEGRAL_LARGE or not 2 <= i <= ell - 2:
        return None
    expected = {f"α{i}", f"α{i + 1}", f"β{2 * ell - i}", f"β{2 * ell - i + 1}"}
    engine = {category.names[g] for g in category.subquotients[category.by_name(f"α{i}")]}
    if engine != expected:
        return None
    return (
        f"切片上 Δ_α{i} 的单子商为 {_describe(Counter(engine))}，"
        f"闭式表格第 {i} 行只有 S{i}, S{i + 1}, S{2 * ell + 1 - i} 三项"
    )


def audit(ell, regime, lam=None):
    """
    把闭式表格与切片引擎逐项对照

    对每个 i 检查 Res(Δ_i 的单子商) 与 Res(Δ_i) 的单子商作为多重集合是否相等（res_exact[i]），
    以及 Res(Soc Δ_i) ⊆ Soc Res(Δ_i)（socle[i]）。i = ℓ−1 与 i = 2ℓ 处两种下标约定都会
    被计算并报告为 AMBIGUOUS。整数区间 2 ≤ i ≤ ℓ−2 的行（ℓ ≥ 4 才出现）两种约定都对不上时，
    若切片上 Δ_{α_i} 恰为四项结构，则报告为 DRIFT 并写明差异。

    Args:
        ell (int): 环的个数
        regime (Regime): 参数区间
        lam: 可选，环境参数 λ；给出时切片参数取 slice_lambda(λ)

    Returns:
        AuditReport: 审计报告
    """
    regime = _require_large(ell, regime)
    representative = REPRESENTATIVES[regime](ell)
    checks = []
    if regime is Regime.GENERIC_LARGE:
        for kind in ("res_exact", "socle"):
            for i in range(1, 2 * ell + 1):
                checks.append(AuditCheck(f"{kind}[{i}]", i, "PASS", "半单情形：所有表格都是对角的"))
        return AuditReport(ell, regime, representative, tuple(checks))

    slice_param = representative if lam is None else slice_lambda(lam)
    try:
        category = slice_category(ell, slice_param)
    except NonRegularError as e:
        LOGGER.warning("λ̃=%s 处切片不是正则的 (%s)，改用代表元 %s", slice_param, e, representative)
        slice_param = representative
        category = slice_category(ell, slice_param)

    boundary = {ell - 1, 2 * ell}
    for kind in ("res_exact", "socle"):
        for i in range(1, 2 * ell + 1):
            verdicts = [_evaluate(ell, i, regime, category, c, kind) for c in ResConvention]
            detail = "; ".join(text for _, text in verdicts)
            if i in boundary:
                status = "AMBIGUOUS"
                detail = f"边界下标，α_ℓ 的解释有两种候选。{detail}"
            elif any(v == "balanced" for v, _ in verdicts):
                status = "PASS"
            elif (drift := _row_drift(ell, i, regime, category)) is not None:
                status = "DRIFT"
                detail = f"{drift}。{detail}"
            else:
                status = "FAIL"
            checks.append(AuditCheck(f"{kind}[{i}]", i, status, detail))
    report = AuditReport(ell, regime, slice_param, tuple(checks))
    LOGGER.info("审计 ℓ=%d %s: %s", ell, regime.value, dict(report.counts()))
    return report
