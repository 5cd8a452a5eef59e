# -*- coding: utf-8 -*-
"""
命令行入口

结果写到 stdout（json / tsv / dot / ascii），日志写到 stderr。
退出码：0 成功，2 输入有误，3 请求超出适用范围。
"""

import argparse
import logging
import re
import sys

import pandas as pd

from bouquet_o import bouquet_geometry as geometry
from bouquet_o import paramcat
from bouquet_o.errors import BouquetError, NonRegularError, UserInputError
from bouquet_o.exact_polyhedra import format_rational, to_rational
from bouquet_o.hypertoric_o import (
    bounded_feasible_vectors,
    chamber_table,
    feasible_vectors,
    is_linked,
    lattice_point_warnings,
    pbf,
    restrict,
)
from bouquet_o.serialization import digraph_to_dot, dumps_json, dumps_tsv, load_arrangement
from bouquet_o.settings import setup_logging

LOGGER = logging.getLogger(__name__)

FORMATS = ("json", "tsv", "dot", "ascii")

# "-1/2"、"-.5" 之类的负数字面量会被 argparse 当成选项
NEGATIVE_LITERAL = re.compile(r"^-(\d+/\d+|\d*\.\d+|\d+)$")


def _protect_negative(argv):
    return ["−" + arg[1:] if NEGATIVE_LITERAL.match(arg) else arg for arg in argv]


def _emit(text):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _output_format(args, default, allowed):
    out = args.out or default
    if out not in allowed:
        raise UserInputError(f"{args.command} 不支持 --out {out}，可选 {', '.join(allowed)}")
    return out


def _regime_of(ell, lam):
    info = paramcat.classify(ell, lam)
    LOGGER.info("λ=%s 属于区间 %s", format_rational(info.lam), info.regime.value)
    return info.regime


# ---------------------------------------------------------------- 命令


def cmd_slice(args):
    out = _output_format(args, "json", ("json", "tsv"))
    category = geometry.slice_category(args.ell, to_rational(args.lam), args.hshift)
    names = category.names
    if out == "tsv":
        table = chamber_table(list(category.chambers), category.subquotients, names)
        table["socle"] = [",".join(names[g] for g in category.socles[ch.alpha]) for ch in category.chambers]
        table["support_dim"] = [category.support_dims[ch.alpha] for ch in category.chambers]
        return dumps_tsv(table)
    spec = category.spec
    payload = {
        "ell": args.ell,
        "lambda": spec.lam,
        "hshift": args.hshift,
        "arrangement": {
            "ambient_dim": spec.quantized.ambient_dim,
            "lattice_basis": spec.quantized.lattice.basis,
            "base_point": spec.quantized.base_point,
            "xi": spec.quantized.xi,
            "orientation": spec.quantized.orientation,
            "weight_matrix": spec.weight_matrix,
            "hyperplanes": {name: normal for name, normal in spec.hyperplane_table},
        },
        "chambers": [
            {
                "label": names[ch.alpha],
                "sign_vector": ch.alpha,
                "vertex_w": ch.vertex_w,
                "xi_value": ch.xi_value,
                "subquotients": [names[g] for g in category.subquotients[ch.alpha]],
                "socle": [names[g] for g in category.socles[ch.alpha]],
                "support_dim": category.support_dims[ch.alpha],
            }
            for ch in category.chambers
        ],
        "blocks": [[names[a] for a in members] for members in category.blocks.classes],
    }
    return dumps_json(payload)


def cmd_sign_vectors(args):
    out = _output_format(args, "json", ("json", "tsv"))
    if args.arrangement:
        source = load_arrangement(args.arrangement)
        quantized = source.quantized()
        classical = source.classical()
    else:
        if args.ell is None or args.lam is None:
            raise UserInputError("需要给出 ℓ 和 λ̃，或者 --arrangement 文件")
        spec = geometry.slice_spec(args.ell, args.lam)
        quantized, classical = spec.quantized, spec.arrangement
    restricted = restrict(quantized, shift=args.hshift)
    feasible = feasible_vectors(restricted)
    chosen = set(bounded_feasible_vectors(restricted))
    if out == "tsv":
        frame = pd.DataFrame({"sign_vector": [str(a) for a in feasible], "bounded": [a in chosen for a in feasible]})
        return dumps_tsv(frame)
    try:
        warnings = lattice_point_warnings(restricted, pbf(restricted))
        regular = True
    except NonRegularError as e:
        LOGGER.warning("排列不是正则的，跳过格点检查: %s", e)
        warnings, regular = [], False
    payload = {
        "integrality_set": restricted.integrality_set,
        "feasible": feasible,
        "bounded_feasible": [a for a in feasible if a in chosen],
        "regular": regular,
        "lattice_point_warnings": warnings,
    }
    if classical is not None:
        payload["linked"] = is_linked(classical, quantized, shift=args.hshift)
    return dumps_json(payload)


def cmd_fixed_points(args):
    out = _output_format(args, "json", ("json", "ascii"))
    diagrams = geometry.fixed_points(geometry.BouquetParams(args.n, args.ell))
    if out == "ascii":
        blocks = [f"# p{k}\n{d.ascii()}" for k, d in enumerate(diagrams, 1)]
        return "\n\n".join(blocks) + f"\n\n共 {len(diagrams)} 个不动点"
    return dumps_json({"n": args.n, "ell": args.ell, "count": len(diagrams), "fixed_points": diagrams})


def cmd_fixed_components(args):
    out = _output_format(args, "json", ("json", "tsv"))
    decomposition = geometry.fixed_components(args.ell, args.kind, lam=args.lam, d=args.d)
    if out == "tsv":
        frame = pd.DataFrame(
            [
                {
                    "component": c.label,
                    "dim": c.dim,
                    "quantization": c.quantization_label,
                    "period": "" if c.period is None else format_rational(c.period),
                }
                for c in decomposition.components
            ]
        )
        return dumps_tsv(frame)
    return dumps_json(decomposition)


def cmd_leaves(args):
    out = _output_format(args, "tsv", ("json", "tsv"))
    rows = geometry.leaves(geometry.BouquetParams(args.n, args.ell))
    if out == "tsv":
        return dumps_tsv(pd.DataFrame([vars(row) for row in rows]))
    return dumps_json(rows)


def cmd_dims(args):
    _output_format(args, "json", ("json",))
    return dumps_json(geometry.dims(geometry.BouquetParams(args.n, args.ell)))


def cmd_classify(args):
    out = _output_format(args, "json", ("json", "tsv"))
    if args.sample:
        lams = paramcat.sample_lambdas(args.ell, args.sample, seed=args.seed)
    elif args.lam is not None:
        lams = [to_rational(args.lam)]
    else:
        raise UserInputError("需要给出 λ 或 --sample")
    rows = []
    for lam in lams:
        info = paramcat.classify(args.ell, lam)
        row = info.to_json()
        row["mn_exact_det_inverse"] = paramcat.mn_exact(2, args.ell, lam, "-")
        row["mn_exact_det"] = paramcat.mn_exact(2, args.ell, lam, "+")
        rows.append(row)
    if out == "tsv":
        frame = pd.DataFrame(rows).drop(columns=["notes"])
        return dumps_tsv(frame)
    return dumps_json(rows[0] if len(rows) == 1 and not args.sample else rows)


def cmd_homs(args):
    out = _output_format(args, "json", ("json", "dot", "tsv"))
    graph = paramcat.hom_digraph(args.ell, _regime_of(args.ell, args.lam))
    if out == "dot":
        return digraph_to_dot(
            f"homs_l{args.ell}_{graph.regime.value}",
            [f"Δ{i}" for i in graph.vertices],
            [(f"Δ{s}", f"Δ{t}") for s, t in graph.edges],
        )
    if out == "tsv":
        return dumps_tsv(pd.DataFrame({"source": [f"Δ{s}" for s, _ in graph.edges], "target": [f"Δ{t}" for _, t in graph.edges]}))
    payload = graph.to_json()
    payload["ringel_symmetric"] = paramcat.ringel_symmetric(graph)
    return dumps_json(payload)


def cmd_mult(args):
    out = _output_format(args, "tsv", ("json", "tsv"))
    table = paramcat.multiplicity_table(args.ell, _regime_of(args.ell, args.lam))
    if out == "tsv":
        return dumps_tsv(table.to_frame())
    return dumps_json(table)


def cmd_socles(args):
    out = _output_format(args, "json", ("json", "tsv"))
    socles = paramcat.socle_table(args.ell, _regime_of(args.ell, args.lam))
    if out == "tsv":
        return dumps_tsv(pd.DataFrame({"standard": [f"Δ{k}" for k in socles], "socle": [f"S{v}" for v in socles.values()]}))
    return dumps_json({f"Δ{k}": f"S{v}" for k, v in socles.items()})


def cmd_res(args):
    _output_format(args, "json", ("json",))
    table = paramcat.res_table(args.ell, _regime_of(args.ell, args.lam), args.convention)
    return dumps_json(table)


def cmd_support(args):
    out = _output_format(args, "tsv", ("json", "tsv"))
    table = paramcat.support_cross_check(args.ell)
    if out == "tsv":
        return dumps_tsv(table)
    return dumps_json(table)


def cmd_audit(args):
    out = _output_format(args, "json", ("json", "ascii"))
    regime = _regime_of(args.ell, args.lam)
    report = paramcat.audit(args.ell, regime, lam=args.lam)
    if out == "ascii":
        return report.to_text()
    return dumps_json(report)


def cmd_reflect(args):
    _output_format(args, "json", ("json",))
    return dumps_json({"lambda": to_rational(args.lam), "reflected": paramcat.reflect(args.lam)})


# ---------------------------------------------------------------- 参数解析


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", choices=FORMATS, default=None, help="输出格式")
    common.add_argument("--seed", type=int, default=0, help="随机抽样的种子")
    common.add_argument("--hshift", type=int, choices=(0, 1), default=0, help="'−' 号约束的平移量")
    common.add_argument("--verbose", action="store_true", help="输出 DEBUG 日志")

    parser = argparse.ArgumentParser(prog="bouquet-o", description="花束箭图簇与超环面范畴 O 的组合计算")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        command = sub.add_parser(name, parents=[common], help=help_text)
        command.set_defaults(handler=handler)
        return command

    command = add("slice", cmd_slice, "切片排列的 𝒫、子商、块与支撑维数")
    command.add_argument("ell", type=int)
    command.add_argument("lam")

    command = add("sign-vectors", cmd_sign_vectors, "可行与有界符号向量")
    command.add_argument("ell", type=int, nargs="?")
    command.add_argument("lam", nargs="?")
    command.add_argument("--arrangement", help="排列 JSON 文件")

    command = add("fixed-points", cmd_fixed_points, "dim V ≤ 3 的环面不动点")
    command.add_argument("n", type=int)
    command.add_argument("ell", type=int)

    command = add("fixed-components", cmd_fixed_components, "一参数子群的不动分支")
    command.add_argument("ell", type=int)
    command.add_argument("kind")
    command.add_argument("--lam", default=None)
    command.add_argument("--d", type=int, default=1)

    for name, handler, help_text in (
        ("leaves", cmd_leaves, "辛叶表"),
        ("dims", cmd_dims, "维数公式"),
    ):
        command = add(name, handler, help_text)
        command.add_argument("n", type=int)
        command.add_argument("ell", type=int)

    command = add("classify", cmd_classify, "参数 λ 的分类")
    command.add_argument("ell", type=int)
    command.add_argument("lam", nargs="?")
    command.add_argument("--sample", type=int, default=0, help="随机抽取的参数个数")

    for name, handler, help_text in (
        ("homs", cmd_homs, "标准对象之间的 Hom 有向图"),
        ("mult", cmd_mult, "单子商重数表"),
        ("socles", cmd_socles, "标准对象的基座"),
        ("res", cmd_res, "Res 的像"),
        ("audit", cmd_audit, "闭式表格与切片计算的对照"),
    ):
        command = add(name, handler, help_text)
        command.add_argument("ell", type=int)
        command.add_argument("lam")
        if name == "res":
            command.add_argument("--convention", choices=[c.value for c in paramcat.ResConvention], default="PRINTED")

    command = add("support", cmd_support, "单对象支撑的维数")
    command.add_argument("ell", type=int)

    command = add("reflect", cmd_reflect, "λ ↦ −1−λ")
    command.add_argument("lam")
    return parser


def _parse_args(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    return _build_parser().parse_args(_protect_negative(argv))


def main(argv=None):
    args = _parse_args(argv)
    setup_logging(logging.DEBUG if args.verbose else logging.INFO)
    try:
        _emit(args.handler(args))
    except BouquetError as e:
        LOGGER.error("%s", e)
        return e.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
