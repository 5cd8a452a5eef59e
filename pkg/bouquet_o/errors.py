# -*- coding: utf-8 -*-
"""
错误类型定义

库函数只负责抛出异常，命令行入口统一捕获并转换为退出码：
2 表示输入有误，3 表示请求超出数学上的适用范围。
"""


class BouquetError(Exception):
    """所有错误的基类，携带稳定的错误码和退出码"""

    code = "ERROR"
    exit_code = 1

    def __init__(self, message, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code

    def __str__(self):
        return f"{self.code}: {super().__str__()}"


class UserInputError(BouquetError):
    """格式错误的输入：有理数字面量、JSON 文件、维数不一致等"""

    code = "BAD_INPUT"
    exit_code = 2


class UnknownVectorError(UserInputError):
    """符号向量不在 𝒫 中"""

    code = "UNKNOWN_VECTOR"


class UnknownKindError(UserInputError):
    """未知的一参数子群类型"""

    code = "UNKNOWN_KIND"


class NonRegularError(BouquetError):
    """排列不是正则的：最优点不唯一，或某个顶点上有多于 d 个活跃函数"""

    code = "NON_REGULAR"
    exit_code = 3


class UnsupportedDimError(BouquetError):
    """dim V 或 ℓ 超出支持范围"""

    code = "UNSUPPORTED_DIM"
    exit_code = 3


class RegimeOutOfScopeError(BouquetError):
    """参数 λ 处于没有闭式表格的区间"""

    code = "REGIME_OUT_OF_SCOPE"
    exit_code = 3
