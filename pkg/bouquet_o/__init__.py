# -*- coding: utf-8 -*-
"""花束箭图簇与超环面范畴 O 的精确组合计算"""

__version__ = "0.1.0"
