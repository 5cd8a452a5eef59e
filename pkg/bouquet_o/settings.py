# -*- coding: utf-8 -*-
"""
运行配置：环境变量与日志格式
"""

import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor

LOGGER = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

THREADS_ENV = "BOUQUET_O_THREADS"
LOG_LEVEL_ENV = "BOUQUET_O_LOG_LEVEL"


def setup_logging(level=logging.INFO):
    """日志统一输出到 stderr，stdout 只留给机器可读的结果"""
    override = os.environ.get(LOG_LEVEL_ENV)
    if override:
        level = getattr(logging, override.upper(), level)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def worker_count():
    """读取 BOUQUET_O_THREADS，非法值回退为 1"""
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw == "":
        return 1
    try:
        value = int(raw)
    except ValueError:
        LOGGER.warning("%s=%r 不是整数，使用单进程", THREADS_ENV, raw)
        return 1
    if value < 1:
        LOGGER.warning("%s=%r 必须为正数，使用单进程", THREADS_ENV, raw)
        return 1
    return value


# 进程池中各 worker 共享的只读数据，由 initializer 在每个进程里安装一次
_CONTEXT = {}


def _install_context(context):
    _CONTEXT.clear()
    _CONTEXT.update(context)


def shared_context():
    """parallel_map 安装的共享数据"""
    return _CONTEXT


def parallel_map(func, items, workers=None, context=None):
    """
    按顺序返回 func(item) 的结果

    大对象放进 context：每个进程只接收一次，之后任务里只传小的 item，
    func 通过 shared_context() 读取。

    Args:
        func: 可被 pickle 的顶层函数
        items (list): 输入列表
        workers (int): 进程数，None 时读取环境变量
        context (dict): 所有任务共享的只读数据

    Returns:
        list: 与 items 一一对应的结果
    """
    items = list(items)
    context = dict(context or {})
    if workers is None:
        workers = worker_count()
    if workers <= 1 or len(items) < 2:
        previous = dict(_CONTEXT)
        _install_context(context)
        try:
            return [func(item) for item in items]
        finally:
            _install_context(previous)
    chunk = max(1, len(items) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers, initializer=_install_context, initargs=(context,)) as pool:
        return list(pool.map(func, items, chunksize=chunk))
