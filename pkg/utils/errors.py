"""项目内统一的异常类型。

输入类错误继承 ValueError，内部一致性错误继承 RuntimeError，
调用方可以继续按内置异常捕获。
"""


class InvalidInputError(ValueError):
    """参数不满足前置条件：次数/指标不一致、区间越界、容差非正等。"""


class UnsupportedDimensionError(ValueError):
    """变量数超出范数 oracle 的支持范围。"""


class UnsupportedScaleError(ValueError):
    """暴力枚举规模 n^m 超过上限。"""


class ConsistencyError(RuntimeError):
    """计算结果违反内部不变量，例如系数序列不回文、多项式系数个数不对。"""
