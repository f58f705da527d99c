"""Exception hierarchy shared by every layer.

数学上的结论（不是保持映射、分类为 No）以返回值表达；这里只放契约错误：
形状/数域不匹配、参数越界，以及分类器无法自洽时抛出的数值崩溃。
"""


class PreserverError(ValueError):
    """所有契约错误的基类。"""


class ShapeMismatchError(PreserverError):
    pass


class FieldMismatchError(PreserverError):
    pass


class ParameterError(PreserverError):
    pass


class DisjointnessError(PreserverError):
    """输入矩阵对本应不交，但残差超过容差。"""

    def __init__(self, message, residual=0.0):
        super().__init__(message)
        self.residual = residual


class DegenerateDomainError(PreserverError):
    """定义域为向量空间（m < 2 或 n < 2），结构定理不适用。"""


class NumericalBreakdownError(PreserverError):
    """分解结果与抽样校验互相矛盾。"""

    def __init__(self, message, residual=0.0):
        super().__init__(message)
        self.residual = residual
