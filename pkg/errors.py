"""
异常定义
- 参数错误（退出码 2）
- 数值不收敛（退出码 3）
"""


class QShannonError(Exception):
    """所有 qshannon 异常的基类"""


class ParameterError(QShannonError, ValueError):
    """输入参数不合法"""


class DomainError(ParameterError):
    """x log x 的自变量超出 [0, 1]"""


class DistributionError(ParameterError):
    """概率分布不满足非负、归一条件"""


class NotCaseIIError(ParameterError):
    """(I1, I2) 没有实数 θ 的非退化解"""


class ConvergenceError(QShannonError, ArithmeticError):
    """
    数值过程未收敛

    Args:
        message: 错误描述
        stage: 出错的阶段（quadrature / bethe-solver / ...）
        estimate: 放弃时的最佳估计值
    """

    def __init__(self, message: str, stage: str, estimate: float | None = None):
        super().__init__(message)
        self.stage = stage
        self.estimate = estimate

    def __str__(self) -> str:
        base = super().__str__()
        if self.estimate is None:
            return f"[{self.stage}] {base}"
        return f"[{self.stage}] {base} (best estimate {self.estimate:.12g})"


class QuadratureError(ConvergenceError):
    def __init__(self, message: str, estimate: float | None = None):
        super().__init__(message, stage="quadrature", estimate=estimate)


class SolverError(ConvergenceError):
    def __init__(self, message: str, estimate: float | None = None):
        super().__init__(message, stage="bethe-solver", estimate=estimate)
