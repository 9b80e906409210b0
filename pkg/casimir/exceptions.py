"""分析器、服務層與 CLI 共用的例外階層。

ParameterError 子類別表示請求本身無效 (CLI 以代碼 2 結束)；
NumericalError 子類別表示有效請求無法達到要求的精度 (結束代碼 1)。
"""


class CasimirError(Exception):
    """套件所有例外的基底類別"""


class ParameterError(CasimirError, ValueError):
    """輸入參數無效或選項組合無效"""


class DomainError(ParameterError):
    """參數超出公式的定義域"""


class UnsupportedCutoffError(ParameterError):
    """所要求的截斷函數族不支援此操作"""


class UnsupportedOrderError(ParameterError):
    """要求的展開階數超出係數表範圍"""


class NumericalError(CasimirError, ArithmeticError):
    """數值程序未達到容許誤差"""


class NonConvergenceError(NumericalError):
    """模式和在項數上限內未滿足停止條件"""

    def __init__(self, message, terms_used=0, tail_bound=float("inf")):
        super().__init__(message)
        self.terms_used = terms_used
        self.tail_bound = tail_bound


class QuadratureError(NumericalError):
    """自適應積分在達到容許誤差前停止"""

    def __init__(self, message, achieved=float("inf")):
        super().__init__(message)
        self.achieved = achieved


class EvaluationError(NumericalError):
    """函數回傳 NaN 或無窮大"""


class FitError(NumericalError):
    """最小平方擬合病態或輸入無法使用"""
