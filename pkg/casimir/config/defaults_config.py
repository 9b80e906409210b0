import logging
import math

from casimir.config.config_manage import ConfigManager
from casimir.config.cutoff_config import CUTOFF_CHOICES
from casimir.exceptions import ParameterError

logger = logging.getLogger(__name__)

METHOD_NAMES = ('direct', 'em', 'abel-plana', 'closed')

FALLBACKS = {
    'default_cutoff': 'exp',
    'default_x': 50.0,
    'default_kappa': 0.0,
    'default_nu': 1.0,
    'default_method': 'direct',
    'default_threads': 1,
}


class DefaultsConfig:
    """預設問題參數類 - 提供配置檔案的型別化介面"""

    def __init__(self, manager=None):
        self._manager = manager or ConfigManager()

    def _get(self, key, cast=str, valid=None):
        """以 cast 轉換已儲存的值，無法使用時發出警告並改用內建預設值"""
        value = self._manager.get(key, FALLBACKS[key])
        try:
            converted = cast(value)
        except (TypeError, ValueError):
            converted = None
        if converted is None or isinstance(value, bool) or (valid is not None and not valid(converted)):
            logger.warning("ignoring stored %s=%r, using %r", key, value, FALLBACKS[key])
            return FALLBACKS[key]
        return converted

    @property
    def cutoff(self):
        """取得預設截斷名稱"""
        return self._get("default_cutoff", valid=lambda v: v in CUTOFF_CHOICES)

    @property
    def x(self):
        """取得預設約化紫外尺度 x = dΛ"""
        return self._get("default_x", float, lambda v: math.isfinite(v) and v > 0)

    @property
    def kappa(self):
        """取得預設約化紅外截斷 κ = d·k_c/π"""
        return self._get("default_kappa", float, lambda v: math.isfinite(v) and v >= 0)

    @property
    def nu(self):
        """取得預設 tanh 平滑寬度 ν = dμ"""
        return self._get("default_nu", float, lambda v: math.isfinite(v) and v > 0)

    @property
    def method(self):
        """取得預設計算方法"""
        return self._get("default_method", valid=lambda v: v in METHOD_NAMES)

    @property
    def stored_method(self):
        """以 `casimir config` 設定的方法，未設定或無法使用時為 None"""
        value = self._manager.get("default_method")
        if value is None or value in METHOD_NAMES:
            return value
        logger.warning("ignoring stored default_method=%r", value)
        return None

    @property
    def threads(self):
        """取得預設掃描執行緒數"""
        return self._get("default_threads", int, lambda v: v >= 1)

    def update_defaults(self, cutoff=None, x=None, kappa=None, nu=None, method=None, threads=None):
        """驗證並更新預設值"""
        if cutoff is not None and cutoff not in CUTOFF_CHOICES:
            raise ParameterError(f"unknown cutoff '{cutoff}'")
        if method is not None and method not in METHOD_NAMES:
            raise ParameterError(f"unknown method '{method}'")
        if x is not None and not (math.isfinite(x) and x > 0):
            raise ParameterError("x must be a finite number > 0")
        if kappa is not None and not (math.isfinite(kappa) and kappa >= 0):
            raise ParameterError("kappa must be a finite number >= 0")
        if nu is not None and not (math.isfinite(nu) and nu > 0):
            raise ParameterError("nu must be a finite number > 0")
        if threads is not None and threads < 1:
            raise ParameterError("threads must be >= 1")

        self._manager.update(
            default_cutoff=cutoff,
            default_x=x,
            default_kappa=kappa,
            default_nu=nu,
            default_method=method,
            default_threads=threads,
        )

    def clear_defaults(self):
        """清除所有預設值"""
        self._manager.clear_prefix("default_")
