from casimir.config.defaults_config import DefaultsConfig


class ConfigService:
    """配置檔案管理服務 - 提供預設值的業務邏輯"""

    def __init__(self, defaults=None):
        self.defaults = defaults or DefaultsConfig()

    def show_defaults(self):
        """顯示目前預設值"""
        return {
            'cutoff': self.defaults.cutoff,
            'x': self.defaults.x,
            'kappa': self.defaults.kappa,
            'nu': self.defaults.nu,
            'method': self.defaults.method,
            'threads': self.defaults.threads,
        }

    def update_defaults(self, cutoff=None, x=None, kappa=None, nu=None, method=None, threads=None):
        """更新預設值"""
        self.defaults.update_defaults(cutoff, x, kappa, nu, method, threads)
        return "defaults updated"

    def clear_defaults(self):
        """清除預設值"""
        self.defaults.clear_defaults()
        return "defaults cleared"
