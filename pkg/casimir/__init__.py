"""casimir - 平行板間卡西米爾壓力在紅外/紫外模式截斷下的計算"""

__version__ = "0.1.0"
