import os
import sys


# ANSI 顏色代碼
class Colors:
    RESET = '\033[0m'
    BOLD = '\033[1m'
    RED = '\033[91m'
    GREEN = '\033[92m'
    YELLOW = '\033[93m'
    BLUE = '\033[94m'
    MAGENTA = '\033[95m'
    CYAN = '\033[96m'
    GRAY = '\033[90m'


def color_enabled(stream=None):
    """僅在終端機上著色，設定 NO_COLOR 時不著色"""
    stream = stream or sys.stdout
    return not os.environ.get("NO_COLOR") and hasattr(stream, "isatty") and stream.isatty()


def colorize(text, color, stream=None):
    if not color_enabled(stream):
        return str(text)
    return f"{color}{text}{Colors.RESET}"
