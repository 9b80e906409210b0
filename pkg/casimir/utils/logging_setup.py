import logging
import sys

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


class StderrHandler(logging.StreamHandler):
    """寫入輸出當下的 sys.stderr"""

    def __init__(self, level=logging.NOTSET):
        logging.Handler.__init__(self, level)

    @property
    def stream(self):
        return sys.stderr


def setup_logging(verbose=False):
    """將套件日誌導向 stderr；--verbose 時為 DEBUG，否則為 WARNING"""
    level = logging.DEBUG if verbose else logging.WARNING
    root = logging.getLogger("casimir")
    root.setLevel(level)
    if not any(isinstance(h, StderrHandler) for h in root.handlers):
        handler = StderrHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(handler)
    return root
